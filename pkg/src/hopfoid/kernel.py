"""Exact rational linear algebra on sparse vectors.

A vector is a plain ``dict`` mapping hashable basis keys to nonzero
:class:`fractions.Fraction` coefficients.  Subspaces are kept in reduced
row-echelon form over a caller-supplied total order on keys, so two bases
spanning the same space always have identical rows.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from typing import Callable, Dict, Hashable, Iterable, List, Optional, Sequence

Key = Hashable
Vector = Dict[Key, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


class InfiniteWindow(Exception):
    """A closure would have to range over infinitely many keys."""


def _identity(key):
    return key


def lc_clean(v: Vector) -> Vector:
    return {k: c for k, c in v.items() if c}


def lc_add(u: Vector, v: Vector, scale=1) -> Vector:
    """Return ``u + scale*v`` as a new vector."""
    out = dict(u)
    for k, c in v.items():
        s = out.get(k, ZERO) + scale * c
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def lc_iadd(u: Vector, v: Vector, scale=1) -> None:
    """In-place ``u += scale*v``."""
    for k, c in v.items():
        s = u.get(k, ZERO) + scale * c
        if s:
            u[k] = s
        else:
            u.pop(k, None)


def lc_scale(v: Vector, c) -> Vector:
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


class SubspaceBasis:
    """Sparse reduced row-echelon basis of a subspace.

    Rows are indexed by their pivot, the largest key under ``key_order``.
    Pivot columns occur in no other row, which makes reduction a single pass.
    """

    def __init__(self, key_order: Optional[Callable] = None, rows: Iterable[Vector] = ()):
        self.key_order = key_order or _identity
        self._rows: Dict[Key, Vector] = {}
        self._cols: Dict[Key, set] = defaultdict(set)
        for r in rows:
            self.insert(r)

    def copy(self) -> "SubspaceBasis":
        other = SubspaceBasis(self.key_order)
        other._rows = {p: dict(r) for p, r in self._rows.items()}
        other._cols = defaultdict(set, {k: set(s) for k, s in self._cols.items()})
        return other

    def __len__(self) -> int:
        return len(self._rows)

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> List[Key]:
        return sorted(self._rows, key=self.key_order, reverse=True)

    def rows(self) -> List[Vector]:
        """Rows ordered by decreasing pivot."""
        return [dict(self._rows[p]) for p in self.pivots]

    def reduce(self, v: Vector) -> Vector:
        """Residue of ``v`` modulo the span (zero iff ``v`` is a member)."""
        out = dict(v)
        for k, c in v.items():
            row = self._rows.get(k)
            if row is not None:
                lc_iadd(out, row, -c)
        return out

    def __contains__(self, v: Vector) -> bool:
        return not self.reduce(v)

    def insert(self, v: Vector) -> Vector:
        """Add ``v`` to the span; return its residue before insertion."""
        r = self.reduce(v)
        if not r:
            return r
        p = max(r, key=self.key_order)
        inv = ONE / r[p]
        row = {k: c * inv for k, c in r.items()}
        for q in list(self._cols.get(p, ())):
            other = self._rows[q]
            f = other[p]
            for k, c in row.items():
                s = other.get(k, ZERO) - f * c
                if s:
                    if k not in other:
                        self._cols[k].add(q)
                    other[k] = s
                else:
                    del other[k]
                    self._cols[k].discard(q)
        self._rows[p] = row
        for k in row:
            self._cols[k].add(p)
        return r

    def signature(self) -> tuple:
        """Hashable canonical form of the row space."""
        return tuple(
            tuple(sorted(((repr(k), str(c)) for k, c in r.items())))
            for r in self.rows()
        )


def echelon_insert(basis: SubspaceBasis, v: Vector):
    """Functional insert: ``(new_basis, residue)``; ``basis`` is left untouched."""
    new = basis.copy()
    residue = new.insert(v)
    return new, residue


def membership(basis: SubspaceBasis, v: Vector) -> bool:
    return v in basis


def combinations_in(basis: SubspaceBasis, vectors: Sequence[Vector]) -> List[Vector]:
    """Coefficient vectors ``c`` (indexed by position) with ``sum c_i v_i`` in the span.

    Returns a basis of the space of such ``c`` modulo those giving ``sum c_i v_i = 0``
    only when the sum is also zero -- i.e. a spanning set of all dependencies of the
    ``vectors`` modulo ``basis``.
    """
    tag = ("__tag__",)
    order = basis.key_order

    def aug_order(k):
        if isinstance(k, tuple) and len(k) == 2 and k[0] == tag:
            return (0, k[1])
        return (1, order(k))

    work = SubspaceBasis(aug_order)
    for i, v in enumerate(vectors):
        r = basis.reduce(v)
        r[(tag, i)] = ONE
        work.insert(r)
    out = []
    for row in work.rows():
        p = max(row, key=aug_order)
        if aug_order(p)[0] == 0:
            out.append({k[1]: c for k, c in row.items()})
    return out


def intersect(b1: SubspaceBasis, b2: SubspaceBasis) -> SubspaceBasis:
    """Basis of ``span(b1) & span(b2)``.

    Each row of ``b2`` is reduced modulo ``b1``; dependencies among the
    residues are exactly the combinations of ``b2`` rows landing in ``b1``.
    """
    rows2 = b2.rows()
    out = SubspaceBasis(b1.key_order)
    for comb in combinations_in(b1, rows2):
        v: Vector = {}
        for i, c in comb.items():
            lc_iadd(v, rows2[i], c)
        out.insert(v)
    return out


def span_sum(b1: SubspaceBasis, b2: SubspaceBasis) -> SubspaceBasis:
    out = b1.copy()
    for r in b2.rows():
        out.insert(r)
    return out


def span_closure(
    seed: Iterable,
    step: Callable,
    window: Optional[Callable[[Key], bool]] = None,
    *,
    vectorize: Optional[Callable] = None,
    key_order: Optional[Callable] = None,
    max_rank: Optional[int] = None,
    sources: Optional[list] = None,
) -> SubspaceBasis:
    """Smallest subspace containing ``seed`` and stable under ``step``.

    ``step`` maps an item to a list of items.  Items are turned into vectors by
    ``vectorize`` (identity by default); an item is dropped when ``vectorize``
    returns ``None`` or when one of its keys fails ``window``.  ``step`` is only
    applied to items that increased the rank, which suffices for linear steps.
    Items that increased the rank are appended to ``sources`` when given.
    """
    vec = vectorize or (lambda x: x)
    basis = SubspaceBasis(key_order)
    queue = list(seed)
    pos = 0
    while pos < len(queue):
        item = queue[pos]
        pos += 1
        v = vec(item)
        if v is None:
            continue
        if window is not None and not all(window(k) for k in v):
            continue
        if not basis.insert(v):
            continue
        if max_rank is not None and basis.rank > max_rank:
            raise InfiniteWindow(f"closure exceeded rank bound {max_rank}")
        if sources is not None:
            sources.append(item)
        queue.extend(step(item))
    return basis


def dense_solve(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]):
    """Solve ``matrix @ x = rhs`` by plain Gauss-Jordan elimination.

    Returns one solution as a list, or ``None`` when the system is inconsistent.
    Free variables are set to zero.
    """
    m = [list(map(Fraction, row)) + [Fraction(b)] for row, b in zip(matrix, rhs)]
    n_rows = len(m)
    n_cols = len(m[0]) - 1 if m else 0
    piv_cols = []
    r = 0
    for c in range(n_cols):
        pr = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        f = m[r][c]
        m[r] = [x / f for x in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c] != 0:
                g = m[i][c]
                m[i] = [a - g * b for a, b in zip(m[i], m[r])]
        piv_cols.append(c)
        r += 1
        if r == n_rows:
            break
    for i in range(r, n_rows):
        if m[i][-1] != 0:
            return None
    x = [Fraction(0)] * n_cols
    for i, c in enumerate(piv_cols):
        x[c] = m[i][-1]
    return x


def _leq(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


class FilteredSpan:
    """Span of items graded by a formal level, with one basis per level.

    ``L(l)`` is the span of accepted items whose level is componentwise ``<= l``.
    Query bases use ``query_vec`` (a coarser projection) and are built lazily.
    """

    def __init__(self, key_order, query_vec: Callable, top: tuple):
        self.key_order = key_order
        self.query_vec = query_vec
        self.top = top
        self.sources: List[tuple] = []
        self.excluded = 0
        self._query: Dict[tuple, SubspaceBasis] = {}

    def query_basis(self, level: Optional[tuple] = None) -> SubspaceBasis:
        level = self.top if level is None else level
        hit = self._query.get(level)
        if hit is None:
            hit = SubspaceBasis(self.key_order)
            for item, lv in self.sources:
                if _leq(lv, level):
                    v = self.query_vec(item)
                    if v is not None:
                        hit.insert(v)
            self._query[level] = hit
        return hit

    @property
    def rank(self) -> int:
        return self.query_basis().rank

    def member(self, item, level: Optional[tuple] = None) -> Optional[bool]:
        """Membership of ``item`` in ``L(level)``; None when ``item`` cannot be projected."""
        v = self.query_vec(item)
        if v is None:
            return None
        return v in self.query_basis(level)


def filtered_closure(
    seeds: Iterable[tuple],
    step: Callable,
    top: tuple,
    *,
    vectorize: Callable,
    query_vec: Optional[Callable] = None,
    key_order: Optional[Callable] = None,
    max_rank: Optional[int] = None,
) -> FilteredSpan:
    """Closure of ``(item, level)`` seeds under ``step`` inside the level box ``<= top``.

    ``vectorize(item, level)`` gives the vector used for deduplication at that
    level (None excludes the item).  Items are processed by increasing total
    level, and ``step`` is applied only to items that were new at their level,
    which is enough when ``step`` is linear and adds levels.
    """
    import heapq

    span = FilteredSpan(key_order, query_vec or (lambda it: vectorize(it, top)), top)
    bases: Dict[tuple, SubspaceBasis] = {}
    heap: list = []
    seq = 0

    def push(item, level):
        nonlocal seq
        if _leq(level, top):
            heapq.heappush(heap, (sum(level), level, seq, item))
            seq += 1

    for item, level in seeds:
        push(item, level)

    accepted: List[tuple] = []
    while heap:
        _, level, _, item = heapq.heappop(heap)
        basis = bases.get(level)
        if basis is None:
            basis = SubspaceBasis(key_order)
            for it, lv in accepted:
                if _leq(lv, level):
                    w = vectorize(it, level)
                    if w is not None:
                        basis.insert(w)
            bases[level] = basis
        v = vectorize(item, level)
        if v is None:
            span.excluded += 1
            continue
        if not basis.insert(v):
            continue
        for lv, b in bases.items():
            if lv != level and _leq(level, lv):
                w = vectorize(item, lv)
                if w is not None:
                    b.insert(w)
        accepted.append((item, level))
        if max_rank is not None and len(accepted) > max_rank:
            raise InfiniteWindow(f"closure exceeded rank bound {max_rank}")
        for nxt, nlv in step(item, level):
            push(nxt, nlv)
    span.sources = accepted
    return span
