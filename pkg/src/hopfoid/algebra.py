"""Algebra contexts with normal forms and an exact element type.

Every context knows how to multiply two basis keys.  Elements carry a
validity bound ``valid``: the total T-degree up to which their stored
components are exact.  Contexts without a truncated dual keep ``valid``
at infinity.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .kernel import InfiniteWindow, ONE, ZERO, lc_iadd

INF = math.inf


class AlgebraError(Exception):
    pass


class UnknownGenerator(AlgebraError):
    pass


class ContextMismatch(AlgebraError):
    pass


class InvalidGroup(AlgebraError):
    pass


class JacobiViolation(AlgebraError):
    def __init__(self, triple, residue):
        self.triple = triple
        self.residue = residue
        super().__init__(f"Jacobi identity fails on generators {triple}: residue {residue}")


class WindowExceeded(AlgebraError):
    pass


@dataclass(frozen=True)
class Window:
    """Degree caps.  ``a`` bounds A-degree, ``t`` bounds T-degree (None = no cap)."""

    a: Optional[int] = None
    t: Optional[int] = None

    def admits(self, adeg: int, tdeg: int) -> bool:
        if self.a is not None and adeg > self.a:
            return False
        if self.t is not None and tdeg > self.t:
            return False
        return True

    def label(self) -> str:
        fa = "inf" if self.a is None else str(self.a)
        ft = "inf" if self.t is None else str(self.t)
        return f"A<={fa},T<={ft}"


def fmt_frac(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def parse_frac(s: str) -> Fraction:
    return Fraction(s)


@dataclass(eq=False)
class NCElement:
    """Finite exact linear combination of normal-form keys in a context."""

    ctx: "AlgebraContext"
    terms: Dict = field(default_factory=dict)
    valid: float = INF
    abound: Optional[int] = None

    def __post_init__(self):
        if self.valid != INF:
            td = self.ctx.tdeg
            self.terms = {k: c for k, c in self.terms.items() if c and td(k) <= self.valid}
        else:
            self.terms = {k: c for k, c in self.terms.items() if c}

    def _check(self, other: "NCElement"):
        if other.ctx is not self.ctx:
            raise ContextMismatch(f"{self.ctx.name} vs {other.ctx.name}")

    def __add__(self, other: "NCElement") -> "NCElement":
        self._check(other)
        out = dict(self.terms)
        lc_iadd(out, other.terms)
        return NCElement(self.ctx, out, min(self.valid, other.valid), _amax(self, other))

    def __sub__(self, other: "NCElement") -> "NCElement":
        self._check(other)
        out = dict(self.terms)
        lc_iadd(out, other.terms, -1)
        return NCElement(self.ctx, out, min(self.valid, other.valid), _amax(self, other))

    def __neg__(self) -> "NCElement":
        return NCElement(self.ctx, {k: -c for k, c in self.terms.items()}, self.valid, self.abound)

    def __rmul__(self, c) -> "NCElement":
        c = Fraction(c)
        return NCElement(self.ctx, {k: c * v for k, v in self.terms.items()}, self.valid, self.abound)

    def __mul__(self, other):
        if isinstance(other, NCElement):
            return self.ctx.mul(self, other)
        return self.__rmul__(other)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def truncated(self, tmax) -> "NCElement":
        return NCElement(self.ctx, dict(self.terms), min(self.valid, tmax), self.abar)

    def with_valid(self, valid) -> "NCElement":
        return NCElement(self.ctx, dict(self.terms), valid, self.abar)

    @property
    def abar(self) -> int:
        """Bound on the A-degree of the exact element, dropped tail included."""
        m = self.max_adeg()
        return m if self.abound is None else max(m, self.abound)

    def equals(self, other: "NCElement") -> bool:
        """Equality on the common validity horizon."""
        return (self - other).is_zero()

    def max_adeg(self) -> int:
        ad = self.ctx.adeg
        return max((ad(k) for k in self.terms), default=0)

    def max_tdeg(self) -> int:
        td = self.ctx.tdeg
        return max((td(k) for k in self.terms), default=0)

    def sorted_terms(self) -> List[Tuple]:
        sk = self.ctx.sort_key
        return sorted(self.terms.items(), key=lambda kv: sk(kv[0]))

    def serialize(self) -> dict:
        return {
            "context": self.ctx.name,
            "terms": [[self.ctx.format_key(k), fmt_frac(c)] for k, c in self.sorted_terms()],
            "valid_to": None if self.valid == INF else int(self.valid),
        }

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k, c in self.sorted_terms():
            ks = self.ctx.format_key(k)
            parts.append(ks if c == 1 else f"({c})*{ks}")
        return " + ".join(parts)


def _amax(x: NCElement, y: NCElement) -> Optional[int]:
    if x.abound is None and y.abound is None:
        return None
    return max(x.abar, y.abar)


class AlgebraContext:
    """Base class: subclasses provide ``mul_keys`` and key metadata."""

    name = "context"
    kind = "abstract"

    def one_key(self):
        raise NotImplementedError

    def mul_keys(self, k1, k2, prec=None) -> Dict:
        raise NotImplementedError

    def adeg(self, key) -> int:
        return 0

    def tdeg(self, key) -> int:
        return 0

    def sort_key(self, key):
        return key

    def format_key(self, key) -> str:
        return str(key)

    def parse_key(self, s: str):
        raise NotImplementedError

    def enumerate_basis(self, window: Optional[Window] = None) -> list:
        raise NotImplementedError

    # element helpers
    def element(self, terms=None, valid=INF) -> NCElement:
        return NCElement(self, dict(terms or {}), valid)

    def basis_element(self, key, valid=INF) -> NCElement:
        return NCElement(self, {key: ONE}, valid)

    def one(self) -> NCElement:
        return self.basis_element(self.one_key())

    def zero(self) -> NCElement:
        return NCElement(self, {})

    def lossdeg(self, y: NCElement) -> int:
        return y.abar

    def mul_valid(self, x: NCElement, y: NCElement) -> float:
        if x.valid == INF and y.valid == INF:
            return INF
        return min(x.valid - self.lossdeg(y), y.valid)

    def mul(self, x: NCElement, y: NCElement) -> NCElement:
        if x.ctx is not self or y.ctx is not self:
            raise ContextMismatch(f"cannot multiply in {self.name}")
        valid = self.mul_valid(x, y)
        prec = None if valid == INF else valid
        out: Dict = {}
        abound = None
        if x.valid != INF or y.valid != INF:
            abound = x.abar + y.abar
        if prec is not None and prec < 0:
            return NCElement(self, {}, valid, abound)
        for k1, c1 in x.terms.items():
            for k2, c2 in y.terms.items():
                lc_iadd(out, self.mul_keys(k1, k2, prec), c1 * c2)
        return NCElement(self, out, valid, abound)

    def normal_form(self, word: Sequence) -> NCElement:
        """Normal form of a product of generator names."""
        x = self.one()
        for g in word:
            x = x * self.generator(g)
        return x

    def generator(self, name) -> NCElement:
        raise UnknownGenerator(name)


# ---------------------------------------------------------------- groups


class GroupAlgebra(AlgebraContext):
    """Group algebra kG from an explicit multiplication table."""

    kind = "group-table"

    def __init__(self, elements: Sequence[str], table: Dict[Tuple[str, str], str], name="kG"):
        self.name = name
        self.elements = list(elements)
        self.table = dict(table)
        self.index = {g: i for i, g in enumerate(self.elements)}
        self._validate()

    def _validate(self):
        els = self.elements
        if len(set(els)) != len(els) or not els:
            raise InvalidGroup("element names must be distinct and nonempty")
        for g in els:
            for h in els:
                p = self.table.get((g, h))
                if p not in self.index:
                    raise InvalidGroup(f"product {g}*{h} missing or outside the group")
        ids = [e for e in els if all(self.table[(e, g)] == g == self.table[(g, e)] for g in els)]
        if not ids:
            raise InvalidGroup("no identity element")
        self.identity = ids[0]
        self.inverse = {}
        for g in els:
            inv = [h for h in els if self.table[(g, h)] == self.identity == self.table[(h, g)]]
            if not inv:
                raise InvalidGroup(f"{g} has no inverse")
            self.inverse[g] = inv[0]
        t = self.table
        for a in els:
            for b in els:
                ab = t[(a, b)]
                for c in els:
                    if t[(ab, c)] != t[(a, t[(b, c)])]:
                        raise InvalidGroup(f"associativity fails on ({a},{b},{c})")

    @property
    def order(self) -> int:
        return len(self.elements)

    def gmul(self, g, h) -> str:
        return self.table[(g, h)]

    def ginv(self, g) -> str:
        return self.inverse[g]

    def one_key(self):
        return self.identity

    def mul_keys(self, k1, k2, prec=None):
        return {self.table[(k1, k2)]: ONE}

    def sort_key(self, key):
        return self.index[key]

    def format_key(self, key):
        return key

    def parse_key(self, s):
        if s not in self.index:
            raise UnknownGenerator(s)
        return s

    def enumerate_basis(self, window=None):
        return list(self.elements)

    def generator(self, name):
        if name not in self.index:
            raise UnknownGenerator(name)
        return self.basis_element(name)


def permutation_group(perms: Dict[str, Tuple[int, ...]], name="kG") -> GroupAlgebra:
    """Group algebra of a set of permutations closed under composition.

    The product ``g*h`` is ``g`` after ``h``.
    """
    lookup = {p: n for n, p in perms.items()}
    table = {}
    for g, pg in perms.items():
        for h, ph in perms.items():
            comp = tuple(pg[ph[i]] for i in range(len(ph)))
            if comp not in lookup:
                raise InvalidGroup(f"{g}*{h} leaves the permutation set")
            table[(g, h)] = lookup[comp]
    return GroupAlgebra(list(perms), table, name=name)


# ---------------------------------------------------------------- Lie data


def _vec(d) -> Dict[int, Fraction]:
    return {k: Fraction(v) for k, v in d.items() if v}


class LieAlgebra:
    """Finite-dimensional Lie algebra from structure constants ``[x_i, x_j] = sum C^k_ij x_k``."""

    def __init__(self, names: Sequence[str], brackets: Dict[Tuple[int, int], Dict[int, Fraction]], validate=True):
        self.names = list(names)
        self.dim = len(self.names)
        br: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
        for (i, j), v in brackets.items():
            v = _vec(v)
            if i == j and v:
                raise JacobiViolation((i, i), "nonzero self-bracket")
            if (j, i) in brackets and validate:
                other = _vec(brackets[(j, i)])
                if any(other.get(k, 0) != -c for k, c in v.items()) or any(
                    v.get(k, 0) != -c for k, c in other.items()
                ):
                    raise JacobiViolation((i, j), "bracket not antisymmetric")
            if v:
                br[(i, j)] = v
                br[(j, i)] = {k: -c for k, c in v.items()}
        self._br = br
        if validate:
            self.check_jacobi()

    def bracket_basis(self, i: int, j: int) -> Dict[int, Fraction]:
        return self._br.get((i, j), {})

    def bracket(self, u: Dict[int, Fraction], v: Dict[int, Fraction]) -> Dict[int, Fraction]:
        out: Dict[int, Fraction] = {}
        for i, a in u.items():
            for j, b in v.items():
                lc_iadd(out, self.bracket_basis(i, j), a * b)
        return out

    def jacobi_residue(self, i, j, k) -> Dict[int, Fraction]:
        e = lambda m: {m: ONE}
        out: Dict[int, Fraction] = {}
        lc_iadd(out, self.bracket(e(i), self.bracket(e(j), e(k))))
        lc_iadd(out, self.bracket(e(j), self.bracket(e(k), e(i))))
        lc_iadd(out, self.bracket(e(k), self.bracket(e(i), e(j))))
        return out

    def check_jacobi(self):
        for i, j, k in itertools.combinations(range(self.dim), 3):
            r = self.jacobi_residue(i, j, k)
            if r:
                names = (self.names[i], self.names[j], self.names[k])
                raise JacobiViolation(names, {self.names[m]: str(c) for m, c in sorted(r.items())})

    def is_abelian(self) -> bool:
        return not self._br

    def nilpotency_step(self) -> Optional[int]:
        """Length of the lower central series, or None when not nilpotent."""
        from .kernel import SubspaceBasis

        current = SubspaceBasis(rows=[{i: ONE} for i in range(self.dim)])
        step = 0
        while current.rank:
            step += 1
            nxt = SubspaceBasis()
            for i in range(self.dim):
                for row in current.rows():
                    nxt.insert(self.bracket({i: ONE}, row))
            if nxt.rank == current.rank:
                return None
            current = nxt
        return step


# ---------------------------------------------------------------- U(g)


def _exp_add(e, i, k=1):
    lst = list(e)
    lst[i] += k
    return tuple(lst)


def monomial_degree(e) -> int:
    return sum(e)


def exps_up_to(n: int, d: int) -> List[Tuple[int, ...]]:
    """All exponent tuples of length ``n`` and total degree <= d in deg-lex order."""
    out = []
    for deg in range(d + 1):
        out.extend(exps_of_degree(n, deg))
    return out


def exps_of_degree(n: int, deg: int) -> List[Tuple[int, ...]]:
    if n == 0:
        return [()] if deg == 0 else []
    out = []
    for first in range(deg, -1, -1):
        for rest in exps_of_degree(n - 1, deg - first):
            out.append((first,) + rest)
    return out


def format_monomial(names: Sequence[str], e: Tuple[int, ...]) -> str:
    parts = []
    for n, k in zip(names, e):
        if k == 1:
            parts.append(n)
        elif k > 1:
            parts.append(f"{n}^{k}")
    return "*".join(parts) if parts else "1"


def parse_monomial(names: Sequence[str], s: str) -> Tuple[int, ...]:
    e = [0] * len(names)
    s = s.strip()
    if s == "1":
        return tuple(e)
    idx = {n: i for i, n in enumerate(names)}
    for part in s.split("*"):
        base, _, power = part.partition("^")
        if base not in idx:
            raise UnknownGenerator(base)
        e[idx[base]] += int(power) if power else 1
    return tuple(e)


def exp_sort_key(e):
    return (sum(e), tuple(-k for k in e))


class EnvelopingAlgebra(AlgebraContext):
    """U(g) in the PBW basis of ordered monomials ``x_1^k1 ... x_n^kn``."""

    kind = "pbw-lie"

    def __init__(self, lie: LieAlgebra, name="U(g)"):
        self.lie = lie
        self.name = name
        self.n = lie.dim
        self._gen_cache: Dict = {}
        self._mul_cache: Dict = {}

    def one_key(self):
        return (0,) * self.n

    def adeg(self, key):
        return sum(key)

    def sort_key(self, key):
        return exp_sort_key(key)

    def format_key(self, key):
        return format_monomial(self.lie.names, key)

    def parse_key(self, s):
        return parse_monomial(self.lie.names, s)

    def enumerate_basis(self, window=None):
        if window is None or window.a is None:
            raise InfiniteWindow("U(g) needs an A-degree cap")
        return exps_up_to(self.n, window.a)

    def generator(self, name):
        if name not in self.lie.names:
            raise UnknownGenerator(name)
        i = self.lie.names.index(name)
        return self.basis_element(_exp_add(self.one_key(), i))

    def mul_gen(self, e, j) -> Dict:
        """Normal form of ``x^e * x_j``."""
        key = (e, j)
        hit = self._gen_cache.get(key)
        if hit is not None:
            return hit
        last = max((i for i, k in enumerate(e) if k), default=-1)
        if last <= j:
            out = {_exp_add(e, j): ONE}
        else:
            # x^e x_j = (x^e' x_j) x_last + x^e' [x_last, x_j]
            ep = _exp_add(e, last, -1)
            out = {}
            for m, c in self.mul_gen(ep, j).items():
                lc_iadd(out, self.mul_gen(m, last), c)
            for k, c in self.lie.bracket_basis(last, j).items():
                lc_iadd(out, self.mul_gen(ep, k), c)
        self._gen_cache[key] = out
        return out

    def mul_keys(self, k1, k2, prec=None):
        key = (k1, k2)
        hit = self._mul_cache.get(key)
        if hit is not None:
            return hit
        cur = {k1: ONE}
        for j, k in enumerate(k2):
            for _ in range(k):
                nxt = {}
                for m, c in cur.items():
                    lc_iadd(nxt, self.mul_gen(m, j), c)
                cur = nxt
        self._mul_cache[key] = cur
        return cur

    def word_normal_form(self, word: Sequence[int], strategy: str = "leftmost") -> Dict:
        """Straighten a generator-index word by explicit rewriting.

        ``strategy`` picks the leftmost or rightmost out-of-order adjacent pair
        at each step.  Independent of ``mul_gen`` so it can serve as an oracle.
        """
        todo = {tuple(word): ONE}
        done: Dict = {}
        while todo:
            w, c = todo.popitem()
            pos = [i for i in range(len(w) - 1) if w[i] > w[i + 1]]
            if not pos:
                e = [0] * self.n
                for g in w:
                    e[g] += 1
                lc_iadd(done, {tuple(e): c})
                continue
            i = pos[0] if strategy == "leftmost" else pos[-1]
            a, b = w[i], w[i + 1]
            swapped = w[:i] + (b, a) + w[i + 2:]
            lc_iadd(todo, {swapped: c})
            for k, ck in self.lie.bracket_basis(a, b).items():
                lc_iadd(todo, {w[:i] + (k,) + w[i + 2:]: c * ck})
        return done


# ---------------------------------------------------------------- S(g*)


class TruncatedSymmetric(AlgebraContext):
    """Commutative polynomial algebra in ``d^1..d^n``; ``cap`` truncates total degree."""

    kind = "truncated-symmetric"

    def __init__(self, names: Sequence[str], cap: Optional[int] = None, name="S(g*)"):
        self.names = list(names)
        self.n = len(self.names)
        self.cap = cap
        self.name = name

    def one_key(self):
        return (0,) * self.n

    def tdeg(self, key):
        return sum(key)

    def sort_key(self, key):
        return exp_sort_key(key)

    def format_key(self, key):
        return format_monomial(self.names, key)

    def parse_key(self, s):
        return parse_monomial(self.names, s)

    def enumerate_basis(self, window=None):
        cap = self.cap if window is None or window.t is None else window.t
        if cap is None:
            raise InfiniteWindow("symmetric algebra needs a degree cap")
        return exps_up_to(self.n, cap)

    def generator(self, name):
        if name not in self.names:
            raise UnknownGenerator(name)
        return self.basis_element(_exp_add(self.one_key(), self.names.index(name)))

    def lossdeg(self, y):
        return 0

    def mul_keys(self, k1, k2, prec=None):
        e = tuple(a + b for a, b in zip(k1, k2))
        d = sum(e)
        if (prec is not None and d > prec) or (self.cap is not None and d > self.cap):
            return {}
        return {e: ONE}

    def mul(self, x, y):
        out = super().mul(x, y)
        if self.cap is not None and out.valid > self.cap:
            out = out.with_valid(self.cap)
        return out


# ---------------------------------------------------------------- composites


class SmashContext(AlgebraContext):
    """Smash product ``A#T`` with ``(a#t)(b#s) = a (t1 > b) # t2 s``.

    ``coproduct(t, max1, max2)`` yields ``(t1, t2, c)`` with ``deg t1 <= max1`` and
    ``deg t2 <= max2``; ``action(t, b)`` returns ``t > b`` as a vector over A.
    """

    kind = "smash"

    def __init__(self, A: AlgebraContext, T: AlgebraContext, coproduct: Callable, action: Callable, name="H"):
        self.A = A
        self.T = T
        self.coproduct = coproduct
        self.action = action
        self.name = name
        self._cache: Dict = {}

    def one_key(self):
        return (self.A.one_key(), self.T.one_key())

    def adeg(self, key):
        return self.A.adeg(key[0])

    def tdeg(self, key):
        return self.T.tdeg(key[1])

    def sort_key(self, key):
        return (self.adeg(key) + self.tdeg(key), self.A.sort_key(key[0]), self.T.sort_key(key[1]))

    def format_key(self, key):
        return f"{self.A.format_key(key[0])}#{self.T.format_key(key[1])}"

    def parse_key(self, s):
        a, _, t = s.partition("#")
        return (self.A.parse_key(a), self.T.parse_key(t))

    def enumerate_basis(self, window=None):
        wa = Window(a=window.a if window else None)
        wt = Window(t=window.t if window else None)
        return [(a, t) for a in self.A.enumerate_basis(wa) for t in self.T.enumerate_basis(wt)]

    def mul_keys(self, k1, k2, prec=None):
        key = (k1, k2, prec)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        a, t = k1
        b, s = k2
        A, T = self.A, self.T
        ds = T.tdeg(s)
        out: Dict = {}
        if prec is None or ds <= prec:
            max2 = None if prec is None else prec - ds
            for t1, t2, c in self.coproduct(t, A.adeg(b), max2):
                acted = self.action(t1, b)
                if not acted:
                    continue
                ts = T.mul_keys(t2, s, None)
                for ak, ac in acted.items():
                    for pk, pc in A.mul_keys(a, ak).items():
                        for tk, tc in ts.items():
                            if prec is not None and T.tdeg(tk) > prec:
                                continue
                            lc_iadd(out, {(pk, tk): c * ac * pc * tc})
        self._cache[key] = out
        return out

    def embed_a(self, x: NCElement) -> NCElement:
        t1 = self.T.one_key()
        return NCElement(self, {(k, t1): c for k, c in x.terms.items()}, x.valid)

    def embed_t(self, x: NCElement) -> NCElement:
        a1 = self.A.one_key()
        return NCElement(self, {(a1, k): c for k, c in x.terms.items()}, x.valid)


class TensorContext(AlgebraContext):
    """Tensor power with componentwise product; validity uses total T-degree."""

    kind = "tensor-power"

    def __init__(self, factors: Sequence[AlgebraContext], name=None):
        self.factors = list(factors)
        self.n = len(self.factors)
        self.name = name or "(" + "x".join(f.name for f in self.factors) + ")"

    def one_key(self):
        return tuple(f.one_key() for f in self.factors)

    def adeg(self, key):
        return sum(f.adeg(k) for f, k in zip(self.factors, key))

    def tdeg(self, key):
        return sum(f.tdeg(k) for f, k in zip(self.factors, key))

    def sort_key(self, key):
        return (self.adeg(key) + self.tdeg(key),) + tuple(f.sort_key(k) for f, k in zip(self.factors, key))

    def format_key(self, key):
        return " @ ".join(f.format_key(k) for f, k in zip(self.factors, key))

    def parse_key(self, s):
        parts = [p.strip() for p in s.split("@")]
        if len(parts) != self.n:
            raise UnknownGenerator(s)
        return tuple(f.parse_key(p) for f, p in zip(self.factors, parts))

    def enumerate_basis(self, window=None):
        """Keys whose total A- and T-degrees fit the window."""
        w = window or Window()
        slots = [f.enumerate_basis(w) for f in self.factors]
        return sorted(
            (k for k in itertools.product(*slots) if w.admits(self.adeg(k), self.tdeg(k))),
            key=self.sort_key,
        )

    def mul_keys(self, k1, k2, prec=None):
        tds = [f.tdeg(k) for f, k in zip(self.factors, k2)]
        total = sum(tds)
        if prec is not None and total > prec:
            return {}
        slots = []
        for i, (f, a, b) in enumerate(zip(self.factors, k1, k2)):
            p = None if prec is None else prec - (total - tds[i])
            v = f.mul_keys(a, b, p)
            if not v:
                return {}
            slots.append(list(v.items()))
        out: Dict = {}
        for combo in itertools.product(*slots):
            key = tuple(k for k, _ in combo)
            if prec is not None and self.tdeg(key) > prec:
                continue
            c = ONE
            for _, x in combo:
                c *= x
            s = out.get(key, ZERO) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return out

    def pure(self, parts: Sequence[NCElement]) -> NCElement:
        """``parts[0] (x) parts[1] (x) ...`` with validity from the total degree model."""
        for f, p in zip(self.factors, parts):
            if p.ctx is not f:
                raise ContextMismatch(f"slot context {p.ctx.name} != {f.name}")
        out: Dict = {}
        for combo in itertools.product(*[list(p.terms.items()) for p in parts]):
            key = tuple(k for k, _ in combo)
            c = reduce(lambda x, y: x * y, (v for _, v in combo), ONE)
            lc_iadd(out, {key: c})
        valid = INF
        mins = [min((f.tdeg(k) for k in p.terms), default=0) for f, p in zip(self.factors, parts)]
        for i, p in enumerate(parts):
            if p.valid != INF:
                valid = min(valid, p.valid + sum(mins) - mins[i])
        if any(p.is_zero() and p.valid == INF for p in parts):
            return NCElement(self, {}, INF)
        abound = None
        if valid != INF:
            abound = sum(p.abar for p in parts)
        return NCElement(self, out, valid, abound)

    def slot(self, i: int, x: NCElement) -> NCElement:
        """``1 (x) .. x .. (x) 1`` with ``x`` in slot ``i``."""
        parts = [f.one() for f in self.factors]
        parts[i] = x
        return self.pure(parts)
