"""The subalgebras ``W, W0+, W+, B, B+`` of ``H (x) H`` and the checks built on them.

Every subspace is produced by a filtered closure: items carry a formal level
``(a, t)`` counting A-type and T-type generator factors, and the window is
the box of levels ``<= top``.  On the group track all levels are ``(0, 0)``
and the closures are plain finite spans.

On truncated tracks an item at level ``l`` is deduplicated modulo T-degree
``N + top_a - l_a``: left multiplication never lowers T-degree and each right
factor of A-degree one lowers it by at most one, so the difference of two
items identified this way stays above degree ``N`` in every descendant.
Queries compare vectors up to T-degree ``N``.
"""

from __future__ import annotations

import itertools
import random
from typing import Callable, Dict, List, Optional, Tuple

from .algebra import INF, NCElement, Window
from .kernel import FilteredSpan, SubspaceBasis, _leq, combinations_in, filtered_closure
from .report import CheckRecord, Tally
from .smashoid import SmashAlgebroid

Level = Tuple[int, int]
Item = Tuple[NCElement, Level]


def _add(l1: Level, l2: Level) -> Level:
    return (l1[0] + l2[0], l1[1] + l2[1])


def _lmax(l1: Level, l2: Level) -> Level:
    return (max(l1[0], l2[0]), max(l1[1], l2[1]))


class KernelSpan:
    """``I_A & F_l B`` computed as the kernel of the section ``gamma`` on B-sources."""

    def __init__(self, data: "BalancingData", B: FilteredSpan):
        self.data = data
        self.B = B
        self.top = B.top
        self._cache: Dict[Level, Tuple[SubspaceBasis, List[Item], int]] = {}

    def _build(self, level: Level):
        hit = self._cache.get(level)
        if hit is not None:
            return hit
        d = self.data
        srcs = [(it, lv) for it, lv in self.B.sources if _leq(lv, level)]
        vecs = []
        keep = []
        short = 0
        for it, lv in srcs:
            g = d.S.gamma(it)
            v = d.query_vec(g)
            if v is None:
                short += 1
                continue
            vecs.append(v)
            keep.append((it, lv))
        basis = SubspaceBasis(d.S.H2.sort_key)
        elems: List[Item] = []
        for comb in combinations_in(SubspaceBasis(d.S.H2.sort_key), vecs):
            el = d.S.H2.zero()
            lv = (0, 0)
            for i, c in sorted(comb.items()):
                el = el + c * keep[i][0]
                lv = _lmax(lv, keep[i][1])
            qv = d.query_vec(el)
            if qv is None:
                short += 1
                continue
            if basis.insert(qv):
                elems.append((el, lv))
        hit = (basis, elems, short)
        self._cache[level] = hit
        return hit

    def query_basis(self, level: Optional[Level] = None) -> SubspaceBasis:
        return self._build(self.top if level is None else level)[0]

    @property
    def sources(self) -> List[Item]:
        return self._build(self.top)[1]

    @property
    def unresolved(self) -> int:
        return self._build(self.top)[2]

    @property
    def rank(self) -> int:
        return self.query_basis().rank

    def member(self, item: NCElement, level: Optional[Level] = None) -> Optional[bool]:
        v = self.data.query_vec(item)
        if v is None:
            return None
        return v in self.query_basis(level)


class BalancingData:
    """Filtered spans of the balancing construction inside a level window.

    ``a_cap`` bounds the number of A-type generator factors and ``t_cap`` the
    number of T-type ones; both are ignored on the group track.
    """

    def __init__(self, S: SmashAlgebroid, a_cap: Optional[int] = None, t_cap: Optional[int] = None):
        self.S = S
        self.A = S.A
        self.T = S.T
        self.finite = S.A.kind == "group-table"
        self.exact = S.prec == INF
        if self.finite:
            self.top: Level = (0, 0)
            self.N = None
        else:
            if a_cap is None or t_cap is None:
                raise ValueError("truncated tracks need both caps")
            self.top = (a_cap, t_cap)
            self.N = t_cap
        self.window = Window(a=None if self.finite else a_cap, t=None if self.finite else t_cap)
        self.excluded: Dict[str, int] = {}
        self._spans: Dict[str, object] = {}

    # ---------------------------------------------------------------- levels and vectors

    def a_level(self, key) -> Level:
        return (0, 0) if self.finite else (self.A.adeg(key), 0)

    def t_level(self, key) -> Level:
        return (0, 0) if self.finite else (0, self.T.tdeg(key))

    def h_level(self, key) -> Level:
        a, t = key
        return _add(self.a_level(a), self.t_level(t))

    def fits(self, level: Level) -> bool:
        return _leq(level, self.top)

    def dedupe_vec(self, item: NCElement, level: Level):
        if self.exact:
            return item.terms
        tau = self.N + self.top[0] - level[0]
        if item.valid < tau:
            return None
        return item.truncated(tau).terms

    def query_vec(self, item: NCElement):
        if self.exact:
            return item.terms
        if item.valid < self.N:
            return None
        return item.truncated(self.N).terms

    def label(self) -> str:
        if self.finite:
            return "exact"
        return f"levels<=({self.top[0]},{self.top[1]}),T<={self.N}"

    # ---------------------------------------------------------------- bases and generators

    def a_basis(self) -> list:
        return self.A.enumerate_basis(Window(a=None if self.finite else self.top[0]))

    def t_basis(self) -> list:
        return self.T.enumerate_basis(Window(t=None if self.finite else self.top[1]))

    def h_basis(self) -> list:
        return [(a, t) for a in self.a_basis() for t in self.t_basis()]

    def _a_step_keys(self) -> list:
        # the generator maps are algebra maps, so images of algebra generators suffice
        if self.finite:
            return list(self.a_basis())
        return [k for k in self.a_basis() if self.A.adeg(k) == 1]

    def _t_step_keys(self) -> list:
        if self.finite:
            return list(self.t_basis())
        return [k for k in self.t_basis() if self.T.tdeg(k) == 1]

    def w_generators(self) -> List[Item]:
        S = self.S
        out = []
        for k in self._a_step_keys():
            x = self.A.basis_element(k)
            lv = self.a_level(k)
            out.append((S.X_gen(x), lv))
            out.append((S.S_gen(x), lv))
        return out

    def t_generators(self) -> List[Item]:
        return [(self.S.delta_t_gen(self.T.basis_element(k)), self.t_level(k)) for k in self._t_step_keys()]

    def b_generators(self) -> List[Item]:
        return self.w_generators() + self.t_generators()

    def r_seeds(self) -> List[Item]:
        return [(self.S.R_gen(self.A.basis_element(k)), self.a_level(k)) for k in self._a_step_keys()]

    def distinguished_generators(self) -> List[Item]:
        """``X (x) 1``, ``S X_[1] (x) X_[0]`` and ``Delta_T(t)`` over basis keys in the window."""
        S = self.S
        out = []
        for k in self.a_basis():
            x = self.A.basis_element(k)
            out.append((S.X_gen(x), self.a_level(k)))
            out.append((S.S_gen(x), self.a_level(k)))
        for k in self.t_basis():
            out.append((S.delta_t_gen(self.T.basis_element(k)), self.t_level(k)))
        return out

    # ---------------------------------------------------------------- closures

    def _closure(self, name: str, seeds: List[Item], gens: List[Item], two_sided: bool) -> FilteredSpan:
        def step(item, level):
            out = []
            for g, gl in gens:
                nl = _add(level, gl)
                if not self.fits(nl):
                    continue
                out.append((g * item, nl))
                if two_sided:
                    out.append((item * g, nl))
            return out

        span = filtered_closure(
            seeds,
            step,
            self.top,
            vectorize=self.dedupe_vec,
            query_vec=self.query_vec,
            key_order=self.S.H2.sort_key,
        )
        self.excluded[name] = span.excluded
        return span

    def _cached(self, name, build):
        hit = self._spans.get(name)
        if hit is None:
            hit = build()
            self._spans[name] = hit
        return hit

    def one_item(self) -> Item:
        return (self.S.H2.one(), (0, 0))

    @property
    def W(self) -> FilteredSpan:
        """Smallest unital subalgebra containing every ``a (x) 1`` and ``S a_[1] (x) a_[0]``."""
        return self._cached("W", lambda: self._closure("W", [self.one_item()], self.w_generators(), False))

    def build_W(self, order: Optional[Callable] = None) -> FilteredSpan:
        """Uncached ``W`` with the generator list permuted by ``order``."""
        gens = self.w_generators()
        if order is not None:
            gens = order(gens)
        return self._closure("W*", [self.one_item()], gens, False)

    @property
    def W0plus(self) -> FilteredSpan:
        """Span of ``R(x)(x' (x) 1)`` over basis pairs."""

        def build():
            S = self.S
            seeds = []
            for x in self.a_basis():
                rx = S.R_gen(self.A.basis_element(x))
                for y in self.a_basis():
                    lv = _add(self.a_level(x), self.a_level(y))
                    if self.fits(lv):
                        seeds.append((rx * S.X_gen(self.A.basis_element(y)), lv))
            return self._closure("W0plus", seeds, [], False)

        return self._cached("W0plus", build)

    @property
    def Wplus(self) -> FilteredSpan:
        """Two-sided ideal of ``W`` generated by the ``R(a)``."""
        return self._cached("Wplus", lambda: self._closure("Wplus", self.r_seeds(), self.w_generators(), True))

    @property
    def B(self) -> FilteredSpan:
        """Subalgebra generated by ``W`` and ``Delta_T(T)``."""
        return self._cached("B", lambda: self._closure("B", [self.one_item()], self.b_generators(), False))

    @property
    def Bplus(self) -> FilteredSpan:
        """Two-sided ideal of ``B`` generated by the ``R(X)``."""
        return self._cached("Bplus", lambda: self._closure("Bplus", self.r_seeds(), self.b_generators(), True))

    @property
    def IA_B(self) -> KernelSpan:
        return self._cached("IA_B", lambda: KernelSpan(self, self.B))

    def dimensions(self) -> Dict[str, int]:
        return {
            "W": self.W.rank,
            "W0plus": self.W0plus.rank,
            "Wplus": self.Wplus.rank,
            "B": self.B.rank,
            "Bplus": self.Bplus.rank,
            "IA_cap_B": self.IA_B.rank,
        }


# -------------------------------------------------------------------- checks


def check_two_sided(
    check_id: str,
    statement: str,
    rows: List[Item],
    generators: List[Item],
    member: Callable,
    data: BalancingData,
    sides=("left", "right"),
) -> CheckRecord:
    """``g u`` and ``u g`` stay in the ideal for every row ``u`` and generator ``g``."""
    tally = Tally(check_id, statement, data.label())
    for u, ul in rows:
        for g, gl in generators:
            lv = _add(ul, gl)
            if not data.fits(lv):
                tally.skip(len(sides))
                continue
            for side in sides:
                prod = g * u if side == "left" else u * g
                m = member(prod, lv)
                witness = {"side": side, "row": u, "generator": g, "product": prod}
                if m is None:
                    tally.inconclusive(witness, "product not resolved to the query degree")
                else:
                    tally.outcome(m, witness, f"{side} product leaves the ideal", finite=data.finite)
    tally.details["rows"] = len(rows)
    tally.details["generators"] = len(generators)
    return tally.record()


def check_annihilation(check_id: str, statement: str, rows: List[Item], data: BalancingData) -> CheckRecord:
    """``mu(id (x) tau)`` vanishes on every row."""
    tally = Tally(check_id, statement, data.label())
    S = data.S
    for u, _ in rows:
        r = S.mu_id_tau(u)
        tally.identity(r, u, "mu(id x tau) does not vanish on this row")
    tally.details["rows"] = len(rows)
    return tally.record()


def _in_a(S: SmashAlgebroid, x: NCElement) -> NCElement:
    """Part of ``x`` outside ``A#1``."""
    one_t = S.T.one_key()
    return NCElement(S.H, {k: c for k, c in x.terms.items() if k[1] != one_t}, x.valid)


def _dedupe_items(items: List[Item]) -> List[Item]:
    seen = set()
    out = []
    for el, lv in items:
        sig = (tuple(sorted((repr(k), c) for k, c in el.terms.items())), lv)
        if sig in seen:
            continue
        seen.add(sig)
        out.append((el, lv))
    return out


def check_generator_products(data: BalancingData, samples: int, seed: int, exhaustive_len: int = 3) -> CheckRecord:
    """``mu(id (x) tau)`` maps products of distinguished generators into ``A#1``."""
    S = data.S
    tally = Tally(
        "lemmas.generator_products_in_A",
        "U product of distinguished generators => mu(id x tau)(U) in A#1",
        data.label(),
    )
    gens = _dedupe_items(data.distinguished_generators())

    def run(word):
        el, lv = word[0]
        for g, gl in word[1:]:
            el = el * g
            lv = _add(lv, gl)
        r = _in_a(S, S.mu_id_tau(el))
        tally.identity(r, {"factors": [g for g, _ in word]}, "image leaves A#1")

    rng = random.Random(seed)
    drawn = 0
    attempts = 0
    while drawn < samples and attempts < 50 * samples:
        attempts += 1
        n = rng.randint(1, 4)
        word = [gens[rng.randrange(len(gens))] for _ in range(n)]
        lv = (0, 0)
        for _, gl in word:
            lv = _add(lv, gl)
        if not data.fits(lv):
            tally.skip()
            continue
        drawn += 1
        run(word)
    exhaustive = 0
    if data.finite:
        for n in range(1, exhaustive_len + 1):
            for word in itertools.product(gens, repeat=n):
                run(list(word))
                exhaustive += 1
    tally.details.update({"seed": seed, "samples": drawn, "exhaustive_products": exhaustive,
                          "generators": len(gens)})
    return tally.record()


def _pairs(data: BalancingData):
    for x in data.a_basis():
        for z in data.a_basis():
            lv = _add(data.a_level(x), data.a_level(z))
            if data.fits(lv):
                yield x, z, lv


def check_products_in_W0plus(data: BalancingData, which: str) -> CheckRecord:
    """``(x (x) 1)R(z)``, ``R(x)R(z)`` and ``(S x_[1] (x) x_[0])R(z)`` lie in ``W0+``."""
    S = data.S
    A = data.A
    W0 = data.W0plus
    statements = {
        "X_times_R": "(x (x) 1) R(z) in W0+",
        "R_times_R": "R(x) R(z) in W0+",
        "S_times_R": "(S x_[1] (x) x_[0]) R(z) in W0+",
    }
    tally = Tally(f"lemmas.{which}", statements[which], data.label())
    for x, z, lv in _pairs(data):
        xe, ze = A.basis_element(x), A.basis_element(z)
        left = {"X_times_R": S.X_gen, "R_times_R": S.R_gen, "S_times_R": S.S_gen}[which](xe)
        prod = left * S.R_gen(ze)
        m = W0.member(prod, lv)
        if m is None:
            tally.inconclusive({"x": x, "z": z}, "product not resolved to the query degree")
        else:
            tally.outcome(m, {"x": A.format_key(x), "z": A.format_key(z), "product": prod},
                          "not in W0+", finite=data.finite)
    return tally.record()


def check_S_X_times_Z(data: BalancingData) -> CheckRecord:
    """``mu(id (x) tau)((S X_[1] (x) X_[0])(Z (x) 1)) = XZ``."""
    S = data.S
    A = data.A
    tally = Tally("lemmas.S_X_times_Z", "mu(id x tau)((S X_[1] (x) X_[0])(Z (x) 1)) = X Z", data.label())
    for x, z, _ in _pairs(data):
        xe, ze = A.basis_element(x), A.basis_element(z)
        u = S.S_gen(xe) * S.X_gen(ze)
        r = S.mu_id_tau(u) - S.alpha(xe * ze)
        tally.identity(r, {"X": A.format_key(x), "Z": A.format_key(z)})
    return tally.record()


def span_equality(check_id: str, statement: str, left, right, data: BalancingData) -> CheckRecord:
    """Mutual inclusion of two filtered spans at the top level, with both ranks reported."""
    tally = Tally(check_id, statement, data.label())
    for name, src, dst in (("left", left, right), ("right", right, left)):
        for item, lv in src.sources:
            m = dst.member(item)
            if m is None:
                tally.inconclusive(item, "row not resolved to the query degree")
            else:
                tally.outcome(m, {"side": name, "row": item}, "row missing from the other span",
                              finite=data.finite)
    rl, rr = left.rank, right.rank
    tally.details.update({"rank_left": rl, "rank_right": rr})
    if rl != rr:
        if data.finite:
            tally.fail({"rank_left": rl, "rank_right": rr}, "dimensions differ")
        else:
            tally.inconclusive({"rank_left": rl, "rank_right": rr}, "dimensions differ inside the window")
    return tally.record()
