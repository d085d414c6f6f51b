"""Hopf structures on T and Yetter-Drinfeld module algebra data on A.

Two families are supported: a finite group acting on itself by conjugation
(``A = T = kG``) and ``A = U(g)`` over the dual ``T = S(g*)`` with the pairing
``<d^a, sym(x^b)> = delta_ab * a!``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from .algebra import (
    INF,
    EnvelopingAlgebra,
    GroupAlgebra,
    LieAlgebra,
    NCElement,
    TensorContext,
    TruncatedSymmetric,
    WindowExceeded,
    exps_of_degree,
    exps_up_to,
)
from .kernel import InfiniteWindow, ONE, ZERO, SubspaceBasis, lc_iadd


class NoSolution(Exception):
    pass


class NonUniqueSolution(Exception):
    pass


def mfact(e) -> int:
    out = 1
    for k in e:
        out *= math.factorial(k)
    return out


def mbinom(e, d) -> int:
    out = 1
    for a, b in zip(e, d):
        out *= math.comb(a, b)
    return out


def sub_exps(e):
    """All exponent tuples componentwise <= e."""
    out = [()]
    for k in e:
        out = [p + (i,) for p in out for i in range(k + 1)]
    return out


# ---------------------------------------------------------------- Hopf structures


class HopfStructure:
    """Coproduct, counit and antipode on the basis of a context.

    ``coproduct_terms(key, max1, max2)`` lists ``(k1, k2, c)`` restricted to
    ``deg k1 <= max1`` and ``deg k2 <= max2``.  ``valid`` is the degree up to
    which the coproduct is exact (infinite for finite coproducts).
    """

    def __init__(self, ctx, coproduct: Callable, counit: Callable, antipode: Callable, finite=True, name="hopf"):
        self.ctx = ctx
        self._coproduct = coproduct
        self._counit = counit
        self._antipode = antipode
        self.finite = finite
        self.name = name
        self._cache: Dict = {}
        self.T2 = TensorContext([ctx, ctx], name=f"{ctx.name}^2")
        self.T3 = TensorContext([ctx, ctx, ctx], name=f"{ctx.name}^3")

    def coproduct_terms(self, key, max1=None, max2=None) -> List[Tuple]:
        ck = (key, max1, max2)
        hit = self._cache.get(ck)
        if hit is None:
            hit = self._coproduct(key, max1, max2)
            self._cache[ck] = hit
        return hit

    def counit(self, key) -> Fraction:
        return self._counit(key)

    def antipode_keys(self, key) -> Dict:
        return self._antipode(key)

    # element level
    def coproduct(self, x: NCElement, prec=None) -> NCElement:
        """Coproduct of ``x`` with components of total degree <= prec."""
        if prec is None and x.valid != INF:
            prec = x.valid
        if prec is None and not self.finite:
            raise InfiniteWindow("coproduct of a series needs a degree bound")
        out: Dict = {}
        for k, c in x.terms.items():
            for k1, k2, cc in self.coproduct_terms(k, prec, prec):
                if prec is not None and self.ctx.tdeg(k1) + self.ctx.tdeg(k2) > prec:
                    continue
                lc_iadd(out, {(k1, k2): c * cc})
        valid = INF if prec is None else prec
        return NCElement(self.T2, out, min(valid, x.valid))

    def counit_el(self, x: NCElement) -> Fraction:
        return sum((c * self.counit(k) for k, c in x.terms.items()), ZERO)

    def antipode(self, x: NCElement) -> NCElement:
        out: Dict = {}
        for k, c in x.terms.items():
            lc_iadd(out, self.antipode_keys(k), c)
        return NCElement(self.ctx, out, x.valid)


def group_hopf(G: GroupAlgebra) -> HopfStructure:
    return HopfStructure(
        G,
        coproduct=lambda g, m1=None, m2=None: [(g, g, ONE)],
        counit=lambda g: ONE,
        antipode=lambda g: {G.ginv(g): ONE},
        finite=True,
        name=f"hopf({G.name})",
    )


def ug_hopf(U: EnvelopingAlgebra) -> HopfStructure:
    """Primitive Hopf structure on U(g) in the PBW basis."""

    def cop(e, m1=None, m2=None):
        out = []
        for d in sub_exps(e):
            rest = tuple(a - b for a, b in zip(e, d))
            if m1 is not None and sum(d) > m1:
                continue
            if m2 is not None and sum(rest) > m2:
                continue
            out.append((d, rest, Fraction(mbinom(e, d))))
        return out

    def antipode(e):
        word = [i for i, k in enumerate(e) for _ in range(k)]
        sign = -1 if sum(e) % 2 else 1
        return {k: sign * c for k, c in U.word_normal_form(list(reversed(word))).items()}

    def counit(e):
        return ONE if not any(e) else ZERO

    return HopfStructure(U, cop, counit, antipode, finite=True, name=f"hopf({U.name})")


# ---------------------------------------------------------------- pairing


class DualPairing:
    """Pairing between ``S(g*)`` monomials ``d^a`` and ``U(g)``.

    ``<d^a, sym(x^b)> = delta_ab * a!``.  PBW monomials are re-expressed in the
    symmetrized basis by inverting a unitriangular change of basis.
    """

    def __init__(self, U: EnvelopingAlgebra):
        self.U = U
        self.n = U.n
        self._powers: List[Dict] = [{((0,) * self.n, (0,) * self.n): ONE}]
        self._sym: Dict = {}
        self._tosym: Dict = {}
        self._prod: Dict = {}
        self._act: Dict = {}

    def _power(self, k: int) -> Dict:
        # (sum_i t_i x_i)^k as {(t-exponent, PBW exponent): c}
        while len(self._powers) <= k:
            prev = self._powers[-1]
            nxt: Dict = {}
            for (te, pe), c in prev.items():
                for i in range(self.n):
                    tk = te[:i] + (te[i] + 1,) + te[i + 1:]
                    for m, cm in self.U.mul_gen(pe, i).items():
                        lc_iadd(nxt, {(tk, m): c * cm})
            self._powers.append(nxt)
        return self._powers[k]

    def sym(self, beta) -> Dict:
        """``sym(x^beta)`` expanded in the PBW basis."""
        hit = self._sym.get(beta)
        if hit is None:
            k = sum(beta)
            scale = Fraction(mfact(beta), math.factorial(k))
            hit = {pe: c * scale for (te, pe), c in self._power(k).items() if te == beta}
            self._sym[beta] = hit
        return hit

    def to_sym(self, gamma) -> Dict:
        """Coordinates of the PBW monomial ``x^gamma`` in the symmetrized basis."""
        hit = self._tosym.get(gamma)
        if hit is None:
            hit = {gamma: ONE}
            for d, c in self.sym(gamma).items():
                if d != gamma:
                    lc_iadd(hit, self.to_sym(d), -c)
            self._tosym[gamma] = hit
        return hit

    def pair_keys(self, alpha, gamma) -> Fraction:
        if sum(alpha) > sum(gamma):
            return ZERO
        return self.to_sym(gamma).get(alpha, ZERO) * mfact(alpha)

    def pair(self, f: NCElement, u: NCElement) -> Fraction:
        if u.terms and f.valid < max(sum(k) for k in u.terms):
            raise WindowExceeded("pairing needs f beyond its validity bound")
        return sum(
            (cf * cu * self.pair_keys(a, g) for a, cf in f.terms.items() for g, cu in u.terms.items()),
            ZERO,
        )

    def gram(self, d: int) -> Dict:
        """``<d^a, sym(x^b)>`` for all |a|, |b| <= d (nonzero entries only)."""
        out = {}
        basis = exps_up_to(self.n, d)
        for a in basis:
            for b in basis:
                v = sum((c * self.pair_keys(a, g) for g, c in self.sym(b).items()), ZERO)
                if v:
                    out[(a, b)] = v
        return out

    def sym_product(self, beta, gamma) -> Dict:
        """Symmetrized coordinates of ``sym(x^beta) sym(x^gamma)``."""
        key = (beta, gamma)
        hit = self._prod.get(key)
        if hit is None:
            prod: Dict = {}
            sb, sg = self.sym(beta), self.sym(gamma)
            for p, cp in sb.items():
                for q, cq in sg.items():
                    lc_iadd(prod, self.U.mul_keys(p, q), cp * cq)
            hit = {}
            for m, c in prod.items():
                lc_iadd(hit, self.to_sym(m), c)
            self._prod[key] = hit
        return hit

    def coproduct_coeff(self, alpha, beta, gamma) -> Fraction:
        """Coefficient of ``d^beta (x) d^gamma`` in the coproduct of ``d^alpha``."""
        c = self.sym_product(beta, gamma).get(alpha, ZERO)
        if not c:
            return ZERO
        return c * Fraction(mfact(alpha), mfact(beta) * mfact(gamma))

    def action_keys(self, beta, gamma) -> Dict:
        """``d^beta > x^gamma = sum binom(gamma, delta) x^delta <d^beta, x^(gamma - delta)>``."""
        key = (beta, gamma)
        hit = self._act.get(key)
        if hit is None:
            hit = {}
            if sum(beta) <= sum(gamma):
                for d in sub_exps(gamma):
                    rest = tuple(a - b for a, b in zip(gamma, d))
                    p = self.pair_keys(beta, rest)
                    if p:
                        lc_iadd(hit, {d: p * mbinom(gamma, d)})
            self._act[key] = hit
        return hit


def dual_truncated_hopf(U: EnvelopingAlgebra, N: Optional[int], pairing: Optional[DualPairing] = None, names=None):
    """Hopf structure on ``S(g*)`` dual to U(g).

    For nilpotent g of step s the coproduct of ``d^a`` only reaches total degree
    ``s*|a|`` and is computed exactly; otherwise a total-degree bound is needed
    for every coproduct request.
    """
    pairing = pairing or DualPairing(U)
    lie = U.lie
    step = lie.nilpotency_step()
    names = names or [f"d{nm}" for nm in lie.names]
    T = TruncatedSymmetric(names, cap=None, name="S(g*)")
    n = U.n

    def cop(alpha, m1=None, m2=None):
        lo = sum(alpha)
        if lo == 0:
            return [(alpha, alpha, ONE)]
        hi = None if step is None else max(step, 1) * lo
        if hi is None and (m1 is None or m2 is None):
            raise InfiniteWindow("coproduct of the dual of a non-nilpotent algebra needs degree bounds")
        b1 = hi if m1 is None else (m1 if hi is None else min(m1, hi))
        out = []
        for d1 in range(b1 + 1):
            for beta in exps_of_degree(n, d1):
                b2 = (hi - d1) if m2 is None else (m2 if hi is None else min(m2, hi - d1))
                for d2 in range(max(0, lo - d1), b2 + 1):
                    for gamma in exps_of_degree(n, d2):
                        c = pairing.coproduct_coeff(alpha, beta, gamma)
                        if c:
                            out.append((beta, gamma, c))
        return out

    def antipode(alpha):
        return {alpha: ONE if sum(alpha) % 2 == 0 else -ONE}

    def counit(alpha):
        return ONE if not any(alpha) else ZERO

    h = HopfStructure(T, cop, counit, antipode, finite=step is not None, name="hopf(S(g*))")
    h.pairing = pairing
    h.step = step
    h.window_cap = N
    return h


# ---------------------------------------------------------------- YD data


class YDStructure:
    """Left T-action and right T-coaction on an algebra A.

    ``coaction_keys(a)`` returns ``{(a0, a1): c}``; ``coaction_valid`` is the
    T-degree up to which those components are exact.
    """

    def __init__(self, A, hopf: HopfStructure, action: Callable, coaction: Callable, coaction_valid=INF, name="yd"):
        self.A = A
        self.hopf = hopf
        self.T = hopf.ctx
        self._action = action
        self._coaction = coaction
        self.coaction_valid = coaction_valid
        self.name = name
        self.AT = TensorContext([A, self.T], name=f"{A.name}x{self.T.name}")
        self.ATT = TensorContext([A, self.T, self.T], name=f"{A.name}x{self.T.name}^2")
        self._act_cache: Dict = {}
        self._co_cache: Dict = {}
        self.a_hopf: Optional[HopfStructure] = None
        self.info: Dict = {}

    def action_keys(self, t, a) -> Dict:
        key = (t, a)
        hit = self._act_cache.get(key)
        if hit is None:
            hit = self._action(t, a)
            self._act_cache[key] = hit
        return hit

    def coaction_keys(self, a) -> Dict:
        hit = self._co_cache.get(a)
        if hit is None:
            hit = self._coaction(a)
            self._co_cache[a] = hit
        return hit

    # element level
    def act(self, t: NCElement, a: NCElement) -> NCElement:
        """``t > a``; result is untrusted (valid -1) if ``t`` is too short for ``a``."""
        out: Dict = {}
        for tk, tc in t.terms.items():
            for ak, ac in a.terms.items():
                lc_iadd(out, self.action_keys(tk, ak), tc * ac)
        ok = t.valid == INF or t.valid >= a.max_adeg()
        return NCElement(self.A, out, INF if ok else -1)

    def rho(self, a: NCElement) -> NCElement:
        out: Dict = {}
        for k, c in a.terms.items():
            lc_iadd(out, self.coaction_keys(k), c)
        return NCElement(self.AT, out, self.coaction_valid, a.abar if self.coaction_valid != INF else None)

    def mul_op(self, u: NCElement, v: NCElement) -> NCElement:
        """Product in ``A (x) T^op``: ``(a (x) s)(b (x) t) = ab (x) ts``."""
        A, T = self.A, self.T
        out: Dict = {}
        for (a, s), c1 in u.terms.items():
            for (b, t), c2 in v.terms.items():
                ab = A.mul_keys(a, b)
                ts = T.mul_keys(t, s)
                for k1, x1 in ab.items():
                    for k2, x2 in ts.items():
                        lc_iadd(out, {(k1, k2): c1 * c2 * x1 * x2})
        return NCElement(self.AT, out, min(u.valid, v.valid))


def adjoint_yd(G: GroupAlgebra, hopf: Optional[HopfStructure] = None, flipped=False) -> YDStructure:
    """Conjugation action ``g > h = g h g^-1`` with ``rho(h) = h (x) h^-1``.

    ``flipped`` installs ``rho(h) = h (x) h`` instead; it is a negative control.
    """
    hopf = hopf or group_hopf(G)

    def action(g, h):
        return {G.gmul(G.gmul(g, h), G.ginv(g)): ONE}

    def coaction(h):
        return {(h, h if flipped else G.ginv(h)): ONE}

    yd = YDStructure(G, hopf, action, coaction, INF, name="adjoint-flipped" if flipped else "adjoint")
    yd.info["coaction_adeg"] = 0
    return yd


def solve_coaction(U: EnvelopingAlgebra, pairing: DualPairing, mu: int, M: int, D: int, order=None) -> Dict:
    """Solve ``sum_b y_b (d^b > a) = a x_mu`` for ``y_b`` in ``U_{<=D}``, ``|b| <= M``.

    Equations are imposed for every PBW monomial ``a`` with deg ``a <= M``.  The
    ``order`` callable permutes the unknown ordering used during elimination.
    Returns ``{b: {pbw: c}}`` with zero components omitted.
    """
    n = U.n
    betas = exps_up_to(n, M)
    monos = exps_up_to(n, D)
    unknowns = [(b, m) for b in betas for m in monos]
    rank_of = {u: i for i, u in enumerate(sorted(unknowns, key=order) if order else unknowns)}
    RHS = ("rhs",)

    def korder(k):
        return (0, 0) if k == RHS else (1, rank_of[k])

    basis = SubspaceBasis(korder)
    xmu = tuple(1 if i == mu else 0 for i in range(n))
    for a in exps_up_to(n, M):
        rows: Dict = {}
        for b in betas:
            if sum(b) > sum(a):
                continue
            acted = pairing.action_keys(b, a)
            for ak, ac in acted.items():
                for m in monos:
                    for out, c in U.mul_keys(m, ak).items():
                        rows.setdefault(out, {})
                        lc_iadd(rows[out], {(b, m): ac * c})
        for out, c in U.mul_keys(a, xmu).items():
            rows.setdefault(out, {})
            lc_iadd(rows[out], {RHS: -c})
        for out in sorted(rows, key=lambda k: (sum(k), k)):
            if rows[out]:
                r = basis.insert(rows[out])
                if r and max(r, key=korder) == RHS:
                    raise NoSolution(f"coaction of generator {mu} has no solution with A-degree <= {D}")
    if basis.rank != len(unknowns):
        raise NonUniqueSolution(f"coaction of generator {mu}: rank {basis.rank} < {len(unknowns)} unknowns")
    sol: Dict = {}
    for row in basis.rows():
        p = max(row, key=korder)
        val = -row.get(RHS, ZERO)
        if val:
            b, m = p
            sol.setdefault(b, {})[m] = val
    return sol


def coaction_triangular(U: EnvelopingAlgebra, pairing: DualPairing, mu: int, M: int) -> Dict:
    """Oracle: ``y_g = (x^g x_mu - sum_{|b|<|g|} y_b (d^b > x^g)) / g!`` degree by degree."""
    n = U.n
    xmu = tuple(1 if i == mu else 0 for i in range(n))
    ys: Dict = {}
    for d in range(M + 1):
        for g in exps_of_degree(n, d):
            acc = dict(U.mul_keys(g, xmu))
            for b, yb in ys.items():
                if sum(b) >= d:
                    continue
                acted = pairing.action_keys(b, g)
                for m, c in yb.items():
                    for ak, ac in acted.items():
                        lc_iadd(acc, U.mul_keys(m, ak), -c * ac)
            acc = {k: c / mfact(g) for k, c in acc.items() if c}
            if acc:
                ys[g] = acc
    return {b: y for b, y in ys.items() if y}


def coaction_closed_form(U: EnvelopingAlgebra, pairing: DualPairing, mu: int, M: int) -> Dict:
    """Oracle: ``rho(x) = sum_b ad_{sym x^b}(x) (x) d^b / b!`` with ``ad_u x = u1 x S(u2)``."""
    h = ug_hopf(U)
    n = U.n
    xmu = tuple(1 if i == mu else 0 for i in range(n))
    out: Dict = {}
    for b in exps_up_to(n, M):
        acc: Dict = {}
        for p, cp in pairing.sym(b).items():
            for u1, u2, c in h.coproduct_terms(p):
                left = U.mul_keys(u1, xmu)
                for s, cs in h.antipode_keys(u2).items():
                    for m, cm in left.items():
                        lc_iadd(acc, U.mul_keys(m, s), cp * c * cs * cm)
        acc = {k: v / mfact(b) for k, v in acc.items() if v}
        if acc:
            out[b] = acc
    return out


def ug_yd(lie: LieAlgebra, N: int, prec: Optional[int] = None, a_cap: int = 1, order=None) -> YDStructure:
    """``A = U(g)`` over the dual ``T``; coaction obtained by solving braided commutativity.

    For nilpotent g the coaction is exact: the solver runs one degree past the
    step and must return zero there.  Otherwise components up to ``prec`` are kept.
    """
    U = EnvelopingAlgebra(lie, name="U(g)")
    pairing = DualPairing(U)
    hopf = dual_truncated_hopf(U, N, pairing)
    step = hopf.step
    if step is not None:
        M = max(step, 1) + 1
    else:
        M = N if prec is None else prec
    D = max(1, a_cap)
    gens = {}
    adeg = 0
    for mu in range(lie.dim):
        sol = solve_coaction(U, pairing, mu, M, D, order=order)
        if step is not None:
            tail = [b for b in sol if sum(b) >= max(step, 1)]
            if tail:
                raise NoSolution(f"coaction of {lie.names[mu]} does not terminate at the nilpotency step")
        gens[mu] = sol
        adeg = max([adeg] + [sum(m) for y in sol.values() for m in y])
    valid = INF if step is not None else M

    one = (0,) * lie.dim
    gen_rho = {}
    for mu, sol in gens.items():
        terms = {}
        for b, y in sol.items():
            for m, c in y.items():
                terms[(m, b)] = c
        gen_rho[mu] = terms
    cache: Dict = {one: {(one, one): ONE}}

    def coaction(e):
        hit = cache.get(e)
        if hit is not None:
            return hit
        last = max(i for i, k in enumerate(e) if k)
        prev = tuple(k - 1 if i == last else k for i, k in enumerate(e))
        left = coaction(prev)
        out: Dict = {}
        for (a, s), c1 in left.items():
            for (b, t), c2 in gen_rho[last].items():
                ts = tuple(x + y for x, y in zip(s, t))
                if valid != INF and sum(ts) > valid:
                    continue
                for k, c in U.mul_keys(a, b).items():
                    lc_iadd(out, {(k, ts): c1 * c2 * c})
        cache[e] = out
        return out

    yd = YDStructure(U, hopf, pairing.action_keys, coaction, valid, name=f"ug({','.join(lie.names)})")
    yd.a_hopf = ug_hopf(U)
    yd.pairing = pairing
    yd.generator_coaction = gens
    yd.info = {"coaction_adeg": adeg, "solver_degree": M, "nilpotency_step": step}
    return yd


# ---------------------------------------------------------------- validators


def _cut(v: Dict, tdeg, bound) -> Dict:
    if bound is None or bound == INF:
        return {k: c for k, c in v.items() if c}
    return {k: c for k, c in v.items() if c and tdeg(k) <= bound}


def _window_label(prefix: str, bound) -> str:
    return f"{prefix}<={bound}" if bound is not None and bound != INF else "exact"


def verify_hopf(h: HopfStructure, basis: List, prec: Optional[int] = None, prefix="hopf"):
    """Hopf laws on basis words, compared up to total degree ``prec``.

    Returns check records for coassociativity, both counit laws, both antipode
    laws and multiplicativity of the coproduct.
    """
    from .report import Tally

    ctx = h.ctx
    td = ctx.tdeg if ctx.kind != "pbw-lie" else ctx.adeg
    one = ctx.one_key()
    lab = _window_label("deg", prec)
    bound = INF if prec is None else prec

    def cop(k, p):
        return {(k1, k2): c for k1, k2, c in h.coproduct_terms(k, p, p) if p is None or td(k1) + td(k2) <= p}

    def sub(p, d):
        return None if p is None else p - d

    coassoc = Tally(f"{prefix}.coassociativity", "(D x id) D = (id x D) D", lab)
    counit = Tally(f"{prefix}.counit", "(e x id) D = id = (id x e) D", lab)
    anti = Tally(f"{prefix}.antipode", "m(S x id) D = 1 e = m(id x S) D", lab)
    mult = Tally(f"{prefix}.coproduct_multiplicative", "D(xy) = D(x) D(y)", lab)
    for k in basis:
        d = cop(k, prec)
        lhs: Dict = {}
        rhs: Dict = {}
        left_c: Dict = {}
        right_c: Dict = {}
        s_left: Dict = {}
        s_right: Dict = {}
        for (k1, k2), c in d.items():
            for (a, b), cc in cop(k1, sub(prec, td(k2))).items():
                lc_iadd(lhs, {(a, b, k2): c * cc})
            for (a, b), cc in cop(k2, sub(prec, td(k1))).items():
                lc_iadd(rhs, {(k1, a, b): c * cc})
            lc_iadd(left_c, {k2: c * h.counit(k1)})
            lc_iadd(right_c, {k1: c * h.counit(k2)})
            for s, cs in h.antipode_keys(k1).items():
                lc_iadd(s_left, ctx.mul_keys(s, k2), c * cs)
            for s, cs in h.antipode_keys(k2).items():
                lc_iadd(s_right, ctx.mul_keys(k1, s), c * cs)
        t3 = lambda key: sum(td(x) for x in key)
        diff = _cut(lhs, t3, bound)
        lc_iadd(diff, _cut(rhs, t3, bound), -1)
        coassoc.identity(NCElement(h.T3, diff, bound), ctx.basis_element(k))
        eps = {one: h.counit(k)} if h.counit(k) else {}
        for got in (left_c, right_c):
            r = _cut(dict(got), td, bound)
            lc_iadd(r, {k: ONE}, -1)
            counit.identity(NCElement(ctx, r, bound), ctx.basis_element(k))
        for got in (s_left, s_right):
            r = _cut(dict(got), td, bound)
            lc_iadd(r, eps, -1)
            anti.identity(NCElement(ctx, r, bound), ctx.basis_element(k))
    for k1 in basis:
        for k2 in basis:
            p = ctx.mul_keys(k1, k2)
            lhs = {}
            for m, c in p.items():
                lc_iadd(lhs, cop(m, prec), c)
            rhs = {}
            for (a1, b1), c1 in cop(k1, prec).items():
                for (a2, b2), c2 in cop(k2, prec).items():
                    for x, cx in ctx.mul_keys(a1, a2).items():
                        for y, cy in ctx.mul_keys(b1, b2).items():
                            lc_iadd(rhs, {(x, y): c1 * c2 * cx * cy})
            t2 = lambda key: td(key[0]) + td(key[1])
            r = _cut(lhs, t2, bound)
            lc_iadd(r, _cut(rhs, t2, bound), -1)
            mult.identity(NCElement(h.T2, r, bound), {"x": ctx.format_key(k1), "y": ctx.format_key(k2)})
    return [t.record() for t in (coassoc, counit, anti, mult)]


def tampered_antipode(h: HopfStructure, key, value) -> HopfStructure:
    """Copy of ``h`` whose antipode sends ``key`` to the basis word ``value``."""
    base = h.antipode_keys

    def antipode(k):
        return {value: ONE} if k == key else base(k)

    out = HopfStructure(h.ctx, h._coproduct, h._counit, antipode, h.finite, name=f"{h.name}-tampered")
    return out


def verify_duality(pairing: DualPairing, hopf: HopfStructure, N: int):
    """``<D_T f, u (x) v> = <f, u v>`` on basis triples with ``deg u + deg v <= N``,
    plus diagonality of the Gram matrix."""
    from .report import Tally

    n = pairing.n
    lab = f"deg<={N}"
    dual = Tally("hopf.duality", "<D_T f, u (x) v> = <f, u v>", lab)
    gram = Tally("hopf.pairing_gram", "<d^a, sym(x^b)> = delta_ab a!", lab)
    monos = exps_up_to(n, N)
    for f in monos:
        terms = hopf.coproduct_terms(f, N, N)
        for u in monos:
            for v in monos:
                if sum(u) + sum(v) > N:
                    continue
                lhs = sum(
                    (c * pairing.pair_keys(b, u) * pairing.pair_keys(g, v) for b, g, c in terms),
                    ZERO,
                )
                rhs = sum(
                    (c * pairing.pair_keys(f, m) for m, c in pairing.U.mul_keys(u, v).items()),
                    ZERO,
                )
                if lhs == rhs:
                    dual.ok(N)
                else:
                    dual.fail({"f": f, "u": u, "v": v, "lhs": str(lhs), "rhs": str(rhs)})
    g = pairing.gram(N)
    for a in monos:
        for b in monos:
            want = Fraction(mfact(a)) if a == b else ZERO
            if g.get((a, b), ZERO) == want:
                gram.ok()
            else:
                gram.fail({"a": a, "b": b, "value": str(g.get((a, b), ZERO))})
    return [dual.record(), gram.record()]


def verify_yd(yd: YDStructure, a_basis: List, t_basis: List, prec: Optional[int] = None):
    """Action, coaction, Yetter-Drinfeld and braided commutativity laws on basis pairs.

    On truncated tracks identities are compared up to T-degree
    ``min(prec, coaction validity)``.
    """
    from .report import Tally

    A, T, hopf = yd.A, yd.T, yd.hopf
    V = yd.coaction_valid if prec is None else min(prec, yd.coaction_valid)
    bound = V
    lab = _window_label("T", V)
    ad, td = A.adeg, T.tdeg
    one_a, one_t = A.one_key(), T.one_key()
    truncated = V != INF

    def cop(t, m1, m2):
        return hopf.coproduct_terms(t, m1, m2)

    def act(t, a):
        return yd.action_keys(t, a)

    def rho(a):
        return yd.coaction_keys(a)

    def mk(ctx, v, valid=INF):
        return NCElement(ctx, v, valid)

    action_law = Tally("yd.action_multiplicative", "t > (ab) = (t_(1) > a)(t_(2) > b)", lab)
    module = Tally("yd.action_module", "(st) > a = s > (t > a), 1 > a = a, t > 1 = e(t) 1", lab)
    alg = Tally("yd.coaction_algebra_map", "rho(ab) = rho(a) rho(b) in A (x) T^op", lab)
    coass = Tally("yd.coaction_coassociative", "(rho x id) rho = (id x D) rho, (id x e) rho = id", lab)
    ydc = Tally("yd.yd_condition", "(t_(2) > a)_[0] (x) (t_(2) > a)_[1] t_(1) = t_(1) > a_[0] (x) t_(2) a_[1]", lab)
    bc1 = Tally("yd.braided_commutativity", "x_[0] (x_[1] > a) = a x", lab)
    bc2 = Tally("yd.braided_commutativity_alt", "((S x_[1]) > a) x_[0] = x a", lab)
    agree = Tally("yd.bcalt_agreement", "both braided commutativity forms have the same truth value", lab)

    for t in t_basis:
        for a in a_basis:
            for b in a_basis:
                lhs: Dict = {}
                for m, c in A.mul_keys(a, b).items():
                    lc_iadd(lhs, act(t, m), c)
                rhs: Dict = {}
                for t1, t2, c in cop(t, ad(a), ad(b)):
                    for x, cx in act(t1, a).items():
                        for y, cy in act(t2, b).items():
                            lc_iadd(rhs, A.mul_keys(x, y), c * cx * cy)
                lc_iadd(lhs, rhs, -1)
                action_law.identity(mk(A, lhs), {"t": T.format_key(t), "a": A.format_key(a), "b": A.format_key(b)})
    for s in t_basis:
        for t in t_basis:
            for a in a_basis:
                lhs = {}
                for st, c in T.mul_keys(s, t).items():
                    lc_iadd(lhs, act(st, a), c)
                rhs = {}
                for x, cx in act(t, a).items():
                    lc_iadd(rhs, act(s, x), cx)
                lc_iadd(lhs, rhs, -1)
                module.identity(mk(A, lhs), {"s": T.format_key(s), "t": T.format_key(t), "a": A.format_key(a)})
    for a in a_basis:
        r = dict(act(one_t, a))
        lc_iadd(r, {a: ONE}, -1)
        module.identity(mk(A, r), {"a": A.format_key(a)})
    for t in t_basis:
        r = dict(act(t, one_a))
        e = hopf.counit(t)
        if e:
            lc_iadd(r, {one_a: e}, -1)
        module.identity(mk(A, r), {"t": T.format_key(t)})

    at_deg = lambda k: td(k[1])
    att_deg = lambda k: td(k[1]) + td(k[2])
    for a in a_basis:
        for b in a_basis:
            lhs = {}
            for m, c in A.mul_keys(a, b).items():
                lc_iadd(lhs, rho(m), c)
            rhs = {}
            for (a0, a1), c1 in rho(a).items():
                for (b0, b1), c2 in rho(b).items():
                    for x, cx in A.mul_keys(a0, b0).items():
                        for y, cy in T.mul_keys(b1, a1).items():
                            lc_iadd(rhs, {(x, y): c1 * c2 * cx * cy})
            r = _cut(lhs, at_deg, bound)
            lc_iadd(r, _cut(rhs, at_deg, bound), -1)
            alg.identity(mk(yd.AT, r, V), {"a": A.format_key(a), "b": A.format_key(b)})
    for a in a_basis:
        lhs = {}
        rhs = {}
        cu = {}
        for (a0, a1), c in rho(a).items():
            for (x0, x1), cx in rho(a0).items():
                lc_iadd(lhs, {(x0, x1, a1): c * cx})
            for t1, t2, ct in cop(a1, None if not truncated else V, None if not truncated else V):
                if truncated and td(t1) + td(t2) > V:
                    continue
                lc_iadd(rhs, {(a0, t1, t2): c * ct})
            e = hopf.counit(a1)
            if e:
                lc_iadd(cu, {a0: c * e})
        r = _cut(lhs, att_deg, bound)
        lc_iadd(r, _cut(rhs, att_deg, bound), -1)
        coass.identity(mk(yd.ATT, r, V), {"a": A.format_key(a)})
        lc_iadd(cu, {a: ONE}, -1)
        coass.identity(mk(A, cu, V), {"a": A.format_key(a)})

    for t in t_basis:
        for a in a_basis:
            lhs = {}
            for t1, t2, c in cop(t, None if not truncated else V, ad(a)):
                for x, cx in act(t2, a).items():
                    for (x0, x1), c0 in rho(x).items():
                        for y, cy in T.mul_keys(x1, t1).items():
                            lc_iadd(lhs, {(x0, y): c * cx * c0 * cy})
            rhs = {}
            for (a0, a1), c0 in rho(a).items():
                for t1, t2, c in cop(t, ad(a0), None if not truncated else V):
                    for x, cx in act(t1, a0).items():
                        for y, cy in T.mul_keys(t2, a1).items():
                            lc_iadd(rhs, {(x, y): c * c0 * cx * cy})
            r = _cut(lhs, at_deg, bound)
            lc_iadd(r, _cut(rhs, at_deg, bound), -1)
            ydc.identity(mk(yd.AT, r, V), {"t": T.format_key(t), "a": A.format_key(a)})

    for x in a_basis:
        for a in a_basis:
            if truncated and ad(a) > V:
                continue
            ax = A.mul_keys(a, x)
            xa = A.mul_keys(x, a)
            f1: Dict = {}
            f2: Dict = {}
            for (x0, x1), c in rho(x).items():
                for y, cy in act(x1, a).items():
                    lc_iadd(f1, A.mul_keys(x0, y), c * cy)
                for s, cs in hopf.antipode_keys(x1).items():
                    for y, cy in act(s, a).items():
                        lc_iadd(f2, A.mul_keys(y, x0), c * cs * cy)
            lc_iadd(f1, ax, -1)
            lc_iadd(f2, xa, -1)
            w = {"x": A.format_key(x), "a": A.format_key(a)}
            bc1.identity(mk(A, f1), w)
            bc2.identity(mk(A, f2), w)
            if bool(f1) == bool(f2):
                agree.ok()
            else:
                agree.fail(w, "the two forms disagree")
    return [t.record() for t in (action_law, module, alg, coass, ydc, bc1, bc2, agree)]
