"""The scalar-extension Hopf algebroid ``H = A#T`` and its structure maps.

``H (x)_A H`` is never built as a quotient.  Congruence modulo the kernel
ideal ``I_A`` is decided through Lu's section ``P(h (x) a#t) = beta(a)h (x) 1#t``,
which is a projection of ``H (x) H`` with kernel exactly ``I_A``.
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Optional, Tuple

from .algebra import INF, NCElement, SmashContext, TensorContext, Window
from .hopf_yd import YDStructure
from .kernel import SubspaceBasis, lc_iadd


class SmashAlgebroid:
    def __init__(self, yd: YDStructure, prec: Optional[int] = None):
        self.yd = yd
        self.A = yd.A
        self.T = yd.T
        self.hopf = yd.hopf
        self.exact = yd.coaction_valid == INF and self.hopf.finite
        self.prec = INF if self.exact else (prec if prec is not None else yd.coaction_valid)
        self.H = SmashContext(self.A, self.T, self.hopf.coproduct_terms, yd.action_keys, name="H")
        self.H2 = TensorContext([self.H, self.H], name="H^2")
        self.H3 = TensorContext([self.H, self.H, self.H], name="H^3")
        self._tau: Dict = {}
        self._beta: Dict = {}
        self._sgen: Dict = {}
        self._one_t = self.T.one_key()
        self._one_a = self.A.one_key()

    # -------------------------------------------------------------- embeddings

    def hkey(self, a=None, t=None):
        return (self._one_a if a is None else a, self._one_t if t is None else t)

    def h(self, a=None, t=None) -> NCElement:
        return self.hb(self.hkey(a, t))

    def hb(self, key) -> NCElement:
        """Basis element of H carrying the working precision on truncated tracks."""
        return self.H.basis_element(key, valid=self.prec)

    def hb2(self, key) -> NCElement:
        return self.H2.basis_element(key, valid=self.prec)

    def alpha(self, a: NCElement) -> NCElement:
        return self.H.embed_a(a)

    def beta_key(self, a) -> NCElement:
        hit = self._beta.get(a)
        if hit is None:
            rho = self.yd.coaction_keys(a)
            hit = NCElement(
                self.H,
                {(a0, a1): c for (a0, a1), c in rho.items()},
                self.yd.coaction_valid,
                None if self.exact else self.A.adeg(a),
            )
            self._beta[a] = hit
        return hit

    def beta(self, a: NCElement) -> NCElement:
        out = self.H.zero()
        for k, c in a.terms.items():
            out = out + c * self.beta_key(k)
        return out

    def pure2(self, x: NCElement, y: NCElement) -> NCElement:
        return self.H2.pure([x, y])

    # -------------------------------------------------------------- structure maps

    def delta_rep(self, x: NCElement) -> NCElement:
        """Representative ``(a#t1) (x) (1#t2)`` of the coproduct."""
        p = min(self.prec, x.valid)
        prec = None if p == INF else p
        out: Dict = {}
        td = self.T.tdeg
        for (a, t), c in x.terms.items():
            for t1, t2, cc in self.hopf.coproduct_terms(t, prec, prec):
                if prec is not None and td(t1) + td(t2) > prec:
                    continue
                lc_iadd(out, {((a, t1), (self._one_a, t2)): c * cc})
        return NCElement(self.H2, out, p, None if p == INF else x.abar)

    def epsilon(self, x: NCElement) -> NCElement:
        out: Dict = {}
        for (a, t), c in x.terms.items():
            e = self.hopf.counit(t)
            if e:
                lc_iadd(out, {a: c * e})
        return NCElement(self.A, out, INF if x.valid >= 0 else -1)

    def tau_key(self, key) -> NCElement:
        """``tau(a#t) = S(t) S^2(a_[1]) . a_[0]`` with products in H."""
        hit = self._tau.get(key)
        if hit is not None:
            return hit
        a, t = key
        T, hopf = self.T, self.hopf
        st = hopf.antipode_keys(t)
        grouped: Dict = {}
        for (a0, a1), c in self.yd.coaction_keys(a).items():
            s2: Dict = {}
            for k, ck in hopf.antipode_keys(a1).items():
                lc_iadd(s2, hopf.antipode_keys(k), ck)
            acc = grouped.setdefault(a0, {})
            for k1, c1 in st.items():
                for k2, c2 in s2.items():
                    for k, cm in T.mul_keys(k1, k2).items():
                        lc_iadd(acc, {k: c * c1 * c2 * cm})
        v = self.yd.coaction_valid
        left_valid = INF if v == INF else v + T.tdeg(t)
        out = self.H.zero()
        for a0, tv in grouped.items():
            left = NCElement(self.H, {(self._one_a, k): c for k, c in tv.items()}, left_valid,
                             None if left_valid == INF else 0)
            out = out + left * self.hb((a0, self._one_t))
        if out.valid == INF and not self.exact:
            out = out.with_valid(left_valid)
        self._tau[key] = out
        return out

    def tau(self, x: NCElement) -> NCElement:
        out = NCElement(self.H, {}, x.valid - (x.abar if x.valid != INF else 0))
        for k, c in x.terms.items():
            out = out + c * self.tau_key(k)
        return out

    def antipode_t(self, t: NCElement) -> NCElement:
        return self.hopf.antipode(t)

    # -------------------------------------------------------------- generators in H (x) H

    def I_gen(self, a: NCElement) -> NCElement:
        """``I(a) = beta(a) (x) 1 - 1 (x) alpha(a)``."""
        one = self.H.one()
        return self.pure2(self.beta(a), one) - self.pure2(one, self.alpha(a))

    def S_gen_key(self, a) -> NCElement:
        """``S a_[1] (x) a_[0]``."""
        hit = self._sgen.get(a)
        if hit is None:
            out: Dict = {}
            for (a0, a1), c in self.yd.coaction_keys(a).items():
                for s, cs in self.hopf.antipode_keys(a1).items():
                    lc_iadd(out, {((self._one_a, s), (a0, self._one_t)): c * cs})
            v = self.yd.coaction_valid
            hit = NCElement(self.H2, out, v, None if v == INF else self.A.adeg(a))
            self._sgen[a] = hit
        return hit

    def S_gen(self, a: NCElement) -> NCElement:
        out = self.H2.zero()
        for k, c in a.terms.items():
            out = out + c * self.S_gen_key(k)
        return out

    def X_gen(self, a: NCElement) -> NCElement:
        return self.pure2(self.alpha(a), self.H.one())

    def R_gen(self, a: NCElement) -> NCElement:
        """``R(a) = a (x) 1 - S a_[1] (x) a_[0]``."""
        return self.X_gen(a) - self.S_gen(a)

    def delta_t_gen(self, t: NCElement) -> NCElement:
        """``Delta_T(t)`` placed in ``1#T (x) 1#T``."""
        return self.delta_rep(self.H.embed_t(t))

    # -------------------------------------------------------------- multiplication maps

    def mu(self, u: NCElement) -> NCElement:
        out = NCElement(self.H, {}, _cap(u))
        for (h, k), c in u.terms.items():
            out = out + c * (self.hb(h) * self.hb(k))
        return out

    def mu_id_tau(self, u: NCElement) -> NCElement:
        """``h (x) k -> h tau(k)``."""
        out = NCElement(self.H, {}, _cap(u))
        for (h, k), c in u.terms.items():
            out = out + c * (self.hb(h) * self.tau_key(k))
        return out

    def mu_tau_id(self, u: NCElement) -> NCElement:
        """``h (x) k -> tau(h) k``."""
        out = NCElement(self.H, {}, _cap(u))
        for (h, k), c in u.terms.items():
            out = out + c * (self.tau_key(h) * self.hb(k))
        return out

    # -------------------------------------------------------------- I_A and congruence

    def gamma(self, u: NCElement) -> NCElement:
        """Lu's section applied to a representative: ``sum beta(a_i) h_i (x) 1#t_i``."""
        out = NCElement(self.H2, {}, _cap(u))
        grouped: Dict = {}
        for (h, (a, t)), c in u.terms.items():
            grouped.setdefault((a, h), {})
            lc_iadd(grouped[(a, h)], {t: c})
        for (a, h), tv in grouped.items():
            left = self.beta_key(a) * self.hb(h)
            right = NCElement(self.H, {(self._one_a, t): c for t, c in tv.items()})
            out = out + self.pure2(left, right)
        return out

    def in_IA(self, u: NCElement) -> Tuple[bool, float]:
        """Membership in ``I_A`` via ``gamma(u) = 0``; returns ``(ok, horizon)``."""
        g = self.gamma(u)
        return g.is_zero(), g.valid

    def congruent(self, u: NCElement, v: NCElement) -> Tuple[bool, float]:
        return self.in_IA(u - v)

    def takeuchi_witness(self, u: NCElement, a_basis: Iterable) -> Optional[Tuple]:
        """First basis ``a`` with ``u (beta(a) (x) 1) != u (1 (x) alpha(a))`` mod ``I_A``."""
        one = self.H.one()
        horizon = INF
        for a in a_basis:
            ae = self.A.basis_element(a)
            lhs = u * self.pure2(self.beta(ae), one)
            rhs = u * self.pure2(one, self.alpha(ae))
            ok, hz = self.congruent(lhs, rhs)
            horizon = min(horizon, hz)
            if not ok:
                return a, lhs - rhs, hz
        return None

    def takeuchi_member(self, u: NCElement, a_basis: Iterable) -> bool:
        return self.takeuchi_witness(u, a_basis) is None

    def ia_generators(self, a_basis, hk_basis) -> List[NCElement]:
        """``I(a)(h (x) k)`` over the given basis keys."""
        out = []
        for a in a_basis:
            ia = self.I_gen(self.A.basis_element(a))
            for hk in hk_basis:
                out.append(ia * self.H2.basis_element(hk))
        return out

    def ia_basis(self, window: Optional[Window] = None) -> SubspaceBasis:
        """Span of ``I(a)(h (x) k)`` with every factor inside ``window``.

        On finite tracks this is all of ``I_A``.  On the Lie track only exact
        components up to the window T-degree are kept.
        """
        w = window or Window()
        a_basis = self.A.enumerate_basis(Window(a=w.a))
        hk = self.H2.enumerate_basis(w)
        basis = SubspaceBasis(self.H2.sort_key)
        for a in a_basis:
            ia = self.I_gen(self.A.basis_element(a))
            for key in hk:
                if w.a is not None and self.A.adeg(a) + self.H2.adeg(key) > w.a:
                    continue
                x = ia * self.H2.basis_element(key)
                if w.t is not None:
                    if x.valid < w.t:
                        continue
                    x = x.truncated(w.t)
                basis.insert(x.terms)
        return basis

    # -------------------------------------------------------------- three-fold congruence

    def gamma3(self, u: NCElement) -> NCElement:
        """Normal form modulo relations in slots (1,2) and (2,3)."""
        out = NCElement(self.H3, {}, _cap(u))
        mid = NCElement(self.H3, {}, _cap(u))
        for (h, k, (a, t)), c in u.terms.items():
            bk = self.beta_key(a) * self.hb(k)
            mid = mid + c * self.H3.pure([self.hb(h), bk, self.h(t=t)])
        for (h, (a, t), l), c in mid.terms.items():
            bh = self.beta_key(a) * self.hb(h)
            out = out + c * self.H3.pure([bh, self.h(t=t), self.hb(l)])
        return out.with_valid(min(out.valid, mid.valid))


def _cap(u: NCElement) -> float:
    """Validity ceiling inherited by linear maps that may lower T-degree by the A-degree."""
    if u.valid == INF:
        return INF
    return u.valid - u.abar
