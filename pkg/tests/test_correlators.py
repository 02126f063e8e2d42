from fractions import Fraction as F

import pytest

from fockcorr.combinat import ModuleLabel
from fockcorr.correlators import (CorrelatorRequest, a_npoint, correlator,
                                  corollary_b_lhs, corollary_b_rhs,
                                  corollary_b_rhs_log, corollary_d_lhs,
                                  corollary_d_rhs, em_half, em_one, f_bo,
                                  graded_trace_F, half_level_base, inv_qq,
                                  inv_theta_at, npoint, qdim, qq_series,
                                  refined_form1, refined_form2, refined_g,
                                  refined_level1, theta, theta_at, theta_k,
                                  weyl_correlator)
from fockcorr.errors import LabelError, PoleError
from fockcorr.laurent import LaurentPoly, RationalFunction
from fockcorr.qseries import (QSeries, RatFuncRing, RationalRing,
                              lattice_sum, pochhammer)

SV = ("s",)


def lp(terms):
    return LaurentPoly(SV, {tuple(e): F(c) for e, c in terms.items()})


class TestTheta:
    def test_leading_terms(self):
        th = theta(2)
        sm = lp({(1,): 1, (-1,): -1})
        assert th.coeff(0) == sm
        assert th.coeff(1) == -(sm * sm * sm)

    def test_antisymmetry(self):
        th = theta(8)
        flipped = th.map_coeffs(lambda c: c.invert_vars(("s",)))
        assert flipped.first_mismatch(-th) is None

    def test_first_derivative_constant_term(self):
        assert theta_k(1, 3).coeff(0) == lp({(1,): F(1, 2), (-1,): F(1, 2)})

    def test_derivative_at_one(self):
        ring = RatFuncRing(("s1",))
        assert theta_at(1, ring.one(), ring, 8).first_mismatch(
            QSeries.one(ring, 8)) is None
        assert theta_at(2, ring.one(), ring, 8).is_zero


class TestFbo:
    def test_one_point_closed_form(self):
        ring = RatFuncRing(("s1",))
        u = ring.var("s1")
        lhs = f_bo((u,), ring, 8)
        rhs = inv_qq(ring, 8) * inv_theta_at(u, ring, 8)
        assert lhs.first_mismatch(rhs) is None

    def test_one_point_eval_constant(self):
        ring = RationalRing()
        assert f_bo((F(2),), ring, 3).coeff(0) == F(2, 3)

    def test_one_point_antisymmetry(self):
        ring = RatFuncRing(("s1",))
        u = ring.var("s1")
        assert f_bo((ring.inv(u),), ring, 6).first_mismatch(
            -f_bo((u,), ring, 6)) is None

    @pytest.mark.parametrize("svals", [(F(2), F(3)), (F(2), F(3), F(5))])
    def test_symmetry_in_arguments(self, svals):
        ring = RationalRing()
        order = 5 if len(svals) == 2 else 4
        base = f_bo(svals, ring, order)
        swapped = f_bo(svals[::-1], ring, order)
        assert base.first_mismatch(swapped) is None

    def test_zero_point_kernel(self):
        ring = RationalRing()
        assert f_bo((), ring, 8).first_mismatch(inv_qq(ring, 8)) is None


class TestTypeA:
    def test_level1_one_point(self):
        ring = RatFuncRing(("s1",))
        u = ring.var("s1")
        a = a_npoint((3,), 1, (u,), ring, 8)
        ref = f_bo((u,), ring, 8).scale(ring.var("s1", 6)).shift(F(9, 2)).truncated(8)
        assert a.first_mismatch(ref) is None

    def test_level2_trivial_label(self):
        ring = RatFuncRing(("s1",))
        u = ring.var("s1")
        a = a_npoint((0, 0), 2, (u,), ring, 6)
        ref = f_bo((u,), ring, 6) ** 2 \
            * (QSeries.one(ring, 6) - QSeries.monomial(ring, 1, ring.one(), 6))
        assert a.first_mismatch(ref) is None

    def test_zero_label_prefactor(self):
        ring = RationalRing()
        a = a_npoint((0,) * 3, 3, (F(2),), ring, 5)
        pref = QSeries.one(ring, 5)
        for e in (1, 2, 1):  # j - i over i<j<=3
            pref = pref * (QSeries.one(ring, 5) - QSeries.monomial(ring, e, F(1), 5))
        ref = f_bo((F(2),), ring, 5) ** 3 * pref
        assert a.first_mismatch(ref) is None

    def test_negative_parts_allowed(self):
        ring = RationalRing()
        a = a_npoint((1, -2), 2, (F(2),), ring, 4)
        assert a.coeff(F(5, 2)) != 0  # leading exponent ||lam||^2/2 = 5/2
        with pytest.raises(LabelError):
            a_npoint((-2, 1), 2, (F(2),), ring, 4)


class TestBCDOnePoint:
    def setup_method(self):
        self.ring = RatFuncRing(("s1",))
        self.u = self.ring.var("s1")

    def tp(self, k):
        return self.ring.add(self.ring.var("s1", 2 * k), self.ring.var("s1", -2 * k))

    def test_d_level1(self):
        lab = ModuleLabel("d", 1, (0,), folded=True)
        d0 = npoint(lab, (self.u,), self.ring, 8)
        assert d0.first_mismatch(f_bo((self.u,), self.ring, 8) * F(2)) is None
        lab = ModuleLabel("d", 1, (2,))
        d2 = npoint(lab, (self.u,), self.ring, 8)
        ref = f_bo((self.u,), self.ring, 8).scale(self.tp(2)).shift(2).truncated(8)
        assert d2.first_mismatch(ref) is None

    def test_c_level1(self):
        fbo = f_bo((self.u,), self.ring, 8)
        for m in (0, 1, 2):
            lab = ModuleLabel("c", 1, (m,))
            got = npoint(lab, (self.u,), self.ring, 8)
            ref = (fbo.scale(self.tp(m)).shift(F(m * m, 2))
                   - fbo.scale(self.tp(m + 2)).shift(F((m + 2) ** 2, 2))).truncated(8)
            assert got.first_mismatch(ref) is None
        # constant term of the m = 0 case: 2/(t^{1/2}-t^{-1/2})
        lab = ModuleLabel("c", 1, (0,))
        c0 = npoint(lab, (self.u,), self.ring, 1)
        s = LaurentPoly.var(("s1",), "s1")
        expect = RationalFunction(LaurentPoly.const(("s1",), 2), s - s ** -1)
        assert c0.coeff(0) == expect

    def test_b_level1(self):
        lab = ModuleLabel("b", 1, (0,), spin=True)
        b0 = npoint(lab, (self.u,), self.ring, 8)
        ref = f_bo((self.u,), self.ring, 8).scale(self.tp(F(1, 2))).shift(F(1, 8)).truncated(8)
        assert b0.first_mismatch(ref) is None

    def test_b_matches_d_engine_formally(self):
        # the integer-level b formula coincides with the d formula in lambda
        w = (F(3, 2), F(1, 2))
        direct = weyl_correlator(w, "D", 2, (self.u,), self.ring, 6)
        via_label = npoint(ModuleLabel("b", 2, (1, 0), spin=True), (self.u,), self.ring, 6)
        assert via_label.first_mismatch(direct) is None

    def test_half_level_dispatch(self):
        lab = ModuleLabel("d", F(1, 2), (), folded=True)
        assert npoint(lab, (self.u,), self.ring, 6).first_mismatch(
            half_level_base("D", (self.u,), self.ring, 6)) is None
        lab = ModuleLabel("b", F(1, 2), (), spin=True)
        assert npoint(lab, (self.u,), self.ring, 6).first_mismatch(
            half_level_base("B", (self.u,), self.ring, 6)) is None

    def test_t_permutation_symmetry(self):
        ring = RationalRing()
        for algebra, level, lam, spin in (("d", 2, (1, 0), False),
                                          ("c", 2, (1, 1), False),
                                          ("b", 2, (1, 0), True)):
            lab = ModuleLabel(algebra, level, lam, spin=spin,
                              folded=not spin and lam[-1] == 0)
            a = npoint(lab, (F(2), F(3)), ring, 4)
            b = npoint(lab, (F(3), F(2)), ring, 4)
            assert a.first_mismatch(b) is None

    def test_t_inversion_parity(self):
        # X(t^{-1}) = -X(t) for the D/C/B observables, so every n-point
        # function flips by (-1)^n under inverting all arguments
        ring = RationalRing()
        cases = ((ModuleLabel("d", 1, (1,)), 1), (ModuleLabel("c", 1, (0,)), 1),
                 (ModuleLabel("b", 1, (0,), spin=True), 1),
                 (ModuleLabel("d", 1, (0,), folded=True), 2))
        for lab, n in cases:
            svals = (F(2), F(3))[:n]
            inv = tuple(1 / s for s in svals)
            a = npoint(lab, svals, ring, 3)
            b = npoint(lab, inv, ring, 3)
            ref = b if n % 2 == 0 else -b
            assert a.first_mismatch(ref) is None


class TestHalfLevelBases:
    def test_d_empty(self):
        ring = RatFuncRing(("s1",))
        assert half_level_base("D", (), ring, 8).first_mismatch(
            em_half(ring, 8)) is None

    def test_d_one_point_product_form(self):
        ring = RatFuncRing(("s1",))
        u = ring.var("s1")
        t, tinv = ring.var("s1", 2), ring.var("s1", -2)
        got = half_level_base("D", (u,), ring, 8)
        prod = (pochhammer(ring, ring.neg(t), F(1, 2), 1, 8)
                * pochhammer(ring, ring.neg(tinv), F(1, 2), 1, 8)
                * em_half(ring, 8).inverse()
                * inv_theta_at(u, ring, 8))
        assert got.first_mismatch(prod) is None

    def test_b_empty(self):
        ring = RatFuncRing(("s1",))
        got = half_level_base("B", (), ring, 8)
        ref = em_one(ring, 8 - F(1, 16)).shift(F(1, 16))
        assert got.first_mismatch(ref) is None

    def test_b_one_point_product_form(self):
        ring = RatFuncRing(("s1",))
        u = ring.var("s1")
        t, tinv = ring.var("s1", 2), ring.var("s1", -2)
        got = half_level_base("B", (u,), ring, 6)
        num = (pochhammer(ring, ring.neg(t), 1, 1, 6)
               * pochhammer(ring, ring.neg(tinv), 0, 1, 6)
               * qq_series(ring, 6) ** 2)
        den = (pochhammer(ring, t, 1, 1, 6)
               * pochhammer(ring, tinv, 0, 1, 6)
               * em_one(ring, 6) * F(2))
        ref = (num * den.inverse()).shift(F(1, 16))
        assert got.first_mismatch(ref) is None


class TestClosedSumForms:
    """The partition-identity sum forms of the two 1-point base functions."""

    def test_d_half_sum_form(self):
        # (-q^{1/2};q) [ 1/(t^{1/2}-t^{-1/2}) + sum_r (-1)^r (...) ]; the
        # bracket equals rhs-of-cor-d divided by (t^{1/2}-t^{-1/2})
        ring = RatFuncRing(("s",))
        u = ring.var("s")
        base = half_level_base("D", (u,), ring, 8)
        inv_sm = ring.inv(ring.add(ring.var("s"), ring.neg(ring.var("s", -1))))
        sum_form = em_half(ring, 8) * corollary_d_rhs(8).scale(inv_sm)
        assert base.first_mismatch(sum_form) is None

    def test_b_half_sum_form(self):
        # q^{1/16} (-q;q) [ (t+1)/(2(t-1)) + sum_r (-1)^r (...) ]
        ring = RatFuncRing(("s",))
        u = ring.var("s")
        base = half_level_base("B", (u,), ring, 8)
        sum_form = (em_one(ring, 8) * corollary_b_rhs(8)
                    * F(1, 2)).shift(F(1, 16))
        assert base.first_mismatch(sum_form, 8) is None


class TestGradedTraces:
    def test_ns_vacuum_trace(self):
        ring = RatFuncRing(("z",))
        gt = graded_trace_F("NS", (), ring, F(9, 2), zvar="z")
        ref = lattice_sum(ring, "int", ring.var("z"), F(9, 2)) * inv_qq(ring, F(9, 2))
        assert gt.first_mismatch(ref) is None

    def test_r_vacuum_lowest_term(self):
        ring = RationalRing()
        gt = graded_trace_F("R", (), ring, 1)
        assert gt.coeff(F(1, 8)) == 2  # k = +-1/2 both contribute q^{1/8}

    def test_ns_z_zero_coefficient_is_2fbo(self):
        ring = RatFuncRing(("s1", "z"))
        u = ring.var("s1")
        gt = graded_trace_F("NS", (u,), ring, 2, zvar="z")
        two_fbo = f_bo((u,), ring, 2) * F(2)
        for e, c in gt.sorted_terms():
            zpart = {}
            idx = ring.vars.index("z")
            for ee, cc in c.num.terms.items():
                if ee[idx] == 0:
                    zpart[ee] = cc
            znum = LaurentPoly(c.num.vars, zpart)
            ref = two_fbo.terms.get(e)
            if ref is None:
                assert RationalFunction(znum, c.den).is_zero
            else:
                assert RationalFunction(znum, c.den) == ref


class TestRefined:
    def test_g_constant_term(self):
        g = refined_g(6)
        s = LaurentPoly.var(SV, "s")
        assert g.coeff(0) == RationalFunction(LaurentPoly.const(SV, 2), s - s ** -1)

    def test_plus_minus_sum_is_full_correlator(self):
        ring = RatFuncRing(("s",))
        d0 = weyl_correlator((F(0),), "D", 1, (ring.var("s"),), ring, 6)
        total = refined_level1(1, 6) + refined_level1(-1, 6)
        assert total.first_mismatch(d0) is None

    def test_matches_displayed_forms(self):
        for sign in (1, -1):
            base = refined_level1(sign, 6)
            assert base.first_mismatch(refined_form1(sign, 6)) is None
            assert base.first_mismatch(refined_form2(sign, 6)) is None

    def test_literal_log_form_orientation_fails(self):
        # the printed Pochhammer ratio yields the negated correction
        lit = refined_form2(1, 6, literal=True)
        assert refined_level1(1, 6).first_mismatch(lit) is not None
        neg_corr = refined_form2(-1, 6, literal=True)
        assert refined_level1(1, 6).first_mismatch(neg_corr) is None


class TestQdim:
    def test_d_level1_trivial(self):
        qd = qdim(ModuleLabel("d", 1, (0,), folded=True), 10)
        assert qd.first_mismatch(inv_qq(RationalRing(), 10)) is None

    def test_c_level1_product(self):
        ring = RationalRing()
        for m in (0, 1, 2):
            qd = qdim(ModuleLabel("c", 1, (m,)), 10)
            ref = (inv_qq(ring, 10)
                   * (QSeries.one(ring, 10)
                      - QSeries.monomial(ring, 2 * (m + 1), F(1), 10)))
            ref = ref.shift(F(m * m, 2)).truncated(10)
            assert qd.first_mismatch(ref) is None

    def test_b_half_level_zero(self):
        qd = qdim(ModuleLabel("b", F(1, 2), (), spin=True), 10)
        ref = em_one(RationalRing(), 10).shift(F(1, 16))
        assert qd.first_mismatch(ref) is None

    def test_d_half_prefactor_positive_exponent(self):
        # the (-q^{1/2};q) prefactor (not the printed -q^{-1/2} variant)
        qd = qdim(ModuleLabel("d", F(1, 2), (), folded=True), 6)
        assert qd.first_mismatch(em_half(RationalRing(), 6)) is None
        assert min(qd.terms) == 0


class TestCorollaries:
    def test_d_identity(self):
        assert corollary_d_lhs(8).first_mismatch(corollary_d_rhs(8)) is None

    def test_b_identity_and_log_form(self):
        lhs = corollary_b_lhs(8)
        assert lhs.first_mismatch(corollary_b_rhs(8)) is None
        assert lhs.first_mismatch(corollary_b_rhs_log(8)) is None


class TestRequests:
    def test_eval_pole_guard_on_s(self):
        with pytest.raises(PoleError):
            CorrelatorRequest(ModuleLabel("d", 1, (0,), folded=True),
                              npoints=1, order=3, mode="eval", eval_points=(1,))

    def test_eval_pole_guard_on_products(self):
        req = CorrelatorRequest(ModuleLabel("d", 1, (0,), folded=True),
                                npoints=2, order=3, mode="eval",
                                eval_points=(2, F(1, 2)))
        with pytest.raises(PoleError):
            correlator(req)  # t1 t2 = 1 poisons a theta denominator

    def test_request_roundtrip(self):
        req = CorrelatorRequest(ModuleLabel("c", 1, (1,)), npoints=1,
                                order=2, mode="eval", eval_points=(2,))
        series = correlator(req)
        assert series.coeff(F(1, 2)) == (F(4) + F(1, 4)) / (F(2) - F(1, 2))
