"""Per-label oracle checks: the cleared duality identity has exactly one
dominant z-monomial per label numerator, so each closed-form correlator can
be read off the oracle's graded-trace product by extracting the coefficient
of z^{lambda+rho}.  This verifies every label individually rather than the
summed identity.
"""

from fractions import Fraction as F

from fockcorr.characters import (denominator_det, dominant_coefficient,
                                 torus_vars, _num_exponents)
from fockcorr.combinat import enumerate_labels
from fockcorr.correlators import npoint, qdim
from fockcorr.fock_oracle import OpSpec, SectorSpec, trace
from fockcorr.laurent import LaurentPoly
from fockcorr.qseries import LaurentRing, QSeries, RationalRing, lift_coeff


def _oracle_product(family, sector, opkind, l, svals, order, zscale):
    gvars = torus_vars(family, l)
    ring = LaurentRing(gvars)
    units = tuple(ring.from_fraction(F(s)) for s in svals)
    ops = [OpSpec(opkind, u) for u in units]
    lhs = QSeries.one(ring, order)
    for i in range(l):
        tr = trace(SectorSpec(1, 0, sector, order), ops, ring,
                   zvars=(gvars[i],), zscale=zscale)
        lhs = lhs * tr
    return ring, lhs.scale(lift_coeff(ring, denominator_det(family, l)))


def _extract(series, ring, exps):
    """The scalar q-series multiplying the monomial z^exps."""
    key = tuple(exps)
    out = {}
    for e, c in series.terms.items():
        v = c.terms.get(key)
        if v:
            out[e] = v
    return QSeries(RationalRing(), out, series.trunc, _clean=False)


def _dominant_key(family, label):
    exps = _num_exponents(family, label.weight(), label.rank())
    scale = 2 if family in ("B2l1", "Pin2l") else 1
    return tuple(int(scale * a) for a in exps)


def test_per_label_extraction_type_d_rank2():
    order = 6
    svals = (2,)
    ring, lhs = _oracle_product("O2l", "ns", "D", 2, svals, order, 1)
    scalar = RationalRing()
    units = (scalar.from_fraction(F(2)),)
    for label in enumerate_labels("d", 2, order):
        c_lam = 1 if label.lam[-1] == 0 else 2
        dom = dominant_coefficient("O2l", label)
        assert c_lam * dom == 2
        got = _extract(lhs, ring, _dominant_key("O2l", label)) * F(1, 2)
        ref = npoint(label, units, scalar, order)
        assert got.first_mismatch(ref, order) is None, label


def test_per_label_extraction_type_c_rank2():
    order = 6
    ring, lhs = _oracle_product("Sp2l", "ns", "C", 2, (2,), order, 1)
    scalar = RationalRing()
    units = (scalar.from_fraction(F(2)),)
    for label in enumerate_labels("c", 2, order):
        assert dominant_coefficient("Sp2l", label) == 1
        got = _extract(lhs, ring, _dominant_key("Sp2l", label))
        ref = npoint(label, units, scalar, order)
        assert got.first_mismatch(ref, order) is None, label


def test_per_label_extraction_type_b_rank2():
    order = 5
    ring, lhs = _oracle_product("Pin2l", "r", "B", 2, (2,), order, 2)
    scalar = RationalRing()
    units = (scalar.from_fraction(F(2)),)
    for label in enumerate_labels("b", 2, order):
        got = _extract(lhs, ring, _dominant_key("Pin2l", label)) * F(1, 2)
        ref = npoint(label, units, scalar, order)
        assert got.first_mismatch(ref, order) is None, label


def test_per_label_qdim_extraction_rank2():
    # n = 0: graded dimensions read off the pure q^{L0} traces
    order = 8
    ring, lhs = _oracle_product("O2l", "ns", "D", 2, (), order, 1)
    for label in enumerate_labels("d", 2, order):
        got = _extract(lhs, ring, _dominant_key("O2l", label)) * F(1, 2)
        ref = qdim(label, order)
        assert got.first_mismatch(ref, order) is None, label
