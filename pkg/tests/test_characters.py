from fractions import Fraction as F
from itertools import permutations, product

import pytest

from fockcorr.characters import (character, denominator_det, det_laurent,
                                 dominant_coefficient, numerator_det,
                                 torus_vars)
from fockcorr.combinat import ModuleLabel
from fockcorr.errors import LabelError
from fockcorr.laurent import LaurentPoly, exact_div


def lp(vars_, terms):
    return LaurentPoly(vars_, {tuple(e): F(c) for e, c in terms.items()})


def test_sp2_characters():
    assert character("Sp2l", ModuleLabel("c", 1, (1,))) == \
        lp(("z1",), {(1,): 1, (-1,): 1})
    assert character("Sp2l", ModuleLabel("c", 1, (0,))) == lp(("z1",), {(0,): 1})


def test_o2_characters():
    assert character("O2l", ModuleLabel("d", 1, (3,))) == \
        lp(("z1",), {(3,): 1, (-3,): 1})
    assert character("O2l", ModuleLabel("d", 1, (0,), folded=True)) == \
        lp(("z1",), {(0,): 1})


def test_o3_character():
    ch = character("B2l1", ModuleLabel("d", F(3, 2), (1,)))
    assert ch == lp(("w1",), {(2,): 1, (0,): 1, (-2,): 1})  # z + 1 + 1/z


def test_pin2_character():
    ch = character("Pin2l", ModuleLabel("b", 1, (1,), spin=True))
    assert ch == lp(("w1",), {(3,): 1, (-3,): 1})  # z^{3/2} + z^{-3/2}


def test_dominant_coefficients():
    assert dominant_coefficient("O2l", ModuleLabel("d", 2, (1, 0), folded=True)) == 2
    assert dominant_coefficient("O2l", ModuleLabel("d", 2, (2, 1))) == 1
    assert dominant_coefficient("B2l1", ModuleLabel("d", F(5, 2), (2, 1))) == 1
    assert dominant_coefficient("B2l1", ModuleLabel("d", F(5, 2), (0, 0), folded=True)) == 1
    assert dominant_coefficient("Pin2l", ModuleLabel("b", 2, (1, 0), spin=True)) == 1


def test_spin_label_guards():
    with pytest.raises(LabelError):
        character("Pin2l", ModuleLabel("d", 2, (1, 0), folded=True))
    with pytest.raises(LabelError):
        character("Sp2l", ModuleLabel("b", 1, (1,), spin=True))


def _signed_images(ch, l):
    """All signed-permutation images of a character in its torus variables."""
    vars_ = ch.vars
    for perm in permutations(range(l)):
        for signs in product((1, -1), repeat=l):
            out = {}
            for e, c in ch.terms.items():
                ee = tuple(signs[i] * e[perm[i]] for i in range(l))
                out[ee] = out.get(ee, F(0)) + c
            yield LaurentPoly(vars_, out)


@pytest.mark.parametrize("family,label", [
    ("O2l", ModuleLabel("d", 2, (2, 1))),
    ("O2l", ModuleLabel("d", 3, (2, 1, 0), folded=True)),
    ("Sp2l", ModuleLabel("c", 2, (2, 1))),
    ("Sp2l", ModuleLabel("c", 3, (1, 1, 0))),
    ("B2l1", ModuleLabel("d", F(5, 2), (2, 0))),
    ("Pin2l", ModuleLabel("b", 2, (2, 1), spin=True)),
])
def test_weyl_group_invariance(family, label):
    ch = character(family, label)
    l = label.rank()
    for image in _signed_images(ch, l):
        assert image == ch


def test_o2l_restriction_sum():
    # lam_l != 0: ch^o = ch^so(lam) + ch^so(bar lam)
    lab = ModuleLabel("d", 2, (2, 1))
    cho = character("O2l", lab)
    num_p = numerator_det("O2l", (F(2), F(1)), 2)
    num_m = numerator_det("O2l", (F(2), F(1)), 2, "-")
    den = denominator_det("O2l", 2)
    so_lam = exact_div(num_p + num_m, den)
    so_bar = exact_div(num_p - num_m, den)
    assert cho == so_lam + so_bar
    assert character("SO2l", lab) == so_lam


def test_pin_factor_two_identity():
    # ch^pin equals literally 2 |z^{lam_i+l-i}+z^{-(lam_i+l-i)}| / |den|
    lab = ModuleLabel("b", 2, (2, 0), spin=True)
    ch = character("Pin2l", lab)
    num = numerator_det("Pin2l", lab.weight(), 2)
    den = denominator_det("Pin2l", 2)
    assert ch * den == num * 2


def _dimension_by_limit(family, label):
    """Substitute z_j = x^j and take the exact x -> 1 limit via division."""
    l = label.rank()
    num = numerator_det(family, label.weight(), l)
    den = denominator_det(family, l)
    xvar = ("x",)
    scale = 2 if family in ("B2l1", "Pin2l") else 1

    def to_x(p):
        out = {}
        for e, c in p.terms.items():
            d = sum((j + 1) * e[j] for j in range(l))
            out[(d,)] = out.get((d,), F(0)) + c
        return LaurentPoly(xvar, out)

    ratio = exact_div(to_x(num), to_x(den))
    val = ratio.eval_at({"x": F(1)})
    if family == "O2l" and label.lam and label.lam[-1] != 0:
        val *= 2
    if family == "Pin2l":
        val *= 2
    return val


@pytest.mark.parametrize("family,label,dim", [
    ("Sp2l", ModuleLabel("c", 1, (1,)), 2),
    ("Sp2l", ModuleLabel("c", 2, (1, 0)), 4),
    ("O2l", ModuleLabel("d", 2, (1, 0), folded=True), 4),
    ("B2l1", ModuleLabel("d", F(3, 2), (1,)), 3),
    ("Pin2l", ModuleLabel("b", 1, (2,), spin=True), 2),
])
def test_dimensions(family, label, dim):
    assert _dimension_by_limit(family, label) == dim
    ones = {v: F(1) for v in torus_vars(family, label.rank())}
    assert character(family, label).eval_at(ones) == dim


def test_det_laurent_bareiss_matches_cofactor():
    vars_ = ("z1",)
    rows5 = [[lp(vars_, {(i - j,): 1, (j - i,): 1}) for j in range(5)]
             for i in range(5)]
    by_bareiss = det_laurent(rows5)
    # cofactor on the same matrix via a 4x4 minor expansion by hand
    total = LaurentPoly.zero(vars_)
    for j in range(5):
        minor = [r[:j] + r[j + 1:] for r in rows5[1:]]
        term = rows5[0][j] * det_laurent(minor)
        total = total + (term if j % 2 == 0 else -term)
    assert by_bareiss == total
