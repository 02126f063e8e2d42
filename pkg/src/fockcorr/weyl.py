"""Weyl groups of types B/C/D as signed permutations, rho vectors,
the q-polynomials sum_sigma (-1)^l(sigma) q^{||lam+rho-sigma(rho)||^2/2},
and the matching positive-root product form.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product

from .laurent import LaurentPoly
from .qseries import QSeries, RationalRing

TYPES = ("B", "C", "D")


def rho(wtype, l):
    """Half-sum of positive roots as an l-vector of Fractions."""
    if wtype == "D":
        return tuple(Fraction(l - 1 - i) for i in range(l))
    if wtype == "B":
        return tuple(Fraction(2 * (l - i) - 1, 2) for i in range(l))
    if wtype == "C":
        return tuple(Fraction(l - i) for i in range(l))
    raise ValueError(f"unknown Weyl type {wtype!r}")


@lru_cache(maxsize=None)
def elements(wtype, l):
    """All (perm, signs) pairs; perm maps positions, signs in {1,-1}^l.

    The element acts by (w v)_i = signs[i] * v[perm[i]].  Type D keeps only
    even numbers of sign flips.
    """
    if wtype not in TYPES:
        raise ValueError(f"unknown Weyl type {wtype!r}")
    out = []
    for perm in permutations(range(l)):
        for signs in product((1, -1), repeat=l):
            if wtype == "D" and signs.count(-1) % 2:
                continue
            out.append((perm, signs))
    return tuple(out)


def apply(elem, vec):
    perm, signs = elem
    return tuple(signs[i] * vec[perm[i]] for i in range(len(vec)))


def perm_sign(perm):
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        clen = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            clen += 1
        if clen % 2 == 0:
            sign = -sign
    return sign


def sign_char(wtype, elem):
    """(-1)^{length}, computed as det of the signed permutation matrix."""
    perm, signs = elem
    s = perm_sign(perm)
    if wtype in ("B", "C"):
        for x in signs:
            s *= x
    return s


def positive_roots(wtype, l):
    """Positive roots as coefficient vectors on the epsilon basis."""
    roots = []
    for i in range(l):
        for j in range(i + 1, l):
            e = [0] * l
            e[i], e[j] = 1, -1
            roots.append(tuple(e))
            e2 = [0] * l
            e2[i], e2[j] = 1, 1
            roots.append(tuple(e2))
    if wtype == "B":
        for i in range(l):
            e = [0] * l
            e[i] = 1
            roots.append(tuple(e))
    elif wtype == "C":
        for i in range(l):
            e = [0] * l
            e[i] = 2
            roots.append(tuple(e))
    return roots


def length_by_inversions(wtype, elem, l):
    """Number of positive roots sent to negative ones (the reduced-word length)."""
    perm, signs = elem
    count = 0
    for alpha in positive_roots(wtype, l):
        # image of the root under the linear map (w e_j = signs[pi^-1(j)] e_{pi^-1(j)})
        img = [0] * l
        for j, c in enumerate(alpha):
            if c:
                i = perm.index(j)
                img[i] += signs[i] * c
        # negative iff the first nonzero coordinate is negative
        for x in img:
            if x:
                if x < 0:
                    count += 1
                break
    return count


def _check_dominant(wtype, lam):
    lam = tuple(Fraction(x) for x in lam)
    if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
        raise ValueError(f"weight {lam} is not dominant (not weakly decreasing)")
    if lam and lam[-1] < 0:
        raise ValueError(f"weight {lam} is not dominant for type {wtype}")
    return lam


def weyl_sum(lam, wtype, l):
    """One record (sign, qexp, kvec) per group element, kvec = lam+rho-sigma(rho)."""
    lam = _check_dominant(wtype, lam)
    if len(lam) != l:
        raise ValueError("weight length must equal the rank")
    r = rho(wtype, l)
    out = []
    for elem in elements(wtype, l):
        sr = apply(elem, r)
        kvec = tuple(lam[i] + r[i] - sr[i] for i in range(l))
        qexp = sum(x * x for x in kvec) / 2
        out.append((sign_char(wtype, elem), qexp, kvec))
    return out


def weyl_qpoly(lam, wtype, l, order=None):
    """sum_sigma (-1)^l(sigma) q^{||lam+rho-sigma(rho)||^2/2} as a rational QSeries."""
    ring = RationalRing()
    out = QSeries.zero(ring, order)
    for sign, qexp, _ in weyl_sum(lam, wtype, l):
        if order is not None and qexp >= Fraction(order):
            continue
        out = out + QSeries.monomial(ring, qexp, Fraction(sign), order)
    return out


def weyl_sum_product_form(lam, wtype, l, order):
    """q^{||lam||^2/2} * prod_{alpha>0} (1 - q^{(lam+rho,alpha)})."""
    lam = _check_dominant(wtype, lam)
    ring = RationalRing()
    r = rho(wtype, l)
    out = QSeries.one(ring, order)
    for alpha in positive_roots(wtype, l):
        e = sum((lam[i] + r[i]) * alpha[i] for i in range(l))
        out = out * (QSeries.one(ring, order) - QSeries.monomial(ring, e, Fraction(1), order))
    shift = sum(x * x for x in lam) / 2
    return out.shift(shift)


def weyl_denominator_poly(wtype, l, variables=None):
    """sum_sigma (-1)^l(sigma) z^{sigma(rho)} as a Laurent polynomial.

    Type D uses integer z-exponents; type B has half-integer rho, so the
    result lives in square-root variables w_j with z_j = w_j^2.
    """
    r = rho(wtype, l)
    if wtype == "D":
        if variables is None:
            variables = tuple(f"z{j + 1}" for j in range(l))
        scale = 1
    elif wtype == "B":
        if variables is None:
            variables = tuple(f"w{j + 1}" for j in range(l))
        scale = 2
    else:
        raise ValueError("denominator helper covers types B and D")
    total = LaurentPoly.zero(variables)
    for elem in elements(wtype, l):
        sr = apply(elem, r)
        exps = tuple(int(scale * x) for x in sr)
        total = total + LaurentPoly.monomial(variables, exps, sign_char(wtype, elem))
    return total
