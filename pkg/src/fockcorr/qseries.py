"""Truncated formal q-series over a pluggable exact coefficient ring.

Exponents of q live in (1/16)*Z and are stored internally as integers in
sixteenths; the public API accepts and returns Fractions.  A series with
truncation T is known exactly for all exponents < T and unknown at >= T
(Laurent-style big-O, so negative exponents are representable).
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import ModeMismatchError, NonUnitError
from .laurent import LaurentPoly, RationalFunction

SIXTEENTH = 16


def to16(x) -> int:
    """Exact conversion of a q-exponent to sixteenths; denominator must divide 16."""
    f = Fraction(x)
    n = f * SIXTEENTH
    if n.denominator != 1:
        raise ValueError(f"q-exponent {f} has denominator not dividing 16")
    return int(n)


def from16(n: int) -> Fraction:
    return Fraction(n, SIXTEENTH)


# ---------------------------------------------------------------------------
# coefficient rings
# ---------------------------------------------------------------------------

class RationalRing:
    """Exact big rationals (evaluation mode)."""

    mode = "rational"
    vars = ()

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_fraction(self, c):
        return Fraction(c)

    def is_zero(self, c):
        return c == 0

    def eq(self, a, b):
        return a == b

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise NonUnitError("zero is not invertible")
        return 1 / Fraction(a)

    def coeff_json(self, c):
        return str(c)

    def coeff_from_json(self, data):
        return Fraction(data)

    def __eq__(self, other):
        return type(other) is RationalRing

    def __hash__(self):
        return hash("rational")

    def __repr__(self):
        return "RationalRing()"


class LaurentRing:
    """Multivariate Laurent polynomials in formal square-root / z variables."""

    mode = "laurent"

    def __init__(self, variables):
        self.vars = tuple(variables)

    def zero(self):
        return LaurentPoly.zero(self.vars)

    def one(self):
        return LaurentPoly.const(self.vars, 1)

    def from_fraction(self, c):
        return LaurentPoly.const(self.vars, c)

    def var(self, name, power=1, c=1):
        return LaurentPoly.var(self.vars, name, power, c)

    def is_zero(self, c):
        return c.is_zero

    def eq(self, a, b):
        return a == b

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if not a.is_monomial():
            raise NonUnitError("only monomials are units of the Laurent ring")
        return a ** -1

    def coeff_json(self, c):
        return c.to_json()

    def coeff_from_json(self, data):
        return LaurentPoly.from_json(self.vars, data)

    def __eq__(self, other):
        return type(other) is LaurentRing and self.vars == other.vars

    def __hash__(self):
        return hash(("laurent", self.vars))

    def __repr__(self):
        return f"LaurentRing({self.vars})"


class RatFuncRing:
    """Normalized rational functions over a Laurent ring (exact mode)."""

    mode = "ratfunc"

    def __init__(self, variables):
        self.vars = tuple(variables)

    def zero(self):
        return RationalFunction.const(self.vars, 0)

    def one(self):
        return RationalFunction.const(self.vars, 1)

    def from_fraction(self, c):
        return RationalFunction.const(self.vars, c)

    def var(self, name, power=1, c=1):
        return RationalFunction.from_laurent(LaurentPoly.var(self.vars, name, power, c))

    def is_zero(self, c):
        return c.is_zero

    def eq(self, a, b):
        return a == b

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a.is_zero:
            raise NonUnitError("zero is not invertible")
        return a.inverse()

    def coeff_json(self, c):
        return c.to_json()

    def coeff_from_json(self, data):
        return RationalFunction.from_json(self.vars, data)

    def __eq__(self, other):
        return type(other) is RatFuncRing and self.vars == other.vars

    def __hash__(self):
        return hash(("ratfunc", self.vars))

    def __repr__(self):
        return f"RatFuncRing({self.vars})"


def lift_coeff(target_ring, coeff):
    """Embed a coefficient into a wider ring (rational -> laurent -> ratfunc,
    or the same mode with a variable superset)."""
    if isinstance(coeff, (int, Fraction)):
        return target_ring.from_fraction(coeff)
    if isinstance(coeff, LaurentPoly):
        if set(coeff.vars) - set(target_ring.vars):
            raise ModeMismatchError(f"cannot embed vars {coeff.vars} into {target_ring.vars}")
        unit_map = {
            v: LaurentPoly.var(target_ring.vars, v) for v in coeff.vars
        }
        p = coeff.subst(target_ring.vars, unit_map)
        if target_ring.mode == "laurent":
            return p
        if target_ring.mode == "ratfunc":
            return RationalFunction.from_laurent(p)
        raise ModeMismatchError("cannot lower a Laurent coefficient to rational mode")
    if isinstance(coeff, RationalFunction):
        if target_ring.mode != "ratfunc":
            raise ModeMismatchError("rational functions only embed into ratfunc mode")
        if set(coeff.vars) - set(target_ring.vars):
            raise ModeMismatchError(f"cannot embed vars {coeff.vars} into {target_ring.vars}")
        unit_map = {
            v: LaurentPoly.var(target_ring.vars, v) for v in coeff.vars
        }
        return coeff.subst(target_ring.vars, unit_map)
    raise ModeMismatchError(f"unknown coefficient type {type(coeff)}")


# ---------------------------------------------------------------------------
# the series type
# ---------------------------------------------------------------------------

class QSeries:
    """Sparse truncated series: {exponent-in-16ths: coeff} + truncation."""

    __slots__ = ("ring", "terms", "trunc")

    def __init__(self, ring, terms, trunc, _clean=True):
        self.ring = ring
        self.trunc = trunc  # int sixteenths, or None for "known to all orders"
        if _clean:
            clean = {}
            for e, c in terms.items():
                if trunc is not None and e >= trunc:
                    continue
                if not ring.is_zero(c):
                    clean[int(e)] = c
            terms = clean
        self.terms = terms

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls, ring, trunc=None):
        return cls(ring, {}, None if trunc is None else to16(trunc), _clean=False)

    @classmethod
    def one(cls, ring, trunc=None):
        return cls.monomial(ring, 0, ring.one(), trunc)

    @classmethod
    def monomial(cls, ring, qexp, coeff=None, trunc=None):
        if coeff is None:
            coeff = ring.one()
        e = to16(qexp)
        t = None if trunc is None else to16(trunc)
        if ring.is_zero(coeff) or (t is not None and e >= t):
            return cls(ring, {}, t, _clean=False)
        return cls(ring, {e: coeff}, t, _clean=False)

    # -- inspection ----------------------------------------------------------
    @property
    def is_zero(self):
        return not self.terms

    def order16(self):
        """Lowest stored exponent; falls back to trunc for the zero series."""
        if self.terms:
            return min(self.terms)
        return self.trunc

    def coeff(self, qexp):
        e = to16(qexp)
        if self.trunc is not None and e >= self.trunc:
            raise ValueError(f"coefficient of q^{Fraction(qexp)} is beyond the truncation")
        return self.terms.get(e, self.ring.zero())

    def sorted_terms(self):
        return sorted(self.terms.items())

    def items(self):
        """(Fraction exponent, coeff) pairs in ascending exponent order."""
        return [(from16(e), c) for e, c in self.sorted_terms()]

    def trunc_frac(self):
        return None if self.trunc is None else from16(self.trunc)

    # -- arithmetic ------------------------------------------------------------
    def _check(self, other):
        if self.ring != other.ring:
            raise ModeMismatchError(
                f"series modes differ: {self.ring!r} vs {other.ring!r}")

    @staticmethod
    def _min_trunc(a, b):
        if a is None:
            return b
        if b is None:
            return a
        return min(a, b)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QSeries.monomial(self.ring, 0, self.ring.from_fraction(other))
        self._check(other)
        trunc = self._min_trunc(self.trunc, other.trunc)
        terms = dict(self.terms)
        ring = self.ring
        for e, c in other.terms.items():
            if e in terms:
                v = ring.add(terms[e], c)
                if ring.is_zero(v):
                    del terms[e]
                else:
                    terms[e] = v
            else:
                terms[e] = c
        if trunc is not None:
            terms = {e: c for e, c in terms.items() if e < trunc}
        return QSeries(ring, terms, trunc, _clean=False)

    __radd__ = __add__

    def __neg__(self):
        ring = self.ring
        return QSeries(ring, {e: ring.neg(c) for e, c in self.terms.items()},
                       self.trunc, _clean=False)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QSeries.monomial(self.ring, 0, self.ring.from_fraction(other))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, coeff):
        """Multiply by a ring coefficient."""
        ring = self.ring
        if ring.is_zero(coeff):
            return QSeries(ring, {}, self.trunc, _clean=False)
        out = {}
        for e, c in self.terms.items():
            v = ring.mul(c, coeff)
            if not ring.is_zero(v):
                out[e] = v
        return QSeries(ring, out, self.trunc, _clean=False)

    def shift(self, qexp):
        """Multiply by q**qexp."""
        d = to16(qexp)
        if d == 0:
            return self
        trunc = None if self.trunc is None else self.trunc + d
        return QSeries(self.ring, {e + d: c for e, c in self.terms.items()},
                       trunc, _clean=False)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(self.ring.from_fraction(other))
        self._check(other)
        ring = self.ring
        # trunc(a*b) = min(trunc_a + ord_b, trunc_b + ord_a)
        candidates = []
        for t, o in ((self.trunc, other.order16()), (other.trunc, self.order16())):
            if t is not None and o is not None:
                candidates.append(t + o)
        trunc = min(candidates) if candidates else None
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                if trunc is not None and e >= trunc:
                    continue
                v = ring.mul(c1, c2)
                if e in out:
                    v = ring.add(out[e], v)
                if ring.is_zero(v):
                    out.pop(e, None)
                else:
                    out[e] = v
        return QSeries(ring, out, trunc, _clean=False)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int):
            raise TypeError("integer power required")
        if n < 0:
            return self.inverse() ** (-n)
        out = QSeries.one(self.ring, None if self.trunc is None else from16(self.trunc))
        # bound the work: repeated squaring
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def inverse(self):
        """Multiplicative inverse; the lowest coefficient must be a unit."""
        if self.is_zero:
            raise NonUnitError("cannot invert the zero series")
        ring = self.ring
        v = min(self.terms)
        c0 = self.terms[v]
        c0inv = ring.inv(c0)  # raises NonUnitError if not a unit
        if self.trunc is None:
            rel_trunc = None
        else:
            rel_trunc = self.trunc - v  # relative orders known: [0, rel_trunc)
        # a = q^v * c0 * (1 + x); invert the (1 + x) part by recurrence
        rel = {e - v: c for e, c in self.terms.items()}
        if len(rel) == 1:
            inv_terms = {-v: c0inv}
            out_trunc = None if rel_trunc is None else rel_trunc - 2 * v
            return QSeries(ring, inv_terms, out_trunc, _clean=False)
        if rel_trunc is None:
            raise NonUnitError("cannot invert an untruncated non-monomial series")
        offsets = sorted(e for e in rel if e > 0)
        b = {0: c0inv}
        for e in range(1, rel_trunc):
            acc = None
            for d in offsets:
                if d > e:
                    break
                be = b.get(e - d)
                if be is None:
                    continue
                term = ring.mul(rel[d], be)
                acc = term if acc is None else ring.add(acc, term)
            if acc is None or ring.is_zero(acc):
                continue
            b[e] = ring.neg(ring.mul(c0inv, acc))
        out = {e - v: c for e, c in b.items() if not ring.is_zero(c)}
        return QSeries(ring, out, rel_trunc - 2 * v, _clean=False)

    def truncated(self, order):
        t = to16(order)
        trunc = t if self.trunc is None else min(t, self.trunc)
        return QSeries(self.ring, {e: c for e, c in self.terms.items() if e < trunc},
                       trunc, _clean=False)

    def map_coeffs(self, f):
        ring = self.ring
        out = {}
        for e, c in self.terms.items():
            v = f(c)
            if not ring.is_zero(v):
                out[e] = v
        return QSeries(ring, out, self.trunc, _clean=False)

    def map_to(self, target_ring, f):
        """Like map_coeffs but lands in a different coefficient ring."""
        out = {}
        for e, c in self.terms.items():
            v = f(c)
            if not target_ring.is_zero(v):
                out[e] = v
        return QSeries(target_ring, out, self.trunc, _clean=False)

    def convert(self, target_ring):
        """Lift every coefficient into a wider ring."""
        out = {}
        for e, c in self.terms.items():
            v = lift_coeff(target_ring, c)
            if not target_ring.is_zero(v):
                out[e] = v
        return QSeries(target_ring, out, self.trunc, _clean=False)

    # -- comparison --------------------------------------------------------------
    def first_mismatch(self, other, order=None):
        """First exponent below min(truncs, order) where coefficients differ,
        as (Fraction, coeff_self, coeff_other); None when equal."""
        self._check(other)
        upto = self._min_trunc(self.trunc, other.trunc)
        if order is not None:
            upto = self._min_trunc(upto, to16(order))
        if upto is None:
            raise ValueError("cannot compare two untruncated series without an order")
        ring = self.ring
        exps = sorted(set(self.terms) | set(other.terms))
        for e in exps:
            if e >= upto:
                break
            a = self.terms.get(e, ring.zero())
            b = other.terms.get(e, ring.zero())
            if not ring.eq(a, b):
                return (from16(e), a, b)
        return None

    def eq_to_order(self, other, order=None):
        return self.first_mismatch(other, order) is None

    # -- display / io ---------------------------------------------------------------
    def __repr__(self):
        if self.is_zero:
            body = "0"
        else:
            bits = []
            for e, c in self.sorted_terms():
                q = "" if e == 0 else (f"*q^{from16(e)}" if e != SIXTEENTH else "*q")
                bits.append(f"({c})" + q)
            body = " + ".join(bits)
        tail = "" if self.trunc is None else f" + O(q^{from16(self.trunc)})"
        return body + tail

    def to_json(self):
        return {
            "schema": "fock-correlators/1",
            "mode": self.ring.mode,
            "vars": list(self.ring.vars),
            "trunc": None if self.trunc is None else str(from16(self.trunc)),
            "terms": [
                {"q": str(from16(e)), "coeff": self.ring.coeff_json(c)}
                for e, c in self.sorted_terms()
            ],
        }

    def dumps(self, indent=None):
        return json.dumps(self.to_json(), indent=indent, sort_keys=False)

    @classmethod
    def from_json(cls, data):
        mode = data["mode"]
        variables = tuple(data.get("vars", ()))
        if mode == "rational":
            ring = RationalRing()
        elif mode == "laurent":
            ring = LaurentRing(variables)
        elif mode == "ratfunc":
            ring = RatFuncRing(variables)
        else:
            raise ModeMismatchError(f"unknown mode {mode!r}")
        trunc = None if data["trunc"] is None else to16(Fraction(data["trunc"]))
        terms = {}
        for item in data["terms"]:
            terms[to16(Fraction(item["q"]))] = ring.coeff_from_json(item["coeff"])
        return cls(ring, terms, trunc)

    @classmethod
    def loads(cls, text):
        return cls.from_json(json.loads(text))


# ---------------------------------------------------------------------------
# primitive series constructors
# ---------------------------------------------------------------------------

def series_mul(a: QSeries, b: QSeries) -> QSeries:
    return a * b


def series_inv(a: QSeries) -> QSeries:
    return a.inverse()


def pochhammer(ring, prefix, qshift, step, order) -> QSeries:
    """Truncation of prod_{r>=0} (1 - prefix * q^(qshift + r*step)).

    Factors with q-exponent >= order are congruent to 1 and omitted, except
    the r = 0 factor when qshift = 0 (e.g. the (1 - t^{-1}) of (t^{-1};q)).
    """
    qshift = Fraction(qshift)
    step = Fraction(step)
    order = Fraction(order)
    if step <= 0:
        raise ValueError("pochhammer requires step > 0")
    if qshift < 0:
        raise ValueError("pochhammer requires qshift >= 0")
    if isinstance(prefix, (int, Fraction)):
        prefix = ring.from_fraction(prefix)
    if qshift == 0 and ring.eq(prefix, ring.one()):
        raise ValueError("(1;q)_infinity vanishes: prefix 1 with qshift 0")
    out = QSeries.one(ring, order)
    r = 0
    while True:
        e = qshift + r * step
        if e >= order and not (r == 0 and qshift == 0):
            break
        factor = QSeries.one(ring, order) - QSeries.monomial(ring, e, prefix, order)
        out = out * factor
        r += 1
    return out.truncated(order)


def lattice_sum(ring, offsets, unit, order, *, half_unit=False) -> QSeries:
    """sum over k in offsets of unit^k * q^(k^2/2), truncated below ``order``.

    offsets: 'int' for Z, 'half' for 1/2 + Z.  With half_unit=True the
    ``unit`` argument is the square root of the weight and weight(k) =
    unit^(2k); this is required for half-integral offsets.
    """
    order = Fraction(order)
    if offsets not in ("int", "half"):
        raise ValueError("offsets must be 'int' or 'half'")
    if offsets == "half" and not half_unit:
        raise ValueError("half-integral offsets require half_unit=True")
    if isinstance(unit, (int, Fraction)):
        unit = ring.from_fraction(unit)
    out = QSeries.zero(ring, order)
    ks = []
    if offsets == "int":
        k = 0
        while Fraction(k * k, 2) < order:
            ks.append(Fraction(k))
            if k:
                ks.append(Fraction(-k))
            k += 1
    else:
        k = Fraction(1, 2)
        while k * k / 2 < order:
            ks.append(k)
            ks.append(-k)
            k += 1
    for k in ks:
        if half_unit:
            w = unit_pow(ring, unit, int(2 * k))
        else:
            w = unit_pow(ring, unit, int(k))
        out = out + QSeries.monomial(ring, k * k / 2, w, order)
    return out.truncated(order)


def unit_pow(ring, unit, k: int):
    """unit**k for possibly negative integer k (binary exponentiation)."""
    if k == 0:
        return ring.one()
    if k < 0:
        unit = ring.inv(unit)
        k = -k
    out = None
    base = unit
    while k:
        if k & 1:
            out = base if out is None else ring.mul(out, base)
        k >>= 1
        if k:
            base = ring.mul(base, base)
    return out
