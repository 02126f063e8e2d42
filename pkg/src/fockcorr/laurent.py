"""Exact multivariate Laurent polynomials and rational functions.

Half-integer powers of the correlation variables t_i never appear directly:
every module works in formal square roots s_i with t_i = s_i**2, so all
exponents here are plain integers.  Coefficients are exact Fractions.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from .errors import InexactDivisionError, PoleError

Exps = tuple  # integer exponent vector aligned with a variable tuple


def _fr(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class LaurentPoly:
    """Laurent polynomial: ordered variable names + {exponent vector: Fraction}.

    Instances are treated as immutable; never mutate ``terms`` after
    construction.
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, variables, terms, _clean=True):
        self.vars = tuple(variables)
        if _clean:
            clean = {}
            for exps, c in terms.items():
                c = _fr(c)
                if c:
                    e = tuple(exps)
                    if len(e) != len(self.vars):
                        raise ValueError("exponent vector length mismatch")
                    if any(not isinstance(x, int) for x in e):
                        if any(Fraction(x).denominator != 1 for x in e):
                            raise ValueError(f"non-integer exponent vector {e}")
                        e = tuple(int(x) for x in e)
                    clean[e] = clean.get(e, Fraction(0)) + c
            terms = {e: c for e, c in clean.items() if c}
        self.terms = terms
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, variables):
        return cls(variables, {}, _clean=False)

    @classmethod
    def const(cls, variables, c):
        c = _fr(c)
        n = len(tuple(variables))
        if not c:
            return cls(variables, {}, _clean=False)
        return cls(variables, {(0,) * n: c}, _clean=False)

    @classmethod
    def monomial(cls, variables, exps, c=1):
        c = _fr(c)
        if not c:
            return cls.zero(variables)
        return cls(variables, {tuple(exps): c}, _clean=True)

    @classmethod
    def var(cls, variables, name, power=1, c=1):
        variables = tuple(variables)
        exps = [0] * len(variables)
        exps[variables.index(name)] = power
        return cls.monomial(variables, exps, c)

    # -- predicates ----------------------------------------------------
    @property
    def is_zero(self):
        return not self.terms

    def is_const(self):
        return all(all(x == 0 for x in e) for e in self.terms)

    def const_value(self):
        if self.is_zero:
            return Fraction(0)
        if not self.is_const():
            raise ValueError("not a constant")
        return next(iter(self.terms.values()))

    def is_monomial(self):
        return len(self.terms) == 1

    def effective_vars(self):
        """Indices of variables that actually occur."""
        used = set()
        for e in self.terms:
            for i, x in enumerate(e):
                if x:
                    used.add(i)
        return used

    # -- arithmetic ----------------------------------------------------
    def _check(self, other):
        if self.vars != other.vars:
            raise ValueError(f"variable mismatch: {self.vars} vs {other.vars}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(self.vars, other)
        self._check(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = t.get(e, Fraction(0)) + c
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return LaurentPoly(self.vars, t, _clean=False)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.vars, {e: -c for e, c in self.terms.items()}, _clean=False)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(self.vars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _fr(other)
            if not c:
                return LaurentPoly.zero(self.vars)
            return LaurentPoly(self.vars, {e: v * c for e, v in self.terms.items()}, _clean=False)
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, Fraction(0)) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return LaurentPoly(self.vars, out, _clean=False)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int):
            raise TypeError("integer power required")
        if n < 0:
            if not self.is_monomial():
                raise InexactDivisionError("negative power of a non-monomial")
            (e, c), = self.terms.items()
            return LaurentPoly.monomial(self.vars, tuple(x * n for x in e), c ** n)
        out = LaurentPoly.const(self.vars, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(self.vars, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    # -- structure -----------------------------------------------------
    def min_exps(self):
        """Componentwise minimum exponent (0 vector for the zero poly)."""
        n = len(self.vars)
        if not self.terms:
            return (0,) * n
        mins = [min(e[i] for e in self.terms) for i in range(n)]
        return tuple(mins)

    def shift(self, exps):
        """Multiply by the monomial with exponent vector ``exps``."""
        if all(x == 0 for x in exps):
            return self
        return LaurentPoly(
            self.vars,
            {tuple(a + b for a, b in zip(e, exps)): c for e, c in self.terms.items()},
            _clean=False,
        )

    def lex_lead(self):
        """(exps, coeff) of the lexicographically largest exponent vector."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms)
        return e, self.terms[e]

    def content(self):
        """Positive rational content gcd(coefficients)."""
        if not self.terms:
            return Fraction(1)
        nums = 0
        dens = 1
        for c in self.terms.values():
            nums = gcd(nums, c.numerator)
            dens = lcm(dens, c.denominator)
        return Fraction(nums, dens)

    def map_coeffs(self, f):
        return LaurentPoly(self.vars, {e: f(c) for e, c in self.terms.items()})

    def scale_exp_weighted(self, weights):
        """Apply the derivation sending a monomial m to (sum w_i e_i) * m.

        With weights 1/2 on an s-variable this is t d/dt for t = s**2.
        """
        out = {}
        for e, c in self.terms.items():
            w = sum(wi * ei for wi, ei in zip(weights, e))
            if w:
                out[e] = c * w
        return LaurentPoly(self.vars, out, _clean=False)

    def invert_vars(self, names):
        """Substitute v -> 1/v for each named variable."""
        idx = [i for i, v in enumerate(self.vars) if v in names]
        if not idx:
            return self
        out = {}
        for e, c in self.terms.items():
            ee = list(e)
            for i in idx:
                ee[i] = -ee[i]
            out[tuple(ee)] = c
        return LaurentPoly(self.vars, out, _clean=False)

    def subst(self, target_vars, unit_map):
        """Substitute each variable by a (unit) LaurentPoly in ``target_vars``.

        ``unit_map[name]`` must be a monomial so negative exponents stay
        representable.
        """
        out = LaurentPoly.zero(target_vars)
        for e, c in self.terms.items():
            m = LaurentPoly.const(target_vars, c)
            for name, k in zip(self.vars, e):
                if k:
                    m = m * (unit_map[name] ** k)
            out = out + m
        return out

    def eval_at(self, point):
        """Exact evaluation; every variable must be bound to a Fraction."""
        total = Fraction(0)
        vals = []
        for v in self.vars:
            if v not in point:
                raise PoleError(f"unbound variable {v!r}")
            vals.append(_fr(point[v]))
        for e, c in self.terms.items():
            term = c
            for val, k in zip(vals, e):
                if k:
                    if val == 0 and k < 0:
                        raise PoleError("negative power of zero")
                    term *= val ** k
            total += term
        return total

    # -- display / io ----------------------------------------------------
    def sorted_terms(self):
        return sorted(self.terms.items())

    def __repr__(self):
        if self.is_zero:
            return "0"
        bits = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"{v}^{k}" for v, k in zip(self.vars, e) if k
            )
            bits.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(bits)

    def to_json(self):
        return [
            {"exps": {v: k for v, k in zip(self.vars, e) if k}, "coeff": str(c)}
            for e, c in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, variables, data):
        variables = tuple(variables)
        terms = {}
        for mono in data:
            exps = tuple(mono["exps"].get(v, 0) for v in variables)
            terms[exps] = Fraction(mono["coeff"])
        return cls(variables, terms)


def exact_div(num: LaurentPoly, den: LaurentPoly) -> LaurentPoly:
    """Exact quotient in the Laurent ring; raises if den does not divide num."""
    if den.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    if num.is_zero:
        return LaurentPoly.zero(num.vars)
    num._check(den)
    nshift = num.min_exps()
    dshift = den.min_exps()
    # normalize both to honest polynomials; the quotient of the normalized
    # parts is again a polynomial, so lex long division applies
    n0 = num.shift(tuple(-x for x in nshift))
    d0 = den.shift(tuple(-x for x in dshift))
    dlead_e, dlead_c = d0.lex_lead()
    quot = {}
    rem = n0
    while not rem.is_zero:
        rlead_e, rlead_c = rem.lex_lead()
        qe = tuple(a - b for a, b in zip(rlead_e, dlead_e))
        if any(x < 0 for x in qe):
            raise InexactDivisionError("inexact division")
        qc = rlead_c / dlead_c
        quot[qe] = qc
        rem = rem - d0.shift(qe) * qc
    q = LaurentPoly(num.vars, quot, _clean=False)
    total_shift = tuple(a - b for a, b in zip(nshift, dshift))
    return q.shift(total_shift)


def try_exact_div(num, den):
    try:
        return exact_div(num, den)
    except InexactDivisionError:
        return None


def _univariate_coeffs(p: LaurentPoly, idx: int):
    """Dense coefficient list of a poly using only variable ``idx`` (min exp 0)."""
    deg = max(e[idx] for e in p.terms)
    out = [Fraction(0)] * (deg + 1)
    for e, c in p.terms.items():
        out[e[idx]] = c
    return out


def _univariate_gcd(a, b):
    """Monic gcd of dense Fraction coefficient lists."""
    def norm(x):
        while x and not x[-1]:
            x.pop()
        return x

    a, b = norm(list(a)), norm(list(b))
    while b:
        # a mod b
        d = len(b) - 1
        lead = b[-1]
        r = list(a)
        while len(r) - 1 >= d and norm(r):
            k = len(r) - 1 - d
            f = r[-1] / lead
            for i, bc in enumerate(b):
                r[k + i] -= f * bc
            r = norm(r)
            if not r:
                break
        a, b = b, r
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


class RationalFunction:
    """Quotient of Laurent polynomials in canonical form.

    Canonical form: den is monomial-free (min exponent 0 per variable), its
    lexicographically leading coefficient is +1, and the shared rational
    content of num is reduced.  Equality is decided by cross-multiplication,
    so correctness never rests on the gcd heuristic.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: LaurentPoly, den: LaurentPoly):
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        num._check(den)
        num, den = self._normalize(num, den)
        self.num = num
        self.den = den
        self._hash = None

    @staticmethod
    def _normalize(num, den):
        if num.is_zero:
            return num, LaurentPoly.const(den.vars, 1)
        # pure Laurent content of den moves to num
        dshift = den.min_exps()
        if any(dshift):
            den = den.shift(tuple(-x for x in dshift))
            num = num.shift(tuple(-x for x in dshift))
        # single shared effective variable: univariate gcd over Q
        evars = num.effective_vars() | den.effective_vars()
        if len(evars) == 1:
            idx = next(iter(evars))
            nshift = num.min_exps()
            n0 = num.shift(tuple(-x for x in nshift))
            g = _univariate_gcd(_univariate_coeffs(n0, idx), _univariate_coeffs(den, idx))
            if len(g) > 1:
                vars_ = num.vars
                gpoly = LaurentPoly(
                    vars_,
                    {tuple(k if i == idx else 0 for i in range(len(vars_))): c
                     for k, c in enumerate(g) if c},
                )
                n0 = exact_div(n0, gpoly)
                den = exact_div(den, gpoly)
                num = n0.shift(nshift)
                dshift2 = den.min_exps()
                if any(dshift2):
                    den = den.shift(tuple(-x for x in dshift2))
                    num = num.shift(tuple(-x for x in dshift2))
        # rational content: den lex-leading coefficient becomes +1
        _, lead = den.lex_lead()
        if lead != 1:
            den = den.map_coeffs(lambda c: c / lead)
            num = num.map_coeffs(lambda c: c / lead)
        return num, den

    # -- constructors ---------------------------------------------------
    @classmethod
    def from_laurent(cls, p: LaurentPoly):
        return cls(p, LaurentPoly.const(p.vars, 1))

    @classmethod
    def const(cls, variables, c):
        variables = tuple(variables)
        return cls(LaurentPoly.const(variables, c), LaurentPoly.const(variables, 1))

    @property
    def vars(self):
        return self.num.vars

    @property
    def is_zero(self):
        return self.num.is_zero

    def is_laurent(self):
        return self.den.is_const()

    def as_laurent(self):
        """Exact Laurent form; raises InexactDivisionError when not polynomial."""
        return exact_div(self.num, self.den)

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalFunction.const(self.vars, other)
        if isinstance(other, LaurentPoly):
            return RationalFunction.from_laurent(other)
        return other

    def __add__(self, other):
        other = self._coerce(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        a, b, c, d = self.num, self.den, other.num, other.den
        if b == d:
            return RationalFunction(a + c, b)
        q = try_exact_div(d, b)
        if q is not None:  # d = b*q
            return RationalFunction(a * q + c, d)
        q = try_exact_div(b, d)
        if q is not None:
            return RationalFunction(a + c * q, b)
        return RationalFunction(a * d + c * b, b * d)

    __radd__ = __add__

    def __neg__(self):
        out = RationalFunction.__new__(RationalFunction)
        out.num = -self.num
        out.den = self.den
        out._hash = None
        return out

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        a, b, c, d = self.num, self.den, other.num, other.den
        # cheap cross-cancellations keep central-term denominators small
        q = try_exact_div(a, d)
        if q is not None:
            a, d = q, LaurentPoly.const(a.vars, 1)
        else:
            q = try_exact_div(c, b)
            if q is not None:
                c, b = q, LaurentPoly.const(a.vars, 1)
        return RationalFunction(a * c, b * d)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * other.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = RationalFunction.const(self.vars, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return (self.num * other.den) == (other.num * self.den)

    def __hash__(self):
        # canonical form is not unique across gcd-misses, so hash by a
        # gcd-independent invariant only (value at nothing: degree data
        # would still clash); use the cheap canonical pair and accept that
        # equal-but-unreduced pairs are rare for our constructions
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def invert_vars(self, names):
        return RationalFunction(self.num.invert_vars(names), self.den.invert_vars(names))

    def subst(self, target_vars, unit_map):
        num = self.num.subst(target_vars, unit_map)
        den = self.den.subst(target_vars, unit_map)
        return RationalFunction(num, den)

    def eval_at(self, point):
        d = self.den.eval_at(point)
        if d == 0:
            raise PoleError("denominator vanishes at the evaluation point")
        return self.num.eval_at(point) / d

    def __repr__(self):
        if self.den.is_const() and self.den.const_value() == 1:
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, variables, data):
        return cls(
            LaurentPoly.from_json(variables, data["num"]),
            LaurentPoly.from_json(variables, data["den"]),
        )


def rf_normalize(num: LaurentPoly, den: LaurentPoly) -> RationalFunction:
    """Canonicalize num/den (the RationalFunction constructor does the work)."""
    return RationalFunction(num, den)


def eval_at(x, point):
    """Exact evaluation of a LaurentPoly or RationalFunction."""
    return x.eval_at(point)
