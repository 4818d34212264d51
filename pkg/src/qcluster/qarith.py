"""Exact coefficient arithmetic: Laurent polynomials and rational functions in s = q^(1/6).

All q-power exponents live on the lattice (1/6)Z and are stored as integer
multiples of 1/6 ("sixths").  Coefficients are exact rationals.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce

# exponents are ints counting sixths of a q-power: q^r <-> 6*r


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"not a rational: {x!r}")


def six(r) -> int:
    """Convert a rational q-exponent to sixth-units; error if denominator does not divide 6."""
    r = _as_fraction(r)
    r6 = r * 6
    if r6.denominator != 1:
        raise ValueError(f"exponent {r} not representable on the (1/6)Z lattice")
    return int(r6)


class QLaurent:
    """Laurent polynomial in s (= q^(1/6)) over Q, canonical form: no zero coefficients."""

    __slots__ = ("_c",)

    def __init__(self, coeffs=None, _trusted=False):
        if coeffs is None:
            self._c = {}
        elif _trusted:
            self._c = coeffs
        else:
            c = {}
            for e, v in dict(coeffs).items():
                v = _as_fraction(v)
                if v:
                    c[int(e)] = v
            self._c = c

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls):
        return cls({}, _trusted=True)

    @classmethod
    def one(cls):
        return cls({0: Fraction(1)}, _trusted=True)

    @classmethod
    def from_rational(cls, v):
        v = _as_fraction(v)
        return cls({0: v} if v else {}, _trusted=True)

    @classmethod
    def q_power(cls, r):
        """The monomial q^r, r rational with denominator dividing 6."""
        return cls({six(r): Fraction(1)}, _trusted=True)

    @classmethod
    def s_power(cls, e6, coeff=1):
        coeff = _as_fraction(coeff)
        return cls({int(e6): coeff} if coeff else {}, _trusted=True)

    # -- views ---------------------------------------------------------

    @property
    def coeffs(self):
        return self._c

    def is_zero(self):
        return not self._c

    def is_one(self):
        return self._c == {0: Fraction(1)}

    def is_monomial(self):
        return len(self._c) == 1

    def monomial_parts(self):
        """(exponent-in-sixths, coefficient) of a monomial; error otherwise."""
        if len(self._c) != 1:
            raise ValueError("not a monomial")
        return next(iter(self._c.items()))

    def min_six(self):
        return min(self._c)

    def max_six(self):
        return max(self._c)

    # -- ring operations ------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QLaurent.from_rational(other)
        if isinstance(other, QRational):
            return other.__radd__(self)
        if not isinstance(other, QLaurent):
            return NotImplemented
        a, b = self._c, other._c
        if len(a) < len(b):
            a, b = b, a
        c = dict(a)
        for e, v in b.items():
            w = c.get(e)
            if w is None:
                c[e] = v
            else:
                w = w + v
                if w:
                    c[e] = w
                else:
                    del c[e]
        return QLaurent(c, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return QLaurent({e: -v for e, v in self._c.items()}, _trusted=True)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            v = _as_fraction(other)
            if not v:
                return QLaurent.zero()
            return QLaurent({e: c * v for e, c in self._c.items()}, _trusted=True)
        if isinstance(other, QRational):
            return other.__rmul__(self)
        if not isinstance(other, QLaurent):
            return NotImplemented
        a, b = self._c, other._c
        if not a or not b:
            return QLaurent.zero()
        if len(b) == 1:
            (eb, vb), = b.items()
            return QLaurent({ea + eb: va * vb for ea, va in a.items()}, _trusted=True)
        if len(a) == 1:
            (ea, va), = a.items()
            return QLaurent({ea + eb: va * vb for eb, vb in b.items()}, _trusted=True)
        c = {}
        for ea, va in a.items():
            for eb, vb in b.items():
                e = ea + eb
                w = c.get(e)
                if w is None:
                    c[e] = va * vb
                else:
                    w = w + va * vb
                    if w:
                        c[e] = w
                    else:
                        del c[e]
        return QLaurent(c, _trusted=True)

    __rmul__ = __mul__

    def shifted(self, e6, coeff=1):
        """Multiply by coeff * s^e6 (fast path used by torus phase bookkeeping)."""
        if coeff == 1:
            if e6 == 0:
                return self
            return QLaurent({e + e6: v for e, v in self._c.items()}, _trusted=True)
        coeff = _as_fraction(coeff)
        if not coeff:
            return QLaurent.zero()
        return QLaurent({e + e6: v * coeff for e, v in self._c.items()}, _trusted=True)

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if self.is_monomial():
                e, v = self.monomial_parts()
                return QLaurent({e * n: v ** n}, _trusted=True)
            raise ValueError("negative power of a non-monomial QLaurent")
        out = QLaurent.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse(self):
        """Inverse of a monomial; error otherwise."""
        e, v = self.monomial_parts()
        return QLaurent({-e: Fraction(1) / v}, _trusted=True)

    def bar(self):
        """The bar involution q -> q^(-1)."""
        return QLaurent({-e: v for e, v in self._c.items()}, _trusted=True)

    def exact_div(self, other):
        """Exact division by another QLaurent; raises ValueError if not divisible."""
        q = divide_exact(self, other)
        if q is None:
            raise ValueError("not divisible")
        return q

    # -- comparison ------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QLaurent.from_rational(other)
        if isinstance(other, QRational):
            return other == self
        if not isinstance(other, QLaurent):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    # -- rendering ---------------------------------------------------------

    def render(self):
        """Textual form like '3*q^(1/2) - q^(-2)'; exponents printed as rationals."""
        if not self._c:
            return "0"
        parts = []
        for e in sorted(self._c, reverse=True):
            v = self._c[e]
            neg = v < 0
            av = -v if neg else v
            if e == 0:
                body = str(av)
            else:
                r = Fraction(e, 6)
                expo = str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"
                qq = f"q^({expo})" if (r != 1) else "q"
                body = qq if av == 1 else f"{av}*{qq}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)

    __str__ = render

    def __repr__(self):
        return f"QLaurent({self.render()})"


def parse_qlaurent(text: str) -> QLaurent:
    """Parse the render() grammar back into a QLaurent (round-trip inverse)."""
    s = text.strip()
    if s == "0":
        return QLaurent.zero()
    s = s.replace("- ", "+ -").replace("+ +", "+ ")
    out = QLaurent.zero()
    for tok in s.split("+"):
        tok = tok.strip()
        if not tok:
            continue
        sign = 1
        if tok.startswith("-"):
            sign = -1
            tok = tok[1:].strip()
        coeff = Fraction(1)
        expo = Fraction(0)
        for piece in tok.split("*"):
            piece = piece.strip()
            if piece.startswith("q"):
                if piece == "q":
                    expo = Fraction(1)
                else:
                    inner = piece[2:].strip()
                    if inner.startswith("(") and inner.endswith(")"):
                        inner = inner[1:-1]
                    expo = Fraction(inner)
            else:
                coeff = Fraction(piece)
        out = out + QLaurent.s_power(six(expo), sign * coeff)
    return out


# -- spec-level operations -------------------------------------------------


def qpow(r) -> QLaurent:
    """q^r as a QLaurent; r must have denominator dividing 6."""
    return QLaurent.q_power(r)


def qnumber(k: int, d=1) -> QLaurent:
    """[k] at q_d = q^d, i.e. (q_d^k - q_d^(-k)) / (q_d - q_d^(-1)), expanded exactly."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    d6 = six(d)
    out = {}
    for j in range(k):
        e = d6 * (k - 1 - 2 * j)
        out[e] = out.get(e, Fraction(0)) + 1
    return QLaurent(out)


def qfactorial(k: int, d=1) -> QLaurent:
    out = QLaurent.one()
    for j in range(1, k + 1):
        out = out * qnumber(j, d)
    return out


def qbinomial(n: int, k: int, d=1) -> QLaurent:
    """[n]!/([n-k]![k]!) at q_d; exact (division always clears)."""
    num = qfactorial(n, d)
    den = qfactorial(n - k, d) * qfactorial(k, d)
    return num.exact_div(den)


# -- polynomial helpers on s-exponent dicts ---------------------------------


def divide_exact(a: QLaurent, b: QLaurent):
    """a / b if exact, else None.  Laurent division: s-power shifts are units."""
    if b.is_zero():
        raise ZeroDivisionError("division by zero QLaurent")
    if a.is_zero():
        return QLaurent.zero()
    rem = dict(a.coeffs)
    bl = b.coeffs
    bmax = max(bl)
    blead = bl[bmax]
    quo = {}
    # peel from the top s-degree down; terminates since degree span shrinks
    while rem:
        rmax = max(rem)
        rmin = min(rem)
        if (rmax - rmin) < (bmax - min(bl)):
            return None
        sh = rmax - bmax
        cf = rem[rmax] / blead
        quo[sh] = cf
        for e, v in bl.items():
            ee = e + sh
            w = rem.get(ee, Fraction(0)) - cf * v
            if w:
                rem[ee] = w
            else:
                rem.pop(ee, None)
    return QLaurent(quo, _trusted=True)


def _poly_from_qlaurent(a: QLaurent):
    """Shift to polynomial form: returns (list of Fraction coeffs low->high, shift)."""
    if a.is_zero():
        return [], 0
    lo = a.min_six()
    hi = a.max_six()
    coeffs = [Fraction(0)] * (hi - lo + 1)
    for e, v in a.coeffs.items():
        coeffs[e - lo] = v
    return coeffs, lo


def _poly_mod(a, b):
    """Remainder of polynomial division a mod b (lists of Fractions, b nonzero)."""
    a = a[:]
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < db:
            break
        f = a[-1] / lb
        sh = len(a) - 1 - db
        for i, bv in enumerate(b):
            a[sh + i] -= f * bv
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_gcd(a: QLaurent, b: QLaurent) -> QLaurent:
    """gcd in Q[s] after clearing s-powers, normalized monic in lowest s-degree."""
    pa, _ = _poly_from_qlaurent(a)
    pb, _ = _poly_from_qlaurent(b)
    # drop trailing zeros at the low end (s-power units)
    def strip_low(p):
        i = 0
        while i < len(p) and p[i] == 0:
            i += 1
        return p[i:]
    pa, pb = strip_low(pa), strip_low(pb)
    while pb:
        pa, pb = pb, _poly_mod(pa, pb)
        pb = strip_low(pb)
    if not pa:
        return QLaurent.zero()
    lead = next(v for v in pa if v)  # lowest-degree coefficient
    return QLaurent({i: v / lead for i, v in enumerate(pa) if v}, _trusted=True)


def _sj_factor(j6: int) -> QLaurent:
    """The factor s^j - s^(-j) (j in sixth-units, positive)."""
    return QLaurent({j6: Fraction(1), -j6: Fraction(-1)}, _trusted=True)


class QRational:
    """Fraction of QLaurents.

    The denominator is kept as a multiset of factors (s^j - s^(-j)) plus an
    opaque residual part; all denominators arising from q-series coefficients
    stay in factored shape so reduction never needs a general gcd.  Equality
    cross-multiplies; reduced() gives the gcd-canonical form of the contract.
    """

    __slots__ = ("num", "fac", "rest")

    def __init__(self, num: QLaurent, fac=None, rest=None):
        self.num = num
        self.fac = dict(fac) if fac else {}
        self.rest = rest if rest is not None else QLaurent.one()
        if self.rest.is_zero():
            raise ZeroDivisionError("zero denominator")
        self._trial_reduce()

    # -- construction ----------------------------------------------------

    @classmethod
    def from_laurent(cls, a: QLaurent):
        return cls(a)

    @classmethod
    def from_fraction(cls, num: QLaurent, den: QLaurent):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        return cls(num, {}, den)

    @classmethod
    def sj_inverse(cls, num: QLaurent, js):
        """num / prod_j (s^j - s^(-j)) with js an iterable of sixth-unit exponents."""
        fac = {}
        for j in js:
            fac[j] = fac.get(j, 0) + 1
        return cls(num, fac)

    # -- normalization -----------------------------------------------------

    def _trial_reduce(self):
        if self.num.is_zero():
            self.fac = {}
            self.rest = QLaurent.one()
            return
        for j in list(self.fac):
            while self.fac.get(j, 0) > 0:
                q = divide_exact(self.num, _sj_factor(j))
                if q is None:
                    break
                self.num = q
                self.fac[j] -= 1
            if self.fac.get(j) == 0:
                del self.fac[j]
        if not self.rest.is_one():
            q = divide_exact(self.num, self.rest)
            if q is not None:
                self.num = q
                self.rest = QLaurent.one()

    def den(self) -> QLaurent:
        d = self.rest
        for j, m in self.fac.items():
            for _ in range(m):
                d = d * _sj_factor(j)
        return d

    def is_zero(self):
        return self.num.is_zero()

    def is_laurent(self):
        return not self.fac and self.rest.is_one()

    def as_laurent(self) -> QLaurent:
        if self.is_laurent():
            return self.num
        r = self.reduced()
        if r.is_laurent():
            return r.num
        # allow pure s-power denominators (units)
        if r.rest.is_monomial() and not r.fac:
            e, v = r.rest.monomial_parts()
            return r.num.shifted(-e, Fraction(1) / v)
        raise ValueError("QRational does not clear to a Laurent polynomial")

    def reduced(self) -> "QRational":
        """gcd-canonical form: numerator/denominator coprime, denominator monic in lowest s-degree."""
        num, den = self.num, self.den()
        if num.is_zero():
            return QRational(QLaurent.zero())
        g = poly_gcd(num, den)
        if not g.is_one():
            num = num.exact_div(g)
            den = den.exact_div(g)
        # normalize: denominator monic in its lowest s-degree term, as a pure polynomial anchor
        lo = den.min_six()
        lead = den.coeffs[lo]
        den = den.shifted(-lo, Fraction(1) / lead)
        num = num.shifted(-lo, Fraction(1) / lead)
        out = QRational.__new__(QRational)
        out.num = num
        out.fac = {}
        out.rest = den
        return out

    # -- arithmetic -----------------------------------------------------------

    @staticmethod
    def _coerce(x):
        if isinstance(x, QRational):
            return x
        if isinstance(x, QLaurent):
            return QRational(x)
        if isinstance(x, (int, Fraction)):
            return QRational(QLaurent.from_rational(x))
        return None

    def __mul__(self, other):
        o = QRational._coerce(other)
        if o is None:
            return NotImplemented
        fac = dict(self.fac)
        for j, m in o.fac.items():
            fac[j] = fac.get(j, 0) + m
        return QRational(self.num * o.num, fac, self.rest * o.rest)

    __rmul__ = __mul__

    def __neg__(self):
        out = QRational.__new__(QRational)
        out.num = -self.num
        out.fac = dict(self.fac)
        out.rest = self.rest
        return out

    def __add__(self, other):
        o = QRational._coerce(other)
        if o is None:
            return NotImplemented
        # common denominator: max multiplicities on factored part, product on rest
        fac = {}
        for j in set(self.fac) | set(o.fac):
            fac[j] = max(self.fac.get(j, 0), o.fac.get(j, 0))
        if self.rest == o.rest:
            rest = self.rest
            ra = rb = QLaurent.one()
        else:
            rest = self.rest * o.rest
            ra, rb = o.rest, self.rest
        na = self.num * ra
        nb = o.num * rb
        for j, m in fac.items():
            da = m - self.fac.get(j, 0)
            db = m - o.fac.get(j, 0)
            for _ in range(da):
                na = na * _sj_factor(j)
            for _ in range(db):
                nb = nb * _sj_factor(j)
        return QRational(na + nb, fac, rest)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-QRational._coerce(other))

    def __rsub__(self, other):
        return QRational._coerce(other) + (-self)

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return QRational(self.den(), {}, self.num)

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = QRational(QLaurent.one())
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        o = QRational._coerce(other)
        if o is None:
            return NotImplemented
        return self.num * o.den() == o.num * self.den()

    def __hash__(self):
        r = self.reduced()
        return hash((r.num, r.rest))

    def bar(self):
        return QRational(self.num.bar(), {j: m for j, m in self.fac.items()}, self.rest.bar())

    def render(self):
        r = self.reduced()
        if r.rest.is_one():
            return r.num.render()
        return f"({r.num.render()}) / ({r.rest.render()})"

    __str__ = render

    def __repr__(self):
        return f"QRational({self.render()})"


def qrat_reduce(num: QLaurent, den: QLaurent) -> QRational:
    """Reduced canonical fraction num/den; error on zero denominator."""
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    return QRational.from_fraction(num, den).reduced()


# -- coefficient polymorphism helpers (QLaurent | QRational) -----------------


def coeff_mul(a, b):
    return a * b


def coeff_add(a, b):
    return a + b


def coeff_is_zero(c):
    return c.is_zero()


def coeff_bar(c):
    return c.bar()


def coeff_shift(c, e6):
    """c * s^e6 for either coefficient type."""
    if isinstance(c, QLaurent):
        return c.shifted(e6)
    return c * QLaurent.s_power(e6)


ZERO = QLaurent.zero()
ONE = QLaurent.one()
