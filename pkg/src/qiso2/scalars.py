"""Exact coefficient arithmetic for the deformed algebra modules.

Scalars live in the field Q(i)(q^(1/2), s, r).  Internally everything is
written in t = q^(1/2) so exponents stay integral, and a scalar is kept as

    num / (den_t * atom_1^m_1 * ... * atom_n^m_n)

where num is a Laurent polynomial in t, s, r over Q(i), den_t is an ordinary
polynomial in t alone (monic, nonzero constant term) and every atom is a
polynomial factor that some division actually produced, normalized to have
minimal exponents 0 and lexicographically leading coefficient 1.  Denominator
factors coming from the weight ladders, s*q^m + s^-1*q^-m and relatives,
split into factors linear in s over Q(i); keeping them factored turns the
cancellations between neighbouring lattice sites into exact trial divisions
instead of large multivariate gcd problems.

Equality always falls back to cross multiplication, so the factored shape is
a speed and readability device, not a correctness assumption.  Canonical
storage (route independent dicts) is guaranteed for values produced by the
library's own division paths; opaque user-typed denominators only promise
correct equality.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from math import isqrt

from .errors import EvaluationPoleError, ScalarDivisionError

# ---------------------------------------------------------------------------
# rational complex coefficients


def _frac_sqrt(x: Fraction):
    """Exact nonnegative square root of a Fraction, or None."""
    if x < 0:
        return None
    rn, rd = isqrt(x.numerator), isqrt(x.denominator)
    if rn * rn != x.numerator or rd * rd != x.denominator:
        return None
    return Fraction(rn, rd)


class GaussianRational:
    """Exact element of Q(i), a pair of Fractions.  Immutable by discipline."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if isinstance(re, Fraction) else Fraction(re)
        self.im = im if isinstance(im, Fraction) else Fraction(im)

    def __add__(self, other):
        if isinstance(other, int):
            other = GaussianRational(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        if isinstance(other, int):
            other = GaussianRational(other)
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        if isinstance(other, int):
            other = GaussianRational(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def inverse(self):
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise ScalarDivisionError("inverse of zero in Q(i)")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if isinstance(other, int):
            other = GaussianRational(other)
        return self * other.inverse()

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    __hash__ = None

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def sqrt(self):
        """Exact square root inside Q(i) if one exists, else None."""
        x, y = self.re, self.im
        if y == 0:
            if x >= 0:
                a = _frac_sqrt(x)
                return None if a is None else GaussianRational(a, 0)
            b = _frac_sqrt(-x)
            return None if b is None else GaussianRational(0, b)
        n = _frac_sqrt(x * x + y * y)
        if n is None:
            return None
        a = _frac_sqrt((x + n) / 2)
        if a is None or a == 0:
            return None
        return GaussianRational(a, y / (2 * a))

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return _gr_str(self)


_GR_ZERO = GaussianRational(0)
_GR_ONE = GaussianRational(1)


def _gr_str(c: GaussianRational) -> str:
    if c.im == 0:
        return str(c.re)
    if c.re == 0:
        if c.im == 1:
            return "i"
        if c.im == -1:
            return "-i"
        return "%s*i" % (c.im,)
    sign = "+" if c.im > 0 else "-"
    mag = abs(c.im)
    ims = "i" if mag == 1 else "%s*i" % (mag,)
    return "(%s%s%s)" % (c.re, sign, ims)


# ---------------------------------------------------------------------------
# Laurent polynomials in (t, s, r), keys are exponent triples
#
# All helpers build fresh dicts; stored dicts are never mutated.


def lp_const(c) -> dict:
    if not isinstance(c, GaussianRational):
        c = GaussianRational(c)
    return {(0, 0, 0): c} if c else {}


def lp_monomial(c, et=0, es=0, er=0) -> dict:
    if not isinstance(c, GaussianRational):
        c = GaussianRational(c)
    return {(et, es, er): c} if c else {}


def lp_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        w = out.get(k)
        nv = v if w is None else w + v
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)
    return out


def lp_neg(a: dict) -> dict:
    return {k: -v for k, v in a.items()}


def lp_sub(a: dict, b: dict) -> dict:
    return lp_add(a, lp_neg(b))


def lp_scale(a: dict, c: GaussianRational) -> dict:
    if not c:
        return {}
    return {k: v * c for k, v in a.items()}


def lp_mono_mul(a: dict, c: GaussianRational, dt: int, ds: int, dr: int) -> dict:
    """c * t^dt s^ds r^dr * a."""
    if not c:
        return {}
    return {(k[0] + dt, k[1] + ds, k[2] + dr): v * c for k, v in a.items()}


def lp_mul(a: dict, b: dict) -> dict:
    if not a or not b:
        return {}
    if len(b) == 1:
        ((k, c),) = b.items()
        return lp_mono_mul(a, c, k[0], k[1], k[2])
    if len(a) == 1:
        ((k, c),) = a.items()
        return lp_mono_mul(b, c, k[0], k[1], k[2])
    out = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            k = (ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2])
            w = out.get(k)
            nv = va * vb if w is None else w + va * vb
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
    return out


def lp_min_exps(a: dict):
    it = iter(a)
    mt, ms, mr = next(it)
    for (et, es, er) in it:
        if et < mt:
            mt = et
        if es < ms:
            ms = es
        if er < mr:
            mr = er
    return mt, ms, mr


def lp_shift(a: dict, dt: int, ds: int, dr: int) -> dict:
    return {(k[0] + dt, k[1] + ds, k[2] + dr): v for k, v in a.items()}


def lp_pure_t(a: dict) -> bool:
    return all(k[1] == 0 and k[2] == 0 for k in a)


def lp_from_tp(d: dict) -> dict:
    return {(e, 0, 0): c for e, c in d.items()}


def lp_eval(a: dict, t: complex, s, r) -> complex:
    out = 0j
    for (et, es, er), c in a.items():
        v = c.to_complex() * t ** et
        if es:
            if s is None:
                raise ValueError("scalar involves s but no value for s was given")
            v *= s ** es
        if er:
            if r is None:
                raise ValueError("scalar involves r but no value for r was given")
            v *= r ** er
        out += v
    return out


def lp_exact_div(a: dict, b: dict):
    """Exact quotient a / b in the Laurent ring, or None if not divisible."""
    if not b:
        raise ScalarDivisionError("polynomial division by zero")
    if not a:
        return {}
    amin = lp_min_exps(a)
    bmin = lp_min_exps(b)
    A = lp_shift(a, -amin[0], -amin[1], -amin[2])
    B = lp_shift(b, -bmin[0], -bmin[1], -bmin[2])
    blead = max(B)
    bc = B[blead]
    quot = {}
    rem = dict(A)
    while rem:
        rlead = max(rem)
        ke = (rlead[0] - blead[0], rlead[1] - blead[1], rlead[2] - blead[2])
        if ke[0] < 0 or ke[1] < 0 or ke[2] < 0:
            return None
        c = rem[rlead] / bc
        quot[ke] = c
        for k, v in B.items():
            kk = (k[0] + ke[0], k[1] + ke[1], k[2] + ke[2])
            w = rem.get(kk, _GR_ZERO)
            nv = w - c * v
            if nv:
                rem[kk] = nv
            else:
                rem.pop(kk, None)
    dt, ds, dr = (amin[0] - bmin[0], amin[1] - bmin[1], amin[2] - bmin[2])
    return lp_shift(quot, dt, ds, dr)


def _lp_key(a: dict):
    """Deterministic sort/merge key for a polynomial dict."""
    return tuple(
        sorted(
            (k, (v.re.numerator, v.re.denominator, v.im.numerator, v.im.denominator))
            for k, v in a.items()
        )
    )


def lp_str(p: dict) -> str:
    if not p:
        return "0"
    bits = []
    for k in sorted(p, reverse=True):
        c = p[k]
        names = []
        for name, e in zip(("t", "s", "r"), k):
            if e == 1:
                names.append(name)
            elif e != 0:
                names.append("%s^%d" % (name, e))
        vs = "*".join(names)
        cs = _gr_str(c)
        if vs:
            if cs == "1":
                term = vs
            elif cs == "-1":
                term = "-" + vs
            else:
                term = cs + "*" + vs
        else:
            term = cs
        bits.append(term)
    out = bits[0]
    for b in bits[1:]:
        if b.startswith("-"):
            out += " - " + b[1:]
        else:
            out += " + " + b
    return out


# ---------------------------------------------------------------------------
# ordinary polynomials in t alone, keys are integer exponents


def tp_one() -> dict:
    return {0: _GR_ONE}


def tp_is_one(d: dict) -> bool:
    return len(d) == 1 and 0 in d and d[0] == 1


def tp_degree(d: dict) -> int:
    return max(d) if d else -1


def tp_mul(a: dict, b: dict) -> dict:
    out = {}
    for ea, va in a.items():
        for eb, vb in b.items():
            e = ea + eb
            w = out.get(e)
            nv = va * vb if w is None else w + va * vb
            if nv:
                out[e] = nv
            else:
                out.pop(e, None)
    return out


def _tp_strip(d: dict) -> dict:
    """Drop the monomial factor: shift so the constant term is nonzero."""
    if not d:
        return {}
    m = min(d)
    if m == 0:
        return dict(d)
    return {e - m: c for e, c in d.items()}


def _tp_mod(a: dict, b: dict) -> dict:
    db = max(b)
    lb = b[db]
    rem = dict(a)
    while rem:
        dr = max(rem)
        if dr < db:
            break
        c = rem[dr] / lb
        for e, v in b.items():
            k = dr - db + e
            w = rem.get(k, _GR_ZERO)
            nv = w - c * v
            if nv:
                rem[k] = nv
            else:
                rem.pop(k, None)
    return rem


def tp_divmod(a: dict, b: dict):
    if not b:
        raise ScalarDivisionError("polynomial division by zero")
    db = max(b)
    lb = b[db]
    quot = {}
    rem = dict(a)
    while rem:
        dr = max(rem)
        if dr < db:
            break
        c = rem[dr] / lb
        quot[dr - db] = c
        for e, v in b.items():
            k = dr - db + e
            w = rem.get(k, _GR_ZERO)
            nv = w - c * v
            if nv:
                rem[k] = nv
            else:
                rem.pop(k, None)
    return quot, rem


def tp_exact_div(a: dict, b: dict) -> dict:
    quot, rem = tp_divmod(a, b)
    if rem:
        raise ScalarDivisionError("inexact t-polynomial division")
    return quot


def tp_gcd(a: dict, b: dict) -> dict:
    """Monic gcd with nonzero constant term; monomial factors are units."""
    a = _tp_strip(a)
    b = _tp_strip(b)
    while b:
        a, b = b, _tp_strip(_tp_mod(a, b))
    if not a:
        raise ScalarDivisionError("gcd of zero polynomials")
    lead = a[max(a)]
    if lead == 1:
        return a
    inv = lead.inverse()
    return {e: c * inv for e, c in a.items()}


def tp_eval(d: dict, t: complex) -> complex:
    return sum(c.to_complex() * t ** e for e, c in d.items())


def lp_t_content(p: dict):
    """Gcd of the pure-t coefficient polynomials of p, grouped by the s and r
    exponents.  Returns None when the content is only a unit times a monomial."""
    groups = {}
    for (et, es, er), c in p.items():
        groups.setdefault((es, er), {})[et] = c
    polys = []
    for g in groups.values():
        if len(g) == 1:
            return None
        m = min(g)
        polys.append({e - m: c for e, c in g.items()})
    g = polys[0]
    for h in polys[1:]:
        g = tp_gcd(g, h)
        if tp_degree(g) == 0:
            return None
    if tp_degree(g) == 0:
        return None
    return g


# ---------------------------------------------------------------------------
# denominator factoring


def _canon_factor(p: dict):
    """Split p into unit * t^a s^b r^c * canonical where the canonical part
    has minimal exponents 0 and leading coefficient 1."""
    mt, ms, mr = lp_min_exps(p)
    q = lp_shift(p, -mt, -ms, -mr)
    u = q[max(q)]
    if not (u == 1):
        q = lp_scale(q, u.inverse())
    return u, (mt, ms, mr), q


def _split_divisor(p: dict):
    """Factor a nonzero polynomial for use as a denominator.

    Returns (unit, mono, tfactor, atoms) with

        p == unit * t^mono[0] s^mono[1] r^mono[2] * tfactor * prod(atoms)

    where tfactor is a pure t polynomial dict or None.  Two-term factors
    quadratic in s with even t spread are split into the two factors linear
    in s whenever the needed square root exists in Q(i); this covers every
    weight-ladder denominator the representation modules generate.
    """
    u, mono, q = _canon_factor(p)
    if len(q) == 1:
        return u, mono, None, []
    if lp_pure_t(q):
        return u, mono, {k[0]: v for k, v in q.items()}, []
    if len(q) == 2:
        k1, k2 = sorted(q, reverse=True)
        c2 = q[k2]
        ds_, dr_ = k1[1] - k2[1], k1[2] - k2[2]
        if ds_ == 2 and dr_ == 0 and k1[0] % 2 == 0 and k2[0] % 2 == 0:
            w = (-c2).sqrt()
            if w is not None:
                unit = u
                mt, ms, mr = mono
                atoms = []
                for wv in (w, -w):
                    f = {(k1[0] // 2, 1, 0): _GR_ONE, (k2[0] // 2, 0, 0): wv}
                    uu, mm, aa = _canon_factor(f)
                    unit = unit * uu
                    mt += mm[0]
                    ms += mm[1]
                    mr += mm[2]
                    atoms.append(aa)
                return unit, (mt, ms, mr), None, atoms
    return u, mono, None, [q]


# ---------------------------------------------------------------------------
# the scalar field


class Scalar:
    """Element of Q(i)(q^(1/2), s, r) in factored fraction form.

    Construct through the module helpers (integer, gauss, qpow, qhpow,
    monomial, from_fraction) or the constants ONE, IUNIT, QVAR, QHALF, SVAR,
    RVAR.  Supports +, -, *, /, ** with int exponents of either sign, exact
    equality, and numeric evaluation with pole detection.
    """

    __slots__ = ("num", "den_t", "atoms")
    __hash__ = None

    def __init__(self):
        raise TypeError("use the module-level constructors")

    @classmethod
    def _raw(cls, num, den_t, atoms):
        obj = object.__new__(cls)
        obj.num = num
        obj.den_t = den_t
        obj.atoms = atoms
        return obj

    @classmethod
    def _make(cls, num, den_t, atoms):
        if not num:
            return cls._raw({}, tp_one(), ())
        if atoms:
            merged = {}
            for a, m in atoms:
                if m <= 0:
                    continue
                k = _lp_key(a)
                if k in merged:
                    merged[k] = (a, merged[k][1] + m)
                else:
                    merged[k] = (a, m)
            out = []
            for k in sorted(merged):
                a, m = merged[k]
                while m > 0:
                    qd = lp_exact_div(num, a)
                    if qd is None:
                        break
                    num = qd
                    m -= 1
                if m:
                    out.append((a, m))
            atoms = tuple(out)
        else:
            atoms = ()
        if not tp_is_one(den_t):
            g = lp_t_content(num)
            if g is not None:
                d = tp_gcd(g, den_t)
                if tp_degree(d) > 0:
                    num = lp_exact_div(num, lp_from_tp(d))
                    den_t = tp_exact_div(den_t, d)
        return cls._raw(num, den_t, atoms)

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def is_one(self) -> bool:
        return (
            len(self.num) == 1
            and self.num.get((0, 0, 0)) == 1
            and not self.atoms
            and tp_is_one(self.den_t)
        )

    def __bool__(self):
        return bool(self.num)

    def as_monomial(self):
        """(coefficient, (et, es, er)) when the value is a bare monomial in
        t, s, r, else None."""
        if len(self.num) != 1 or self.atoms or not tp_is_one(self.den_t):
            return None
        ((k, c),) = self.num.items()
        return c, k

    # -- arithmetic ---------------------------------------------------------

    def _den_lp(self) -> dict:
        out = lp_from_tp(self.den_t)
        for a, m in self.atoms:
            for _ in range(m):
                out = lp_mul(out, a)
        return out

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if not self.num:
            return other
        if not other.num:
            return self
        plain_self = tp_is_one(self.den_t) and not self.atoms
        plain_other = tp_is_one(other.den_t) and not other.atoms
        if plain_self and plain_other:
            return Scalar._make(lp_add(self.num, other.num), tp_one(), ())
        if tp_is_one(self.den_t) and tp_is_one(other.den_t):
            den = tp_one()
            n1, n2 = self.num, other.num
        else:
            g = tp_gcd(self.den_t, other.den_t)
            den = tp_mul(self.den_t, tp_exact_div(other.den_t, g))
            n1 = lp_mul(self.num, lp_from_tp(tp_exact_div(den, self.den_t)))
            n2 = lp_mul(other.num, lp_from_tp(tp_exact_div(den, other.den_t)))
        if self.atoms or other.atoms:
            mine = {_lp_key(a): (a, m) for a, m in self.atoms}
            theirs = {_lp_key(a): (a, m) for a, m in other.atoms}
            union = []
            for k in sorted(set(mine) | set(theirs)):
                a, m1 = mine.get(k, (None, 0))
                a2, m2 = theirs.get(k, (None, 0))
                union.append((a if a is not None else a2, max(m1, m2), m1, m2))
            for a, mm, m1, m2 in union:
                for _ in range(mm - m1):
                    n1 = lp_mul(n1, a)
                for _ in range(mm - m2):
                    n2 = lp_mul(n2, a)
            atoms = [(a, mm) for a, mm, _, _ in union]
        else:
            atoms = ()
        return Scalar._make(lp_add(n1, n2), den, atoms)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(lp_neg(self.num), self.den_t, self.atoms)

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if not self.num or not other.num:
            return Scalar._raw({}, tp_one(), ())
        num = lp_mul(self.num, other.num)
        if tp_is_one(self.den_t):
            den = other.den_t
        elif tp_is_one(other.den_t):
            den = self.den_t
        else:
            den = tp_mul(self.den_t, other.den_t)
        if self.atoms or other.atoms:
            atoms = list(self.atoms) + list(other.atoms)
        else:
            atoms = ()
        return Scalar._make(num, den, atoms)

    __rmul__ = __mul__

    def _inverse(self):
        if not self.num:
            raise ScalarDivisionError("scalar division by zero")
        u, mono, tfac, new_atoms = _split_divisor(self.num)
        num = self._den_lp()
        num = lp_mono_mul(num, u.inverse(), -mono[0], -mono[1], -mono[2])
        den = tfac if tfac is not None else tp_one()
        return Scalar._make(num, den, [(a, 1) for a in new_atoms])

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self * other._inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other * self._inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self._inverse() ** (-n)
        result = integer(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if self.den_t == other.den_t and self.atoms == other.atoms:
            return self.num == other.num
        left = lp_mul(self.num, other._den_lp())
        right = lp_mul(other.num, self._den_lp())
        return left == right

    # -- evaluation ---------------------------------------------------------

    def eval_numeric(self, q, s=None, r=None, tol: float = 1e-9) -> complex:
        """Evaluate at numeric parameter values, t = principal sqrt(q).

        Raises EvaluationPoleError when any denominator factor lands within
        tol of zero.
        """
        t = cmath.sqrt(q)
        nv = lp_eval(self.num, t, s, r)
        dv = 1 + 0j
        if not tp_is_one(self.den_t):
            v = tp_eval(self.den_t, t)
            if abs(v) < tol:
                raise EvaluationPoleError(lp_str(lp_from_tp(self.den_t)), v)
            dv *= v
        for a, m in self.atoms:
            v = lp_eval(a, t, s, r)
            if abs(v) < tol:
                raise EvaluationPoleError(lp_str(a), v)
            dv *= v ** m
        return nv / dv

    # -- display ------------------------------------------------------------

    def __str__(self):
        n = lp_str(self.num)
        parts = []
        if not tp_is_one(self.den_t):
            parts.append("(%s)" % lp_str(lp_from_tp(self.den_t)))
        for a, m in self.atoms:
            p = "(%s)" % lp_str(a)
            if m > 1:
                p += "^%d" % m
            parts.append(p)
        if not parts:
            return n
        return "(%s) / %s" % (n, "*".join(parts))

    __repr__ = __str__


def _coerce(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, int):
        return integer(x)
    if isinstance(x, Fraction):
        return from_fraction(x)
    if isinstance(x, GaussianRational):
        return Scalar._make(lp_const(x), tp_one(), ())
    return None


# ---------------------------------------------------------------------------
# constructors


def integer(n: int) -> Scalar:
    return Scalar._make(lp_const(GaussianRational(n)), tp_one(), ())


def from_fraction(f) -> Scalar:
    return Scalar._make(lp_const(GaussianRational(Fraction(f))), tp_one(), ())


def gauss(re, im=0) -> Scalar:
    return Scalar._make(lp_const(GaussianRational(re, im)), tp_one(), ())


def monomial(c, et=0, es=0, er=0) -> Scalar:
    """c * t^et * s^es * r^er."""
    return Scalar._make(lp_monomial(c, et, es, er), tp_one(), ())


def qhpow(n: int) -> Scalar:
    """q^(n/2), that is t^n."""
    return monomial(1, et=n)


def qpow(n: int) -> Scalar:
    """q^n."""
    return monomial(1, et=2 * n)


ZERO = integer(0)
ONE = integer(1)
IUNIT = gauss(0, 1)
QHALF = qhpow(1)
QVAR = qpow(1)
SVAR = monomial(1, es=1)
RVAR = monomial(1, er=1)
