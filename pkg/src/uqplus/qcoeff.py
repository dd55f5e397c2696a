"""Exact arithmetic in the coefficient field Q(q).

Polynomials are dense tuples of integers, lowest degree first, with no
trailing zeros; the zero polynomial is ``()``.  A :class:`RationalFunction`
is stored as ``num(q) * q**shift / den(q)`` where ``num`` and ``den`` are
integer polynomials with nonzero constant terms, ``gcd(num, den) = 1`` over
Q, the integer contents of ``num`` and ``den`` are coprime and ``den`` has a
positive leading coefficient.  This is in bijection with the documented
canonical form (primitive ``den``, rational Laurent numerator), so structural
equality is value equality.
"""

from __future__ import annotations

import functools
from fractions import Fraction
from math import gcd
from numbers import Rational as _RationalABC

Rational = Fraction

__all__ = [
    "Rational",
    "LaurentPoly",
    "RationalFunction",
    "PoleError",
    "q",
    "quantum_integer",
    "quantum_factorial",
    "quantum_binomial",
    "eval_at",
    "SymbolicField",
    "SpecializedField",
    "QQ_q",
]


class PoleError(ArithmeticError):
    """The denominator of a rational function vanishes at the sample point."""


# ---------------------------------------------------------------------------
# integer polynomial kernels
# ---------------------------------------------------------------------------

def _trim(a):
    n = len(a)
    while n and a[n - 1] == 0:
        n -= 1
    return tuple(a[:n])


def _p_add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def _p_mul(a, b):
    if not a or not b:
        return ()
    if len(a) == 1:
        c = a[0]
        return tuple(c * x for x in b)
    if len(b) == 1:
        c = b[0]
        return tuple(c * x for x in a)
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def _p_scale(a, c):
    return tuple(c * x for x in a) if c else ()


def _p_shift(a, k):
    return (0,) * k + a if a else ()


def _content(a):
    g = 0
    for c in a:
        g = gcd(g, c)
        if g == 1:
            break
    return g


def _p_primitive(a):
    if not a:
        return a
    c = _content(a)
    if a[-1] < 0:
        c = -c
    return tuple(x // c for x in a) if c != 1 else a


def _p_pseudo_rem(a, b):
    """Pseudo-remainder of ``a`` by ``b`` over Z, made primitive."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        la = a[-1]
        k = len(a) - 1 - db
        a = [lb * x for x in a]
        for i, c in enumerate(b):
            a[i + k] -= la * c
        a = list(_trim(a))
    return _p_primitive(tuple(a))


@functools.lru_cache(maxsize=1 << 16)
def _p_gcd(a, b):
    """Primitive gcd of two integer polynomials (positive leading coefficient)."""
    if not a:
        return _p_primitive(b)
    if not b:
        return _p_primitive(a)
    a = _p_primitive(a)
    b = _p_primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        if len(b) == 1:
            return (1,)
        a, b = b, _p_pseudo_rem(a, b)
    return _p_primitive(a)


def _p_exquo(a, b):
    """Exact quotient ``a / b`` of integer polynomials; ``b`` divides ``a``."""
    if len(b) == 1:
        c = b[0]
        return tuple(x // c for x in a)
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c = a[k + db]
        if c % lb:
            raise ArithmeticError("inexact polynomial division")
        c //= lb
        q[k] = c
        if c:
            for i, y in enumerate(b):
                a[i + k] -= c * y
    if any(a[:db]):
        raise ArithmeticError("inexact polynomial division")
    return tuple(q)


def _strip_low(a):
    k = 0
    while a[k] == 0:
        k += 1
    return a[k:], k


def _canonical(num, shift, den):
    """Reduce ``num * q**shift / den`` to the canonical triple."""
    if not num:
        return (), 0, (1,)
    if not den:
        raise ZeroDivisionError("rational function with zero denominator")
    num, k = _strip_low(num)
    den, t = _strip_low(den)
    shift += k - t
    if len(den) > 1 and len(num) > 1:
        g = _p_gcd(num, den)
        if len(g) > 1:
            num = _p_exquo(num, g)
            den = _p_exquo(den, g)
    c = gcd(_content(num), _content(den))
    if den[-1] < 0:
        c = -c
    if c != 1:
        num = tuple(x // c for x in num)
        den = tuple(x // c for x in den)
    return num, shift, den


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------

class LaurentPoly:
    """Finitely supported map ``exponent -> Fraction``; no zero values stored."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs=None):
        if coeffs is None:
            coeffs = {}
        elif not isinstance(coeffs, dict):
            coeffs = {0: coeffs}
        self._c = {int(e): Fraction(c) for e, c in coeffs.items() if c}
        self._hash = None

    @classmethod
    def monomial(cls, e: int, c=1) -> LaurentPoly:
        return cls({e: c})

    @property
    def coeffs(self) -> dict:
        return dict(self._c)

    def exponents(self):
        return sorted(self._c, reverse=True)

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self == LaurentPoly(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._c)
        for e, c in other._c.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._c.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out: dict = {}
        for e1, c1 in self._c.items():
            for e2, c2 in other._c.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a Laurent polynomial")
        out = LaurentPoly(1)
        for _ in range(k):
            out = out * self
        return out

    def valuation(self) -> int:
        return min(self._c) if self._c else 0

    def degree(self) -> int:
        return max(self._c) if self._c else 0

    def eval(self, v) -> Fraction:
        v = Fraction(v)
        return sum((c * v ** e for e, c in self._c.items()), Fraction(0))

    def _as_int_poly(self):
        """Return ``(poly, shift, scale)`` with ``self = poly * q**shift / scale``."""
        if not self._c:
            return (), 0, 1
        lo, hi = min(self._c), max(self._c)
        scale = 1
        for c in self._c.values():
            scale = scale * c.denominator // gcd(scale, c.denominator)
        poly = tuple(int(self._c.get(e, 0) * scale) for e in range(lo, hi + 1))
        return poly, lo, scale

    def __str__(self):
        return _render_laurent(sorted(self._c.items(), reverse=True))

    def __repr__(self):
        return f"LaurentPoly({self})"


def _fmt_monomial(e: int, c: Fraction) -> str:
    """Render ``c*q^e`` with ``c > 0``."""
    if e == 0:
        return str(c)
    qs = "q" if e == 1 else f"q^{e}"
    return qs if c == 1 else f"{c}*{qs}"


def _render_laurent(terms) -> str:
    if not terms:
        return "0"
    parts = []
    for k, (e, c) in enumerate(terms):
        body = _fmt_monomial(e, abs(c))
        if k == 0:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------

class RationalFunction:
    """Canonical element of Q(q).  Immutable and hashable."""

    __slots__ = ("_num", "_shift", "_den", "_hash")

    def __init__(self, num=0, den=1):
        n, s, ns = _to_int_laurent(num)
        d, t, ds = _to_int_laurent(den)
        if not d:
            raise ZeroDivisionError("rational function with zero denominator")
        # n q^s / ns  divided by  d q^t / ds
        num_p = _p_scale(n, ds)
        den_p = _p_scale(d, ns)
        self._set(*_canonical(num_p, s - t, den_p))

    def _set(self, num, shift, den):
        self._num = num
        self._shift = shift
        self._den = den
        self._hash = None

    @classmethod
    def _raw(cls, num, shift, den):
        obj = cls.__new__(cls)
        obj._set(num, shift, den)
        return obj

    @classmethod
    def _make(cls, num, shift, den):
        return cls._raw(*_canonical(num, shift, den))

    @classmethod
    def q_power(cls, k: int) -> RationalFunction:
        return cls._raw((1,), k, (1,))

    # -- canonical views ------------------------------------------------
    @property
    def numerator(self) -> LaurentPoly:
        c = self._den_content()
        return LaurentPoly({self._shift + i: Fraction(x, c)
                            for i, x in enumerate(self._num) if x})

    @property
    def denominator(self) -> LaurentPoly:
        c = self._den_content()
        return LaurentPoly({i: x // c for i, x in enumerate(self._den) if x})

    def _den_content(self):
        return _content(self._den)

    def is_laurent(self) -> bool:
        return len(self._den) == 1

    def is_monomial(self) -> bool:
        return len(self._den) == 1 and len(self._num) == 1

    def canonical(self) -> RationalFunction:
        return RationalFunction._make(self._num, self._shift, self._den)

    # -- protocol ------------------------------------------------------------
    def __bool__(self):
        return bool(self._num)

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return (self._num == other._num and self._shift == other._shift
                    and self._den == other._den)
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self == o

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._num, self._shift, self._den))
        return self._hash

    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return _rf_add(self, o)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._raw(tuple(-x for x in self._num), self._shift, self._den)

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return _rf_add(self, -o)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return _rf_add(o, -self)

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return _rf_mul(self, o)

    __rmul__ = __mul__

    def inv(self) -> RationalFunction:
        if not self._num:
            raise ZeroDivisionError("inverse of the zero rational function")
        num, den = self._den, self._num
        if den[-1] < 0:
            num = tuple(-x for x in num)
            den = tuple(-x for x in den)
        return RationalFunction._raw(num, -self._shift, den)

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return _rf_mul(self, o.inv())

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return _rf_mul(o, self.inv())

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __str__(self):
        num = self.numerator
        if len(self._den) == 1:
            return str(num)
        den = self.denominator
        ns = str(num)
        if len(num.coeffs) > 1:
            ns = f"({ns})"
        return f"{ns} / ({den})"

    def __repr__(self):
        return f"RationalFunction({self})"

    def leading_sign(self) -> int:
        """Sign of the top-degree numerator coefficient (0 for zero)."""
        if not self._num:
            return 0
        return 1 if self._num[-1] > 0 else -1


def _to_int_laurent(x):
    if isinstance(x, RationalFunction):
        raise TypeError("use arithmetic to combine rational functions")
    if isinstance(x, LaurentPoly):
        return x._as_int_poly()
    if isinstance(x, int):
        return ((x,) if x else ()), 0, 1
    if isinstance(x, _RationalABC):
        x = Fraction(x)
        return ((x.numerator,) if x else ()), 0, x.denominator
    raise TypeError(f"cannot build a rational function from {type(x).__name__}")


def _coerce(x):
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, int):
        return RationalFunction._raw((x,), 0, (1,)) if x else ZERO
    if isinstance(x, Fraction):
        return RationalFunction(x)
    if isinstance(x, LaurentPoly):
        return RationalFunction(x)
    return None


@functools.lru_cache(maxsize=1 << 18)
def _rf_add(a: RationalFunction, b: RationalFunction) -> RationalFunction:
    if not a._num:
        return b
    if not b._num:
        return a
    s = min(a._shift, b._shift)
    an = _p_shift(a._num, a._shift - s)
    bn = _p_shift(b._num, b._shift - s)
    if a._den == b._den:
        return RationalFunction._make(_p_add(an, bn), s, a._den)
    if len(a._den) == 1 and len(b._den) == 1:
        da, db = a._den[0], b._den[0]
        g = gcd(da, db)
        num = _p_add(_p_scale(an, db // g), _p_scale(bn, da // g))
        return RationalFunction._make(num, s, (da // g * db,))
    g = _p_gcd(a._den, b._den)
    ap = _p_exquo(a._den, g)
    bp = _p_exquo(b._den, g)
    num = _p_add(_p_mul(an, bp), _p_mul(bn, ap))
    den = _p_mul(ap, b._den)
    return RationalFunction._make(num, s, den)


@functools.lru_cache(maxsize=1 << 18)
def _rf_mul(a: RationalFunction, b: RationalFunction) -> RationalFunction:
    if not a._num or not b._num:
        return ZERO
    an, ad, bn, bd = a._num, a._den, b._num, b._den
    if len(bd) > 1 and len(an) > 1:
        g = _p_gcd(an, bd)
        if len(g) > 1:
            an, bd = _p_exquo(an, g), _p_exquo(bd, g)
    if len(ad) > 1 and len(bn) > 1:
        g = _p_gcd(bn, ad)
        if len(g) > 1:
            bn, ad = _p_exquo(bn, g), _p_exquo(ad, g)
    num = _p_mul(an, bn)
    den = _p_mul(ad, bd)
    c = gcd(_content(num), _content(den))
    if c != 1:
        num = tuple(x // c for x in num)
        den = tuple(x // c for x in den)
    return RationalFunction._raw(num, a._shift + b._shift, den)


ZERO = RationalFunction._raw((), 0, (1,))
ONE = RationalFunction._raw((1,), 0, (1,))
q = RationalFunction.q_power(1)


# ---------------------------------------------------------------------------
# quantum combinatorics
# ---------------------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def quantum_integer(s: int, d: int = 1) -> RationalFunction:
    """``[s]_i = (q_i^s - q_i^-s) / (q_i - q_i^-1)`` with ``q_i = q^d``."""
    if s < 0:
        raise ValueError("quantum integers are defined for s >= 0")
    if d < 1:
        raise ValueError("symmetrizer must be positive")
    if s == 0:
        return ZERO
    return RationalFunction(LaurentPoly({d * (s - 1 - 2 * k): 1 for k in range(s)}))


@functools.lru_cache(maxsize=None)
def quantum_factorial(s: int, d: int = 1) -> RationalFunction:
    out = ONE
    for t in range(1, s + 1):
        out = out * quantum_integer(t, d)
    return out


@functools.lru_cache(maxsize=None)
def quantum_binomial(m: int, k: int, d: int = 1) -> RationalFunction:
    if not 0 <= k <= m:
        raise ValueError(f"quantum binomial needs 0 <= k <= m, got m={m}, k={k}")
    out = quantum_factorial(m, d) / (quantum_factorial(k, d) * quantum_factorial(m - k, d))
    assert out.is_laurent()
    return out


def _p_eval(a, v: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * v + c
    return acc


def eval_at(a: RationalFunction, v) -> Fraction:
    """Exact value of ``a`` at ``q = v``."""
    v = Fraction(v)
    if v == 0:
        raise ValueError("cannot evaluate at q = 0")
    if not isinstance(a, RationalFunction):
        a = _coerce(a)
    d = _p_eval(a._den, v)
    if d == 0:
        raise PoleError(f"{a} has a pole at q = {v}")
    return _p_eval(a._num, v) * v ** a._shift / d


# ---------------------------------------------------------------------------
# coefficient fields
# ---------------------------------------------------------------------------

class SymbolicField:
    """Q(q) with q transcendental: the field everything is exact over."""

    name = "Q(q)"

    def q(self, k: int = 1) -> RationalFunction:
        return RationalFunction.q_power(k)

    def coerce(self, x):
        if isinstance(x, RationalFunction):
            return x
        out = _coerce(x)
        if out is None:
            raise TypeError(f"cannot coerce {x!r} into Q(q)")
        return out

    @property
    def zero(self):
        return ZERO

    @property
    def one(self):
        return ONE

    def __eq__(self, other):
        return isinstance(other, SymbolicField)

    def __hash__(self):
        return hash("Q(q)")

    def __repr__(self):
        return "SymbolicField()"


class SpecializedField:
    """Q with q specialised to a nonzero rational that is not a root of unity."""

    def __init__(self, value):
        value = Fraction(value)
        if value in (0, 1, -1):
            raise ValueError(f"q = {value} is zero or a root of unity")
        self.value = value
        self.name = f"Q[q={value}]"

    def q(self, k: int = 1) -> Fraction:
        return self.value ** k

    def coerce(self, x) -> Fraction:
        if isinstance(x, RationalFunction):
            return eval_at(x, self.value)
        if isinstance(x, LaurentPoly):
            return x.eval(self.value)
        return Fraction(x)

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def __eq__(self, other):
        return isinstance(other, SpecializedField) and other.value == self.value

    def __hash__(self):
        return hash(("spec", self.value))

    def __repr__(self):
        return f"SpecializedField({self.value})"


QQ_q = SymbolicField()
