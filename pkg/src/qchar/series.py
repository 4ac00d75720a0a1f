"""Exact coefficient rings in one variable ``q``.

* :class:`QPoly`   polynomials with integer (or rational) coefficients,
* :class:`QSeries` power series known up to and including ``q**order``,
* :class:`QRat`    reduced quotients of two ``QPoly``.

Everything is exact: coefficients are Python ints or ``fractions.Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

Number = Union[int, Fraction]


class NonPolynomialError(ArithmeticError):
    """A quotient that had to be a polynomial left a nonzero remainder."""


def _norm(c) -> Number:
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return c
    raise TypeError(f"inexact coefficient {c!r}")


def _trim(cs: list) -> tuple:
    while cs and not cs[-1]:
        cs.pop()
    return tuple(cs)


def format_number(c: Number) -> str:
    """``"3"``, ``"-1/2"``: the exact text used in JSON output."""
    if isinstance(c, Fraction):
        return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    return str(c)


def parse_number(text: str) -> Number:
    return _norm(Fraction(text))


def _term_str(c: Number, k: int, var: str = "q") -> str:
    if k == 0:
        return format_number(c)
    mono = var if k == 1 else f"{var}^{k}"
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    return f"{format_number(c)}*{mono}"


def _join_terms(terms: list[str]) -> str:
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += " - " + t[1:] if t.startswith("-") else " + " + t
    return out


class QPoly:
    """Polynomial in ``q``; ``coeffs[k]`` is the coefficient of ``q**k``."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable[Number] = ()):
        self.coeffs = _trim([_norm(c) for c in coeffs])
        self._hash = None

    @classmethod
    def q(cls, k: int = 1) -> "QPoly":
        return cls([0] * k + [1])

    @classmethod
    def const(cls, c: Number) -> "QPoly":
        return cls([c])

    @property
    def degree(self) -> int:
        """Degree; ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def valuation(self) -> int | None:
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return None

    def coeff(self, k: int) -> Number:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def leading(self) -> Number:
        return self.coeffs[-1] if self.coeffs else 0

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, QPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == QPoly.const(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(("QPoly", self.coeffs))
        return self._hash

    def __repr__(self) -> str:
        return f"QPoly({list(self.coeffs)})"

    def __str__(self) -> str:
        return _join_terms([_term_str(c, k) for k, c in enumerate(self.coeffs) if c])

    def __neg__(self) -> "QPoly":
        return QPoly([-c for c in self.coeffs])

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QPoly.const(other)
        if not isinstance(other, QPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return QPoly(out)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QPoly.const(other)
        if not isinstance(other, QPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QPoly([c * other for c in self.coeffs])
        if not isinstance(other, QPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return QPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return QPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "QPoly":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        out, base = QPoly([1]), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def divmod(self, other: "QPoly") -> tuple["QPoly", "QPoly"]:
        """Euclidean division over the rationals."""
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = [Fraction(c) for c in self.coeffs]
        d = other.coeffs
        lead = Fraction(d[-1])
        if len(rem) < len(d):
            return QPoly(), self
        quot = [Fraction(0)] * (len(rem) - len(d) + 1)
        for k in range(len(quot) - 1, -1, -1):
            c = rem[k + len(d) - 1] / lead
            quot[k] = c
            if c:
                for j, y in enumerate(d):
                    rem[k + j] -= c * y
        return QPoly(quot), QPoly(rem[: len(d) - 1])

    def monic(self) -> "QPoly":
        lead = self.leading()
        if lead == 1:
            return self
        return QPoly([Fraction(c) / lead for c in self.coeffs])

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def to_series(self, order: int) -> "QSeries":
        return QSeries(self.coeffs[: order + 1], order)

    def to_json(self) -> list[str]:
        return [format_number(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: list[str]) -> "QPoly":
        return cls(parse_number(t) for t in data)


def poly_gcd(a: QPoly, b: QPoly) -> QPoly:
    """Monic gcd over the rationals (``0`` if both are zero)."""
    while b:
        a, b = b, a.divmod(b)[1]
    return a.monic() if a else a


class QSeries:
    """Truncated power series: coefficients of ``q**0 .. q**order``.

    Binary operations take the smaller of the two truncation orders.
    """

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable[Number], order: int):
        if order < 0:
            raise ValueError("truncation order must be nonnegative")
        cs = [_norm(c) for c in coeffs][: order + 1]
        cs.extend([0] * (order + 1 - len(cs)))
        self.coeffs = tuple(cs)
        self.order = order

    @classmethod
    def one(cls, order: int) -> "QSeries":
        return cls([1], order)

    @classmethod
    def zero(cls, order: int) -> "QSeries":
        return cls([], order)

    def coeff(self, k: int) -> Number:
        if k > self.order:
            raise IndexError(f"q^{k} is beyond the truncation order {self.order}")
        return self.coeffs[k] if k >= 0 else 0

    def valuation(self) -> int | None:
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return None

    def truncate(self, order: int) -> "QSeries":
        if order > self.order:
            raise ValueError(f"cannot extend a series known to q^{self.order} up to q^{order}")
        return QSeries(self.coeffs[: order + 1], order)

    def to_poly(self) -> QPoly:
        return QPoly(self.coeffs)

    def _coerce(self, other) -> "QSeries | None":
        if isinstance(other, QSeries):
            return other
        if isinstance(other, QPoly):
            return other.to_series(self.order)
        if isinstance(other, (int, Fraction)):
            return QSeries([other], self.order)
        return None

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if isinstance(other, QSeries) and other.order != self.order:
            return False
        return self.coeffs == o.coeffs

    def __hash__(self) -> int:
        return hash(("QSeries", self.coeffs, self.order))

    def __repr__(self) -> str:
        return f"QSeries({list(self.coeffs)}, order={self.order})"

    def __str__(self) -> str:
        terms = [_term_str(c, k) for k, c in enumerate(self.coeffs) if c]
        return _join_terms(terms) + f" + O(q^{self.order + 1})"

    def __neg__(self) -> "QSeries":
        return QSeries([-c for c in self.coeffs], self.order)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        order = min(self.order, o.order)
        return QSeries([a + b for a, b in zip(self.coeffs[: order + 1], o.coeffs)], order)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QSeries([c * other for c in self.coeffs], self.order)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        order = min(self.order, o.order)
        a, b = self.coeffs, o.coeffs
        out = [0] * (order + 1)
        for i in range(order + 1):
            x = a[i]
            if x:
                for j in range(order + 1 - i):
                    y = b[j]
                    if y:
                        out[i + j] += x * y
        return QSeries(out, order)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "QSeries":
        if e < 0:
            return series_inverse(self) ** (-e)
        out = QSeries.one(self.order)
        for _ in range(e):
            out = out * self
        return out

    def to_json(self) -> dict:
        return {"coefficients": [format_number(c) for c in self.coeffs], "order": self.order}

    @classmethod
    def from_json(cls, data: dict) -> "QSeries":
        return cls((parse_number(t) for t in data["coefficients"]), data["order"])


def series_inverse(f: QSeries) -> QSeries:
    """Multiplicative inverse of ``f`` at the same truncation order."""
    c0 = f.coeffs[0]
    if not c0:
        raise ZeroDivisionError(f"series {f} has zero constant term and is not invertible")
    inv0 = Fraction(1) / c0
    out = [inv0]
    for k in range(1, f.order + 1):
        s = sum(f.coeffs[j] * out[k - j] for j in range(1, k + 1))
        out.append(-s * inv0)
    return QSeries(out, f.order)


@lru_cache(maxsize=None)
def qpoch(n: int) -> QPoly:
    """``(q)_n = (1-q)(1-q^2)...(1-q^n)``."""
    if n < 0:
        raise ValueError("qpoch needs n >= 0")
    if n == 0:
        return QPoly([1])
    return qpoch(n - 1) * QPoly([1] + [0] * (n - 1) + [-1])


@lru_cache(maxsize=None)
def inv_qpoch(n: int, order: int) -> QSeries:
    """``1/(q)_n`` truncated after ``q**order``."""
    if n == 0:
        return QSeries.one(order)
    # multiply by 1/(1-q^l) as a running prefix sum with stride l
    cs = list(inv_qpoch(n - 1, order).coeffs)
    for k in range(n, order + 1):
        cs[k] += cs[k - n]
    return QSeries(cs, order)


class QRat:
    """Reduced fraction ``num/den`` of polynomials, ``den`` monic."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, QPoly):
            num = QPoly.const(num)
        if den is None:
            den = QPoly([1])
        elif not isinstance(den, QPoly):
            den = QPoly.const(den)
        if not den:
            raise ZeroDivisionError("QRat with zero denominator")
        if not num:
            self.num, self.den = QPoly(), QPoly([1])
            return
        if den.degree > 0:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num = num.divmod(g)[0]
                den = den.divmod(g)[0]
        lead = den.leading()
        if lead != 1:
            num = QPoly([Fraction(c) / lead for c in num.coeffs])
            den = den.monic()
        self.num, self.den = num, den

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, QPoly)):
            other = QRat(other)
        if not isinstance(other, QRat):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash(("QRat", self.num, self.den))

    def __repr__(self) -> str:
        return f"QRat({self.num!r}, {self.den!r})"

    def __str__(self) -> str:
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"

    @staticmethod
    def _lift(other):
        if isinstance(other, QRat):
            return other
        if isinstance(other, (int, Fraction, QPoly)):
            return QRat(other)
        return None

    def __neg__(self) -> "QRat":
        r = QRat.__new__(QRat)
        r.num, r.den = -self.num, self.den
        return r

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return QRat(self.num + o.num, self.den)
        return QRat(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return QRat(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not o:
            raise ZeroDivisionError("division by zero QRat")
        return QRat(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return QRat(other) / self


def qrat_reduce_to_poly(r: QRat) -> QPoly:
    """The polynomial ``r``, or :class:`NonPolynomialError` if ``r`` is not one."""
    quot, rem = r.num.divmod(r.den)
    if rem:
        raise NonPolynomialError(f"non-polynomial coefficient {r}")
    return quot
