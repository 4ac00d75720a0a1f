"""Sparse polynomials in one or two alphabets over the ``q`` rings.

``SymPoly`` maps exponent tuples of length ``n_x + n_y`` (x exponents first,
then y exponents) to coefficients.  Coefficients may be plain ints,
:class:`~qchar.series.QPoly`, :class:`~qchar.series.QSeries` or
:class:`~qchar.series.QRat`; all of them interoperate with ``int``.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations
from typing import Callable, Iterable, Mapping

from .partitions import Partition, conjugate, dominance_leq, make_partition, padded
from .series import QPoly, QRat, QSeries, format_number

RING_TAGS = ("integer-qpoly", "rational-qseries", "q-rational")


class SymmetryError(ValueError):
    """Raised when a symmetric polynomial was required."""


def _ring_of(c) -> str | None:
    if isinstance(c, QSeries):
        return "rational-qseries"
    if isinstance(c, QRat):
        return "q-rational"
    return None


class SymPoly:
    __slots__ = ("terms", "n_x", "n_y", "ring")

    def __init__(self, terms: Mapping[tuple, object] | None = None, n_x: int = 0, n_y: int = 0,
                 ring: str = "integer-qpoly"):
        if ring not in RING_TAGS:
            raise ValueError(f"unknown ring tag {ring!r}")
        self.n_x, self.n_y, self.ring = n_x, n_y, ring
        self.terms: dict[tuple, object] = {}
        if terms:
            width = n_x + n_y
            for e, c in terms.items():
                if len(e) != width:
                    raise ValueError(f"exponent {e} does not fit {n_x}+{n_y} variables")
                if c:
                    self.terms[tuple(e)] = c

    # construction helpers

    @classmethod
    def constant(cls, c, n_x: int, n_y: int = 0, ring: str = "integer-qpoly") -> "SymPoly":
        return cls({(0,) * (n_x + n_y): c}, n_x, n_y, ring)

    @classmethod
    def variable(cls, i: int, n_x: int, n_y: int = 0, alphabet: str = "x") -> "SymPoly":
        e = [0] * (n_x + n_y)
        e[i if alphabet == "x" else n_x + i] = 1
        return cls({tuple(e): 1}, n_x, n_y)

    def _like(self, terms: dict, ring: str | None = None) -> "SymPoly":
        out = SymPoly.__new__(SymPoly)
        out.n_x, out.n_y = self.n_x, self.n_y
        out.ring = ring or self.ring
        out.terms = terms
        return out

    # container protocol

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def coeff(self, x_exps: Iterable[int], y_exps: Iterable[int] = ()):
        return self.terms.get(tuple(x_exps) + tuple(y_exps), 0)

    def split(self, e: tuple) -> tuple[tuple, tuple]:
        return e[: self.n_x], e[self.n_x:]

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, QPoly, QSeries, QRat)):
            other = SymPoly.constant(other, self.n_x, self.n_y)
        if not isinstance(other, SymPoly):
            return NotImplemented
        if (self.n_x, self.n_y) != (other.n_x, other.n_y):
            return False
        keys = self.terms.keys() | other.terms.keys()
        return all(self.terms.get(k, 0) == other.terms.get(k, 0) for k in keys)

    __hash__ = None

    def __repr__(self) -> str:
        return f"SymPoly({self.terms!r}, n_x={self.n_x}, n_y={self.n_y})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            mono = _monomial_str(e, self.n_x)
            c = self.terms[e]
            if mono == "1":
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif isinstance(c, int):
                parts.append(f"{c}*{mono}")
            else:
                parts.append(f"({c})*{mono}")
        return " + ".join(parts)

    # arithmetic

    def _check(self, other: "SymPoly") -> None:
        if (self.n_x, self.n_y) != (other.n_x, other.n_y):
            raise ValueError("alphabet sizes differ")

    def _merge_ring(self, other: "SymPoly") -> str:
        if self.ring == other.ring:
            return self.ring
        if "rational-qseries" in (self.ring, other.ring):
            return "rational-qseries"
        return "q-rational"

    def __add__(self, other):
        if isinstance(other, (int, QPoly, QSeries, QRat)):
            other = SymPoly.constant(other, self.n_x, self.n_y, _ring_of(other) or self.ring)
        if not isinstance(other, SymPoly):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            v = c if v is None else v + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return self._like(out, self._merge_ring(other))

    __radd__ = __add__

    def __neg__(self) -> "SymPoly":
        return self._like({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "SymPoly":
        out = {}
        for e, v in self.terms.items():
            w = v * c
            if w:
                out[e] = w
        return self._like(out, _ring_of(c) or self.ring)

    def __mul__(self, other):
        if isinstance(other, (int, QPoly, QSeries, QRat)):
            return self.scale(other)
        if not isinstance(other, SymPoly):
            return NotImplemented
        self._check(other)
        out: dict[tuple, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return self._like({e: c for e, c in out.items() if c}, self._merge_ring(other))

    def __rmul__(self, other):
        if isinstance(other, (int, QPoly, QSeries, QRat)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> "SymPoly":
        out = SymPoly.constant(1, self.n_x, self.n_y, self.ring)
        for _ in range(k):
            out = out * self
        return out

    # transforms

    def map_coeffs(self, fn: Callable, ring: str | None = None) -> "SymPoly":
        out = {}
        for e, c in self.terms.items():
            v = fn(c)
            if v:
                out[e] = v
        return self._like(out, ring)

    def to_series(self, order: int) -> "SymPoly":
        return self.map_coeffs(lambda c: _as_series(c, order), "rational-qseries")

    def at_q(self, value) -> "SymPoly":
        """Substitute a number for ``q`` (``q=0``, ``q=1`` specializations)."""
        return self.map_coeffs(lambda c: c(value) if isinstance(c, QPoly) else c)

    def evaluate(self, xs: Iterable, ys: Iterable = ()):
        """Evaluate at numeric points; coefficients are kept as ring elements."""
        point = tuple(xs) + tuple(ys)
        acc = 0
        for e, c in self.terms.items():
            m = 1
            for v, k in zip(point, e):
                if k:
                    m *= v**k
            acc = acc + c * m
        return acc

    def degree_part(self, deg: int, alphabet: str = "all") -> "SymPoly":
        def d(e):
            if alphabet == "x":
                return sum(e[: self.n_x])
            if alphabet == "y":
                return sum(e[self.n_x:])
            return sum(e)
        return self._like({e: c for e, c in self.terms.items() if d(e) == deg})

    def is_symmetric(self) -> bool:
        """Invariance of the x-alphabet coefficients under permutations.

        Checked on transpositions of adjacent variables, which generate S_n.
        """
        for e, c in self.terms.items():
            for i in range(self.n_x - 1):
                if e[i] != e[i + 1]:
                    f = list(e)
                    f[i], f[i + 1] = f[i + 1], f[i]
                    if self.terms.get(tuple(f), 0) != c:
                        return False
        return True

    def dominant_coeffs(self) -> dict[Partition, object]:
        """``{partition: coefficient of x^partition}`` for a symmetric x-polynomial."""
        if self.n_y:
            raise ValueError("dominant_coeffs needs a single alphabet")
        out = {}
        for e, c in self.terms.items():
            if all(e[i] >= e[i + 1] for i in range(len(e) - 1)):
                out[make_partition(e)] = c
        return out

    # serialization

    def to_json(self) -> dict:
        records = []
        for e in sorted(self.terms):
            xe, ye = self.split(e)
            records.append({"exponents_x": list(xe), "exponents_y": list(ye),
                            "coefficient": coeff_to_json(self.terms[e])})
        return {"n_x": self.n_x, "n_y": self.n_y, "ring": self.ring, "terms": records}

    @classmethod
    def from_json(cls, data: dict) -> "SymPoly":
        terms = {}
        for r in data["terms"]:
            terms[tuple(r["exponents_x"]) + tuple(r["exponents_y"])] = coeff_from_json(r["coefficient"])
        return cls(terms, data["n_x"], data["n_y"], data.get("ring", "integer-qpoly"))


def _monomial_str(e: tuple, n_x: int) -> str:
    parts = []
    for i, k in enumerate(e):
        if not k:
            continue
        name = f"x{i + 1}" if i < n_x else f"y{i - n_x + 1}"
        parts.append(name if k == 1 else f"{name}^{k}")
    return "*".join(parts) or "1"


def _as_series(c, order: int) -> QSeries:
    if isinstance(c, QSeries):
        return c.truncate(min(order, c.order)) if c.order > order else c
    if isinstance(c, QPoly):
        return c.to_series(order)
    if isinstance(c, QRat):
        raise TypeError("convert QRat coefficients to polynomials first")
    return QSeries([c], order)


def coeff_to_json(c):
    if isinstance(c, QSeries):
        return c.to_json()
    if isinstance(c, QPoly):
        return c.to_json()
    if isinstance(c, QRat):
        return {"numerator": c.num.to_json(), "denominator": c.den.to_json()}
    return [format_number(c)]


def coeff_from_json(data):
    if isinstance(data, list):
        return QPoly.from_json(data)
    if "order" in data:
        return QSeries.from_json(data)
    return QRat(QPoly.from_json(data["numerator"]), QPoly.from_json(data["denominator"]))


# symmetric polynomial bases


def distinct_permutations(v: tuple) -> list[tuple]:
    return sorted(set(permutations(v)), reverse=True)


@lru_cache(maxsize=None)
def _orbit(lam: Partition, n: int) -> tuple[tuple, ...]:
    return tuple(distinct_permutations(padded(lam, n)))


def monomial_sym(lam: Iterable[int], n: int) -> SymPoly:
    lam = make_partition(lam)
    if len(lam) > n:
        raise ValueError(f"m_{lam} needs at least {len(lam)} variables, got {n}")
    return SymPoly({e: 1 for e in _orbit(lam, n)}, n)


def from_monomial_coeffs(coeffs: Mapping[Partition, object], n: int) -> SymPoly:
    """``sum_mu c_mu m_mu(x_1..x_n)``; terms with ``len(mu) > n`` vanish."""
    terms = {}
    for mu, c in coeffs.items():
        if len(mu) <= n and c:
            for e in _orbit(tuple(mu), n):
                terms[e] = c
    return SymPoly(terms, n)


@lru_cache(maxsize=None)
def elementary(k: int, n: int) -> SymPoly:
    if k < 0:
        return SymPoly({}, n)
    terms = {}
    for idx in combinations(range(n), k):
        e = [0] * n
        for i in idx:
            e[i] = 1
        terms[tuple(e)] = 1
    return SymPoly(terms, n)


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def complete(k: int, n: int) -> SymPoly:
    if k < 0:
        return SymPoly({}, n)
    return SymPoly({e: 1 for e in _compositions(k, n)}, n)


def _det(matrix: list[list[SymPoly]], n: int) -> SymPoly:
    """Determinant by Laplace expansion over row prefixes, memoized on column sets."""
    size = len(matrix)
    memo: dict[frozenset, SymPoly] = {}

    def minor(row: int, cols: frozenset) -> SymPoly:
        if row == size:
            return SymPoly.constant(1, n)
        if cols in memo:
            return memo[cols]
        acc = SymPoly({}, n)
        sign = 1
        for j in range(size):
            if j in cols:
                continue
            entry = matrix[row][j]
            if entry:
                # sign: parity of the number of free columns to the left of j
                acc = acc + entry * minor(row + 1, cols | {j}) * sign
            sign = -sign
        memo[cols] = acc
        return acc

    return minor(0, frozenset())


@lru_cache(maxsize=None)
def schur(lam: Partition, n: int) -> SymPoly:
    """Schur polynomial in ``n`` variables from the Jacobi-Trudi determinant.

    Uses ``det(h_{lam_i - i + j})`` or the dual ``det(e_{lam'_i - i + j})``,
    whichever matrix is smaller.
    """
    lam = make_partition(lam)
    if len(lam) > n:
        return SymPoly({}, n)
    if not lam:
        return SymPoly.constant(1, n)
    conj = conjugate(lam)
    if len(lam) <= len(conj):
        rows, basis = lam, complete
    else:
        rows, basis = conj, elementary
    size = len(rows)
    matrix = [[basis(rows[i] - i + j, n) for j in range(size)] for i in range(size)]
    return _det(matrix, n)


def expand_schur_basis(f: SymPoly) -> dict[Partition, object]:
    """Coefficients ``c_mu`` with ``f = sum c_mu s_mu`` (peeling by dominance).

    The lexicographically largest surviving partition exponent is always
    dominance-maximal, so it is peeled first.
    """
    if f.n_y:
        raise ValueError("expand_schur_basis works on a single alphabet")
    if not f.is_symmetric():
        raise SymmetryError("expand_schur_basis needs a symmetric polynomial")
    n = f.n_x
    rest = f.dominant_coeffs()
    out: dict[Partition, object] = {}
    while rest:
        lead = max(rest)
        c = rest[lead]
        out[lead] = c
        for mu, k in schur(lead, n).dominant_coeffs().items():
            v = rest.get(mu, 0) - c * k
            if v:
                rest[mu] = v
            else:
                rest.pop(mu, None)
        if lead in rest:
            raise ArithmeticError(f"peeling failed to clear the leading term {lead}")
    return out


def schur_combination(coeffs: Mapping[Partition, object], n: int) -> SymPoly:
    acc = SymPoly({}, n)
    for mu, c in coeffs.items():
        acc = acc + schur(tuple(mu), n).scale(c)
    return acc


def coeff_squarefree(f: SymPoly, n: int | None = None):
    """Coefficient of ``x_1 x_2 ... x_n``."""
    n = f.n_x if n is None else n
    if n != f.n_x:
        raise ValueError(f"polynomial has {f.n_x} variables, not {n}")
    return f.coeff((1,) * n, (0,) * f.n_y)


def tensor(f: SymPoly, g: SymPoly) -> SymPoly:
    """``f(x) g(y)`` on the disjoint union of the two x-alphabets."""
    if f.n_y or g.n_y:
        raise ValueError("tensor expects single-alphabet factors")
    out = {}
    for e1, c1 in f.terms.items():
        for e2, c2 in g.terms.items():
            v = c1 * c2
            if v:
                out[e1 + e2] = v
    ring = f.ring if f.ring == g.ring else "rational-qseries"
    return SymPoly(out, f.n_x, g.n_x, ring)


def is_monic_triangular(f: SymPoly, lam: Partition) -> bool:
    """Monomial support lies below ``lam`` in dominance with coefficient 1 at ``lam``."""
    dom = f.dominant_coeffs()
    if dom.get(lam) != 1:
        return False
    return all(dominance_leq(mu, lam) for mu in dom)
