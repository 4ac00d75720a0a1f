"""q-Whittaker polynomials and the Weyl module characters built from them.

``p_lambda(x; q)`` is computed as the ``t = 0`` Macdonald polynomial by
Gram-Schmidt orthogonalization of the monomial basis.  The scalar product on
power sums is

    <p_rho, p_sigma> = delta_{rho, sigma} z_rho prod_i (1 - q^{rho_i}).

The computation is done once per degree in the stable (infinitely many
variables) setting and then restricted to ``n`` variables, which drops the
monomials ``m_mu`` with more than ``n`` parts.
"""

from __future__ import annotations

import json
import logging
import os
import threading
from fractions import Fraction
from functools import lru_cache
from math import comb
from pathlib import Path

from .partitions import (
    Partition,
    d_stat,
    differences,
    dominance_leq,
    format_partition,
    make_partition,
    partitions_of,
    z_factor,
)
from .series import QPoly, QRat, QSeries, inv_qpoch, qrat_reduce_to_poly
from .symfunc import SymPoly, coeff_squarefree, expand_schur_basis, from_monomial_coeffs

log = logging.getLogger(__name__)

CACHE_ENV = "QCHAR_CACHE"


class CharacterError(ArithmeticError):
    """A computed character violated a structural invariant."""


@lru_cache(maxsize=None)
def _fill_count(parts: tuple[int, ...], slots: tuple[int, ...]) -> int:
    """Ways to send each of ``parts`` to a labelled slot filling all exactly.

    ``slots`` is kept sorted: the count only depends on the multiset.
    """
    if not parts:
        return int(not any(slots))
    first, rest = parts[0], parts[1:]
    total = 0
    for j, r in enumerate(slots):
        if r >= first:
            reduced = tuple(sorted(slots[:j] + (r - first,) + slots[j + 1:]))
            total += _fill_count(rest, reduced)
    return total


def _power_to_monomial(rho: Partition, mu: Partition) -> int:
    """Coefficient of ``m_mu`` in the power sum ``p_rho``."""
    return _fill_count(tuple(rho), tuple(sorted(mu)))


def _invert(matrix: list[list[Fraction]]) -> list[list[Fraction]]:
    size = len(matrix)
    aug = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(size)]
           for i, row in enumerate(matrix)]
    for col in range(size):
        pivot = next(r for r in range(col, size) if aug[r][col])
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(size):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[size:] for row in aug]


def _power_norm(rho: Partition) -> QPoly:
    out = QPoly([z_factor(rho)])
    for part in rho:
        out = out * (QPoly([1]) - QPoly.q(part))
    return out


@lru_cache(maxsize=None)
def monomial_gram(N: int) -> tuple[tuple[Partition, ...], dict[tuple[Partition, Partition], QPoly]]:
    """Gram matrix ``<m_mu, m_nu>`` of the t=0 scalar product in degree ``N``."""
    parts = partitions_of(N)
    L = [[_power_to_monomial(rho, mu) for mu in parts] for rho in parts]
    Linv = _invert(L)  # m_mu = sum_rho Linv[mu][rho] p_rho
    norms = [_power_norm(rho) for rho in parts]
    gram = {}
    for a, mu in enumerate(parts):
        for b, nu in enumerate(parts[a:], start=a):
            acc = QPoly()
            for r in range(len(parts)):
                w = Linv[a][r] * Linv[b][r]
                if w:
                    acc = acc + norms[r] * w
            gram[mu, nu] = gram[nu, mu] = acc
    return parts, gram


@lru_cache(maxsize=None)
def stable_whittaker(N: int) -> dict[Partition, dict[Partition, QPoly]]:
    """Monomial expansions ``{lam: {mu: c_{lam,mu}(q)}}`` for every ``lam |- N``.

    Gram-Schmidt runs from the bottom of the dominance order upwards; every
    output coefficient must reduce to a polynomial in ``q``.
    """
    parts, gram = monomial_gram(N)
    order = list(reversed(parts))  # (1^N) first: a linear extension of dominance
    result: dict[Partition, dict[Partition, QPoly]] = {}
    norm: dict[Partition, QPoly] = {}
    for lam in order:
        below = [mu for mu in result if mu != lam and dominance_leq(mu, lam)]
        acc: dict[Partition, QRat] = {}
        for mu in below:
            pairing = sum((gram[lam, nu] * c for nu, c in result[mu].items()), QPoly())
            if not pairing:
                continue
            ratio = QRat(pairing, norm[mu])
            for nu, c in result[mu].items():
                acc[nu] = acc.get(nu, QRat(0)) - ratio * c
        expansion = {lam: QPoly([1])}
        for nu, r in acc.items():
            try:
                c = qrat_reduce_to_poly(r)
            except ArithmeticError as exc:
                raise CharacterError(f"p_{lam}: coefficient of m_{nu} is {r}") from exc
            if c:
                expansion[nu] = c
        result[lam] = expansion
        norm[lam] = sum((gram[lam, nu] * c for nu, c in expansion.items()), QPoly())
    return result


def whittaker_norm(lam: Partition) -> QPoly:
    """``<p_lam, p_lam>`` at t=0, recomputed from the Gram matrix."""
    lam = make_partition(lam)
    _, gram = monomial_gram(sum(lam))
    return sum((gram[lam, nu] * c for nu, c in stable_whittaker(sum(lam))[lam].items()), QPoly())


class WhittakerTable:
    """Append-only memo of ``p_lambda`` keyed by ``(lambda, n)``.

    With a ``cache_dir`` each entry is also written to
    ``p_{lambda}_{n}.json`` in the SymPoly JSON encoding.
    """

    def __init__(self, cache_dir: str | os.PathLike | None = None):
        self.cache_dir = Path(cache_dir) if cache_dir else None
        self._memo: dict[tuple[Partition, int], SymPoly] = {}
        self._lock = threading.Lock()

    def _path(self, lam: Partition, n: int) -> Path:
        return self.cache_dir / f"p_{format_partition(lam)}_{n}.json"

    def get(self, lam, n: int) -> SymPoly:
        lam = make_partition(lam)
        if len(lam) > n:
            raise ValueError(f"p_{lam} needs at least {len(lam)} variables, got {n}")
        key = (lam, n)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        poly = None
        if self.cache_dir is not None:
            path = self._path(lam, n)
            if path.is_file():
                poly = SymPoly.from_json(json.loads(path.read_text()))
                log.debug("loaded %s", path)
        if poly is None:
            poly = from_monomial_coeffs(stable_whittaker(sum(lam))[lam], n)
            if self.cache_dir is not None:
                self.cache_dir.mkdir(parents=True, exist_ok=True)
                path = self._path(lam, n)
                tmp = path.with_suffix(f".{os.getpid()}.{threading.get_ident()}.tmp")
                tmp.write_text(json.dumps(poly.to_json(), sort_keys=True))
                os.replace(tmp, path)
        with self._lock:
            return self._memo.setdefault(key, poly)

    def __len__(self) -> int:
        return len(self._memo)


_default_table: WhittakerTable | None = None


def default_table() -> WhittakerTable:
    global _default_table
    if _default_table is None:
        _default_table = WhittakerTable(os.environ.get(CACHE_ENV) or None)
    return _default_table


def set_default_table(table: WhittakerTable) -> None:
    global _default_table
    _default_table = table


def whittaker_p(lam, n: int) -> SymPoly:
    return default_table().get(lam, n)


def local_weyl_char(lam, n: int) -> SymPoly:
    """Graded character of the local Weyl module ``W_lambda`` of gl_n[t]."""
    return whittaker_p(lam, n)


def hw_algebra_char(lam, n: int, order: int) -> QSeries:
    """Hilbert series ``prod_i 1/(q)_{lam_i - lam_{i+1}}`` of ``A_lambda``."""
    out = QSeries.one(order)
    for d in differences(make_partition(lam), n):
        if d:
            out = out * inv_qpoch(d, order)
    return out


def global_weyl_char(lam, n: int, order: int) -> SymPoly:
    return whittaker_p(lam, n).to_series(order).scale(hw_algebra_char(lam, n, order))


def weyl_schur_multiplicities(lam, n: int) -> dict[Partition, QPoly]:
    """Graded multiplicities ``[W_lambda : V_mu]_q``."""
    lam = make_partition(lam)
    mult = expand_schur_basis(whittaker_p(lam, n))
    for mu, c in mult.items():
        c = c if isinstance(c, QPoly) else QPoly.const(c)
        if any(not isinstance(v, int) or v < 0 for v in c.coeffs):
            raise CharacterError(f"[W_{lam}:V_{mu}]_q = {c} is not a nonnegative integer polynomial")
        mult[mu] = c
    return mult


def dim_product(lam, n: int) -> int:
    """``prod_i C(n, i)^(lam_i - lam_{i+1})``: dimension predicted by fundamental modules."""
    out = 1
    for i, d in enumerate(differences(make_partition(lam), n), start=1):
        out *= comb(n, i) ** d
    return out


def dim_product_check(lam, n: int) -> bool:
    total = whittaker_p(lam, n).at_q(1).evaluate([1] * n)
    return total == dim_product(lam, n)


def sign_multiplicity(lam, n: int | None = None) -> QPoly:
    """Coefficient of ``s_{(1^n)}`` in ``p_lambda`` with ``n = |lambda|``."""
    lam = make_partition(lam)
    N = sum(lam)
    n = N if n is None else n
    if n != N:
        raise ValueError("sign multiplicity is taken with n = |lambda| variables")
    return weyl_schur_multiplicities(lam, n).get((1,) * N, QPoly())


def expected_sign_multiplicity(lam) -> QPoly:
    return QPoly.q(d_stat(make_partition(lam)))


def squarefree_dim(lam) -> QPoly:
    """``dim_q`` of the weight ``(1^n)`` space of ``W_lambda`` via Gram-Schmidt."""
    lam = make_partition(lam)
    c = coeff_squarefree(whittaker_p(lam, sum(lam)))
    return c if isinstance(c, QPoly) else QPoly.const(c)
