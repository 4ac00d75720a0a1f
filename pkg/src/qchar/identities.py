"""Coefficient-exact verification of character identities under truncation.

Every identity is split into a ``*_sides`` function returning the two sides
as :class:`~qchar.symfunc.SymPoly` tables (exponents -> q-coefficients) and a
``verify_*`` function comparing them.  Infinite products over ``k >= 0`` are
cut at ``k = Q``: a factor ``1 +- a q^k`` with ``k > Q`` does not touch the
coefficients of ``q^0 .. q^Q``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .kato import kato_graded_dim
from .partitions import Partition, d_stat, make_partition, partitions_of
from .series import QPoly, QSeries, format_number, inv_qpoch
from .symfunc import SymPoly, elementary, schur, tensor
from .whittaker import (
    dim_product,
    expected_sign_multiplicity,
    hw_algebra_char,
    sign_multiplicity,
    squarefree_dim,
    weyl_schur_multiplicities,
    whittaker_p,
)


@dataclass
class Mismatch:
    x_exponents: tuple[int, ...]
    y_exponents: tuple[int, ...]
    q_power: int
    lhs: str
    rhs: str

    def to_json(self) -> dict:
        return {"x_exponents": list(self.x_exponents), "y_exponents": list(self.y_exponents),
                "q_power": self.q_power, "lhs": self.lhs, "rhs": self.rhs}


@dataclass
class IdentityReport:
    identity: str
    params: dict[str, int]
    verified: bool
    first_mismatch: Mismatch | None = None
    elapsed_ms: int = 0
    inconclusive: bool = False
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.verified == (self.first_mismatch is not None):
            raise ValueError("verified must be true exactly when there is no mismatch")

    @property
    def status(self) -> str:
        # a too-short truncation makes any mismatch untrustworthy
        if self.inconclusive:
            return "inconclusive"
        return "verified" if self.verified else "failed"

    def to_json(self, timings: bool = True) -> dict:
        out = {
            "identity": self.identity,
            "params": dict(self.params),
            "verified": self.verified,
            "first_mismatch": self.first_mismatch.to_json() if self.first_mismatch else None,
            "elapsed_ms": self.elapsed_ms if timings else 0,
            "inconclusive": self.inconclusive,
        }
        if self.details:
            out["details"] = self.details
        return out


# comparison


def _coeff_at(c, k: int):
    if isinstance(c, (QSeries, QPoly)):
        return c.coeff(k) if k <= getattr(c, "order", k) else 0
    return c if k == 0 else 0


def _qdeg(c) -> int:
    if isinstance(c, QSeries):
        return c.order
    if isinstance(c, QPoly):
        return max(c.degree, 0)
    return 0


def first_mismatch(lhs: SymPoly, rhs: SymPoly, q_order: int | None = None) -> Mismatch | None:
    """First differing ``(monomial, q-power)`` in sorted monomial order."""
    for e in sorted(lhs.terms.keys() | rhs.terms.keys()):
        a, b = lhs.terms.get(e, 0), rhs.terms.get(e, 0)
        top = q_order if q_order is not None else max(_qdeg(a), _qdeg(b))
        for k in range(top + 1):
            ca, cb = _coeff_at(a, k), _coeff_at(b, k)
            if ca != cb:
                xe, ye = lhs.split(e)
                return Mismatch(tuple(xe), tuple(ye), k, format_number(ca), format_number(cb))
    return None


def compare_sides(identity: str, params: dict, lhs: SymPoly, rhs: SymPoly,
                  q_order: int | None = None, started: float | None = None) -> IdentityReport:
    miss = first_mismatch(lhs, rhs, q_order)
    elapsed = 0 if started is None else int(round((time.perf_counter() - started) * 1000))
    return IdentityReport(identity, dict(params), miss is None, miss, elapsed)


# truncated products


def _truncated_mul(a: SymPoly, b: SymPoly, max_deg: int, alphabet_len: int) -> SymPoly:
    """Product keeping only terms whose first ``alphabet_len`` exponents sum to at most ``max_deg``."""
    out: dict[tuple, object] = {}
    for e1, c1 in a.terms.items():
        d1 = sum(e1[:alphabet_len])
        for e2, c2 in b.terms.items():
            if d1 + sum(e2[:alphabet_len]) > max_deg:
                continue
            e = tuple(u + v for u, v in zip(e1, e2))
            prev = out.get(e)
            out[e] = c1 * c2 if prev is None else prev + c1 * c2
    return SymPoly({e: c for e, c in out.items() if c}, a.n_x, a.n_y, a.ring)


def _mono(n_x: int, n_y: int, pairs: Iterable[tuple[int, int]]) -> tuple[int, ...]:
    e = [0] * (n_x + n_y)
    for i, k in pairs:
        e[i] += k
    return tuple(e)


def _qshift(k: int, order: int) -> QSeries:
    return QSeries([0] * k + [1], order)


def _inverse_q_product(D: int, order: int) -> list[QSeries]:
    """Coefficients of ``u^r`` (r <= D) in ``prod_{k=0}^{Q} 1/(1 - u q^k)``.

    Built factor by factor from geometric series.
    """
    coeffs = [QSeries.one(order)] + [QSeries.zero(order) for _ in range(D)]
    for k in range(order + 1):
        new = [QSeries.zero(order) for _ in range(D + 1)]
        for r0, c in enumerate(coeffs):
            if not c:
                continue
            for r in range(D + 1 - r0):
                if k * r > order:
                    break
                new[r0 + r] = new[r0 + r] + c * _qshift(k * r, order)
        coeffs = new
    return coeffs


# Cauchy identities


def cauchy_schur_sides(n: int, m: int, D: int, omit: Iterable[Partition] = ()) -> tuple[SymPoly, SymPoly]:
    if n < 1 or m < 1:
        raise ValueError("cauchy-schur needs n, m >= 1")
    omit = {make_partition(p) for p in omit}
    lhs = SymPoly.constant(1, n, m)
    for i in range(n):
        for j in range(m):
            geo = SymPoly({_mono(n, m, [(i, r), (n + j, r)]): 1 for r in range(D + 1)}, n, m)
            lhs = _truncated_mul(lhs, geo, D, n)
    rhs = SymPoly({}, n, m)
    for N in range(D + 1):
        for lam in partitions_of(N, min(n, m)):
            if lam not in omit:
                rhs = rhs + tensor(schur(lam, n), schur(lam, m))
    return lhs, rhs


def verify_cauchy_schur(n: int, m: int, D: int, omit: Iterable[Partition] = ()) -> IdentityReport:
    t0 = time.perf_counter()
    lhs, rhs = cauchy_schur_sides(n, m, D, omit)
    return compare_sides("cauchy-schur", {"n": n, "m": m, "D": D}, lhs, rhs, 0, t0)


def cauchy_whittaker_sides(n: int, m: int, D: int, Q: int,
                           drop_factor: Iterable[Partition] = ()) -> tuple[SymPoly, SymPoly]:
    if n > m:
        raise ValueError(f"cauchy-whittaker needs n <= m, got n={n}, m={m}")
    if n < 1 or D < 0 or Q < 0:
        raise ValueError("cauchy-whittaker needs n >= 1 and D, Q >= 0")
    drop = {make_partition(p) for p in drop_factor}
    kernel = _inverse_q_product(D, Q)
    lhs = SymPoly.constant(QSeries.one(Q), n, m, "rational-qseries")
    for i in range(n):
        for j in range(m):
            f = SymPoly({_mono(n, m, [(i, r), (n + j, r)]): c for r, c in enumerate(kernel) if c},
                        n, m, "rational-qseries")
            lhs = _truncated_mul(lhs, f, D, n)
    rhs = SymPoly({}, n, m, "rational-qseries")
    for N in range(D + 1):
        for lam in partitions_of(N, n):
            term = tensor(whittaker_p(lam, n), whittaker_p(lam, m)).to_series(Q)
            factor = QSeries.one(Q) if lam in drop else hw_algebra_char(lam, n, Q)
            rhs = rhs + term.scale(factor)
    return lhs, rhs


def verify_cauchy_whittaker(n: int, m: int, D: int, Q: int,
                            drop_factor: Iterable[Partition] = ()) -> IdentityReport:
    t0 = time.perf_counter()
    lhs, rhs = cauchy_whittaker_sides(n, m, D, Q, drop_factor)
    return compare_sides("cauchy-whittaker", {"n": n, "m": m, "D": D, "Q": Q}, lhs, rhs, Q, t0)


# exterior powers of V[t]


def wedge_sides(n: int, D: int, Q: int) -> tuple[SymPoly, SymPoly]:
    if n < 1:
        raise ValueError("wedge identity needs n >= 1")
    lhs = SymPoly.constant(QSeries.one(Q), n, 0, "rational-qseries")
    for i in range(n):
        for k in range(Q + 1):
            f = SymPoly({_mono(n, 0, []): QSeries.one(Q), _mono(n, 0, [(i, 1)]): _qshift(k, Q)},
                        n, 0, "rational-qseries")
            lhs = _truncated_mul(lhs, f, D, n)
    rhs = SymPoly({}, n, 0, "rational-qseries")
    for N in range(D + 1):
        for lam in partitions_of(N, n):
            factor = hw_algebra_char(lam, n, Q) * QPoly.q(d_stat(lam))
            rhs = rhs + whittaker_p(lam, n).to_series(Q).scale(factor)
    return lhs, rhs


def verify_wedge_identity(n: int, D: int, Q: int) -> IdentityReport:
    t0 = time.perf_counter()
    lhs, rhs = wedge_sides(n, D, Q)
    return compare_sides("wedge", {"n": n, "D": D, "Q": Q}, lhs, rhs, Q, t0)


# graded Schur-Weyl duality


def schur_weyl_current_sides(n_boxes: int, m_vars: int, Q: int) -> tuple[SymPoly, SymPoly]:
    if m_vars < 1 or n_boxes < 0:
        raise ValueError("schur-weyl-current needs m_vars >= 1 and n_boxes >= 0")
    e1 = elementary(1, m_vars).to_series(Q).scale(inv_qpoch(1, Q))
    lhs = e1 ** n_boxes
    lhs = lhs.to_series(Q) if n_boxes == 0 else lhs
    rhs = SymPoly({}, m_vars, 0, "rational-qseries")
    for lam in partitions_of(n_boxes, min(n_boxes, m_vars)):
        factor = hw_algebra_char(lam, m_vars, Q) * kato_graded_dim(lam)
        rhs = rhs + whittaker_p(lam, m_vars).to_series(Q).scale(factor)
    return lhs, rhs


def verify_schur_weyl_current(n_boxes: int, m_vars: int, Q: int) -> IdentityReport:
    t0 = time.perf_counter()
    lhs, rhs = schur_weyl_current_sides(n_boxes, m_vars, Q)
    return compare_sides("schur-weyl-current", {"n_boxes": n_boxes, "m_vars": m_vars, "Q": Q},
                         lhs, rhs, Q, t0)


# BGG reciprocity for gl_2 restricted to z = x_1 = 1/x_2


def _restrict_gl2(f: SymPoly) -> dict[int, object]:
    out: dict[int, object] = {}
    for (a, b), c in f.terms.items():
        out[a - b] = out.get(a - b, 0) + c
    return {k: v for k, v in out.items() if v}


def _as_table(d: dict[int, object], Q: int) -> SymPoly:
    out = SymPoly({}, 1, 0, "rational-qseries")
    for e, c in d.items():
        out.terms[(e,)] = c if isinstance(c, QSeries) else (c.to_series(Q) if isinstance(c, QPoly) else QSeries([c], Q))
    out.terms = {k: v for k, v in out.terms.items() if v}
    return out


def _q_inf_inverse(Q: int) -> QSeries:
    out = QSeries.one(Q)
    for k in range(1, Q + 1):
        out = out * QSeries([1 if j % k == 0 else 0 for j in range(Q + 1)], Q)
    return out


def _gl2_shift(mu: Partition, a: int) -> tuple[Partition, Partition, int]:
    """``lam = (mu_1 + a, mu_2 - a)`` shifted by ``-lam_2`` into a partition.

    Returns the shifted ``lam``, the shifted ``mu`` and ``lam_1 - lam_2``.
    """
    m1, m2 = (tuple(mu) + (0, 0))[:2]
    l1, l2 = m1 + a, m2 - a
    return make_partition((l1 - l2, 0)), make_partition((m1 - l2, m2 - l2)), l1 - l2


def gl2_multiplicity(mu: Partition, a: int) -> QPoly:
    """``[W_lam : V_mu]_q`` for ``lam = (mu_1 + a, mu_2 - a)``."""
    lam, mu_shift, _ = _gl2_shift(mu, a)
    return weyl_schur_multiplicities(lam, 2).get(mu_shift, QPoly())


def bgg_gl2_sides(mu, Q: int, cutoff: int) -> tuple[SymPoly, SymPoly]:
    """``ch_q P_mu`` against ``sum_lam [W_lam:V_mu]_q ch_q WW_lam`` in the variable z.

    The gl_2 current algebra has rank 2, so ``ch_q P_mu`` carries
    ``prod_k (1-q^k)^{-2}``.  On the Weyl side the central currents
    ``Id t^k`` act freely, giving ``(q)_inf^{-1}`` next to the sl_2 factor
    ``1/(q)_{lam_1 - lam_2}``.
    """
    mu = make_partition(mu)
    if len(mu) > 2:
        raise ValueError(f"{mu} is not a gl_2 weight")
    cur: dict[int, QSeries] = {e: QSeries([c], Q) for e, c in _restrict_gl2(schur(mu, 2)).items()}
    for k in range(1, Q + 1):
        geo = QSeries([1 if j % k == 0 else 0 for j in range(Q + 1)], Q)
        cur = {e: v * geo * geo for e, v in cur.items()}
        for step in (2, -2):
            new: dict[int, QSeries] = {}
            for e, v in cur.items():
                r = 0
                while k * r <= Q:
                    key = e + step * r
                    new[key] = new.get(key, QSeries.zero(Q)) + v * _qshift(k * r, Q)
                    r += 1
            cur = new
    lhs = _as_table(cur, Q)

    center = _q_inf_inverse(Q)
    rhs_d: dict[int, QSeries] = {}
    for a in range(cutoff + 1):
        lam, _, width = _gl2_shift(mu, a)
        mult = gl2_multiplicity(mu, a)
        if not mult:
            continue
        factor = mult.to_series(Q) * inv_qpoch(width, Q) * center
        for e, c in _restrict_gl2(whittaker_p(lam, 2)).items():
            rhs_d[e] = rhs_d.get(e, QSeries.zero(Q)) + factor * c
    return lhs, _as_table(rhs_d, Q)


def bgg_cutoff(mu, Q: int, start: int = 0, limit: int | None = None) -> tuple[int, list[int | None], bool]:
    """Extend the lambda range until a multiplicity has q-valuation above ``Q``.

    Returns ``(cutoff, valuations, conclusive)`` where ``valuations[a]`` is the
    valuation of the multiplicity at step ``a`` (``None`` for zero) and the
    last entry is the first excluded one.
    """
    mu = make_partition(mu)
    limit = start + 2 * Q + 8 if limit is None else limit
    vals: list[int | None] = []
    a = 0
    while a <= limit:
        v = gl2_multiplicity(mu, a).valuation()
        vals.append(v)
        if a >= start + 1 and v is not None and v > Q:
            seen = [x for x in vals if x is not None]
            monotone = all(x < y for x, y in zip(seen, seen[1:]))
            return a - 1, vals, monotone
        a += 1
    return limit, vals, False


def verify_bgg_gl2(mu, Q: int, cutoff: int = 0, adaptive: bool = True) -> IdentityReport:
    t0 = time.perf_counter()
    mu = make_partition(mu)
    if adaptive:
        used, vals, conclusive = bgg_cutoff(mu, Q, cutoff)
    else:
        used = cutoff
        vals = [gl2_multiplicity(mu, a).valuation() for a in range(cutoff + 2)]
        nxt = vals[-1]
        conclusive = nxt is not None and nxt > Q
    lhs, rhs = bgg_gl2_sides(mu, Q, used)
    (m1, m2) = (tuple(mu) + (0, 0))[:2]
    rep = compare_sides("bgg-gl2", {"mu1": m1, "mu2": m2, "Q": Q, "cutoff": used}, lhs, rhs, Q, t0)
    rep.inconclusive = not conclusive
    rep.details = {"valuations": vals}
    return rep


# per-partition checks


def _table(values: dict[Partition, object]) -> SymPoly:
    """Pack ``{partition: coefficient}`` as a table keyed by padded exponents."""
    width = max((len(p) for p in values), default=0)
    out = SymPoly({}, width, 0)
    for p, c in values.items():
        if c:
            out.terms[tuple(p) + (0,) * (width - len(p))] = c
    return out


def kato_vs_whittaker_sides(max_size: int) -> tuple[SymPoly, SymPoly]:
    lams = [lam for N in range(1, max_size + 1) for lam in partitions_of(N)]
    return (_table({lam: kato_graded_dim(lam) for lam in lams}),
            _table({lam: squarefree_dim(lam) for lam in lams}))


def verify_kato_vs_whittaker(max_size: int) -> IdentityReport:
    t0 = time.perf_counter()
    lhs, rhs = kato_vs_whittaker_sides(max_size)
    return compare_sides("kato-vs-whittaker", {"max_size": max_size}, lhs, rhs, None, t0)


def sign_multiplicity_sides(max_size: int) -> tuple[SymPoly, SymPoly]:
    lams = [lam for N in range(1, max_size + 1) for lam in partitions_of(N)]
    return (_table({lam: sign_multiplicity(lam) for lam in lams}),
            _table({lam: expected_sign_multiplicity(lam) for lam in lams}))


def verify_sign_multiplicity(max_size: int) -> IdentityReport:
    t0 = time.perf_counter()
    lhs, rhs = sign_multiplicity_sides(max_size)
    return compare_sides("sign-multiplicity", {"max_size": max_size}, lhs, rhs, None, t0)


def dim_product_sides(max_size: int, max_vars: int) -> tuple[SymPoly, SymPoly]:
    left, right = {}, {}
    for n in range(1, max_vars + 1):
        for N in range(max_size + 1):
            for lam in partitions_of(N, n):
                key = (n,) + lam
                left[key] = whittaker_p(lam, n).at_q(1).evaluate([1] * n)
                right[key] = dim_product(lam, n)
    return _table(left), _table(right)


def verify_dim_product(max_size: int, max_vars: int) -> IdentityReport:
    t0 = time.perf_counter()
    lhs, rhs = dim_product_sides(max_size, max_vars)
    return compare_sides("dim-product", {"max_size": max_size, "max_vars": max_vars}, lhs, rhs, None, t0)


def _specialization_sides(max_size: int, max_vars: int, value: int,
                          other: Callable[[Partition, int], SymPoly]) -> tuple[SymPoly, SymPoly]:
    # one table per (n, lambda): exponents are (n, lambda..., monomial...)
    lt, rt = {}, {}
    width = max_size + 1 + max_vars
    for n in range(1, max_vars + 1):
        for N in range(max_size + 1):
            for lam in partitions_of(N, n):
                head = (n,) + lam + (0,) * (max_size - len(lam))
                for src, dst in ((whittaker_p(lam, n).at_q(value), lt), (other(lam, n), rt)):
                    for e, c in src.terms.items():
                        dst[head + e + (0,) * (max_vars - n)] = c
    return SymPoly(lt, width), SymPoly(rt, width)


def _elementary_product(lam: Partition, n: int) -> SymPoly:
    out = SymPoly.constant(1, n)
    for col in (sum(1 for p in lam if p > i) for i in range(lam[0] if lam else 0)):
        out = out * elementary(col, n)
    return out


def verify_q0_schur(max_size: int, max_vars: int) -> IdentityReport:
    t0 = time.perf_counter()
    lhs, rhs = _specialization_sides(max_size, max_vars, 0, schur)
    return compare_sides("q0-schur", {"max_size": max_size, "max_vars": max_vars}, lhs, rhs, None, t0)


def verify_q1_elementary(max_size: int, max_vars: int) -> IdentityReport:
    t0 = time.perf_counter()
    lhs, rhs = _specialization_sides(max_size, max_vars, 1, _elementary_product)
    return compare_sides("q1-elementary", {"max_size": max_size, "max_vars": max_vars}, lhs, rhs, None, t0)


# current groups


@dataclass(frozen=True, order=True)
class ZVar:
    """The coordinate ``z_{i,j}^{(k)}``: the ``t^k`` coefficient of entry ``(i, j)``."""

    i: int
    j: int
    k: int

    def __str__(self) -> str:
        return f"z{self.i}{self.j}^({self.k})"


# a polynomial in the ZVar's: {sorted tuple of ZVar (with repeats): coefficient}
ZPoly = dict[tuple[ZVar, ...], int]


def _zmul(a: ZPoly, b: ZPoly) -> ZPoly:
    out: ZPoly = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = tuple(sorted(m1 + m2))
            out[m] = out.get(m, 0) + c1 * c2
    return {m: c for m, c in out.items() if c}


def _zadd(a: ZPoly, b: ZPoly, sign: int = 1) -> ZPoly:
    out = dict(a)
    for m, c in b.items():
        out[m] = out.get(m, 0) + sign * c
    return {m: c for m, c in out.items() if c}


def current_group_relations(n: int, M: int) -> list[ZPoly]:
    """``P_0 .. P_M``: the ``t^m`` coefficients of ``det(z(t)) - 1``.

    Each entry is the truncated series ``z_{ij}(t) = sum_{k<=M} z_{ij}^{(k)} t^k``;
    the determinant is expanded over permutations with exact series
    convolution.
    """
    from itertools import permutations

    if not 2 <= n <= 4:
        raise ValueError(f"current_group_relations supports 2 <= n <= 4, got {n}")
    if M < 0:
        raise ValueError("M must be nonnegative")

    def entry(i: int, j: int) -> list[ZPoly]:
        return [{(ZVar(i, j, k),): 1} for k in range(M + 1)]

    def convolve(a: list[ZPoly], b: list[ZPoly]) -> list[ZPoly]:
        out: list[ZPoly] = [{} for _ in range(M + 1)]
        for s in range(M + 1):
            for r in range(s + 1):
                out[s] = _zadd(out[s], _zmul(a[r], b[s - r]))
        return out

    total: list[ZPoly] = [{} for _ in range(M + 1)]
    for perm in permutations(range(n)):
        sign = 1
        for x in range(n):
            for y in range(x + 1, n):
                if perm[x] > perm[y]:
                    sign = -sign
        prod = entry(1, perm[0] + 1)
        for row in range(1, n):
            prod = convolve(prod, entry(row + 1, perm[row] + 1))
        total = [_zadd(t, p, sign) for t, p in zip(total, prod)]
    total[0] = _zadd(total[0], {(): 1}, -1)
    return total


def format_zpoly(p: ZPoly) -> str:
    if not p:
        return "0"
    parts = []
    for m in sorted(p):
        c = p[m]
        mono = "*".join(str(v) for v in m) or "1"
        if mono == "1":
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append("-" + mono)
        else:
            parts.append(f"{c}*{mono}")
    out = parts[0]
    for t in parts[1:]:
        out += " - " + t[1:] if t.startswith("-") else " + " + t
    return out
