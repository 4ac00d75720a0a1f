import threading
from math import comb

import pytest
import sympy

from qchar.kato import kato_graded_dim
from qchar.partitions import conjugate, d_stat, dominance_leq, partitions_of
from qchar.series import QPoly, QSeries, inv_qpoch, qpoch
from qchar.symfunc import SymPoly, coeff_squarefree, elementary, is_monic_triangular, schur
from qchar.whittaker import (
    WhittakerTable,
    dim_product_check,
    global_weyl_char,
    hw_algebra_char,
    local_weyl_char,
    sign_multiplicity,
    stable_whittaker,
    weyl_schur_multiplicities,
    whittaker_norm,
    whittaker_p,
)

q = QPoly.q()
one = QPoly([1])


def linear_solve_oracle(lam):
    """Stable monomial coefficients of P_lam(x; q, 0) from a direct linear solve in sympy.

    Power sums are expanded as actual polynomials in |lam| variables; the
    orthogonality conditions <P, m_nu> = 0 for nu < lam are solved at once.
    """
    N = sum(lam)
    xs = sympy.symbols(f"x1:{N + 1}")
    qs = sympy.Symbol("q")
    parts = list(partitions_of(N))

    def mono_coeffs(expr):
        poly = sympy.Poly(sympy.expand(expr), *xs)
        return [poly.coeff_monomial(tuple(mu) + (0,) * (N - len(mu))) for mu in parts]

    P = sympy.Matrix([mono_coeffs(sympy.Mul(*[sum(x ** r for x in xs) for r in rho]))
                      for rho in parts])
    Minv = P.inv()  # m_mu = sum_rho Minv[mu, rho] p_rho
    norms = []
    for rho in parts:
        z = 1
        for r in set(rho):
            k = rho.count(r)
            z *= r ** k * sympy.factorial(k)
        norms.append(z * sympy.Mul(*[1 - qs ** r for r in rho]))
    size = len(parts)

    def pair(a, b):
        return sum(Minv[a, r] * Minv[b, r] * norms[r] for r in range(size))

    below = [i for i, mu in enumerate(parts) if mu != lam and dominance_leq(mu, lam)]
    li = parts.index(lam)
    cs = sympy.symbols(f"c0:{len(below)}")
    eqs = [pair(li, j) + sum(c * pair(i, j) for c, i in zip(cs, below)) for j in below]
    sol = sympy.solve(eqs, cs, dict=True)[0] if below else {}
    out = {lam: one}
    for c, i in zip(cs, below):
        value = sympy.Poly(sympy.cancel(sol[c]), qs)
        coeffs = [int(v) for v in reversed(value.all_coeffs())]
        if any(coeffs):
            out[parts[i]] = QPoly(coeffs)
    return out


@pytest.mark.parametrize("lam", [lam for N in range(1, 5) for lam in partitions_of(N)])
def test_gram_schmidt_matches_linear_solve(lam):
    assert stable_whittaker(sum(lam))[lam] == linear_solve_oracle(lam)


def q_binomial(n, k):
    if k < 0 or k > n:
        return QPoly()
    num = qpoch(n)
    quot, rem = num.divmod(qpoch(k) * qpoch(n - k))
    assert not rem
    return quot


def test_two_variable_closed_form():
    """p_(a,b)(x1, x2) = (x1 x2)^b sum_k [a-b choose k]_q x1^k x2^(a-b-k)."""
    for a in range(7):
        for b in range(a + 1):
            w = a - b
            expected = SymPoly({(b + k, b + w - k): q_binomial(w, k) for k in range(w + 1)}, 2)
            assert whittaker_p((a, b), 2) == expected


def test_whittaker_examples():
    assert whittaker_p((1,), 3) == SymPoly({(1, 0, 0): 1, (0, 1, 0): 1, (0, 0, 1): 1}, 3)
    assert whittaker_p((1, 1), 2) == SymPoly({(1, 1): 1}, 2)
    assert whittaker_p((2,), 2) == SymPoly({(2, 0): 1, (0, 2): 1, (1, 1): QPoly([1, 1])}, 2)
    with pytest.raises(ValueError):
        whittaker_p((1, 1, 1), 2)


def test_local_weyl_examples():
    assert local_weyl_char((1, 1, 1), 3) == SymPoly({(1, 1, 1): 1}, 3)
    assert local_weyl_char((2, 1), 3).at_q(1).evaluate([1, 1, 1]) == 9
    assert local_weyl_char((), 4) == SymPoly.constant(1, 4)


def test_global_weyl_examples():
    g = global_weyl_char((1,), 2, 2)
    assert g == SymPoly({(1, 0): QSeries([1, 1, 1], 2), (0, 1): QSeries([1, 1, 1], 2)}, 2)
    assert global_weyl_char((), 3, 5) == SymPoly.constant(QSeries.one(5), 3)
    g = global_weyl_char((2,), 2, 1)
    assert g.coeff((1, 1)) == QSeries([1, 2], 1)


def test_hw_algebra_examples():
    assert hw_algebra_char((1, 1), 2, 3) == QSeries([1, 1, 1, 1], 3)
    assert hw_algebra_char((), 3, 4) == QSeries.one(4)
    assert hw_algebra_char((2,), 2, 4) == QSeries([1, 1, 2, 2, 3], 4)
    assert hw_algebra_char((2,), 2, 4) == inv_qpoch(2, 4)


def test_schur_multiplicity_examples():
    assert weyl_schur_multiplicities((2,), 2) == {(2,): one, (1, 1): q}
    assert weyl_schur_multiplicities((1, 1), 2) == {(1, 1): one}
    assert weyl_schur_multiplicities((2, 1), 3) == {(2, 1): one, (1, 1, 1): q}


def test_dim_product_examples():
    assert dim_product_check((2, 1), 3)
    assert dim_product_check((1,), 4)
    assert dim_product_check((2,), 2)
    assert whittaker_p((2,), 2).at_q(1).evaluate([1, 1]) == 4 == comb(2, 1) ** 2


def test_sign_multiplicity_examples():
    assert sign_multiplicity((1, 1)) == one
    assert sign_multiplicity((2, 1)) == q
    assert sign_multiplicity((3,)) == QPoly.q(3) == QPoly.q(d_stat((3,)))


def test_norm_is_product_of_q_pochhammers():
    for N in range(1, 8):
        for lam in partitions_of(N):
            expected = one
            ext = lam + (0,)
            for i in range(len(lam)):
                expected = expected * qpoch(ext[i] - ext[i + 1])
            assert whittaker_norm(lam) == expected


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_specializations(n):
    for N in range(8):
        for lam in partitions_of(N, n):
            p = whittaker_p(lam, n)
            assert p.at_q(0) == schur(lam, n)
            expected = SymPoly.constant(1, n)
            for col in conjugate(lam):
                expected = expected * elementary(col, n)
            assert p.at_q(1) == expected


def test_triangular_nonnegative_and_symmetric():
    for N in range(1, 8):
        for lam in partitions_of(N):
            p = whittaker_p(lam, N)
            assert p.is_symmetric()
            assert is_monic_triangular(p, lam)
            for c in p.terms.values():
                c = c if isinstance(c, QPoly) else QPoly.const(c)
                assert all(isinstance(v, int) and v >= 0 for v in c.coeffs)
            for m in weyl_schur_multiplicities(lam, N).values():
                assert all(isinstance(v, int) and v >= 0 for v in m.coeffs)


def test_squarefree_coefficient_matches_fillings():
    for N in range(1, 8):
        for lam in partitions_of(N):
            assert coeff_squarefree(whittaker_p(lam, N), N) == kato_graded_dim(lam)


def test_table_cache_round_trip(tmp_path):
    table = WhittakerTable(tmp_path)
    p = table.get((2, 1), 3)
    path = tmp_path / "p_2,1_3.json"
    assert path.is_file()
    fresh = WhittakerTable(tmp_path)
    assert fresh.get((2, 1), 3) == p
    assert len(fresh) == 1


def test_table_concurrent_inserts():
    table = WhittakerTable()
    results = []

    def work():
        results.append(table.get((3, 1), 3))

    threads = [threading.Thread(target=work) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(r is results[0] for r in results)
    assert len(table) == 1
