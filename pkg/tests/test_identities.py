import pytest

from conftest import perturb, random_site
from qchar import identities as ids
from qchar.identities import IdentityReport, Mismatch, ZVar
from qchar.series import QSeries, inv_qpoch
from qchar.symfunc import SymPoly


def test_cauchy_schur_examples():
    assert ids.verify_cauchy_schur(1, 1, 3).verified
    assert ids.verify_cauchy_schur(2, 2, 4).verified
    rep = ids.verify_cauchy_schur(2, 2, 4, omit=[(1, 1)])
    assert not rep.verified
    miss = rep.first_mismatch
    assert (miss.x_exponents, miss.y_exponents, miss.q_power) == ((1, 1), (1, 1), 0)


def test_cauchy_whittaker_examples():
    assert ids.verify_cauchy_whittaker(1, 1, 2, 3).verified
    assert ids.verify_cauchy_whittaker(2, 3, 4, 6).verified
    rep = ids.verify_cauchy_whittaker(2, 2, 3, 5, drop_factor=[(1, 1)])
    miss = rep.first_mismatch
    assert (miss.x_exponents, miss.y_exponents, miss.q_power) == ((1, 1), (1, 1), 1)
    with pytest.raises(ValueError):
        ids.verify_cauchy_whittaker(3, 2, 2, 2)


def test_one_variable_cauchy_is_q_binomial_sum():
    lhs, rhs = ids.cauchy_whittaker_sides(1, 1, 2, 3)
    for N in range(3):
        assert rhs.coeff((N,), (N,)) == inv_qpoch(N, 3)
        assert lhs.coeff((N,), (N,)) == inv_qpoch(N, 3)


@pytest.mark.parametrize("args", [(1, 2, 4), (2, 4, 6), (3, 5, 8)])
def test_wedge_examples(args):
    assert ids.verify_wedge_identity(*args).verified


def test_schur_weyl_current_examples():
    assert ids.verify_schur_weyl_current(1, 3, 4).verified
    assert ids.verify_schur_weyl_current(3, 3, 5).verified
    lhs, rhs = ids.schur_weyl_current_sides(2, 2, 3)
    # (1+q)/(1-q)^2 + 1/(1-q) = 2/(1-q)^2 = 2(1 + 2q + 3q^2 + 4q^3 + ...)
    assert lhs.coeff((1, 1)) == rhs.coeff((1, 1)) == QSeries([2, 4, 6, 8], 3)


def test_bgg_examples():
    rep = ids.verify_bgg_gl2((1,), 0, 0)
    assert rep.verified and not rep.inconclusive
    rep = ids.verify_bgg_gl2((1, 1), 2, 4)
    assert rep.verified and not rep.inconclusive
    vals = [v for v in rep.details["valuations"] if v is not None]
    assert vals == sorted(vals)
    assert ids.verify_bgg_gl2((2,), 3, 5).verified


def test_bgg_multiplicities_of_two_row_modules():
    # [W_(m,0) : V_(m-a,a)]_q has valuation a
    for m in range(1, 7):
        for a in range(m // 2 + 1):
            mu = (m - a, a)
            assert ids.gl2_multiplicity(mu, 0).valuation() == (0 if a == 0 else None) or a > 0
    assert [ids.gl2_multiplicity((1, 1), a).valuation() for a in range(4)] == [0, 1, 2, 3]


def test_bgg_non_adaptive_short_cutoff_is_inconclusive():
    rep = ids.verify_bgg_gl2((1,), 3, 0, adaptive=False)
    assert rep.inconclusive


def test_bgg_center_factor_reading():
    """Weyl side with the central factor 1/(q)_{lam_2} in place of 1/(q)_inf fails."""
    Q = 2
    mu = (1, 1)
    lhs, _ = ids.bgg_gl2_sides(mu, Q, 4)
    rhs = {}
    for a in range(5):
        lam, _, width = ids._gl2_shift(mu, a)
        mult = ids.gl2_multiplicity(mu, a)
        lam2 = mu[1] - a
        factor = mult.to_series(Q) * inv_qpoch(width, Q) * (inv_qpoch(lam2, Q) if lam2 > 0 else 1)
        for e, c in ids._restrict_gl2(ids.whittaker_p(lam, 2)).items():
            rhs[e] = rhs.get(e, QSeries.zero(Q)) + factor * c
    assert ids.first_mismatch(lhs, ids._as_table(rhs, Q), Q) is not None


def test_per_partition_checks():
    assert ids.verify_kato_vs_whittaker(5).verified
    assert ids.verify_sign_multiplicity(5).verified
    assert ids.verify_dim_product(5, 3).verified
    assert ids.verify_q0_schur(5, 3).verified
    assert ids.verify_q1_elementary(5, 3).verified


def test_report_invariant_and_json():
    rep = ids.verify_wedge_identity(1, 2, 2)
    data = rep.to_json()
    assert set(data) >= {"identity", "params", "verified", "first_mismatch", "elapsed_ms"}
    assert data["first_mismatch"] is None
    assert rep.to_json(timings=False)["elapsed_ms"] == 0
    with pytest.raises(ValueError):
        IdentityReport("x", {}, True, Mismatch((), (), 0, "1", "2"))
    with pytest.raises(ValueError):
        IdentityReport("x", {}, False, None)


@pytest.mark.parametrize("fn, big, small", [
    (ids.verify_cauchy_whittaker, (2, 2, 4, 6), [(2, 2, 3, 6), (2, 2, 4, 3), (2, 2, 1, 0)]),
    (ids.verify_wedge_identity, (2, 5, 6), [(2, 4, 6), (2, 5, 2), (2, 0, 0)]),
    (ids.verify_schur_weyl_current, (3, 2, 6), [(3, 2, 3), (3, 2, 0)]),
    (ids.verify_cauchy_schur, (2, 3, 6), [(2, 3, 5), (2, 3, 1)]),
])
def test_monotone_in_truncation(fn, big, small):
    assert fn(*big).verified
    for args in small:
        assert fn(*args).verified


def test_schur_cauchy_is_q_zero_whittaker_cauchy():
    for n, m in ((1, 1), (1, 2), (2, 2), (2, 3)):
        assert ids.verify_cauchy_schur(n, m, 4).verified == ids.verify_cauchy_whittaker(n, m, 4, 0).verified
        ls, rs = ids.cauchy_schur_sides(n, m, 4)
        lw, rw = ids.cauchy_whittaker_sides(n, m, 4, 0)
        assert lw.map_coeffs(lambda c: c.coeff(0)) == ls
        assert rw.map_coeffs(lambda c: c.coeff(0)) == rs


SIDES = [
    ("cauchy-schur", lambda: ids.cauchy_schur_sides(2, 2, 4), 0),
    ("cauchy-whittaker", lambda: ids.cauchy_whittaker_sides(2, 2, 3, 4), 4),
    ("wedge", lambda: ids.wedge_sides(2, 4, 5), 5),
    ("schur-weyl-current", lambda: ids.schur_weyl_current_sides(3, 2, 4), 4),
    ("bgg-gl2", lambda: ids.bgg_gl2_sides((1, 1), 2, 3), 2),
    ("kato-vs-whittaker", lambda: ids.kato_vs_whittaker_sides(4), None),
]


@pytest.mark.parametrize("name, make, order", SIDES, ids=[s[0] for s in SIDES])
def test_single_perturbation_is_localized(name, make, order, rng):
    lhs, rhs = make()
    assert ids.first_mismatch(lhs, rhs, order) is None
    for _ in range(20):
        key, k, delta = random_site(rng, lhs, rhs, order)
        if rng.random() < 0.5:
            a, b = perturb(lhs, key, k, delta), rhs
        else:
            a, b = lhs, perturb(rhs, key, k, delta)
        miss = ids.first_mismatch(a, b, order)
        assert miss is not None
        assert miss.x_exponents + miss.y_exponents == key
        assert miss.q_power == k


def test_relations_match_printed_low_orders():
    P = ids.current_group_relations(2, 2)
    z = lambda i, j, k: ZVar(i, j, k)  # noqa: E731
    mono = lambda *vs: tuple(sorted(vs))  # noqa: E731
    assert P[0] == {mono(z(1, 1, 0), z(2, 2, 0)): 1, mono(z(1, 2, 0), z(2, 1, 0)): -1, (): -1}
    assert P[1] == {mono(z(1, 1, 0), z(2, 2, 1)): 1, mono(z(1, 1, 1), z(2, 2, 0)): 1,
                    mono(z(1, 2, 0), z(2, 1, 1)): -1, mono(z(1, 2, 1), z(2, 1, 0)): -1}
    assert len(P[2]) == 6
    for m, p in enumerate(P):
        for vs in p:
            if vs:
                assert sum(v.k for v in vs) == m


def test_relations_determinant_degree_three():
    P = ids.current_group_relations(3, 1)
    assert len(P[0]) == 7  # six permutation terms and the constant
    assert all(len(vs) == 3 for vs in P[1])
    with pytest.raises(ValueError):
        ids.current_group_relations(5, 1)
