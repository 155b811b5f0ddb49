from fractions import Fraction

import pytest
from mpmath import iv

from group import Free, PresentationMismatch, standard_set
from estimators import (
    LOWER,
    RATIO_MOMENT,
    UPPER,
    EstimateReport,
    OneSidedBound,
    kesten_exact_free,
)
from estimators import intervals
from extraction import (
    EstimatorParams,
    augment_with_sigma,
    epsilon_certificate,
    epsilon_scan,
    gamma_free_series,
    gamma_upper_bound,
    generate_range,
    generate_sk,
    power_bound_interval,
    rho_sigma_report,
    smallest_k_below,
)
from ring import l1_norm, markov, power_exact, radial_markov_power

DENSE = EstimatorParams(engine="dense")


@pytest.fixture(scope="module")
def radial_certs(f2, sigma_f2):
    return {c.k: c for c in generate_range(f2, sigma_f2, [20, 40, 60, 100])}


# ---- small k on both engines -------------------------------------------------


def test_k2_dense(f2, sigma_f2):
    cert = generate_sk(f2, sigma_f2, 2, DENSE)
    assert cert.engine == "dense"
    assert cert.b_l1 == Fraction(13, 16)
    assert cert.b_value == Fraction(1, 16)
    assert cert.size_mk == 13
    assert cert.mk_l1 == 1
    assert cert.minorant_ok is True
    assert cert.extracted.lengths == (0, 2)
    assert cert.rho_lower.direction == LOWER
    assert cert.ok


@pytest.mark.parametrize("k", [3, 5])
def test_mk_l1_is_measured_on_the_power(f2, sigma_f2, k):
    dense = generate_sk(f2, sigma_f2, k, DENSE)
    assert dense.mk_l1 == l1_norm(power_exact(markov(sigma_f2), k)) == 1
    radial = generate_sk(f2, sigma_f2, k)
    assert radial.mk_l1 == radial_markov_power(2, k).l1_norm() == 1


def test_k1_gives_sigma(f2, sigma_f2):
    cert = generate_sk(f2, sigma_f2, 1)
    assert cert.extracted.size == 4
    assert cert.extracted.spheres == (1,)
    assert cert.extracted.contains_sigma


@pytest.mark.parametrize("k", [2, 3, 4])
def test_engines_certify_the_same_set(f2, sigma_f2, k):
    dense = generate_sk(f2, sigma_f2, k, DENSE)
    radial = generate_sk(f2, sigma_f2, k)
    assert radial.engine == "radial"
    assert dense.extracted.size == radial.extracted.size
    assert dense.b_l1 == radial.b_l1
    assert dense.power_bound == radial.power_bound
    assert dense.rho_lower.value == pytest.approx(radial.rho_lower.value)


def test_lengths_respect_parity(f2, sigma_f2):
    for k in (5, 6):
        cert = generate_sk(f2, sigma_f2, k)
        assert all(ell % 2 == k % 2 for ell in cert.extracted.lengths)
        assert cert.extracted.lengths[-1] <= k


def test_progress_events(f2, sigma_f2):
    events = []
    generate_sk(f2, sigma_f2, 2, on_progress=lambda *e: events.append(e))
    assert events == [("extract k=2", i, 4) for i in range(1, 5)]


# ---- the certified regime ----------------------------------------------------


@pytest.mark.slow
def test_certificates_hold(radial_certs):
    for k, cert in radial_certs.items():
        assert cert.minorant_ok is True, k
        assert cert.consistency_ok is True, k
        assert cert.rhs_certified
        assert cert.rho_upper.direction == UPPER
        assert cert.ok


@pytest.mark.slow
def test_power_bound_values(radial_certs):
    assert 0.70 < radial_certs[40].power_bound_low <= radial_certs[40].power_bound < 0.71
    assert 0.059 < radial_certs[60].power_bound_low <= radial_certs[60].power_bound < 0.060
    assert radial_certs[20].power_bound > 1


def test_power_bound_interval_encloses_float():
    with intervals.precision(128):
        x = power_bound_interval(40, 4, kesten_exact_free(2))
        assert intervals.lower(x) < 160 * 1.3862943611198906 * 0.75**20 * (1 + 1e-12)
        assert intervals.upper(x) > 160 * 1.3862943611198906 * 0.75**20 * (1 - 1e-12)


def test_lower_rho_sigma_leaves_bound_uncertified(f2, sigma_f2):
    lower = EstimateReport(0.8, LOWER, RATIO_MOMENT)
    cert = generate_sk(f2, sigma_f2, 4, rho_sigma=lower)
    assert cert.rhs_certified is False
    assert cert.rho_upper is None
    assert cert.consistency_ok is None
    assert cert.flags == [True]


def test_certificate_to_dict(f2, sigma_f2):
    d = generate_sk(f2, sigma_f2, 2).to_dict()
    assert d["S_k"]["size"] == "13"
    assert d["group"] == "free:2"
    assert d["sigma"] == "a,A,b,B"
    assert d["b_l1"] == Fraction(13, 16)
    assert d["threshold"]["lambda"] == Fraction(1, 16)


# ---- validation --------------------------------------------------------------


def test_generate_sk_validation(f2, sigma_f2):
    with pytest.raises(ValueError):
        generate_sk(f2, sigma_f2, 0)
    with pytest.raises(PresentationMismatch):
        generate_sk(Free(3), sigma_f2, 2)
    with pytest.raises(ValueError, match="at least 3"):
        generate_sk(Free(1), standard_set(Free(1)), 2)


def test_generate_range_empty(f2, sigma_f2):
    assert generate_range(f2, sigma_f2, []) == []


def test_rho_sigma_for_non_free_set(z2, sigma_z2):
    report = rho_sigma_report(sigma_z2, EstimatorParams(sigma_moment_order=6))
    assert report.direction == LOWER
    assert 0.8 < report.value <= 1
    assert rho_sigma_report(standard_set(Free(2))).direction == "exact"


# ---- augmentation and the target search --------------------------------------


def test_augmentation(f2, sigma_f2):
    cert = generate_sk(f2, sigma_f2, 2)
    aug = augment_with_sigma(cert)
    assert aug.sk_size == 13
    assert aug.outside_sigma == 4
    assert aug.size == 17
    assert aug.spheres == (0, 1, 2)
    assert aug.certified


def test_dense_augmentation_unites_words(f2, sigma_f2):
    aug = augment_with_sigma(generate_sk(f2, sigma_f2, 2, DENSE))
    assert len(aug.words) == 17
    assert all(s in aug.words for s in sigma_f2)


def test_smallest_k_below(sigma_f2):
    rho = kesten_exact_free(2)
    k, bound = smallest_k_below(sigma_f2, rho, 0.5)
    assert bound < 0.5
    previous = smallest_k_below(sigma_f2, rho, 0.5, k_max=k - 1)
    assert previous is None
    assert smallest_k_below(sigma_f2, rho, 1e-9, k_max=10) is None


def test_smallest_k_below_refuses_lower_bounds(sigma_f2):
    with pytest.raises(OneSidedBound):
        smallest_k_below(sigma_f2, EstimateReport(0.8, LOWER, RATIO_MOMENT), 0.5)


# ---- epsilon -----------------------------------------------------------------


def test_epsilon_chain(sigma_f2):
    rho = kesten_exact_free(2)
    report = epsilon_scan(sigma_f2, rho, range(1, 121))
    assert report.epsilon == pytest.approx(0.051879, abs=1e-4)
    assert report.epsilon <= report.epsilon_high
    assert 80 <= report.smallest_k <= 100
    assert report.smallest_k == 86
    row = report.rows[report.smallest_k - 1]
    with intervals.precision(128):
        lhs = power_bound_interval(row.k, 4, rho)
        rhs = iv.exp(-iv.mpf(report.epsilon) * row.k * iv.log(4))
        assert intervals.certainly_less(lhs, rhs)


@pytest.mark.slow
def test_epsilon_certificate_on_sets(sigma_f2, radial_certs):
    report = epsilon_certificate(sigma_f2, kesten_exact_free(2), list(radial_certs.values()))
    rows = {row.k: row for row in report.rows}
    assert [row.k for row in report.rows] == [20, 40, 60, 100]
    assert rows[100].chain_ok is True
    assert rows[100].loglog_ok is True
    assert rows[20].chain_ok is False
    assert rows[100].sk_size == radial_certs[100].extracted.size


def test_epsilon_refuses_lower_bounds(sigma_f2):
    with pytest.raises(OneSidedBound):
        epsilon_scan(sigma_f2, EstimateReport(0.8, LOWER, RATIO_MOMENT), [1, 2])


# ---- gamma -------------------------------------------------------------------


def test_gamma_free_series():
    rows = gamma_free_series(range(2, 51))
    ratios = [r.ratio for r in rows]
    assert all(b < a for a, b in zip(ratios, ratios[1:]))
    below = [r.set_size // 2 for r in rows if r.ratio < 1]
    assert below == list(range(32, 51))


def test_gamma_upper_bound_values():
    report = gamma_upper_bound(4, kesten_exact_free(2))
    assert report.bound == pytest.approx(2 * (4 * 0.8660254) ** 0.5, rel=1e-6)
    assert report.amenable_floor == pytest.approx(1.0)


def test_gamma_refuses_lower_bounds():
    with pytest.raises(OneSidedBound):
        gamma_upper_bound(10, EstimateReport(0.3, LOWER, RATIO_MOMENT))


def test_gamma_for_non_free_set(sigma_z2):
    report = gamma_upper_bound(sigma_z2, EstimateReport(1.0, UPPER, "closed-form"))
    assert report.ratio == pytest.approx(2.0)
