from fractions import Fraction

import pytest

from gridcuts.asymptotics import (
    UnsupportedPoleShape,
    dominant_form,
    error_profile,
    isolate_real_roots,
    refine_root,
    sturm_chain,
)
from gridcuts.automaton import build_canonical, transfer_matrix
from gridcuts.reference import (
    REFERENCE_A,
    REFERENCE_B,
    REFERENCE_GROWTH,
    reference_amplitudes,
)
from gridcuts.series import Polynomial, rational_function, resolvent_sum


def poly(*coeffs):
    return Polynomial(coeffs)


@pytest.fixture(scope="module")
def machine_gf():
    return resolvent_sum(transfer_matrix(build_canonical(4)))


@pytest.fixture(scope="module")
def estimate(machine_gf):
    return dominant_form(machine_gf, amplitude_reference=reference_amplitudes)


class TestRootIsolation:
    def test_quartic_with_growth_pole(self):
        (lo, hi), = isolate_real_roots(poly(-1, 0, 3, 0, 1), (Fraction(0), Fraction(1)))
        assert lo <= Fraction(1) / Fraction(REFERENCE_GROWTH).limit_denominator(10**9) <= hi or (
            0.5502505 < float(lo) < float(hi) < 0.5502506
        )

    def test_second_quartic(self):
        (lo, hi), = isolate_real_roots(poly(-1, 0, 2, 0, 1), (Fraction(0), Fraction(1)))
        assert 0.6435942 < float(lo) <= float(hi) < 0.6435943

    def test_exact_rational_root(self):
        (lo, hi), = isolate_real_roots(poly(-1, 1))
        assert lo <= 1 <= hi
        assert hi - lo < Fraction(1, 10**12)

    def test_all_roots_found_and_disjoint(self):
        p = poly(-1, 1) * poly(-4, 1) * poly(2, 1)  # roots 1, 4, -2
        intervals = isolate_real_roots(p)
        assert len(intervals) == 3
        for (alo, ahi), (blo, bhi) in zip(intervals, intervals[1:]):
            assert ahi < blo
        for root, (lo, hi) in zip((-2, 1, 4), intervals):
            assert lo <= root <= hi

    def test_multiple_roots_located_once(self):
        p = poly(-1, 1) * poly(-1, 1) * poly(1, 1)
        assert len(isolate_real_roots(p)) == 2

    def test_sign_change_across_intervals(self):
        p = poly(-1, 0, 3, 0, 1)
        for lo, hi in isolate_real_roots(p):
            if lo != hi:
                assert (p(lo) > 0) != (p(hi) > 0)

    def test_doubling_precision_nests(self):
        p = poly(-1, 0, 3, 0, 1)
        wide = isolate_real_roots(p, (Fraction(0), Fraction(1)), Fraction(1, 10**6))
        narrow = isolate_real_roots(p, (Fraction(0), Fraction(1)), Fraction(1, 10**12))
        (wlo, whi), = wide
        (nlo, nhi), = narrow
        assert wlo <= nlo <= nhi <= whi

    def test_refine_preserves_bracket(self):
        p = poly(-2, 0, 1)  # sqrt(2)
        lo, hi = refine_root(p, Fraction(1), Fraction(2), Fraction(1, 10**9))
        assert p(lo) < 0 < p(hi)
        assert hi - lo < Fraction(1, 10**9)

    def test_sturm_chain_ends_nonzero(self):
        chain = sturm_chain(poly(-1, 0, 3, 0, 1))
        assert not chain[-1].is_zero()


class TestDominantForm:
    def test_growth(self, estimate):
        assert abs(estimate.growth - REFERENCE_GROWTH) <= 1e-8

    def test_amplitudes(self, estimate):
        assert abs(estimate.amplitude - REFERENCE_A) <= 1e-4
        assert abs(estimate.alternation - REFERENCE_B) <= 1e-4

    def test_closed_form_check(self, estimate):
        assert estimate.exact_check is True
        assert estimate.has_mirror_pole

    def test_pole_interval_certifies_z(self, estimate, machine_gf):
        lo, hi = estimate.pole_interval
        den = machine_gf.denominator
        assert (den(lo) > 0) != (den(hi) > 0)

    def test_growth_squared_times_quadratic_root_is_one(self, estimate):
        (lo, hi), = isolate_real_roots(
            poly(-1, 3, 1), (Fraction(0), Fraction(1)), Fraction(1, 10**20)
        )
        ystar = float((lo + hi) / 2)
        assert abs(estimate.growth**2 * ystar - 1) <= 1e-10

    def test_geometric_series_exact(self):
        gf = rational_function(poly(0, 1), poly(1, -2))
        est = dominant_form(gf)
        assert est.growth == pytest.approx(2.0, abs=1e-12)
        assert not est.has_mirror_pole
        assert est.amp_minus == 0.0
        for n in range(1, 20):
            assert est.predict(n) == pytest.approx(2 ** (n - 1), rel=1e-12)

    def test_repeated_dominant_pole_unsupported(self):
        gf = rational_function(poly(1), poly(1, -1) * poly(1, -1))
        with pytest.raises(UnsupportedPoleShape):
            dominant_form(gf)

    def test_complex_dominant_pair_unsupported(self):
        # poles at +-i/2 inside the real pole at 1
        gf = rational_function(poly(1), poly(1, 0, 4) * poly(1, -1))
        with pytest.raises(UnsupportedPoleShape):
            dominant_form(gf)

    def test_predicted_terms_match_two_pole_expansion(self, estimate):
        for n in (5, 10, 15):
            explicit = estimate.amp_plus * estimate.growth**n + estimate.amp_minus * (
                -estimate.growth
            ) ** n
            assert estimate.predict(n) == pytest.approx(explicit, rel=1e-12)


class TestErrorProfile:
    def test_final_error_small(self, machine_gf, estimate):
        errors = error_profile(machine_gf, estimate, 30)
        assert errors[-1][0] == 30
        assert errors[-1][1] <= 0.02

    def test_errors_shrink_on_average(self, machine_gf, estimate):
        errors = [err for _, err in error_profile(machine_gf, estimate, 30)]
        # subdominant pole ratio ~0.855; compare geometric means of halves
        first, second = errors[2:16], errors[16:30]
        assert sum(second) / len(second) < sum(first) / len(first)

    def test_no_bound_asserted_at_n1(self, machine_gf, estimate):
        errors = error_profile(machine_gf, estimate, 1)
        assert errors[0][0] == 1
        assert errors[0][1] >= 0
