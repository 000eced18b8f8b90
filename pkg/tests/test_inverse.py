"""Minimum-sensitivity local inverses and the conservative growth bound."""

import math

import pytest

from poprec.core import ValidationError, rat
from poprec.inverse import (
    LocalInverseCertificate,
    local_inverse_program,
    natural_estimator,
    sensitivity_bound_enclosure,
    sensitivity_bound_holds,
    sensitivity_report,
    solve_local_inverse,
)
from poprec.lp import solve
from poprec.matrices import basis_vector, build_channel_matrix, inf_norm

from oracles import min_sensitivity_by_vertices


class TestNaturalEstimator:
    @pytest.mark.parametrize("n", [0, 1, 2, 5, 9])
    @pytest.mark.parametrize("mu", [rat(1, 4), rat(1, 2), rat(2, 3), rat(1)])
    def test_exactly_inverts_e0(self, n, mu):
        v = natural_estimator(n, mu)
        assert len(v) == n + 1
        image = build_channel_matrix(n, mu).mul_vec(v)
        assert image == basis_vector(0, n + 1)

    @pytest.mark.parametrize("n", [0, 1, 3, 8])
    def test_norm_formula_small_mu(self, n):
        mu = rat(1, 5)
        v = natural_estimator(n, mu)
        assert inf_norm(v) == ((1 - mu) / mu) ** n

    @pytest.mark.parametrize("mu", [rat(1, 2), rat(3, 5), rat(1)])
    def test_norm_at_most_one_for_large_mu(self, mu):
        for n in range(6):
            assert inf_norm(natural_estimator(n, mu)) <= 1

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValidationError):
            natural_estimator(3, 0)
        with pytest.raises(ValidationError):
            natural_estimator(-1, rat(1, 2))


class TestLocalInverseLp:
    def test_frozen_n0(self):
        cert = solve_local_inverse(0, rat(1, 2), rat(1, 10))
        assert cert.sigma == rat(9, 10)
        assert cert.v == (rat(9, 10),)
        assert cert.residual == rat(1, 10)

    def test_frozen_n1(self):
        cert = solve_local_inverse(1, rat(1, 4), rat(1, 10))
        assert cert.sigma == rat(23, 10)
        assert cert.v == (rat(9, 10), rat(-23, 10))

    def test_sigma_is_max_abs_coordinate(self):
        cert = solve_local_inverse(3, rat(3, 10), rat(1, 20))
        assert cert.sigma == inf_norm(cert.v)
        assert cert.residual <= cert.eps

    def test_pivot_count_recorded(self):
        assert solve_local_inverse(2, rat(1, 2), rat(1, 10)).pivots > 0

    @pytest.mark.parametrize("n", [0, 1, 2])
    @pytest.mark.parametrize("mu", [rat(1, 4), rat(1, 2), rat(7, 10)])
    @pytest.mark.parametrize("eps", [rat(1, 10), rat(1, 3)])
    def test_matches_vertex_enumeration(self, n, mu, eps):
        cert = solve_local_inverse(n, mu, eps)
        want, _ = min_sensitivity_by_vertices(n, mu, eps)
        assert want == cert.sigma

    def test_never_beats_nor_loses_to_eps_zero(self):
        # eps = 0 forces the exact inverse, whose only candidate is natural
        n, mu = 3, rat(2, 5)
        cert = solve_local_inverse(n, mu, rat(0))
        assert cert.sigma == inf_norm(natural_estimator(n, mu))
        assert cert.residual == 0

    def test_monotone_in_eps(self):
        n, mu = 4, rat(3, 10)
        sigmas = [
            solve_local_inverse(n, mu, eps).sigma
            for eps in (rat(0), rat(1, 100), rat(1, 10), rat(1, 2))
        ]
        assert sigmas == sorted(sigmas, reverse=True)

    def test_at_most_natural_norm(self):
        for n in (1, 3, 5):
            for mu in (rat(1, 5), rat(1, 2), rat(4, 5)):
                cert = solve_local_inverse(n, mu, rat(1, 10))
                assert cert.sigma <= inf_norm(natural_estimator(n, mu))

    def test_huge_eps_gives_zero(self):
        cert = solve_local_inverse(2, rat(1, 2), rat(3, 2))
        assert cert.sigma == 0
        assert cert.v == (rat(0), rat(0), rat(0))

    def test_program_shape(self):
        lp = local_inverse_program(2, rat(1, 2), rat(1, 10))
        k = 3
        assert lp.constraints.rows == 4 * k
        assert lp.constraints.cols == k + 1
        assert lp.free_vars == frozenset(range(k))
        sol = solve(lp)
        assert sol.status == "optimal"


class TestSensitivityBound:
    def test_enclosure_brackets_true_value(self):
        lo, hi = sensitivity_bound_enclosure(rat(1, 2), rat(1, 10))
        # (1/eps)^((1/mu) ln(2/mu)) = 10^(2 ln 4), far tighter than floats
        true = 10.0 ** (2.0 * math.log(4.0))
        assert float(lo) == pytest.approx(true, rel=1e-12)
        assert lo <= hi
        assert (hi - lo) / lo < rat(1, 10**40)

    def test_enclosure_tightens_with_precision(self):
        lo1, hi1 = sensitivity_bound_enclosure(rat(3, 10), rat(1, 20), prec=64)
        lo2, hi2 = sensitivity_bound_enclosure(rat(3, 10), rat(1, 20), prec=256)
        assert lo1 <= lo2 <= hi2 <= hi1

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValidationError):
            sensitivity_bound_enclosure(rat(0), rat(1, 10))
        with pytest.raises(ValidationError):
            sensitivity_bound_enclosure(rat(1, 2), rat(0))

    @pytest.mark.parametrize("mu", [rat(1, 10), rat(3, 10), rat(1, 2)])
    @pytest.mark.parametrize("eps", [rat(1, 10), rat(1, 20)])
    def test_holds_on_small_grid(self, mu, eps):
        for n in (1, 3, 6):
            cert = solve_local_inverse(n, mu, eps)
            assert sensitivity_bound_holds(cert)

    def test_report_fields(self):
        cert = solve_local_inverse(2, rat(1, 2), rat(1, 10))
        report = sensitivity_report(cert)
        assert report["holds"] is True
        assert report["margin_log10"] == pytest.approx(
            report["bound_log10"] - report["sigma_log10"]
        )
        assert report["bound_log10"] == pytest.approx(2.0 * math.log10(10.0 ** math.log(4.0)), rel=1e-9)

    def test_report_handles_zero_sigma(self):
        cert = LocalInverseCertificate(
            n=0, mu=rat(1, 2), eps=rat(2), v=(rat(0),),
            sigma=rat(0), residual=rat(1),
        )
        report = sensitivity_report(cert)
        assert report["sigma_log10"] == float("-inf")
        assert report["margin_log10"] == float("inf")
        assert report["holds"] is True

    def test_failing_certificate_detected(self):
        cert = LocalInverseCertificate(
            n=1, mu=rat(1, 2), eps=rat(1, 10),
            v=(rat(10**9),), sigma=rat(10**9), residual=rat(0),
        )
        assert not sensitivity_bound_holds(cert)
        assert sensitivity_report(cert)["margin_log10"] < 0
