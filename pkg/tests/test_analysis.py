"""Dual polynomials, circle sup-norms, and the growth checks."""

import math
import random

import pytest

from oracles import dense_circle_sup, sympy_translate
from poprec.analysis import (
    DiskSpec,
    SupEstimate,
    bad_polynomial,
    check_disk_growth,
    check_dual_witness,
    coeff_l1,
    dual_of,
    dual_optimum,
    dual_witness,
    eval_poly,
    mobius,
    relaxation_gap_check,
    sup_on_circle,
    three_circle_check,
    transformed_program,
    translate_poly,
)
from poprec.core import ValidationError, rat
from poprec.inverse import local_inverse_program, solve_local_inverse
from poprec.lp import solve
from poprec.matrices import build_channel_matrix, default_alphas


def _random_rational_poly(rng, max_deg=6):
    deg = rng.randint(0, max_deg)
    return [rat(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(deg + 1)]


class TestTranslatePoly:
    @pytest.mark.parametrize("mu", [rat(1, 4), rat(1, 2), rat(7, 10)])
    def test_matches_symbolic_substitution(self, mu):
        rng = random.Random(20260816)
        for _ in range(8):
            p = _random_rational_poly(rng)
            assert translate_poly(p, mu) == sympy_translate(p, mu)

    def test_evaluation_identity_exact(self):
        rng = random.Random(7)
        mu = rat(3, 10)
        for _ in range(6):
            p = _random_rational_poly(rng)
            q = translate_poly(p, mu)
            for x in (rat(0), rat(1), rat(-2), rat(3, 7)):
                assert eval_poly(q, x) == eval_poly(p, 1 + mu * (x - 1))

    def test_is_transpose_of_channel_matrix(self):
        rng = random.Random(11)
        mu = rat(2, 5)
        p = _random_rational_poly(rng, max_deg=5)
        a = build_channel_matrix(len(p) - 1, mu)
        assert translate_poly(p, mu) == list(a.transpose().mul_vec(p))

    @pytest.mark.parametrize("mu", [rat(1, 10), rat(1, 2), rat(9, 10), rat(1)])
    def test_never_expands_coefficient_l1(self, mu):
        rng = random.Random(3)
        for _ in range(6):
            p = _random_rational_poly(rng)
            assert coeff_l1(translate_poly(p, mu)) <= coeff_l1(p)

    def test_degenerate_inputs(self):
        assert translate_poly([], rat(1, 2)) == []
        assert translate_poly([rat(5)], rat(1, 3)) == [rat(5)]
        # float coefficients stay float
        out = translate_poly([1.0, 2.0], 0.5)
        assert all(isinstance(c, float) for c in out)


class TestDualWitness:
    @pytest.mark.parametrize(
        "n,mu,eps",
        [
            (1, rat(1, 4), rat(1, 10)),
            (2, rat(1, 2), rat(1, 10)),
            (3, rat(3, 10), rat(1, 20)),
            (5, rat(2, 5), rat(1, 10)),
        ],
    )
    def test_witness_identities_hold_exactly(self, n, mu, eps):
        w = dual_witness(n, mu, eps)
        report = check_dual_witness(w)
        assert report["ok"]
        assert report["translate_matches"]
        assert report["objective_matches"]
        assert report["translate_l1_bounded"]
        cert = solve_local_inverse(n, mu, eps)
        assert w.sigma == cert.sigma

    def test_tampered_witness_is_rejected(self):
        w = dual_witness(2, rat(1, 2), rat(1, 10))
        import dataclasses

        bad = dataclasses.replace(w, sigma=w.sigma + 1)
        assert not check_dual_witness(bad)["ok"]


class TestBasisInvariance:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_canonical_nodes_reproduce_the_optimum(self, n):
        mu, eps = rat(1, 2), rat(1, 10)
        assert dual_optimum(n, mu, eps) == solve_local_inverse(n, mu, eps).sigma

    def test_random_nodes_reproduce_the_optimum(self):
        n, mu, eps = 3, rat(3, 10), rat(1, 10)
        rng = random.Random(23)
        target = solve_local_inverse(n, mu, eps).sigma
        for _ in range(3):
            nums = rng.sample(range(-12, 13), n + 1)
            alphas = [rat(v, 7) for v in nums]
            assert dual_optimum(n, mu, eps, alphas) == target

    def test_transformed_program_validation(self):
        with pytest.raises(ValidationError):
            transformed_program(2, rat(1, 2), rat(-1, 10), default_alphas(2))


class TestDualOf:
    def test_strong_duality_on_sensitivity_program(self):
        lp = local_inverse_program(2, rat(1, 2), rat(1, 10))
        primal = solve(lp)
        dual = solve(dual_of(lp))
        assert primal.status == dual.status == "optimal"
        assert primal.objective_value == -dual.objective_value

    def test_strong_duality_on_transformed_program(self):
        lp = transformed_program(2, rat(1, 4), rat(1, 10), default_alphas(2))
        primal = solve(lp)
        dual = solve(dual_of(lp))
        assert primal.objective_value == -dual.objective_value


class TestBadPolynomial:
    def test_small_case_coefficients(self):
        # n=2, mu=1/2: scale factor is 1, so coefficients are 1 - x^2
        assert bad_polynomial(2, rat(1, 2)) == [rat(1), rat(0), rat(-1)]

    def test_frozen_values_n10(self):
        mu = rat(3, 10)
        p = bad_polynomial(10, mu)
        assert eval_poly(p, rat(0)) == rat(9765625, 4084101)
        assert eval_poly(p, 1 - 2 * mu) == 1

    def test_unit_on_real_segment_with_max_at_left_end(self):
        mu = rat(3, 10)
        p = bad_polynomial(8, mu)
        lo = 1 - 2 * mu
        assert eval_poly(p, lo) == 1
        for t in range(1, 10):
            x = lo + (1 - lo) * rat(t, 10)
            assert abs(eval_poly(p, x)) <= 1

    def test_unit_circle_sup_frozen(self):
        p = bad_polynomial(10, rat(3, 10))
        est = sup_on_circle(p, DiskSpec(0.0, 1.0))
        assert est.value == pytest.approx(float(rat(50, 21) ** 5), rel=1e-6)

    def test_validation(self):
        with pytest.raises(ValidationError):
            bad_polynomial(3, rat(1, 2))
        with pytest.raises(ValidationError):
            bad_polynomial(0, rat(1, 2))
        with pytest.raises(ValidationError):
            bad_polynomial(4, rat(1))


class TestSupOnCircle:
    def test_constant(self):
        est = sup_on_circle([rat(7, 2)], DiskSpec(0.3 + 0.1j, 0.5))
        assert est.value == pytest.approx(3.5, rel=1e-12)
        assert est.upper >= est.value

    @pytest.mark.parametrize("k,r", [(1, 0.5), (3, 1.0), (5, 1.7)])
    def test_monomial(self, k, r):
        coeffs = [0.0] * k + [1.0]
        est = sup_on_circle(coeffs, DiskSpec(0.0, r))
        assert est.value == pytest.approx(r**k, rel=1e-12)

    def test_against_dense_grid_oracle(self):
        rng = random.Random(99)
        disks = [(0.0, 1.0), (0.5, 0.3), (-0.25, 0.7)]
        for _ in range(5):
            deg = rng.randint(1, 8)
            coeffs = [rng.uniform(-1, 1) for _ in range(deg + 1)]
            for center, radius in disks:
                truth = dense_circle_sup(coeffs, center, radius)
                est = sup_on_circle(coeffs, DiskSpec(center, radius))
                assert est.value == pytest.approx(truth, rel=1e-4, abs=1e-9)
                assert est.upper >= truth - 1e-12

    def test_image_of_unit_circle_under_channel_substitution(self):
        # q(x) = p(1 + mu(x-1)) maps the unit circle onto the circle of
        # radius mu centered at 1-mu, so the two sups agree.
        rng = random.Random(5)
        mu = rat(3, 10)
        p = _random_rational_poly(rng, max_deg=6)
        q = translate_poly(p, mu)
        sup_q = sup_on_circle(q, DiskSpec(0.0, 1.0)).value
        sup_p = sup_on_circle(p, DiskSpec(0.7, 0.3)).value
        assert sup_q == pytest.approx(sup_p, rel=1e-5, abs=1e-9)

    def test_validation(self):
        with pytest.raises(ValidationError):
            sup_on_circle([1.0], DiskSpec(0.0, 1.0), grid_points=8)
        with pytest.raises(ValidationError):
            DiskSpec(0.0, 0.0)
        with pytest.raises(ValidationError):
            DiskSpec(0.0, -1.0)

    def test_reach(self):
        assert DiskSpec(3 + 4j, 2.0).reach == pytest.approx(7.0)


class TestMobius:
    def test_fixes_origin_image(self):
        beta = 0.3 + 0.2j
        assert mobius(beta, -beta) == pytest.approx(0.0, abs=1e-15)
        assert mobius(beta, 0.0) == pytest.approx(beta)

    def test_identity_at_zero_parameter(self):
        for x in (0.5, -0.25 + 0.9j, 1j):
            assert mobius(0.0, x) == pytest.approx(x)

    def test_preserves_unit_circle(self):
        beta = 0.4 - 0.35j
        for t in range(8):
            x = complex(math.cos(t), math.sin(t))
            assert abs(mobius(beta, x)) == pytest.approx(1.0, rel=1e-12)

    def test_rejects_large_parameter(self):
        with pytest.raises(ValidationError):
            mobius(1.0, 0.0)


class TestThreeCircle:
    def test_random_polynomials_satisfy_log_convexity(self):
        rng = random.Random(41)
        for _ in range(6):
            deg = rng.randint(1, 7)
            coeffs = [rng.uniform(-1, 1) for _ in range(deg + 1)]
            radii = sorted(rng.uniform(0.05, 2.0) for _ in range(3))
            report = three_circle_check(coeffs, *radii)
            assert report["holds"]
            assert not report["degenerate"]

    def test_monomial_attains_equality(self):
        report = three_circle_check([0.0, 0.0, 1.0], 0.25, 0.7, 1.9)
        assert report["holds"]
        assert report["margin"] == pytest.approx(0.0, abs=1e-9)

    def test_zero_polynomial_is_degenerate(self):
        report = three_circle_check([0.0], 0.5, 1.0, 2.0)
        assert report["degenerate"]
        assert report["holds"]

    def test_validation(self):
        with pytest.raises(ValidationError):
            three_circle_check([1.0], 2.0, 1.0, 3.0)


class TestDiskGrowth:
    def test_affine_example_holds(self):
        # p(z) = 1 - z: center value 1 beats the inner sup 0.8
        report = check_disk_growth([1.0, -1.0], DiskSpec(0.5, 0.3))
        assert report["applicable"]
        assert report["holds"]
        assert report["center_value"] == pytest.approx(1.0)
        assert report["inner_sup"] == pytest.approx(0.8, rel=1e-6)
        assert report["outer_sup"] == pytest.approx(2.0, rel=1e-6)
        assert report["bound"] <= report["outer_sup"]

    def test_monomial_is_not_applicable(self):
        # vanishing center value can never exceed the inner sup
        report = check_disk_growth([0.0, 1.0], DiskSpec(0.5, 0.3))
        assert not report["applicable"]
        assert report["holds"] is None

    def test_witness_polynomial_exhibits_the_growth(self):
        mu = rat(3, 10)
        p = bad_polynomial(10, mu)
        report = check_disk_growth(p, DiskSpec(0.7, 0.3))
        assert report["applicable"]
        assert report["holds"]
        assert report["center_value"] == pytest.approx(
            float(rat(9765625, 4084101)), rel=1e-12
        )

    def test_disk_must_sit_inside_unit_disk(self):
        with pytest.raises(ValidationError):
            check_disk_growth([1.0], DiskSpec(0.8, 0.3))


class TestRelaxationGap:
    def test_witness_polynomial_respects_the_bound(self):
        mu = rat(3, 10)
        report = relaxation_gap_check(bad_polynomial(6, mu), mu, rat(1, 10))
        assert report["applicable"]
        assert report["holds"]
        assert report["margin"] is not None

    def test_zero_polynomial_short_circuits(self):
        report = relaxation_gap_check([0.0], rat(1, 2), rat(1, 10))
        assert not report["applicable"]
        assert report["holds"]

    def test_validation(self):
        with pytest.raises(ValidationError):
            relaxation_gap_check([1.0], rat(0), rat(1, 10))
        with pytest.raises(ValidationError):
            relaxation_gap_check([1.0], rat(1, 2), rat(1))
