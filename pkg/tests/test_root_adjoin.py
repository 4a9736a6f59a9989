"""Root adjoining: frozen rescaling, carriers, and homogeneous form."""

import pytest

from gencluster.errors import HomogeneityFailure, ValidationError
from gencluster.gca_seed import exchange_polynomial, initial_seed, mutate_seed
from gencluster.matrix_mutation import ExtendedExchangeMatrix, mutate_sequence
from gencluster.randomgen import random_seed, random_sequence
from gencluster.root_adjoin import (
    adjoin_root,
    homogeneity_check,
    is_floor_free,
    rho,
    tau_tilde,
    tau_variable,
    transport_check,
)

# Independently derived canonical forms for the bundled rank-2 seed
# with divisors (3, 2) after adjoining a 6th root of every frozen
# variable (6 = product of the divisors).
FIX_B_ADJ_THETA_X = "A^24 + y^2*A^6*B^6*P2X^6 + y*A^12*P1X^6 + y^3*B^12"
FIX_B_ADJ_THETA_Y = "x^2*B^18 + x*B^6*P1Y^6 + 1"
FIX_B_TAU_X = "y*A^-8*B^4"
FIX_B_TAU_Y = "x^-1*B^-9"
FIX_B_RHO_X = ("1", "A^-4*B^-4*P1X^6", "A^-2*B^-2*P2X^6", "1")
FIX_B_RHO_Y = ("1", "B^-3*P1Y^6", "1")


class TestTauTilde:
    def test_fix_b_adjoined_exchange(self, fix_b):
        adjoined = tau_tilde(fix_b)
        assert str(exchange_polynomial(adjoined.seed, 0)) == FIX_B_ADJ_THETA_X
        assert str(exchange_polynomial(adjoined.seed, 1)) == FIX_B_ADJ_THETA_Y

    def test_fix_b_carriers(self, fix_b):
        adjoined = tau_tilde(fix_b)
        assert str(tau_variable(adjoined.seed, 0)) == FIX_B_TAU_X
        assert str(tau_variable(adjoined.seed, 1)) == FIX_B_TAU_Y

    def test_fix_b_coefficient_rows(self, fix_b):
        table = rho(tau_tilde(fix_b).seed)
        assert tuple(str(e) for e in table.rows[0]) == FIX_B_RHO_X
        assert tuple(str(e) for e in table.rows[1]) == FIX_B_RHO_Y

    def test_root_map_powers(self, fix_b, fix_c):
        for seed, power in ((fix_b, 6), (fix_c, 2)):
            adjoined = tau_tilde(seed)
            for original, image in adjoined.root_map().items():
                support = [
                    (adjoined.seed.table.names[i], e)
                    for i, e in enumerate(image.exponents)
                    if e
                ]
                assert len(support) == 1
                name, exponent = support[0]
                assert exponent == power
                assert name.upper() == name

    def test_lcm_mode_differs_when_divisors_share_factors(self):
        matrix = ExtendedExchangeMatrix.from_rows(((0, 2, 1), (-2, 0, 3)), m=1)
        base = initial_seed(matrix, (2, 2))
        total = tau_tilde(base, mode="total")
        lcm = tau_tilde(base, mode="lcm")
        root_total = next(iter(total.root_map().values()))
        root_lcm = next(iter(lcm.root_map().values()))
        assert max(root_total.exponents) == 4
        assert max(root_lcm.exponents) == 2

    def test_adjoining_twice_rejected(self, fix_c):
        adjoined = tau_tilde(fix_c)
        with pytest.raises(ValidationError):
            tau_tilde(adjoined)

    def test_adjoin_order_irrelevant(self, fix_a):
        ab = adjoin_root(adjoin_root(fix_a, "f1", 6), "f2", 6)
        ba = adjoin_root(adjoin_root(fix_a, "f2", 6), "f1", 6)
        assert ab.seed == ba.seed


class TestFloorStructure:
    def test_fixtures_with_floors(self, fix_a, fix_b):
        assert not is_floor_free(fix_a, 0)
        assert not is_floor_free(fix_b, 0)

    def test_adjoined_seeds_are_floor_free(self, fix_a, fix_b, fix_c, rng):
        for seed in (fix_a, fix_b, fix_c):
            adjoined = tau_tilde(seed)
            current = adjoined.seed
            for k in range(seed.matrix.n):
                assert is_floor_free(current, k)
            for k in random_sequence(rng, seed.matrix.n, 4):
                current = mutate_seed(current, k)
                for j in range(seed.matrix.n):
                    assert is_floor_free(current, j)

    def test_rho_requires_homogeneous_ends(self, fix_b):
        with pytest.raises(HomogeneityFailure):
            rho(fix_b)

    def test_homogeneity_witness(self, fix_b):
        adjoined = tau_tilde(fix_b)
        report = homogeneity_check(adjoined.seed, 0)
        assert report.degree == 3
        assert str(report.tau) == FIX_B_TAU_X
        assert str(report.coefficients[1]) == FIX_B_RHO_X[1]

    def test_homogeneity_fails_with_floors(self, fix_b):
        with pytest.raises(HomogeneityFailure):
            homogeneity_check(fix_b, 0)


class TestTransport:
    def test_transport_on_fixtures(self, fix_a, fix_b, fix_c):
        for seed in (fix_a, fix_b, fix_c):
            adjoined = tau_tilde(seed)
            for sequence in ((), (0,), (0, 0)):
                report = transport_check(seed, adjoined, sequence)
                assert report.ok, report.failures

    def test_transport_on_random(self, rng):
        for _ in range(100):
            seed = random_seed(rng)
            adjoined = tau_tilde(seed)
            sequence = random_sequence(rng, seed.matrix.n, 4)
            report = transport_check(seed, adjoined, sequence)
            assert report.ok, report.failures

    def test_single_root_transport(self, fix_b, rng):
        adjoined = adjoin_root(fix_b, "a", 6)
        for _ in range(20):
            sequence = random_sequence(rng, fix_b.matrix.n, 3)
            report = transport_check(fix_b, adjoined, sequence)
            assert report.ok, report.failures

    def test_slack_scaling_commutes(self, fix_a, rng):
        adjoined = tau_tilde(fix_a)
        total = 6  # product of the divisors (2, 3)
        base_m = fix_a.matrix
        adj_m = adjoined.seed.matrix
        for _ in range(10):
            sequence = random_sequence(rng, fix_a.matrix.n, 4)
            b_after = mutate_sequence(base_m, sequence)
            a_after = mutate_sequence(adj_m, sequence)
            n, m = b_after.n, b_after.m
            for i in range(n):
                for l in range(m):
                    assert a_after.rows[i][n + l] == total * b_after.rows[i][n + l]
