import math
from fractions import Fraction

import numpy as np
import pytest

from stationarylab.algebra import AlgebraElement, canonical_trace
from stationarylab.errors import MalformedInputError
from stationarylab.freegroup import FreeGroupContext, ball, conjugate
from stationarylab.walks import (
    GroupMeasure,
    cesaro_measure,
    convolve_measures,
    decay_schedule,
    measure_convolve_element,
    measure_power,
    rng_from_seed,
    sample_path,
    uniform_generator_measure,
)

F2 = FreeGroupContext(2)
MU = uniform_generator_measure(2)


class TestGroupMeasure:
    def test_mass_normalization_enforced(self):
        with pytest.raises(MalformedInputError):
            GroupMeasure({F2.word("a"): Fraction(1, 3)}, 2)

    def test_negative_mass_rejected(self):
        with pytest.raises(MalformedInputError):
            GroupMeasure({F2.word("a"): Fraction(3, 2), F2.word("b"): -0.5}, 2)

    def test_exact_mode(self):
        assert MU.exact
        assert not GroupMeasure({F2.word("a"): 0.5, F2.word("A"): 0.5}, 2).exact

    def test_generating_certificate(self):
        assert MU.is_generating()
        lazy = GroupMeasure({F2.identity: Fraction(1, 2), F2.word("b"): Fraction(1, 2)}, 2)
        assert not lazy.is_generating()
        one_sided = GroupMeasure(
            {F2.word("a"): Fraction(1, 2), F2.word("b"): Fraction(1, 2)}, 2
        )
        assert not one_sided.is_generating()


class TestConvolution:
    def test_dirac_identity(self):
        delta_e = GroupMeasure.dirac(F2.identity)
        assert convolve_measures(delta_e, MU) == MU

    def test_square_at_identity(self):
        # oracle: enumerate all 16 increment pairs; 4 cancel
        mu2 = convolve_measures(MU, MU)
        pairs = [
            (u, v)
            for u in MU.support()
            for v in MU.support()
            if (u * v).is_identity()
        ]
        assert len(pairs) == 4
        assert mu2.mass(F2.identity) == Fraction(1, 4)

    def test_square_at_ab(self):
        mu2 = convolve_measures(MU, MU)
        assert mu2.mass(F2.word("ab")) == Fraction(1, 16)

    def test_total_mass_and_associativity(self):
        nu = GroupMeasure(
            {F2.word("a"): Fraction(1, 2), F2.word("ab"): Fraction(1, 2)}, 2
        )
        rho = GroupMeasure({F2.word("B"): Fraction(1)}, 2)
        lhs = convolve_measures(convolve_measures(MU, nu), rho)
        rhs = convolve_measures(MU, convolve_measures(nu, rho))
        assert lhs == rhs
        assert sum(lhs.masses.values()) == 1

    def test_associativity_random_triples(self):
        from stationarylab.freegroup import ball

        rng = rng_from_seed(34)
        words = list(ball(F2, 2))

        def random_measure():
            picks = [words[int(i)] for i in rng.integers(0, len(words), size=3)]
            picks = list(dict.fromkeys(picks))
            return GroupMeasure.uniform_on(picks)

        for _ in range(10):
            m1, m2, m3 = random_measure(), random_measure(), random_measure()
            lhs = convolve_measures(convolve_measures(m1, m2), m3)
            rhs = convolve_measures(m1, convolve_measures(m2, m3))
            assert lhs == rhs
            assert sum(lhs.masses.values()) == 1

    def test_odd_power_parity(self):
        # all support words odd length -> no mass at e for odd powers
        for n in (1, 3, 5):
            assert measure_power(MU, n).mass(F2.identity) == 0


class TestCesaro:
    def test_n1_is_dirac(self):
        assert cesaro_measure(MU, 1) == GroupMeasure.dirac(F2.identity)

    def test_n2(self):
        c = cesaro_measure(MU, 2)
        assert c.mass(F2.identity) == Fraction(1, 2)
        assert c.mass(F2.word("a")) == Fraction(1, 8)

    def test_n4_identity_mass(self):
        # (1 + 0 + 1/4 + 0)/4 by the parity argument
        assert cesaro_measure(MU, 4).mass(F2.identity) == Fraction(5, 16)

    def test_commutes_with_element_convolution(self):
        a = AlgebraElement.delta(F2.word("a")) + AlgebraElement.delta(F2.word("bb"), 2j)
        n = 4
        via_measure = measure_convolve_element(cesaro_measure(MU, n), a)
        avg = AlgebraElement.zero(2)
        for k in range(n):
            avg = avg + (1.0 / n) * measure_convolve_element(measure_power(MU, k), a)
        keys = set(via_measure.coeffs) | set(avg.coeffs)
        assert max(
            abs(via_measure.coeffs.get(w, 0) - avg.coeffs.get(w, 0)) for w in keys
        ) < 1e-12


class TestSampling:
    def test_zero_length(self):
        p = sample_path(MU, 0, seed=1)
        assert p.positions == (F2.identity,)

    def test_position_recomputation(self):
        p = sample_path(MU, 50, seed=2)
        for k in range(50):
            assert p.positions[k] * p.increments[k] == p.positions[k + 1]

    def test_reproducible(self):
        p1 = sample_path(MU, 200, seed=42)
        p2 = sample_path(MU, 200, seed=42)
        assert p1.increments == p2.increments
        assert p1.positions == p2.positions
        assert [str(w) for w in p1.increments] == [str(w) for w in p2.increments]

    def test_empirical_frequencies_multinomial(self):
        from stationarylab.walks import sample_increments

        n = 100_000
        draws = sample_increments(MU, n, seed=7)
        counts = {}
        for g in draws:
            counts[g] = counts.get(g, 0) + 1
        for g in MU.support():
            expected = n * 0.25
            sigma = math.sqrt(n * 0.25 * 0.75)
            assert abs(counts[g] - expected) <= 3 * sigma

    def test_path_uses_same_draw_stream(self):
        from stationarylab.walks import sample_increments

        assert sample_path(MU, 40, seed=7).increments == sample_increments(MU, 40, 7)

    def test_biased_measure_sampling(self):
        from stationarylab.walks import sample_increments

        mu = GroupMeasure({F2.word("a"): 0.9, F2.word("b"): 0.1}, 2)
        draws = sample_increments(mu, 10_000, seed=3)
        frac_a = sum(1 for g in draws if g == F2.word("a")) / 10_000
        assert abs(frac_a - 0.9) < 0.02


class TestMeasureConvolveElement:
    def test_center_fixed(self):
        assert measure_convolve_element(MU, AlgebraElement.unit(2)) == AlgebraElement.unit(2)

    def test_dirac_conjugates(self):
        h, g = F2.word("b"), F2.word("a")
        res = measure_convolve_element(GroupMeasure.dirac(h), AlgebraElement.delta(g))
        assert res == AlgebraElement.delta(conjugate(g, h))

    def test_preserves_trace(self):
        rng = rng_from_seed(33)
        words = list(ball(F2, 2))
        for _ in range(30):
            table = {
                words[int(i)]: complex(rng.standard_normal(), rng.standard_normal())
                for i in rng.integers(0, len(words), size=6)
            }
            x = AlgebraElement(table, 2)
            assert abs(
                canonical_trace(measure_convolve_element(MU, x)) - canonical_trace(x)
            ) < 1e-12


class TestDecaySchedule:
    def test_first_two_terms(self):
        assert decay_schedule(2) == [2, 5]

    def test_exact_inequalities(self):
        ns = decay_schedule(5)
        prev = 0
        for k, n in enumerate(ns, start=1):
            base = 1 - Fraction(1, 2**k)
            assert base**n < Fraction(1, 2**k)
            assert base ** (n - 1) >= Fraction(1, 2**k) or n - 1 <= prev
            assert n > prev
            prev = n

    def test_k2_value_is_exactly_five(self):
        # (3/4)^5 = 243/1024 < 1/4 while (3/4)^4 = 81/256 >= 1/4
        assert Fraction(3, 4) ** 5 < Fraction(1, 4)
        assert Fraction(3, 4) ** 4 >= Fraction(1, 4)
        assert decay_schedule(2)[1] == 5
