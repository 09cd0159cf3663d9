import math

import pytest

from stationarylab.algebra import (
    AlgebraElement,
    adjoint_action,
    canonical_trace,
    certify_norm,
    convolve,
    involution,
    norm_lower_bound,
    norm_upper_bound,
    normalize,
)
from stationarylab.errors import ContextMismatchError, ResourceLimitError
from stationarylab.freegroup import FreeGroupContext, ball, conjugate
from stationarylab.walks import rng_from_seed

F1 = FreeGroupContext(1)
F2 = FreeGroupContext(2)


def random_element(rng, rank, radius, terms):
    ctx = FreeGroupContext(rank)
    words = list(ball(ctx, radius))
    table = {}
    for _ in range(terms):
        w = words[int(rng.integers(0, len(words)))]
        table[w] = complex(rng.standard_normal(), rng.standard_normal())
    return AlgebraElement(table, rank)


def dense_convolve_oracle(x, y):
    """Explicit double loop over all support pairs."""
    out = {}
    for u, cu in x.coeffs.items():
        for v, cv in y.coeffs.items():
            w = u * v
            out[w] = out.get(w, 0) + cu * cv
    return AlgebraElement(out, x.rank)


def max_coeff_diff(x, y):
    keys = set(x.coeffs) | set(y.coeffs)
    return max((abs(x.coeffs.get(k, 0) - y.coeffs.get(k, 0)) for k in keys), default=0.0)


class TestConvolve:
    def test_unitary_times_inverse(self):
        a = F2.word("a")
        assert convolve(AlgebraElement.delta(a), AlgebraElement.delta(a.inverse())) \
            == AlgebraElement.unit(2)

    def test_unit_law(self):
        x = AlgebraElement.delta(F2.word("a")) + AlgebraElement.delta(F2.word("b"))
        assert convolve(x, AlgebraElement.unit(2)) == x

    def test_against_dense_oracle(self):
        rng = rng_from_seed(21)
        for _ in range(25):
            x = random_element(rng, 2, 3, 12)
            y = random_element(rng, 2, 3, 12)
            assert max_coeff_diff(convolve(x, y), dense_convolve_oracle(x, y)) < 1e-12

    def test_bilinear(self):
        rng = rng_from_seed(22)
        x = random_element(rng, 2, 2, 8)
        y = random_element(rng, 2, 2, 8)
        z = random_element(rng, 2, 2, 8)
        lhs = convolve(x + y, z)
        rhs = convolve(x, z) + convolve(y, z)
        assert max_coeff_diff(lhs, rhs) < 1e-12

    def test_associative_random_triples(self):
        rng = rng_from_seed(23)
        for _ in range(20):
            x = random_element(rng, 2, 2, 6)
            y = random_element(rng, 2, 2, 6)
            z = random_element(rng, 2, 2, 6)
            assert max_coeff_diff(
                convolve(convolve(x, y), z), convolve(x, convolve(y, z))
            ) < 1e-12

    def test_context_mismatch(self):
        with pytest.raises(ContextMismatchError):
            convolve(AlgebraElement.unit(1), AlgebraElement.unit(2))

    def test_support_cap(self):
        x = AlgebraElement({w: 1.0 for w in ball(F2, 2)}, 2)
        with pytest.raises(ResourceLimitError):
            convolve(x, x, support_cap=10)


class TestInvolution:
    def test_single_unitary(self):
        a = F2.word("a")
        assert involution(AlgebraElement.delta(a)) == AlgebraElement.delta(a.inverse())

    def test_conjugates_coefficients(self):
        a = F2.word("a")
        assert involution(AlgebraElement.delta(a, 2 + 1j)) == AlgebraElement.delta(
            a.inverse(), 2 - 1j
        )

    def test_involutive(self):
        rng = rng_from_seed(24)
        for _ in range(50):
            x = random_element(rng, 2, 3, 10)
            assert involution(involution(x)) == x

    def test_antimultiplicative(self):
        rng = rng_from_seed(25)
        x = random_element(rng, 2, 2, 6)
        y = random_element(rng, 2, 2, 6)
        assert max_coeff_diff(
            involution(convolve(x, y)), convolve(involution(y), involution(x))
        ) < 1e-12


class TestCanonicalTrace:
    def test_unit(self):
        assert canonical_trace(AlgebraElement.unit(2)) == 1

    def test_offdiagonal(self):
        assert canonical_trace(AlgebraElement.delta(F2.word("a"))) == 0

    def test_positive_and_l2(self):
        rng = rng_from_seed(26)
        for _ in range(50):
            x = random_element(rng, 2, 3, 10)
            val = canonical_trace(convolve(involution(x), x))
            l2sq = sum(abs(c) ** 2 for c in x.coeffs.values())
            assert abs(val - l2sq) < 1e-12
            assert val.real >= 0

    def test_tracial(self):
        rng = rng_from_seed(27)
        for _ in range(50):
            x = random_element(rng, 2, 2, 8)
            y = random_element(rng, 2, 2, 8)
            assert abs(
                canonical_trace(convolve(x, y)) - canonical_trace(convolve(y, x))
            ) < 1e-12


class TestAdjointAction:
    def test_on_unitary(self):
        g, h = F2.word("ab"), F2.word("B")
        assert adjoint_action(g, AlgebraElement.delta(h)) == AlgebraElement.delta(
            (g * h) * g.inverse()
        )

    def test_identity_acts_trivially(self):
        rng = rng_from_seed(28)
        x = random_element(rng, 2, 3, 10)
        assert adjoint_action(F2.identity, x) == x

    def test_preserves_trace(self):
        rng = rng_from_seed(29)
        for _ in range(50):
            x = random_element(rng, 2, 3, 10)
            g = F2.word("aB")
            assert abs(
                canonical_trace(adjoint_action(g, x)) - canonical_trace(x)
            ) < 1e-12

    def test_star_automorphism(self):
        rng = rng_from_seed(30)
        x = random_element(rng, 2, 2, 6)
        y = random_element(rng, 2, 2, 6)
        g = F2.word("ba")
        assert max_coeff_diff(
            adjoint_action(g, convolve(x, y)),
            convolve(adjoint_action(g, x), adjoint_action(g, y)),
        ) < 1e-12
        assert max_coeff_diff(
            adjoint_action(g, involution(x)), involution(adjoint_action(g, x))
        ) < 1e-12

    def test_preserves_moment_lower_bounds(self):
        x = AlgebraElement({w: 1.0 for w in ball(F2, 1) if len(w)}, 2)
        g = F2.word("ba")
        for n in (1, 2, 4):
            assert abs(
                norm_lower_bound(adjoint_action(g, x), n) - norm_lower_bound(x, n)
            ) < 1e-12


class TestNormalize:
    def test_drops_dust(self):
        x = AlgebraElement({F2.word("a"): 1.0, F2.word("b"): 1e-16}, 2)
        assert set(normalize(x).coeffs) == {F2.word("a")}


def z_moment_oracle(n):
    """tau0((a + a^-1)^(2n)) on Z: central binomial coefficients."""
    return math.comb(2 * n, n)


def f2_moment_oracle(n_max):
    """Exact closed-walk counts of the generator sum on F_2, by the radial
    distance recursion (independent of the package's sphere-sum calculus)."""
    counts = {0: 1}
    out = []
    for _ in range(n_max):
        nxt = {}
        top = max(counts)
        for dist in range(top + 2):
            val = 0
            if dist >= 1:
                val += counts.get(dist - 1, 0)
            val += (4 if dist == 0 else 3) * counts.get(dist + 1, 0)
            if val:
                nxt[dist] = val
        counts = nxt
        out.append(counts.get(0, 0))
    return out  # out[n-1] = tau0(x^n)


class TestNormBounds:
    def test_unitary_bracket_tight(self):
        nb = certify_norm(AlgebraElement.delta(F2.word("ab")), 16)
        assert abs(nb.lower - 1) < 1e-12
        assert abs(nb.upper - 1) < 1e-12

    def test_zero_element(self):
        nb = certify_norm(AlgebraElement.zero(2), 4)
        assert nb.lower == 0 and nb.upper == 0

    def test_z_bound_approaches_two(self):
        x = AlgebraElement.delta(F1.word("a")) + AlgebraElement.delta(F1.word("A"))
        assert abs(norm_upper_bound(x) - 2.0) < 1e-12
        lo = norm_lower_bound(x, 64)
        # ratio bound sqrt(C(130,65)/C(128,64)) = sqrt(2*129/65)
        assert abs(lo - math.sqrt(2 * 129 / 65)) < 1e-12
        assert lo > 1.99

    def test_z_moments_against_central_binomials(self):
        # package moment route must reproduce the comb() oracle through the bound
        x = AlgebraElement.delta(F1.word("a")) + AlgebraElement.delta(F1.word("A"))
        for n in (1, 2, 4, 8):
            expected = max(
                max(z_moment_oracle(m) ** (1 / (2 * m)) for m in range(1, n + 1)),
                max(
                    math.sqrt(z_moment_oracle(m + 1) / z_moment_oracle(m))
                    for m in range(1, n + 1)
                ),
            )
            assert abs(norm_lower_bound(x, n) - expected) < 1e-12

    def test_f2_generator_sum_against_radial_oracle(self):
        x = AlgebraElement({w: 1.0 for w in ball(F2, 1) if len(w)}, 2)
        W = f2_moment_oracle(130)  # W[n-1] = tau0(x^n)
        expected = max(
            max(W[2 * m - 1] ** (1 / (2 * m)) for m in range(1, 65)),
            max(math.sqrt(W[2 * m + 1] / W[2 * m - 1]) for m in range(1, 65)),
        )
        got = norm_lower_bound(x, 64)
        assert abs(got - expected) < 1e-9
        assert abs(got - 3.426032146718429) < 1e-12

    def test_lower_bound_monotone_in_moments(self):
        x = AlgebraElement({w: 1.0 for w in ball(F2, 1) if len(w)}, 2)
        values = [norm_lower_bound(x, n) for n in (1, 2, 4, 8, 16, 32, 64)]
        assert all(a <= b + 1e-15 for a, b in zip(values, values[1:]))

    def test_upper_examples(self):
        x = AlgebraElement({w: 1.0 for w in ball(F2, 1) if len(w)}, 2)
        assert abs(norm_upper_bound(x) - 4.0) < 1e-12
        assert norm_upper_bound(AlgebraElement.delta(F2.word("ab"))) == 1.0

    def test_upper_at_least_lower_random(self):
        rng = rng_from_seed(31)
        for _ in range(20):
            x = random_element(rng, 2, 2, 8)
            nb = certify_norm(x, 4)
            assert nb.lower <= nb.upper + 1e-12

    def test_free_support_certificate(self):
        a, b = F2.word("a"), F2.word("b")
        n = 8
        avg = AlgebraElement({conjugate(a, b**k): 1 / n for k in range(1, n + 1)}, 2)
        assert abs(norm_upper_bound(avg) - 2 / math.sqrt(n)) < 1e-12

    def test_generic_path_matches_radial_path(self):
        # conjugating breaks radiality but not the moments
        x = AlgebraElement({w: 1.0 for w in ball(F2, 1) if len(w)}, 2)
        g = F2.word("ba")
        y = adjoint_action(g, x)
        for n in (1, 2, 4):
            assert abs(norm_lower_bound(y, n) - norm_lower_bound(x, n)) < 1e-12
