import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fricke7 import constants as C
from fricke7.errors import NotASquareError
from fricke7.exactring import padd, pscale, psub
from fricke7.ffpoly import (
    Fp2,
    FpPoly,
    PrimeContext,
    factorize,
    fq_distinct_roots,
    is_irreducible,
    is_prime,
    poly_sqrt,
    resultant,
    resultant_in_X,
    roots_in_fp,
    roots_in_fp2,
    smallest_nonresidue,
    sqrt_mod,
    squarefree_decomposition,
)

PRIMES = [5, 11, 13, 41, 97, 1009]


def random_poly(rng, l, max_deg=64):
    deg = rng.randint(1, max_deg)
    coeffs = [rng.randrange(l) for _ in range(deg)] + [rng.randrange(1, l)]
    return FpPoly.make(l, coeffs)


class TestPrimeContext:
    def test_character_data(self):
        ctx = PrimeContext.make(41)
        assert (ctx.r, ctx.s, ctx.n, ctx.mu7) == (1, 0, 3, 1)
        assert ctx.delta == ctx.r and ctx.epsilon == ctx.s

    def test_rejects_bad_moduli(self):
        for bad in (2, 7, 9, 1):
            with pytest.raises(ValueError):
                PrimeContext.make(bad)


class TestFactorize:
    def test_example_x2_plus_1_mod_5(self):
        fac = factorize(FpPoly.make(5, [1, 0, 1]))
        assert [f.coeffs for f, _ in fac.factors] == [(2, 1), (3, 1)]

    def test_example_f7_minus_one(self):
        # the cubic x^3-x^2-2x+1 is irreducible mod 11 (11 = 4 mod 7) and
        # splits mod 13 (13 = 6 mod 7)
        fac11 = factorize(FpPoly.make(11, C.expand_f7(-1)))
        assert [(f.degree, m) for f, m in fac11.factors] == [(3, 2)]
        fac13 = factorize(FpPoly.make(13, C.expand_f7(-1)))
        assert [(f.degree, m) for f, m in fac13.factors] == [(1, 2)] * 3

    def test_example_xl_minus_x(self):
        l = 11
        f = FpPoly.make(l, [0, -1] + [0] * (l - 2) + [1])
        fac = factorize(f)
        assert len(fac.factors) == l and all(f.degree == 1 for f, _ in fac.factors)

    def test_round_trip_100_cases(self):
        rng = random.Random(2024)
        for i in range(100):
            l = PRIMES[i % len(PRIMES)]
            f = random_poly(rng, l, max_deg=64 if l > 64 else 20)
            fac = factorize(f)
            assert fac.expand() == f
            for g, _ in fac.factors:
                assert g.is_monic

    def test_factors_certified_irreducible_100_cases(self):
        rng = random.Random(7)
        certified = 0
        for _ in range(40):
            l = rng.choice(PRIMES)
            f = random_poly(rng, l, max_deg=24)
            for g, _ in factorize(f).factors:
                assert is_irreducible(g), (l, g)
                certified += 1
        assert certified >= 100

    def test_deterministic_output(self):
        rng = random.Random(3)
        for _ in range(10):
            f = random_poly(rng, 101, max_deg=30)
            assert factorize(f) == factorize(f)

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            factorize(FpPoly.zero(5))

    def test_big_modulus_python_path(self):
        l = (1 << 61) - 1
        assert is_prime(l)
        rng = random.Random(4)
        f = random_poly(rng, l, max_deg=10)
        fac = factorize(f)
        assert fac.expand() == f
        assert all(is_irreducible(g) for g, _ in fac.factors)


class TestResultant:
    def test_evaluation_property(self):
        rng = random.Random(5)
        for _ in range(40):
            l = rng.choice(PRIMES)
            g = random_poly(rng, l, max_deg=12)
            a = rng.randrange(l)
            assert resultant(FpPoly.make(l, [-a, 1]), g) == g(a)

    def test_swap_symmetry_and_multiplicativity(self):
        rng = random.Random(6)
        for _ in range(100):
            l = rng.choice(PRIMES)
            f = random_poly(rng, l, max_deg=8)
            g = random_poly(rng, l, max_deg=8)
            h = random_poly(rng, l, max_deg=6)
            sign = -1 if (f.degree * g.degree) % 2 else 1
            assert resultant(f, g) == sign * resultant(g, f) % l
            assert resultant(f, g * h) == resultant(f, g) * resultant(f, h) % l

    def test_paper_values(self):
        for l in (11, 101, 1009):
            assert resultant(
                FpPoly.make(l, C.X2X1), FpPoly.make(l, C.F1728)
            ) == (2**6 * 3**3 * 7) % l
        rng = random.Random(8)
        for _ in range(10):
            l = 1009
            a0, t0 = rng.randrange(l), rng.randrange(l)
            lhs = resultant(
                FpPoly.make(l, C.g_cubic(a0)), FpPoly.make(l, C.expand_f7(t0))
            )
            assert lhs == pow((a0 + 8) * t0 + a0 * a0 + 3 * a0 + 9, 3, l)


class TestResultantInX:
    @staticmethod
    def _r7_coeffs(l):
        return (
            FpPoly.make(l, C.R7_B),
            FpPoly.make(l, [-c for c in C.R7_A]),
            FpPoly.one(l),
        )

    def test_linear_f_gives_evaluation(self):
        l = 101
        j0 = 17
        out = resultant_in_X(FpPoly.make(l, [-j0, 1]), self._r7_coeffs(l))
        direct = padd(psub([j0 * j0], pscale(list(C.R7_A), j0)), list(C.R7_B))
        assert out == FpPoly.make(l, direct)

    def test_ss5_value(self):
        out = resultant_in_X(FpPoly.x(5), self._r7_coeffs(5))
        assert out == FpPoly.make(5, [0, 0, 1]) * FpPoly.make(5, [3, 4, 1]) ** 3

    def test_agreement_with_pointwise_oracle(self):
        l = 101
        rng = random.Random(9)
        f = FpPoly.make(l, [3, 1, 4, 1, 5, 9, 2, 6, 1])
        R = resultant_in_X(f, self._r7_coeffs(l))
        for y0 in rng.sample(range(l), 20):
            gy = FpPoly.make(l, [c(y0) for c in self._r7_coeffs(l)])
            assert R(y0) == resultant(f, gy)

    def test_sylvester_fallback_small_modulus(self):
        l = 13
        f = FpPoly.make(l, [8, 1])
        R = resultant_in_X(f, self._r7_coeffs(l))
        for y0 in range(l):
            gy = FpPoly.make(l, [c(y0) for c in self._r7_coeffs(l)])
            assert R(y0) == resultant(f, gy)

    def test_degenerate_g_rejected(self):
        with pytest.raises(ValueError):
            resultant_in_X(FpPoly.x(13), (FpPoly.one(13), FpPoly.one(13), FpPoly.zero(13)))


class TestPolySqrt:
    def test_constructed_square(self):
        f = FpPoly.make(7, [1, 1]) ** 2 * FpPoly.make(7, [3, 1]) ** 4
        assert poly_sqrt(f) == FpPoly.make(7, [1, 1]) * FpPoly.make(7, [3, 1]) ** 2

    def test_f7_at_27(self):
        assert poly_sqrt(FpPoly.make(11, C.expand_f7(27))) == FpPoly.make(11, C.CUBIC_D28)

    def test_non_square_rejected(self):
        with pytest.raises(NotASquareError):
            poly_sqrt(FpPoly.make(7, [1, 0, 1]))

    def test_round_trip_100_cases(self):
        rng = random.Random(10)
        for _ in range(100):
            l = rng.choice(PRIMES)
            g = random_poly(rng, l, max_deg=32).monic()
            assert poly_sqrt(g * g) == g

    def test_high_multiplicity_at_small_modulus(self):
        # multiplicities divisible by l exercise the l-th power branch
        g = FpPoly.make(5, [1, 1]) ** 10 * FpPoly.make(5, [2, 1]) ** 2
        assert poly_sqrt(g) == FpPoly.make(5, [1, 1]) ** 5 * FpPoly.make(5, [2, 1])


class TestFp2:
    def test_roots_of_x2_plus_1_mod_3(self):
        roots = roots_in_fp2(FpPoly.make(3, [1, 0, 1]))
        assert len(roots) == 2 and all(r.b != 0 for r in roots)
        F = Fp2(3)
        for r in roots:
            sq = F.mul((r.a, r.b), (r.a, r.b))
            assert sq == (2, 0)  # -1 mod 3

    def test_ss13_single_rational_root(self):
        assert [(r.a, r.b) for r in roots_in_fp2(FpPoly.make(13, [8, 1]))] == [(5, 0)]

    def test_conjugate_quadratic_roots(self):
        roots = roots_in_fp2(FpPoly.make(5, [1, -1, 1]))
        assert len(roots) == 2
        assert all(not r.in_prime_field for r in roots)
        assert roots[0].b == (5 - roots[1].b) % 5  # conjugates

    def test_multiplicity(self):
        f = FpPoly.make(5, [1, 1]) ** 3
        roots = roots_in_fp2(f)
        assert [(r.a, r.b) for r in roots] == [(4, 0)] * 3

    def test_fq_distinct_roots_full_split_flag(self):
        F = Fp2(5)
        rng = random.Random(11)
        roots, clean = fq_distinct_roots(F, [(c % 5, 0) for c in C.R7_B], rng)
        assert clean and sorted(r[0] for r in roots) == [0, 2, 4]
        # x^2 - nu is irreducible over F_25? no: it splits; x^4 - nu does not
        nu = F.nu
        roots, clean = fq_distinct_roots(F, [((-nu) % 5, 0), (0, 0), (0, 0), (0, 0), (1, 0)], rng)
        assert not clean


@settings(max_examples=60, deadline=None)
@given(
    st.sampled_from([5, 13, 101]),
    st.lists(st.integers(0, 100), min_size=1, max_size=12),
    st.lists(st.integers(0, 100), min_size=1, max_size=12),
)
def test_mul_add_consistency_hypothesis(l, a, b):
    fa, fb = FpPoly.make(l, a), FpPoly.make(l, b)
    x0 = 3
    assert (fa * fb)(x0) == fa(x0) * fb(x0) % l
    assert (fa + fb)(x0) == (fa(x0) + fb(x0)) % l
    if not fb.is_zero:
        q, r = divmod(fa, fb)
        assert q * fb + r == fa
        assert r.degree < fb.degree


def test_sqrt_mod_and_nonresidue():
    rng = random.Random(12)
    for l in (5, 13, 41, 97, 1009):
        nu = smallest_nonresidue(l)
        assert pow(nu, (l - 1) // 2, l) == l - 1
        for _ in range(20):
            a = rng.randrange(1, l)
            s = sqrt_mod(a, l)
            if s is None:
                assert pow(a, (l - 1) // 2, l) == l - 1
            else:
                assert s * s % l == a


def test_squarefree_decomposition_reassembles():
    rng = random.Random(13)
    for _ in range(40):
        l = rng.choice([5, 13, 101])
        f = FpPoly.one(l)
        for _ in range(rng.randint(1, 3)):
            f = f * random_poly(rng, l, max_deg=4) ** rng.randint(1, 6)
        re = FpPoly.make(l, [f.lc])
        for comp, m in squarefree_decomposition(f):
            re = re * comp**m
        assert re == f


def test_roots_in_fp():
    f = FpPoly.make(7, [3, 1]) ** 2 * FpPoly.make(7, [1, 0, 1])
    assert roots_in_fp(f) == [(4, 2)]
