import random

import pytest

from fricke7 import constants as C
from fricke7.classnum import kronecker
from fricke7.ffpoly import FpPoly, PrimeContext, factorize, roots_in_fp
from fricke7.hasse7 import (
    L_count,
    count_factors,
    deuring_J,
    g_of_x_j,
    hasse_poly,
    supersingular_j_in_fp,
    verify_count_formulas,
    verify_special_factorizations,
    verify_factor_types,
    verify_g_factor_counts,
)
from fricke7.sweep import primes_in

SWEEP_PRIMES = [p for p in primes_in(5, 400) if p != 7]


class TestDeuringJ:
    def test_small_cases(self):
        assert deuring_J(PrimeContext.make(5)).coeffs == (1,)
        assert deuring_J(PrimeContext.make(11)).coeffs == (1,)
        # J_13 = t - 2592 = t + 8 mod 13
        assert deuring_J(PrimeContext.make(13)).coeffs == (8, 1)

    def test_monic_of_degree_n(self):
        for p in (17, 101, 397):
            ctx = PrimeContext.make(p)
            J = deuring_J(ctx)
            assert J.degree == ctx.n and J.is_monic

    def test_roots_avoid_0_and_1728(self):
        for p in (83, 101, 199):
            ctx = PrimeContext.make(p)
            J = deuring_J(ctx)
            assert J(0) != 0 and J(1728 % p) != 0

    def test_rejects_bad_primes(self):
        with pytest.raises(ValueError):
            deuring_J(PrimeContext(l=3, r=1, s=1, n=0, mu7=0, delta=1, epsilon=1))


class TestHassePoly:
    def test_l5_is_f0(self):
        assert hasse_poly(PrimeContext.make(5)) == FpPoly.make(5, C.F0)

    def test_l11_degree_20(self):
        ctx = PrimeContext.make(11)
        H = hasse_poly(ctx)
        assert H.degree == 20
        f0 = FpPoly.make(11, C.F0)
        f1728 = FpPoly.make(11, C.F1728)
        assert H % f0 == FpPoly.zero(11) and H % f1728 == FpPoly.zero(11)

    def test_l13_degree_24(self):
        assert hasse_poly(PrimeContext.make(13)).degree == 24

    def test_degree_formula_sweep(self):
        for p in SWEEP_PRIMES:
            ctx = PrimeContext.make(p)
            assert hasse_poly(ctx).degree == 8 * ctx.r + 12 * ctx.s + 24 * ctx.n


class TestCounts:
    def test_l5(self):
        rep = count_factors(PrimeContext.make(5))
        assert rep.N3 == 2 and rep.N1 == 0 and rep.N6 == 0
        assert rep.classification_ok

    def test_l13(self):
        rep = count_factors(PrimeContext.make(13))
        assert rep.N1 == 6

    def test_l83(self):
        rep = count_factors(PrimeContext.make(83))
        assert rep.N1 == 36  # 3(3-(2/83)) h(-83) with (2/83) = -1, h = 3

    def test_restricted_need(self):
        rep = count_factors(PrimeContext.make(83), need=("N1",), with_histogram=False)
        assert rep.N1 == 36 and rep.N2 is None and rep.degree_histogram is None

    def test_fast_and_edf_routes_agree(self):
        for p in (41, 43, 103, 113, 127):
            ctx = PrimeContext.make(p)
            a = count_factors(ctx, method="fast")
            b = count_factors(ctx, method="edf")
            assert (a.N1, a.N2, a.N3, a.N6) == (b.N1, b.N2, b.N3, b.N6), p


class TestFactorTypeRules:
    def test_l29_all_quadratic(self):
        rep = count_factors(PrimeContext.make(29))
        assert set(d for d, c in rep.degree_histogram.items() if c) == {2}
        assert verify_factor_types(PrimeContext.make(29), rep)

    def test_l13_linear_quadratic_only(self):
        rep = count_factors(PrimeContext.make(13))
        assert set(rep.degree_histogram) <= {1, 2}

    def test_l5_shape(self):
        rep = count_factors(PrimeContext.make(5))
        assert set(rep.degree_histogram) <= {2, 3, 6}


class TestCountFormulas:
    def test_spec_rows(self):
        v41 = verify_count_formulas(PrimeContext.make(41))
        assert v41.h_minus_7l == 14 and v41.verdicts["quadratic_formula"] == "PASS"
        v13 = verify_count_formulas(PrimeContext.make(13))
        assert v13.N1 == 6 and v13.L == 1 and v13.verdicts["six_L"] == "PASS"
        v17 = verify_count_formulas(PrimeContext.make(17))
        assert v17.N3 == 4 and v17.formula_N3 == 4 and v17.verdicts["count_formula"] == "PASS"

    def test_modular_constraints(self):
        # N1 = 0 mod 6 when l = 6 (7); N3 = 0 mod 2 when l = 3,5 (7)
        for p in SWEEP_PRIMES[:40]:
            rep = count_factors(PrimeContext.make(p), need=("N1", "N3"))
            if p % 7 == 6:
                assert rep.N1 % 6 == 0
            if p % 7 in (3, 5):
                assert rep.N3 % 2 == 0


class TestSpecialFactorizations:
    def test_in_hypothesis_primes(self):
        assert verify_special_factorizations(PrimeContext.make(41))["f0"] == "PASS"
        assert verify_special_factorizations(PrimeContext.make(5))["f0"] == "PASS"
        r19 = verify_special_factorizations(PrimeContext.make(19))
        assert r19["f1728"] == "PASS" and r19["psv_split"] == "PASS"
        r83 = verify_special_factorizations(PrimeContext.make(83))
        assert r83 == {"f0": "PASS", "f1728": "PASS", "psv_split": "PASS"}

    def test_out_of_hypothesis_skips(self):
        assert verify_special_factorizations(PrimeContext.make(11))["f0"] == "SKIP"  # 11 = 4 mod 7
        assert verify_special_factorizations(PrimeContext.make(29))["f0"] == "SKIP"  # 29 = 1 mod 7

    def test_sweep_all_pass_or_skip(self):
        for p in SWEEP_PRIMES:
            r = verify_special_factorizations(PrimeContext.make(p))
            assert all(v in ("PASS", "SKIP") for v in r.values()), (p, r)

    def test_g_factor_counts(self):
        assert verify_g_factor_counts(PrimeContext.make(13))["status"] == "PASS"
        assert verify_g_factor_counts(PrimeContext.make(5))["status"] == "PASS-VACUOUS"
        assert verify_g_factor_counts(PrimeContext.make(83))["status"] == "PASS"
        for p in SWEEP_PRIMES[:30]:
            status = verify_g_factor_counts(PrimeContext.make(p))["status"]
            if p % 7 in (3, 5, 6):
                assert status.startswith("PASS"), p
            else:
                assert status == "SKIP", p


class TestStructuralProperties:
    def test_cubic_factors_have_g_shape(self):
        """Every irreducible cubic factor is x^3 + a x^2 - (a+3) x + 1."""
        for p in (5, 17, 19, 61, 101, 103):
            ctx = PrimeContext.make(p)
            if p % 7 not in (3, 5):
                continue
            H = hasse_poly(ctx)
            from fricke7.ffpoly import radical

            for f, _ in factorize(radical(H)).factors:
                if f.degree == 3:
                    a = f.coeffs[2]
                    assert f.coeffs[1] == (-(a + 3)) % p, (p, f)
                    assert f.coeffs[0] == 1

    def test_sextic_factors_tie_to_f7(self):
        for p in (11, 23, 101):
            ctx = PrimeContext.make(p)
            H = hasse_poly(ctx)
            from fricke7.ffpoly import radical

            for f, _ in factorize(radical(H)).factors:
                if f.degree == 6:
                    t = (-f.coeffs[5] - 3) % p
                    cand = FpPoly.make(p, C.expand_f7(t))
                    if f == cand:
                        assert H % cand == FpPoly.zero(p)

    def test_root_set_closed_under_g7_maps(self):
        """Roots of the squarefree part are permuted by phi, and by T_alpha when
        the p-cubic splits mod l."""
        from fricke7.ffpoly import radical

        for p in (13, 29, 41, 43):
            ctx = PrimeContext.make(p)
            sf = radical(hasse_poly(ctx)).monic()
            n = sf.degree
            # phi: sum c_k (1-x)^(n-k) built from sf's coefficients
            acc = FpPoly.zero(p)
            omx = FpPoly.make(p, [1, -1])
            for k, c in enumerate(sf.coeffs):
                if c:
                    acc = acc + c * omx ** (n - k)
            assert acc.monic() == sf, f"phi does not permute roots at {p}"
            if p % 7 in (1, 6):
                alphas = [r for r, _ in roots_in_fp(FpPoly.make(p, C.P_CUBIC))]
                assert len(alphas) == 3
                alpha = alphas[0]
                accT = FpPoly.zero(p)
                num = FpPoly.make(p, [-alpha, 1])
                den = FpPoly.make(p, [-1, 1 - alpha])
                for k, c in enumerate(sf.coeffs):
                    if c:
                        accT = accT + c * num**k * den ** (n - k)
                assert accT.monic() == sf, f"T_alpha does not permute roots at {p}"

    def test_psv_parity_of_F(self):
        """(disc_z F(z, a) / l) = (-7/l) = (-1)^(number of irreducible factors)."""
        rng = random.Random(17)
        for p in (11, 13, 23, 41, 83):
            for _ in range(6):
                a = rng.randrange(2, p)
                if a % p in (0, 1728 % p):
                    continue
                fz = FpPoly.make(p, C.F_Z_NUM) - a * FpPoly.make(p, [-8, 1])
                fac = factorize(fz)
                if any(m > 1 for _, m in fac.factors):
                    continue  # PSV needs a separable polynomial
                assert kronecker(-7, p) == (-1) ** len(fac.factors), (p, a)


def test_L_count_examples():
    assert supersingular_j_in_fp(PrimeContext.make(5)) == [0]
    assert supersingular_j_in_fp(PrimeContext.make(13)) == [5]
    assert L_count(PrimeContext.make(41)) == 4


def test_g_of_x_j_values():
    # G(0, j) = G(1, j) = 1 for every j
    for p, j in ((13, 5), (83, 17)):
        G = g_of_x_j(p, j)
        assert G(0) == 1 and G(1) == 1
