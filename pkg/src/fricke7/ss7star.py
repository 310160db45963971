"""Supersingular polynomials for the level-7 Fricke group: ss_p(X), the two
independent routes to ss_p^(7*)(Y), the L / L^(7*) counts, Nakaya's predicted
linear-factor count, and the factor-count consistency identities that tie
L^(7*) to the Hasse-invariant counts.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Tuple

from . import constants as C
from .classnum import kronecker, nakaya_class_term
from .errors import StructuralError
from .ffpoly import (
    Fp2,
    FpPoly,
    PrimeContext,
    count_roots_in_fp,
    fq_distinct_roots,
    poly_sqrt,
    resultant_in_X,
    roots_in_fp2,
    squarefree_decomposition,
)
from .hasse7 import FactorCountReport, count_factors, deuring_J, supersingular_j_in_fp


def _check_p(ctx: PrimeContext) -> None:
    if ctx.l < 5 or ctx.l == 7:
        raise ValueError("p >= 5 and p != 7 required")


def ss_poly(ctx: PrimeContext) -> FpPoly:
    """The supersingular polynomial: X^r (X-1728)^s J_p(X), monic and squarefree."""
    _check_p(ctx)
    p = ctx.l
    out = deuring_J(ctx)
    if ctx.r:
        out = out * FpPoly.x(p)
    if ctx.s:
        out = out * FpPoly.make(p, [-1728, 1])
    out = out.monic()
    if squarefree_decomposition(out)[-1][1] != 1 or len(squarefree_decomposition(out)) != 1:
        raise StructuralError(f"ss_{p} not squarefree")
    return out


def _r7_x_coeffs(p: int) -> Tuple[FpPoly, FpPoly, FpPoly]:
    """R_7(X, Y) as X-coefficients over F_p[Y]: (b(Y), -a(Y), 1)."""
    return (
        FpPoly.make(p, C.R7_B),
        FpPoly.make(p, [-c for c in C.R7_A]),
        FpPoly.one(p),
    )


def interpolation_bound_ok(ctx: PrimeContext) -> bool:
    return ctx.l > 8 * ss_poly(ctx).degree + 16


def ss7star_resultant(ctx: PrimeContext) -> FpPoly:
    """ss_p^(7*) from the resultant congruence

    (Y+1)^mu (Y-27)^mu Res_X(ss_p, R_7) =
        (Y^2+224Y+448)^(2 delta) (Y^4-528Y^3-9024Y^2-5120Y-1728)^epsilon ss_p^(7*)(Y)^2.

    The exact divisions and the square root are demanded; failure of either is
    a structural error, not a data condition.
    """
    _check_p(ctx)
    p = ctx.l
    ss = ss_poly(ctx)
    res = resultant_in_X(ss, _r7_x_coeffs(p))
    lhs = res
    if ctx.mu7:
        lhs = lhs * FpPoly.make(p, [1, 1]) * FpPoly.make(p, [-27, 1])
    for corr, e in ((C.QUAD_CORR, 2 * ctx.delta), (C.QUARTIC_CORR, ctx.epsilon)):
        if e:
            q, r = divmod(lhs, FpPoly.make(p, corr) ** e)
            if not r.is_zero:
                raise StructuralError(
                    f"correction factor {corr} does not divide the resultant at p={p}"
                )
            lhs = q
    out = poly_sqrt(lhs, require_square_lc=True)
    if squarefree_decomposition(out)[-1][1] != 1 or len(squarefree_decomposition(out)) != 1:
        raise StructuralError(f"ss^(7*)_{p} from resultant is not squarefree")
    return out


def ss7star_bruteforce(ctx: PrimeContext) -> FpPoly:
    """ss_p^(7*) from the definition: for each supersingular j in F_{p^2},
    collect the roots of R_7(j, Y) in F_{p^2}, dedupe, and expand the product.

    Any Y-root escaping F_{p^2}, or a product with coefficients outside F_p,
    is a structural error (it would contradict the defining congruence).
    """
    _check_p(ctx)
    p = ctx.l
    F = Fp2(p)
    rng = random.Random(0xF7 * p + 1)
    ss = ss_poly(ctx)
    seen = set()
    for j in roots_in_fp2(ss):
        jt = (j.a, j.b)
        # R_7(j, Y) = b(Y) - j a(Y) + j^2, a polynomial of degree 8 over F_{p^2}
        j2 = F.mul(jt, jt)
        coeffs = []
        for k in range(9):
            b_k = C.R7_B[k] if k < len(C.R7_B) else 0
            a_k = C.R7_A[k] if k < len(C.R7_A) else 0
            c = F.sub(F.embed(b_k), F.mul(jt, F.embed(a_k)))
            if k == 0:
                c = F.add(c, j2)
            coeffs.append(c)
        roots, fully_split = fq_distinct_roots(F, coeffs, rng)
        if not fully_split:
            raise StructuralError(f"j_7^* value outside F_(p^2) at p={p}")
        seen.update(roots)
    # product of (Y - j7star) over the distinct values, expanded over F_{p^2}
    prod = [(1, 0)]
    for root in sorted(seen):
        neg = F.neg(root)
        nxt = [(0, 0)] * (len(prod) + 1)
        for i, c in enumerate(prod):
            nxt[i + 1] = F.add(nxt[i + 1], c)
            nxt[i] = F.add(nxt[i], F.mul(c, neg))
        prod = nxt
    if any(c[1] for c in prod):
        raise StructuralError(f"ss^(7*)_{p} product not defined over F_p")
    return FpPoly.make(p, [c[0] for c in prod])


def nakaya_predicted(ctx: PrimeContext) -> Fraction:
    """(1/2)(1 + (-p/7)) L(p) + a_p h(-7p)."""
    p = ctx.l
    a_p, h = nakaya_class_term(p)
    L = len(supersingular_j_in_fp(ctx))
    return Fraction(1 + kronecker(-p, 7), 2) * L + a_p * h


@dataclass(frozen=True)
class SS7StarReport:
    p: int
    ss: FpPoly
    ss7star: FpPoly
    L: int
    L7star: int
    nakaya_predicted: Fraction
    route: str                      # "resultant" | "bruteforce"
    oracle_match: Optional[bool]    # None when only one route ran
    nakaya_ok: bool


def counts_and_nakaya(ctx: PrimeContext, check_oracle: Optional[bool] = None) -> SS7StarReport:
    """Compute ss_p^(7*) (dual-route where applicable) and the Nakaya verdict.

    Both routes run and are compared whenever both are applicable: the brute
    force is always applicable but only cheap for small p, so by default it
    accompanies the resultant route for p <= 300 (`check_oracle` overrides).
    """
    _check_p(ctx)
    p = ctx.l
    run_brute = check_oracle if check_oracle is not None else p <= 300
    route = "resultant" if interpolation_bound_ok(ctx) else "bruteforce"
    ss = ss_poly(ctx)
    res_poly = ss7star_resultant(ctx)
    oracle_match: Optional[bool] = None
    if run_brute or route == "bruteforce":
        brute = ss7star_bruteforce(ctx)
        oracle_match = brute == res_poly
        if not oracle_match:
            raise StructuralError(f"route disagreement at p={p}")
        ss7 = brute if route == "bruteforce" else res_poly
    else:
        ss7 = res_poly
    L = len(supersingular_j_in_fp(ctx))
    L7 = count_roots_in_fp(ss7)
    pred = nakaya_predicted(ctx)
    return SS7StarReport(
        p=p,
        ss=ss,
        ss7star=ss7,
        L=L,
        L7star=L7,
        nakaya_predicted=pred,
        route=route,
        oracle_match=oracle_match,
        nakaya_ok=(pred == L7),
    )


def count_consistency(
    ctx: PrimeContext,
    report: Optional[SS7StarReport] = None,
    counts: Optional[FactorCountReport] = None,
) -> Dict[str, object]:
    """Recompute L^(7*) from the measured N-counts via the case derivations.

    p = 2,4 (7): L = N6 + (1-(-3/p))/2
    p = 3,5 (7): L = (N3-2)/2 + 2 + N6 + (1-(-3/p))/2
    p = 1   (7): L = (N2 - (1-(-3/p))/2)/3 + (1-(-3/p))/2
    p = 6   (7): L = (N1-6)/6 + 2 + (N2 - (1-(-3/p))/2)/3 + (1-(-3/p))/2
    """
    p = ctx.l
    if p < 11 or p == 7:
        raise ValueError("p >= 11, p != 7 required")
    if report is None:
        report = counts_and_nakaya(ctx)
    half = Fraction(1 - kronecker(-3, p), 2)
    p7 = p % 7
    if counts is None:
        need = {1: ("N2",), 6: ("N1", "N2"), 2: ("N6",), 4: ("N6",), 3: ("N3", "N6"), 5: ("N3", "N6")}[p7]
        counts = count_factors(ctx, need=need)
    if p7 in (2, 4):
        formula = counts.N6 + half
    elif p7 in (3, 5):
        formula = Fraction(counts.N3 - 2, 2) + 2 + counts.N6 + half
    elif p7 == 1:
        formula = Fraction(1, 3) * (counts.N2 - half) + half
    else:
        formula = Fraction(counts.N1 - 6, 6) + 2 + Fraction(1, 3) * (counts.N2 - half) + half
    return {
        "p": p,
        "branch": p7,
        "formula_value": formula,
        "L7star": report.L7star,
        "ok": formula == report.L7star,
    }
