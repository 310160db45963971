#!/usr/bin/env python3
"""Print the reference objects this package certifies: the ss_41^(7*)
factorization, Psi_7 mod 41, the P_d factorizations, and the leading
q-expansions.  Everything here is recomputed, not transcribed."""

from fricke7 import constants as C
from fricke7.cmeval import verify_pd_factorization
from fricke7.ffpoly import FpPoly, PrimeContext, factorize
from fricke7.qseries import eta_quotient4, h_series, j7star_series
from fricke7.ss7star import counts_and_nakaya


def series_str(s, terms, var="q"):
    bits = []
    for k in range(s.offset, s.offset + terms):
        c = s.coefficient(k)
        if not c:
            continue
        mag = f"{abs(c)}" if (abs(c) != 1 or k == 0) else ""
        pw = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        bits.append(("- " if c < 0 else "+ ") + (f"{mag}{pw}" or "1"))
    out = " ".join(bits)
    return out[2:] if out.startswith("+ ") else "-" + out[2:]


def main() -> None:
    rep = counts_and_nakaya(PrimeContext.make(41))
    print("ss_41^(7*)(Y) =", factorize(rep.ss7star).pretty("Y"), "(mod 41)")
    print(f"  L(41) = {rep.L}, L^(7*)(41) = {rep.L7star}, Nakaya predicts {rep.nakaya_predicted}")
    print()
    print("Psi_7(x) =", factorize(FpPoly.make(41, C.PSI7)).pretty("x"), "(mod 41)")
    print()
    for d, l in sorted(C.PD_FACTORIZATION_REF):
        r = verify_pd_factorization(d, l)
        print(f"P_{d}(x) = {r['factors'].pretty('x')} (mod {l})   [h(-{d}) = {r['class_number']}]")
    print()
    print("h(tau)           =", series_str(h_series(12), 11))
    print("(eta/eta_7)^4    =", series_str(eta_quotient4(12), 11))
    print("j_7^*(tau)       =", series_str(j7star_series(8), 7))


if __name__ == "__main__":
    main()
