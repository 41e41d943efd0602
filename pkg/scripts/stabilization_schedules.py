"""Print the truncation schedules behind the stabilized quotient Homs.

Shows how fast each colimit settles, and how the value for the
zero-differential tail depends on the resolution margin.
"""

import argparse

from verdier.algebra import builtin, regular_module, simple_module
from verdier.generators import fixture_P, fixture_zero_tail
from verdier.quotients import hom_dminus_infty, hom_dplus_infty, hom_sg


def show(label, res):
    print(f"{label:34s} {res.describe():34s} schedule {res.schedule}")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--p", type=int, default=101)
    ap.add_argument("--s", type=int, default=3, help="stabilization window")
    ap.add_argument("--margins", type=int, nargs="+", default=[2, 4, 6])
    args = ap.parse_args(argv)

    A = builtin("dual_numbers", p=args.p)
    K, R = simple_module(A, 0), regular_module(A)
    print("singularity category, dual numbers")
    for k in (-2, 0, 3):
        show(f"  Hom(K, K[{k}])", hom_sg(K, K, k, s=args.s))
    show("  Hom(A, K)", hom_sg(R, K, 0, s=args.s))

    P, Z = fixture_P(A), fixture_zero_tail(A, "left")
    Zp = fixture_zero_tail(A, "right")
    print("right bounded modulo bounded homology")
    show("  End(P)", hom_dminus_infty(P, P, s=args.s))
    for step in (1, 2, 3):
        show(f"  End(Z), step {step}", hom_dminus_infty(Z, Z, step=step, s=args.s))
    for m in args.margins:
        show(f"  End(Z), margin {m}", hom_dminus_infty(Z, Z, s=args.s, margin=m))
    print("left bounded modulo bounded homology")
    show("  End(Z+)", hom_dplus_infty(Zp, Zp, s=args.s))


if __name__ == "__main__":
    main()
