#!/usr/bin/env python3
"""Generate power functions, normalize them with smart and naive primitives,
and cross-check the results against the reference interpreter."""

from fractions import Fraction

from ebn.examples import power, power_dprime
from ebn.interp import format_value, run
from ebn.nbe import norm
from ebn.primitives import lit, naive_prim_env, rational_signature, smart_prim_env
from ebn.syntax import App, alpha_eq, pretty_term

PROBES = [Fraction(2), Fraction(3), Fraction(-1, 2), Fraction(0)]


def show(n: int) -> None:
    sig = rational_signature()
    smart = norm(power(n), sig, smart_prim_env())
    naive = norm(power(n), sig, naive_prim_env())
    via_maybe = norm(power_dprime(n), sig, smart_prim_env())

    print(f"== power {n}")
    print(f"  smart : {pretty_term(smart)}")
    print(f"  naive : {pretty_term(naive)}")
    print(f"  power'' agrees: {alpha_eq(via_maybe, smart)}")
    checks = ", ".join(
        f"f({p}) = {format_value(run(App(smart, lit(p))))}" for p in PROBES
    )
    print(f"  interp: {checks}")


def main() -> None:
    for n in (-6, -3, 0, 1, 5, 8):
        show(n)


if __name__ == "__main__":
    main()
