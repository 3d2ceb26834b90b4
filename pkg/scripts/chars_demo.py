#!/usr/bin/env python3
"""Normalize string-language terms in both semantic domains and report how
often randomly generated terms collapse to the same canonical form."""

import random
import sys

from ebn.chars import (
    Append,
    Chr,
    Eps,
    eval_list,
    format_chars,
    is_canonical,
    norm_chars,
    print_chars,
)


def gen(rng: random.Random, fuel: int):
    if fuel <= 0 or rng.random() < 0.3:
        return rng.choice([Eps(), Chr(rng.choice("NBEabcxyz"))])
    return Append(gen(rng, fuel - 1), gen(rng, fuel - 1))


def main() -> None:
    flat = Append(Chr("N"), Append(Chr("B"), Chr("E")))
    padded = Append(
        Append(Chr("N"), Eps()),
        Append(Append(Chr("B"), Eps()), Append(Chr("E"), Eps())),
    )
    for label, t in (("flat", flat), ("padded", padded)):
        nt = norm_chars(t, "list")
        assert nt == norm_chars(t, "function")
        print(f"{label:7}: {format_chars(t)}")
        print(f"  norm : {format_chars(nt)}  (canonical: {is_canonical(nt)})")
        sys.stdout.write("  emits: ")
        print_chars(nt)
        sys.stdout.write("\n")

    rng = random.Random(0)
    agreements = sum(
        norm_chars(t, "list") == norm_chars(t, "function")
        for t in (gen(rng, 5) for _ in range(500))
    )
    print(f"domain agreement on 500 random terms: {agreements}/500")

    longest = max((gen(rng, 7) for _ in range(200)), key=lambda t: len(eval_list(t)))
    print(f"longest sampled string: {eval_list(longest)!r}")


if __name__ == "__main__":
    main()
