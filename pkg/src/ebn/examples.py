"""Staged program generators: the power function in three styles, plus the
Maybe-of-rationals encoding used to abstract its corner case.

These are meta-functions: given a host integer they build object code.  All
the host-level conditionals run at generation time; only the residual test
against zero survives into the generated term.
"""

from __future__ import annotations

from .primitives import RAT, fresh_binder, lit, mk_if
from .syntax import (
    App,
    Case,
    Inl,
    Inr,
    Lam,
    PrimApp,
    Sum,
    Term,
    Unit,
    UnitVal,
    Var,
    free_vars,
)

MAYBE_RAT = Sum(RAT, Unit())


def mk_just(t: Term) -> Term:
    return Inl(t, MAYBE_RAT)


def mk_nothing() -> Term:
    return Inr(UnitVal(), MAYBE_RAT)


def mk_maybe(on_just: Term, on_nothing: Term, scrutinee: Term) -> Term:
    """Eliminator: `on_just` is a function over the payload, `on_nothing` a
    plain result term."""
    x = fresh_binder("mx", free_vars(on_just))
    y = fresh_binder("my", free_vars(on_nothing))
    return Case(
        scrutinee,
        Lam(x, RAT, App(on_just, Var(x))),
        Lam(y, Unit(), on_nothing),
    )


def mk_fmap(f: Term, m: Term) -> Term:
    """Functorial map over the Maybe encoding."""
    x = fresh_binder("fx", free_vars(f))
    return mk_maybe(Lam(x, RAT, mk_just(App(f, Var(x)))), mk_nothing(), m)


def power(n: int) -> Term:
    """x^n as generated code of type Q -> Q; negative exponents guard the
    zero input and produce -1 divided by the positive power."""
    x = Var("x")
    if n < 0:
        body = mk_if(
            PrimApp("==", (x, lit(0))),
            lit(0),
            PrimApp("/", (lit(-1), App(power(-n), x))),
        )
    elif n == 0:
        body = lit(1)
    elif n % 2 == 0:
        # Host-level sharing of the half power: squaring goes through an
        # object-level redex, which normalization inlines (and duplicates).
        square = Lam("y", RAT, PrimApp("*", (Var("y"), Var("y"))))
        body = App(square, App(power(n // 2), x))
    else:
        body = PrimApp("*", (x, App(power(n - 1), x)))
    return Lam("x", RAT, body)


def power_prime(n: int) -> Term:
    """Variant of type Q -> Maybe Q: the division-by-zero corner case
    returns nothing instead of a sentinel."""
    x = Var("x")
    if n < 0:
        recip = Lam("y", RAT, PrimApp("/", (lit(-1), Var("y"))))
        body = mk_if(
            PrimApp("==", (x, lit(0))),
            mk_nothing(),
            mk_fmap(recip, App(power_prime(-n), x)),
        )
    elif n == 0:
        body = mk_just(lit(1))
    elif n % 2 == 0:
        square = Lam("y", RAT, PrimApp("*", (Var("y"), Var("y"))))
        body = mk_fmap(square, App(power_prime(n // 2), x))
    else:
        scale = Lam("y", RAT, PrimApp("*", (x, Var("y"))))
        body = mk_fmap(scale, App(power_prime(n - 1), x))
    return Lam("x", RAT, body)


def power_dprime(n: int) -> Term:
    """Q -> Q again: runs power_prime and replaces nothing by 0.
    Normalization erases the whole Maybe layer."""
    ident = Lam("z", RAT, Var("z"))
    return Lam(
        "x", RAT, mk_maybe(ident, lit(0), App(power_prime(n), Var("x")))
    )
