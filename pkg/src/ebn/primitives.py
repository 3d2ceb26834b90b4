"""The rational base-type table, primitive signatures, and the two semantic
environments: a smart one that folds and simplifies online, and a naive one
that residualizes every arithmetic application unchanged.

Rationals are exact `fractions.Fraction` values: always in lowest terms with
a positive denominator, so structural equality is value equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping

from .control import Residual, ret
from .nbe import AtType, NameSupply, reflect
from .semantics import (
    BaseValue,
    Exp,
    PrimEnv,
    SBase,
    SemValue,
    ShapeMismatch,
    SInl,
    SInr,
    SUnit,
    Val,
)
from .syntax import (
    Base,
    Case,
    Inl,
    Inr,
    Lam,
    Lit,
    ObjType,
    PrimApp,
    Sum,
    Term,
    Unit,
    UnitVal,
    free_vars,
    validate_type,
)

Rational = Fraction

RAT = Base("Q")
BOOL: ObjType = Sum(Unit(), Unit())

_ONE = Fraction(1)
_ZERO = Fraction(0)


class DivisionByZero(Exception):
    """A literal-by-literal division folded onto a zero divisor."""


def lit(value) -> Lit:
    """A rational literal term; accepts ints and Fractions."""
    return Lit(Fraction(value), "Q")


# ---------------------------------------------------------------------------
# Signatures


@dataclass(frozen=True)
class PrimType:
    args: tuple[ObjType, ...]
    result: ObjType


@dataclass(frozen=True)
class PrimSignature:
    """Registered base types (name -> carrier membership predicate) and
    primitive operations (name -> argument/result types)."""

    bases: Mapping[str, Callable[[object], bool]]
    prims: Mapping[str, PrimType]

    def __post_init__(self):
        for name, decl in self.prims.items():
            for ty in (*decl.args, decl.result):
                validate_type(ty, self)

    def arity(self, name: str) -> int:
        return len(self.prims[name].args)


def _is_rational(v: object) -> bool:
    return isinstance(v, Fraction)


def rational_signature() -> PrimSignature:
    """The shipped table: base Q with ==, *, and / (== yields the sum-encoded
    Bool)."""
    return PrimSignature(
        bases={"Q": _is_rational},
        prims={
            "==": PrimType((RAT, RAT), BOOL),
            "*": PrimType((RAT, RAT), RAT),
            "/": PrimType((RAT, RAT), RAT),
        },
    )


# ---------------------------------------------------------------------------
# Smart semantic environment


def _rat_payload(v: SemValue) -> BaseValue:
    if isinstance(v, SBase) and v.base == "Q":
        return v.payload
    raise ShapeMismatch(f"expected a Q value, found {type(v).__name__}")


def _code(p: BaseValue) -> Term:
    return p.code if isinstance(p, Exp) else lit(p.literal)


def _rat(p: BaseValue) -> Residual[SemValue]:
    return ret(SBase("Q", p))


def smart_mul(a: SemValue, b: SemValue) -> Residual[SemValue]:
    """Multiplication that folds literal pairs and drops unit factors."""
    pa, pb = _rat_payload(a), _rat_payload(b)
    match (pa, pb):
        case (Val(literal=v), Val(literal=w)):
            return _rat(Val(v * w))
        case (Val(literal=v), Exp(code=n)) if v == _ONE:
            return _rat(Exp(n))
        case (Val(literal=v), Exp(code=n)):
            return _rat(Exp(PrimApp("*", (lit(v), n))))
        case (Exp(code=m), Val(literal=w)) if w == _ONE:
            return _rat(Exp(m))
        case (Exp(code=m), Val(literal=w)):
            return _rat(Exp(PrimApp("*", (m, lit(w)))))
        case (Exp(code=m), Exp(code=n)):
            return _rat(Exp(PrimApp("*", (m, n))))
    raise ShapeMismatch("malformed base payloads")


def smart_div(a: SemValue, b: SemValue) -> Residual[SemValue]:
    """Division, mirroring smart_mul; folding onto a zero divisor is an
    error rather than a residual."""
    pa, pb = _rat_payload(a), _rat_payload(b)
    match (pa, pb):
        case (Val(literal=v), Val(literal=w)):
            if w == _ZERO:
                raise DivisionByZero(f"{v} / 0")
            return _rat(Val(v / w))
        case (Val(literal=v), Exp(code=n)):
            return _rat(Exp(PrimApp("/", (lit(v), n))))
        case (Exp(code=m), Val(literal=w)) if w == _ONE:
            return _rat(Exp(m))
        case (Exp(code=m), Val(literal=w)):
            return _rat(Exp(PrimApp("/", (m, lit(w)))))
        case (Exp(code=m), Exp(code=n)):
            return _rat(Exp(PrimApp("/", (m, n))))
    raise ShapeMismatch("malformed base payloads")


def smart_eq(a: SemValue, b: SemValue, names: NameSupply) -> Residual[SemValue]:
    """Equality test: two literals decide the Bool immediately; any residual
    argument reflects the comparison at Bool, which is where residual
    branching enters the output."""
    pa, pb = _rat_payload(a), _rat_payload(b)
    if isinstance(pa, Val) and isinstance(pb, Val):
        return ret(SInr(SUnit()) if pa.literal == pb.literal else SInl(SUnit()))
    return reflect(AtType(BOOL), PrimApp("==", (_code(pa), _code(pb))), names)


def smart_prim_env() -> PrimEnv:
    return {
        "==": lambda args, names: smart_eq(args[0], args[1], names),
        "*": lambda args, names: smart_mul(args[0], args[1]),
        "/": lambda args, names: smart_div(args[0], args[1]),
    }


# ---------------------------------------------------------------------------
# Naive semantic environment


def _naive_arith(op: str):
    def entry(args, names) -> Residual[SemValue]:
        pa, pb = _rat_payload(args[0]), _rat_payload(args[1])
        return _rat(Exp(PrimApp(op, (_code(pa), _code(pb)))))

    return entry


def _naive_eq(args, names: NameSupply) -> Residual[SemValue]:
    pa, pb = _rat_payload(args[0]), _rat_payload(args[1])
    return reflect(AtType(BOOL), PrimApp("==", (_code(pa), _code(pb))), names)


def naive_prim_env() -> PrimEnv:
    """No simplification: every arithmetic application residualizes as code;
    == still reflects at Bool since the branching is structural, not an
    optimization."""
    return {
        "==": _naive_eq,
        "*": _naive_arith("*"),
        "/": _naive_arith("/"),
    }


# ---------------------------------------------------------------------------
# Bool helpers (false = inl unit, true = inr unit)


def mk_false() -> Term:
    return Inl(UnitVal(), BOOL)


def mk_true() -> Term:
    return Inr(UnitVal(), BOOL)


def fresh_binder(stem: str, avoid: frozenset[str]) -> str:
    if stem not in avoid:
        return stem
    i = 0
    while f"{stem}{i}" in avoid:
        i += 1
    return f"{stem}{i}"


def mk_if(cond: Term, then_term: Term, else_term: Term) -> Term:
    """Conditionals as case on the Bool sum: the left (false) branch carries
    the else term, the right (true) branch the then term."""
    u = fresh_binder("u", free_vars(else_term))
    w = fresh_binder("w", free_vars(then_term))
    return Case(cond, Lam(u, Unit(), else_term), Lam(w, Unit(), then_term))
