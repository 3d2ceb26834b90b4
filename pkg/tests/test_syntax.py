import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ebn.examples import power
from ebn.primitives import BOOL, RAT, lit, rational_signature
from ebn.syntax import (
    AnnotationMissing,
    App,
    ArityMismatch,
    Arrow,
    Base,
    Case,
    Fst,
    Inl,
    Inr,
    Lam,
    Lit,
    Pair,
    ParseError,
    PrimApp,
    Prod,
    Snd,
    Sum,
    TypeMismatch,
    UnboundVariable,
    Unit,
    UnitVal,
    UnknownBaseType,
    UnknownPrimitive,
    Var,
    alpha_eq,
    beta_normal,
    free_vars,
    infer,
    parse_term,
    parse_type,
    print_term,
    print_type,
    subterms,
)

from conftest import TermGen, ACCEPT_TYPES

SIG = rational_signature()


# ---------------------------------------------------------------------------
# infer


def test_infer_identity():
    t = Lam("x", RAT, Var("x"))
    assert infer({}, SIG, t) == Arrow(RAT, RAT)


def test_infer_power_type():
    assert infer({}, SIG, power(-6)) == Arrow(RAT, RAT)


def test_infer_case_of_units():
    t = Case(
        Inl(UnitVal(), Sum(Unit(), Unit())),
        Lam("a", Unit(), UnitVal()),
        Lam("b", Unit(), UnitVal()),
    )
    assert infer({}, SIG, t) == Unit()


def test_infer_env_lookup():
    assert infer({"y": RAT}, SIG, Var("y")) == RAT
    with pytest.raises(UnboundVariable):
        infer({}, SIG, Var("y"))


def test_infer_prim_errors():
    with pytest.raises(UnknownPrimitive):
        infer({}, SIG, PrimApp("+", (lit(1), lit(2))))
    with pytest.raises(ArityMismatch):
        infer({}, SIG, PrimApp("*", (lit(1),)))
    with pytest.raises(UnknownBaseType):
        infer({}, SIG, Lit(Fraction(1), "R"))
    with pytest.raises(UnknownBaseType):
        infer({}, SIG, Lam("x", Base("R"), Var("x")))


def test_infer_literal_outside_carrier():
    with pytest.raises(TypeMismatch):
        infer({}, SIG, Lit(0.5, "Q"))


def test_infer_mismatch_reports_path():
    # the bad argument sits at fun(1) -> arg of the application
    t = App(Lam("x", RAT, Var("x")), UnitVal())
    with pytest.raises(TypeMismatch) as exc:
        infer({}, SIG, t)
    assert exc.value.path == (1,)


def test_infer_leftmost_innermost_failure():
    bad = PrimApp("*", (UnitVal(), PrimApp("+", (lit(1), lit(1)))))
    with pytest.raises(TypeMismatch) as exc:
        infer({}, SIG, bad)
    assert exc.value.path == (0,)


def test_infer_case_branch_shapes():
    scrut = Inl(lit(1), Sum(RAT, Unit()))
    with pytest.raises(TypeMismatch):
        infer({}, SIG, Case(scrut, lit(1), Lam("b", Unit(), lit(0))))
    with pytest.raises(TypeMismatch):
        infer(
            {},
            SIG,
            Case(scrut, Lam("a", RAT, Var("a")), Lam("b", Unit(), UnitVal())),
        )


def test_infer_annotation_must_be_sum():
    with pytest.raises(TypeMismatch):
        infer({}, SIG, Inl(lit(1), RAT))


# ---------------------------------------------------------------------------
# alpha_eq


def test_alpha_eq_examples():
    assert alpha_eq(Lam("x", RAT, Var("x")), Lam("y", RAT, Var("y")))
    assert not alpha_eq(Var("x"), Var("y"))
    assert not alpha_eq(
        Lam("x", RAT, Lam("y", RAT, Var("x"))),
        Lam("a", RAT, Lam("b", RAT, Var("b"))),
    )


def test_alpha_eq_annotations_matter():
    assert not alpha_eq(Lam("x", RAT, Var("x")), Lam("x", Unit(), Var("x")))
    assert not alpha_eq(Inl(UnitVal(), BOOL), Inl(UnitVal(), Sum(Unit(), RAT)))


def test_alpha_eq_bound_vs_free():
    # bound on one side, free on the other
    assert not alpha_eq(Lam("x", RAT, Var("x")), Lam("y", RAT, Var("x")))


_names = st.sampled_from(["a", "b", "c", "x", "y", "z"])
_rationals = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 9))
_types = st.recursive(
    st.sampled_from([RAT, Unit()]),
    lambda ts: st.one_of(
        st.builds(Arrow, ts, ts), st.builds(Prod, ts, ts), st.builds(Sum, ts, ts)
    ),
    max_leaves=4,
)
_raw_terms = st.recursive(
    st.one_of(
        st.builds(Var, _names),
        st.just(UnitVal()),
        st.builds(Lit, _rationals, st.just("Q")),
    ),
    lambda ts: st.one_of(
        st.builds(Lam, _names, _types, ts),
        st.builds(App, ts, ts),
        st.builds(Pair, ts, ts),
        st.builds(Fst, ts),
        st.builds(Snd, ts),
        st.builds(Inl, ts, _types),
        st.builds(Inr, ts, _types),
        st.builds(Case, ts, ts, ts),
        st.builds(
            lambda n, args: PrimApp(n, tuple(args)),
            st.sampled_from(["*", "/", "=="]),
            st.lists(ts, min_size=1, max_size=3),
        ),
    ),
    max_leaves=10,
)


def _rename_binders(t, suffix, counter=None):
    """An alpha-equivalent copy with all binders renamed apart."""
    counter = counter if counter is not None else [0]

    def go(t, ren):
        match t:
            case Var(name=x):
                return Var(ren.get(x, x))
            case Lam(binder=x, annot=a, body=n):
                counter[0] += 1
                fresh = f"{suffix}{counter[0]}"
                return Lam(fresh, a, go(n, {**ren, x: fresh}))
            case App(fun=f, arg=a):
                return App(go(f, ren), go(a, ren))
            case Pair(first=a, second=b):
                return Pair(go(a, ren), go(b, ren))
            case Fst(arg=a):
                return Fst(go(a, ren))
            case Snd(arg=a):
                return Snd(go(a, ren))
            case Inl(arg=a, annot=ty):
                return Inl(go(a, ren), ty)
            case Inr(arg=a, annot=ty):
                return Inr(go(a, ren), ty)
            case Case(scrutinee=s, left=l, right=r):
                return Case(go(s, ren), go(l, ren), go(r, ren))
            case PrimApp(name=n, args=args):
                return PrimApp(n, tuple(go(a, ren) for a in args))
            case _:
                return t

    return go(t, {})


@given(_raw_terms)
def test_alpha_eq_reflexive(t):
    assert alpha_eq(t, t)


@given(_raw_terms)
def test_alpha_eq_closed_under_renaming(t):
    v1 = _rename_binders(t, "r")
    v2 = _rename_binders(t, "s")
    assert alpha_eq(t, v1)
    assert alpha_eq(v1, t)  # symmetry
    assert alpha_eq(v1, v2)  # transitivity through t


@given(_raw_terms, _raw_terms)
def test_alpha_eq_symmetric(t1, t2):
    assert alpha_eq(t1, t2) == alpha_eq(t2, t1)


# ---------------------------------------------------------------------------
# beta_normal


def test_beta_normal_examples():
    assert not beta_normal(App(Lam("x", RAT, Var("x")), lit(1)))
    assert not beta_normal(Fst(Pair(UnitVal(), UnitVal())))
    assert not beta_normal(Snd(Pair(UnitVal(), UnitVal())))
    assert not beta_normal(Case(Inl(lit(1), Sum(RAT, RAT)), Var("f"), Var("g")))
    assert beta_normal(Lam("x", RAT, Var("x")))


@given(_raw_terms)
def test_beta_normal_closed_under_subterms(t):
    if beta_normal(t):
        assert all(beta_normal(s) for s in subterms(t))


# ---------------------------------------------------------------------------
# parsing and printing


def test_parse_examples():
    assert parse_term("(lam (x Q) (var x))") == Lam("x", Base("Q"), Var("x"))
    assert parse_term("(inl unit (sum unit unit))") == Inl(UnitVal(), Sum(Unit(), Unit()))
    assert parse_term("(prim * (lit 2 Q) (lit 3 Q))") == PrimApp("*", (lit(2), lit(3)))


def test_parse_rationals():
    assert parse_term("(lit -1/2 Q)") == Lit(Fraction(-1, 2), "Q")
    assert parse_term("(lit 7 Q)") == lit(7)
    assert parse_term("(lit 2/4 Q)") == Lit(Fraction(1, 2), "Q")  # normalized
    with pytest.raises(ParseError):
        parse_term("(lit 1/0 Q)")
    with pytest.raises(ParseError):
        parse_term("(lit 1.5 Q)")


def test_parse_whitespace_and_comments():
    text = """
    (case (var s) ; scrutinee
          (lam (a unit) unit)
          (lam (b unit) unit))
    """
    t = parse_term(text)
    assert isinstance(t, Case)


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as exc:
        parse_term("(app (var x)")
    assert exc.value.line == 1 and exc.value.col > 0
    with pytest.raises(ParseError) as exc:
        parse_term("(lam (x Q) (var x)) trailing")
    assert exc.value.col == 21


def test_parse_annotation_missing():
    with pytest.raises(AnnotationMissing):
        parse_term("(lam (x) (var x))")
    with pytest.raises(AnnotationMissing):
        parse_term("(inl unit)")
    with pytest.raises(AnnotationMissing):
        parse_term("(inr unit)")


def test_parse_type_examples():
    assert parse_type("Q") == Base("Q")
    assert parse_type("(arrow Q (prod unit Q))") == Arrow(RAT, Prod(Unit(), RAT))
    with pytest.raises(ParseError):
        parse_type("(arrow Q)")


def test_print_examples():
    assert print_term(Lam("x0", RAT, Var("x0"))) == "(lam (x0 Q) (var x0))"
    assert print_term(UnitVal()) == "unit"
    assert (
        print_term(
            Case(Var("s"), Lam("a", Unit(), UnitVal()), Lam("b", Unit(), UnitVal()))
        )
        == "(case (var s) (lam (a unit) unit) (lam (b unit) unit))"
    )
    assert print_type(Sum(RAT, Unit())) == "(sum Q unit)"


@given(_raw_terms)
def test_print_parse_round_trip(t):
    back = parse_term(print_term(t))
    assert back == t
    assert alpha_eq(back, t)


def test_round_trip_preserves_types():
    rng = random.Random(1380)
    gen = TermGen(rng)
    for ty in ACCEPT_TYPES:
        for _ in range(10):
            t = gen.gen(ty, {}, rng.randint(1, 4))
            back = parse_term(print_term(t))
            assert infer({}, SIG, back) == infer({}, SIG, t) == ty


def test_free_vars():
    t = Lam("x", RAT, PrimApp("*", (Var("x"), Var("y"))))
    assert free_vars(t) == {"y"}
