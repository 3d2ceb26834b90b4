"""Normalization for the free-monoid string language, with two
interchangeable semantic domains: character lists, and functions over the
syntax itself (difference lists, so concatenation is constant-time).

Canonical forms are right-nested combs ending in the empty string; the
printing back-end only accepts those.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Callable, TextIO

from .syntax import ParseError, TokenStream, tokenize


class CharsTerm:
    __slots__ = ()


@dataclass(frozen=True)
class Eps(CharsTerm):
    pass


@dataclass(frozen=True)
class Chr(CharsTerm):
    char: str

    def __post_init__(self):
        if len(self.char) != 1:
            raise ValueError(f"Chr takes exactly one character, got {self.char!r}")


@dataclass(frozen=True)
class Append(CharsTerm):
    left: CharsTerm
    right: CharsTerm


class NotCanonical(Exception):
    pass


# ---------------------------------------------------------------------------
# The two semantic domains


def eval_list(t: CharsTerm) -> str:
    """List-of-characters semantics (here: a host string)."""
    match t:
        case Eps():
            return ""
        case Chr(char=c):
            return c
        case Append(left=l, right=r):
            return eval_list(l) + eval_list(r)
    raise TypeError(f"not a chars term: {t!r}")


def reify_list(chars: str) -> CharsTerm:
    """Right-nested comb ending in the empty string."""
    out: CharsTerm = Eps()
    for c in reversed(chars):
        out = Append(Chr(c), out)
    return out


def eval_fun(t: CharsTerm) -> Callable[[CharsTerm], CharsTerm]:
    """Difference-list semantics: terms denote prepend functions."""
    match t:
        case Eps():
            return lambda rest: rest
        case Chr(char=c):
            return lambda rest: Append(Chr(c), rest)
        case Append(left=l, right=r):
            f, g = eval_fun(l), eval_fun(r)
            return lambda rest: f(g(rest))
    raise TypeError(f"not a chars term: {t!r}")


def reify_fun(f: Callable[[CharsTerm], CharsTerm]) -> CharsTerm:
    return f(Eps())


def norm_chars(t: CharsTerm, domain: str = "list") -> CharsTerm:
    if domain == "list":
        return reify_list(eval_list(t))
    if domain == "function":
        return reify_fun(eval_fun(t))
    raise ValueError(f"unknown semantic domain {domain!r}")


def is_canonical(t: CharsTerm) -> bool:
    while True:
        match t:
            case Eps():
                return True
            case Append(left=Chr(), right=rest):
                t = rest
            case _:
                return False


def print_chars(t: CharsTerm, out: TextIO | None = None) -> None:
    """Back-end: emit the string denoted by a canonical term."""
    if not is_canonical(t):
        raise NotCanonical(f"not in canonical form: {format_chars(t)}")
    out = sys.stdout if out is None else out
    while isinstance(t, Append):
        out.write(t.left.char)
        t = t.right


# ---------------------------------------------------------------------------
# S-expression round trip: eps | (chr "c") | (cat t t)


def format_chars(t: CharsTerm) -> str:
    match t:
        case Eps():
            return "eps"
        case Chr(char=c):
            return f'(chr "{c}")'
        case Append(left=l, right=r):
            return f"(cat {format_chars(l)} {format_chars(r)})"
    raise TypeError(f"not a chars term: {t!r}")


def _parse(ts: TokenStream) -> CharsTerm:
    tok = ts.next("a chars term")
    if tok.kind == "atom" and tok.text == "eps":
        return Eps()
    if tok.kind != "(":
        raise ParseError(f"expected a chars term, found {tok.text!r}", tok.line, tok.col)
    head = ts.expect("atom", "'chr' or 'cat'")
    if head.text == "chr":
        s = ts.next("a one-character string")
        if s.kind != "string" or len(s.text) != 1:
            raise ParseError("chr takes a one-character string", s.line, s.col)
        ts.expect(")", "')'")
        return Chr(s.text)
    if head.text == "cat":
        l = _parse(ts)
        r = _parse(ts)
        ts.expect(")", "')'")
        return Append(l, r)
    raise ParseError(f"unknown chars form {head.text!r}", head.line, head.col)


def parse_chars(text: str) -> CharsTerm:
    ts = TokenStream(tokenize(text))
    t = _parse(ts)
    ts.expect_end()
    return t
