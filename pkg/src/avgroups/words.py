"""Bracketed words: the term core of the free operated group on a set.

A word is a sequence of letters.  A letter is either a signed generator or a
signed iterated bracket ``[content]@n`` whose content is itself a word.  Words
are kept freely reduced (no adjacent mutually inverse letters) and brackets are
kept folded: a bracket whose content is a lone positive bracket is absorbed
into the iteration count, so ``[[c]]`` is stored as ``[c]@2``.  Letter equality
is structural equality of (content, iter, sign); ``[c]@3`` standing next to
``([c]@2)^-1`` does not cancel, because they are different letters of the
alphabet.

Grammar accepted by :func:`parse`::

    word   := factor*
    factor := base iter? power?
    base   := IDENT | "[" word "]" | "1"
    iter   := "@" POSINT          (only after "]")
    power  := "^" NZINT

``^k`` is a group power and expands to |k| copies (inverted when k < 0);
``@n`` is operator iteration.  The empty input and "1" denote the identity;
"[]" denotes "[1]".
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping, Union

__all__ = [
    "Gen",
    "Br",
    "Word",
    "Factor",
    "WordMetrics",
    "ONE",
    "make_gen",
    "make_br",
    "single",
    "are_inverse",
    "inv_factor",
    "is_reduced",
    "is_folded",
    "parse",
    "render",
    "reduce_concat",
    "invert",
    "bracket_literal",
    "metrics",
    "eval_operated",
    "WordSyntaxError",
    "UnassignedGenerator",
]

_IDENT_RE = re.compile(r"[a-z][a-zA-Z0-9_]*")


@dataclass(frozen=True)
class Gen:
    name: str
    sign: int


@dataclass(frozen=True)
class Br:
    content: "Word"
    iter: int
    sign: int


Factor = Union[Gen, Br]


@dataclass(frozen=True)
class Word:
    factors: tuple


ONE = Word(())


def make_gen(name: str, sign: int = 1) -> Gen:
    if not _IDENT_RE.fullmatch(name):
        raise ValueError(f"bad generator name {name!r}")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return Gen(name, sign)


def make_br(content: Word, it: int = 1, sign: int = 1) -> Br:
    """Bracket letter on `content`, folding lone positive brackets into iter."""
    if it < 1:
        raise ValueError("iteration must be >= 1")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    fs = content.factors
    while len(fs) == 1 and isinstance(fs[0], Br) and fs[0].sign > 0:
        it += fs[0].iter
        fs = fs[0].content.factors
    return Br(Word(fs), it, sign)


def single(f: Factor) -> Word:
    return Word((f,))


def inv_factor(f: Factor) -> Factor:
    if isinstance(f, Gen):
        return Gen(f.name, -f.sign)
    return Br(f.content, f.iter, -f.sign)


def are_inverse(a: Factor, b: Factor) -> bool:
    if type(a) is not type(b) or a.sign != -b.sign:
        return False
    if isinstance(a, Gen):
        return a.name == b.name
    return a.iter == b.iter and a.content == b.content


def is_reduced(w: Word) -> bool:
    fs = w.factors
    for i, f in enumerate(fs):
        if i > 0 and are_inverse(fs[i - 1], f):
            return False
        if isinstance(f, Br) and not is_reduced(f.content):
            return False
    return True


def is_folded(w: Word) -> bool:
    for f in w.factors:
        if isinstance(f, Br):
            c = f.content.factors
            if len(c) == 1 and isinstance(c[0], Br) and c[0].sign > 0:
                return False
            if not is_folded(f.content):
                return False
    return True


def _push_reduced(stack: list, f: Factor) -> None:
    if stack and are_inverse(stack[-1], f):
        stack.pop()
    else:
        stack.append(f)


def reduce_concat(u: Word, v: Word) -> Word:
    """Free-group product: concatenate and cancel at the seam, cascading."""
    out = list(u.factors)
    for f in v.factors:
        _push_reduced(out, f)
    return Word(tuple(out))


def invert(w: Word) -> Word:
    return Word(tuple(inv_factor(f) for f in reversed(w.factors)))


def bracket_literal(w: Word) -> Word:
    return single(make_br(w, 1, 1))


@dataclass(frozen=True)
class WordMetrics:
    breadth: int
    depth: int
    op_degree: int


def _factor_depth(f: Factor) -> int:
    if isinstance(f, Gen):
        return 0
    return f.iter + _word_depth(f.content)


def _word_depth(w: Word) -> int:
    return max((_factor_depth(f) for f in w.factors), default=0)


def _factor_degree(f: Factor) -> int:
    if isinstance(f, Gen):
        return 0
    return f.iter + op_degree(f.content)


def op_degree(w: Word) -> int:
    return sum(_factor_degree(f) for f in w.factors)


def metrics(w: Word) -> WordMetrics:
    return WordMetrics(len(w.factors), _word_depth(w), op_degree(w))


# --- parsing ---------------------------------------------------------------


class WordSyntaxError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.i = 0

    def error(self, message: str) -> WordSyntaxError:
        return WordSyntaxError(message, self.i)

    def skip_ws(self) -> None:
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1

    def peek(self) -> str:
        return self.text[self.i] if self.i < len(self.text) else ""

    def parse_word(self) -> Word:
        out: list = []
        while True:
            self.skip_ws()
            c = self.peek()
            if c == "" or c == "]":
                return Word(tuple(out))
            for f in self.parse_factor():
                _push_reduced(out, f)

    def parse_factor(self) -> list:
        c = self.peek()
        if c == "[":
            self.i += 1
            content = self.parse_word()
            if self.peek() != "]":
                raise self.error("expected ']'")
            self.i += 1
            it = self.parse_iter()
            k = self.parse_power()
            letter = make_br(content, it, 1)
            return self.expand_power(letter, k)
        if c == "1":
            self.i += 1
            if self.peek() == "@":
                raise self.error("'@' is only valid after ']'")
            self.parse_power()
            return []
        m = _IDENT_RE.match(self.text, self.i)
        if not m:
            raise self.error("expected a factor: identifier, '[', or '1'")
        self.i = m.end()
        if self.peek() == "@":
            raise self.error("'@' is only valid after ']'")
        k = self.parse_power()
        return self.expand_power(Gen(m.group(), 1), k)

    def parse_iter(self) -> int:
        if self.peek() != "@":
            return 1
        self.i += 1
        start = self.i
        while self.peek().isdigit():
            self.i += 1
        if self.i == start:
            raise self.error("expected a positive integer after '@'")
        n = int(self.text[start : self.i])
        if n < 1:
            raise WordSyntaxError("iteration must be >= 1", start)
        return n

    def parse_power(self) -> int:
        if self.peek() != "^":
            return 1
        self.i += 1
        start = self.i
        if self.peek() == "-":
            self.i += 1
        while self.peek().isdigit():
            self.i += 1
        if self.i == start or self.text[self.i - 1] == "-":
            raise self.error("expected a nonzero integer after '^'")
        k = int(self.text[start : self.i])
        if k == 0:
            raise WordSyntaxError("power 0 is not allowed", start)
        return k

    @staticmethod
    def expand_power(letter: Factor, k: int) -> list:
        if k < 0:
            return [inv_factor(letter)] * (-k)
        return [letter] * k


def parse(text: str) -> Word:
    p = _Parser(text)
    w = p.parse_word()
    if p.i != len(p.text):
        raise p.error("unexpected ']'")
    return w


# --- rendering -------------------------------------------------------------


def _render_factor(f: Factor) -> str:
    if isinstance(f, Gen):
        return f.name if f.sign > 0 else f.name + "^-1"
    s = "[" + render(f.content) + "]"
    if f.iter >= 2:
        s += f"@{f.iter}"
    if f.sign < 0:
        s += "^-1"
    return s


def render(w: Word) -> str:
    if not w.factors:
        return "1"
    return " ".join(_render_factor(f) for f in w.factors)


# --- evaluation into operated groups ---------------------------------------


class UnassignedGenerator(KeyError):
    pass


def eval_operated(w: Word, target, assignment: Mapping[str, object]):
    """Image of `w` under the operated-group map extending `assignment`.

    `target` provides identity(), mul(a, b), inv(a) and op(a).
    """

    def eval_factor(f: Factor):
        if isinstance(f, Gen):
            try:
                e = assignment[f.name]
            except KeyError:
                raise UnassignedGenerator(f.name) from None
            return target.inv(e) if f.sign < 0 else e
        e = eval_word(f.content)
        for _ in range(f.iter):
            e = target.op(e)
        return target.inv(e) if f.sign < 0 else e

    def eval_word(v: Word):
        acc = target.identity()
        for f in v.factors:
            acc = target.mul(acc, eval_factor(f))
        return acc

    return eval_word(w)
