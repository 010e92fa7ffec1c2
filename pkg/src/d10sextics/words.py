"""Freely reduced words over an indexed generator alphabet.

A letter is a nonzero int: +k stands for generator k-1, -k for its inverse
(1-based magnitude, so letters compose with plain negation).  Words are
immutable and always freely reduced; the empty word is the identity.
"""
from __future__ import annotations

import re
from dataclasses import dataclass


def free_reduce(letters) -> tuple[int, ...]:
    """Cancel adjacent inverse pairs until none remain."""
    out: list[int] = []
    for x in letters:
        if x == 0:
            raise ValueError("letter 0 is not a generator")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


@dataclass(frozen=True, slots=True)
class Word:
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        reduced = free_reduce(self.letters)
        if reduced != tuple(self.letters):
            object.__setattr__(self, "letters", reduced)
        else:
            object.__setattr__(self, "letters", tuple(self.letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple(-x for x in reversed(self.letters)))

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return self.inverse() ** (-n)
        w = identity()
        for _ in range(n):
            w = w * self
        return w

    def conjugated_by(self, t: "Word") -> "Word":
        """t * self * t^-1."""
        return t * self * t.inverse()

    def cyclically_reduced(self) -> "Word":
        ls = list(self.letters)
        while len(ls) >= 2 and ls[0] == -ls[-1]:
            ls = ls[1:-1]
        return Word(tuple(ls))

    def max_index(self) -> int:
        """Largest 0-based generator index used; -1 for the identity."""
        return max((abs(x) for x in self.letters), default=0) - 1

    def exponent_sums(self, ngens: int) -> list[int]:
        sums = [0] * ngens
        for x in self.letters:
            sums[abs(x) - 1] += 1 if x > 0 else -1
        return sums

    def pairs(self):
        """Letters as (0-based generator index, sign) pairs."""
        return [(abs(x) - 1, 1 if x > 0 else -1) for x in self.letters]


def identity() -> Word:
    return Word(())


def gen(i: int) -> Word:
    """The single-letter word for 0-based generator index i."""
    return Word((i + 1,))


def multiply(w1: Word, w2: Word) -> Word:
    return w1 * w2


def invert(w: Word) -> Word:
    return w.inverse()


def commutator(x: Word, y: Word) -> Word:
    """[x, y] = x y x^-1 y^-1."""
    return x * y * x.inverse() * y.inverse()


_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>-?\d+)"
                    r"|(?P<punct>[()\[\],^]))")


def _tokenize(text: str):
    pos, tokens = 0, []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ValueError(f"cannot tokenize {text[pos:]!r}")
            break
        pos = m.end()
        if m.group("name"):
            tokens.append(("name", m.group("name")))
        elif m.group("int"):
            tokens.append(("int", int(m.group("int"))))
        else:
            tokens.append(("punct", m.group("punct")))
    return tokens


class _Parser:
    """Recursive-descent parser for juxtaposed words.

    Grammar: expr := factor* ; factor := atom ('^' int)? ;
    atom := name | '1' | '(' expr ')' | '[' expr ',' expr ']'.
    '[x,y]' expands to the commutator x y x^-1 y^-1.
    """

    def __init__(self, tokens, names):
        self.tokens = tokens
        self.i = 0
        self.index = {n: k for k, n in enumerate(names)}

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expr(self, stop=()) -> Word:
        w = identity()
        while True:
            kind, val = self.peek()
            if kind is None or (kind == "punct" and val in stop):
                return w
            w = w * self.factor()

    def factor(self) -> Word:
        w = self.atom()
        kind, val = self.peek()
        if kind == "punct" and val == "^":
            self.take()
            kind, n = self.take()
            if kind != "int":
                raise ValueError("malformed exponent: expected an integer after '^'")
            w = w ** n
        return w

    def atom(self) -> Word:
        kind, val = self.take()
        if kind == "name":
            if val not in self.index:
                raise ValueError(f"unknown generator {val!r}")
            return gen(self.index[val])
        if kind == "int" and val == 1:
            return identity()
        if kind == "punct" and val == "(":
            w = self.expr(stop=(")",))
            self.expect(")")
            return w
        if kind == "punct" and val == "[":
            x = self.expr(stop=(",",))
            self.expect(",")
            y = self.expr(stop=("]",))
            self.expect("]")
            return commutator(x, y)
        raise ValueError(f"unexpected token {val!r}")

    def expect(self, punct):
        kind, val = self.take()
        if kind != "punct" or val != punct:
            raise ValueError(f"expected {punct!r}, got {val!r}")


def parse_word(text: str, names) -> Word:
    """Parse a word like "a b^-1 (a b)^2 [b, d]" over the given generator names."""
    parser = _Parser(_tokenize(text), tuple(names))
    w = parser.expr()
    if parser.i != len(parser.tokens):
        raise ValueError(f"trailing input at token {parser.i}")
    return w


def format_word(w: Word, names) -> str:
    """Canonical printed form; parse_word(format_word(w)) == w."""
    if not w:
        return "1"
    parts = []
    run_letter, run_len = None, 0
    for x in list(w.letters) + [None]:
        if x == run_letter:
            run_len += 1
            continue
        if run_letter is not None:
            name = names[abs(run_letter) - 1]
            e = run_len if run_letter > 0 else -run_len
            parts.append(name if e == 1 else f"{name}^{e}")
        run_letter, run_len = x, 1
    return " ".join(parts)
