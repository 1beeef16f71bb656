"""Closed combinatory terms over S and K, with fuel-bounded normalization.

A term is either an atom (a string) or an application, represented as a
2-tuple ``(function, argument)``.  The atoms ``S`` and ``K`` carry the usual
weak reduction rules, ``I`` is a readability alias for ``S K K`` with the
rule ``I x -> x``, and any other identifier is an inert constant (handy for
writing ``K a b`` at the command line).

Reduction is deterministic leftmost-outermost, one unit of fuel per
contracted redex.  Running out of fuel raises :class:`Exhausted`; an
undefined application is never reported as such, because definedness is
only semi-decidable.
"""

from __future__ import annotations

import re
from typing import Union

S = "S"
K = "K"
I = "I"  # noqa: E741

Term = Union[str, tuple]

REDUCING_ATOMS = frozenset({S, K, I})


class Exhausted(Exception):
    """Raised when a computation does not finish within its fuel budget."""

    def __init__(self, spent: int, what: str = "normalization"):
        super().__init__(f"{what} exhausted after {spent} steps")
        self.spent = spent


class TermSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


def app(*terms: Term) -> Term:
    """Left-associated application ``app(a, b, c) == ((a, b), c)``."""
    if not terms:
        raise ValueError("app() needs at least one term")
    result = terms[0]
    for t in terms[1:]:
        result = (result, t)
    return result


def is_app(t: Term) -> bool:
    return isinstance(t, tuple)


def unwind(t: Term) -> tuple[Term, list]:
    """Split ``h a1 ... an`` into the head ``h`` and the argument list."""
    args = []
    while isinstance(t, tuple):
        args.append(t[1])
        t = t[0]
    args.reverse()
    return t, args


def size(t: Term) -> int:
    """Number of atom occurrences (leaves)."""
    n = 0
    stack = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, tuple):
            stack.append(u[0])
            stack.append(u[1])
        else:
            n += 1
    return n


def atoms(t: Term) -> set:
    found = set()
    stack = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, tuple):
            stack.extend(u)
        else:
            found.add(u)
    return found


def expand_i(t: Term) -> Term:
    """Replace every ``I`` by ``S K K``."""
    if t == I:
        return ((S, K), K)
    if isinstance(t, tuple):
        return (expand_i(t[0]), expand_i(t[1]))
    return t


def is_normal(t: Term) -> bool:
    """True when ``t`` contains no ``K a b``, ``S a b c`` or ``I a`` redex."""
    stack = [t]
    while stack:
        head, args = unwind(stack.pop())
        if head == K and len(args) >= 2:
            return False
        if head == S and len(args) >= 3:
            return False
        if head == I and len(args) >= 1:
            return False
        stack.extend(args)
    return True


def evaluate(t: Term, fuel: int) -> Term:
    """Normal form of ``t`` by leftmost-outermost reduction within ``fuel`` steps.

    Raises :class:`Exhausted` (carrying the number of contractions performed)
    if no normal form is reached.
    """
    return normalize(t, fuel)[0]


def _push_spine(t: Term, spine: list) -> Term:
    """Push the arguments of ``t`` onto ``spine`` (first argument on top)."""
    while isinstance(t, tuple):
        spine.append(t[1])
        t = t[0]
    return t


def normalize(t: Term, fuel: int) -> tuple[Term, int]:
    """Return ``(normal form, steps used)``; see :func:`evaluate`.

    Subterms shared by the ``S`` rule are normalized once and the steps they
    took are charged again at every further occurrence, so the count is the
    one of plain tree reduction while the work is not repeated.
    """
    if fuel < 0:
        raise ValueError("fuel must be non-negative")
    steps = 0
    # id(term) -> (term, normal form, steps it took); holding the term keeps ids unique
    memo: dict = {}
    # frames: [origin, steps at start, head, normalized args, pending args with the next one on top]
    frames: list = []
    current = t
    while True:
        hit = memo.get(id(current))
        if hit is not None and hit[0] is current:
            if steps + hit[2] > fuel:
                raise Exhausted(fuel)
            steps += hit[2]
            result = hit[1]
        else:
            origin, start = current, steps
            spine: list = []
            head = _push_spine(current, spine)
            while True:
                n = len(spine)
                if head == K and n >= 2:
                    x = spine.pop()
                    spine.pop()
                elif head == S and n >= 3:
                    x = spine.pop()
                    y = spine.pop()
                    z = spine.pop()
                    spine.append((y, z))
                    spine.append(z)
                elif head == I and n >= 1:
                    x = spine.pop()
                else:
                    break
                if steps >= fuel:
                    raise Exhausted(steps)
                steps += 1
                head = _push_spine(x, spine)
            if spine:
                current = spine.pop()
                frames.append([origin, start, head, [], spine])
                continue
            result = head
        while frames:
            frame = frames[-1]
            frame[3].append(result)
            if frame[4]:
                current = frame[4].pop()
                break
            frames.pop()
            result = app(frame[2], *frame[3])
            memo[id(frame[0])] = (frame[0], result, steps - frame[1])
            memo[id(result)] = (result, result, 0)
        else:
            return result, steps


# ---------------------------------------------------------------------------
# Concrete syntax

_TOKEN = re.compile(r"\s*(?:(\()|(\))|(\[)|(\])|(:)|([A-Za-z_][A-Za-z0-9_]*))")


def tokenize(text: str):
    """Yield ``(kind, value, line, column)`` tokens; columns are 1-based."""
    pos = 0
    line_starts = [0] + [i + 1 for i, ch in enumerate(text) if ch == "\n"]

    def where(offset):
        line = max(k for k, start in enumerate(line_starts) if start <= offset)
        return line + 1, offset - line_starts[line] + 1

    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            offset = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            line, col = where(offset)
            raise TermSyntaxError(f"unexpected character {text[offset]!r}", line, col)
        start = m.start(m.lastindex)
        line, col = where(start)
        kind = ["(", ")", "[", "]", ":", "name"][m.lastindex - 1]
        yield kind, m.group(m.lastindex), line, col
        pos = m.end()


class _Parser:
    def __init__(self, text: str, atom):
        self.tokens = list(tokenize(text))
        self.pos = 0
        self.atom = atom
        self.text = text

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def end_position(self):
        lines = self.text.split("\n")
        return len(lines), len(lines[-1]) + 1

    def expect(self, kind):
        tok = self.peek()
        if tok is None:
            raise TermSyntaxError(f"expected {kind!r} but input ended", *self.end_position())
        if tok[0] != kind:
            raise TermSyntaxError(f"expected {kind!r}, found {tok[1]!r}", tok[2], tok[3])
        self.pos += 1
        return tok

    def parse_all(self):
        result = self.parse_sequence()
        tok = self.peek()
        if tok is not None:
            raise TermSyntaxError(f"unexpected {tok[1]!r}", tok[2], tok[3])
        return result

    def parse_sequence(self):
        items = []
        while True:
            tok = self.peek()
            if tok is None or tok[0] in (")", "]"):
                break
            items.append(self.parse_primary())
        if not items:
            if tok is None:
                raise TermSyntaxError("empty term", *self.end_position())
            raise TermSyntaxError("empty term", tok[2], tok[3])
        result = items[0]
        for item in items[1:]:
            result = self.combine(result, item)
        return result

    def combine(self, f, x):
        return (f, x)

    def parse_primary(self):
        tok = self.peek()
        if tok[0] == "(":
            self.pos += 1
            inner = self.parse_sequence()
            self.expect(")")
            return inner
        if tok[0] == "name":
            self.pos += 1
            return self.atom(tok)
        raise TermSyntaxError(f"unexpected {tok[1]!r}", tok[2], tok[3])


def parse_term(text: str) -> Term:
    """Parse concrete syntax: atoms, juxtaposition (left-associative), parentheses."""

    def atom(tok):
        return tok[1]

    return _Parser(text, atom).parse_all()


def format_term(t: Term) -> str:
    """Canonical printing; ``parse_term(format_term(t)) == t``."""
    head, args = unwind(t)
    parts = [head]
    for a in args:
        s = format_term(a)
        parts.append(f"({s})" if isinstance(a, tuple) else s)
    return " ".join(parts)
