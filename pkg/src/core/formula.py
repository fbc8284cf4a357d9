"""
Propositional formulas: the syntax tree, derived connectives, the ASCII
concrete syntax and the injective natural-number encoding.

Concrete syntax, loosest to tightest binding:

    <->   right-associative
    ->    right-associative
    |     left-associative
    &     left-associative
    ~     prefix

Atoms are `bot`, `top`, `p<index>` and parenthesized formulas.
"""
import re
from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from typing import Iterable, Iterator, List, Optional


class FormulaSyntaxError(ValueError):
    """Raised when text is not a formula. `offset` is a byte offset into the input."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class UnknownTokenError(FormulaSyntaxError):
    pass


@dataclass(frozen=True, order=True)
class Var:
    index: int

    def __post_init__(self):
        if self.index < 0:
            raise ValueError(f"variable index must be a natural number, got {self.index}")

    def __str__(self):
        return f"p{self.index}"


class Formula:
    """
    Base of the five formula constructors.

    The operators build formulas: `a & b`, `a | b`, `a >> b` (implication)
    and `~a` (negation, an abbreviation for `a >> bot`).
    """
    __slots__ = ()

    def __and__(self, other: "Formula") -> "Formula":
        return And(self, other)

    def __or__(self, other: "Formula") -> "Formula":
        return Or(self, other)

    def __rshift__(self, other: "Formula") -> "Formula":
        return Implies(self, other)

    def __invert__(self) -> "Formula":
        return neg(self)

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"<{render(self)}>"


@dataclass(frozen=True, repr=False)
class Variable(Formula):
    var: Var


@dataclass(frozen=True, repr=False)
class Bottom(Formula):
    pass


@dataclass(frozen=True, repr=False)
class And(Formula):
    lhs: Formula
    rhs: Formula


@dataclass(frozen=True, repr=False)
class Or(Formula):
    lhs: Formula
    rhs: Formula


@dataclass(frozen=True, repr=False)
class Implies(Formula):
    lhs: Formula
    rhs: Formula


BOT = Bottom()
BINARY = (And, Or, Implies)


def var(index: int) -> Variable:
    return Variable(Var(index))


def neg(phi: Formula) -> Formula:
    return Implies(phi, BOT)


def top() -> Formula:
    return neg(BOT)


TOP = top()


def iff(phi: Formula, psi: Formula) -> Formula:
    return And(Implies(phi, psi), Implies(psi, phi))


def big_and(formulas: Iterable[Formula]) -> Formula:
    """Right fold of `&` over the list, seeded with top (so the empty conjunction is top)."""
    result = TOP
    for phi in reversed(list(formulas)):
        result = And(phi, result)
    return result


def big_or(formulas: Iterable[Formula]) -> Formula:
    """Right fold of `|` over the list, seeded with bot."""
    result = BOT
    for phi in reversed(list(formulas)):
        result = Or(phi, result)
    return result


# === Structure ===

def subformulas(phi: Formula) -> frozenset:
    found = set()
    stack = [phi]
    while stack:
        current = stack.pop()
        if current in found:
            continue
        found.add(current)
        if isinstance(current, BINARY):
            stack.append(current.lhs)
            stack.append(current.rhs)
    return frozenset(found)


def variables(phi: Formula) -> frozenset:
    return frozenset(sub.var for sub in subformulas(phi) if isinstance(sub, Variable))


def depth(phi: Formula) -> int:
    """Connective depth: atoms have depth 0."""
    if isinstance(phi, BINARY):
        return 1 + max(depth(phi.lhs), depth(phi.rhs))
    return 0


def all_formulas(var_indices: Iterable[int], max_depth: int) -> List[Formula]:
    """
    Every formula over the given variables with connective depth <= max_depth.

    The order is deterministic: by depth, then by constructor (&, |, ->),
    then by the positions of the children in the previous level.
    """
    level = [var(i) for i in var_indices] + [BOT]
    newest = set(level)
    for _ in range(max_depth):
        previous = list(level)
        fresh = []
        for ctor in BINARY:
            for lhs in previous:
                for rhs in previous:
                    if lhs in newest or rhs in newest:
                        fresh.append(ctor(lhs, rhs))
        newest = set(fresh)
        level = previous + fresh
    return level


def random_formula(rng, var_indices, max_depth: int) -> Formula:
    """Draws a formula of depth <= max_depth from `rng` (a random.Random)."""
    var_indices = list(var_indices)
    if max_depth == 0 or rng.random() < 0.2:
        choice = rng.randrange(len(var_indices) + 1)
        return BOT if choice == len(var_indices) else var(var_indices[choice])
    ctor = rng.choice(BINARY)
    return ctor(random_formula(rng, var_indices, max_depth - 1),
                random_formula(rng, var_indices, max_depth - 1))


# === Concrete syntax ===

_TOKEN = re.compile(r"\s*(?:(?P<op><->|->|[~&|()])|(?P<word>[A-Za-z_][A-Za-z0-9_]*)|(?P<bad>\S))")
_VAR = re.compile(r"p([0-9]+)\Z")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while True:
        match = _TOKEN.match(text, pos)
        if match is None:
            break
        start = match.start(match.lastgroup)
        offset = len(text[:start].encode("utf-8"))
        value = match.group(match.lastgroup)
        if match.lastgroup == "bad":
            raise UnknownTokenError(f"unknown token {value!r}", offset)
        if match.lastgroup == "word" and value not in ("bot", "top") and not _VAR.match(value):
            raise UnknownTokenError(f"unknown token {value!r}", offset)
        tokens.append((value, offset))
        pos = match.end()
    tokens.append(("", len(text.encode("utf-8"))))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> str:
        return self.tokens[self.pos][0]

    def offset(self) -> int:
        return self.tokens[self.pos][1]

    def advance(self) -> str:
        value = self.tokens[self.pos][0]
        self.pos += 1
        return value

    def expect(self, value: str):
        if self.peek() != value:
            found = self.peek() or "end of input"
            raise FormulaSyntaxError(f"expected {value!r}, found {found!r}", self.offset())
        self.advance()

    def formula(self) -> Formula:
        return self.iff()

    def iff(self) -> Formula:
        lhs = self.imp()
        if self.peek() == "<->":
            self.advance()
            return iff(lhs, self.iff())
        return lhs

    def imp(self) -> Formula:
        lhs = self.disj()
        if self.peek() == "->":
            self.advance()
            return Implies(lhs, self.imp())
        return lhs

    def disj(self) -> Formula:
        result = self.conj()
        while self.peek() == "|":
            self.advance()
            result = Or(result, self.conj())
        return result

    def conj(self) -> Formula:
        result = self.neg()
        while self.peek() == "&":
            self.advance()
            result = And(result, self.neg())
        return result

    def neg(self) -> Formula:
        if self.peek() == "~":
            self.advance()
            return neg(self.neg())
        return self.atom()

    def atom(self) -> Formula:
        token = self.peek()
        if token == "bot":
            self.advance()
            return BOT
        if token == "top":
            self.advance()
            return TOP
        if token == "(":
            self.advance()
            inner = self.formula()
            self.expect(")")
            return inner
        match = _VAR.match(token)
        if match:
            self.advance()
            return var(int(match.group(1)))
        found = token or "end of input"
        raise FormulaSyntaxError(f"expected a formula, found {found!r}", self.offset())


def parse(text: str) -> Formula:
    parser = _Parser(text)
    result = parser.formula()
    if parser.peek() != "":
        raise FormulaSyntaxError(f"unexpected {parser.peek()!r}", parser.offset())
    return result


def parse_list(text: str) -> List[Formula]:
    """Parses a comma-separated formula list; blank text is the empty list."""
    if not text or not text.strip():
        return []
    return [parse(part) for part in text.split(",")]


_PRECEDENCE = {Implies: 1, Or: 2, And: 3}
_SYMBOL = {Implies: "->", Or: "|", And: "&"}


def render(phi: Formula) -> str:
    """Text with the fewest parentheses that still parses back to `phi`."""
    return _render(phi, 0)


def _render(phi: Formula, required: int) -> str:
    if isinstance(phi, Variable):
        return str(phi.var)
    if isinstance(phi, Bottom):
        return "bot"
    own = _PRECEDENCE[type(phi)]
    if isinstance(phi, Implies):
        lhs, rhs = _render(phi.lhs, own + 1), _render(phi.rhs, own)
    else:
        lhs, rhs = _render(phi.lhs, own), _render(phi.rhs, own + 1)
    text = f"{lhs} {_SYMBOL[type(phi)]} {rhs}"
    return f"({text})" if own < required else text


# === Encoding ===

def pairing(x: int, y: int) -> int:
    if x < 0 or y < 0:
        raise ValueError(f"pairing is defined on natural numbers, got ({x}, {y})")
    return (x + y) * (x + y + 1) + 2 * x


def unpair(n: int) -> Optional[tuple]:
    """Inverse of pairing, or None when n is not a pairing value."""
    if n < 0:
        return None
    d = (isqrt(4 * n + 1) - 1) // 2
    r = n - d * (d + 1)
    if r % 2:
        return None
    x = r // 2
    return x, d - x


_TAG = {And: 1, Or: 2, Implies: 3}
_CTOR = {tag: ctor for ctor, tag in _TAG.items()}


@lru_cache(maxsize=65536)
def encode(phi: Formula) -> int:
    if isinstance(phi, Variable):
        return pairing(0, phi.var.index + 1)
    if isinstance(phi, Bottom):
        return 0
    return pairing(pairing(encode(phi.lhs), _TAG[type(phi)]), encode(phi.rhs))


def decode(n: int) -> Optional[Formula]:
    if n == 0:
        return BOT
    outer = unpair(n)
    if outer is None:
        return None
    x, y = outer
    if x == 0:
        return var(y - 1)
    inner = unpair(x)
    if inner is None or inner[1] not in _CTOR:
        return None
    lhs, rhs = decode(inner[0]), decode(y)
    if lhs is None or rhs is None:
        return None
    return _CTOR[inner[1]](lhs, rhs)


def sorted_formulas(formulas: Iterable[Formula]) -> List[Formula]:
    """Duplicate-free list ordered by encoding."""
    return sorted(set(formulas), key=encode)


def iter_codes(limit: int) -> Iterator[tuple]:
    """(n, formula) for every n < limit in the image of encode."""
    for n in range(limit):
        phi = decode(n)
        if phi is not None:
            yield n, phi
