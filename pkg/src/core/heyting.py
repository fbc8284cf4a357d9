"""
Finite Heyting algebras given by dense operation tables, their filter
theory, and the algebraic semantics of formulas.

Elements are the integers 0..size-1; `labels` only affect printing and JSON.
"""
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from . import config
from .formula import And, Bottom, Formula, Or, Variable, variables
from .verdict import Verdict, fails, holds


class AlgebraFormatError(ValueError):
    def __init__(self, message: str, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class NotHeyting(ValueError):
    """No greatest a with meet(a, b) <= c exists."""

    def __init__(self, b, c):
        super().__init__(f"the lattice has no relative pseudocomplement of {b} with respect to {c}")
        self.b = b
        self.c = c


class FilterPropertyError(AssertionError):
    pass


class NoWitness(AssertionError):
    pass


class PreconditionError(ValueError):
    pass


class UnassignedVariable(LookupError):
    def __init__(self, var):
        super().__init__(f"p{var} has no value in this interpretation")
        self.var = var


# === Violations ===

@dataclass(frozen=True)
class OrderViolation:
    kind: str
    elements: Tuple[str, ...]

    def __str__(self):
        return f"{self.kind}({', '.join(self.elements)})"


@dataclass(frozen=True)
class BoundViolation:
    name: str
    element: str

    def __str__(self):
        return f"Bound({self.name}, {self.element})"


@dataclass(frozen=True)
class TableViolation:
    """meet or join table entry that is not the glb/lub."""
    op: str
    a: str
    b: str

    def __str__(self):
        return f"{self.op.capitalize()}({self.a}, {self.b})"


@dataclass(frozen=True)
class Residuation:
    a: str
    b: str
    c: str

    def __str__(self):
        return f"Residuation({self.a}, {self.b}, {self.c})"


# === Algebras ===

Table = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class FiniteHeytingAlgebra:
    size: int
    le: Tuple[Tuple[bool, ...], ...]
    meet: Table
    join: Table
    himp: Table
    bot: int
    top: int
    labels: Tuple[str, ...] = ()
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if not 1 <= self.size <= config.MAX_ALGEBRA_SIZE:
            raise AlgebraFormatError(f"algebra size must be between 1 and {config.MAX_ALGEBRA_SIZE}, got {self.size}")
        for table_name in ("le", "meet", "join", "himp"):
            table = getattr(self, table_name)
            if len(table) != self.size or any(len(row) != self.size for row in table):
                raise AlgebraFormatError(f"{table_name} must be a {self.size}x{self.size} table")
            if table_name != "le" and any(not 0 <= x < self.size for row in table for x in row):
                raise AlgebraFormatError(f"{table_name} mentions an element outside 0..{self.size - 1}")
        for bound in (self.bot, self.top):
            if not 0 <= bound < self.size:
                raise AlgebraFormatError(f"bound {bound} is not an element")
        if self.labels and len(self.labels) != self.size:
            raise AlgebraFormatError("labels must name every element")
        if self.labels and len(set(self.labels)) != self.size:
            raise AlgebraFormatError("labels must be distinct")

    @property
    def elements(self) -> range:
        return range(self.size)

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels else str(a)

    def element(self, label: str) -> int:
        """Inverse of label(); bare integers are accepted too."""
        if self.labels and label in self.labels:
            return self.labels.index(label)
        if label.isdigit() and int(label) < self.size:
            return int(label)
        raise KeyError(f"{label!r} is not an element of {self.name or 'the algebra'}")

    def compl(self, a: int) -> int:
        return self.himp[a][self.bot]

    def up(self, a: int) -> frozenset:
        return frozenset(b for b in self.elements if self.le[a][b])

    def show(self, subset: Iterable[int]) -> List[str]:
        return [self.label(a) for a in sorted(subset)]

    def __str__(self):
        return self.name or f"<algebra of {self.size} elements>"


def _order_violations(size, le) -> list:
    found = []
    for a in range(size):
        if not le[a][a]:
            found.append(OrderViolation("Reflexivity", (str(a),)))
    for a in range(size):
        for b in range(a + 1, size):
            if le[a][b] and le[b][a]:
                found.append(OrderViolation("Antisymmetry", (str(a), str(b))))
    for a in range(size):
        for b in range(size):
            if le[a][b]:
                for c in range(size):
                    if le[b][c] and not le[a][c]:
                        found.append(OrderViolation("Transitivity", (str(a), str(b), str(c))))
    return found


def validate_algebra(h: FiniteHeytingAlgebra) -> list:
    """All violated Heyting algebra laws, each with its witnesses. Empty means valid."""
    lab = h.label
    found = _order_violations(h.size, h.le)
    if found:
        return found
    for a in h.elements:
        if not h.le[h.bot][a]:
            found.append(BoundViolation("bot", lab(a)))
        if not h.le[a][h.top]:
            found.append(BoundViolation("top", lab(a)))
    for a in h.elements:
        for b in h.elements:
            if _glb(h.size, h.le, a, b) != h.meet[a][b]:
                found.append(TableViolation("meet", lab(a), lab(b)))
            if _lub(h.size, h.le, a, b) != h.join[a][b]:
                found.append(TableViolation("join", lab(a), lab(b)))
    for a in h.elements:
        for b in h.elements:
            for c in h.elements:
                if h.le[a][h.himp[b][c]] != h.le[h.meet[a][b]][c]:
                    found.append(Residuation(lab(a), lab(b), lab(c)))
    return found


def _greatest(size, le, candidates) -> Optional[int]:
    for g in candidates:
        if all(le[x][g] for x in candidates):
            return g
    return None


def _glb(size, le, a, b) -> Optional[int]:
    return _greatest(size, le, [x for x in range(size) if le[x][a] and le[x][b]])


def _lub(size, le, a, b) -> Optional[int]:
    uppers = [x for x in range(size) if le[a][x] and le[b][x]]
    for g in uppers:
        if all(le[g][x] for x in uppers):
            return g
    return None


def himp_from_order(size: int, le, meet) -> Table:
    """himp(b, c) = the greatest a with meet(a, b) <= c; NotHeyting when it does not exist."""
    rows = []
    for b in range(size):
        row = []
        for c in range(size):
            g = _greatest(size, le, [a for a in range(size) if le[meet[a][b]][c]])
            if g is None:
                raise NotHeyting(b, c)
            row.append(g)
        rows.append(tuple(row))
    return tuple(rows)


def from_order(le: Sequence[Sequence[bool]], labels: Sequence[str] = (), name: str = "",
               bot: Optional[int] = None, top: Optional[int] = None) -> FiniteHeytingAlgebra:
    """
    The Heyting algebra on a finite order, with every operation derived from
    `le`. Raises AlgebraFormatError when `le` is not a bounded lattice order
    and NotHeyting when it is a lattice without relative pseudocomplements.
    """
    size = len(le)
    le = tuple(tuple(bool(x) for x in row) for row in le)
    if size == 0 or any(len(row) != size for row in le):
        raise AlgebraFormatError("le must be a non-empty square table")
    violations = _order_violations(size, le)
    if violations:
        raise AlgebraFormatError("le is not a partial order", violations)

    meet, join = [], []
    for a in range(size):
        meet_row, join_row = [], []
        for b in range(size):
            m, j = _glb(size, le, a, b), _lub(size, le, a, b)
            if m is None or j is None:
                raise AlgebraFormatError(f"elements {a} and {b} have no {'meet' if m is None else 'join'}")
            meet_row.append(m)
            join_row.append(j)
        meet.append(tuple(meet_row))
        join.append(tuple(join_row))
    meet, join = tuple(meet), tuple(join)

    least = next(a for a in range(size) if all(le[a][x] for x in range(size)))
    greatest = next(a for a in range(size) if all(le[x][a] for x in range(size)))
    bot = least if bot is None else bot
    top = greatest if top is None else top
    if bot != least or top != greatest:
        raise AlgebraFormatError("bot and top must be the least and greatest elements")

    return FiniteHeytingAlgebra(size, le, meet, join, himp_from_order(size, le, meet), bot, top,
                                tuple(labels), name)


# === JSON ===

def algebra_to_json(h: FiniteHeytingAlgebra) -> dict:
    data = {
        "size": h.size,
        "le": [list(row) for row in h.le],
        "bot": h.bot,
        "top": h.top,
        "meet": [list(row) for row in h.meet],
        "join": [list(row) for row in h.join],
        "himp": [list(row) for row in h.himp],
    }
    if h.labels:
        data["labels"] = list(h.labels)
    if h.name:
        data["name"] = h.name
    return data


def algebra_from_json(data) -> FiniteHeytingAlgebra:
    """
    Loads and validates an algebra. Missing meet/join/himp tables are
    derived from "le".
    """
    if not isinstance(data, dict):
        raise AlgebraFormatError("algebra must be a JSON object")
    try:
        size = int(data["size"])
        le = [[bool(x) for x in row] for row in data["le"]]
        bot, top = int(data["bot"]), int(data["top"])
        labels = [str(x) for x in data.get("labels", [])]
        name = str(data.get("name", ""))
    except (KeyError, TypeError, ValueError) as e:
        raise AlgebraFormatError(f"malformed algebra: {e}") from None
    if len(le) != size:
        raise AlgebraFormatError(f"le must have {size} rows")

    if all(key in data for key in ("meet", "join", "himp")):
        try:
            tables = [tuple(tuple(int(x) for x in row) for row in data[key]) for key in ("meet", "join", "himp")]
        except (TypeError, ValueError) as e:
            raise AlgebraFormatError(f"malformed operation table: {e}") from None
        algebra = FiniteHeytingAlgebra(size, tuple(tuple(row) for row in le), *tables, bot, top, tuple(labels), name)
    else:
        algebra = from_order(le, labels, name, bot, top)

    violations = validate_algebra(algebra)
    if violations:
        raise AlgebraFormatError("not a Heyting algebra: " + ", ".join(str(v) for v in violations[:5]), violations)
    return algebra


# === Filters ===

def _check_subset(h, subset) -> frozenset:
    subset = frozenset(subset)
    stray = [a for a in subset if not 0 <= a < h.size]
    if stray:
        raise PreconditionError(f"{stray} are not elements of {h}")
    return subset


def is_filter(h: FiniteHeytingAlgebra, subset: Iterable[int]) -> bool:
    """Non-empty, closed under meets, and upward closed."""
    s = _check_subset(h, subset)
    if not s:
        return False
    if any(h.meet[a][b] not in s for a in s for b in s):
        return False
    return all(b in s for a in s for b in h.elements if h.le[a][b])


def filters(h: FiniteHeytingAlgebra) -> List[frozenset]:
    """Every filter of a finite lattice is the up-set of its least element."""
    return sorted({h.up(a) for a in h.elements}, key=_filter_key)


def _filter_key(f: frozenset):
    return len(f), sorted(f)


def _generated_by_intersection(h, xs) -> frozenset:
    result = frozenset(h.elements)
    for f in filters(h):
        if xs <= f:
            result &= f
    return result


def _generated_by_meets(h, xs) -> frozenset:
    """{a | inf(l) <= a for some finite list l over xs}, the empty list's infimum being top."""
    infima = {h.top}
    frontier = [h.top]
    while frontier:
        m = frontier.pop()
        for x in xs:
            n = h.meet[m][x]
            if n not in infima:
                infima.add(n)
                frontier.append(n)
    return frozenset(a for a in h.elements if any(h.le[m][a] for m in infima))


def generated_filter(h: FiniteHeytingAlgebra, subset: Iterable[int]) -> frozenset:
    """
    The least filter containing `subset`, computed both as the intersection
    of the filters above it and through finite meets. The two must agree.
    """
    xs = _check_subset(h, subset)
    by_intersection = _generated_by_intersection(h, xs)
    by_meets = _generated_by_meets(h, xs)
    if by_intersection != by_meets:
        raise FilterPropertyError(
            f"generated filter of {h.show(xs)} in {h}: {h.show(by_intersection)} by intersection, "
            f"{h.show(by_meets)} by finite meets")
    return by_intersection


def is_proper(h: FiniteHeytingAlgebra, f: Iterable[int]) -> bool:
    return h.bot not in _check_subset(h, f)


def is_prime(h: FiniteHeytingAlgebra, f: Iterable[int]) -> bool:
    f = _check_subset(h, f)
    if not is_proper(h, f):
        return False
    return all(x in f or y in f for x in h.elements for y in h.elements if h.join[x][y] in f)


def prime_filters(h: FiniteHeytingAlgebra) -> List[frozenset]:
    """Ordered by size, then by elements."""
    return [f for f in filters(h) if is_prime(h, f)]


def super_prime_filter(h: FiniteHeytingAlgebra, f: Iterable[int], x: int) -> frozenset:
    """
    A prime filter containing `f` and avoiding `x`.

    The filter is grown greedily over the elements in order, keeping each
    extension that still avoids `x`. A rejected element stays rejected as
    the filter grows, so the result is maximal among filters avoiding `x`.
    """
    f = _check_subset(h, f)
    if not is_filter(h, f):
        raise PreconditionError(f"{h.show(f)} is not a filter of {h}")
    if x in f:
        raise PreconditionError(f"{h.label(x)} already belongs to {h.show(f)}")

    g = f
    for e in h.elements:
        if e in g:
            continue
        candidate = generated_filter(h, g | {e})
        if x not in candidate:
            g = candidate
    if is_prime(h, g):
        return g

    for p in prime_filters(h):
        if f <= p and x not in p:
            return p
    raise FilterPropertyError(f"no prime filter of {h} contains {h.show(f)} and avoids {h.label(x)}")


def gen_ins_witness(h: FiniteHeytingAlgebra, f: Iterable[int], x: int, y: int) -> int:
    """The least z in f with meet(x, z) <= y, given y in the filter generated by f and x."""
    f = _check_subset(h, f)
    if y not in generated_filter(h, f | {x}):
        raise PreconditionError(f"{h.label(y)} is not in the filter generated by {h.show(f | {x})}")
    for z in sorted(f):
        if h.le[h.meet[x][z]][y]:
            return z
    raise NoWitness(f"no z in {h.show(f)} has meet({h.label(x)}, z) <= {h.label(y)}")


def himp_not_mem_check(h: FiniteHeytingAlgebra, f: Iterable[int], x: int, y: int) -> bool:
    f = _check_subset(h, f)
    if h.himp[x][y] in f:
        return True
    return y not in generated_filter(h, f | {x})


def prime_filter_avoiding(h: FiniteHeytingAlgebra, x: int) -> frozenset:
    if x == h.top:
        raise PreconditionError("every filter contains top")
    return super_prime_filter(h, {h.top}, x)


def prime_intersection(h: FiniteHeytingAlgebra) -> frozenset:
    result = frozenset(h.elements)
    for p in prime_filters(h):
        result &= p
    return result


# === Algebraic semantics ===

@dataclass(frozen=True)
class Interpretation:
    algebra: FiniteHeytingAlgebra
    assignment: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        for v, a in self.assignment.items():
            if not 0 <= a < self.algebra.size:
                raise PreconditionError(f"p{v} is mapped to {a}, outside {self.algebra}")

    def to_json(self) -> dict:
        return {f"p{v}": self.algebra.label(a) for v, a in sorted(self.assignment.items())}

    def __str__(self):
        return ", ".join(f"{k}->{v}" for k, v in self.to_json().items()) or "(empty)"


def interpret(interp: Interpretation, phi: Formula, memo: Optional[Dict[Formula, int]] = None) -> int:
    h = interp.algebra
    memo = {} if memo is None else memo
    if phi in memo:
        return memo[phi]
    if isinstance(phi, Variable):
        try:
            value = interp.assignment[phi.var.index]
        except KeyError:
            raise UnassignedVariable(phi.var.index) from None
    elif isinstance(phi, Bottom):
        value = h.bot
    else:
        a, b = interpret(interp, phi.lhs, memo), interpret(interp, phi.rhs, memo)
        if isinstance(phi, And):
            value = h.meet[a][b]
        elif isinstance(phi, Or):
            value = h.join[a][b]
        else:
            value = h.himp[a][b]
    memo[phi] = value
    return value


def true_in_alg_model(interp: Interpretation, phi: Formula) -> bool:
    return interpret(interp, phi) == interp.algebra.top


def set_true_in_alg_model(interp: Interpretation, gamma: Iterable[Formula]) -> bool:
    memo = {}
    return all(interpret(interp, g, memo) == interp.algebra.top for g in gamma)


def all_assignments(h: FiniteHeytingAlgebra, var_indices: Iterable[int]) -> Iterator[Interpretation]:
    """Every interpretation of the given variables, the last variable varying fastest."""
    var_indices = sorted(set(var_indices))
    for values in product(h.elements, repeat=len(var_indices)):
        yield Interpretation(h, dict(zip(var_indices, values)))


def _var_indices(formulas) -> List[int]:
    found = set()
    for f in formulas:
        found |= {v.index for v in variables(f)}
    return sorted(found)


def valid_in_alg(h: FiniteHeytingAlgebra, phi: Formula) -> bool:
    return all(true_in_alg_model(i, phi) for i in all_assignments(h, _var_indices([phi])))


def alg_sem_conseq_over(algebras: Sequence[FiniteHeytingAlgebra], gamma: Iterable[Formula], phi: Formula) -> Verdict:
    """
    Holds when every interpretation in the given algebras that sends all of
    gamma to top also sends phi to top. Fails with (algebra index,
    interpretation) for the first that does not.
    """
    gamma = list(gamma)
    indices = _var_indices(gamma + [phi])
    for k, h in enumerate(algebras):
        for interp in all_assignments(h, indices):
            if set_true_in_alg_model(interp, gamma) and not true_in_alg_model(interp, phi):
                return fails(witness=(k, interp), certificate=h)
    return holds()
