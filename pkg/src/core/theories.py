"""
Theory-level judgments over finite formula universes: deductive closure,
consistency, the disjunction property, and the consistent-pair saturation
that builds complete pairs one formula at a time.
"""
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, List, Tuple

from . import config
from .formula import Formula, Implies, Or, BOT, all_formulas, big_and, big_or, encode, render, sorted_formulas
from .logger import log_event
from .oracle import OracleInconclusive, Provable, Refuted, Unknown
from .verdict import Verdict, fails, holds, unknown


class OutOfUniverse(LookupError):
    def __init__(self, phi):
        super().__init__(f"{render(phi)!r} is not in the universe")
        self.formula = phi


@dataclass(frozen=True)
class FormulaUniverse:
    """A finite, duplicate-free formula list; a formula's code is its position."""
    items: Tuple[Formula, ...]

    def __post_init__(self):
        if len(set(self.items)) != len(self.items):
            raise ValueError("a formula universe may not repeat formulas")

    @cached_property
    def _codes(self):
        return {phi: i for i, phi in enumerate(self.items)}

    def enumeration(self, index: int) -> Formula:
        return self.items[index]

    def code(self, phi: Formula) -> int:
        try:
            return self._codes[phi]
        except KeyError:
            raise OutOfUniverse(phi) from None

    def __contains__(self, phi) -> bool:
        return phi in self._codes

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)


def make_universe(formulas: Iterable[Formula]) -> FormulaUniverse:
    """Universe of the given formulas, ordered by encoding."""
    return FormulaUniverse(tuple(sorted_formulas(formulas)))


def canonical_universe(num_vars: int, max_depth: int) -> FormulaUniverse:
    """All formulas over p0..p(k-1) of connective depth <= d, ordered by encoding."""
    return make_universe(all_formulas(range(num_vars), max_depth))


@dataclass(frozen=True)
class FormulaPair:
    left: frozenset = field(default_factory=frozenset)
    right: frozenset = field(default_factory=frozenset)

    @classmethod
    def of(cls, left: Iterable[Formula] = (), right: Iterable[Formula] = ()) -> "FormulaPair":
        return cls(frozenset(left), frozenset(right))

    def includes(self, other: "FormulaPair") -> bool:
        """Component-wise inclusion of `other` in this pair."""
        return other.left <= self.left and other.right <= self.right

    def to_json(self) -> dict:
        return {
            "left": [render(f) for f in sorted_formulas(self.left)],
            "right": [render(f) for f in sorted_formulas(self.right)],
        }

    def __str__(self):
        data = self.to_json()
        return f"({{{', '.join(data['left'])}}}, {{{', '.join(data['right'])}}})"


# === Theory predicates ===

def is_ded_closed(gamma: Iterable[Formula], universe: FormulaUniverse, oracle) -> Verdict:
    """Holds when no universe formula outside gamma is provable from gamma."""
    gamma = frozenset(gamma)
    refutations = []
    pending = None
    for phi in universe:
        if phi in gamma:
            continue
        verdict = oracle(gamma, phi)
        if isinstance(verdict, Provable):
            return fails(witness=phi, certificate=verdict.witness)
        if isinstance(verdict, Unknown):
            pending = pending or phi
        else:
            refutations.append(verdict)
    if pending is not None:
        return unknown(detail=f"no verdict for {render(pending)}", witness=pending)
    return holds(certificate=tuple(refutations))


def is_consistent(gamma: Iterable[Formula], oracle) -> Verdict:
    verdict = oracle(frozenset(gamma), BOT)
    if isinstance(verdict, Refuted):
        return holds(certificate=verdict)
    if isinstance(verdict, Provable):
        return fails(witness=BOT, certificate=verdict.witness)
    return unknown(detail=verdict.budget)


def is_disjunctive(gamma: Iterable[Formula], universe: FormulaUniverse, oracle) -> Verdict:
    """
    Holds when every disjunction of the universe that gamma proves has a
    disjunct gamma proves. Fails with the pair of disjuncts otherwise.
    """
    gamma = frozenset(gamma)
    pending = None
    for phi in universe:
        if not isinstance(phi, Or):
            continue
        whole = oracle(gamma, phi)
        if isinstance(whole, Refuted):
            continue
        if isinstance(whole, Unknown):
            pending = pending or phi
            continue
        sides = [oracle(gamma, phi.lhs), oracle(gamma, phi.rhs)]
        if any(isinstance(v, Provable) for v in sides):
            continue
        if all(isinstance(v, Refuted) for v in sides):
            return fails(witness=(phi.lhs, phi.rhs), certificate=(whole.witness, sides[0], sides[1]))
        pending = pending or phi
    if pending is not None:
        return unknown(detail=f"no verdict for {render(pending)}", witness=pending)
    return holds()


# === Consistent pairs ===

def pair_formula(left: Iterable[Formula], right: Iterable[Formula]) -> Formula:
    """big_and(left) -> big_or(right), both sides ordered by encoding."""
    return Implies(big_and(sorted_formulas(left)), big_or(sorted_formulas(right)))


def _subset_pairs(left, right, max_size):
    """(Φ, Ω) by increasing |Φ|+|Ω|, then lexicographically by codes."""
    left, right = sorted_formulas(left), sorted_formulas(right)
    for total in range(max_size + 1):
        candidates = []
        for size in range(total + 1):
            if size > len(left) or total - size > len(right):
                continue
            for phis in combinations(left, size):
                for omegas in combinations(right, total - size):
                    candidates.append((phis, omegas))
        candidates.sort(key=lambda c: ([encode(f) for f in c[0]], [encode(f) for f in c[1]]))
        yield from candidates


def _provable_subset_pair(pair: FormulaPair, oracle):
    for phis, omegas in _subset_pairs(pair.left, pair.right, config.WITNESS_SEARCH_CARDINALITY):
        candidate = oracle((), pair_formula(phis, omegas))
        if isinstance(candidate, Provable):
            return FormulaPair.of(phis, omegas), candidate
    return None


def pair_consistent(pair: FormulaPair, oracle, minimal_witness: bool = True) -> Verdict:
    """
    Decides whether some finite Φ ⊆ left, Ω ⊆ right has |- big_and(Φ) -> big_or(Ω).

    The whole pair is settled by one query: the conjunction and disjunction
    are monotone in their sets, so a countermodel to the full implication
    refutes every subset pair at once, and a proof for the full pair is
    itself a witness. With `minimal_witness`, a failing pair is reported
    through its smallest provable subset pair (up to
    config.WITNESS_SEARCH_CARDINALITY formulas) when one exists. When the
    full query is inconclusive the small subset pairs are still tried,
    since any one of them proving is enough to fail the pair.
    """
    verdict = oracle((), pair_formula(pair.left, pair.right))
    if isinstance(verdict, Refuted):
        return holds(certificate=verdict)
    inconclusive = isinstance(verdict, Unknown)
    if minimal_witness or inconclusive:
        found = _provable_subset_pair(pair, oracle)
        if found is not None:
            witness, proof = found
            return fails(witness=witness, certificate=proof.witness)
    if inconclusive:
        return unknown(detail=verdict.budget)
    return fails(witness=pair, certificate=verdict.witness)


def add_formula_to_pair(pair: FormulaPair, phi: Formula, oracle) -> FormulaPair:
    """Puts phi on the left when that keeps the pair consistent, else on the right."""
    extended = FormulaPair(pair.left | {phi}, pair.right)
    verdict = pair_consistent(extended, oracle, minimal_witness=False)
    if verdict.unknown:
        raise OracleInconclusive(sorted_formulas(extended.left), pair_formula(extended.left, extended.right),
                                 verdict.detail or "")
    if verdict.holds:
        return extended
    return FormulaPair(pair.left, pair.right | {phi})


def saturation_trace(pair: FormulaPair, universe: FormulaUniverse, oracle) -> List[FormulaPair]:
    """
    The family of pairs obtained by adding the universe formulas in
    enumeration order. The first entry is the input pair, the last the
    saturated pair.
    """
    outside = [f for f in pair.left | pair.right if f not in universe]
    if outside:
        raise OutOfUniverse(outside[0])
    start = pair_consistent(pair, oracle, minimal_witness=False)
    if start.unknown:
        raise OracleInconclusive(sorted_formulas(pair.left), pair_formula(pair.left, pair.right),
                                 start.detail or "")
    if start.fails:
        raise ValueError(f"cannot saturate the inconsistent pair {pair}")

    trace = [pair]
    for index in range(len(universe)):
        phi = universe.enumeration(index)
        current = add_formula_to_pair(trace[-1], phi, oracle)
        side = "left" if phi in current.left and phi not in trace[-1].left else "right"
        log_event("Saturation step", level="DEBUG", step=index, formula=render(phi), side=side)
        trace.append(current)

    final = trace[-1]
    log_event("Pair saturated", universe=len(universe), left=len(final.left), right=len(final.right))
    return trace


def saturate_pair(pair: FormulaPair, universe: FormulaUniverse, oracle) -> FormulaPair:
    return saturation_trace(pair, universe, oracle)[-1]


def family_increasing_check(pair: FormulaPair, universe: FormulaUniverse, oracle) -> bool:
    """Both components grow monotonically along the saturation trace."""
    trace = saturation_trace(pair, universe, oracle)
    return all(trace[j].includes(trace[i]) for i in range(len(trace)) for j in range(i, len(trace)))


def is_partition(pair: FormulaPair, universe: FormulaUniverse) -> bool:
    """Every universe formula lies on exactly one side, and nothing else does."""
    return not (pair.left & pair.right) and (pair.left | pair.right) == frozenset(universe.items)
