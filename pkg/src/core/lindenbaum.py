"""
Provable equivalence relative to a context, and the quotient of a finite
formula universe by it.
"""
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Tuple

from .derived_rules import iff_intro
from .formula import BINARY, Formula, Implies, iff, render, sorted_formulas
from .logger import log_event
from .oracle import OracleInconclusive, Provable, Refuted
from .theories import FormulaUniverse, OutOfUniverse
from .verdict import Verdict, fails, holds, unknown


def class_le(gamma: Iterable[Formula], phi: Formula, psi: Formula, oracle) -> Verdict:
    """gamma |- phi -> psi, as a verdict."""
    target = Implies(phi, psi)
    verdict = oracle(tuple(gamma), target)
    if isinstance(verdict, Provable):
        return holds(certificate=verdict.witness)
    if isinstance(verdict, Refuted):
        return fails(witness=target, certificate=verdict)
    return unknown(detail=verdict.budget, witness=target)


def equiv(gamma: Iterable[Formula], phi: Formula, psi: Formula, oracle) -> Verdict:
    """
    Holds with a proof of gamma |- (phi -> psi) & (psi -> phi); fails with a
    countermodel to one of the two directions.
    """
    gamma = tuple(gamma)
    forward = class_le(gamma, phi, psi, oracle)
    if forward.fails:
        return forward
    backward = class_le(gamma, psi, phi, oracle)
    if backward.fails:
        return backward
    if forward.unknown or backward.unknown:
        return forward if forward.unknown else backward
    return holds(certificate=iff_intro(phi, psi, forward.certificate, backward.certificate))


def _definitive(verdict: Verdict, gamma, target) -> bool:
    if verdict.unknown:
        raise OracleInconclusive(gamma, target, verdict.detail or "")
    return verdict.holds


@dataclass(frozen=True)
class QuotientTable:
    """
    `classes[k]` lists its members by encoding; `representatives[k]` is the
    first of them. `order[i][j]` records gamma |- rep_i -> rep_j.
    """
    context: Tuple[Formula, ...]
    universe: FormulaUniverse
    classes: Tuple[Tuple[Formula, ...], ...]
    provable_top: Tuple[bool, ...]
    order: Tuple[Tuple[bool, ...], ...]

    @property
    def representatives(self) -> Tuple[Formula, ...]:
        return tuple(members[0] for members in self.classes)

    @cached_property
    def _class_of(self) -> Dict[Formula, int]:
        return {phi: k for k, members in enumerate(self.classes) for phi in members}

    def class_of(self, phi: Formula) -> int:
        try:
            return self._class_of[phi]
        except KeyError:
            raise OutOfUniverse(phi) from None

    def __len__(self):
        return len(self.classes)

    def to_json(self) -> dict:
        reps = [render(r) for r in self.representatives]
        return {
            "context": [render(g) for g in self.context],
            "classes": [[render(phi) for phi in members] for members in self.classes],
            "representatives": reps,
            "provable_top": list(self.provable_top),
            "order": [[reps[i], reps[j]] for i in range(len(reps)) for j in range(len(reps))
                      if i != j and self.order[i][j]],
        }


def build_quotient(gamma: Iterable[Formula], universe: FormulaUniverse, oracle) -> QuotientTable:
    """
    Partitions the universe by provable equivalence under gamma. Formulas are
    taken in encoding order, so each class is represented by its smallest
    code. Every verdict must be definitive.
    """
    gamma = tuple(sorted_formulas(gamma))
    classes: List[List[Formula]] = []
    for phi in sorted_formulas(universe):
        for members in classes:
            verdict = equiv(gamma, members[0], phi, oracle)
            if _definitive(verdict, gamma, iff(members[0], phi)):
                members.append(phi)
                break
        else:
            classes.append([phi])

    reps = [members[0] for members in classes]
    provable_top = tuple(_provable(gamma, rep, oracle) for rep in reps)
    order = tuple(
        tuple(i == j or _definitive(class_le(gamma, reps[i], reps[j], oracle), gamma, Implies(reps[i], reps[j]))
              for j in range(len(reps)))
        for i in range(len(reps))
    )
    table = QuotientTable(gamma, universe, tuple(tuple(m) for m in classes), provable_top, order)
    log_event("Quotient built", context=[render(g) for g in gamma], universe=len(universe), classes=len(table))
    return table


def _provable(gamma, phi, oracle) -> bool:
    verdict = oracle(gamma, phi)
    if isinstance(verdict, Provable):
        return True
    if isinstance(verdict, Refuted):
        return False
    raise OracleInconclusive(gamma, phi, verdict.budget)


def _combination_classes(table: QuotientTable) -> Dict[tuple, set]:
    """(ctor, class of lhs, class of rhs) -> classes of every in-universe combination."""
    seen: Dict[tuple, set] = {}
    items = list(table.universe)
    for ctor in BINARY:
        for phi in items:
            for psi in items:
                combined = ctor(phi, psi)
                if combined in table.universe:
                    key = (ctor, table.class_of(phi), table.class_of(psi))
                    seen.setdefault(key, set()).add(table.class_of(combined))
    return seen


def quotient_op_check(gamma: Iterable[Formula], universe: FormulaUniverse, oracle,
                      table: Optional[QuotientTable] = None) -> bool:
    """&, | and -> respect the classes wherever the combined formulas lie in the universe."""
    table = table or build_quotient(gamma, universe, oracle)
    return all(len(classes) == 1 for classes in _combination_classes(table).values())


def h_quot(gamma: Iterable[Formula], phi: Formula, table: QuotientTable) -> int:
    """
    The class of phi. A formula outside the universe is resolved through its
    parts when the combination of their representatives lies in the universe.
    """
    if phi in table.universe:
        return table.class_of(phi)
    if isinstance(phi, BINARY):
        left, right = h_quot(gamma, phi.lhs, table), h_quot(gamma, phi.rhs, table)
        combined = type(phi)(table.representatives[left], table.representatives[right])
        if combined in table.universe:
            return table.class_of(combined)
    raise OutOfUniverse(phi)


def h_quot_compositional(table: QuotientTable) -> bool:
    """Every binary universe formula lands in the class its parts' representatives combine to."""
    reps = table.representatives
    for phi in table.universe:
        if not isinstance(phi, BINARY) or phi.lhs not in table.universe or phi.rhs not in table.universe:
            continue
        combined = type(phi)(reps[table.class_of(phi.lhs)], reps[table.class_of(phi.rhs)])
        if combined in table.universe and table.class_of(combined) != table.class_of(phi):
            return False
    return True


def true_in_lt_check(gamma: Iterable[Formula], universe: FormulaUniverse, oracle,
                     table: Optional[QuotientTable] = None) -> bool:
    """
    The premises land in provable classes, and a universe formula's class is
    provable exactly when gamma proves the formula.
    """
    gamma = tuple(sorted_formulas(gamma))
    table = table or build_quotient(gamma, universe, oracle)
    if not all(table.provable_top[h_quot(gamma, g, table)] for g in gamma):
        return False
    return all(table.provable_top[table.class_of(phi)] == _provable(gamma, phi, oracle) for phi in universe)


def two_class_algebra_order(table: QuotientTable) -> Optional[Tuple[int, int]]:
    """(bottom class, top class) when the table has exactly two classes ordered strictly."""
    if len(table) != 2:
        return None
    for low, high in ((0, 1), (1, 0)):
        if table.order[low][high] and not table.order[high][low]:
            return low, high
    return None


