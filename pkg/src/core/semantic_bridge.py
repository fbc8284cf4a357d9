"""
The two constructions linking Kripke models and Heyting algebras: the
algebra of closed (upward closed) world sets of a model, and the frame of
prime filters of an algebra. Also brute-force isomorphism checks and the
harness comparing Kripke and algebraic validity through both constructions.
"""
from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterable, List, Optional, Sequence, Tuple

from . import config
from .formula import Formula, render, variables
from .heyting import (
    FiniteHeytingAlgebra,
    Interpretation,
    PreconditionError,
    all_assignments,
    interpret,
    prime_filters,
    true_in_alg_model,
)
from .kripke import KripkeModel, eval_formula, required_vars, truth_mask, truth_set, valid_in_model
from .logger import log_event
from .workers import sweep_map


# === Closed sets ===

def _mask_set(mask: int) -> frozenset:
    return frozenset(w for w in range(mask.bit_length()) if mask >> w & 1)


def _is_closed(model: KripkeModel, mask: int) -> bool:
    return all(not (mask >> w & 1) or not (succ & ~mask) for w, succ in enumerate(model.successors))


def _closed_masks(model: KripkeModel) -> List[int]:
    masks = [m for m in range(1 << model.num_worlds) if _is_closed(model, m)]
    return sorted(masks, key=lambda m: (bin(m).count("1"), sorted(_mask_set(m))))


def closed_sets(model: KripkeModel) -> List[frozenset]:
    """Upward closed world sets, ordered by size, then by worlds."""
    return [_mask_set(m) for m in _closed_masks(model)]


def _set_label(worlds: Iterable[int]) -> str:
    return "{" + ",".join(f"w{w}" for w in sorted(worlds)) + "}"


@dataclass(frozen=True)
class ClosedSetAlgebra:
    model: KripkeModel
    masks: Tuple[int, ...]
    algebra: FiniteHeytingAlgebra = field(repr=False)

    @property
    def sets(self) -> List[frozenset]:
        return [_mask_set(m) for m in self.masks]

    def element(self, worlds: Iterable[int]) -> int:
        mask = sum(1 << w for w in set(worlds))
        try:
            return self.masks.index(mask)
        except ValueError:
            raise PreconditionError(f"{_set_label(worlds)} is not a closed set") from None


def closed_set_algebra(model: KripkeModel) -> ClosedSetAlgebra:
    """
    Closed sets under inclusion, with intersection and union as meet and
    join. himp(A, B) is the union of every closed X inside (W \\ A) ∪ B.
    """
    masks = _closed_masks(model)
    index = {m: i for i, m in enumerate(masks)}
    full = model.full_mask
    size = len(masks)
    if size > config.MAX_ALGEBRA_SIZE:
        raise PreconditionError(f"{size} closed sets exceed the algebra size limit")

    def himp_closed(a, b):
        allowed = (full & ~a) | b
        union = 0
        for x in masks:
            if not x & ~allowed:
                union |= x
        return union

    le = tuple(tuple(not (a & ~b) for b in masks) for a in masks)
    meet = tuple(tuple(index[a & b] for b in masks) for a in masks)
    join = tuple(tuple(index[a | b] for b in masks) for a in masks)
    himp = tuple(tuple(index[himp_closed(a, b)] for b in masks) for a in masks)
    algebra = FiniteHeytingAlgebra(size, le, meet, join, himp, index[0], index[full],
                                   tuple(_set_label(_mask_set(m)) for m in masks),
                                   f"closed sets of a {model.num_worlds}-world model")
    return ClosedSetAlgebra(model, tuple(masks), algebra)


def closed_interpretation(csa: ClosedSetAlgebra) -> Interpretation:
    """Each variable of the model goes to its truth set."""
    model = csa.model
    return Interpretation(csa.algebra, {v: csa.masks.index(mask) for v, mask in enumerate(model.var_masks)})


def h_closed(model: KripkeModel, phi: Formula) -> frozenset:
    return truth_set(model, phi)


def kripke_to_alg_check(model: KripkeModel, phi: Formula, csa: Optional[ClosedSetAlgebra] = None) -> bool:
    """
    Validity in the model agrees with truth in its closed-set algebra, and
    the algebraic value of phi is exactly its truth set.
    """
    csa = csa or closed_set_algebra(model)
    interp = closed_interpretation(csa)
    value = interpret(interp, phi)
    if csa.masks[value] != truth_mask(model, phi):
        return False
    return valid_in_model(model, phi) == true_in_alg_model(interp, phi)


# === Prime filter frames ===

@dataclass(frozen=True)
class PrimeFilterFrame:
    algebra: FiniteHeytingAlgebra
    interpretation: Interpretation
    filters: Tuple[frozenset, ...]
    model: KripkeModel

    @classmethod
    def build(cls, h: FiniteHeytingAlgebra, interp: Interpretation) -> "PrimeFilterFrame":
        worlds = tuple(prime_filters(h))
        if not worlds:
            raise PreconditionError(f"{h} has no prime filters")
        n = len(worlds)
        relation = tuple(tuple(worlds[i] <= worlds[j] for j in range(n)) for i in range(n))
        num_vars = max(interp.assignment, default=-1) + 1
        valuation = tuple(
            frozenset(w for w, f in enumerate(worlds) if v in interp.assignment and interp.assignment[v] in f)
            for v in range(num_vars)
        )
        return cls(h, interp, worlds, KripkeModel(n, relation, valuation))


def prime_filter_frame(h: FiniteHeytingAlgebra, interp: Interpretation) -> KripkeModel:
    """Prime filters ordered by inclusion; a variable holds where its value belongs to the filter."""
    return PrimeFilterFrame.build(h, interp).model


def alg_to_kripke_check(h: FiniteHeytingAlgebra, interp: Interpretation, phi: Formula,
                        frame: Optional[PrimeFilterFrame] = None) -> bool:
    frame = frame or PrimeFilterFrame.build(h, interp)
    value = interpret(interp, phi)
    for w, f in enumerate(frame.filters):
        if eval_formula(frame.model, w, phi) != (value in f):
            return False
    return true_in_alg_model(interp, phi) == valid_in_model(frame.model, phi)


# === Isomorphisms ===

def _check_iso_size(n):
    if n > config.MAX_ISOMORPHISM_SIZE:
        raise ValueError(f"isomorphism checks are limited to {config.MAX_ISOMORPHISM_SIZE} elements, got {n}")


def is_model_isomorphic(m1: KripkeModel, m2: KripkeModel) -> bool:
    """A world bijection preserving the relation and every variable's truth set."""
    if m1.num_worlds != m2.num_worlds:
        return False
    n = m1.num_worlds
    _check_iso_size(n)
    num_vars = max(m1.num_vars, m2.num_vars)
    val1 = [m1.valuation[v] if v < m1.num_vars else frozenset() for v in range(num_vars)]
    val2 = [m2.valuation[v] if v < m2.num_vars else frozenset() for v in range(num_vars)]
    if any(len(a) != len(b) for a, b in zip(val1, val2)):
        return False
    for perm in permutations(range(n)):
        if all(m1.relation[i][j] == m2.relation[perm[i]][perm[j]] for i in range(n) for j in range(n)) \
                and all(frozenset(perm[w] for w in a) == b for a, b in zip(val1, val2)):
            return True
    return False


def is_algebra_isomorphic(h1: FiniteHeytingAlgebra, h2: FiniteHeytingAlgebra) -> bool:
    """An element bijection preserving the order and all operation tables."""
    if h1.size != h2.size:
        return False
    n = h1.size
    _check_iso_size(n)
    for perm in permutations(range(n)):
        if perm[h1.bot] != h2.bot or perm[h1.top] != h2.top:
            continue
        if all(h1.le[a][b] == h2.le[perm[a]][perm[b]]
               and perm[h1.meet[a][b]] == h2.meet[perm[a]][perm[b]]
               and perm[h1.join[a][b]] == h2.join[perm[a]][perm[b]]
               and perm[h1.himp[a][b]] == h2.himp[perm[a]][perm[b]]
               for a in range(n) for b in range(n)):
            return True
    return False


# === Validity harness ===

@dataclass(frozen=True)
class FormulaReport:
    formula: Formula
    kripke_refuter: Optional[int]
    alg_refuter: Optional[Tuple[int, dict]]
    discrepancies: Tuple[str, ...] = ()

    @property
    def kripke_valid(self) -> bool:
        return self.kripke_refuter is None

    @property
    def alg_valid(self) -> bool:
        return self.alg_refuter is None

    def to_json(self) -> dict:
        return {
            "formula": render(self.formula),
            "kripke_valid": self.kripke_valid,
            "alg_valid": self.alg_valid,
            "kripke_refuter": self.kripke_refuter,
            "alg_refuter": None if self.alg_refuter is None else
            {"algebra": self.alg_refuter[0], "assignment": self.alg_refuter[1]},
            "discrepancies": list(self.discrepancies),
        }


@dataclass(frozen=True)
class HarnessReport:
    entries: Tuple[FormulaReport, ...]

    @property
    def discrepancies(self) -> List[str]:
        return [d for entry in self.entries for d in entry.discrepancies]

    @property
    def ok(self) -> bool:
        return not self.discrepancies

    def to_json(self) -> dict:
        return {"ok": self.ok, "formulas": [e.to_json() for e in self.entries]}


def _harness_entry(job) -> FormulaReport:
    phi, models, algebras = job
    problems = []
    kripke_refuter = None
    needed = required_vars([phi])
    for k, model in enumerate(models):
        if model.num_vars < needed or valid_in_model(model, phi):
            continue
        kripke_refuter = k if kripke_refuter is None else kripke_refuter
        csa = closed_set_algebra(model)
        if true_in_alg_model(closed_interpretation(csa), phi):
            problems.append(f"{render(phi)}: model {k} refutes it but its closed-set algebra does not")

    alg_refuter = None
    indices = sorted(v.index for v in variables(phi))
    for k, h in enumerate(algebras):
        for interp in all_assignments(h, indices):
            if true_in_alg_model(interp, phi):
                continue
            if alg_refuter is None:
                alg_refuter = (k, interp.to_json())
            if valid_in_model(prime_filter_frame(h, interp), phi):
                problems.append(f"{render(phi)}: algebra {k} under {interp} refutes it "
                                f"but its prime filter frame does not")
    return FormulaReport(phi, kripke_refuter, alg_refuter, tuple(problems))


def validity_equiv_harness(formulas: Sequence[Formula], models: Sequence[KripkeModel],
                           algebras: Sequence[FiniteHeytingAlgebra], workers=None) -> HarnessReport:
    """
    For each formula, every refuting model must map to a refuting closed-set
    algebra and every refuting interpretation to a refuting prime filter
    frame. Models lacking the formula's variables are skipped.
    """
    models, algebras = tuple(models), tuple(algebras)
    entries = sweep_map(_harness_entry, [(phi, models, algebras) for phi in formulas], workers)
    report = HarnessReport(tuple(entries))
    for problem in report.discrepancies:
        log_event("Bridge discrepancy", level="ERROR", detail=problem)
    log_event("Validity harness finished", formulas=len(entries), models=len(models),
              algebras=len(algebras), discrepancies=len(report.discrepancies))
    return report
