"""
Finite Kripke models for intuitionistic logic.

Worlds are the integers 0..n-1. Truth sets are held as bitmasks: bit w of a
mask is set when world w belongs to the set.
"""
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import permutations
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .formula import And, Bottom, Formula, Implies, Or, Variable, variables
from .logger import log_event
from .verdict import Verdict, fails, holds


class ModelFormatError(ValueError):
    def __init__(self, message: str, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class UnknownWorld(LookupError):
    def __init__(self, world, num_worlds):
        super().__init__(f"world {world} is not in a model with {num_worlds} world(s)")
        self.world = world


class UnknownVariable(LookupError):
    def __init__(self, var, num_vars):
        super().__init__(f"variable {var} is not valued by a model over {num_vars} variable(s)")
        self.var = var


# === Violations ===

@dataclass(frozen=True)
class Reflexivity:
    world: int

    def __str__(self):
        return f"Reflexivity(w{self.world})"


@dataclass(frozen=True)
class Transitivity:
    w1: int
    w2: int
    w3: int

    def __str__(self):
        return f"Transitivity(w{self.w1}, w{self.w2}, w{self.w3})"


@dataclass(frozen=True)
class Monotonicity:
    var: int
    w1: int
    w2: int

    def __str__(self):
        return f"Monotonicity(p{self.var}, w{self.w1}, w{self.w2})"


# === Models ===

@dataclass(frozen=True)
class KripkeModel:
    """
    `relation[i][j]` is true when world j is accessible from world i.
    `valuation[v]` is the set of worlds where variable v holds.
    """
    num_worlds: int
    relation: Tuple[Tuple[bool, ...], ...]
    valuation: Tuple[frozenset, ...] = ()

    def __post_init__(self):
        if self.num_worlds < 1:
            raise ModelFormatError("a model needs at least one world")
        if len(self.relation) != self.num_worlds or any(len(row) != self.num_worlds for row in self.relation):
            raise ModelFormatError(f"relation must be a {self.num_worlds}x{self.num_worlds} table")
        for v, worlds in enumerate(self.valuation):
            stray = [w for w in worlds if not 0 <= w < self.num_worlds]
            if stray:
                raise ModelFormatError(f"p{v} is valued at unknown world(s) {stray}")

    @property
    def num_vars(self) -> int:
        return len(self.valuation)

    @cached_property
    def full_mask(self) -> int:
        return (1 << self.num_worlds) - 1

    @cached_property
    def successors(self) -> Tuple[int, ...]:
        return tuple(sum(1 << j for j in range(self.num_worlds) if self.relation[i][j])
                     for i in range(self.num_worlds))

    @cached_property
    def var_masks(self) -> Tuple[int, ...]:
        return tuple(sum(1 << w for w in worlds) for worlds in self.valuation)

    def accessible(self, w1: int, w2: int) -> bool:
        return self.relation[w1][w2]


def make_model(num_worlds: int, pairs: Iterable[Tuple[int, int]], valuation: Sequence[Iterable[int]] = (),
               close: bool = True) -> KripkeModel:
    """
    Builds a model from an edge list. With `close`, the reflexive-transitive
    closure of the edges is taken, so only the covering edges need listing.
    """
    rel = [[False] * num_worlds for _ in range(num_worlds)]
    for i, j in pairs:
        if not (0 <= i < num_worlds and 0 <= j < num_worlds):
            raise ModelFormatError(f"edge ({i}, {j}) mentions an unknown world")
        rel[i][j] = True
    if close:
        for w in range(num_worlds):
            rel[w][w] = True
        for k in range(num_worlds):
            for i in range(num_worlds):
                if rel[i][k]:
                    for j in range(num_worlds):
                        if rel[k][j]:
                            rel[i][j] = True
    return KripkeModel(num_worlds, tuple(tuple(row) for row in rel),
                       tuple(frozenset(worlds) for worlds in valuation))


def chain_model(num_worlds: int, valuation: Sequence[Iterable[int]] = ()) -> KripkeModel:
    """w0 -> w1 -> ... -> w(n-1), closed."""
    return make_model(num_worlds, [(i, i + 1) for i in range(num_worlds - 1)], valuation)


def identity_model(num_worlds: int, valuation: Sequence[Iterable[int]] = ()) -> KripkeModel:
    """Only reflexive edges: every world is a classical valuation."""
    return make_model(num_worlds, [], valuation)


def validate_model(model: KripkeModel) -> list:
    violations = []
    n = model.num_worlds
    rel = model.relation
    for w in range(n):
        if not rel[w][w]:
            violations.append(Reflexivity(w))
    for w1 in range(n):
        for w2 in range(n):
            if not rel[w1][w2]:
                continue
            for w3 in range(n):
                if rel[w2][w3] and not rel[w1][w3]:
                    violations.append(Transitivity(w1, w2, w3))
    for v, worlds in enumerate(model.valuation):
        for w1 in sorted(worlds):
            for w2 in range(n):
                if rel[w1][w2] and w2 not in worlds:
                    violations.append(Monotonicity(v, w1, w2))
    return violations


# === Forcing ===

def truth_mask(model: KripkeModel, phi: Formula, memo: Optional[Dict[Formula, int]] = None) -> int:
    """Bitmask of the worlds forcing `phi`."""
    memo = {} if memo is None else memo
    if phi in memo:
        return memo[phi]
    if isinstance(phi, Variable):
        index = phi.var.index
        if index >= model.num_vars:
            raise UnknownVariable(phi.var, model.num_vars)
        mask = model.var_masks[index]
    elif isinstance(phi, Bottom):
        mask = 0
    elif isinstance(phi, And):
        mask = truth_mask(model, phi.lhs, memo) & truth_mask(model, phi.rhs, memo)
    elif isinstance(phi, Or):
        mask = truth_mask(model, phi.lhs, memo) | truth_mask(model, phi.rhs, memo)
    elif isinstance(phi, Implies):
        bad = truth_mask(model, phi.lhs, memo) & ~truth_mask(model, phi.rhs, memo)
        mask = 0
        for w, succ in enumerate(model.successors):
            if not succ & bad:
                mask |= 1 << w
    else:
        raise TypeError(f"not a formula: {phi!r}")
    memo[phi] = mask
    return mask


def truth_set(model: KripkeModel, phi: Formula) -> frozenset:
    mask = truth_mask(model, phi)
    return frozenset(w for w in range(model.num_worlds) if mask >> w & 1)


def _check_world(model, world):
    if not (isinstance(world, int) and 0 <= world < model.num_worlds):
        raise UnknownWorld(world, model.num_worlds)


def eval_formula(model: KripkeModel, world: int, phi: Formula) -> bool:
    _check_world(model, world)
    return bool(truth_mask(model, phi) >> world & 1)


def valid_in_model(model: KripkeModel, phi: Formula) -> bool:
    return truth_mask(model, phi) == model.full_mask


def set_mask(model: KripkeModel, gamma: Iterable[Formula], memo=None) -> int:
    """Worlds forcing every member of `gamma`."""
    memo = {} if memo is None else memo
    mask = model.full_mask
    for phi in gamma:
        mask &= truth_mask(model, phi, memo)
    return mask


def forces_set(model: KripkeModel, world: int, gamma: Iterable[Formula]) -> bool:
    _check_world(model, world)
    return bool(set_mask(model, gamma) >> world & 1)


def sem_conseq_over(models: Sequence[KripkeModel], gamma: Iterable[Formula], phi: Formula) -> Verdict:
    """
    Local consequence restricted to `models`. A failure names the first
    (model index, world) forcing `gamma` but not `phi`.
    """
    gamma = list(gamma)
    for index, model in enumerate(models):
        memo = {}
        bad = set_mask(model, gamma, memo) & ~truth_mask(model, phi, memo)
        if bad:
            world = _lowest_bit(bad)
            return fails(witness=(index, world), certificate=model)
    return holds()


def check_monotone_eval(model: KripkeModel, formulas: Iterable[Formula]) -> bool:
    """True when every formula's truth set is closed upward along the relation."""
    memo = {}
    for phi in formulas:
        mask = truth_mask(model, phi, memo)
        for w, succ in enumerate(model.successors):
            if mask >> w & 1 and succ & ~mask:
                return False
    return True


def _lowest_bit(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


# === Enumeration ===

def _labeled_preorders(n: int) -> List[Tuple[int, ...]]:
    """Every preorder on n labeled worlds, as tuples of successor masks."""
    if n == 0:
        return [()]
    result = []
    for smaller in _labeled_preorders(n - 1):
        m = n - 1
        for down in range(1 << m):
            if not _is_down_closed(smaller, down):
                continue
            for up in range(1 << m):
                if not _is_up_closed(smaller, up):
                    continue
                if any(down >> d & 1 and (smaller[d] & up) != up for d in range(m)):
                    continue
                succ = [smaller[w] | ((1 << m) if down >> w & 1 else 0) for w in range(m)]
                succ.append(up | (1 << m))
                result.append(tuple(succ))
    return result


def _is_up_closed(succ, mask):
    return all(not mask >> w & 1 or (succ[w] & ~mask) == 0 for w in range(len(succ)))


def _is_down_closed(succ, mask):
    return all(mask >> w & 1 or (succ[w] & mask) == 0 for w in range(len(succ)))


def _permute_succ(succ, perm):
    """Successor masks after renaming world w to perm[w]."""
    out = [0] * len(succ)
    for w, mask in enumerate(succ):
        out[perm[w]] = _permute_mask(mask, perm)
    return tuple(out)


def _permute_mask(mask, perm):
    result = 0
    for w, target in enumerate(perm):
        if mask >> w & 1:
            result |= 1 << target
    return result


def _relation_key(succ):
    # absent edges read row by row, so more edges and earlier roots sort first
    n = len(succ)
    return tuple(0 if succ[i] >> j & 1 else 1 for i in range(n) for j in range(n))


@lru_cache(maxsize=None)
def _preorder_classes(n: int):
    """One canonical preorder per isomorphism class, with its automorphisms."""
    perms = list(permutations(range(n)))
    classes = {}
    for succ in _labeled_preorders(n):
        canonical = min((_permute_succ(succ, p) for p in perms), key=_relation_key)
        key = _relation_key(canonical)
        if key not in classes:
            autos = tuple(p for p in perms if _permute_succ(canonical, p) == canonical)
            classes[key] = (canonical, autos)
    return [classes[key] for key in sorted(classes)]


@lru_cache(maxsize=None)
def _models(num_vars: int, num_worlds: int) -> Tuple[KripkeModel, ...]:
    models = []
    for succ, autos in _preorder_classes(num_worlds):
        up_sets = [mask for mask in range(1 << num_worlds) if _is_up_closed(succ, mask)]
        for masks in _valuations(up_sets, num_vars):
            canonical = min(tuple(_permute_mask(m, p) for m in masks) for p in autos)
            if canonical != masks:
                continue
            rel = tuple(tuple(bool(succ[i] >> j & 1) for j in range(num_worlds)) for i in range(num_worlds))
            val = tuple(frozenset(w for w in range(num_worlds) if m >> w & 1) for m in masks)
            models.append(KripkeModel(num_worlds, rel, val))
    log_event("Enumerated Kripke models", level="DEBUG",
              num_vars=num_vars, num_worlds=num_worlds, count=len(models))
    return tuple(models)


def _valuations(up_sets, num_vars):
    if num_vars == 0:
        yield ()
        return
    for rest in _valuations(up_sets, num_vars - 1):
        for mask in up_sets:
            yield rest + (mask,)


def enumerate_models(num_vars: int, num_worlds: int) -> Iterator[KripkeModel]:
    """
    Every model on `num_worlds` worlds over `num_vars` variables, one per
    isomorphism class.

    Order: relation classes sorted by their canonical key (clusters before
    chains before antichains), then valuations in lexicographic order of
    their masks. A non-trivial class always has its root at w0.
    """
    if num_worlds < 1:
        raise ValueError("num_worlds must be at least 1")
    yield from _models(num_vars, num_worlds)


def models_up_to(num_vars: int, max_worlds: int) -> Iterator[KripkeModel]:
    for n in range(1, max_worlds + 1):
        yield from enumerate_models(num_vars, n)


def required_vars(formulas: Iterable[Formula]) -> int:
    """Number of variables a model must value to evaluate every formula."""
    indices = [v.index for phi in formulas for v in variables(phi)]
    return max(indices) + 1 if indices else 0


def countermodel_search(gamma: Iterable[Formula], phi: Formula, max_worlds: int) -> Optional[Tuple[KripkeModel, int]]:
    """
    First (model, world) in enumeration order where `gamma` is forced and
    `phi` is not. None means no countermodel up to `max_worlds` worlds, which
    is not a proof.
    """
    if max_worlds < 1:
        raise ValueError("max_worlds must be at least 1")
    gamma = list(gamma)
    num_vars = required_vars(gamma + [phi])
    for model in models_up_to(num_vars, max_worlds):
        memo = {}
        bad = set_mask(model, gamma, memo) & ~truth_mask(model, phi, memo)
        if bad:
            return model, _lowest_bit(bad)
    return None


# === JSON ===

def model_to_json(model: KripkeModel) -> dict:
    pairs = [[i, j] for i in range(model.num_worlds) for j in range(model.num_worlds)
             if i != j and model.relation[i][j]]
    return {
        "worlds": model.num_worlds,
        "rel": pairs,
        "vars": model.num_vars,
        "val": {f"p{v}": sorted(worlds) for v, worlds in enumerate(model.valuation)},
    }


def model_from_json(data) -> KripkeModel:
    """
    Loads a model, closing the relation reflexively and transitively.
    Variables missing from "val" are false everywhere.
    """
    if not isinstance(data, dict):
        raise ModelFormatError("model must be a JSON object")
    try:
        num_worlds = int(data["worlds"])
        pairs = [(int(i), int(j)) for i, j in data.get("rel", [])]
        num_vars = int(data.get("vars", 0))
        val = data.get("val", {})
    except (KeyError, TypeError, ValueError) as e:
        raise ModelFormatError(f"malformed model: {e}") from None
    if not isinstance(val, dict):
        raise ModelFormatError("'val' must map variable names to world lists")
    valuation = [[] for _ in range(num_vars)]
    for name, worlds in val.items():
        if not (isinstance(name, str) and name[:1] == "p" and name[1:].isdigit()):
            raise ModelFormatError(f"bad variable name {name!r}")
        index = int(name[1:])
        if index >= num_vars:
            raise ModelFormatError(f"{name} is outside the declared {num_vars} variable(s)")
        valuation[index] = [int(w) for w in worlds]
    model = make_model(num_worlds, pairs, valuation)
    violations = validate_model(model)
    if violations:
        raise ModelFormatError("model is not monotone: " + ", ".join(str(v) for v in violations), violations)
    return model
