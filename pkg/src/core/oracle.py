"""
Certified provability oracle.

A verdict is only ever Provable with a proof term the kernel accepts, or
Refuted with a Kripke model that forces the premises at a world where the
conclusion fails. Anything else is Unknown.
"""
import os
from dataclasses import dataclass
from typing import Iterable, Optional, Union

from . import config
from .derived_rules import conjunction_proof, ex_falso, identity, lift, neg_elim, top_intro
from .formula import And, Formula, Implies, Or, BOT, TOP, render
from .kripke import KripkeModel, countermodel_search, eval_formula, forces_set, validate_model
from .logger import log_event
from .proof_kernel import (
    ProofCheckError,
    ProofTerm,
    check,
    contraction_conj,
    contraction_disj,
    exfalso,
    modus_ponens,
    permutation_conj,
    permutation_disj,
    premise,
    weakening_conj,
    weakening_disj,
)
from .sequent_search import SearchExhausted, SequentSearch, canonical_context


class ConfigError(ValueError):
    pass


class OracleInconclusive(RuntimeError):
    """A judgment needed a definitive verdict and the oracle answered Unknown."""

    def __init__(self, gamma, phi, detail=""):
        gamma_text = ", ".join(render(g) for g in gamma)
        suffix = f" ({detail})" if detail else ""
        super().__init__(f"no verdict for {{{gamma_text}}} |- {render(phi)}{suffix}")
        self.gamma = tuple(gamma)
        self.phi = phi


@dataclass(frozen=True)
class Budget:
    max_worlds: int = config.DEFAULT_MAX_WORLDS
    proof_depth: int = config.DEFAULT_PROOF_DEPTH
    max_nodes: int = config.SEARCH_NODE_LIMIT

    @classmethod
    def from_env(cls, environ=None) -> "Budget":
        """Reads IPLKIT_BUDGET ("worlds,depth"); either part may be left empty."""
        environ = os.environ if environ is None else environ
        raw = environ.get(config.BUDGET_ENV, "").strip()
        if not raw:
            return cls()
        parts = [part.strip() for part in raw.split(",")]
        if len(parts) > 2:
            raise ConfigError(f"{config.BUDGET_ENV} must be 'worlds,depth', got {raw!r}")
        try:
            worlds = int(parts[0]) if parts[0] else config.DEFAULT_MAX_WORLDS
            depth = int(parts[1]) if len(parts) > 1 and parts[1] else config.DEFAULT_PROOF_DEPTH
        except ValueError:
            raise ConfigError(f"{config.BUDGET_ENV} must hold integers, got {raw!r}") from None
        if worlds < 1 or depth < 1:
            raise ConfigError(f"{config.BUDGET_ENV} bounds must be positive, got {raw!r}")
        return cls(max_worlds=worlds, proof_depth=depth)

    def describe(self) -> str:
        return f"worlds<={self.max_worlds}, depth<={self.proof_depth}, sequents<={self.max_nodes}"


@dataclass(frozen=True)
class Provable:
    witness: Optional[ProofTerm]


@dataclass(frozen=True)
class Refuted:
    model: KripkeModel
    world: int


@dataclass(frozen=True)
class Unknown:
    budget: str


ProvabilityVerdict = Union[Provable, Refuted, Unknown]


# === Fast paths ===

def match_axiom(phi: Formula) -> Optional[ProofTerm]:
    """The axiom node concluding exactly `phi`, if `phi` is an axiom instance."""
    if not isinstance(phi, Implies):
        return None
    a, b = phi.lhs, phi.rhs
    if a == BOT:
        return exfalso(b)
    if isinstance(a, Or) and a.lhs == a.rhs == b:
        return contraction_disj(b)
    if isinstance(b, And) and b.lhs == b.rhs == a:
        return contraction_conj(a)
    if isinstance(b, Or) and b.lhs == a:
        return weakening_disj(a, b.rhs)
    if isinstance(a, And) and a.lhs == b:
        return weakening_conj(b, a.rhs)
    if isinstance(a, Or) and isinstance(b, Or) and (a.lhs, a.rhs) == (b.rhs, b.lhs):
        return permutation_disj(a.lhs, a.rhs)
    if isinstance(a, And) and isinstance(b, And) and (a.lhs, a.rhs) == (b.rhs, b.lhs):
        return permutation_conj(a.lhs, a.rhs)
    return None


def fast_proof(gamma, phi: Formula) -> Optional[ProofTerm]:
    """Short catalog proofs for the judgments that come up most often."""
    if phi in gamma:
        return premise(phi)
    if BOT in gamma:
        return ex_falso(phi, premise(BOT))
    if phi == TOP:
        return top_intro()
    axiom = match_axiom(phi)
    if axiom is not None:
        return axiom
    if isinstance(phi, Implies):
        if phi.lhs == phi.rhs:
            return identity(phi.lhs)
        if phi.rhs in gamma:
            return lift(phi.lhs, phi.rhs, premise(phi.rhs))
    if phi == BOT:
        for a in gamma:
            if Implies(a, BOT) in gamma:
                return neg_elim(a, premise(a), premise(Implies(a, BOT)))
    for a in gamma:
        if Implies(a, phi) in gamma:
            return modus_ponens(premise(a), premise(Implies(a, phi)))
    return None


# === Oracle ===

class Oracle:
    """
    Provability oracle with a fixed budget. Verdicts are memoized, and the
    sequent search session is shared between queries.
    """

    def __init__(self, budget: Optional[Budget] = None):
        self.budget = budget or Budget.from_env()
        self._search = SequentSearch(self.budget.proof_depth, self.budget.max_nodes)
        self._verdicts = {}

    def __call__(self, gamma: Iterable[Formula], phi: Formula) -> ProvabilityVerdict:
        return self.provable(gamma, phi)

    def provable(self, gamma: Iterable[Formula], phi: Formula) -> ProvabilityVerdict:
        ctx = canonical_context(gamma)
        key = (ctx, phi)
        if key not in self._verdicts:
            self._verdicts[key] = self._decide(ctx, phi)
        return self._verdicts[key]

    def definitive(self, gamma: Iterable[Formula], phi: Formula) -> Union[Provable, Refuted]:
        """Like provable(), but Unknown raises OracleInconclusive."""
        verdict = self.provable(gamma, phi)
        if isinstance(verdict, Unknown):
            raise OracleInconclusive(canonical_context(gamma), phi, verdict.budget)
        return verdict

    def _decide(self, ctx, phi) -> ProvabilityVerdict:
        proof = fast_proof(ctx, phi)
        source = "catalog"
        exhausted = False
        if proof is None:
            source = "search"
            self._search.nodes = 0
            try:
                found = self._search.prove(ctx, phi)
            except SearchExhausted as e:
                found = None
                exhausted = True
                log_event("Sequent search exhausted", level="WARNING",
                          gamma=[render(g) for g in ctx], formula=render(phi), reason=str(e))
            if found is not None:
                proof = modus_ponens(conjunction_proof(ctx), found)

        if proof is not None:
            try:
                if check(ctx, proof) == phi:
                    self._log(ctx, phi, "provable", source=source)
                    return Provable(proof)
            except ProofCheckError as e:
                log_event("Oracle produced a rejected proof", level="ERROR",
                          gamma=[render(g) for g in ctx], formula=render(phi), error=str(e))
            # never trust a witness the kernel rejects
            proof = None

        hit = countermodel_search(ctx, phi, self.budget.max_worlds)
        if hit is not None:
            model, world = hit
            self._log(ctx, phi, "refuted", worlds=model.num_worlds, world=world)
            return Refuted(model, world)

        detail = self.budget.describe()
        if not exhausted:
            detail += "; no derivation exists, countermodel needs more worlds"
        self._log(ctx, phi, "unknown", detail=detail)
        return Unknown(detail)

    def _log(self, ctx, phi, verdict, **fields):
        log_event("Oracle verdict", level="DEBUG",
                  gamma=[render(g) for g in ctx], formula=render(phi), verdict=verdict, **fields)


def oracle_provable(gamma: Iterable[Formula], phi: Formula, budget: Optional[Budget] = None) -> ProvabilityVerdict:
    return Oracle(budget).provable(gamma, phi)


def certificate_valid(gamma: Iterable[Formula], phi: Formula, verdict: ProvabilityVerdict) -> bool:
    """Re-checks a verdict's certificate independently of how it was found."""
    gamma = list(gamma)
    if isinstance(verdict, Provable):
        if verdict.witness is None:
            return False
        try:
            return check(gamma, verdict.witness) == phi
        except ProofCheckError:
            return False
    if isinstance(verdict, Refuted):
        return (not validate_model(verdict.model)
                and forces_set(verdict.model, verdict.world, gamma)
                and not eval_formula(verdict.model, verdict.world, phi))
    return True
