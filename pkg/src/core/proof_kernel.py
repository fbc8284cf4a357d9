"""
Hilbert-style derivations in Gödel's axiomatization of intuitionistic logic.

A ProofTerm stores the formulas that instantiate each axiom, so checking is
a plain bottom-up fold: every node's conclusion is determined by its rule,
its formulas and the conclusions of its subproofs.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Tuple

from .formula import And, Formula, Implies, Or, FormulaSyntaxError, parse, render, BOT


class Rule(Enum):
    PREMISE = "premise"
    CONTRACTION_DISJ = "contraction_disj"
    CONTRACTION_CONJ = "contraction_conj"
    WEAKENING_DISJ = "weakening_disj"
    WEAKENING_CONJ = "weakening_conj"
    PERMUTATION_DISJ = "permutation_disj"
    PERMUTATION_CONJ = "permutation_conj"
    EXFALSO = "exfalso"
    MODUS_PONENS = "modus_ponens"
    SYLLOGISM = "syllogism"
    EXPORTATION = "exportation"
    IMPORTATION = "importation"
    EXPANSION = "expansion"


# rule -> (number of formulas, number of subproofs)
ARITY = {
    Rule.PREMISE: (1, 0),
    Rule.CONTRACTION_DISJ: (1, 0),
    Rule.CONTRACTION_CONJ: (1, 0),
    Rule.WEAKENING_DISJ: (2, 0),
    Rule.WEAKENING_CONJ: (2, 0),
    Rule.PERMUTATION_DISJ: (2, 0),
    Rule.PERMUTATION_CONJ: (2, 0),
    Rule.EXFALSO: (1, 0),
    Rule.MODUS_PONENS: (0, 2),
    Rule.SYLLOGISM: (0, 2),
    Rule.EXPORTATION: (0, 1),
    Rule.IMPORTATION: (0, 1),
    Rule.EXPANSION: (1, 1),
}


class ProofCheckError(ValueError):
    """Base class for rejected proofs. `path` lists child indices from the root to the bad node."""

    def __init__(self, message: str, path: Tuple[int, ...]):
        super().__init__(f"{message} at node {list(path)}")
        self.path = tuple(path)


class PremiseNotInContext(ProofCheckError):
    def __init__(self, formula: Formula, path=()):
        super().__init__(f"premise {render(formula)!r} is not in the context", path)
        self.formula = formula


class RuleShapeMismatch(ProofCheckError):
    def __init__(self, rule: Rule, found: Formula, path=(), expected: str = ""):
        detail = f", expected {expected}" if expected else ""
        super().__init__(f"{rule.value} cannot use {render(found)!r}{detail}", path)
        self.rule = rule
        self.found = found


class MalformedProof(ProofCheckError):
    pass


@dataclass(frozen=True)
class ProofTerm:
    rule: Rule
    formulas: Tuple[Formula, ...] = ()
    subproofs: Tuple["ProofTerm", ...] = ()

    def __repr__(self):
        parts = [render(f) for f in self.formulas] + [repr(p) for p in self.subproofs]
        return f"{self.rule.value}({', '.join(parts)})"


@dataclass(frozen=True)
class Judgment:
    premises: frozenset
    conclusion: Formula

    def __str__(self):
        gamma = ", ".join(sorted(render(f) for f in self.premises))
        return f"{gamma} |- {render(self.conclusion)}"


# === Constructors ===

def premise(phi):
    return ProofTerm(Rule.PREMISE, (phi,))


def contraction_disj(phi):
    return ProofTerm(Rule.CONTRACTION_DISJ, (phi,))


def contraction_conj(phi):
    return ProofTerm(Rule.CONTRACTION_CONJ, (phi,))


def weakening_disj(phi, psi):
    return ProofTerm(Rule.WEAKENING_DISJ, (phi, psi))


def weakening_conj(phi, psi):
    return ProofTerm(Rule.WEAKENING_CONJ, (phi, psi))


def permutation_disj(phi, psi):
    return ProofTerm(Rule.PERMUTATION_DISJ, (phi, psi))


def permutation_conj(phi, psi):
    return ProofTerm(Rule.PERMUTATION_CONJ, (phi, psi))


def exfalso(phi):
    return ProofTerm(Rule.EXFALSO, (phi,))


def modus_ponens(p1, p2):
    """From a proof of φ and a proof of φ -> ψ."""
    return ProofTerm(Rule.MODUS_PONENS, (), (p1, p2))


def syllogism(p1, p2):
    """From proofs of φ -> ψ and ψ -> χ."""
    return ProofTerm(Rule.SYLLOGISM, (), (p1, p2))


def exportation(p):
    return ProofTerm(Rule.EXPORTATION, (), (p,))


def importation(p):
    return ProofTerm(Rule.IMPORTATION, (), (p,))


def expansion(chi, p):
    return ProofTerm(Rule.EXPANSION, (chi,), (p,))


# === Checking ===

def axiom_conclusion(rule: Rule, formulas) -> Formula:
    """The schema instance an axiom node concludes."""
    if rule is Rule.CONTRACTION_DISJ:
        (phi,) = formulas
        return Implies(Or(phi, phi), phi)
    if rule is Rule.CONTRACTION_CONJ:
        (phi,) = formulas
        return Implies(phi, And(phi, phi))
    if rule is Rule.WEAKENING_DISJ:
        phi, psi = formulas
        return Implies(phi, Or(phi, psi))
    if rule is Rule.WEAKENING_CONJ:
        phi, psi = formulas
        return Implies(And(phi, psi), phi)
    if rule is Rule.PERMUTATION_DISJ:
        phi, psi = formulas
        return Implies(Or(phi, psi), Or(psi, phi))
    if rule is Rule.PERMUTATION_CONJ:
        phi, psi = formulas
        return Implies(And(phi, psi), And(psi, phi))
    if rule is Rule.EXFALSO:
        (phi,) = formulas
        return Implies(BOT, phi)
    raise ValueError(f"{rule.value} is not an axiom")


AXIOMS = (
    Rule.CONTRACTION_DISJ, Rule.CONTRACTION_CONJ,
    Rule.WEAKENING_DISJ, Rule.WEAKENING_CONJ,
    Rule.PERMUTATION_DISJ, Rule.PERMUTATION_CONJ,
    Rule.EXFALSO,
)


def infer(rule: Rule, formulas, conclusions, path=()) -> Formula:
    """
    Conclusion of a single node from its rule, formulas and the conclusions
    of its subproofs. Premise membership is the caller's concern.
    """
    expected_formulas, expected_subproofs = ARITY[rule]
    if len(formulas) != expected_formulas or len(conclusions) != expected_subproofs:
        raise MalformedProof(
            f"{rule.value} takes {expected_formulas} formula(s) and {expected_subproofs} subproof(s), "
            f"got {len(formulas)} and {len(conclusions)}", path)
    for phi in formulas:
        if not isinstance(phi, Formula):
            raise MalformedProof(f"{rule.value} carries a non-formula {phi!r}", path)

    if rule is Rule.PREMISE:
        return formulas[0]
    if rule in AXIOMS:
        return axiom_conclusion(rule, formulas)

    if rule is Rule.MODUS_PONENS:
        minor, major = conclusions
        if not isinstance(major, Implies) or major.lhs != minor:
            raise RuleShapeMismatch(rule, major, path, f"{render(minor)!r} -> ...")
        return major.rhs

    if rule is Rule.SYLLOGISM:
        first, second = conclusions
        if not isinstance(first, Implies):
            raise RuleShapeMismatch(rule, first, path, "an implication")
        if not isinstance(second, Implies) or second.lhs != first.rhs:
            raise RuleShapeMismatch(rule, second, path, f"{render(first.rhs)!r} -> ...")
        return Implies(first.lhs, second.rhs)

    (found,) = conclusions
    if rule is Rule.EXPORTATION:
        if not (isinstance(found, Implies) and isinstance(found.lhs, And)):
            raise RuleShapeMismatch(rule, found, path, "(a & b) -> c")
        return Implies(found.lhs.lhs, Implies(found.lhs.rhs, found.rhs))
    if rule is Rule.IMPORTATION:
        if not (isinstance(found, Implies) and isinstance(found.rhs, Implies)):
            raise RuleShapeMismatch(rule, found, path, "a -> (b -> c)")
        return Implies(And(found.lhs, found.rhs.lhs), found.rhs.rhs)
    if rule is Rule.EXPANSION:
        if not isinstance(found, Implies):
            raise RuleShapeMismatch(rule, found, path, "an implication")
        chi = formulas[0]
        return Implies(Or(chi, found.lhs), Or(chi, found.rhs))
    raise MalformedProof(f"unknown rule {rule!r}", path)


def check(gamma: Iterable[Formula], proof: ProofTerm) -> Formula:
    """
    Returns the conclusion of `proof` relative to the premises `gamma`.

    Shared subterms are checked once. Errors name the first path to the
    offending node in a left-to-right traversal.
    """
    gamma = frozenset(gamma)
    memo = {}
    stack = [(proof, (), False)]
    while stack:
        node, path, expanded = stack.pop()
        if id(node) in memo:
            continue
        if not isinstance(node, ProofTerm) or not isinstance(node.rule, Rule):
            raise MalformedProof(f"not a proof term: {node!r}", path)
        if not expanded:
            stack.append((node, path, True))
            for index in reversed(range(len(node.subproofs))):
                stack.append((node.subproofs[index], path + (index,), False))
            continue
        conclusions = [memo[id(child)] for child in node.subproofs]
        if node.rule is Rule.PREMISE and node.formulas and node.formulas[0] not in gamma:
            raise PremiseNotInContext(node.formulas[0], path)
        memo[id(node)] = infer(node.rule, node.formulas, conclusions, path)
    return memo[id(proof)]


def judge(gamma: Iterable[Formula], proof: ProofTerm) -> Judgment:
    gamma = frozenset(gamma)
    return Judgment(gamma, check(gamma, proof))


def weaken(gamma: Iterable[Formula], wider: Iterable[Formula], proof: ProofTerm) -> ProofTerm:
    """
    The same proof term, valid against the larger context `wider`.
    """
    gamma, wider = frozenset(gamma), frozenset(wider)
    if not gamma <= wider:
        missing = ", ".join(render(f) for f in gamma - wider)
        raise ValueError(f"weakening must enlarge the context; missing {missing}")
    check(gamma, proof)
    return proof


def premises_used(proof: ProofTerm) -> frozenset:
    found = set()
    seen = set()
    stack = [proof]
    while stack:
        node = stack.pop()
        if id(node) in seen:
            continue
        seen.add(id(node))
        if node.rule is Rule.PREMISE:
            found.add(node.formulas[0])
        stack.extend(node.subproofs)
    return frozenset(found)


def proof_size(proof: ProofTerm) -> int:
    """Number of nodes of the proof read as a tree."""
    sizes = {}
    stack = [(proof, False)]
    while stack:
        node, expanded = stack.pop()
        if id(node) in sizes:
            continue
        if not expanded:
            stack.append((node, True))
            stack.extend((child, False) for child in node.subproofs)
            continue
        sizes[id(node)] = 1 + sum(sizes[id(child)] for child in node.subproofs)
    return sizes[id(proof)]


# === JSON ===

def proof_to_json(proof: ProofTerm) -> dict:
    return {
        "rule": proof.rule.value,
        "formulas": [render(f) for f in proof.formulas],
        "subproofs": [proof_to_json(p) for p in proof.subproofs],
    }


def proof_from_json(data, path=()) -> ProofTerm:
    if not isinstance(data, dict) or "rule" not in data:
        raise MalformedProof("proof node must be an object with a 'rule' key", path)
    try:
        rule = Rule(data["rule"])
    except ValueError:
        raise MalformedProof(f"unknown rule {data['rule']!r}", path) from None
    try:
        formulas = tuple(parse(text) for text in data.get("formulas", []))
    except (FormulaSyntaxError, TypeError) as e:
        raise MalformedProof(f"bad formula in {rule.value}: {e}", path) from None
    subproofs = tuple(proof_from_json(child, path + (index,))
                      for index, child in enumerate(data.get("subproofs", [])))
    expected_formulas, expected_subproofs = ARITY[rule]
    if len(formulas) != expected_formulas or len(subproofs) != expected_subproofs:
        raise MalformedProof(
            f"{rule.value} takes {expected_formulas} formula(s) and {expected_subproofs} subproof(s)", path)
    return ProofTerm(rule, formulas, subproofs)
