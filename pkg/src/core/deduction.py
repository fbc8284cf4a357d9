"""
The deduction theorem as a proof transformation: a proof of ψ from Γ ∪ {φ}
becomes a proof of φ -> ψ from Γ.
"""
from typing import Iterable

from .derived_rules import (
    export_thm,
    expand_thm,
    identity,
    imp_chain,
    import_thm,
    lift,
    mp_under,
)
from .formula import And, Formula, Implies, Or
from .logger import log_event
from .proof_kernel import AXIOMS, ProofTerm, Rule, check, infer, proof_size


def deduction_theorem(gamma: Iterable[Formula], phi: Formula, proof: ProofTerm) -> ProofTerm:
    """
    Discharges the hypothesis `phi` from `proof`.

    Subproofs that never use `phi` are kept whole and lifted with the K
    axiom; the rest are rebuilt rule by rule under the hypothesis.
    """
    gamma = frozenset(gamma)
    check(gamma | {phi}, proof)

    conclusions = {}
    uses = {}
    rebuilt = {}
    stack = [(proof, False)]
    while stack:
        node, expanded = stack.pop()
        if id(node) in rebuilt:
            continue
        if not expanded:
            stack.append((node, True))
            stack.extend((child, False) for child in node.subproofs)
            continue

        children = node.subproofs
        conclusion = infer(node.rule, node.formulas, [conclusions[id(c)] for c in children])
        conclusions[id(node)] = conclusion
        uses[id(node)] = (node.rule is Rule.PREMISE and conclusion == phi) or any(uses[id(c)] for c in children)

        if not uses[id(node)]:
            rebuilt[id(node)] = lift(phi, conclusion, node)
        elif node.rule is Rule.PREMISE:
            rebuilt[id(node)] = identity(phi)
        else:
            rebuilt[id(node)] = _discharge(phi, node, [conclusions[id(c)] for c in children],
                                           [rebuilt[id(c)] for c in children])

    result = rebuilt[id(proof)]
    log_event("Deduction theorem applied", level="DEBUG",
              hypothesis=str(phi), size_in=proof_size(proof), size_out=proof_size(result))
    return result


def _discharge(phi, node, found, under):
    """Rebuilds one rule application beneath the hypothesis `phi`."""
    rule = node.rule
    if rule in AXIOMS:
        raise AssertionError("axiom nodes never use the hypothesis")

    if rule is Rule.MODUS_PONENS:
        alpha, major = found
        return mp_under(phi, alpha, major.rhs, under[0], under[1])

    if rule is Rule.SYLLOGISM:
        first, second = found
        a, b, c = first.lhs, first.rhs, second.rhs
        chain_thm = imp_chain(a, b, c)
        composed = Implies(Implies(a, b), Implies(a, c))
        step = mp_under(phi, second, composed, under[1], lift(phi, Implies(second, composed), chain_thm))
        return mp_under(phi, first, Implies(a, c), under[0], step)

    (inner,) = found
    (q,) = under
    if rule is Rule.EXPORTATION:
        a, b, c = inner.lhs.lhs, inner.lhs.rhs, inner.rhs
        target = Implies(a, Implies(b, c))
        return mp_under(phi, inner, target, q, lift(phi, Implies(inner, target), export_thm(a, b, c)))
    if rule is Rule.IMPORTATION:
        a, b, c = inner.lhs, inner.rhs.lhs, inner.rhs.rhs
        target = Implies(And(a, b), c)
        return mp_under(phi, inner, target, q, lift(phi, Implies(inner, target), import_thm(a, b, c)))
    if rule is Rule.EXPANSION:
        chi = node.formulas[0]
        a, b = inner.lhs, inner.rhs
        target = Implies(Or(chi, a), Or(chi, b))
        return mp_under(phi, inner, target, q, lift(phi, Implies(inner, target), expand_thm(chi, a, b)))
    raise AssertionError(f"unhandled rule {rule.value}")