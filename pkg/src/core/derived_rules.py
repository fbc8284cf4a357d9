"""
Catalog of derived rules and theorem schemas.

Every entry is a recipe that assembles primitive proof terms. Entries that
take proofs as hypotheses are rules: given proofs of the hypotheses in some
context, the result proves the conclusion in that same context. Entries with
no hypotheses are theorem schemas provable from the empty context.
"""
from dataclasses import dataclass
from typing import Callable, Dict, List, Sequence, Tuple

from .formula import And, Formula, Implies, Or, BOT, TOP, big_and, iff, neg
from .proof_kernel import (
    ProofTerm,
    contraction_conj,
    contraction_disj,
    exfalso,
    expansion,
    exportation,
    importation,
    modus_ponens,
    permutation_conj,
    permutation_disj,
    premise,
    syllogism,
    weakening_conj,
    weakening_disj,
)


class ArityMismatch(TypeError):
    def __init__(self, name: str, expected: str, got: str):
        super().__init__(f"{name} expects {expected}, got {got}")
        self.name = name


def chain(*proofs: ProofTerm) -> ProofTerm:
    """Left-nested syllogisms: a -> b, b -> c, ... gives a -> z."""
    result = proofs[0]
    for p in proofs[1:]:
        result = syllogism(result, p)
    return result


# === Theorem schemas ===

def identity(phi):
    """|- φ -> φ"""
    return syllogism(contraction_conj(phi), weakening_conj(phi, phi))


def top_intro():
    """|- top"""
    return exfalso(BOT)


def k_axiom(phi, psi):
    """|- φ -> (ψ -> φ)"""
    return exportation(weakening_conj(phi, psi))


def and_elim_right_thm(phi, psi):
    """|- φ & ψ -> ψ"""
    return syllogism(permutation_conj(phi, psi), weakening_conj(psi, phi))


def disj_of_and_elim_left(phi, psi, gamma):
    """|- φ & ψ -> φ | γ"""
    return syllogism(weakening_conj(phi, psi), weakening_disj(phi, gamma))


def or_intro_left(phi, psi):
    """|- φ -> φ | ψ"""
    return weakening_disj(phi, psi)


def or_intro_right(phi, psi):
    """|- ψ -> φ | ψ"""
    return syllogism(weakening_disj(psi, phi), permutation_disj(psi, phi))


def eval_thm(phi, psi):
    """|- (φ -> ψ) & φ -> ψ"""
    return importation(identity(Implies(phi, psi)))


def dni(phi):
    """|- φ -> ~~φ"""
    return exportation(syllogism(permutation_conj(phi, neg(phi)), eval_thm(phi, BOT)))


def exchange(a, b, c, p):
    """From a -> (b -> c), derive b -> (a -> c)."""
    return exportation(syllogism(permutation_conj(b, a), importation(p)))


def conj_monotone(chi, phi, psi, p):
    """From φ -> ψ, derive χ & φ -> χ & ψ."""
    return syllogism(
        permutation_conj(chi, phi),
        importation(syllogism(p, exportation(permutation_conj(psi, chi)))),
    )


def conj_intro_imp(theta, a, b, p, q):
    """From θ -> a and θ -> b, derive θ -> a & b."""
    return chain(
        contraction_conj(theta),
        conj_monotone(theta, theta, b, q),
        permutation_conj(theta, b),
        conj_monotone(b, theta, a, p),
        permutation_conj(b, a),
    )


def mp_under(theta, a, b, qa, qab):
    """From θ -> a and θ -> (a -> b), derive θ -> b."""
    return syllogism(conj_intro_imp(theta, Implies(a, b), a, qab, qa), eval_thm(a, b))


def lift(phi, psi, p):
    """From ψ, derive φ -> ψ."""
    return modus_ponens(p, k_axiom(psi, phi))


def imp_chain(phi, psi, chi):
    """|- (ψ -> χ) -> ((φ -> ψ) -> (φ -> χ))"""
    a, b = Implies(psi, chi), Implies(phi, psi)
    theta = And(And(a, b), phi)
    first = weakening_conj(And(a, b), phi)
    to_a = syllogism(first, weakening_conj(a, b))
    to_b = syllogism(first, and_elim_right_thm(a, b))
    to_phi = and_elim_right_thm(And(a, b), phi)
    reorder = conj_intro_imp(theta, And(b, phi), a, conj_intro_imp(theta, b, phi, to_b, to_phi), to_a)
    psi_then = exportation(syllogism(permutation_conj(psi, a), eval_thm(psi, chi)))
    finish = importation(syllogism(eval_thm(phi, psi), psi_then))
    return exportation(exportation(syllogism(reorder, finish)))


def pre_compose(phi, psi, chi, p):
    """From φ -> ψ, derive (ψ -> χ) -> (φ -> χ)."""
    swapped = exchange(Implies(psi, chi), Implies(phi, psi), Implies(phi, chi), imp_chain(phi, psi, chi))
    return modus_ponens(p, swapped)


def export_thm(a, b, c):
    """|- ((a & b) -> c) -> (a -> (b -> c))"""
    f = Implies(And(a, b), c)
    theta = And(And(f, a), b)
    head = weakening_conj(And(f, a), b)
    to_f = syllogism(head, weakening_conj(f, a))
    to_a = syllogism(head, and_elim_right_thm(f, a))
    to_b = and_elim_right_thm(And(f, a), b)
    to_ab = conj_intro_imp(theta, a, b, to_a, to_b)
    body = syllogism(conj_intro_imp(theta, f, And(a, b), to_f, to_ab), eval_thm(And(a, b), c))
    return exportation(exportation(body))


def import_thm(a, b, c):
    """|- (a -> (b -> c)) -> ((a & b) -> c)"""
    g = Implies(a, Implies(b, c))
    theta = And(g, And(a, b))
    to_g = weakening_conj(g, And(a, b))
    to_ab = and_elim_right_thm(g, And(a, b))
    to_a = syllogism(to_ab, weakening_conj(a, b))
    to_b = syllogism(to_ab, and_elim_right_thm(a, b))
    to_bc = syllogism(conj_intro_imp(theta, g, a, to_g, to_a), eval_thm(a, Implies(b, c)))
    body = syllogism(conj_intro_imp(theta, Implies(b, c), b, to_bc, to_b), eval_thm(b, c))
    return exportation(body)


def expand_thm(chi, alpha, beta):
    """|- (α -> β) -> ((χ | α) -> (χ | β))"""
    z = Implies(alpha, beta)
    target = Or(chi, beta)
    from_chi = syllogism(weakening_disj(chi, beta), k_axiom(target, z))
    alpha_to_beta = exportation(syllogism(permutation_conj(alpha, z), eval_thm(alpha, beta)))
    widen = modus_ponens(or_intro_right(chi, beta), imp_chain(z, beta, target))
    from_alpha = syllogism(alpha_to_beta, widen)
    return exchange(Or(chi, alpha), z, target, or_elim(chi, alpha, Implies(z, target), from_chi, from_alpha))


# === Rules ===

def and_intro(phi, psi, p, q):
    """From φ and ψ, derive φ & ψ."""
    pair = exportation(identity(And(phi, psi)))
    return modus_ponens(q, modus_ponens(p, pair))


def and_elim_left(phi, psi, p):
    """From φ & ψ, derive φ."""
    return modus_ponens(p, weakening_conj(phi, psi))


def and_elim_right(phi, psi, p):
    """From φ & ψ, derive ψ."""
    return modus_ponens(p, and_elim_right_thm(phi, psi))


def or_elim(phi, psi, chi, p, q):
    """From φ -> χ and ψ -> χ, derive φ | ψ -> χ."""
    return chain(
        expansion(phi, q),
        permutation_disj(phi, chi),
        expansion(chi, p),
        contraction_disj(chi),
    )


def neg_elim(phi, p, q):
    """From φ and ~φ, derive bot."""
    return modus_ponens(p, q)


def ex_falso(phi, p):
    """From bot, derive φ."""
    return modus_ponens(p, exfalso(phi))


def iff_intro(phi, psi, p, q):
    """From φ -> ψ and ψ -> φ, derive φ <-> ψ."""
    return and_intro(Implies(phi, psi), Implies(psi, phi), p, q)


def iff_elim_left(phi, psi, p):
    """From φ <-> ψ, derive φ -> ψ."""
    return modus_ponens(p, weakening_conj(Implies(phi, psi), Implies(psi, phi)))


def iff_elim_right(phi, psi, p):
    """From φ <-> ψ, derive ψ -> φ."""
    return modus_ponens(p, and_elim_right_thm(Implies(phi, psi), Implies(psi, phi)))


def conjunction_proof(formulas: Sequence[Formula]) -> ProofTerm:
    """Proof of big_and(formulas) from the formulas as premises."""
    formulas = list(formulas)
    result = top_intro()
    for index in reversed(range(len(formulas))):
        rest = big_and(formulas[index + 1:])
        result = and_intro(formulas[index], rest, premise(formulas[index]), result)
    return result


# === Registry ===

@dataclass(frozen=True)
class RuleSpec:
    """
    A catalog entry. `hypotheses` and `conclusion` map the instantiating
    formulas to the judgments the entry consumes and produces.
    """
    name: str
    arity: int
    hypotheses: Callable[..., Tuple[Formula, ...]]
    conclusion: Callable[..., Formula]
    build: Callable[..., ProofTerm]
    summary: str = ""


def _imp(a, b):
    return Implies(a, b)


CATALOG: Dict[str, RuleSpec] = {spec.name: spec for spec in (
    RuleSpec("identity", 1, lambda p: (), lambda p: _imp(p, p), identity, "|- φ -> φ"),
    RuleSpec("top_intro", 0, lambda: (), lambda: TOP, top_intro, "|- top"),
    RuleSpec("k_axiom", 2, lambda p, q: (), lambda p, q: _imp(p, _imp(q, p)), k_axiom,
             "|- φ -> (ψ -> φ)"),
    RuleSpec("and_intro", 2, lambda p, q: (p, q), lambda p, q: And(p, q), and_intro,
             "φ, ψ / φ & ψ"),
    RuleSpec("and_elim_left", 2, lambda p, q: (And(p, q),), lambda p, q: p, and_elim_left,
             "φ & ψ / φ"),
    RuleSpec("and_elim_right", 2, lambda p, q: (And(p, q),), lambda p, q: q, and_elim_right,
             "φ & ψ / ψ"),
    RuleSpec("and_elim_right_thm", 2, lambda p, q: (), lambda p, q: _imp(And(p, q), q),
             and_elim_right_thm, "|- φ & ψ -> ψ"),
    RuleSpec("disj_of_and_elim_left", 3, lambda p, q, r: (),
             lambda p, q, r: _imp(And(p, q), Or(p, r)), disj_of_and_elim_left,
             "|- φ & ψ -> φ | γ"),
    RuleSpec("or_intro_left", 2, lambda p, q: (), lambda p, q: _imp(p, Or(p, q)), or_intro_left,
             "|- φ -> φ | ψ"),
    RuleSpec("or_intro_right", 2, lambda p, q: (), lambda p, q: _imp(q, Or(p, q)), or_intro_right,
             "|- ψ -> φ | ψ"),
    RuleSpec("or_elim", 3, lambda p, q, r: (_imp(p, r), _imp(q, r)),
             lambda p, q, r: _imp(Or(p, q), r), or_elim, "φ -> χ, ψ -> χ / φ | ψ -> χ"),
    RuleSpec("conj_monotone", 3, lambda c, p, q: (_imp(p, q),),
             lambda c, p, q: _imp(And(c, p), And(c, q)), conj_monotone,
             "φ -> ψ / χ & φ -> χ & ψ"),
    RuleSpec("conj_intro_imp", 3, lambda t, a, b: (_imp(t, a), _imp(t, b)),
             lambda t, a, b: _imp(t, And(a, b)), conj_intro_imp, "θ -> a, θ -> b / θ -> a & b"),
    RuleSpec("imp_chain", 3, lambda p, q, r: (),
             lambda p, q, r: _imp(_imp(q, r), _imp(_imp(p, q), _imp(p, r))), imp_chain,
             "|- (ψ -> χ) -> ((φ -> ψ) -> (φ -> χ))"),
    RuleSpec("pre_compose", 3, lambda p, q, r: (_imp(p, q),),
             lambda p, q, r: _imp(_imp(q, r), _imp(p, r)), pre_compose,
             "φ -> ψ / (ψ -> χ) -> (φ -> χ)"),
    RuleSpec("eval", 2, lambda p, q: (), lambda p, q: _imp(And(_imp(p, q), p), q), eval_thm,
             "|- (φ -> ψ) & φ -> ψ"),
    RuleSpec("exchange", 3, lambda a, b, c: (_imp(a, _imp(b, c)),),
             lambda a, b, c: _imp(b, _imp(a, c)), exchange, "a -> (b -> c) / b -> (a -> c)"),
    RuleSpec("export_thm", 3, lambda a, b, c: (),
             lambda a, b, c: _imp(_imp(And(a, b), c), _imp(a, _imp(b, c))), export_thm,
             "|- ((a & b) -> c) -> (a -> (b -> c))"),
    RuleSpec("import_thm", 3, lambda a, b, c: (),
             lambda a, b, c: _imp(_imp(a, _imp(b, c)), _imp(And(a, b), c)), import_thm,
             "|- (a -> (b -> c)) -> ((a & b) -> c)"),
    RuleSpec("expand_thm", 3, lambda c, a, b: (),
             lambda c, a, b: _imp(_imp(a, b), _imp(Or(c, a), Or(c, b))), expand_thm,
             "|- (α -> β) -> ((χ | α) -> (χ | β))"),
    RuleSpec("mp_under", 3, lambda t, a, b: (_imp(t, a), _imp(t, _imp(a, b))),
             lambda t, a, b: _imp(t, b), mp_under, "θ -> a, θ -> (a -> b) / θ -> b"),
    RuleSpec("lift", 2, lambda p, q: (q,), lambda p, q: _imp(p, q), lift, "ψ / φ -> ψ"),
    RuleSpec("neg_elim", 1, lambda p: (p, neg(p)), lambda p: BOT, neg_elim, "φ, ~φ / bot"),
    RuleSpec("dni", 1, lambda p: (), lambda p: _imp(p, neg(neg(p))), dni, "|- φ -> ~~φ"),
    RuleSpec("ex_falso", 1, lambda p: (BOT,), lambda p: p, ex_falso, "bot / φ"),
    RuleSpec("iff_intro", 2, lambda p, q: (_imp(p, q), _imp(q, p)), lambda p, q: iff(p, q),
             iff_intro, "φ -> ψ, ψ -> φ / φ <-> ψ"),
    RuleSpec("iff_elim_left", 2, lambda p, q: (iff(p, q),), lambda p, q: _imp(p, q),
             iff_elim_left, "φ <-> ψ / φ -> ψ"),
    RuleSpec("iff_elim_right", 2, lambda p, q: (iff(p, q),), lambda p, q: _imp(q, p),
             iff_elim_right, "φ <-> ψ / ψ -> φ"),
)}


def catalog() -> List[RuleSpec]:
    return list(CATALOG.values())


def derived(name: str, *args) -> ProofTerm:
    """
    Instantiates a catalog entry. Formulas come first, then one proof per
    hypothesis, in the order the entry lists its hypotheses.
    """
    try:
        spec = CATALOG[name]
    except KeyError:
        raise KeyError(f"no derived rule named {name!r}") from None
    formulas, proofs = args[:spec.arity], args[spec.arity:]
    if len(formulas) != spec.arity or not all(isinstance(f, Formula) for f in formulas):
        raise ArityMismatch(name, f"{spec.arity} formula(s)", f"{len(formulas)} leading argument(s)")
    hypotheses = spec.hypotheses(*formulas)
    if len(proofs) != len(hypotheses) or not all(isinstance(p, ProofTerm) for p in proofs):
        raise ArityMismatch(name, f"{len(hypotheses)} proof(s)", f"{len(proofs)}")
    return spec.build(*formulas, *proofs)
