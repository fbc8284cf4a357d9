"""
Command Handlers for the iplkit CLI.
Each handler prints one JSON document on stdout and returns the exit status.
"""
import json
import re

from ..core import config
from ..core.algebra_catalog import by_name, catalog
from ..core.formula import all_formulas, decode, depth, encode, parse, parse_list, render, sorted_formulas, variables
from ..core.heyting import (
    Interpretation,
    algebra_from_json,
    algebra_to_json,
    all_assignments,
    filters,
    interpret,
    is_prime,
    is_proper,
    prime_filters,
    super_prime_filter,
    true_in_alg_model,
)
from ..core.kripke import countermodel_search, eval_formula, model_from_json, model_to_json, models_up_to
from ..core.lindenbaum import build_quotient
from ..core.logger import log_event, read_latest_logs
from ..core.oracle import Budget, Oracle, Provable, Refuted
from ..core.proof_kernel import ProofCheckError, check, proof_from_json, proof_size, proof_to_json
from ..core.semantic_bridge import PrimeFilterFrame, closed_set_algebra, validity_equiv_harness
from ..core.theories import FormulaPair, canonical_universe, pair_consistent, saturation_trace

VARIABLE_NAME = re.compile(r"p[0-9]+")


def _emit(document):
    print(json.dumps(document, indent=2))


def _load_json(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _load_algebra(source):
    """A catalog name (C3, B4, ...) or a path to algebra JSON."""
    named = by_name()
    if source in named:
        return named[source]
    return algebra_from_json(_load_json(source))


def _parse_assignment(algebra, text) -> Interpretation:
    """'p0=a,p1=1' with element labels of the algebra."""
    mapping = {}
    for item in (part.strip() for part in text.split(",")):
        if not item:
            continue
        name, sep, value = item.partition("=")
        name = name.strip()
        if not sep or not VARIABLE_NAME.fullmatch(name):
            raise ValueError(f"bad assignment {item!r}, expected pN=element")
        mapping[int(name[1:])] = algebra.element(value.strip())
    return Interpretation(algebra, mapping)


def _elements(algebra, text):
    return frozenset(algebra.element(part.strip()) for part in text.split(",") if part.strip())


def _report(verdict, show_proof=False) -> int:
    if isinstance(verdict, Provable):
        document = {"status": "provable", "proof_size": proof_size(verdict.witness)}
        if show_proof:
            document["proof"] = proof_to_json(verdict.witness)
        _emit(document)
        return config.EXIT_POSITIVE
    if isinstance(verdict, Refuted):
        _emit({"status": "refuted", "world": verdict.world, "model": model_to_json(verdict.model)})
        return config.EXIT_NEGATIVE
    _emit({"status": "unknown", "detail": verdict.budget})
    return config.EXIT_UNKNOWN


# === Formulas ===

def handle_parse(text):
    """
    Parses a formula and prints its canonical rendering.

    Args:
        text (str): Formula in the concrete syntax.
    """
    phi = parse(text)
    _emit({"input": text, "formula": render(phi), "depth": depth(phi), "code": encode(phi)})
    return config.EXIT_POSITIVE


def handle_encode(text):
    phi = parse(text)
    _emit({"formula": render(phi), "code": encode(phi)})
    return config.EXIT_POSITIVE


def handle_decode(code):
    """Exit 1 when the number encodes no formula."""
    if code < 0:
        raise ValueError("codes are non-negative")
    phi = decode(code)
    _emit({"code": code, "formula": None if phi is None else render(phi)})
    return config.EXIT_NEGATIVE if phi is None else config.EXIT_POSITIVE


def handle_universe(num_vars, max_depth):
    universe = canonical_universe(num_vars, max_depth)
    _emit({"vars": num_vars, "depth": max_depth, "size": len(universe),
           "formulas": [render(phi) for phi in universe]})
    return config.EXIT_POSITIVE


# === Proofs and models ===

def handle_check_proof(path, gamma_text):
    """
    Checks a proof file against the premises.

    Args:
        path (str): Proof JSON file.
        gamma_text (str): Comma-separated premises.
    """
    gamma = parse_list(gamma_text)
    proof = proof_from_json(_load_json(path))
    try:
        conclusion = check(gamma, proof)
    except ProofCheckError as e:
        log_event("Proof rejected", level="WARNING", proof=path, error=str(e))
        _emit({"valid": False, "error": str(e), "path": list(e.path)})
        return config.EXIT_NEGATIVE
    _emit({"valid": True, "conclusion": render(conclusion), "size": proof_size(proof)})
    return config.EXIT_POSITIVE


def handle_eval(model_path, world, text):
    model = model_from_json(_load_json(model_path))
    phi = parse(text)
    forced = eval_formula(model, world, phi)
    _emit({"formula": render(phi), "world": world, "forced": forced})
    return config.EXIT_POSITIVE if forced else config.EXIT_NEGATIVE


def handle_valid(text, gamma_text, model_path=None, show_proof=False):
    """
    Without a model, asks the provability oracle whether gamma |- formula.
    With a model, checks that every world forcing gamma forces the formula.
    """
    phi = parse(text)
    gamma = parse_list(gamma_text)
    if model_path is None:
        return _report(Oracle().provable(gamma, phi), show_proof)

    model = model_from_json(_load_json(model_path))
    refuting = [w for w in range(model.num_worlds)
                if all(eval_formula(model, w, g) for g in gamma) and not eval_formula(model, w, phi)]
    _emit({"formula": render(phi), "valid": not refuting, "refuting_worlds": refuting})
    return config.EXIT_NEGATIVE if refuting else config.EXIT_POSITIVE


def handle_countermodel(text, gamma_text, max_worlds=None):
    """Exit 3 when no countermodel exists within the bound; that is not a proof."""
    phi = parse(text)
    gamma = parse_list(gamma_text)
    if max_worlds is None:
        max_worlds = Budget.from_env().max_worlds
    hit = countermodel_search(gamma, phi, max_worlds)
    if hit is None:
        _emit({"formula": render(phi), "countermodel": None, "max_worlds": max_worlds})
        return config.EXIT_UNKNOWN
    model, world = hit
    _emit({"formula": render(phi), "world": world, "countermodel": model_to_json(model)})
    return config.EXIT_NEGATIVE


# === Algebras ===

def handle_alg_eval(source, assignment, text):
    algebra = _load_algebra(source)
    interp = _parse_assignment(algebra, assignment)
    phi = parse(text)
    value = interpret(interp, phi)
    _emit({"formula": render(phi), "assignment": interp.to_json(),
           "value": algebra.label(value), "top": value == algebra.top})
    return config.EXIT_POSITIVE if value == algebra.top else config.EXIT_NEGATIVE


def handle_alg_valid(source, text):
    algebra = _load_algebra(source)
    phi = parse(text)
    indices = sorted(v.index for v in variables(phi))
    for interp in all_assignments(algebra, indices):
        if not true_in_alg_model(interp, phi):
            _emit({"formula": render(phi), "valid": False, "assignment": interp.to_json(),
                   "value": algebra.label(interpret(interp, phi))})
            return config.EXIT_NEGATIVE
    _emit({"formula": render(phi), "valid": True})
    return config.EXIT_POSITIVE


def handle_filters(source):
    algebra = _load_algebra(source)
    _emit({"algebra": str(algebra), "filters": [
        {"elements": algebra.show(f), "proper": is_proper(algebra, f), "prime": is_prime(algebra, f)}
        for f in filters(algebra)
    ]})
    return config.EXIT_POSITIVE


def handle_prime_filters(source):
    algebra = _load_algebra(source)
    _emit({"algebra": str(algebra), "prime_filters": [algebra.show(f) for f in prime_filters(algebra)]})
    return config.EXIT_POSITIVE


def handle_super_prime(source, filter_text, avoid):
    algebra = _load_algebra(source)
    start = _elements(algebra, filter_text) if filter_text else frozenset({algebra.top})
    x = algebra.element(avoid)
    result = super_prime_filter(algebra, start, x)
    _emit({"filter": algebra.show(start), "avoid": algebra.label(x), "prime_filter": algebra.show(result)})
    return config.EXIT_POSITIVE


# === Bridge ===

def handle_bridge(direction, source, assignment=""):
    if direction == "k2a":
        model = model_from_json(_load_json(source))
        _emit(algebra_to_json(closed_set_algebra(model).algebra))
        return config.EXIT_POSITIVE

    algebra = _load_algebra(source)
    frame = PrimeFilterFrame.build(algebra, _parse_assignment(algebra, assignment or ""))
    document = model_to_json(frame.model)
    document["filters"] = [algebra.show(f) for f in frame.filters]
    _emit(document)
    return config.EXIT_POSITIVE


# === Theories ===

def handle_saturate_pair(left_text, right_text, num_vars, max_depth, show_trace=False):
    """
    Saturates (left, right) over the canonical universe. A pair that is
    inconsistent to begin with exits 1 with the offending sub-pair.
    """
    pair = FormulaPair.of(parse_list(left_text), parse_list(right_text))
    universe = canonical_universe(num_vars, max_depth)
    oracle = Oracle()
    start = pair_consistent(pair, oracle)
    if start.fails:
        _emit({"consistent": False, "witness": start.witness.to_json()})
        return config.EXIT_NEGATIVE
    if start.unknown:
        _emit({"status": "unknown", "detail": start.detail})
        return config.EXIT_UNKNOWN

    trace = saturation_trace(pair, universe, oracle)
    document = {"consistent": True, "universe": len(universe), "pair": trace[-1].to_json()}
    if show_trace:
        document["trace"] = [step.to_json() for step in trace]
    _emit(document)
    return config.EXIT_POSITIVE


def handle_quotient(gamma_text, num_vars, max_depth):
    table = build_quotient(parse_list(gamma_text), canonical_universe(num_vars, max_depth), Oracle())
    _emit(table.to_json())
    return config.EXIT_POSITIVE


def handle_harness(num_vars, max_depth, max_worlds):
    formulas = sorted_formulas(all_formulas(range(num_vars), max_depth))
    report = validity_equiv_harness(formulas, list(models_up_to(num_vars, max_worlds)), catalog())
    _emit(report.to_json())
    return config.EXIT_POSITIVE if report.ok else config.EXIT_NEGATIVE


def handle_logs(n):
    _emit(read_latest_logs(n))
    return config.EXIT_POSITIVE
