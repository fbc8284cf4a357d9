"""
CLI Entry Point for iplkit.
Handles command-line parsing and dispatches to corresponding command handlers.
"""

import argparse
import json
import sys

from ..core import config
from ..core.logger import log_event
from ..core.oracle import OracleInconclusive
from .commands import (
    handle_parse,
    handle_encode,
    handle_decode,
    handle_universe,
    handle_check_proof,
    handle_eval,
    handle_valid,
    handle_countermodel,
    handle_alg_eval,
    handle_alg_valid,
    handle_filters,
    handle_prime_filters,
    handle_super_prime,
    handle_bridge,
    handle_saturate_pair,
    handle_quotient,
    handle_harness,
    handle_logs,
)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="iplkit",
        description="iplkit: proofs, Kripke models and Heyting algebras for intuitionistic propositional logic"
    )

    subparsers = parser.add_subparsers(dest='command', required=True)

    # Formulas
    parse_parser = subparsers.add_parser('parse', help='Parse a formula and print its canonical form')
    parse_parser.add_argument('formula', help='Formula, e.g. "p0 & p1 -> p0"')

    encode_parser = subparsers.add_parser('encode', help='Print the number encoding a formula')
    encode_parser.add_argument('formula', help='Formula to encode')

    decode_parser = subparsers.add_parser('decode', help='Print the formula a number encodes, if any')
    decode_parser.add_argument('code', type=int, help='Non-negative code')

    universe_parser = subparsers.add_parser('universe', help='List all formulas over K variables up to depth D')
    universe_parser.add_argument('vars', type=int, help='Number of variables K (p0..pK-1)')
    universe_parser.add_argument('depth', type=int, help='Connective depth bound D')

    # Proofs and models
    check_parser = subparsers.add_parser('check-proof', help='Check a proof JSON file')
    check_parser.add_argument('proof', help='Path to the proof JSON')
    check_parser.add_argument('--gamma', default='', help='Comma-separated premises')

    eval_parser = subparsers.add_parser('eval', help='Evaluate a formula at a world of a model')
    eval_parser.add_argument('model', help='Path to the model JSON')
    eval_parser.add_argument('world', type=int, help='World index')
    eval_parser.add_argument('formula', help='Formula to evaluate')

    valid_parser = subparsers.add_parser('valid', help='Decide gamma |- formula, or validity in one model')
    valid_parser.add_argument('formula', help='Conclusion')
    valid_parser.add_argument('--gamma', default='', help='Comma-separated premises')
    valid_parser.add_argument('--model', default=None, help='Check only this model JSON')
    valid_parser.add_argument('--show-proof', action='store_true', help='Include the proof term in the output')

    counter_parser = subparsers.add_parser('countermodel', help='Search for a Kripke countermodel')
    counter_parser.add_argument('formula', help='Formula to refute')
    counter_parser.add_argument('--gamma', default='', help='Comma-separated premises')
    counter_parser.add_argument('--max-worlds', type=int, default=None, help='World bound (default from IPLKIT_BUDGET)')

    # Algebras
    alg_eval_parser = subparsers.add_parser('alg-eval', help='Interpret a formula in a Heyting algebra')
    alg_eval_parser.add_argument('algebra', help='Catalog name (C2, C3, B4, ...) or algebra JSON path')
    alg_eval_parser.add_argument('assignment', help='Variable assignment, e.g. "p0=a,p1=1"')
    alg_eval_parser.add_argument('formula', help='Formula to interpret')

    alg_valid_parser = subparsers.add_parser('alg-valid', help='Check a formula under every assignment')
    alg_valid_parser.add_argument('algebra', help='Catalog name or algebra JSON path')
    alg_valid_parser.add_argument('formula', help='Formula to check')

    filters_parser = subparsers.add_parser('filters', help='List the filters of an algebra')
    filters_parser.add_argument('algebra', help='Catalog name or algebra JSON path')

    prime_parser = subparsers.add_parser('prime-filters', help='List the prime filters of an algebra')
    prime_parser.add_argument('algebra', help='Catalog name or algebra JSON path')

    super_parser = subparsers.add_parser('super-prime', help='Extend a filter to a prime filter avoiding an element')
    super_parser.add_argument('algebra', help='Catalog name or algebra JSON path')
    super_parser.add_argument('--filter', default='', help='Comma-separated filter elements (default: top)')
    super_parser.add_argument('--avoid', required=True, help='Element the prime filter must avoid')

    # Bridge
    bridge_parser = subparsers.add_parser('bridge', help='Closed-set algebra of a model, or prime filter frame of an algebra')
    bridge_parser.add_argument('direction', choices=['k2a', 'a2k'], help='k2a: model -> algebra, a2k: algebra -> model')
    bridge_parser.add_argument('source', help='Model JSON (k2a) or algebra (a2k)')
    bridge_parser.add_argument('assignment', nargs='?', default='', help='Assignment for a2k, e.g. "p0=a"')

    # Theories
    saturate_parser = subparsers.add_parser('saturate-pair', help='Saturate a consistent pair over a universe')
    saturate_parser.add_argument('--left', default='', help='Comma-separated left formulas')
    saturate_parser.add_argument('--right', default='', help='Comma-separated right formulas')
    saturate_parser.add_argument('--vars', type=int, default=2, help='Universe variables')
    saturate_parser.add_argument('--depth', type=int, default=1, help='Universe depth')
    saturate_parser.add_argument('--trace', action='store_true', help='Include every intermediate pair')

    quotient_parser = subparsers.add_parser('quotient', help='Quotient a universe by provable equivalence')
    quotient_parser.add_argument('--gamma', default='', help='Comma-separated premises')
    quotient_parser.add_argument('--vars', type=int, default=0, help='Universe variables')
    quotient_parser.add_argument('--depth', type=int, default=2, help='Universe depth')

    harness_parser = subparsers.add_parser('harness', help='Compare Kripke and algebraic validity through the bridge')
    harness_parser.add_argument('--vars', type=int, default=1, help='Formula variables')
    harness_parser.add_argument('--depth', type=int, default=1, help='Formula depth')
    harness_parser.add_argument('--max-worlds', type=int, default=2, help='Largest models enumerated')

    # Logs
    logs_parser = subparsers.add_parser('logs', help='Show the latest event log entries')
    logs_parser.add_argument('-n', type=int, default=20, help='Number of entries')

    return parser


def dispatch(args):
    match args.command:
        case 'parse':
            return handle_parse(args.formula)
        case 'encode':
            return handle_encode(args.formula)
        case 'decode':
            return handle_decode(args.code)
        case 'universe':
            return handle_universe(args.vars, args.depth)
        case 'check-proof':
            return handle_check_proof(args.proof, args.gamma)
        case 'eval':
            return handle_eval(args.model, args.world, args.formula)
        case 'valid':
            return handle_valid(args.formula, args.gamma, args.model, args.show_proof)
        case 'countermodel':
            return handle_countermodel(args.formula, args.gamma, args.max_worlds)
        case 'alg-eval':
            return handle_alg_eval(args.algebra, args.assignment, args.formula)
        case 'alg-valid':
            return handle_alg_valid(args.algebra, args.formula)
        case 'filters':
            return handle_filters(args.algebra)
        case 'prime-filters':
            return handle_prime_filters(args.algebra)
        case 'super-prime':
            return handle_super_prime(args.algebra, args.filter, args.avoid)
        case 'bridge':
            return handle_bridge(args.direction, args.source, args.assignment)
        case 'saturate-pair':
            return handle_saturate_pair(args.left, args.right, args.vars, args.depth, args.trace)
        case 'quotient':
            return handle_quotient(args.gamma, args.vars, args.depth)
        case 'harness':
            return handle_harness(args.vars, args.depth, args.max_worlds)
        case 'logs':
            return handle_logs(args.n)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        status = dispatch(args)
    except OracleInconclusive as e:
        print(json.dumps({"status": "unknown", "detail": str(e)}, indent=2))
        status = config.EXIT_UNKNOWN
    except (ValueError, LookupError, OSError) as e:
        print(f"[iplkit] {args.command}: {e}", file=sys.stderr)
        status = config.EXIT_USAGE

    log_event("CLI command finished", command=args.command, status=status)
    return status


if __name__ == "__main__":
    sys.exit(main())
