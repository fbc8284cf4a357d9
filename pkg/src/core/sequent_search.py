"""
Contraction-free sequent search for intuitionistic propositional logic.

Each successful derivation of ctx => goal is compiled into a Hilbert proof
term of `big_and(ctx) -> goal` from the empty context, so the search never
asks to be trusted: its output goes back through the kernel. Compilation is
deferred until the search has succeeded, so failed branches cost nothing.

Invertible rules are applied eagerly, in a fixed order. The remaining
choices (which disjunct to prove, which nested implication to decompose)
are tried in order until one succeeds. Every rule strictly shrinks the
sequent, so the search terminates; the depth and node limits only guard
against pathological inputs.
"""
from typing import Callable, Dict, Iterable, Optional, Tuple

from . import config
from .derived_rules import (
    and_elim_right_thm,
    chain,
    conj_intro_imp,
    exchange,
    export_thm,
    identity,
    k_axiom,
    mp_under,
    or_elim,
    or_intro_right,
    pre_compose,
    top_intro,
)
from .formula import And, Formula, Implies, Or, BOT, TOP, big_and, encode
from .proof_kernel import ProofTerm, exfalso, exportation, modus_ponens, syllogism, weakening_conj, weakening_disj


class SearchExhausted(RuntimeError):
    pass


class _Deferred:
    """A proof built on first use."""
    __slots__ = ("_build", "_proof")

    def __init__(self, build: Callable[[], ProofTerm]):
        self._build = build
        self._proof = None

    def force(self) -> ProofTerm:
        if self._proof is None:
            self._proof = self._build()
            self._build = None
        return self._proof


def canonical_context(formulas: Iterable[Formula]) -> Tuple[Formula, ...]:
    """Duplicate-free context ordered by encoding."""
    return tuple(sorted(set(formulas), key=encode))


def project(ctx: Tuple[Formula, ...], index: int) -> ProofTerm:
    """|- big_and(ctx) -> ctx[index]"""
    steps = [and_elim_right_thm(ctx[k], big_and(ctx[k + 1:])) for k in range(index)]
    steps.append(weakening_conj(ctx[index], big_and(ctx[index + 1:])))
    return chain(*steps)


def pack(theta: Formula, items: Tuple[Formula, ...], provide) -> ProofTerm:
    """|- theta -> big_and(items), given provide(f): |- theta -> f for each item."""
    acc = modus_ponens(top_intro(), k_axiom(TOP, theta))
    for k in reversed(range(len(items))):
        acc = conj_intro_imp(theta, items[k], big_and(items[k + 1:]), provide(items[k]), acc)
    return acc


def _from_context(ctx, extra: Dict[Formula, Callable[[], ProofTerm]]):
    """provide(f) for `pack`: project members of ctx, build the rest from `extra`."""
    def provide(f):
        if f in ctx:
            return project(ctx, ctx.index(f))
        return extra[f]()
    return provide


class SequentSearch:
    """
    One search session. Results for visited sequents are remembered, so a
    session can answer several related queries cheaply.
    """

    def __init__(self, max_depth: int = config.DEFAULT_PROOF_DEPTH, max_nodes: int = config.SEARCH_NODE_LIMIT):
        self.max_depth = max_depth
        self.max_nodes = max_nodes
        self.nodes = 0
        self._proved = {}
        self._failed = set()

    def prove(self, ctx: Iterable[Formula], goal: Formula) -> Optional[ProofTerm]:
        """
        A proof of big_and(canonical_context(ctx)) -> goal, or None when the
        sequent is not derivable. Raises SearchExhausted past the limits.
        """
        found = self._prove(canonical_context(ctx), goal, 0)
        return None if found is None else found.force()

    def derivable(self, ctx: Iterable[Formula], goal: Formula) -> bool:
        return self._prove(canonical_context(ctx), goal, 0) is not None

    def _prove(self, ctx, goal, depth) -> Optional[_Deferred]:
        key = (ctx, goal)
        if key in self._proved:
            return self._proved[key]
        if key in self._failed:
            return None
        if depth > self.max_depth:
            raise SearchExhausted(f"sequent search exceeded depth {self.max_depth}")
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise SearchExhausted(f"sequent search visited more than {self.max_nodes} sequents")

        found = self._search(ctx, goal, depth + 1)
        if found is None:
            self._failed.add(key)
        else:
            self._proved[key] = found
        return found

    # === Rules ===

    def _search(self, ctx, goal, depth) -> Optional[_Deferred]:
        if goal in ctx:
            return _Deferred(lambda: project(ctx, ctx.index(goal)))
        if BOT in ctx:
            return _Deferred(lambda: syllogism(project(ctx, ctx.index(BOT)), exfalso(goal)))

        for i, f in enumerate(ctx):
            if isinstance(f, And):
                return self._left_and(ctx, i, goal, depth)
            if isinstance(f, Or):
                return self._left_or(ctx, i, goal, depth)
            if isinstance(f, Implies):
                a = f.lhs
                if a == BOT:
                    return self._rewrite(ctx, i, {}, goal, depth)
                if isinstance(a, And):
                    target = Implies(a.lhs, Implies(a.rhs, f.rhs))
                    extra = {target: lambda: syllogism(project(ctx, i), export_thm(a.lhs, a.rhs, f.rhs))}
                    return self._rewrite(ctx, i, extra, goal, depth)
                if isinstance(a, Or):
                    extra = {
                        Implies(a.lhs, f.rhs): lambda: syllogism(
                            project(ctx, i), pre_compose(a.lhs, a, f.rhs, weakening_disj(a.lhs, a.rhs))),
                        Implies(a.rhs, f.rhs): lambda: syllogism(
                            project(ctx, i), pre_compose(a.rhs, a, f.rhs, or_intro_right(a.lhs, a.rhs))),
                    }
                    return self._rewrite(ctx, i, extra, goal, depth)
                if a in ctx:
                    extra = {f.rhs: lambda: mp_under(big_and(ctx), a, f.rhs,
                                                     project(ctx, ctx.index(a)), project(ctx, i))}
                    return self._rewrite(ctx, i, extra, goal, depth)

        if isinstance(goal, And):
            p = self._prove(ctx, goal.lhs, depth)
            if p is None:
                return None
            q = self._prove(ctx, goal.rhs, depth)
            if q is None:
                return None
            return _Deferred(lambda: conj_intro_imp(big_and(ctx), goal.lhs, goal.rhs, p.force(), q.force()))

        if isinstance(goal, Implies):
            extended = canonical_context(ctx + (goal.lhs,))
            p = self._prove(extended, goal.rhs, depth)
            if p is None:
                return None
            return _Deferred(lambda: exportation(_assume(ctx, goal.lhs, extended, p.force())))

        if isinstance(goal, Or):
            p = self._prove(ctx, goal.lhs, depth)
            if p is not None:
                return _Deferred(lambda: syllogism(p.force(), weakening_disj(goal.lhs, goal.rhs)))
            q = self._prove(ctx, goal.rhs, depth)
            if q is not None:
                return _Deferred(lambda: syllogism(q.force(), or_intro_right(goal.lhs, goal.rhs)))

        for i, f in enumerate(ctx):
            if isinstance(f, Implies) and isinstance(f.lhs, Implies):
                found = self._left_nested(ctx, i, goal, depth)
                if found is not None:
                    return found
        return None

    def _rewrite(self, ctx, i, extra, goal, depth):
        """Replaces ctx[i] by the formulas of `extra`, each derivable from ctx."""
        rest = ctx[:i] + ctx[i + 1:]
        new_ctx = canonical_context(rest + tuple(extra))
        p = self._prove(new_ctx, goal, depth)
        if p is None:
            return None
        return _Deferred(lambda: syllogism(pack(big_and(ctx), new_ctx, _from_context(ctx, extra)), p.force()))

    def _left_and(self, ctx, i, goal, depth):
        f = ctx[i]
        extra = {
            f.lhs: lambda: syllogism(project(ctx, i), weakening_conj(f.lhs, f.rhs)),
            f.rhs: lambda: syllogism(project(ctx, i), and_elim_right_thm(f.lhs, f.rhs)),
        }
        return self._rewrite(ctx, i, extra, goal, depth)

    def _left_or(self, ctx, i, goal, depth):
        f = ctx[i]
        rest = ctx[:i] + ctx[i + 1:]
        branches = []
        for side in (f.lhs, f.rhs):
            side_ctx = canonical_context(rest + (side,))
            p = self._prove(side_ctx, goal, depth)
            if p is None:
                return None
            branches.append((side, side_ctx, p))

        def build():
            g = big_and(ctx)
            # each branch: |- side -> (big_and(ctx) -> goal)
            cases = [exchange(g, side, goal, exportation(_assume(ctx, side, side_ctx, p.force())))
                     for side, side_ctx, p in branches]
            split = or_elim(f.lhs, f.rhs, Implies(g, goal), cases[0], cases[1])
            return mp_under(g, g, goal, identity(g), syllogism(project(ctx, i), split))

        return _Deferred(build)

    def _left_nested(self, ctx, i, goal, depth):
        """(a -> b) -> d in the context: prove a -> b using b -> d, then continue with d."""
        f = ctx[i]
        a, b, d = f.lhs.lhs, f.lhs.rhs, f.rhs
        rest = ctx[:i] + ctx[i + 1:]

        weaker = Implies(b, d)
        first_ctx = canonical_context(rest + (weaker,))
        p1 = self._prove(first_ctx, f.lhs, depth)
        if p1 is None:
            return None
        second_ctx = canonical_context(rest + (d,))
        p2 = self._prove(second_ctx, goal, depth)
        if p2 is None:
            return None

        def build():
            g = big_and(ctx)
            weaker_proof = lambda: syllogism(project(ctx, i), pre_compose(b, f.lhs, d, k_axiom(b, a)))
            inner = syllogism(pack(g, first_ctx, _from_context(ctx, {weaker: weaker_proof})), p1.force())
            d_proof = lambda: mp_under(g, f.lhs, d, inner, project(ctx, i))
            return syllogism(pack(g, second_ctx, _from_context(ctx, {d: d_proof})), p2.force())

        return _Deferred(build)


def _assume(ctx, a, new_ctx, p):
    """From p: |- big_and(new_ctx) -> c with new_ctx within ctx + [a], build |- big_and(ctx) & a -> c."""
    g = big_and(ctx)
    theta = And(g, a)

    def provide(f):
        if f in ctx:
            return syllogism(weakening_conj(g, a), project(ctx, ctx.index(f)))
        return and_elim_right_thm(g, a)

    return syllogism(pack(theta, new_ctx, provide), p)
