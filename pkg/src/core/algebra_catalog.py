"""
Named finite Heyting algebras used as the test bed for algebraic semantics:
chains, Boolean and mixed products, and the closed-set algebras of small
posets.
"""
from functools import lru_cache
from typing import Dict, Optional, Sequence, Tuple

from .heyting import FiniteHeytingAlgebra, from_order
from .kripke import chain_model, identity_model, make_model
from .semantic_bridge import closed_set_algebra

CHAIN_LABELS = {
    2: ("0", "1"),
    3: ("0", "a", "1"),
    4: ("0", "a", "b", "1"),
    5: ("0", "a", "b", "c", "1"),
}


def chain_algebra(n: int, labels: Optional[Sequence[str]] = None, name: str = "") -> FiniteHeytingAlgebra:
    """The n-element chain 0 < ... < n-1."""
    if n < 2:
        raise ValueError("a chain algebra needs at least 2 elements")
    le = [[i <= j for j in range(n)] for i in range(n)]
    labels = labels or CHAIN_LABELS.get(n) or tuple(str(i) for i in range(n))
    return from_order(le, labels, name or f"C{n}")


def product_algebra(h1: FiniteHeytingAlgebra, h2: FiniteHeytingAlgebra, labels: Sequence[str] = (),
                    name: str = "") -> FiniteHeytingAlgebra:
    """Component-wise order; element (i, j) is i * h2.size + j."""
    pairs = [(i, j) for i in h1.elements for j in h2.elements]
    le = [[h1.le[a][c] and h2.le[b][d] for c, d in pairs] for a, b in pairs]
    labels = labels or tuple(f"{h1.label(i)}{h2.label(j)}" for i, j in pairs)
    return from_order(le, labels, name or f"{h1}x{h2}")


def boolean4() -> FiniteHeytingAlgebra:
    """C2 x C2 with atoms p = (0, 1) and q = (1, 0)."""
    c2 = chain_algebra(2)
    return product_algebra(c2, c2, ("0", "p", "q", "1"), "B4")


def _renamed(h: FiniteHeytingAlgebra, name: str) -> FiniteHeytingAlgebra:
    return FiniteHeytingAlgebra(h.size, h.le, h.meet, h.join, h.himp, h.bot, h.top, h.labels, name)


@lru_cache(maxsize=None)
def _catalog() -> Tuple[FiniteHeytingAlgebra, ...]:
    c2 = chain_algebra(2)
    closed = [
        ("O2chain", chain_model(2)),
        ("O3fork", make_model(3, [(0, 1), (0, 2)])),
        ("O3join", make_model(3, [(0, 2), (1, 2)])),
        ("O3discrete", identity_model(3)),
    ]
    return (
        c2,
        chain_algebra(3),
        chain_algebra(4),
        chain_algebra(5),
        boolean4(),
        product_algebra(chain_algebra(3), c2, name="C3xC2"),
        *(_renamed(closed_set_algebra(model).algebra, name) for name, model in closed),
    )


def catalog(max_size: Optional[int] = None) -> Tuple[FiniteHeytingAlgebra, ...]:
    """The catalog algebras, optionally only those with at most `max_size` elements."""
    algebras = _catalog()
    if max_size is None:
        return algebras
    return tuple(h for h in algebras if h.size <= max_size)


def by_name() -> Dict[str, FiniteHeytingAlgebra]:
    return {h.name: h for h in _catalog()}
