"""Feedforward structure of a fundamental network and amplification orders.

Order convention: ``s <= s'`` when ``t s = s'`` for some element ``t``, i.e.
``s'`` feeds ``s``.  The equation of cell ``s`` only involves cells ``s' >= s``,
so maximal cells are sources and solving proceeds from the maximal cells
downward.  ``topo_order`` lists downstream cells first, which makes every
linear admissible map block upper triangular in that order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from ccnet.errors import (
    CriticalClassIntersectsB,
    MultipleCriticalClasses,
    NoCriticalClass,
    NotFeedforward,
    NotRootSubnetwork,
)
from ccnet.linmaps import LinearAdmissibleMap
from ccnet.monoid import MonoidTable, loop_set

ZERO_EIG_TOL = 1e-8


@dataclass(frozen=True)
class FeedforwardOrder:
    tab: MonoidTable = field(repr=False)
    le: np.ndarray  # le[s, t]: s <= t (t upstream of s)
    is_feedforward: bool
    topo_order: tuple[int, ...] | None
    maximal_cells: tuple[int, ...]

    def upstream(self, cell: int) -> list[int]:
        """Cells strictly upstream of ``cell``."""
        return [t for t in range(self.tab.size) if t != cell and self.le[cell, t]]

    def permutation_matrix(self, d: int = 1) -> np.ndarray:
        """``P`` with ``P.T @ M @ P`` the matrix ``M`` reordered to topo_order."""
        if self.topo_order is None:
            raise NotFeedforward("network has a directed cycle of length >= 2")
        n = self.tab.size
        p = np.zeros((n, n))
        p[list(self.topo_order), np.arange(n)] = 1.0
        return np.kron(p, np.eye(d))


@dataclass(frozen=True)
class LoopTypeTable:
    tab: MonoidTable = field(repr=False)
    loops: tuple[frozenset, ...]  # loop set per cell
    classes: tuple[tuple[int, ...], ...]

    def class_of(self, cell: int) -> int:
        return next(i for i, c in enumerate(self.classes) if cell in c)

    def class_loops(self, k: int) -> list[int]:
        return sorted(self.loops[self.classes[k][0]])

    def diagonal_blocks(self, lin: LinearAdmissibleMap) -> list[np.ndarray]:
        """``sum_{t in L_K} b_t`` for each class ``K``."""
        return [lin.blocks[self.class_loops(k)].sum(axis=0) for k in range(len(self.classes))]


@dataclass(frozen=True)
class BranchPrediction:
    tab: MonoidTable = field(repr=False)
    critical_class: tuple[int, ...]
    root: tuple[int, ...]
    mu: dict[int, int]
    maximal_critical: bool
    critical_cells: tuple[int, ...]

    @property
    def exponents(self) -> dict[int, float]:
        return {c: 2.0 ** (-m) for c, m in self.mu.items()}

    @property
    def kind(self) -> str:
        return "one-sided" if self.maximal_critical else "both-sides-per-sign"

    def by_name(self) -> dict[str, int]:
        return {self.tab.elements[c]: m for c, m in sorted(self.mu.items())}


def feedforward_order(tab: MonoidTable) -> FeedforwardOrder:
    n = tab.size
    le = np.zeros((n, n), dtype=bool)
    for t in range(n):
        for s in range(n):
            le[s, tab.compose[t, s]] = True
    strict = le & ~np.eye(n, dtype=bool)
    is_ff = not bool(np.any(strict & strict.T))
    maximal = tuple(s for s in range(n) if not strict[s].any())
    topo = None
    if is_ff:
        placed: list[int] = []
        remaining = set(range(n))
        while remaining:
            # next: smallest index all of whose strict downstream cells are placed
            nxt = min(s for s in remaining if all(t in placed for t in range(n) if strict[t, s]))
            placed.append(nxt)
            remaining.remove(nxt)
        topo = tuple(placed)
    return FeedforwardOrder(tab=tab, le=le, is_feedforward=is_ff, topo_order=topo, maximal_cells=maximal)


def loop_types(tab: MonoidTable) -> LoopTypeTable:
    loops = tuple(loop_set(tab, c) for c in range(tab.size))
    classes: dict[frozenset, list[int]] = {}
    for c, ls in enumerate(loops):
        classes.setdefault(ls, []).append(c)
    return LoopTypeTable(tab=tab, loops=loops, classes=tuple(tuple(v) for v in classes.values()))


def critical_cells(lt: LoopTypeTable, lin: LinearAdmissibleMap, tol: float = ZERO_EIG_TOL) -> int:
    """Index of the unique loop-type class whose diagonal block is singular."""
    hits = []
    for k, block in enumerate(lt.diagonal_blocks(lin)):
        ev = np.linalg.eigvals(block)
        if np.min(np.abs(ev)) <= tol * (1.0 + np.max(np.abs(ev))):
            hits.append(k)
    names = [[lt.tab.elements[c] for c in lt.classes[k]] for k in hits]
    if not hits:
        raise NoCriticalClass("no diagonal block has a zero eigenvalue")
    if len(hits) > 1:
        raise MultipleCriticalClasses("several diagonal blocks are singular", classes=names)
    return hits[0]


def _require_ff(order: FeedforwardOrder) -> None:
    if not order.is_feedforward:
        raise NotFeedforward("network has a directed cycle of length >= 2")


def is_root_subnetwork(tab: MonoidTable, order: FeedforwardOrder, cells) -> bool:
    cells = set(cells)
    if not set(order.maximal_cells) <= cells:
        return False
    return all(int(tab.compose[s, b]) in cells for s in range(tab.size) for b in cells)


def root_subnetworks(tab: MonoidTable, order: FeedforwardOrder) -> list[tuple[int, ...]]:
    """All left-absorbing cell sets containing the maximal cells.

    Ordered by size then lexicographically; the first entry (the maximal cells)
    is the minimal one.
    """
    _require_ff(order)
    base = set(order.maximal_cells)
    free = [s for s in range(tab.size) if s not in base]
    out = []
    for k in range(len(free) + 1):
        for extra in combinations(free, k):
            cand = tuple(sorted(base | set(extra)))
            if is_root_subnetwork(tab, order, cand):
                out.append(cand)
    return out


def mu_orders(
    tab: MonoidTable,
    order: FeedforwardOrder,
    critical_class,
    root=None,
    strict: bool = True,
) -> BranchPrediction:
    """Square-root orders ``mu`` for a critical class and root subnetwork.

    If the critical class holds the maximal cells, ``mu = 1`` everywhere and
    ``root`` is ignored.  Otherwise, descending from the maximal cells:
    ``mu = 0`` on the root; a non-critical cell takes the largest ``mu`` among
    its strict upstream cells; a critical cell whose strict upstream cells all
    lie in the root does the same; any other critical cell adds one.

    Critical cells inside the root raise CriticalClassIntersectsB unless
    ``strict`` is False; the all-cells root (the fully synchronous branch)
    needs that, since there every cell sits on the synchronous solution.
    """
    _require_ff(order)
    crit = tuple(sorted(tab.index(c) if isinstance(c, str) else int(c) for c in critical_class))
    lt = loop_types(tab)
    if sorted(lt.classes[lt.class_of(crit[0])]) != list(crit):
        raise NotRootSubnetwork("critical cells must form one loop-type class", cells=[tab.elements[c] for c in crit])
    if set(order.maximal_cells) & set(crit):
        mu = {c: 1 for c in range(tab.size)}
        return BranchPrediction(tab, crit, (), mu, True, crit)

    root = tuple(order.maximal_cells) if root is None else tuple(sorted(
        tab.index(c) if isinstance(c, str) else int(c) for c in root
    ))
    if not is_root_subnetwork(tab, order, root):
        raise NotRootSubnetwork(
            "cell set is not left-absorbing or misses a maximal cell", cells=[tab.elements[c] for c in root]
        )
    if strict and set(root) & set(crit):
        raise CriticalClassIntersectsB(
            "critical cells lie in the root subnetwork",
            cells=[tab.elements[c] for c in sorted(set(root) & set(crit))],
        )
    mu: dict[int, int] = {}
    for s in reversed(order.topo_order):
        if s in root:
            mu[s] = 0
            continue
        up = order.upstream(s)
        top = max(mu[t] for t in up)
        if s in crit and not all(t in root for t in up):
            top += 1
        mu[s] = top
    return BranchPrediction(tab, crit, root, dict(sorted(mu.items())), False, crit)


def predict_branches(pred: BranchPrediction, sign_info: dict | None = None) -> list[dict]:
    """Per-cell branch descriptors; ``sign_info`` may carry the realized side."""
    side = (sign_info or {}).get("side")
    out = []
    for c, m in pred.mu.items():
        if pred.maximal_critical:
            where = side or "one side"
        elif c in pred.root:
            where = "both sides"
        else:
            where = side or "one side, set by coefficient signs"
        out.append(
            {
                "cell": pred.tab.elements[c],
                "mu": m,
                "exponent": 2.0 ** (-m),
                "in_root": c in pred.root,
                "critical": c in pred.critical_cells,
                "side": where,
            }
        )
    return out
