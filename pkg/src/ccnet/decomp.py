"""Decomposition of the regular representation into indecomposable pieces.

A piece is split with a random element of its endomorphism algebra: the real
generalized eigenspaces of that element (conjugate pairs kept together) are
invariant, and they form a direct sum.  A piece is indecomposable exactly when
its endomorphism algebra is local, i.e. ``E / rad(E)`` is one of R, C, H.  We
detect this with the trace form ``G_ij = tr(e_i e_j)``: its kernel is the
radical, and on the quotient it has signature (1,0), (1,1) or (1,3) for
R, C, H, while any product or matrix algebra has at least two positive
directions.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla

from ccnet.errors import NotBalanced, NotIndecomposable, NumericalRankFailure
from ccnet.linmaps import RANK_TOL, adjacency_matrix, commutant_from_generators, nullspace, representation_generators, representation_map
from ccnet.monoid import MonoidTable

TYPE_BY_DIM = {1: "R", 2: "C", 4: "H"}
TYPE_ORDER = {"R": 0, "C": 1, "H": 2, "unknown": 3}
SPLIT_RETRIES = 8
# relative eigenvalue clustering distance; Jordan blocks of size k spread a
# defective eigenvalue by ~eps^(1/k), so the grouping has to be coarse
CLUSTER_TOL = 1e-4
GRAM_TOL = 1e-7
ISO_TOL = 1e-6
INVARIANCE_TOL = 1e-8


@dataclass(frozen=True)
class Subrepresentation:
    """Invariant subspace with orthonormal basis columns ``basis`` (shape m x k)."""

    basis: np.ndarray
    type_tag: str = "unknown"
    iso_class: int = -1
    internal_dim: int = 1

    @property
    def dim(self) -> int:
        return self.basis.shape[1]


@dataclass(frozen=True)
class Decomposition:
    components: tuple[Subrepresentation, ...]
    internal_dim: int
    tab: MonoidTable = field(repr=False)

    @property
    def dims(self) -> list[int]:
        return [c.dim for c in self.components]

    @property
    def types(self) -> list[str]:
        return [c.type_tag for c in self.components]

    @property
    def multiplicities(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for c in self.components:
            out[c.iso_class] = out.get(c.iso_class, 0) + 1
        return out

    def iso_classes(self) -> list[dict]:
        """One record per isomorphism class: id, dim, type, multiplicity."""
        seen: dict[int, dict] = {}
        for c in self.components:
            rec = seen.setdefault(c.iso_class, {"iso_class": c.iso_class, "dim": c.dim, "type": c.type_tag, "multiplicity": 0})
            rec["multiplicity"] += 1
        return [seen[k] for k in sorted(seen)]

    def signature(self) -> list[tuple[int, str]]:
        """Sorted multiset of (dim, type) pairs."""
        return sorted((c.dim, c.type_tag) for c in self.components)


# -- helpers ---------------------------------------------------------------


def _orth(mat: np.ndarray, tol: float = RANK_TOL) -> np.ndarray:
    if mat.size == 0:
        return mat
    u, s, _ = np.linalg.svd(mat, full_matrices=False)
    if s.size == 0 or s[0] == 0:
        return u[:, :0]
    return u[:, : int(np.sum(s > tol * s[0]))]


def numerical_rank(mat: np.ndarray, tol: float = RANK_TOL) -> int:
    if mat.size == 0:
        return 0
    s = np.linalg.svd(mat, compute_uv=False)
    return int(np.sum(s > tol * s[0])) if s[0] > 0 else 0


def restricted_generators(basis: np.ndarray, gens: list[np.ndarray]) -> list[np.ndarray]:
    """Matrices of the generators on an invariant subspace (orthonormal basis)."""
    return [basis.T @ g @ basis for g in gens]


def invariance_residual(basis: np.ndarray, gens: list[np.ndarray]) -> float:
    worst = 0.0
    for g in gens:
        image = g @ basis
        worst = max(worst, float(np.linalg.norm(image - basis @ (basis.T @ image))))
    return worst


def _algebra(restricted: list[np.ndarray], tol: float) -> list[np.ndarray]:
    k = restricted[0].shape[0]
    if k == 1:
        return [np.eye(1)]
    return commutant_from_generators(restricted, tol)


def algebra_quotient(endo: list[np.ndarray], tol: float = GRAM_TOL) -> tuple[int, int]:
    """(dimension of E/rad, number of positive trace-form directions)."""
    gram = np.array([[np.trace(a @ b) for b in endo] for a in endo])
    gram = 0.5 * (gram + gram.T)
    ev = np.linalg.eigvalsh(gram)
    scale = max(float(np.max(np.abs(ev))), 1e-300)
    nonzero = np.abs(ev) > tol * scale
    return int(np.sum(nonzero)), int(np.sum(ev > tol * scale))


def _type_from_algebra(endo: list[np.ndarray], tol: float = GRAM_TOL) -> str | None:
    qdim, positive = algebra_quotient(endo, tol)
    if positive == 1 and qdim in TYPE_BY_DIM:
        return TYPE_BY_DIM[qdim]
    return None


def _clusters(eigs: np.ndarray, tol: float) -> list[list[int]]:
    """Group eigenvalues closer than ``tol * radius``; conjugates share a group."""
    k = len(eigs)
    radius = max(float(np.max(np.abs(eigs))), 1e-300)
    parent = list(range(k))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(k):
        for j in range(i + 1, k):
            if abs(eigs[i] - eigs[j]) <= tol * radius or abs(eigs[i] - np.conj(eigs[j])) <= tol * radius:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(k):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def _split(m: np.ndarray, tol: float) -> list[np.ndarray] | None:
    """Orthonormal bases of real generalized eigenspace groups of ``m``.

    Returns None when there is a single group or reordering fails.
    """
    eigs = np.linalg.eigvals(m)
    groups = _clusters(eigs, tol)
    if len(groups) < 2:
        return None
    pieces = []
    for g in groups:
        members = eigs[g]

        def pick(x, y, members=members, others=np.delete(eigs, g)):
            z = complex(x, y)
            near = np.min(np.abs(members - z))
            return bool(others.size == 0 or near < np.min(np.abs(others - z)))

        try:
            _, z, sdim = sla.schur(m, output="real", sort=pick)
        except (ValueError, np.linalg.LinAlgError):
            return None
        if sdim != len(g):
            return None
        pieces.append(z[:, :sdim])
    return pieces


def _try_split(restricted, endo, rng, tol) -> list[np.ndarray] | None:
    coeffs = rng.standard_normal(len(endo))
    m = sum(c * e for c, e in zip(coeffs, endo))
    pieces = _split(m, tol)
    if pieces is None:
        return None
    stacked = np.hstack(pieces)
    sv = np.linalg.svd(stacked, compute_uv=False)
    if sv[-1] < 1e-6 * sv[0]:
        return None
    scale = max(1.0, max(float(np.linalg.norm(r)) for r in restricted))
    if any(invariance_residual(p, restricted) > INVARIANCE_TOL * scale for p in pieces):
        return None
    return pieces


def _character(basis: np.ndarray, all_maps: list[np.ndarray]) -> tuple[float, ...]:
    return tuple(round(float(np.trace(basis.T @ a @ basis)), 6) for a in all_maps)


# -- public operations ------------------------------------------------------


def decompose_representation(
    tab: MonoidTable, d: int = 1, seed: int = 0, tol: float = RANK_TOL
) -> Decomposition:
    """Split ``(R^d)^n`` under ``A_sigma (x) I_d`` into indecomposables.

    Components are ordered by decreasing dimension, then type (R, C, H), then
    character; isomorphic components are adjacent and iso-class ids count up
    in that order.
    """
    rng = np.random.default_rng(seed)
    gens = representation_generators(tab, d)
    m = tab.size * d
    # Left multiplications commute with right ones, so a random
    # sum_sigma B_sigma (x) b_sigma is an endomorphism; splitting with it first
    # keeps the full endomorphism solve off the whole space.
    eye = np.eye(m)
    first = sum(np.kron(adjacency_matrix(tab, s), rng.standard_normal((d, d))) for s in range(tab.size))
    top = _try_split(gens, [first], np.random.default_rng(rng.integers(2**63)), CLUSTER_TOL)
    stack = [eye] if top is None else [_orth(p) for p in reversed(top)]
    done: list[tuple[np.ndarray, str]] = []
    while stack:
        basis = stack.pop()
        restricted = restricted_generators(basis, gens)
        endo = _algebra(restricted, tol)
        pieces = None
        for cluster_tol in (CLUSTER_TOL, 1e-7):
            for _ in range(SPLIT_RETRIES):
                pieces = _try_split(restricted, endo, rng, cluster_tol)
                if pieces is not None:
                    break
            if pieces is not None:
                break
            kind = _type_from_algebra(endo)
            if kind is not None:
                break
        if pieces is not None:
            stack.extend(_orth(basis @ p) for p in reversed(pieces))
            continue
        kind = _type_from_algebra(endo)
        if kind is None:
            raise NumericalRankFailure(
                "random endomorphisms do not separate a decomposable piece",
                dim=basis.shape[1],
                quotient=list(algebra_quotient(endo)),
            )
        done.append((basis, kind))
    return _assemble(tab, d, done, gens, rng)


def _assemble(tab, d, done, gens, rng) -> Decomposition:
    all_maps = [representation_map(tab, s, d) for s in range(tab.size)]
    keyed = sorted(
        done, key=lambda bt: (-bt[0].shape[1], TYPE_ORDER[bt[1]], tuple(-x for x in _character(bt[0], all_maps)))
    )
    reps: list[Subrepresentation] = []
    classes: list[Subrepresentation] = []
    for basis, kind in keyed:
        sub = Subrepresentation(basis=basis, type_tag=kind, internal_dim=d)
        iso = -1
        for c in classes:
            if c.dim == sub.dim and c.type_tag == kind and _isomorphic(c.basis, basis, gens, rng, ISO_TOL):
                iso = c.iso_class
                break
        if iso < 0:
            iso = len(classes)
            classes.append(Subrepresentation(basis=basis, type_tag=kind, iso_class=iso, internal_dim=d))
        reps.append(Subrepresentation(basis=basis, type_tag=kind, iso_class=iso, internal_dim=d))
    # keep classes contiguous
    first: dict[int, int] = {}
    for i, r in enumerate(reps):
        first.setdefault(r.iso_class, i)
    reps.sort(key=lambda r: first[r.iso_class])
    return Decomposition(components=tuple(reps), internal_dim=d, tab=tab)


def classify_component_type(sub: Subrepresentation, tab: MonoidTable, tol: float = GRAM_TOL) -> str:
    """R, C or H from the trace-form quotient of the endomorphism algebra."""
    gens = representation_generators(tab, sub.internal_dim)
    endo = _algebra(restricted_generators(sub.basis, gens), RANK_TOL)
    qdim, positive = algebra_quotient(endo, tol)
    if positive != 1 or qdim not in TYPE_BY_DIM:
        raise NotIndecomposable(
            f"endomorphism quotient has dimension {qdim} with {positive} positive trace directions",
            quotient_dim=qdim,
            positive=positive,
        )
    return TYPE_BY_DIM[qdim]


def _intertwiners(ra: list[np.ndarray], rb: list[np.ndarray]) -> np.ndarray:
    ka, kb = ra[0].shape[0], rb[0].shape[0]
    system = np.vstack([np.kron(np.eye(kb), a.T) - np.kron(b, np.eye(ka)) for a, b in zip(ra, rb)])
    return nullspace(system, RANK_TOL)


def isomorphic_actions(ra: list[np.ndarray], rb: list[np.ndarray], rng: np.random.Generator, tol: float = ISO_TOL) -> bool:
    """Whether two restricted actions (same generators) are intertwined by an
    invertible map; tests random intertwiners ``SPLIT_RETRIES`` times."""
    ka, kb = ra[0].shape[0], rb[0].shape[0]
    if ka != kb:
        return False
    null = _intertwiners(ra, rb)
    if null.shape[1] == 0:
        return False
    for _ in range(SPLIT_RETRIES):
        c = rng.standard_normal(null.shape[1])
        t = (null @ (c / np.linalg.norm(c))).reshape(kb, ka)
        sv = np.linalg.svd(t, compute_uv=False)
        if sv[-1] > tol * sv[0]:
            return True
    return False


def _isomorphic(basis_a, basis_b, gens, rng, tol) -> bool:
    if basis_a.shape[1] != basis_b.shape[1]:
        return False
    return isomorphic_actions(restricted_generators(basis_a, gens), restricted_generators(basis_b, gens), rng, tol)


def are_isomorphic(
    sub_a: Subrepresentation, sub_b: Subrepresentation, tab: MonoidTable, tol: float = ISO_TOL, seed: int = 0
) -> bool:
    """Whether some invertible ``T`` intertwines the two restricted actions."""
    if sub_a.internal_dim != sub_b.internal_dim:
        raise ValueError("components live in different internal dimensions")
    gens = representation_generators(tab, sub_a.internal_dim)
    return _isomorphic(sub_a.basis, sub_b.basis, gens, np.random.default_rng(seed), tol)


def lift_decomposition(dec1: Decomposition, d: int, basis_of_w: np.ndarray | None = None) -> Decomposition:
    """Components ``Y_i (x) <w_j>`` for a basis ``w_1..w_d`` of the internal space."""
    if dec1.internal_dim != 1:
        raise ValueError("lift expects a decomposition of the one-dimensional representation")
    w = np.eye(d) if basis_of_w is None else np.asarray(basis_of_w, dtype=float)
    if w.shape != (d, d) or numerical_rank(w) != d:
        raise ValueError("basis_of_w must be an invertible d x d matrix (columns)")
    comps = []
    for c in dec1.components:
        for j in range(d):
            basis = _orth(np.kron(c.basis, w[:, j : j + 1]))
            comps.append(Subrepresentation(basis=basis, type_tag=c.type_tag, iso_class=c.iso_class, internal_dim=d))
    return Decomposition(components=tuple(comps), internal_dim=d, tab=dec1.tab)


# -- synchrony ----------------------------------------------------------------


def _normalize_partition(partition, tab: MonoidTable) -> list[list[int]]:
    blocks = [[tab.index(c) if isinstance(c, str) else int(c) for c in block] for block in partition]
    flat = sorted(x for b in blocks for x in b)
    if flat != list(range(tab.size)) or any(not b for b in blocks):
        raise ValueError("partition must cover every cell exactly once with nonempty blocks")
    return blocks


def is_balanced(partition, tab: MonoidTable) -> bool:
    """Each color sends every class into a single class."""
    blocks = _normalize_partition(partition, tab)
    label = np.empty(tab.size, dtype=int)
    for i, b in enumerate(blocks):
        label[b] = i
    for s in range(tab.size):
        for b in blocks:
            if len({int(label[tab.compose[s, t]]) for t in b}) > 1:
                return False
    return True


def synchrony_basis(partition, tab: MonoidTable, d: int = 1) -> np.ndarray:
    """Orthonormal columns spanning ``Delta_P`` in ``(R^d)^n``."""
    if not is_balanced(partition, tab):
        raise NotBalanced("partition is not balanced", partition=[list(map(int, b)) for b in _normalize_partition(partition, tab)])
    blocks = _normalize_partition(partition, tab)
    cols = []
    for b in blocks:
        ind = np.zeros(tab.size)
        ind[b] = 1.0 / np.sqrt(len(b))
        for j in range(d):
            cols.append(np.kron(ind, np.eye(d)[j]))
    return np.array(cols).T


def intersection_dim(a: np.ndarray, b: np.ndarray, tol: float = RANK_TOL) -> int:
    """``dim(span a cap span b)`` from ranks of the stacked bases."""
    return numerical_rank(a, tol) + numerical_rank(b, tol) - numerical_rank(np.hstack([a, b]), tol)


def synchrony_component_intersection(partition, sub: Subrepresentation, tab: MonoidTable, tol: float = RANK_TOL) -> int:
    delta = synchrony_basis(partition, tab, sub.internal_dim)
    return intersection_dim(delta, sub.basis, tol)


def _set_partitions(items: list[int]):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]


def balanced_partitions(tab: MonoidTable) -> list[list[list[int]]]:
    """All balanced partitions of the fundamental cells (exhaustive search)."""
    out = []
    for part in _set_partitions(list(range(tab.size))):
        blocks = sorted(sorted(b) for b in part)
        if is_balanced(blocks, tab):
            out.append(blocks)
    out.sort(key=lambda p: (len(p), p))
    return out
