"""Adjacency and representation matrices, linear admissible maps, admissible fields.

State vectors on the fundamental network are stored cell-major: entry
``tau * d + k`` is coordinate ``k`` of cell ``tau``, so the d-dimensional
version of an n x n cell matrix ``M`` is ``kron(M, I_d)``.

Random coefficients come from ``numpy.random.default_rng(seed)`` (PCG64 with a
64-bit seed).  Every sampled coefficient has a uniform magnitude in
``[0.05, 1]`` and a uniform random sign.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations_with_replacement

import numpy as np

from ccnet.errors import InfeasibleConstraint
from ccnet.monoid import MonoidTable, generator_indices, loop_set

COEF_MIN = 0.05
COEF_MAX = 1.0
RANK_TOL = 1e-9
# an "invertible" non-critical diagonal block keeps its eigenvalues this far from 0
INVERTIBLE_MARGIN = 1e-2
SEMISIMPLE_MARGIN = 0.1
_MAX_RESAMPLE = 200


def _elem(tab: MonoidTable, sigma) -> int:
    return tab.index(sigma) if isinstance(sigma, str) else int(sigma)


def adjacency_matrix(tab: MonoidTable, sigma, d: int = 1) -> np.ndarray:
    """``B_sigma (x) I_d`` with ``(B_sigma x)_tau = x_{sigma tau}``."""
    s = _elem(tab, sigma)
    n = tab.size
    b = np.zeros((n, n))
    b[np.arange(n), tab.compose[s, :]] = 1.0
    return b if d == 1 else np.kron(b, np.eye(d))


def network_adjacency(action: tuple[int, ...], d: int = 1) -> np.ndarray:
    """Adjacency of one color on a general network: ``(B x)_p = x_{sigma(p)}``."""
    n = len(action)
    b = np.zeros((n, n))
    b[np.arange(n), list(action)] = 1.0
    return b if d == 1 else np.kron(b, np.eye(d))


def representation_map(tab: MonoidTable, sigma, d: int = 1) -> np.ndarray:
    """``A_sigma (x) I_d`` with ``(A_sigma x)_tau = x_{tau sigma}``."""
    s = _elem(tab, sigma)
    n = tab.size
    a = np.zeros((n, n))
    a[np.arange(n), tab.compose[:, s]] = 1.0
    return a if d == 1 else np.kron(a, np.eye(d))


def representation_generators(tab: MonoidTable, d: int = 1) -> list[np.ndarray]:
    """Representation maps of the generating elements (identity if none)."""
    gens = generator_indices(tab) or [0]
    return [representation_map(tab, g, d) for g in gens]


def nullspace(mat: np.ndarray, tol: float = RANK_TOL, scale: float = 1.0) -> np.ndarray:
    """Orthonormal nullspace basis; singular values below ``tol * max(s_max, scale)``
    count as zero, so a system that vanishes up to rounding has full nullity."""
    _, s, vh = np.linalg.svd(mat, full_matrices=True)
    cut = tol * max(float(s[0]) if s.size else 0.0, scale)
    rank = int(np.sum(s > cut))
    return vh[rank:].T


def commutant_from_generators(mats: list[np.ndarray], tol: float = RANK_TOL) -> list[np.ndarray]:
    """Basis of ``{M : M A = A M for all A in mats}`` via the nullspace of the
    stacked Kronecker system (row-major vectorization)."""
    m = mats[0].shape[0]
    eye = np.eye(m)
    system = np.vstack([np.kron(eye, a.T) - np.kron(a, eye) for a in mats])
    null = nullspace(system, tol)
    return [null[:, k].reshape(m, m) for k in range(null.shape[1])]


def commutant_basis(tab: MonoidTable, d: int = 1, tol: float = RANK_TOL) -> list[np.ndarray]:
    """Basis of the endomorphisms of the d-dimensional regular representation."""
    return commutant_from_generators(representation_generators(tab, d), tol)


def adjacency_span_dim(tab: MonoidTable, tol: float = RANK_TOL) -> int:
    """Number of linearly independent adjacency matrices ``B_sigma``."""
    flat = np.array([adjacency_matrix(tab, s).ravel() for s in range(tab.size)])
    sv = np.linalg.svd(flat, compute_uv=False)
    return int(np.sum(sv > tol * sv[0]))


@dataclass(frozen=True)
class LinearAdmissibleMap:
    """``L = sum_sigma B_sigma (x) b_sigma`` with ``blocks[sigma]`` the d x d ``b_sigma``."""

    tab: MonoidTable = field(repr=False)
    blocks: np.ndarray
    critical_class: tuple[int, ...] | None = None

    @property
    def internal_dim(self) -> int:
        return self.blocks.shape[1]

    @cached_property
    def matrix(self) -> np.ndarray:
        n, d = self.tab.size, self.internal_dim
        out = np.zeros((n * d, n * d))
        for s in range(n):
            out += np.kron(adjacency_matrix(self.tab, s), self.blocks[s])
        return out

    def diagonal_block(self, cells) -> np.ndarray:
        """Sum of ``b_tau`` over ``tau`` in the loop set of the first cell given."""
        c = next(iter(cells)) if not isinstance(cells, (int, np.integer)) else int(cells)
        return self.blocks[sorted(loop_set(self.tab, c))].sum(axis=0)


def _coef(rng: np.random.Generator, shape) -> np.ndarray:
    mag = rng.uniform(COEF_MIN, COEF_MAX, size=shape)
    return np.where(rng.random(size=shape) < 0.5, -mag, mag)


def _loop_classes(tab: MonoidTable) -> dict[frozenset, list[int]]:
    classes: dict[frozenset, list[int]] = {}
    for c in range(tab.size):
        classes.setdefault(loop_set(tab, c), []).append(c)
    return classes


def _resolve_class(tab: MonoidTable, critical_class) -> frozenset[int] | None:
    """Return the loop set shared by the requested class, or None."""
    if critical_class is None:
        return None
    cells = [_elem(tab, c) for c in critical_class]
    if not cells:
        raise InfeasibleConstraint("empty critical class")
    sets = {loop_set(tab, c) for c in cells}
    if len(sets) != 1:
        raise InfeasibleConstraint(
            "requested cells span several loop-type classes; only one class can be critical",
            cells=[tab.elements[c] for c in cells],
        )
    loops = sets.pop()
    full = _loop_classes(tab)[loops]
    if sorted(cells) != sorted(full):
        raise InfeasibleConstraint(
            "critical cells must form a whole loop-type class",
            requested=[tab.elements[c] for c in cells],
            loop_type_class=[tab.elements[c] for c in full],
        )
    return loops


def _min_abs_eig(m: np.ndarray) -> float:
    return float(np.min(np.abs(np.linalg.eigvals(m))))


def random_linear_admissible(
    tab: MonoidTable, d: int = 1, seed: int = 0, critical_class=None, rng: np.random.Generator | None = None
) -> LinearAdmissibleMap:
    """Random ``b_sigma`` blocks, optionally making one loop-type class critical.

    With a critical class ``K`` (a list of cells or element names forming a
    whole loop-type class), the diagonal block ``S = sum_{tau in L_K} b_tau``
    gets a simple eigenvalue 0: for ``d = 1`` one block is set so that the sum
    vanishes, for ``d > 1`` one block is shifted so that ``S`` becomes
    singular through the smallest rank-one correction ``sigma_min u v^T``,
    redrawn unless ``|u . v| >= SEMISIMPLE_MARGIN`` (a simple zero away from
    a Jordan block) and the remaining eigenvalues are invertible.  The
    shifted block is the one shared by the fewest other loop sets.  Samples
    are redrawn until every other class's diagonal block has all eigenvalues
    at least ``INVERTIBLE_MARGIN`` away from 0.
    """
    if rng is None:
        rng = np.random.default_rng(seed)
    loops = _resolve_class(tab, critical_class)
    n = tab.size
    if loops is None:
        blocks = _coef(rng, (n, d, d))
        return LinearAdmissibleMap(tab, blocks)

    others = [ls for ls in _loop_classes(tab) if ls != loops]
    # prefer a block that perturbs as few other diagonal sums as possible
    pivot = min(sorted(loops), key=lambda t: sum(t in ls for ls in others))
    rest = sorted(loops - {pivot})
    cls = tuple(sorted(_loop_classes(tab)[loops]))
    for _ in range(_MAX_RESAMPLE):
        blocks = _coef(rng, (n, d, d))
        if d == 1:
            blocks[pivot] = -blocks[rest].sum(axis=0) if rest else 0.0
        else:
            # smallest rank-one correction that makes the sum singular
            u, sv, vh = np.linalg.svd(blocks[sorted(loops)].sum(axis=0))
            blocks[pivot] -= sv[-1] * np.outer(u[:, -1], vh[-1])
            crit = blocks[sorted(loops)].sum(axis=0)
            ev = np.sort(np.abs(np.linalg.eigvals(crit)))
            # zero must stay a simple, well-conditioned eigenvalue
            if abs(u[:, -1] @ vh[-1]) < SEMISIMPLE_MARGIN or ev[1] < INVERTIBLE_MARGIN:
                continue
        if all(_min_abs_eig(blocks[sorted(ls)].sum(axis=0)) >= INVERTIBLE_MARGIN for ls in others):
            return LinearAdmissibleMap(tab, blocks, critical_class=cls)
    raise InfeasibleConstraint("could not make the other loop-type classes invertible", tries=_MAX_RESAMPLE)


def _upper_multi_indices(m: int, degree: int) -> list[tuple[int, ...]]:
    return list(combinations_with_replacement(range(m), degree))


@dataclass(frozen=True)
class AdmissibleVectorField:
    """Polynomial governing function ``f: (R^d)^n x R^l -> R^d`` and its network field.

    ``f(z, lam) = A z + Q(z, z) + C(z, z, z) + sum_j lam_j (p_j + P_j z)``
    where ``z`` stacks the ``n`` input slots (slot ``j`` is the input through
    element ``j``).  ``quad[i, a, b]`` is nonzero only for ``a <= b`` and
    ``cubic[i, a, b, c]`` only for ``a <= b <= c``, so each monomial has
    exactly one coefficient.
    """

    tab: MonoidTable = field(repr=False)
    linear_map: LinearAdmissibleMap
    n_params: int
    linear: np.ndarray  # (d, n*d)
    quad: np.ndarray  # (d, N, N)
    cubic: np.ndarray  # (d, N, N, N)
    param: np.ndarray  # (l, d)
    param_linear: np.ndarray  # (l, d, N)

    @property
    def internal_dim(self) -> int:
        return self.linear.shape[0]

    @property
    def n_cells(self) -> int:
        return self.tab.size

    # governing function -------------------------------------------------
    def f(self, z: np.ndarray, lam) -> np.ndarray:
        """Evaluate ``f`` on ``z`` of shape ``(n*d,)`` or a batch ``(..., n*d)``."""
        lam = np.atleast_1d(np.asarray(lam, dtype=float))
        if z.ndim == 1:
            out = self.linear @ z + (self.quad @ z) @ z + ((self.cubic @ z) @ z) @ z
            return out + lam @ self.param + np.tensordot(lam, self.param_linear, 1) @ z
        out = z @ self.linear.T
        out = out + np.einsum("iab,...a,...b->...i", self.quad, z, z)
        cz = np.einsum("iabc,...c->...iab", self.cubic, z)
        out = out + np.einsum("...iab,...a,...b->...i", cz, z, z)
        return out + lam @ self.param + np.einsum("j,jia,...a->...i", lam, self.param_linear, z)

    def f_jacobian(self, z: np.ndarray, lam) -> np.ndarray:
        """``df/dz`` for a single slot vector ``z``; shape ``(d, n*d)``."""
        lam = np.atleast_1d(np.asarray(lam, dtype=float))
        q = self.quad
        jac = self.linear + q @ z + (z @ q)
        # cubic: sum over the three positions of the differentiated factor
        c = self.cubic
        cz = c @ z  # (d, N, N): contracted last index
        jac = jac + cz @ z + (z @ cz) + np.einsum("ibca,b,c->ia", c, z, z)
        return jac + np.tensordot(lam, self.param_linear, 1)

    # network field --------------------------------------------------------
    def slots(self, v: np.ndarray) -> np.ndarray:
        """Input-slot vectors of all fundamental cells, shape ``(n, n*d)``.

        Slot ``j`` of cell ``sigma`` reads cell ``sigma_j sigma``.
        """
        n, d = self.n_cells, self.internal_dim
        v = np.asarray(v, dtype=float).reshape(n, d)
        return v[self.tab.compose.T].reshape(n, n * d)

    def gamma(self, v: np.ndarray, lam) -> np.ndarray:
        """The admissible field on the fundamental network, flat ``(n*d,)``."""
        return self.f(self.slots(v), lam).reshape(-1)

    def gamma_jacobian(self, v: np.ndarray, lam) -> np.ndarray:
        n, d = self.n_cells, self.internal_dim
        z = self.slots(v)
        jac = np.zeros((n * d, n * d))
        for s in range(n):
            js = self.f_jacobian(z[s], lam)
            for j in range(n):
                src = int(self.tab.compose[j, s])
                jac[s * d : (s + 1) * d, src * d : (src + 1) * d] += js[:, j * d : (j + 1) * d]
        return jac

    def gamma_network(self, x: np.ndarray, lam) -> np.ndarray:
        """Field on the original network: cell ``p`` reads ``sigma_j(p)`` in slot ``j``."""
        d = self.internal_dim
        act = np.array(self.tab.action)  # (n_elements, n_cells)
        x = np.asarray(x, dtype=float).reshape(act.shape[1], d)
        z = x[act.T].reshape(act.shape[1], -1)
        return self.f(z, lam).reshape(-1)

    # export -----------------------------------------------------------------
    def coefficient_table(self) -> dict[tuple[int, tuple[int, ...]], float]:
        """Nonzero coefficients keyed by ``(output, exponent multi-index)``.

        The multi-index has one entry per slot coordinate followed by one per
        parameter.
        """
        m = self.linear.shape[1]
        nv = m + self.n_params
        out: dict[tuple[int, tuple[int, ...]], float] = {}

        def key(i, zs, ps=()):
            e = [0] * nv
            for a in zs:
                e[a] += 1
            for j in ps:
                e[m + j] += 1
            return (i, tuple(e))

        for i in range(self.internal_dim):
            for a in range(m):
                if self.linear[i, a] != 0:
                    out[key(i, (a,))] = float(self.linear[i, a])
            for a, b in _upper_multi_indices(m, 2):
                out[key(i, (a, b))] = float(self.quad[i, a, b])
            for a, b, c in _upper_multi_indices(m, 3):
                out[key(i, (a, b, c))] = float(self.cubic[i, a, b, c])
            for j in range(self.n_params):
                out[key(i, (), (j,))] = float(self.param[j, i])
                for a in range(m):
                    out[key(i, (a,), (j,))] = float(self.param_linear[j, i, a])
        return out


def build_admissible_field(
    tab: MonoidTable, d: int = 1, l: int = 1, seed: int = 0, critical_class=None
) -> AdmissibleVectorField:
    """Random cubic admissible field whose linear part is a (constrained) random map."""
    rng = np.random.default_rng(seed)
    lin = random_linear_admissible(tab, d, critical_class=critical_class, rng=rng)
    n = tab.size
    m = n * d
    linear = np.concatenate([lin.blocks[j] for j in range(n)], axis=1)
    quad = np.zeros((d, m, m))
    idx2 = np.array(_upper_multi_indices(m, 2)).T
    quad[:, idx2[0], idx2[1]] = _coef(rng, (d, idx2.shape[1]))
    cubic = np.zeros((d, m, m, m))
    idx3 = np.array(_upper_multi_indices(m, 3)).T
    cubic[:, idx3[0], idx3[1], idx3[2]] = _coef(rng, (d, idx3.shape[1]))
    param = _coef(rng, (l, d))
    param_linear = _coef(rng, (l, d, m))
    return AdmissibleVectorField(
        tab=tab,
        linear_map=lin,
        n_params=l,
        linear=linear,
        quad=quad,
        cubic=cubic,
        param=param,
        param_linear=param_linear,
    )
