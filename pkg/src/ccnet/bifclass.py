"""Enumeration of generic l-parameter kernels and center subspaces.

A configuration picks ``m_i`` copies of each isomorphism class ``i`` (at most
its multiplicity ``s_i``).  With ``rho``, ``gamma``, ``iota`` the counts of
real, complex and quaternionic type::

    K_U = sum rho + 2 sum gamma + 4 sum iota           (generalized kernel)
    C_U = sum ceil(rho / 2) + sum gamma + sum iota     (center subspace)

A configuration is generic for ``l`` parameters when the relevant count is at
most ``l``.  For imaginary eigenvalues (``hopf_only``) real multiplicities
must be even, since a single real component only carries a real eigenvalue.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import ceil

import numpy as np

from ccnet.decomp import (
    Decomposition,
    Subrepresentation,
    decompose_representation,
    isomorphic_actions,
    restricted_generators,
)
from ccnet.linmaps import representation_generators
from ccnet.monoid import MonoidTable

KERNEL_WEIGHT = {"R": 1, "C": 2, "H": 4}


@dataclass(frozen=True, order=True)
class KernelConfig:
    """Multiplicity per iso class: ``parts`` holds ``(iso_class, type, count)``."""

    parts: tuple[tuple[int, str, int], ...]

    @property
    def kernel_dim_count(self) -> int:
        return sum(KERNEL_WEIGHT[t] * m for _, t, m in self.parts)

    @property
    def center_count(self) -> int:
        return sum(ceil(m / 2) if t == "R" else m for _, t, m in self.parts)

    @property
    def n_components(self) -> int:
        return sum(m for _, _, m in self.parts)

    def key(self) -> tuple[tuple[int, int], ...]:
        return tuple((c, m) for c, _, m in self.parts)

    def to_dict(self) -> dict:
        return {
            "components": [{"iso_class": c, "type": t, "count": m} for c, t, m in self.parts],
            "K_U": self.kernel_dim_count,
            "C_U": self.center_count,
        }


def _classes(dec: Decomposition) -> list[tuple[int, str, int]]:
    return [(r["iso_class"], r["type"], r["multiplicity"]) for r in dec.iso_classes()]


def _enumerate(classes, l: int, cost, admissible) -> list[KernelConfig]:
    if l <= 0:
        return []
    ranges = [range(0, s + 1) for _, _, s in classes]
    out = []
    for counts in product(*ranges):
        if not any(counts):
            continue
        parts = tuple((c, t, m) for (c, t, _), m in zip(classes, counts) if m)
        cfg = KernelConfig(parts)
        if cost(cfg) <= l and admissible(cfg):
            out.append((counts, cfg))
    out.sort(key=lambda x: x[0])
    return [cfg for _, cfg in out]


def enumerate_generic_kernels(dec: Decomposition, l: int) -> list[KernelConfig]:
    """Nonzero configurations with ``K_U <= l`` in lexicographic order of counts."""
    return _enumerate(_classes(dec), l, lambda c: c.kernel_dim_count, lambda c: True)


def enumerate_generic_centers(dec: Decomposition, l: int, hopf_only: bool = False) -> list[KernelConfig]:
    """Nonzero configurations with ``C_U <= l``; even real counts if ``hopf_only``."""
    if hopf_only:
        ok = lambda c: all(m % 2 == 0 for _, t, m in c.parts if t == "R")  # noqa: E731
    else:
        ok = lambda c: True  # noqa: E731
    return _enumerate(_classes(dec), l, lambda c: c.center_count, ok)


@dataclass
class ComparisonReport:
    l: int
    dims: list[int]
    steady: dict[int, list[KernelConfig]] = field(default_factory=dict)
    hopf: dict[int, list[KernelConfig]] = field(default_factory=dict)
    monotone: bool = True
    steady_stable: bool = True
    hopf_stable: bool = True
    counterexamples: list[dict] = field(default_factory=list)

    @property
    def heuristic(self) -> bool:
        return self.l > 1

    @property
    def ok(self) -> bool:
        return self.monotone and self.steady_stable and self.hopf_stable

    def to_dict(self) -> dict:
        return {
            "l": self.l,
            "dims": self.dims,
            "steady": {str(d): [c.to_dict() for c in v] for d, v in self.steady.items()},
            "hopf": {str(d): [c.to_dict() for c in v] for d, v in self.hopf.items()},
            "monotone": self.monotone,
            "steady_stable": self.steady_stable,
            "hopf_stable": self.hopf_stable,
            "hopf_rule": "heuristic" if self.heuristic else "exact",
            "counterexamples": self.counterexamples,
        }


def relabel_to_reference(dec: Decomposition, ref: Decomposition, seed: int = 0) -> Decomposition:
    """Rename iso classes of ``dec`` to the isomorphic class ids of ``ref``.

    Works across internal dimensions: isomorphism is tested on the restricted
    actions.  Classes with no counterpart get fresh ids after ``ref``'s.
    """
    rng = np.random.default_rng(seed)
    gens_d = representation_generators(dec.tab, dec.internal_dim)
    gens_r = representation_generators(ref.tab, ref.internal_dim)
    reps_ref = {}
    for c in ref.components:
        reps_ref.setdefault(c.iso_class, c)
    fresh = max(reps_ref, default=-1) + 1
    mapping: dict[int, int] = {}
    for c in dec.components:
        if c.iso_class in mapping:
            continue
        target = None
        for rid, r in reps_ref.items():
            if r.dim == c.dim and r.type_tag == c.type_tag and isomorphic_actions(restricted_generators(c.basis, gens_d), restricted_generators(r.basis, gens_r), rng):
                target = rid
                break
        if target is None:
            target, fresh = fresh, fresh + 1
        mapping[c.iso_class] = target
    comps = tuple(
        Subrepresentation(basis=c.basis, type_tag=c.type_tag, iso_class=mapping[c.iso_class], internal_dim=c.internal_dim)
        for c in dec.components
    )
    return Decomposition(components=comps, internal_dim=dec.internal_dim, tab=dec.tab)


def compare_1d_dd(tab: MonoidTable, l: int, d: int, seed: int = 0) -> ComparisonReport:
    """Compare generic configurations for internal dimensions ``1..d``.

    Checks that sets grow with the dimension, that steady-state sets agree for
    all dimensions ``>= l`` and that imaginary-eigenvalue sets agree for all
    dimensions ``>= 2 l``.
    """
    ref = decompose_representation(tab, 1, seed=seed)
    rep = ComparisonReport(l=l, dims=list(range(1, d + 1)))
    for dd in rep.dims:
        dec = ref if dd == 1 else relabel_to_reference(decompose_representation(tab, dd, seed=seed), ref, seed)
        rep.steady[dd] = enumerate_generic_kernels(dec, l)
        rep.hopf[dd] = enumerate_generic_centers(dec, l, hopf_only=True)

    def keys(configs):
        return {c.key() for c in configs}

    for name, table in (("steady", rep.steady), ("hopf", rep.hopf)):
        for lo, hi in zip(rep.dims, rep.dims[1:]):
            missing = keys(table[lo]) - keys(table[hi])
            if missing:
                rep.monotone = False
                for m in sorted(missing):
                    rep.counterexamples.append({"check": f"{name} monotone", "from_dim": lo, "to_dim": hi, "config": list(m)})
    for name, table, start, flag in (("steady", rep.steady, max(l, 1), "steady_stable"), ("hopf", rep.hopf, max(2 * l, 1), "hopf_stable")):
        stable_dims = [x for x in rep.dims if x >= start]
        for lo, hi in zip(stable_dims, stable_dims[1:]):
            diff = keys(table[lo]) ^ keys(table[hi])
            if diff:
                setattr(rep, flag, False)
                for m in sorted(diff):
                    rep.counterexamples.append({"check": f"{name} stable", "from_dim": lo, "to_dim": hi, "config": list(m)})
    return rep
