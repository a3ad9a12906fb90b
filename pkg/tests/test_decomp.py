import numpy as np
import pytest

from ccnet.decomp import (
    Subrepresentation,
    _algebra,
    algebra_quotient,
    are_isomorphic,
    balanced_partitions,
    classify_component_type,
    decompose_representation,
    intersection_dim,
    invariance_residual,
    is_balanced,
    lift_decomposition,
    restricted_generators,
    synchrony_basis,
    synchrony_component_intersection,
)
from ccnet.errors import NotBalanced, NotIndecomposable
from ccnet.linmaps import adjacency_matrix, representation_generators

from conftest import TABLES
from oracles import BALANCED_COUNT, SIGNATURE_1

DECOMP_1 = {name: decompose_representation(tab, 1, seed=0) for name, tab in TABLES.items()}


def test_signature_d1(fixture_name):
    assert DECOMP_1[fixture_name].signature() == SIGNATURE_1[fixture_name]


@pytest.mark.parametrize("d", [2, 3])
def test_signature_lifts(fixture_name, d):
    dec = decompose_representation(TABLES[fixture_name], d, seed=1)
    assert dec.signature() == sorted(SIGNATURE_1[fixture_name] * d)


def test_components_are_invariant_and_span(fixture_name):
    tab = TABLES[fixture_name]
    dec = decompose_representation(tab, 2, seed=2)
    gens = representation_generators(tab, 2)
    for c in dec.components:
        assert invariance_residual(c.basis, gens) <= 1e-8
        assert np.allclose(c.basis.T @ c.basis, np.eye(c.dim), atol=1e-10)
    full = np.hstack([c.basis for c in dec.components])
    assert np.linalg.matrix_rank(full, tol=1e-9) == tab.size * 2


def test_ordering_descending_dimension(fixture_name):
    dims = DECOMP_1[fixture_name].dims
    assert dims == sorted(dims, reverse=True)


def test_chain3_d2_dims():
    assert decompose_representation(TABLES["chain3"], 2).dims == [2, 2, 1, 1]


def test_types(fixture_name):
    tab = TABLES[fixture_name]
    for c in DECOMP_1[fixture_name].components:
        assert classify_component_type(c, tab) == c.type_tag


def test_q8_quaternionic_quotient():
    tab = TABLES["q8"]
    h = next(c for c in DECOMP_1["q8"].components if c.type_tag == "H")
    assert h.dim == 4
    endo = _algebra(restricted_generators(h.basis, representation_generators(tab)), 1e-9)
    assert algebra_quotient(endo) == (4, 1)


def test_decomposable_space_is_rejected():
    tab = TABLES["ring3"]
    whole = Subrepresentation(basis=np.eye(3))
    with pytest.raises(NotIndecomposable):
        classify_component_type(whole, tab)


def test_iso_classes_multiplicity(fixture_name):
    dec = decompose_representation(TABLES[fixture_name], 3, seed=0)
    base = {r["iso_class"]: r for r in DECOMP_1[fixture_name].iso_classes()}
    recs = dec.iso_classes()
    assert len(recs) == len(base)
    for r in recs:
        assert r["multiplicity"] == 3 * base[r["iso_class"]]["multiplicity"]


def test_q8_one_dim_classes_distinct():
    recs = DECOMP_1["q8"].iso_classes()
    assert sorted((r["dim"], r["type"], r["multiplicity"]) for r in recs) == [(1, "R", 1)] * 4 + [(4, "H", 1)]


def test_are_isomorphic_equivalence(fixture_name):
    tab = TABLES[fixture_name]
    comps = decompose_representation(tab, 2, seed=4).components
    iso = [[are_isomorphic(a, b, tab) for b in comps] for a in comps]
    for i, a in enumerate(comps):
        assert iso[i][i]
        for j, b in enumerate(comps):
            assert iso[i][j] == iso[j][i]
            assert iso[i][j] == (a.iso_class == b.iso_class)


def test_seed_independence(fixture_name):
    tab = TABLES[fixture_name]
    a = decompose_representation(tab, 2, seed=10)
    b = decompose_representation(tab, 2, seed=11)
    assert a.signature() == b.signature()
    assert [(c.dim, c.type_tag, c.iso_class) for c in a.components] == [
        (c.dim, c.type_tag, c.iso_class) for c in b.components
    ]


def test_lift_matches_direct(fixture_name, rng):
    tab = TABLES[fixture_name]
    w = rng.standard_normal((3, 3))
    lifted = lift_decomposition(DECOMP_1[fixture_name], 3, w)
    direct = decompose_representation(tab, 3, seed=0)
    assert lifted.signature() == direct.signature()
    gens = representation_generators(tab, 3)
    for c in lifted.components:
        assert invariance_residual(c.basis, gens) <= 1e-10
    for c in lifted.components:
        partner = [x for x in direct.components if x.iso_class == c.iso_class]
        assert are_isomorphic(c, partner[0], tab)


def test_lift_rejects_bad_input():
    with pytest.raises(ValueError):
        lift_decomposition(DECOMP_1["chain3"], 2, np.ones((2, 2)))
    with pytest.raises(ValueError):
        lift_decomposition(decompose_representation(TABLES["chain3"], 2), 2)


def test_balanced_partition_counts(fixture_name):
    parts = balanced_partitions(TABLES[fixture_name])
    assert len(parts) == BALANCED_COUNT[fixture_name]
    n = TABLES[fixture_name].size
    assert [[i] for i in range(n)] in parts
    assert [list(range(n))] in parts


def test_chain3_balanced():
    tab = TABLES["chain3"]
    assert is_balanced([["id"], ["s", "s.s"]], tab)
    assert not is_balanced([["id", "s"], ["s.s"]], tab)
    with pytest.raises(NotBalanced):
        synchrony_basis([["id", "s"], ["s.s"]], tab)
    with pytest.raises(ValueError):
        is_balanced([["id"], ["s"]], tab)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_synchrony_dims(fixture_name, d):
    tab = TABLES[fixture_name]
    for part in balanced_partitions(tab):
        delta = synchrony_basis(part, tab, d)
        assert delta.shape[1] == len(part) * d
        assert np.linalg.matrix_rank(delta, tol=1e-9) == len(part) * d
        # balanced means every adjacency matrix leaves the subspace invariant
        proj = delta @ delta.T
        for s in range(tab.size):
            b = adjacency_matrix(tab, s, d)
            assert np.allclose(proj @ b @ delta, b @ delta, atol=1e-12)


@pytest.mark.parametrize("d", [2, 3])
def test_synchrony_intersections_lift(fixture_name, d):
    tab = TABLES[fixture_name]
    dec1 = DECOMP_1[fixture_name]
    lifted = lift_decomposition(dec1, d)
    for part in balanced_partitions(tab):
        for k, c in enumerate(dec1.components):
            base = synchrony_component_intersection(part, c, tab)
            for c_d in lifted.components[k * d : (k + 1) * d]:
                assert synchrony_component_intersection(part, c_d, tab) == base


def test_intersection_dim():
    e = np.eye(4)
    assert intersection_dim(e[:, :2], e[:, 1:3]) == 1
    assert intersection_dim(e[:, :2], e[:, 2:]) == 0
