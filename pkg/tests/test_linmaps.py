import numpy as np
import pytest

from ccnet.errors import InfeasibleConstraint
from ccnet.linmaps import (
    adjacency_matrix,
    adjacency_span_dim,
    build_admissible_field,
    commutant_basis,
    network_adjacency,
    nullspace,
    random_linear_admissible,
    representation_map,
)
from ccnet.fixtures import load_fixture

from conftest import TABLES
from oracles import CHAIN3_A, CHAIN3_B, COMMUTANT_DIM_1


@pytest.mark.parametrize("name", sorted(CHAIN3_B))
def test_chain3_adjacency(name):
    tab = TABLES["chain3"]
    assert np.array_equal(adjacency_matrix(tab, name), np.array(CHAIN3_B[name], dtype=float))


def test_chain3_representation_map():
    tab = TABLES["chain3"]
    assert np.array_equal(representation_map(tab, "s"), np.array(CHAIN3_A["s"], dtype=float))


def test_network_adjacency_matches_action():
    net = load_fixture("chain3").network
    b = network_adjacency(net.maps["s"])
    x = np.array([10.0, 20.0, 30.0])
    # cell 1 reads 2, cell 2 reads 3, cell 3 reads itself
    assert list(b @ x) == [20.0, 30.0, 30.0]


def test_adjacency_products_reverse(tab):
    # B_s B_t = B_{ts}
    for s in range(tab.size):
        for t in range(tab.size):
            lhs = adjacency_matrix(tab, s) @ adjacency_matrix(tab, t)
            assert np.array_equal(lhs, adjacency_matrix(tab, tab.mul(t, s)))


def test_representation_products(tab):
    # A_s A_t = A_{st}
    for s in range(tab.size):
        for t in range(tab.size):
            lhs = representation_map(tab, s) @ representation_map(tab, t)
            assert np.array_equal(lhs, representation_map(tab, tab.mul(s, t)))


def test_adjacency_commutes_with_representation(tab):
    for s in range(tab.size):
        for t in range(tab.size):
            b, a = adjacency_matrix(tab, s, 2), representation_map(tab, t, 2)
            assert np.array_equal(b @ a, a @ b)


def test_adjacency_independent(tab):
    assert adjacency_span_dim(tab) == tab.size


@pytest.mark.parametrize("d", [1, 2, 3])
def test_commutant_dimension(fixture_name, d):
    assert len(commutant_basis(TABLES[fixture_name], d)) == d * d * COMMUTANT_DIM_1[fixture_name]


def test_commutant_contains_linear_maps(tab, rng):
    lin = random_linear_admissible(tab, 2, rng=rng)
    basis = np.array([m.ravel() for m in commutant_basis(tab, 2)])
    coef, *_ = np.linalg.lstsq(basis.T, lin.matrix.ravel(), rcond=None)
    assert np.allclose(basis.T @ coef, lin.matrix.ravel(), atol=1e-10)


def test_nullspace_floor():
    assert nullspace(np.zeros((3, 3))).shape == (3, 3)
    assert nullspace(np.diag([1.0, 1e-14, 0.0])).shape[1] == 2
    assert nullspace(np.diag([1e-3, 1e-3]), scale=1e7).shape[1] == 2


def test_linear_map_matrix(tab, rng):
    lin = random_linear_admissible(tab, 2, rng=rng)
    expected = sum(np.kron(adjacency_matrix(tab, s), lin.blocks[s]) for s in range(tab.size))
    assert np.allclose(lin.matrix, expected)
    for s in range(tab.size):
        a = representation_map(tab, s, 2)
        assert np.allclose(lin.matrix @ a, a @ lin.matrix, atol=1e-14)


def test_coefficient_range(rng):
    lin = random_linear_admissible(TABLES["q8"], 3, rng=rng)
    mag = np.abs(lin.blocks)
    assert mag.min() >= 0.05 and mag.max() <= 1.0


@pytest.mark.parametrize("d", [1, 2, 3])
@pytest.mark.parametrize("crit", [("id", "s"), ("s.s",)])
def test_critical_constraint(d, crit):
    tab = TABLES["chain3"]
    for seed in range(10):
        lin = random_linear_admissible(tab, d, seed=seed, critical_class=crit)
        loops_crit = [0, 1, 2] if crit == ("s.s",) else [0]
        ev = np.abs(np.linalg.eigvals(lin.blocks[loops_crit].sum(axis=0)))
        assert np.sort(ev)[0] <= 1e-12
        if d > 1:
            assert np.sort(ev)[1] >= 1e-2
        other = [0] if crit == ("s.s",) else [0, 1, 2]
        assert np.abs(np.linalg.eigvals(lin.blocks[other].sum(axis=0))).min() >= 1e-2


def test_critical_class_errors():
    tab = TABLES["chain3"]
    with pytest.raises(InfeasibleConstraint):
        random_linear_admissible(tab, 1, critical_class=("id",))
    with pytest.raises(InfeasibleConstraint):
        random_linear_admissible(tab, 1, critical_class=("id", "s.s"))
    with pytest.raises(InfeasibleConstraint):
        random_linear_admissible(tab, 1, critical_class=())


def test_seed_determinism():
    tab = TABLES["chain4"]
    a = build_admissible_field(tab, 2, seed=7, critical_class=("id", "s", "s.s"))
    b = build_admissible_field(tab, 2, seed=7, critical_class=("id", "s", "s.s"))
    assert np.array_equal(a.cubic, b.cubic) and np.array_equal(a.linear, b.linear)


def test_field_vanishes_at_origin(tab):
    fld = build_admissible_field(tab, 2, seed=1)
    assert np.all(fld.gamma(np.zeros(tab.size * 2), 0.0) == 0.0)


def test_field_jacobian_matches_finite_differences(fixture_name, rng):
    tab = TABLES[fixture_name]
    fld = build_admissible_field(tab, 2, seed=3)
    v = rng.standard_normal(tab.size * 2) * 0.3
    jac = fld.gamma_jacobian(v, 0.2)
    h = 1e-6
    fd = np.empty_like(jac)
    for k in range(v.size):
        e = np.zeros_like(v)
        e[k] = h
        fd[:, k] = (fld.gamma(v + e, 0.2) - fld.gamma(v - e, 0.2)) / (2 * h)
    assert np.allclose(jac, fd, atol=1e-8)


def test_field_linearization_is_linear_map(tab):
    fld = build_admissible_field(tab, 2, seed=4)
    assert np.allclose(fld.gamma_jacobian(np.zeros(tab.size * 2), 0.0), fld.linear_map.matrix, atol=1e-14)


def test_field_equivariance(tab, rng):
    fld = build_admissible_field(tab, 2, seed=5)
    for _ in range(20):
        v = rng.standard_normal(tab.size * 2)
        g = fld.gamma(v, 0.3)
        for s in range(tab.size):
            a = representation_map(tab, s, 2)
            assert np.allclose(fld.gamma(a @ v, 0.3), a @ g, rtol=0, atol=1e-12 * (1 + np.linalg.norm(g)))


def test_batch_evaluation(rng):
    fld = build_admissible_field(TABLES["chain3"], 2, seed=2)
    z = rng.standard_normal((5, 6))
    batch = fld.f(z, 0.1)
    assert np.allclose(batch, np.array([fld.f(row, 0.1) for row in z]))


def test_network_field_on_fundamental_cells(rng):
    # the fundamental network is itself a network: both evaluations agree
    tab = TABLES["chain3"]
    fld = build_admissible_field(tab, 1, seed=2)
    x = rng.standard_normal(3)
    # chain3 cells 1, 2, 3 correspond to id, s, s.s under the quotient coloring
    assert np.allclose(fld.gamma_network(x, 0.1), fld.gamma(x, 0.1))


def test_coefficient_table_monomials():
    fld = build_admissible_field(TABLES["chain3"], 1, seed=0)
    table = fld.coefficient_table()
    m = 3
    # linear + quadratic + cubic + parameter and parameter-linear terms
    expected = m + m * (m + 1) // 2 + m * (m + 1) * (m + 2) // 6 + 1 + m
    assert len(table) == expected
    assert all(sum(k[1]) in (1, 2, 3) for k in table)
