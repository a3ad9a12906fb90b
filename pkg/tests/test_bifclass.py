import pytest

from ccnet.bifclass import (
    KernelConfig,
    compare_1d_dd,
    enumerate_generic_centers,
    enumerate_generic_kernels,
)
from ccnet.decomp import decompose_representation

from conftest import TABLES
from oracles import HOPF_L1_D1_COUNT, HOPF_L1_D2_COUNT, STEADY_L1_COUNT


def dec(name, d):
    return decompose_representation(TABLES[name], d, seed=0)


def test_counting_weights():
    cfg = KernelConfig(((0, "R", 3), (1, "C", 1), (2, "H", 1)))
    assert cfg.kernel_dim_count == 3 + 2 + 4
    assert cfg.center_count == 2 + 1 + 1
    assert cfg.n_components == 5
    assert cfg.to_dict()["K_U"] == 9


def test_steady_counts(fixture_name):
    cfgs = enumerate_generic_kernels(dec(fixture_name, 1), 1)
    assert len(cfgs) == STEADY_L1_COUNT[fixture_name]
    for c in cfgs:
        assert c.n_components == 1 and c.parts[0][1] == "R"


def test_hopf_counts(fixture_name):
    assert len(enumerate_generic_centers(dec(fixture_name, 1), 1, hopf_only=True)) == HOPF_L1_D1_COUNT[fixture_name]
    assert len(enumerate_generic_centers(dec(fixture_name, 2), 1, hopf_only=True)) == HOPF_L1_D2_COUNT[fixture_name]


def test_hopf_only_needs_even_real():
    for c in enumerate_generic_centers(dec("chain3", 3), 2, hopf_only=True):
        assert all(m % 2 == 0 for _, t, m in c.parts if t == "R")


def test_zero_parameters_empty(fixture_name):
    d1 = dec(fixture_name, 1)
    assert enumerate_generic_kernels(d1, 0) == []
    assert enumerate_generic_centers(d1, 0) == []


def test_monotone_in_l():
    d2 = dec("ring3", 2)
    prev = set()
    for l in range(1, 5):
        now = {c.key() for c in enumerate_generic_kernels(d2, l)}
        assert prev <= now
        prev = now


def test_ordering_lexicographic():
    cfgs = enumerate_generic_kernels(dec("q8", 1), 4)
    keys = [tuple(dict(c.key()).get(i, 0) for i in range(5)) for c in cfgs]
    assert keys == sorted(keys)


@pytest.mark.parametrize("l", [1, 2])
def test_compare_ok(fixture_name, l):
    rep = compare_1d_dd(TABLES[fixture_name], l, 4)
    assert rep.ok, rep.counterexamples
    assert rep.heuristic == (l > 1)
    assert rep.to_dict()["hopf_rule"] == ("heuristic" if l > 1 else "exact")


def test_compare_steady_constant():
    rep = compare_1d_dd(TABLES["chain3"], 1, 3)
    keys = [{c.key() for c in rep.steady[d]} for d in rep.dims]
    assert keys[0] == keys[1] == keys[2]
    assert rep.hopf[1] == []
    assert rep.hopf[2]
