import numpy as np
import pytest

from ccnet.errors import InsufficientSamples, NoConvergence
from ccnet.feedforward import feedforward_order, loop_types, mu_orders
from ccnet.linmaps import LinearAdmissibleMap, build_admissible_field, random_linear_admissible, representation_map
from ccnet.numerics import (
    BranchSample,
    classify_exponent,
    continue_branch,
    default_grid,
    estimate_exponents,
    fit_power_law,
    newton_full,
    run_seed,
    spectrum_report,
    synchronous_branch,
    verify_amplification,
)

from conftest import TABLES


def synthetic(coefs, exps, lams=None):
    lams = default_grid() if lams is None else lams
    out = []
    for lam in lams:
        state = np.array([[c * lam**e] for c, e in zip(coefs, exps)])
        out.append(BranchSample(lam=float(lam), state=state, residual=0.0, newton_iters=0))
    return out


def test_fit_synthetic_square_root():
    fit = estimate_exponents(synthetic([2.0], [0.5]))
    cell = fit.cells[0]
    assert abs(cell.exponent - 0.5) <= 1e-6
    assert abs(cell.coefficient - 2.0) <= 1e-6
    assert cell.label == "1/2"
    assert fit.n_samples == 12


def test_fit_uses_smallest_lambdas():
    # a crossover above 1e-5 must not affect the fit window
    lams = default_grid()
    samples = synthetic([1.0], [0.25], lams)
    for s in samples:
        if s.lam > 1e-5:
            s.state[0, 0] = s.lam
    assert abs(estimate_exponents(samples).cells[0].exponent - 0.25) <= 1e-6


def test_fit_negative_side():
    e, a, r2 = fit_power_law(-default_grid(), 3 * default_grid() ** 0.125)
    assert abs(e - 0.125) < 1e-9 and abs(a - 3) < 1e-9 and r2 > 0.999999


def test_classify():
    assert classify_exponent(0.26, 0.9999) == "1/4"
    assert classify_exponent(0.97, 1.0) == "1"
    assert classify_exponent(0.7, 1.0) == "unclassified"
    assert classify_exponent(0.5, 0.99) == "unclassified"


def test_zero_cell_unclassified():
    fit = estimate_exponents(synthetic([0.0, 1.0], [1.0, 1.0]))
    assert fit.cells[0].label == "unclassified"
    assert fit.cells[1].label == "1"


def test_insufficient_samples():
    with pytest.raises(InsufficientSamples):
        estimate_exponents(synthetic([1.0], [1.0])[:11])


def test_origin_at_zero_parameter():
    fld = build_admissible_field(TABLES["chain3"], 2, seed=0)
    v = newton_full(fld, np.zeros(6), 0.0)
    assert np.array_equal(v, np.zeros(6))
    assert np.linalg.norm(fld.gamma(v, 0.0)) == 0.0


@pytest.mark.parametrize("d", [1, 2])
@pytest.mark.parametrize("side", ["+", "-"])
def test_synchronous_branch(fixture_name, d, side):
    tab = TABLES[fixture_name]
    for seed in range(3):
        fld = build_admissible_field(tab, d, seed=seed)
        br = synchronous_branch(fld, side)
        # a nearly singular summed block can end the branch in a fold before
        # the top of the grid; the fit window must still be covered
        assert len(br.samples) >= 12
        for s in br.samples:
            assert np.allclose(s.state, s.state[0], rtol=0, atol=1e-14)
        fit = estimate_exponents(br.samples)
        assert all(c.label == "1" for c in fit.cells.values())


def _chain3_branch(seed=0, d=1):
    tab = TABLES["chain3"]
    order = feedforward_order(tab)
    fld = build_admissible_field(tab, d, seed=seed, critical_class=("s.s",))
    pred = mu_orders(tab, order, ("s.s",))
    for side in ("+", "-"):
        try:
            return fld, continue_branch(fld, pred, side, order=order)
        except NoConvergence:
            continue
    raise AssertionError("no branch on either side")


def test_residual_bound_on_samples():
    fld, br = _chain3_branch(seed=2)
    assert len(br.samples) == 24
    for s in br.samples:
        g = fld.gamma(s.state.reshape(-1), s.lam)
        assert np.linalg.norm(g) <= 1e-12 * (1 + np.linalg.norm(s.state))
        assert s.residual <= 1e-12 * (1 + np.linalg.norm(s.state))


def test_maximal_critical_is_one_sided():
    tab = TABLES["chain3"]
    pred = mu_orders(tab, feedforward_order(tab), ("s.s",))
    for seed in range(5):
        fld = build_admissible_field(tab, 1, seed=seed, critical_class=("s.s",))
        sides = []
        for side in ("+", "-"):
            try:
                br = continue_branch(fld, pred, side)
            except NoConvergence:
                continue
            sides.append(side)
            fit = estimate_exponents(br.samples)
            assert all(c.label == "1/2" for c in fit.cells.values())
        assert len(sides) == 1


def test_equivariance_of_equilibria():
    fld, br = _chain3_branch(seed=1, d=2)
    tab = fld.tab
    for s in br.samples[::6]:
        v = s.state.reshape(-1)
        for sigma in range(tab.size):
            a = representation_map(tab, sigma, 2)
            w = newton_full(fld, a @ v, s.lam)
            assert w is not None
            assert np.allclose(w, a @ v, rtol=0, atol=1e-9)


def test_branch_index_out_of_range():
    tab = TABLES["chain3"]
    fld, br = _chain3_branch(seed=0)
    pred = mu_orders(tab, feedforward_order(tab), ("s.s",))
    with pytest.raises(NoConvergence):
        continue_branch(fld, pred, br.side, branch=len(br.alternatives))
    with pytest.raises(ValueError):
        continue_branch(fld, pred, "x")


def test_run_seed_chain3():
    tab = TABLES["chain3"]
    res, pred = run_seed(tab, 1, 0, ("id", "s"))
    assert res.passed, res.flags
    assert pred.by_name() == {"id": 1, "s": 0, "s.s": 0}
    assert abs(res.fits["id"].exponent - 0.5) <= 0.05


def test_verify_not_applicable():
    rep = verify_amplification(TABLES["ring3"], 1, range(2))
    assert not rep.applicable and rep.reason == "not feedforward"


def test_spectrum_chain3_d1():
    tab = TABLES["chain3"]
    lin = random_linear_admissible(tab, 1, seed=4)
    rep = spectrum_report(lin)
    b = lin.blocks[:, 0, 0]
    assert rep["max_deviation"] <= 1e-6
    assert np.allclose(sorted(rep["predicted"].real), sorted([b[0], b[0], b.sum()]))
    assert rep["max_imag"] <= 1e-9
    assert [c["size"] for c in rep["per_class"]] == [2, 1]


def test_spectrum_zero_map():
    lin = LinearAdmissibleMap(TABLES["chain3"], np.zeros((3, 1, 1)))
    rep = spectrum_report(lin, loop_types(TABLES["chain3"]))
    assert np.all(rep["direct"] == 0) and len(rep["direct"]) == 3


def test_spectrum_chain3_d2():
    lin = random_linear_admissible(TABLES["chain3"], 2, seed=5)
    rep = spectrum_report(lin)
    assert len(rep["direct"]) == 6
    assert rep["max_deviation"] <= 1e-6


@pytest.mark.slow
def test_verify_amplification_chain3():
    rep = verify_amplification(TABLES["chain3"], 2, range(10))
    assert rep.applicable and rep.critical_class == ["id", "s"]
    assert rep.n_passed >= 8
