"""Command-line entry point.

Every subcommand prints one JSON report on stdout::

    {"command", "inputs": {"source", "sha256", "flags"}, "seed", "tolerances",
     "result", "diagnostics", "tool_version", "timestamp"}

Exit codes: 0 success, 1 domain error (the report then carries the error in
``diagnostics``), 2 usage error.  Floats are printed with 17 significant
digits; ``--deterministic`` drops the timestamp so identical inputs give
byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import math
import os
import sys
from datetime import datetime, timezone

import numpy as np

from ccnet import __version__
from ccnet.bifclass import compare_1d_dd, enumerate_generic_centers, enumerate_generic_kernels
from ccnet.decomp import (
    GRAM_TOL,
    balanced_partitions,
    decompose_representation,
    invariance_residual,
    lift_decomposition,
    synchrony_basis,
)
from ccnet.errors import CCNError, NotFeedforward
from ccnet.feedforward import (
    ZERO_EIG_TOL,
    feedforward_order,
    loop_types,
    mu_orders,
    predict_branches,
    root_subnetworks,
)
from ccnet.fixtures import FIXTURES, fixture_text
from ccnet.linmaps import (
    RANK_TOL,
    adjacency_matrix,
    build_admissible_field,
    commutant_basis,
    representation_map,
)
from ccnet.monoid import (
    build_fundamental_network,
    monoid_closure,
    multiplication_table,
    to_dot,
)
from ccnet.netspec import NetworkDoc, parse_network, serialize_network, validate_asymmetric_inputs
from ccnet.numerics import (
    CLASSIFY_TOL,
    FIT_POINTS,
    MIN_R2,
    continue_branch,
    default_grid,
    estimate_exponents,
    synchronous_branch,
)


class UsageError(Exception):
    pass


# -- JSON output -----------------------------------------------------------------


def _plain(obj):
    """Convert numpy scalars/arrays and tuples into JSON-ready Python values."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    return obj


def _emit(obj, indent: int = 0) -> str:
    pad = "  " * (indent + 1)
    end = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_emit(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, list):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list)) for v in obj):
            return "[" + ", ".join(_emit(v) for v in obj) + "]"
        return "[\n" + ",\n".join(pad + _emit(v, indent + 1) for v in obj) + "\n" + end + "]"
    if isinstance(obj, float):
        # non-finite values have no JSON literal
        if not math.isfinite(obj):
            return "null"
        text = format(obj, ".17g")
        return text if any(ch in text for ch in ".e") else text + ".0"
    return json.dumps(obj, ensure_ascii=False)


def dumps(obj) -> str:
    return _emit(_plain(obj)) + "\n"


# -- inputs ----------------------------------------------------------------------


def _read_input(source: str) -> tuple[bytes, str]:
    if os.path.exists(source):
        with open(source, "rb") as fh:
            return fh.read(), source
    if source in FIXTURES:
        return fixture_text(source), f"fixture:{source}"
    raise UsageError(f"no such file or fixture: {source!r} (fixtures: {', '.join(FIXTURES)})")


def _seed(value) -> int:
    if value is not None:
        return value
    env = os.environ.get("CCN_SEED")
    if env is None or env == "":
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"CCN_SEED must be an integer, got {env!r}") from None


def _names(text: str | None) -> list[str] | None:
    if text is None:
        return None
    return [t.strip() for t in text.split(",") if t.strip()]


def _critical_class(tab, lt, text: str | None):
    """Loop-type class by index or as comma-separated element names."""
    if text is None:
        return None
    if text.strip().isdigit():
        k = int(text)
        if k >= len(lt.classes):
            raise UsageError(f"critical class index {k} out of range (0..{len(lt.classes) - 1})")
        return list(lt.classes[k])
    names = _names(text)
    unknown = [n for n in names if n not in tab.elements]
    if unknown:
        raise UsageError(f"unknown elements {unknown}; elements are {list(tab.elements)}")
    return [tab.index(n) for n in names]


def _root(tab, roots, text: str | None):
    if text is None:
        return None
    if text.strip().isdigit():
        k = int(text)
        if k >= len(roots):
            raise UsageError(f"root index {k} out of range (0..{len(roots) - 1})")
        return list(roots[k])
    names = _names(text)
    unknown = [n for n in names if n not in tab.elements]
    if unknown:
        raise UsageError(f"unknown elements {unknown}; elements are {list(tab.elements)}")
    return [tab.index(n) for n in names]


def _write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


# -- subcommands -----------------------------------------------------------------


def cmd_validate(doc: NetworkDoc, args, seed):
    diags = validate_asymmetric_inputs(doc.network)
    result = {
        "status": "valid" if not diags else "invalid",
        "cells": list(doc.network.cells),
        "colors": list(doc.network.colors),
    }
    return result, diags


def _closure_payload(tab):
    return {
        "elements": list(tab.elements),
        "words": [list(w) for w in tab.words],
        "action": [list(a) for a in tab.action],
        "multiplication_table": multiplication_table(tab),
    }


def cmd_closure(doc, args, seed):
    tab = monoid_closure(doc.network)
    out = _closure_payload(tab)
    if args.dump_matrices:
        out["adjacency"] = {e: adjacency_matrix(tab, k) for k, e in enumerate(tab.elements)}
        out["representation"] = {e: representation_map(tab, k) for k, e in enumerate(tab.elements)}
    return out, []


def cmd_fundamental(doc, args, seed):
    tab = monoid_closure(doc.network)
    fund = build_fundamental_network(tab)
    out = {"network": json.loads(serialize_network(fund)), "multiplication_table": multiplication_table(tab)}
    if args.dump_matrices:
        out["adjacency"] = {e: adjacency_matrix(tab, k) for k, e in enumerate(tab.elements)}
    if args.dot:
        _write_text(args.dot, to_dot(fund, name="fundamental"))
        out["dot"] = args.dot
    return out, []


def cmd_decompose(doc, args, seed):
    tab = monoid_closure(doc.network)
    dec = decompose_representation(tab, args.internal_dim, seed=seed, tol=args.tol)
    comps = []
    for c in dec.components:
        rec = {"dim": c.dim, "type": c.type_tag, "iso_class": c.iso_class}
        if not args.no_basis:
            rec["basis"] = c.basis.T
        comps.append(rec)
    return {
        "internal_dim": args.internal_dim,
        "elements": list(tab.elements),
        "components": comps,
        "dims": dec.dims,
        "multiplicities": dec.iso_classes(),
    }, []


def cmd_bifurcations(doc, args, seed):
    tab = monoid_closure(doc.network)
    dec = decompose_representation(tab, args.internal_dim, seed=seed)
    if args.kind == "steady":
        configs = enumerate_generic_kernels(dec, args.params)
    else:
        configs = enumerate_generic_centers(dec, args.params, hopf_only=True)
    out = {
        "params": args.params,
        "internal_dim": args.internal_dim,
        "kind": args.kind,
        "iso_classes": dec.iso_classes(),
        "configs": [c.to_dict() for c in configs],
    }
    diags = []
    if args.kind == "hopf" and args.params > 1:
        diags.append({"kind": "note", "message": "imaginary-eigenvalue rule for l > 1 is heuristic"})
    if args.compare:
        out["comparison"] = compare_1d_dd(tab, args.params, args.internal_dim, seed=seed).to_dict()
    return out, diags


def _mu_labels(tab, pred) -> dict[str, str]:
    return {tab.elements[c]: f"mu={m}" for c, m in pred.mu.items()}


def cmd_feedforward(doc, args, seed):
    tab = monoid_closure(doc.network)
    order = feedforward_order(tab)
    if not order.is_feedforward:
        raise NotFeedforward("not feedforward: the fundamental network has a directed cycle of length >= 2")
    lt = loop_types(tab)
    roots = root_subnetworks(tab, order)
    names = tab.elements
    out = {
        "is_feedforward": True,
        "order": [names[c] for c in order.topo_order],
        "maximal_cells": [names[c] for c in order.maximal_cells],
        "loop_types": [
            {"index": k, "cells": [names[c] for c in cls], "loops": [names[t] for t in lt.class_loops(k)]}
            for k, cls in enumerate(lt.classes)
        ],
        "root_subnetworks": [[names[c] for c in r] for r in roots],
    }
    crit = _critical_class(tab, lt, args.critical_class)
    classes = [crit] if crit is not None else [list(c) for c in lt.classes]
    # one prediction per minimal root subnetwork plus the all-cells one
    if args.root is not None:
        root_choices = [_root(tab, roots, args.root)]
    else:
        root_choices = [list(roots[0]), list(range(tab.size))]
    preds = []
    dot_pred = None
    for cls in classes:
        for root in root_choices:
            full = len(root) == tab.size
            pred = mu_orders(tab, order, cls, root, strict=not (full or args.allow_critical_root))
            dot_pred = dot_pred or pred
            preds.append(
                {
                    "critical_class": [names[c] for c in pred.critical_class],
                    "root": [names[c] for c in pred.root],
                    "maximal_critical": pred.maximal_critical,
                    "mu": pred.by_name(),
                    "exponents": {names[c]: e for c, e in sorted(pred.exponents.items())},
                    "branches": predict_branches(pred),
                }
            )
            if pred.maximal_critical:
                break
    out["predictions"] = preds
    if crit is not None:
        out["critical_class"] = preds[0]["critical_class"]
        out["mu"] = preds[0]["mu"]
        out["exponents"] = preds[0]["exponents"]
    if args.dot:
        fund = build_fundamental_network(tab)
        _write_text(args.dot, to_dot(fund, labels=_mu_labels(tab, dot_pred), name="feedforward"))
        out["dot"] = args.dot
    return out, []


def cmd_simulate(doc, args, seed):
    tab = monoid_closure(doc.network)
    order = feedforward_order(tab)
    d = args.internal_dim
    lam_grid = default_grid(args.lambda_min, args.lambda_max, args.points)
    names = tab.elements
    if args.synchronous:
        fld = build_admissible_field(tab, d=d, l=1, seed=seed)
        branch = synchronous_branch(fld, args.side, lam_grid)
        prediction = {"root": list(names), "exponents": {e: 1.0 for e in names}}
        targets = {c: (1.0, True) for c in range(tab.size)}
    else:
        if not order.is_feedforward:
            raise NotFeedforward("not feedforward: amplification branches need a feedforward network")
        lt = loop_types(tab)
        crit = _critical_class(tab, lt, args.critical_class)
        if crit is None:
            free = [c for c in lt.classes if not set(c) & set(order.maximal_cells)]
            crit = list(free[0] if free else lt.classes[0])
        roots = root_subnetworks(tab, order)
        root = _root(tab, roots, args.root)
        pred = mu_orders(tab, order, crit, root, strict=not args.allow_critical_root)
        fld = build_admissible_field(tab, d=d, l=1, seed=seed, critical_class=crit)
        branch = continue_branch(fld, pred, args.side, lam_grid, branch=args.branch, order=order)
        prediction = {
            "critical_class": [names[c] for c in pred.critical_class],
            "root": [names[c] for c in pred.root],
            "mu": pred.by_name(),
            "exponents": {names[c]: e for c, e in sorted(pred.exponents.items())},
            "kind": pred.kind,
        }
        targets = {c: (e, c in pred.critical_cells) for c, e in pred.exponents.items()}
    samples = [
        {
            "lambda": s.lam,
            "norms": {names[c]: float(np.linalg.norm(s.state[c])) for c in range(tab.size)},
            "residual": s.residual,
            "newton_iters": s.newton_iters,
        }
        for s in branch.samples
    ]
    out = {
        "internal_dim": d,
        "side": args.side,
        "signature": list(branch.signature),
        "alternatives": [list(a) for a in branch.alternatives],
        "prediction": prediction,
        "samples": samples,
        "failures": branch.failures,
    }
    diags = []
    if len(branch.samples) >= FIT_POINTS:
        fit = estimate_exponents(branch.samples)
        out["fits"] = {
            names[c]: {"exponent": f.exponent, "coefficient": f.coefficient, "r2": f.r2, "label": f.label}
            for c, f in fit.cells.items()
        }
        verdict = True
        for c, (target, exact) in targets.items():
            e = fit.cells[c].exponent
            ok = abs(e - target) <= CLASSIFY_TOL if exact else e >= target - CLASSIFY_TOL
            if not ok:
                verdict = False
                diags.append({"kind": "exponent mismatch", "cell": names[c], "fitted": e, "target": target})
        out["verdict"] = "pass" if verdict else "fail"
    else:
        out["fits"] = {}
        out["verdict"] = "insufficient samples"
        diags.append({"kind": "InsufficientSamples", "have": len(branch.samples), "need": FIT_POINTS})
    if args.dump_matrices:
        out["linear_blocks"] = {names[k]: b for k, b in enumerate(fld.linear_map.blocks)}
        out["linear_matrix"] = fld.linear_map.matrix
    if args.csv:
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh)
            w.writerow(["lambda", *names])
            for s in branch.samples:
                w.writerow([format(s.lam, ".17g"), *(format(float(np.linalg.norm(s.state[c])), ".17g") for c in range(tab.size))])
        out["csv"] = args.csv
    return out, diags


def _check(name, fn):
    try:
        ok, detail = fn()
    except CCNError as exc:
        return {"check": name, "passed": False, "detail": exc.to_dict()}
    return {"check": name, "passed": bool(ok), "detail": detail}


def cmd_verify(doc, args, seed):
    """Invariant suite; each row is one property checked on the input network."""
    net = doc.network
    tab = monoid_closure(net)
    n = tab.size
    rng = np.random.default_rng(seed)
    rows = []

    def asym():
        diags = validate_asymmetric_inputs(net)
        return not diags, {"diagnostics": diags}

    def associativity():
        c = tab.compose
        lhs = c[c[:, :, None], np.arange(n)[None, None, :]]  # (a b) c
        rhs = c[np.arange(n)[:, None, None], c[None, :, :]]  # a (b c)
        bad = int(np.sum(lhs != rhs))
        return bad == 0, {"violations": bad}

    def products():
        err = 0.0
        for s in range(n):
            for t in range(n):
                st = tab.mul(s, t)
                err = max(err, float(np.abs(adjacency_matrix(tab, s) @ adjacency_matrix(tab, t) - adjacency_matrix(tab, tab.mul(t, s))).max()))
                err = max(err, float(np.abs(representation_map(tab, s) @ representation_map(tab, t) - representation_map(tab, st)).max()))
        return err == 0.0, {"max_error": err}

    def commutant():
        dims = {d: len(commutant_basis(tab, d)) for d in range(1, args.max_dim + 1)}
        return all(dims[d] == d * d * dims[1] for d in dims), {"dims": dims}

    def lift():
        base = decompose_representation(tab, 1, seed=seed)
        sigs = {}
        ok = True
        for d in range(2, args.max_dim + 1):
            dec = decompose_representation(tab, d, seed=seed)
            other = decompose_representation(tab, d, seed=seed + 1)
            lifted = lift_decomposition(base, d)
            sigs[d] = [list(x) for x in dec.signature()]
            ok &= dec.signature() == lifted.signature() == other.signature()
        return ok, {"d1": [list(x) for x in base.signature()], "dD": sigs}

    def invariance():
        dec = decompose_representation(tab, 1, seed=seed)
        gens = [representation_map(tab, k) for k in range(n)]
        worst = max(invariance_residual(c.basis, gens) for c in dec.components)
        return worst <= 1e-8, {"max_residual": worst}

    def equivariance():
        fld = build_admissible_field(tab, d=2, l=1, seed=seed)
        worst = 0.0
        for _ in range(20):
            v = rng.standard_normal(n * 2)
            lam = float(rng.uniform(-1, 1))
            g = fld.gamma(v, lam)
            for s in range(n):
                a = representation_map(tab, s, 2)
                dev = np.linalg.norm(fld.gamma(a @ v, lam) - a @ g) / (1.0 + np.linalg.norm(g))
                worst = max(worst, float(dev))
        return worst <= 1e-12, {"max_relative_deviation": worst}

    def synchrony():
        parts = balanced_partitions(tab)
        ok = True
        for p in parts:
            for d in range(1, args.max_dim + 1):
                ok &= synchrony_basis(p, tab, d).shape[1] == len(p) * d
        return ok, {"balanced_partitions": len(parts)}

    def bifurcations():
        rep = compare_1d_dd(tab, 1, args.max_dim, seed=seed)
        return rep.ok, {"monotone": rep.monotone, "steady_stable": rep.steady_stable, "hopf_stable": rep.hopf_stable}

    def triangular():
        order = feedforward_order(tab)
        if not order.is_feedforward:
            return True, {"skipped": "not feedforward"}
        fld = build_admissible_field(tab, d=1, l=1, seed=seed)
        p = order.permutation_matrix(1)
        m = p.T @ fld.linear_map.matrix @ p
        lower = float(np.abs(np.tril(m, -1)).max()) if n > 1 else 0.0
        return lower == 0.0, {"order": [tab.elements[c] for c in order.topo_order], "max_below_diagonal": lower}

    for name, fn in (
        ("asymmetric inputs", asym),
        ("monoid associativity", associativity),
        ("adjacency products", products),
        ("commutant scaling", commutant),
        ("decomposition lift", lift),
        ("component invariance", invariance),
        ("field equivariance", equivariance),
        ("synchrony dimensions", synchrony),
        ("bifurcation sets", bifurcations),
        ("feedforward triangularity", triangular),
    ):
        rows.append(_check(name, fn))
    passed = all(r["passed"] for r in rows)
    diags = [{"kind": "check failed", "check": r["check"]} for r in rows if not r["passed"]]
    return {"passed": passed, "checks": rows}, diags


COMMANDS = {
    "validate": cmd_validate,
    "closure": cmd_closure,
    "fundamental": cmd_fundamental,
    "decompose": cmd_decompose,
    "bifurcations": cmd_bifurcations,
    "feedforward": cmd_feedforward,
    "simulate": cmd_simulate,
    "verify": cmd_verify,
}


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {v}")
    return v


def _positive_float(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError(f"must be > 0, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("network", help="network JSON file or bundled fixture name (" + ", ".join(FIXTURES) + ")")
    common.add_argument("--seed", type=int, default=None, help="RNG seed (default: $CCN_SEED or 0)")
    common.add_argument("--deterministic", action="store_true", help="omit the timestamp")

    parser = argparse.ArgumentParser(prog="ccnet", description="Homogeneous coupled cell network analysis")
    parser.add_argument("--version", action="version", version=f"ccnet {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    sub.add_parser("validate", parents=[common], help="parse and check a network document")

    p = sub.add_parser("closure", parents=[common], help="monoid closure and multiplication table")
    p.add_argument("--dump-matrices", action="store_true", help="include adjacency and representation matrices")

    p = sub.add_parser("fundamental", parents=[common], help="fundamental network")
    p.add_argument("--dot", metavar="PATH", help="write GraphViz DOT to PATH")
    p.add_argument("--dump-matrices", action="store_true", help="include adjacency matrices")

    p = sub.add_parser("decompose", parents=[common], help="indecomposable components")
    p.add_argument("--internal-dim", type=_positive, default=1)
    p.add_argument("--tol", type=_positive_float, default=RANK_TOL)
    p.add_argument("--no-basis", action="store_true", help="omit component bases")

    p = sub.add_parser("bifurcations", parents=[common], help="generic kernel/center configurations")
    p.add_argument("--params", type=_nonneg, default=1, help="number of parameters l")
    p.add_argument("--internal-dim", type=_positive, default=1)
    p.add_argument("--kind", choices=("steady", "hopf"), default="steady")
    p.add_argument("--compare", action="store_true", help="also compare sets across dimensions 1..d")

    p = sub.add_parser("feedforward", parents=[common], help="feedforward order and amplification orders")
    p.add_argument("--critical-class", metavar="K", help="loop-type class index or comma-separated elements")
    p.add_argument("--root", metavar="B", help="root subnetwork index or comma-separated elements")
    p.add_argument("--allow-critical-root", action="store_true", help="accept critical cells inside the root")
    p.add_argument("--dot", metavar="PATH", help="write DOT annotated with mu to PATH")

    p = sub.add_parser("simulate", parents=[common], help="continue a steady-state branch and fit exponents")
    p.add_argument("--internal-dim", type=_positive, default=1)
    p.add_argument("--critical-class", metavar="K", help="loop-type class index or comma-separated elements")
    p.add_argument("--root", metavar="B", help="root subnetwork index or comma-separated elements")
    p.add_argument("--side", choices=("+", "-"), default="+")
    p.add_argument("--branch", type=_nonneg, default=0, help="branch index at the first grid point")
    p.add_argument("--lambda-min", type=_positive_float, default=1e-8)
    p.add_argument("--lambda-max", type=_positive_float, default=1e-3)
    p.add_argument("--points", type=_positive, default=24)
    p.add_argument("--allow-critical-root", action="store_true", help="accept critical cells inside the root")
    p.add_argument("--synchronous", action="store_true", help="follow the fully synchronous branch instead")
    p.add_argument("--csv", metavar="PATH", help="write lambda and per-cell norms to PATH")
    p.add_argument("--dump-matrices", action="store_true", help="include the linear part")

    p = sub.add_parser("verify", parents=[common], help="run the invariant suite")
    p.add_argument("--max-dim", type=_positive, default=3)
    return parser


def _flags(args) -> dict:
    skip = {"network", "command", "deterministic"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        seed = _seed(args.seed)
        data, source = _read_input(args.network)
        if args.command == "simulate" and args.lambda_min >= args.lambda_max:
            raise UsageError("--lambda-min must be smaller than --lambda-max")
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"ccnet: error: {exc}", file=sys.stderr)
        return 2
    report = {
        "command": args.command,
        "inputs": {"source": source, "sha256": hashlib.sha256(data).hexdigest(), "flags": _flags(args)},
        "seed": seed,
        "tolerances": {
            "rank": RANK_TOL,
            "gram": GRAM_TOL,
            "zero_eigenvalue": ZERO_EIG_TOL,
            "exponent": CLASSIFY_TOL,
            "min_r2": MIN_R2,
        },
    }
    code = 0
    try:
        doc = parse_network(data)
        result, diags = COMMANDS[args.command](doc, args, seed)
        if args.command == "verify" and not result["passed"]:
            code = 1
        if args.command == "validate" and diags:
            code = 1
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"ccnet: error: {exc}", file=sys.stderr)
        return 2
    except CCNError as exc:
        result, diags, code = None, [exc.to_dict()], 1
    report["result"] = result
    report["diagnostics"] = diags
    report["tool_version"] = __version__
    if not args.deterministic:
        report["timestamp"] = datetime.now(timezone.utc).isoformat()
    stdout.write(dumps(report))
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
