"""Command-line interface.

One subcommand per workflow: sample | discrepancy | negdep | bounds |
variance | net-check | report. Each takes a single JSON configuration file
(unknown keys are rejected) plus --seed / --threads / --out overrides, and
writes CSV with a stable, documented column order. When writing to a file, a
sidecar <out>.schema.json records the subcommand, package version, and column
names. Outputs contain no timestamps: identical configuration, seed, and
thread count of 1 give byte-identical files, and multithreaded runs of the
statistical commands reproduce the same counts because replication streams
are keyed by chunk index, not by thread.

Exit codes: 0 success, 2 validation error, 3 budget exceeded, 4 acceptance
failure (a failed report criterion, or a "violated" verdict under
--expect-holds).
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from itertools import product

import numpy as np

from . import __version__
from .acceptance import DEFAULT_SEED, run_all
from .bounds import (
    BoundParams,
    boxdiff_bound,
    boxdiff_bound_theta,
    corner_bound,
    corner_bound_theta,
    hoeffding_tail,
    mixed_bound_theta,
    weighted_bound,
    weighted_bound_theta,
)
from .discrepancy import (
    DEFAULT_BUDGET,
    ExplicitWeights,
    ProductWeights,
    star_discrepancy_cover,
    star_discrepancy_exact,
    weighted_star_discrepancy,
)
from .errors import BudgetExceededError, ValidationError
from .geometry import CornerBox0, CornerBox1, Interval, is_net
from .integrate import (
    CornerIndicator,
    NegProduct,
    ProductCoords,
    SumCoords,
    variance_study,
)
from .negdep import (
    FACTOR_CSV_COLUMNS,
    REPORT_CSV_COLUMNS,
    gss_anchored_prob_exact,
    lhs_anchored_prob_exact,
    mixed_anchored_prob_exact,
    check_ci_nqd,
    check_conditional_nqd,
    check_lower_nd,
    check_pairwise_nd,
    check_upper_nd,
)
from .samplers import (
    FourSlot,
    GeneralizedStratified,
    LatinHypercube,
    LatticeCells,
    Mixed,
    MinCopula,
    MonteCarlo,
    RngStream,
    RsjLattice,
    ScrambledNet,
    SimpleStratified,
    Stripes,
    SwapScheme,
    load_pointset,
    net_points,
    sample,
    save_pointset,
)

THREADS_ENV = "NEGDEP_QMC_THREADS"


# ---------------------------------------------------------------------------
# Config plumbing


def _check_keys(cfg: dict, allowed, where: str) -> None:
    unknown = sorted(set(cfg) - set(allowed))
    if unknown:
        raise ValidationError(f"unknown key(s) in {where}: {', '.join(unknown)}")


def _need(cfg: dict, key: str, where: str):
    if key not in cfg:
        raise ValidationError(f"missing required key '{key}' in {where}")
    return cfg[key]


def _load_config(path) -> dict:
    if path is None:
        return {}
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read config file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ValidationError("config must be a JSON object")
    return cfg


def parse_scheme(cfg) -> object:
    if not isinstance(cfg, dict):
        raise ValidationError("scheme must be a JSON object")
    kind = _need(cfg, "kind", "scheme")
    simple = {
        "mc": MonteCarlo,
        "sss": SimpleStratified,
        "lhs": LatinHypercube,
        "rsj": RsjLattice,
        "mincopula": MinCopula,
        "fourslot": FourSlot,
        "swap": SwapScheme,
    }
    if kind in simple:
        _check_keys(cfg, {"kind"}, f"scheme '{kind}'")
        return simple[kind]()
    if kind == "gss":
        _check_keys(cfg, {"kind", "beta", "strata"}, "scheme 'gss'")
        strata_cfg = _need(cfg, "strata", "scheme 'gss'")
        skind = _need(strata_cfg, "kind", "strata")
        if skind == "stripes":
            _check_keys(strata_cfg, {"kind", "count"}, "strata 'stripes'")
            strata = Stripes(int(_need(strata_cfg, "count", "strata 'stripes'")))
        elif skind == "cells":
            _check_keys(strata_cfg, {"kind", "g", "n"}, "strata 'cells'")
            g = _need(strata_cfg, "g", "strata 'cells'")
            strata = LatticeCells(tuple(int(x) for x in g), int(_need(strata_cfg, "n", "strata 'cells'")))
        else:
            raise ValidationError(f"unknown strata kind '{skind}'")
        return GeneralizedStratified(int(_need(cfg, "beta", "scheme 'gss'")), strata)
    if kind == "net":
        _check_keys(cfg, {"kind", "b", "m", "s"}, "scheme 'net'")
        return ScrambledNet(
            int(_need(cfg, "b", "scheme 'net'")),
            int(_need(cfg, "m", "scheme 'net'")),
            int(_need(cfg, "s", "scheme 'net'")),
        )
    if kind == "mixed":
        _check_keys(cfg, {"kind", "left", "d_left", "right", "d_right"}, "scheme 'mixed'")
        return Mixed(
            parse_scheme(_need(cfg, "left", "scheme 'mixed'")),
            int(_need(cfg, "d_left", "scheme 'mixed'")),
            parse_scheme(_need(cfg, "right", "scheme 'mixed'")),
            int(_need(cfg, "d_right", "scheme 'mixed'")),
        )
    raise ValidationError(f"unknown scheme kind '{kind}'")


def parse_box(cfg):
    if not isinstance(cfg, dict):
        raise ValidationError("box must be a JSON object")
    kind = _need(cfg, "kind", "box")
    if kind == "corner0":
        _check_keys(cfg, {"kind", "upper"}, "box 'corner0'")
        return CornerBox0(tuple(float(x) for x in _need(cfg, "upper", "box 'corner0'")))
    if kind == "corner1":
        _check_keys(cfg, {"kind", "lower"}, "box 'corner1'")
        return CornerBox1(tuple(float(x) for x in _need(cfg, "lower", "box 'corner1'")))
    if kind == "interval":
        _check_keys(cfg, {"kind", "a", "b"}, "box 'interval'")
        return Interval(
            tuple(float(x) for x in _need(cfg, "a", "box 'interval'")),
            tuple(float(x) for x in _need(cfg, "b", "box 'interval'")),
        )
    raise ValidationError(f"unknown box kind '{kind}'")


def parse_weights(cfg):
    if not isinstance(cfg, dict):
        raise ValidationError("weights must be a JSON object")
    kind = _need(cfg, "kind", "weights")
    if kind == "product":
        _check_keys(cfg, {"kind", "gamma"}, "weights 'product'")
        return ProductWeights(tuple(float(x) for x in _need(cfg, "gamma", "weights 'product'")))
    if kind == "explicit":
        _check_keys(cfg, {"kind", "table"}, "weights 'explicit'")
        table = {}
        for key, val in _need(cfg, "table", "weights 'explicit'").items():
            try:
                coords = frozenset(int(tok) - 1 for tok in key.split(","))
            except ValueError as exc:
                raise ValidationError(
                    f"explicit weight key '{key}' must be comma-separated 1-based coordinates"
                ) from exc
            if any(c < 0 for c in coords):
                raise ValidationError("explicit weight coordinates are 1-based")
            table[coords] = float(val)
        return ExplicitWeights(table)
    raise ValidationError(f"unknown weights kind '{kind}'")


def parse_function(cfg):
    if not isinstance(cfg, dict):
        raise ValidationError("function must be a JSON object")
    kind = _need(cfg, "kind", "function")
    if kind == "product_coords":
        _check_keys(cfg, {"kind"}, "function")
        return ProductCoords()
    if kind == "sum_coords":
        _check_keys(cfg, {"kind"}, "function")
        return SumCoords()
    if kind == "neg_product":
        _check_keys(cfg, {"kind"}, "function")
        return NegProduct()
    if kind == "corner_indicator":
        _check_keys(cfg, {"kind", "a"}, "function")
        return CornerIndicator(tuple(float(x) for x in _need(cfg, "a", "function")))
    raise ValidationError(f"unknown function kind '{kind}'")


def _resolve_threads(args, cfg) -> int:
    if args.threads is not None:
        return max(1, int(args.threads))
    if "threads" in cfg:
        return max(1, int(cfg["threads"]))
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError as exc:
            raise ValidationError(f"{THREADS_ENV} must be an integer") from exc
    return 1


def _resolve_seed(args, cfg) -> int:
    if args.seed is not None:
        return int(args.seed)
    if "seed" in cfg:
        return int(cfg["seed"])
    return 0


def _resolve_out(args, cfg):
    return args.out if args.out is not None else cfg.get("out")


# ---------------------------------------------------------------------------
# CSV output


def _fmt(value) -> str:
    if value is None or value == "":
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def _write_csv(out, subcommand: str, columns, rows) -> None:
    """Write rows to `out` (or stdout when None); files get a schema sidecar."""
    if out is None:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
        return
    with open(out, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
    schema = {
        "subcommand": subcommand,
        "version": __version__,
        "columns": list(columns),
    }
    with open(str(out) + ".schema.json", "w") as fh:
        json.dump(schema, fh, indent=2, sort_keys=True)
        fh.write("\n")


# ---------------------------------------------------------------------------
# Subcommands


def _load_or_sample_points(cfg, seed: int, where: str):
    if "points" in cfg:
        return load_pointset(cfg["points"])
    scheme = parse_scheme(_need(cfg, "scheme", where))
    n = int(_need(cfg, "n", where))
    d = int(_need(cfg, "d", where))
    return sample(scheme, n, d, RngStream(seed))


def cmd_sample(args) -> int:
    cfg = _load_config(args.config)
    _check_keys(cfg, {"scheme", "n", "d", "seed", "threads", "out"}, "sample config")
    seed = _resolve_seed(args, cfg)
    out = _resolve_out(args, cfg)
    scheme = parse_scheme(_need(cfg, "scheme", "sample config"))
    n = int(_need(cfg, "n", "sample config"))
    d = int(_need(cfg, "d", "sample config"))
    ps = sample(scheme, n, d, RngStream(seed))
    if out is None:
        sys.stdout.write(f"{ps.d} {ps.n}\n")
        for row in ps.data:
            sys.stdout.write(" ".join(f"{x:.17g}" for x in row) + "\n")
    else:
        save_pointset(ps, out)
    return 0


_DISC_COLUMNS = (
    "quantity", "n", "d", "value", "lower", "upper", "delta", "witness", "witness_side",
)


def cmd_discrepancy(args) -> int:
    cfg = _load_config(args.config)
    _check_keys(
        cfg,
        {"points", "scheme", "n", "d", "seed", "threads", "out", "exact", "delta",
         "weights", "budget"},
        "discrepancy config",
    )
    seed = _resolve_seed(args, cfg)
    out = _resolve_out(args, cfg)
    budget = int(cfg.get("budget", DEFAULT_BUDGET))
    ps = _load_or_sample_points(cfg, seed, "discrepancy config")
    rows = []
    want_exact = bool(cfg.get("exact", "delta" not in cfg and "weights" not in cfg))
    if want_exact:
        res = star_discrepancy_exact(ps, budget)
        witness = "" if res.witness is None else " ".join(f"{x:.17g}" for x in res.witness)
        rows.append(["exact", ps.n, ps.d, res.value, "", "", "", witness, res.witness_side or ""])
    if "delta" in cfg:
        delta = float(cfg["delta"])
        lower, upper = star_discrepancy_cover(ps, delta, budget)
        rows.append(["cover", ps.n, ps.d, "", lower, upper, delta, "", ""])
    if "weights" in cfg:
        value = weighted_star_discrepancy(ps, parse_weights(cfg["weights"]), budget)
        rows.append(["weighted", ps.n, ps.d, value, "", "", "", "", ""])
    _write_csv(out, "discrepancy", _DISC_COLUMNS, rows)
    return 0


def _as_list(value):
    return value if isinstance(value, list) else [value]


def _oracle_value(cfg_scheme, scheme, notion, box, n, t):
    """Exact anchored-box probability where a closed form exists, else ''."""
    if notion != "upper_nd" or not isinstance(box, CornerBox0):
        return ""
    if isinstance(scheme, LatinHypercube):
        return lhs_anchored_prob_exact(n, box.upper, t)
    if isinstance(scheme, GeneralizedStratified):
        return gss_anchored_prob_exact(scheme.beta, scheme.strata, box, n, t)
    if (
        isinstance(scheme, Mixed)
        and isinstance(scheme.left, LatinHypercube)
        and isinstance(scheme.right, LatinHypercube)
    ):
        return mixed_anchored_prob_exact(
            n, box.upper[: scheme.d_left], box.upper[scheme.d_left:], t
        )
    return ""


_NEGDEP_COLUMNS = REPORT_CSV_COLUMNS + ("oracle",)
_FACTOR_COLUMNS = ("scheme", "n", "d") + FACTOR_CSV_COLUMNS


def cmd_negdep(args) -> int:
    cfg = _load_config(args.config)
    _check_keys(
        cfg,
        {"scheme", "n", "d", "test", "reps", "seed", "threads", "out", "confidence",
         "gamma", "anchors", "t_values", "q_anchors", "r_anchors", "i", "a_box",
         "b_box", "alphas", "betas", "q_values", "r_values", "expect_holds", "oracle"},
        "negdep config",
    )
    seed = _resolve_seed(args, cfg)
    threads = _resolve_threads(args, cfg)
    out = _resolve_out(args, cfg)
    scheme_cfg = _need(cfg, "scheme", "negdep config")
    scheme = parse_scheme(scheme_cfg)
    n = int(_need(cfg, "n", "negdep config"))
    d = int(_need(cfg, "d", "negdep config"))
    test = _need(cfg, "test", "negdep config")
    reps = int(cfg.get("reps", 10_000))
    confidence = float(cfg.get("confidence", 0.99))
    gamma = float(cfg.get("gamma", 1.0))
    want_oracle = bool(cfg.get("oracle", False)) or args.oracle
    expect_holds = bool(cfg.get("expect_holds", False)) or args.expect_holds
    rng = RngStream(seed)
    reports = []
    factor_rows = []

    if test in ("upper", "lower"):
        anchors = _need(cfg, "anchors", "negdep config")
        t_values = [int(t) for t in _as_list(_need(cfg, "t_values", "negdep config"))]
        fn = check_upper_nd if test == "upper" else check_lower_nd
        notion = "upper_nd" if test == "upper" else "lower_nd"
        k = 0
        for anchor in anchors:
            box = CornerBox0(tuple(float(x) for x in anchor))
            for t in t_values:
                rep = fn(scheme, n, d, box, t, reps, rng.split(k), gamma, confidence, threads)
                oracle = _oracle_value(scheme_cfg, scheme, notion, box, n, t) if want_oracle else ""
                reports.append((rep, oracle))
                k += 1
    elif test == "pairwise":
        q_anchors = _need(cfg, "q_anchors", "negdep config")
        r_anchors = _need(cfg, "r_anchors", "negdep config")
        k = 0
        for qa in q_anchors:
            for ra in r_anchors:
                pair = check_pairwise_nd(
                    scheme, n, d,
                    CornerBox1(tuple(float(x) for x in qa)),
                    CornerBox1(tuple(float(x) for x in ra)),
                    reps, rng.split(k), confidence, threads,
                )
                reports.extend((rep, "") for rep in pair)
                k += 1
    elif test == "conditional":
        i = int(_need(cfg, "i", "negdep config"))
        a_box = parse_box(cfg["a_box"]) if cfg.get("a_box") is not None else None
        b_box = parse_box(cfg["b_box"]) if cfg.get("b_box") is not None else None
        alphas = [float(x) for x in _as_list(_need(cfg, "alphas", "negdep config"))]
        betas = [float(x) for x in _as_list(_need(cfg, "betas", "negdep config"))]
        k = 0
        for alpha in alphas:
            for beta in betas:
                rep = check_conditional_nqd(
                    scheme, n, d, i, a_box, b_box, alpha, beta, reps,
                    rng.split(k), confidence, threads,
                )
                reports.append((rep, ""))
                k += 1
    elif test == "ci":
        i = int(_need(cfg, "i", "negdep config"))
        q_values = [float(x) for x in _as_list(_need(cfg, "q_values", "negdep config"))]
        r_values = [float(x) for x in _as_list(_need(cfg, "r_values", "negdep config"))]
        k = 0
        for q in q_values:
            for r in r_values:
                res = check_ci_nqd(
                    scheme, n, d, i, q, r, reps, rng.split(k), confidence, threads
                )
                reports.append((res.primary, ""))
                for check in res.factorization:
                    factor_rows.append(
                        [res.primary.scheme, n, d] + check.to_csv_row()
                    )
                k += 1
    else:
        raise ValidationError(f"unknown negdep test '{test}'")

    rows = [rep.to_csv_row() + [oracle] for rep, oracle in reports]
    _write_csv(out, "negdep", _NEGDEP_COLUMNS, rows)
    if factor_rows:
        if out is None:
            sys.stdout.write("\n")
            _write_csv(None, "negdep-factorization", _FACTOR_COLUMNS, factor_rows)
        else:
            _write_csv(str(out) + ".factorization.csv", "negdep-factorization",
                       _FACTOR_COLUMNS, factor_rows)
    if expect_holds and any(rep.verdict == "violated" for rep, _ in reports):
        return 4
    return 0


_BOUND_FNS = {
    "boxdiff": (boxdiff_bound, "c"),
    "boxdiff_theta": (boxdiff_bound_theta, "theta"),
    "mixed_theta": (mixed_bound_theta, "theta"),
    "corner": (corner_bound, "c"),
    "corner_theta": (corner_bound_theta, "theta"),
    "weighted": (weighted_bound, "c"),
    "weighted_theta": (weighted_bound_theta, "theta"),
}

_BOUNDS_COLUMNS = (
    "formula", "n", "d", "rho", "c", "theta", "t", "gamma", "bound_value",
    "success_prob", "clamped", "raw_success_prob", "xi", "eta", "c_effective",
)


def cmd_bounds(args) -> int:
    cfg = _load_config(args.config)
    _check_keys(
        cfg, {"formula", "grid", "weights", "gamma", "seed", "threads", "out"},
        "bounds config",
    )
    out = _resolve_out(args, cfg)
    formula = _need(cfg, "formula", "bounds config")
    grid = _need(cfg, "grid", "bounds config")
    _check_keys(grid, {"n", "d", "rho", "c", "theta", "t"}, "bounds grid")
    n_list = [int(x) for x in _as_list(_need(grid, "n", "bounds grid"))]
    gamma = float(cfg.get("gamma", 1.0))
    rows = []
    if formula == "hoeffding":
        t_list = [float(x) for x in _as_list(_need(grid, "t", "bounds grid"))]
        for n, t in product(n_list, t_list):
            value = hoeffding_tail(n, t, gamma)
            rows.append(["hoeffding", n, "", "", "", "", t, gamma, value,
                         "", "", "", "", "", ""])
        _write_csv(out, "bounds", _BOUNDS_COLUMNS, rows)
        return 0
    if formula not in _BOUND_FNS:
        raise ValidationError(f"unknown bound formula '{formula}'")
    fn, free = _BOUND_FNS[formula]
    d_list = [int(x) for x in _as_list(_need(grid, "d", "bounds grid"))]
    rho_list = [float(x) for x in _as_list(grid.get("rho", [0.0]))]
    free_list = [float(x) for x in _as_list(_need(grid, free, "bounds grid"))]
    weights = parse_weights(cfg["weights"]) if "weights" in cfg else None
    if formula.startswith("weighted") and weights is None:
        raise ValidationError("weighted bounds need a 'weights' entry")
    for n, d, rho, x in product(n_list, d_list, rho_list, free_list):
        params = BoundParams(n=n, d=d, rho=rho, **{free: x})
        res = fn(params, weights) if formula.startswith("weighted") else fn(params)
        detail = dict(res.details)
        rows.append([
            res.formula, n, d, rho,
            x if free == "c" else "", x if free == "theta" else "", "", "",
            res.bound_value, res.success_prob, res.clamped, res.raw_success_prob,
            detail.get("xi", ""), detail.get("eta", ""), detail.get("c_effective", ""),
        ])
    _write_csv(out, "bounds", _BOUNDS_COLUMNS, rows)
    return 0


_VARIANCE_COLUMNS = (
    "scheme", "function", "n", "d", "replications", "var_scheme", "var_mc",
    "ratio", "ratio_stderr",
)


def cmd_variance(args) -> int:
    cfg = _load_config(args.config)
    _check_keys(
        cfg, {"scheme", "function", "n", "d", "reps", "seed", "threads", "out"},
        "variance config",
    )
    seed = _resolve_seed(args, cfg)
    out = _resolve_out(args, cfg)
    scheme = parse_scheme(_need(cfg, "scheme", "variance config"))
    f = parse_function(_need(cfg, "function", "variance config"))
    n = int(_need(cfg, "n", "variance config"))
    d = int(_need(cfg, "d", "variance config"))
    reps = int(cfg.get("reps", 1000))
    study = variance_study(scheme, f, n, d, reps, RngStream(seed))
    rows = [[
        study.scheme, study.function, study.n, study.d, study.replications,
        study.var_scheme, study.var_mc, study.ratio, study.ratio_stderr,
    ]]
    _write_csv(out, "variance", _VARIANCE_COLUMNS, rows)
    return 0


_NET_COLUMNS = ("source", "b", "m", "s", "t", "n", "is_net")


def cmd_net_check(args) -> int:
    cfg = _load_config(args.config)
    _check_keys(
        cfg, {"points", "b", "m", "s", "t", "scramble", "seed", "threads", "out"},
        "net-check config",
    )
    seed = _resolve_seed(args, cfg)
    out = _resolve_out(args, cfg)
    b = int(_need(cfg, "b", "net-check config"))
    m = int(_need(cfg, "m", "net-check config"))
    s = int(_need(cfg, "s", "net-check config"))
    t = int(cfg.get("t", 0))
    if "points" in cfg:
        ps = load_pointset(cfg["points"])
        source = "file"
    elif cfg.get("scramble", False):
        ps = sample(ScrambledNet(b, m, s), b**m, s, RngStream(seed))
        source = "scrambled"
    else:
        ps = net_points(b, m, s)
        source = "raw"
    ok = is_net(ps, b, m, s, t)
    _write_csv(out, "net-check", _NET_COLUMNS, [[source, b, m, s, t, ps.n, ok]])
    return 0


def cmd_report(args) -> int:
    cfg = _load_config(args.config)
    _check_keys(cfg, {"out_dir", "seed", "threads", "criteria", "out"}, "report config")
    seed = args.seed if args.seed is not None else int(cfg.get("seed", DEFAULT_SEED))
    out_dir = args.out if args.out is not None else cfg.get("out_dir")
    criteria = cfg.get("criteria")
    if criteria is not None:
        criteria = [int(c) for c in criteria]
        bad = [c for c in criteria if not 1 <= c <= 12]
        if bad:
            raise ValidationError(f"criterion ids must lie in 1..12, got {bad}")
    results = run_all(seed=seed, out_dir=out_dir, criteria=criteria)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        sys.stdout.write(f"criterion {r.cid:02d} {status} {r.name}: {r.details}\n")
    return 0 if all(r.passed for r in results) else 4


# ---------------------------------------------------------------------------
# Entry point


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="negdep-qmc",
        description="Negatively dependent sampling schemes, star discrepancy, "
        "dependence certification, and probabilistic bounds.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    specs = {
        "sample": "draw one replication of a scheme and write the point set",
        "discrepancy": "exact, cover-bracketed, or weighted star discrepancy",
        "negdep": "empirical or exact dependence tests with verdicts",
        "bounds": "closed-form discrepancy bound tables",
        "variance": "estimator variance against Monte Carlo",
        "net-check": "verify the digital net property",
        "report": "run the acceptance suite and write a summary",
    }
    for name, help_text in specs.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("config", nargs="?", default=None, help="JSON configuration file")
        p.add_argument("--seed", type=int, default=None, help="override the config seed")
        p.add_argument("--threads", type=int, default=None,
                       help=f"worker threads (default: config, then ${THREADS_ENV}, then 1)")
        p.add_argument("--out", default=None, help="output file (default: stdout)")
        if name == "negdep":
            p.add_argument("--expect-holds", action="store_true",
                           help="exit 4 if any verdict is 'violated'")
            p.add_argument("--oracle", action="store_true",
                           help="add exact oracle values where closed forms exist")
    return parser


_DISPATCH = {
    "sample": cmd_sample,
    "discrepancy": cmd_discrepancy,
    "negdep": cmd_negdep,
    "bounds": cmd_bounds,
    "variance": cmd_variance,
    "net-check": cmd_net_check,
    "report": cmd_report,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _DISPATCH[args.command](args)
    except ValidationError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except BudgetExceededError as exc:
        sys.stderr.write(f"budget exceeded: {exc}\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
