"""Command-line experiment driver.

    cutquad run --preset fig11 --out results/ --svg
    cutquad run --config my.json --threads 4
    cutquad presets

A config is a flat JSON object; see ``PRESETS`` for the recognised keys.
Every CSV starts with the header comment ``# cutcell-quad v1``.
"""

from __future__ import annotations

import argparse
import copy
import csv
import io
import json
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import svg
from .error_estimator import DEFAULT_K, Norm, PolynomialSpace, evaluate_scheme, exact_data
from .errors import CutQuadError, InvalidArgumentError
from .geometry import BoxCell, field_from_spec
from .octree import partition_element
from .optimizer import (Marking, equal_order_sweep, optimize, rule_of_thumb, scheme_error,
                        uniform_indices)
from .quadrature import BoxRuleKind, assemble_scheme, scheme_to_csv
from .scaling import comparison_csv

log = logging.getLogger("cutquad")

HEADER = "# cutcell-quad v1\n"

CIRCLE = {"kind": "ellipsoid", "r1": 0.6, "r2": 0.6, "phi_deg": 0.0, "dim": 2}
SPHERE = {"kind": "ellipsoid", "r1": 0.6, "r2": 0.6, "phi_deg": 0.0, "dim": 3}

DEFAULTS = {
    "name": "run",
    "geometry": CIRCLE,
    "element": {"origin": None, "size": 1.0},
    "rho_max": 3,
    "k": None,  # 8 in 2D, 5 in 3D
    "norm": "H1",
    # any of: gauss, uniform, thumbA, thumbB, adaptive
    "baselines": ["gauss"],
    "max_order": 6,
    "sweep_by": "index",  # "index" or "degree"
    "marking": "subcell",
    "budget": None,  # int, or {"equal_order": q} for the equal Gauss-degree-q total
    "target_error": None,
    "k_max": None,  # rules of thumb, defaults to k
    "svg": False,
    "svg_compare_order": 2,
    "scaling": None,  # {"rho": [...], "degree": q}
    "seed": 0,  # echoed in the summary; every stage is deterministic
    "cases": None,  # list of overrides run as separate cases
}

PRESETS = {
    "fig8a": {"name": "fig8a", "baselines": ["gauss", "uniform"], "max_order": 6},
    "equal-order-3d": {"name": "equal-order-3d", "geometry": SPHERE, "baselines": ["gauss", "uniform"],
                       "max_order": 4},
    "fig11": {"name": "fig11", "baselines": ["gauss", "adaptive"], "max_order": 4,
              "budget": {"equal_order": 2}, "svg": True},
    "target-2d": {"name": "target-2d", "baselines": ["gauss", "adaptive"], "max_order": 4,
                  "target_error": 7.35e-3, "svg": True},
    "marking-2d": {"name": "marking-2d", "baselines": ["adaptive"], "budget": 204,
                   "cases": [{"name": "subcell", "marking": "subcell"},
                             {"name": "level", "marking": "level"}]},
    "adaptive-3d": {"name": "adaptive-3d", "geometry": SPHERE, "baselines": ["gauss", "adaptive"],
                    "max_order": 2, "budget": {"equal_order": 2}, "marking": "level"},
    "degree-sweep": {"name": "degree-sweep", "baselines": ["adaptive"], "marking": "level",
                     "budget": 300, "cases": [{"name": f"k{k}", "k": k} for k in (2, 4, 6, 8, 10)]},
    "norm-sweep": {"name": "norm-sweep", "baselines": ["adaptive"], "marking": "level", "budget": 300,
                   "cases": [{"name": "H1", "norm": "H1"}, {"name": "L2", "norm": "L2"}]},
    "geometry-sweep": {"name": "geometry-sweep", "baselines": ["adaptive"], "marking": "level",
                       "budget": 300,
                       "cases": [{"name": f"r{r}-phi{phi}",
                                  "geometry": {"kind": "ellipsoid", "r1": r, "r2": 0.1,
                                               "phi_deg": phi, "dim": 2}}
                                 for r in (0.5, 0.6, 0.7, 0.8) for phi in (0, 45)]},
    "thumb-rules": {"name": "thumb-rules", "baselines": ["gauss", "thumbA", "thumbB", "adaptive"],
                    "max_order": 6, "marking": "level", "budget": 600},
    "scaling": {"name": "scaling", "geometry": SPHERE, "baselines": [],
                "scaling": {"rho": [2, 3, 4], "degree": 4}},
}


def load_config(path=None, preset=None) -> dict:
    cfg = copy.deepcopy(DEFAULTS)
    if preset is not None:
        if preset not in PRESETS:
            raise InvalidArgumentError(f"unknown preset {preset!r}; choose from {sorted(PRESETS)}")
        cfg.update(copy.deepcopy(PRESETS[preset]))
    if path is not None:
        with open(path) as fh:
            user = json.load(fh)
        if "preset" in user:
            cfg.update(copy.deepcopy(PRESETS.get(user["preset"]) or {}))
            if user["preset"] not in PRESETS:
                raise InvalidArgumentError(f"unknown preset {user['preset']!r}")
        unknown = set(user) - set(DEFAULTS) - {"preset"}
        if unknown:
            raise InvalidArgumentError(f"unknown config keys {sorted(unknown)}")
        cfg.update({k: v for k, v in user.items() if k != "preset"})
    return cfg


def _check(cfg):
    if "adaptive" in cfg["baselines"] and (cfg["budget"] is None) == (cfg["target_error"] is None):
        raise InvalidArgumentError("adaptive runs need exactly one of budget and target_error")
    bad = set(cfg["baselines"]) - {"gauss", "uniform", "thumbA", "thumbB", "adaptive"}
    if bad:
        raise InvalidArgumentError(f"unknown baselines {sorted(bad)}")


def _setup(cfg):
    field = field_from_spec(cfg["geometry"])
    d = field.dim
    origin = cfg["element"].get("origin") or [0.0] * d
    element = BoxCell(0, tuple(origin), float(cfg["element"].get("size", 1.0)))
    p = partition_element(field, element, int(cfg["rho_max"]))
    k = cfg["k"] if cfg["k"] is not None else DEFAULT_K[d]
    space = PolynomialSpace(d, int(k), Norm(cfg["norm"]))
    return p, space


def _write(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def run_case(cfg: dict, out: Path, want_svg: bool = False) -> dict:
    """Run one config; returns a small summary."""
    _check(cfg)
    p, space = _setup(cfg)
    _write(out / "partition.json", json.dumps(p.to_dict()) + "\n")
    summary = {"name": cfg["name"], "seed": cfg["seed"], "subcells": len(p.subcells)}
    if cfg["scaling"]:
        _scaling(cfg, out)
    if not cfg["baselines"]:
        return summary
    exact = exact_data(p, space)

    rows = []
    for base in cfg["baselines"]:
        if base in ("gauss", "uniform"):
            kind = BoxRuleKind.GAUSS if base == "gauss" else BoxRuleKind.UNIFORM
            for sp in equal_order_sweep(p, space, kind, cfg["max_order"], cfg["sweep_by"], exact):
                rows.append([base, sp.order, sp.total_points, repr(sp.e_total)])
        elif base in ("thumbA", "thumbB"):
            k_max = cfg["k_max"] if cfg["k_max"] is not None else space.k
            idx = rule_of_thumb(p, base[-1], k_max)
            total, e = scheme_error(p, space, idx, exact)
            rows.append([base, k_max, total, repr(e)])

    final_scheme = None
    if "adaptive" in cfg["baselines"]:
        budget = cfg["budget"]
        if isinstance(budget, dict):
            q = budget["equal_order"]
            budget, _ = scheme_error(p, space, uniform_indices(p, q, "degree"), exact)
        trace = optimize(p, space, budget=budget, target_error=cfg["target_error"],
                         marking=Marking(cfg["marking"]), exact=exact)
        _write(out / "trace.csv", trace.to_csv())
        last = trace.steps[-1]
        rows.append(["adaptive", trace.iterations, last.total_points, repr(last.e_total)])
        final_scheme = assemble_scheme(p, trace.final_idx)
        summary.update(points=last.total_points, error=last.e_total,
                       iterations=trace.iterations, termination=trace.termination.value)
    elif rows:
        final_scheme = assemble_scheme(p, uniform_indices(p, cfg["svg_compare_order"], "degree"))

    buf = io.StringIO()
    buf.write(HEADER)
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["baseline", "order", "points", "error"])
    w.writerows(rows)
    _write(out / "sweep.csv", buf.getvalue())

    if final_scheme is not None:
        _write(out / "scheme.csv", scheme_to_csv(p, final_scheme))
        report = evaluate_scheme(p, space, final_scheme, exact)
        _write(out / "error.json", report.to_json() + "\n")
    if (want_svg or cfg["svg"]) and p.dim == 2:
        ref = assemble_scheme(p, uniform_indices(p, cfg["svg_compare_order"], "degree"))
        panels = [(ref, f"Equal-order Gauss {cfg['svg_compare_order']}")]
        if "adaptive" in cfg["baselines"]:
            panels.append((final_scheme, "Optimized"))
        _write(out / "points.svg", svg.render(p, panels))
    return summary


def _scaling(cfg, out):
    sc = cfg["scaling"]
    parts = []
    for rho in sc["rho"]:
        c = dict(cfg, rho_max=rho)
        p, _ = _setup(c)
        body = comparison_csv(p, sc["degree"]).split("\n", 1)[1]
        parts.append(f"# depth {rho}\n" + body)
    _write(out / "scaling.csv", HEADER + "".join(parts))


def run(cfg: dict, out: Path, threads: int = 1, want_svg: bool = False) -> list:
    cases = cfg.get("cases")
    if not cases:
        return [run_case(cfg, out, want_svg)]
    jobs = []
    for case in cases:
        c = copy.deepcopy(cfg)
        c.update(case)
        c["cases"] = None
        jobs.append((c, out / case["name"]))
    with ThreadPoolExecutor(max_workers=max(1, threads)) as ex:
        return list(ex.map(lambda j: run_case(j[0], j[1], want_svg), jobs))


def _threads(arg):
    if arg is not None:
        return arg
    env = os.environ.get("CUTQUAD_THREADS")
    if env:
        try:
            return int(env)
        except ValueError:
            raise InvalidArgumentError(f"CUTQUAD_THREADS must be an integer, got {env!r}")
    return 1


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="cutquad", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", required=True)
    r = sub.add_parser("run", help="run an experiment")
    r.add_argument("--config", type=Path)
    r.add_argument("--preset")
    r.add_argument("--out", type=Path, default=Path("cutquad-out"))
    r.add_argument("--svg", action="store_true", help="write points.svg (2D only)")
    r.add_argument("--threads", type=int, default=None)
    r.add_argument("-v", "--verbose", action="store_true")
    sub.add_parser("presets", help="list presets")
    args = ap.parse_args(argv)

    if args.cmd == "presets":
        for name in sorted(PRESETS):
            print(name)
        return 0
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.config is None and args.preset is None:
            raise InvalidArgumentError("give --config or --preset")
        cfg = load_config(args.config, args.preset)
        summaries = run(cfg, args.out / cfg["name"], _threads(args.threads), args.svg)
    except CutQuadError as exc:
        print(json.dumps(exc.to_dict()), file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        print(json.dumps({"error": "invalid-config", "message": str(exc)}), file=sys.stderr)
        return 2
    print(json.dumps(summaries, default=float))
    return 0


if __name__ == "__main__":
    sys.exit(main())
