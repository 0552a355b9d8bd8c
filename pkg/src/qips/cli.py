"""Command-line front end.

Subcommands ``model``, ``quantize``, ``zeta``, ``abszeta``, ``simulate``
and ``scan`` each print one JSON document (or write it to ``--json``).
Exit status is 0 on success, 2 on invalid input and 3 when an identity
check exceeds the tolerance.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import _scalar
from .abszeta import (
    absolute_zeta,
    check_functional_equation,
    epsilon_factor,
    mellin_Z,
    subset_sum_Z,
    theorem5_expand,
)
from .errors import DomainError, ExactnessWarning, ReconstructionError, StructureError
from .graph_markov import chain_to_json
from .ips_core import (
    Configuration,
    classify_local,
    global_from_local,
    local_from_json,
    sample_next_states,
    sample_trajectory,
    total_variation,
)
from .pipeline import (
    ModelSpec,
    combined_reciprocal,
    component_blocks,
    component_chains,
    direct_sum_reciprocal,
    quiet_quantize,
    recognise,
)
from .polynomial import relative_gap
from .quantizer import build_coupling, coin_to_json, symmetrize, unitarity_defect, walk_evolve
from .zeta import corollary4_spectrum, multiset_distance, verify_theorem2

log = logging.getLogger("qips")

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_VIOLATION = 3
FE_TOL = 1e-5

ANCHORS = {
    "model": ["local operator", "tensor-product global operator", "last-bit block split"],
    "quantize": ["arc-space quantization 2 K L^T - J", "orthogonality of the coin", "symmetrized matrix S"],
    "zeta": [
        "zeta function 1/det(I - uU)",
        "factorization of det(I - uU) through det((1+u^2) I - 2u S)",
        "coin spectrum mu +- i sqrt(1 - mu^2) with -1 and +1 multiplicities",
    ],
    "abszeta": [
        "absolute automorphic form f(1/x) = C x^-D f(x)",
        "multiple gamma product for the absolute zeta function",
        "functional equation with multiple sine factors",
    ],
    "simulate": ["sampled dynamics of the local rule", "coin evolution"],
    "scan": ["cyclotomic shape over a (p, q) grid"],
}


def _fmt(x, exact: bool):
    if exact:
        return _scalar.fraction_str(x)
    x = complex(x)
    return x.real if x.imag == 0 else [x.real, x.imag]


def _matrix_json(a) -> list:
    exact = _scalar.is_exact(a)
    return [[_fmt(x, exact) for x in row] for row in np.asarray(a)]


def _parse_pair(text: str) -> tuple[str, str]:
    parts = text.split(",")
    if len(parts) != 2:
        raise DomainError(f"--dk expects 'p,q', got {text!r}")
    return parts[0].strip(), parts[1].strip()


def _number(text: str, mode: str):
    try:
        return Fraction(text) if mode == _scalar.EXACT else float(Fraction(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"cannot parse number {text!r}") from exc


def _spec(args) -> ModelSpec:
    if (args.dk is None) == (args.local is None):
        raise DomainError("give exactly one of --dk and --local")
    if args.dk is not None:
        p, q = _parse_pair(args.dk)
        return ModelSpec.dk(args.n, _number(p, args.mode), _number(q, args.mode), args.mode, args.tol)
    op = local_from_json(Path(args.local), args.mode)
    return ModelSpec(args.n, op, args.mode, args.tol, source=str(args.local))


def _components(args) -> tuple[int, ...]:
    return (1, 2) if args.component == "all" else (int(args.component),)


def _header(args, spec: ModelSpec, command: str) -> dict:
    return {
        "command": command,
        "N": spec.N,
        "source": spec.source,
        "mode": spec.mode,
        "tol": spec.tol,
        "anchors": ANCHORS[command],
        "violations": [],
    }


def cmd_model(args) -> dict:
    spec = _spec(args)
    cls = classify_local(spec.local)
    out = _header(args, spec, "model")
    out["classification"] = {
        "right_preserving": cls.right_preserving,
        "is_pca": cls.is_pca,
        "is_qca": cls.is_qca,
        "tolerance": cls.tolerance,
    }
    out["local"] = _matrix_json(spec.local.entries)
    if args.full:
        out["global"] = _matrix_json(global_from_local(spec.local, spec.N).entries)
    blocks = component_blocks(spec)
    out["components"] = {str(c): {"block": _matrix_json(blocks[c])} for c in _components(args)}
    return out


def cmd_quantize(args) -> dict:
    spec = _spec(args)
    out = _header(args, spec, "quantize")
    comps = {}
    for c, chain in component_chains(spec, _components(args)).items():
        coin = quiet_quantize(chain)
        cm = build_coupling(chain)
        KtK = _scalar.float_array(cm.K.T @ cm.K)
        defect = unitarity_defect(coin)
        comps[str(c)] = {
            "chain": chain_to_json(chain),
            "coin": coin_to_json(coin, chain.graph.labels),
            "S": _matrix_json(symmetrize(chain).S),
            "unitarity_defect": defect,
            "KtK_defect": float(np.max(np.abs(KtK - np.eye(chain.n)))),
        }
        if defect > spec.tol:
            out["violations"].append(f"component {c}: unitarity defect {defect:.3e}")
    out["components"] = comps
    return out


def _poly_json(P) -> dict:
    return P.to_json()


def cmd_zeta(args) -> dict:
    spec = _spec(args)
    out = _header(args, spec, "zeta")
    comps, coins = {}, []
    worst = 0.0
    for c, chain in component_chains(spec, _components(args)).items():
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", ExactnessWarning)
            rep = verify_theorem2(chain, spec.tol)
            S = symmetrize(chain)
        coin = quiet_quantize(chain)
        coins.append(coin)
        spec_rep = corollary4_spectrum(S, chain.n, chain.m)
        direct = np.linalg.eigvals(_scalar.float_array(coin.U))
        dist = multiset_distance(spec_rep.eigenvalues, direct)
        worst = max(worst, rep.relative_gap)
        comps[str(c)] = {
            "n": chain.n,
            "m": chain.m,
            "zeta_reciprocal": _poly_json(rep.lhs),
            "factorized": _poly_json(rep.rhs),
            "max_coefficient_gap": rep.max_coefficient_gap,
            "relative_gap": rep.relative_gap,
            "spectrum": {
                "mu": [float(x) for x in spec_rep.mu_list],
                "minus_one_mult": spec_rep.minus_one_mult,
                "plus_one_mult": spec_rep.plus_one_mult,
                "cancelled": spec_rep.cancelled,
                "distance_to_eigensolve": dist,
            },
        }
        if dist > spec.tol:
            out["violations"].append(f"component {c}: predicted spectrum off by {dist:.3e}")
    out["components"] = comps
    combined = combined_reciprocal(coins)
    direct = direct_sum_reciprocal(coins)
    out["combined"] = {
        "zeta_reciprocal": _poly_json(combined),
        "multiplicativity_gap": relative_gap(combined, direct),
        "multiplicativity_abs_gap": combined.max_gap(direct),
    }
    out["max_relative_gap"] = worst
    if worst > spec.tol:
        out["violations"].append(f"factorization gap {worst:.3e} exceeds {spec.tol}")
    return out


def _numeric_block(report, s_values) -> dict:
    out = {"samples": []}
    for s in s_values:
        entry = {"s": _scalar.fraction_str(s)}
        try:
            entry["zeta_f"] = absolute_zeta(report, float(s))
            entry["epsilon_f"] = epsilon_factor(report, float(s))
            entry["functional_equation_residual"] = check_functional_equation(report, s)
        except DomainError as exc:
            entry["window_error"] = str(exc)
        out["samples"].append(entry)
    form = report.form
    w = form.b + 1
    s = float(report.deg_f) + 2
    mz = mellin_Z(form, w, s)
    ss = subset_sum_Z(form, w, s)
    out["mellin"] = {"w": w, "s": s, "integral": mz, "subset_sum": ss, "gap": abs(mz - ss)}
    if report.critical_s is not None:
        crit = report.critical_s
        try:
            out["critical"] = {
                "s": _scalar.fraction_str(crit),
                "zeta_f": absolute_zeta(report, float(crit)),
                "epsilon_f": epsilon_factor(report, float(crit)),
            }
        except DomainError as exc:
            out["critical"] = {"s": _scalar.fraction_str(crit), "window_error": str(exc)}
    return out


def cmd_abszeta(args) -> dict:
    spec = _spec(args)
    out = _header(args, spec, "abszeta")
    chains = component_chains(spec, _components(args))
    coins = [quiet_quantize(ch) for ch in chains.values()]
    recip = combined_reciprocal(coins)
    outcome = recognise(recip)
    out["zeta_reciprocal"] = _poly_json(recip)
    out.update(outcome.to_json())
    if outcome.form is None:
        return out
    report = theorem5_expand(outcome.form)
    out["theorem5"] = report.to_json()
    if report.critical_s is not None:
        out["zeta_at_critical"] = [str(g) for g in report.symbolic_zeta(report.critical_s)]
    if args.numeric:
        s_values = [_scalar.to_fraction(x) for x in args.s] if args.s else [
            report.critical_s if report.critical_s is not None else Fraction(0)
        ]
        numeric = _numeric_block(report, s_values)
        out["numeric"] = numeric
        for e in numeric["samples"]:
            if e.get("functional_equation_residual", 0) > FE_TOL:
                out["violations"].append(f"functional equation residual too large at s={e['s']}")
    return out


def cmd_simulate(args) -> dict:
    spec = _spec(args)
    out = _header(args, spec, "simulate")
    if not classify_local(spec.local).is_pca:
        raise DomainError("simulate needs a stochastic (PCA) local operator")
    g = _scalar.float_array(global_from_local(spec.local, spec.N).entries).real
    inits = (
        [Configuration.from_string(args.init)]
        if args.init
        else [Configuration.from_index(k, spec.N) for k in range(2**spec.N)]
    )
    if any(c.N != spec.N for c in inits):
        raise DomainError("--init length must equal --n")
    tv, freq = {}, {}
    for k, init in enumerate(inits):
        idx = sample_next_states(spec.local, init, args.samples, args.seed + k)
        emp = np.bincount(idx, minlength=2**spec.N) / args.samples
        tv[str(init)] = total_variation(emp, g[:, init.index])
        freq[str(init)] = {
            str(Configuration.from_index(j, spec.N)): float(emp[j]) for j in np.flatnonzero(emp)
        }
    start = inits[0] if args.init else Configuration(tuple([1] * spec.N))
    traj = sample_trajectory(spec.local, start, args.steps, args.seed)
    density = [float(np.mean(c.bits)) for c in traj]
    drift = {}
    for c, chain in component_chains(spec).items():
        coin = quiet_quantize(chain)
        psi = np.ones(coin.dim) / np.sqrt(coin.dim)
        end = walk_evolve(coin, psi, args.walk_steps)
        drift[str(c)] = abs(float(np.linalg.norm(end)) - 1.0)
    out.update(
        {
            "samples": args.samples,
            "seed": args.seed,
            "frequencies": freq,
            "total_variation": tv,
            "max_total_variation": max(tv.values()),
            "trajectory_start": str(start),
            "density": density,
            "walk_steps": args.walk_steps,
            "walk_norm_drift": drift,
        }
    )
    return out


def _scan_point(task) -> dict:
    N, p, q = task
    spec = ModelSpec.dk(N, p, q, _scalar.EXACT)
    coins = [quiet_quantize(ch) for ch in component_chains(spec).values()]
    outcome = recognise(combined_reciprocal(coins))
    return {"p": _scalar.fraction_str(p), "q": _scalar.fraction_str(q), **outcome.to_json()}


def scan_grid(step: Fraction, N: int, workers: int = 1) -> list[dict]:
    if not 0 < step <= Fraction(1, 2) and step != 1:
        raise DomainError("grid step must lie in (0, 1/2] or equal 1")
    count = int(1 / step)
    if Fraction(count) * step != 1:
        raise DomainError("grid step must divide 1")
    ticks = [k * step for k in range(count + 1)]
    tasks = [(N, p, q) for p in ticks for q in ticks]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_scan_point, tasks))
    return [_scan_point(t) for t in tasks]


def cmd_scan(args) -> dict:
    step = _scalar.to_fraction(args.step)
    results = scan_grid(step, args.n, args.workers)
    return {
        "command": "scan",
        "N": args.n,
        "step": _scalar.fraction_str(step),
        "anchors": ANCHORS["scan"],
        "violations": [],
        "points": results,
        "cyclotomic": [
            {"p": r["p"], "q": r["q"], "form": r["cyclotomic_form"]}
            for r in results
            if r["cyclotomic_form"] is not None
        ],
    }


def _add_model_args(sp, needs_source: bool = True) -> None:
    sp.add_argument("--n", type=int, required=True, help="number of sites N")
    if needs_source:
        sp.add_argument("--dk", help="Domany-Kinzel parameters as 'p,q' (fractions allowed)")
        sp.add_argument("--local", help="JSON file with a local operator")
        sp.add_argument("--mode", choices=[_scalar.EXACT, _scalar.FLOAT], default=_scalar.FLOAT)
        sp.add_argument("--tol", type=float, default=1e-9)
        sp.add_argument("--component", choices=["1", "2", "all"], default="all")
    sp.add_argument("--json", dest="json_path", help="write the report here instead of stdout")
    sp.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qips", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("model", help="global operator blocks and classification")
    _add_model_args(sp)
    sp.add_argument("--full", action="store_true", help="include the full global operator")
    sp.set_defaults(func=cmd_model)

    sp = sub.add_parser("quantize", help="coin U, matrix S and unitarity defect")
    _add_model_args(sp)
    sp.set_defaults(func=cmd_quantize)

    sp = sub.add_parser("zeta", help="zeta reciprocals, factorization gap and spectrum")
    _add_model_args(sp)
    sp.set_defaults(func=cmd_zeta)

    sp = sub.add_parser("abszeta", help="automorphy, cyclotomic form and absolute zeta")
    _add_model_args(sp)
    sp.add_argument("--numeric", action="store_true", help="evaluate gamma and sine products")
    sp.add_argument("--s", nargs="*", default=[], help="sample points for the functional equation")
    sp.set_defaults(func=cmd_abszeta)

    sp = sub.add_parser("simulate", help="sampled dynamics and coin norm drift")
    _add_model_args(sp)
    sp.add_argument("--steps", type=int, default=20)
    sp.add_argument("--samples", type=int, default=100000)
    sp.add_argument("--init", help="initial configuration as a bit string")
    sp.add_argument("--walk-steps", type=int, default=1000)
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("scan", help="cyclotomic recognition over a (p, q) grid")
    _add_model_args(sp, needs_source=False)
    sp.add_argument("--step", default="1/2", help="grid step, a fraction in (0, 1/2] or 1")
    sp.add_argument("--workers", type=int, default=1)
    sp.set_defaults(func=cmd_scan)
    return parser


def _emit(doc: dict, path: str | None) -> None:
    text = json.dumps(doc, indent=2, sort_keys=False) + "\n"
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        doc = args.func(args)
    except (DomainError, StructureError, ReconstructionError, ValueError, OSError) as exc:
        sys.stderr.write(f"qips: {exc}\n")
        return EXIT_INVALID
    _emit(doc, args.json_path)
    for msg in doc.get("violations", []):
        sys.stderr.write(f"qips: identity check failed: {msg}\n")
    return EXIT_VIOLATION if doc.get("violations") else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
