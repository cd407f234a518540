"""Batch experiment runner with deterministic CSV output.

Subcommands: run (one experiment from a config), bench (DFT timing),
verify (compact full-property suite), list (experiment registry).

Exit codes follow the report convention: 0 when every asserted property
holds, 2 when the only failures are violated hypotheses (a vacuous run,
not a proof), 1 on any conclusion failure, 3 on config/validation errors.
Heavy numeric imports stay inside the command handlers so --threads can
pin the BLAS pool before numpy loads.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from dataclasses import dataclass, field, replace

SCHEMA_VERSION = 1

EXPERIMENTS = {
    "dft-roundtrip": "transform laws (Plancherel, inversion, convolution, shift/modulation) on random signals",
    "inequality-suite": "the five spectral inequalities on randomized hypothesis-satisfying instances",
    "adjoint-build": "build one adjoint pair and certify strong adjointness",
    "transform": "finite approximation of a continuum transform; convergence series over doubling sizes",
    "stability": "noisy character fitting: brute and factorwise recovery",
    "bohr-chain": "iterated Bohr containment on generated chains",
    "bench": "reference vs fast DFT timings (agreement asserted first)",
}


class ConfigError(Exception):
    """Bad config file or parameter; carries a pointing diagnostic."""


@dataclass(frozen=True)
class ExperimentConfig:
    experiment: str
    seed: int = 42
    trials: int = 0  # 0 means the experiment's default
    out: str = "results"
    grid_density: float = 64.0
    params: dict = field(default_factory=dict)


def load_config(path: str | None, experiment: str | None) -> ExperimentConfig:
    data = {}
    if path is not None:
        try:
            with open(path) as fh:
                data = json.load(fh)
        except OSError as e:
            raise ConfigError(f"cannot read config {path}: {e}") from e
        except json.JSONDecodeError as e:
            raise ConfigError(f"config {path} is not valid JSON: {e}") from e
        if not isinstance(data, dict):
            raise ConfigError(f"config {path}: top level must be an object")
    schema = data.get("schema", SCHEMA_VERSION)
    if schema != SCHEMA_VERSION:
        raise ConfigError(f"schema: expected {SCHEMA_VERSION}, got {schema!r}")
    kind = experiment or data.get("experiment")
    if kind not in EXPERIMENTS:
        known = ", ".join(sorted(EXPERIMENTS))
        raise ConfigError(f"experiment: expected one of [{known}], got {kind!r}")
    cfg = ExperimentConfig(
        experiment=kind,
        seed=_as_int(data.get("seed", 42), "seed", lo=0),
        trials=_as_int(data.get("trials", 0), "trials", lo=0),
        out=str(data.get("out", "results")),
        grid_density=_as_float(data.get("grid_density", 64.0), "grid_density", lo=1.0),
        params=dict(data.get("params", {})),
    )
    if not isinstance(cfg.params, dict):
        raise ConfigError("params: must be an object")
    return cfg


def _as_int(v, key: str, lo=None, hi=None) -> int:
    if not isinstance(v, int) or isinstance(v, bool):
        raise ConfigError(f"{key}: expected an integer, got {v!r}")
    if lo is not None and v < lo:
        raise ConfigError(f"{key}: must be >= {lo}, got {v}")
    if hi is not None and v > hi:
        raise ConfigError(f"{key}: must be <= {hi}, got {v}")
    return v


def _as_float(v, key: str, lo=None, hi=None) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"{key}: expected a number, got {v!r}")
    v = float(v)
    if not math.isfinite(v):
        raise ConfigError(f"{key}: must be finite, got {v}")
    if lo is not None and v < lo:
        raise ConfigError(f"{key}: must be >= {lo}, got {v}")
    if hi is not None and v > hi:
        raise ConfigError(f"{key}: must be <= {hi}, got {v}")
    return v


def _param_int(params: dict, key: str, default: int, lo=None, hi=None) -> int:
    return _as_int(params.get(key, default), f"params.{key}", lo, hi)


def _param_float(params: dict, key: str, default: float, lo=None, hi=None) -> float:
    return _as_float(params.get(key, default), f"params.{key}", lo, hi)


# -- status bookkeeping --------------------------------------------------------


def _tally(reports) -> dict:
    counts = {"ok": 0, "hypothesis-failed": 0, "conclusion-failed": 0}
    for r in reports:
        counts[r.status] += 1
    return counts


def _merge(*counts_list) -> dict:
    out = {"ok": 0, "hypothesis-failed": 0, "conclusion-failed": 0}
    for c in counts_list:
        for k, v in c.items():
            out[k] += v
    return out


def exit_code_from(counts: dict) -> int:
    if counts.get("conclusion-failed", 0):
        return 1
    if counts.get("hypothesis-failed", 0):
        return 2
    return 0


def _say(msg: str):
    print(msg, flush=True)


# -- experiments ----------------------------------------------------------------


def run_dft_roundtrip(cfg: ExperimentConfig, outdir: str) -> dict:
    import numpy as np

    from .groups import element_array, phase_block, unit_roots
    from .harmonic import convolve, dft, idft, modulate, norm, shift
    from .instances import random_group, random_signal
    from .reports import BoundReport, write_bound_reports

    trials = cfg.trials or 200
    max_size = _param_int(cfg.params, "max_size", 4096, lo=2)
    tol_exact = _param_float(cfg.params, "tol_exact", 1e-10, lo=0.0)
    tol_fast = _param_float(cfg.params, "tol_fast", 1e-9, lo=0.0)
    rng = np.random.default_rng(cfg.seed)
    reports = []
    for k in range(trials):
        g = random_group(rng, max_size)
        f = random_signal(rng, g)
        h = random_signal(rng, g, scale=f.scale)
        meta = {"trial": k, "orders": g.orders, "scale": f.scale}
        F, H = dft(f), dft(h)

        err = abs(norm(f, 2) - norm(F, 2)) / norm(f, 2)
        reports.append(BoundReport.concluded("plancherel", meta, err, tol_exact, err <= tol_exact))

        back = idft(F)
        sup = float(np.max(np.abs(f.values)))
        err = float(np.max(np.abs(back.values - f.values))) / sup
        reports.append(BoundReport.concluded("inversion", meta, err, tol_fast, err <= tol_fast))

        prod = F.values * H.values
        err = float(np.max(np.abs(dft(convolve(f, h)).values - prod)))
        err /= max(float(np.max(np.abs(prod))), 1e-300)
        reports.append(BoundReport.concluded("convolution", meta, err, tol_fast, err <= tol_fast))

        a = g.element_at(int(rng.integers(0, g.size)))
        ph = phase_block(g, element_array(g), np.array([g.normalize(a)], dtype=np.int64))[:, 0]
        want = F.values * np.conj(unit_roots(g)[ph])
        err = float(np.max(np.abs(dft(shift(f, a)).values - want))) / max(
            float(np.max(np.abs(F.values))), 1e-300
        )
        reports.append(BoundReport.concluded("shift-law", meta, err, tol_exact, err <= tol_exact))

        b = g.element_at(int(rng.integers(0, g.size)))
        digits = tuple(c % o for c, o in zip(g.normalize(b), g.orders))
        want = np.roll(F.values.reshape(g.orders), digits, axis=tuple(range(g.rank))).reshape(-1)
        err = float(np.max(np.abs(dft(modulate(f, b)).values - want))) / max(
            float(np.max(np.abs(F.values))), 1e-300
        )
        reports.append(
            BoundReport.concluded("modulation-law", meta, err, tol_exact, err <= tol_exact)
        )
    path = os.path.join(outdir, "dft_roundtrip.csv")
    write_bound_reports(reports, path)
    counts = _tally(reports)
    _say(f"dft-roundtrip: {trials} trials, {counts['ok']} checks ok -> {path}")
    return counts


def run_inequality_suite(cfg: ExperimentConfig, outdir: str) -> dict:
    import numpy as np

    from . import instances as inst
    from .bohr import (
        check_bohr_in_spec,
        check_energy_lower_bound,
        check_smoothness_decay,
        check_spec_bohr_in_diffset,
        check_spec_size_bounds,
    )
    from .reports import write_bound_reports

    per_check = cfg.trials or 400
    max_size = _param_int(cfg.params, "max_size", 512, lo=2)
    rng = np.random.default_rng(cfg.seed)
    reports = []
    for k in range(per_check):
        f, D = inst.energy_instance(rng, max_size)
        reports.append(check_energy_lower_bound(f, D))
        f, D, alpha, t = inst.bohr_spec_instance(rng, max_size)
        reports.append(check_bohr_in_spec(f, D, alpha, t))
        f, D, alpha, t = inst.diffset_instance(rng, max_size)
        reports.append(check_spec_bohr_in_diffset(f, D, alpha, t))
        f, D, t = inst.spec_size_instance(rng, max_size)
        reports.append(check_spec_size_bounds(f, D, t))
        variant = "sup" if k % 2 == 0 else "l1"
        f, C, D, t, alpha, eps = inst.smoothness_instance(rng, max_size, variant)
        reports.append(check_smoothness_decay(f, C, D, t, alpha, eps, variant=variant))
    f6, H6 = inst.z6_energy_equality()
    reports.append(check_energy_lower_bound(f6, H6))
    path = os.path.join(outdir, "inequality_suite.csv")
    write_bound_reports(reports, path)
    counts = _tally(reports)
    _say(
        f"inequality-suite: {len(reports)} reports, ok={counts['ok']} "
        f"hypothesis-failed={counts['hypothesis-failed']} "
        f"conclusion-failed={counts['conclusion-failed']} -> {path}"
    )
    return counts


def _build_pair_from_params(params: dict):
    from .approx import (
        build_adjoint_pair_circle,
        build_adjoint_pair_reals,
        build_adjoint_pair_tower,
    )
    from .lca import QuotientTower

    family = params.get("family", "circle")
    if family == "circle":
        return build_adjoint_pair_circle(
            n=_param_int(params, "n", 4096, lo=1),
            alpha=_param_float(params, "alpha", math.pi / 3),
            r=_param_float(params, "r", 0.02),
            eps=_param_float(params, "eps", 0.0),
        )
    if family == "real":
        return build_adjoint_pair_reals(
            n=_param_int(params, "n", 4096, lo=1),
            step=_param_float(params, "step", 0.05),
            alpha=_param_float(params, "alpha", math.pi / 3),
            r=_param_float(params, "r", 0.105),
            rho=_param_float(params, "rho", 0.4),
            eps=_param_float(params, "eps", 0.28),
        )
    if family == "tower":
        depth = _param_int(params, "depth", 8, lo=1)
        model = QuotientTower(
            prime=_param_int(params, "p", 2, lo=2),
            depth=depth,
            unit_level=_param_int(params, "model_unit_level", depth // 2, lo=0, hi=depth),
        )
        return build_adjoint_pair_tower(
            model,
            base_level=_param_int(params, "base_level", 3, lo=0),
            unit_level=_param_int(params, "unit_level", 5, lo=0),
            alpha=_param_float(params, "alpha", math.pi / 3),
            eps=_param_float(params, "eps", 0.0),
        )
    raise ConfigError(f"params.family: expected circle|real|tower, got {family!r}")


def run_adjoint_build(cfg: ExperimentConfig, outdir: str) -> dict:
    from .approx import ParameterError, verify_strong_adjointness
    from .reports import write_certificates

    try:
        pair = _build_pair_from_params(cfg.params)
    except ParameterError as e:
        raise ConfigError(f"adjoint-build parameters rejected: {e}") from e
    cert = verify_strong_adjointness(pair)
    path = os.path.join(outdir, "adjoint_certificates.csv")
    write_certificates([cert], path)
    status = "certified" if cert.certified else "FAILED"
    _say(f"adjoint-build [{cfg.params.get('family', 'circle')}]: {status} -> {path}")
    counts = {"ok": 0, "hypothesis-failed": 0, "conclusion-failed": 0}
    counts["ok" if cert.certified else "conclusion-failed"] += 1
    return counts


def run_transform(cfg: ExperimentConfig, outdir: str) -> dict:
    from .approx import build_circle_approx, build_real_approx
    from .lca import Gaussian, RealLine, TrigPoly, eval_ref, reference_transform
    from .lifting import modified_ft, sample_lifting
    from .reports import write_series

    model_kind = cfg.params.get("model", "real")
    sizes = cfg.params.get("sizes", [256, 512, 1024, 2048, 4096, 8192])
    if not (isinstance(sizes, list) and sizes and all(isinstance(n, int) and n >= 3 for n in sizes)):
        raise ConfigError("params.sizes: expected a list of integers >= 3")
    series = []
    if model_kind == "real":
        sigma = _param_float(cfg.params, "sigma", 1.0, lo=1e-9)
        gamma_max = _param_float(cfg.params, "gamma_max", 5.0, lo=0.0)
        base_step = _param_float(cfg.params, "step", 0.4, lo=1e-9)
        f_cont = Gaussian(sigma=sigma)
        _, fhat = reference_transform(RealLine(), f_cont)
        for n in sizes:
            step = base_step * math.sqrt(sizes[0] / n)
            eta = build_real_approx(n, step)
            sig = sample_lifting(f_cont, eta, scale=step)
            dstep = 2.0 * math.pi / (n * step)
            jmax = int(gamma_max / dstep)
            worst = 0.0
            for j in range(-jmax, jmax + 1):
                chi = float(j * dstep)
                err = abs(modified_ft(sig, eta, chi) - eval_ref(fhat, chi))
                worst = max(worst, err)
            series.append((n, worst))
            _say(f"transform [real/gaussian] n={n} step={step:.6g} sup_err={worst:.3e}")
    elif model_kind == "circle":
        coeffs = ((0, 1.0), (1, 0.5), (-1, 0.5))
        f_cont = TrigPoly(coeffs)
        want = dict(coeffs)
        for n in sizes:
            eta = build_circle_approx(n)
            sig = sample_lifting(f_cont, eta, scale=1.0 / n)
            worst = 0.0
            for k in range(-(n // 2) + 1, n // 2 + 1):
                got = modified_ft(sig, eta, k)
                worst = max(worst, abs(got - want.get(k, 0.0)))
            series.append((n, worst))
            _say(f"transform [circle/trigpoly] n={n} sup_coeff_err={worst:.3e}")
    else:
        raise ConfigError(f"params.model: expected real|circle, got {model_kind!r}")
    path = os.path.join(outdir, "transform_convergence.csv")
    write_series(series, path, header=("n", "sup_err"))
    tol = _param_float(cfg.params, "tol", 1e-6 if model_kind == "real" else 1e-12, lo=0.0)
    ok = series[-1][1] <= tol
    _say(f"transform: final sup_err {series[-1][1]:.3e} vs tol {tol:g} -> {path}")
    counts = {"ok": 0, "hypothesis-failed": 0, "conclusion-failed": 0}
    counts["ok" if ok else "conclusion-failed"] += 1
    return counts


def run_stability(cfg: ExperimentConfig, outdir: str) -> dict:
    import csv

    import numpy as np

    from .instances import noisy_character_instance
    from .reports import fmt
    from .stability import fit_character

    trials = cfg.trials or 200
    max_size = _param_int(cfg.params, "max_size", 1024, lo=2)
    delta = _param_float(cfg.params, "delta", 0.05, lo=0.0, hi=math.pi)
    rng = np.random.default_rng(cfg.seed)
    rows = []
    failures = 0
    for k in range(trials):
        g, chi, pmap, A0 = noisy_character_instance(rng, max_size, delta)
        brute = fit_character(pmap, A0, strategy="brute")
        fact = fit_character(pmap, A0, strategy="factorwise")
        recovered = brute.character == g.normalize(chi)
        agree = fact.character == brute.character
        close_ok = brute.closeness <= delta + 1e-12
        if not (recovered and agree and close_ok):
            failures += 1
        rows.append(
            [
                k,
                "x".join(str(o) for o in g.orders),
                g.index_of(chi),
                g.index_of(brute.character),
                g.index_of(fact.character),
                fmt(brute.closeness),
                str(bool(recovered and agree and close_ok)).lower(),
            ]
        )
    path = os.path.join(outdir, "stability_fits.csv")
    with open(path, "w", newline="\n") as fh:
        w = csv.writer(fh)
        w.writerow(["trial", "orders", "injected", "brute", "factorwise", "closeness", "pass"])
        w.writerows(rows)
    _say(f"stability: {trials} trials, {failures} failures (delta={delta:g}) -> {path}")
    counts = {"ok": trials - failures, "hypothesis-failed": 0, "conclusion-failed": failures}
    return counts


def run_bohr_chain(cfg: ExperimentConfig, outdir: str) -> dict:
    import numpy as np

    from .instances import chain_instance
    from .reports import write_bound_reports
    from .stability import bohr_chain_check

    trials = cfg.trials or 200
    max_size = _param_int(cfg.params, "max_size", 1024, lo=128)
    rng = np.random.default_rng(cfg.seed)
    reports = []
    for _ in range(trials):
        sets, alpha, beta = chain_instance(rng, max_size)
        reports.append(bohr_chain_check(sets, alpha, beta))
    path = os.path.join(outdir, "bohr_chains.csv")
    write_bound_reports(reports, path)
    counts = _tally(reports)
    _say(
        f"bohr-chain: {trials} chains, ok={counts['ok']} "
        f"hypothesis-failed={counts['hypothesis-failed']} "
        f"conclusion-failed={counts['conclusion-failed']} -> {path}"
    )
    return counts


def run_bench(cfg: ExperimentConfig, outdir: str) -> dict:
    import csv

    import numpy as np

    from .groups import Group
    from .harmonic import Signal, dft
    from .reports import fmt

    sizes = cfg.params.get("sizes", [256, 1024, 4096, 4099, 4620, 16384])
    if not (isinstance(sizes, list) and sizes and all(isinstance(n, int) and n >= 1 for n in sizes)):
        raise ConfigError("params.sizes: expected a list of integers >= 1")
    repeats = _param_int(cfg.params, "repeats", 3, lo=1)
    tol = _param_float(cfg.params, "tol", 1e-9, lo=0.0)
    rng = np.random.default_rng(cfg.seed)
    rows = []
    counts = {"ok": 0, "hypothesis-failed": 0, "conclusion-failed": 0}
    for n in sizes:
        g = Group((n,))
        f = Signal(g, rng.standard_normal(n) + 1j * rng.standard_normal(n), 1.0 / n)
        fast = dft(f, mode="fast")
        ref = dft(f, mode="reference")
        sup = max(float(np.max(np.abs(ref.values))), 1e-300)
        agree = float(np.max(np.abs(fast.values - ref.values))) / sup
        ok = agree <= tol
        counts["ok" if ok else "conclusion-failed"] += 1
        t_fast = _best_time(lambda: dft(f, mode="fast"), repeats)
        t_ref = _best_time(lambda: dft(f, mode="reference"), repeats)
        speedup = t_ref / t_fast if t_fast > 0 else math.inf
        rows.append([n, fmt(t_ref), fmt(t_fast), fmt(speedup), fmt(agree), str(ok).lower()])
        _say(
            f"bench n={n}: ref {t_ref:.4f}s fast {t_fast:.4f}s "
            f"speedup {speedup:.1f}x agreement {agree:.2e}"
        )
    path = os.path.join(outdir, "bench_dft.csv")
    with open(path, "w", newline="\n") as fh:
        w = csv.writer(fh)
        w.writerow(["size", "ref_seconds", "fast_seconds", "speedup", "agreement", "pass"])
        w.writerows(rows)
    _say(f"bench: {len(sizes)} sizes -> {path} (speedup is logged, not asserted)")
    return counts


def _best_time(fn, repeats: int) -> float:
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


RUNNERS = {
    "dft-roundtrip": run_dft_roundtrip,
    "inequality-suite": run_inequality_suite,
    "adjoint-build": run_adjoint_build,
    "transform": run_transform,
    "stability": run_stability,
    "bohr-chain": run_bohr_chain,
    "bench": run_bench,
}


def run_experiment(cfg: ExperimentConfig) -> int:
    os.makedirs(cfg.out, exist_ok=True)
    counts = RUNNERS[cfg.experiment](cfg, cfg.out)
    code = exit_code_from(counts)
    _say(f"{cfg.experiment}: exit {code}")
    return code


# -- verify: the compact full-property suite -------------------------------------


def cmd_verify(cfg: ExperimentConfig) -> int:
    os.makedirs(cfg.out, exist_ok=True)
    all_counts = []
    for kind, trials in (
        ("dft-roundtrip", 60),
        ("inequality-suite", 100),
        ("stability", 60),
        ("bohr-chain", 40),
    ):
        sub = replace(cfg, experiment=kind, trials=cfg.trials or trials, params={})
        all_counts.append(RUNNERS[kind](sub, cfg.out))
    for family in ("circle", "real", "tower"):
        sub = replace(cfg, experiment="adjoint-build", params={"family": family})
        all_counts.append(run_adjoint_build(sub, cfg.out))
    sub = replace(
        cfg, experiment="transform", params={"model": "circle", "sizes": [64, 128, 256]}
    )
    all_counts.append(run_transform(sub, cfg.out))

    from .bohr import bohr
    from .groups import abelian_group_catalogue, annihilator, enumerate_subgroups

    mism = 0
    total = 0
    for g in abelian_group_catalogue(64):
        subgroups, _complete = enumerate_subgroups(g)
        for H in subgroups:
            ann = annihilator(g, H)
            for alpha in (math.pi / 6, math.pi / 3, math.pi / 2):
                total += 1
                if bohr(H, alpha).members != ann.members:
                    mism += 1
    _say(f"bohr-annihilator identity: {total} cases, {mism} mismatches")
    ident = {"ok": total - mism, "hypothesis-failed": 0, "conclusion-failed": mism}
    all_counts.append(ident)

    counts = _merge(*all_counts)
    code = exit_code_from(counts)
    _say(
        f"verify: ok={counts['ok']} hypothesis-failed={counts['hypothesis-failed']} "
        f"conclusion-failed={counts['conclusion-failed']} -> exit {code}"
    )
    return code


def cmd_list() -> int:
    width = max(len(k) for k in EXPERIMENTS)
    for kind in EXPERIMENTS:
        _say(f"{kind.ljust(width)}  {EXPERIMENTS[kind]}")
    return 0


# -- entry point ------------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--config", metavar="PATH", help="JSON experiment config")
    p.add_argument("--seed", type=int, metavar="N", help="override the config seed")
    p.add_argument("--out", metavar="DIR", help="output directory (default: results)")
    p.add_argument("--threads", type=int, metavar="N", help="pin the numeric thread pools")
    p.add_argument(
        "--grid-density", type=float, metavar="R", help="verification grid points per unit ball"
    )
    p.add_argument("--trials", type=int, metavar="N", help="override the trial count")


def _apply_overrides(cfg: ExperimentConfig, args) -> ExperimentConfig:
    if args.seed is not None:
        cfg = replace(cfg, seed=_as_int(args.seed, "--seed", lo=0))
    if args.out is not None:
        cfg = replace(cfg, out=args.out)
    if args.grid_density is not None:
        cfg = replace(cfg, grid_density=_as_float(args.grid_density, "--grid-density", lo=1.0))
    if args.trials is not None:
        cfg = replace(cfg, trials=_as_int(args.trials, "--trials", lo=1))
    return cfg


def _pin_threads(n: int | None):
    if n is None:
        return
    for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
        os.environ[var] = str(n)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="finharm", description="deterministic experiment runner"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one experiment from a config")
    p_run.add_argument("experiment", nargs="?", choices=sorted(EXPERIMENTS), help="experiment kind")
    _add_common(p_run)

    p_bench = sub.add_parser("bench", help="DFT timing benchmark")
    _add_common(p_bench)

    p_verify = sub.add_parser("verify", help="compact full-property suite")
    _add_common(p_verify)

    sub.add_parser("list", help="print the experiment registry")

    args = parser.parse_args(argv)
    if args.command == "list":
        return cmd_list()
    _pin_threads(args.threads)
    try:
        if args.command == "bench":
            cfg = load_config(args.config, "bench")
        elif args.command == "verify":
            # verify runs a fixed suite; the config only supplies seed/out/trials
            cfg = load_config(args.config, "dft-roundtrip")
        else:
            cfg = load_config(args.config, getattr(args, "experiment", None))
        cfg = _apply_overrides(cfg, args)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return 3
    try:
        if args.command == "verify":
            return cmd_verify(cfg)
        return run_experiment(cfg)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
