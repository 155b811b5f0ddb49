"""The CLI subcommands, each turning a ``RunConfig`` into a ``Report``."""

from __future__ import annotations

from typing import Callable, Dict, List, Optional, Sequence, Tuple

from group.genset import GenSet, parse_genset, standard_set
from group.presentation import GroupPresentation, parse_presentation
from ring.element import SupportGuardExceeded, markov
from ring.radial import radial_markov_power
from estimators.closed_form import exact_radius, tree_comparison_bound
from estimators.moments import (
    MomentSequence,
    radius_lower_bounds,
    ratio_estimate,
    root_estimate,
    trace_moments,
)
from estimators.monte_carlo import monte_carlo_return
from estimators.power_iteration import (
    DEFAULT_ITERATIONS,
    DEFAULT_TOLERANCE,
    ball_power_iteration,
)
from estimators.report import EstimateReport, check_order
from engines import DenseEngine, select_engine
from extraction.certificate import (
    EstimatorParams,
    SkCertificate,
    augment_with_sigma,
    epsilon_certificate,
    epsilon_scan,
    gamma_for_certificates,
    gamma_free_series,
    generate_sk,
    rho_sigma_report,
    smallest_k_below,
)
from extraction.profile import sharpness_series
from experiments.config import RunConfig
from experiments.serialize import Report

ProgressFn = Callable[[str, int, int], None]

DEFAULT_SHARPNESS_NS = (10, 100, 1_000, 10_000, 100_000, 1_000_000)


# ---- argument helpers ----------------------------------------------------------


def parse_int_list(text: str) -> List[int]:
    """``"20,40,60"`` -> [20, 40, 60]; an empty string is an empty list."""
    if not text.strip():
        return []
    try:
        return [int(tok) for tok in text.split(",")]
    except ValueError:
        raise ValueError(f"expected comma-separated integers, got {text!r}") from None


def parse_range(text: str) -> List[int]:
    """``"START:STOP[:STEP]"``, both ends inclusive; START > STOP is empty."""
    parts = text.split(":")
    if len(parts) not in (2, 3):
        raise ValueError(f"expected START:STOP[:STEP], got {text!r}")
    try:
        start, stop = int(parts[0]), int(parts[1])
        step = int(parts[2]) if len(parts) == 3 else 1
    except ValueError:
        raise ValueError(f"expected START:STOP[:STEP], got {text!r}") from None
    if step < 1:
        raise ValueError(f"step must be >= 1, got {step}")
    return list(range(start, stop + 1, step))


def resolve_set(config: RunConfig) -> Tuple[GroupPresentation, GenSet]:
    p = parse_presentation(config.group)
    sigma = parse_genset(p, config.set) if config.set else standard_set(p)
    return p, sigma


def estimator_params(config: RunConfig) -> EstimatorParams:
    return EstimatorParams(
        moment_order=config.option("moment_order", 3),
        sigma_moment_order=config.option("sigma_moment_order", 12),
        precision=config.precision,
        guard=config.guard,
        engine=config.engine,
    )


def _markov_moments(
    sigma: GenSet,
    engine_name: str,
    n_max: int,
    guard: int,
    on_progress: Optional[ProgressFn],
) -> MomentSequence:
    if engine_name == "radial":
        r = sigma.presentation.rank
        return trace_moments(
            radial_markov_power(r, 1), n_max, description=f"m(Sigma) on F_{r}", on_progress=on_progress
        )
    return trace_moments(markov(sigma), n_max, guard, description=f"m({sigma.text()})")


# ---- moments / radius ----------------------------------------------------------


def cmd_moments(config: RunConfig, on_progress: Optional[ProgressFn] = None) -> Report:
    _, sigma = resolve_set(config)
    n_max = config.option("nmax", 3)
    engine = select_engine(sigma, config.engine, config.guard)
    m = _markov_moments(sigma, engine.name, n_max, config.guard, on_progress)
    bits = config.precision

    rows = []
    for n in range(1, m.n_max + 1):
        ratio = None
        if n >= 2:
            ratio = ratio_estimate(m, n, bits).value
        rows.append(
            {
                "n": n,
                "tau": m.moment(n),
                "root": root_estimate(m, n, bits).value,
                "ratio": ratio,
            }
        )
    exact = exact_radius(sigma, bits)
    summary = {
        "set_size": len(sigma),
        "engine": engine.name,
        "log_convex": m.is_log_convex(),
        "in_range": m.in_range(),
        "exact_radius": exact.value if exact else None,
    }
    ok = summary["log_convex"] and summary["in_range"]
    return Report("moments", config.to_dict(), ["n", "tau", "root", "ratio"], rows, summary, ok=ok)


def cmd_radius(config: RunConfig, on_progress: Optional[ProgressFn] = None) -> Report:
    """Every estimator on one set, checked against each other."""
    _, sigma = resolve_set(config)
    bits = config.precision
    engine = select_engine(sigma, config.engine, config.guard)
    n_max = config.option("nmax", 12)
    if engine.name == "dense":
        n_max = DenseEngine(sigma, config.guard).feasible_order(sigma, n_max)
    m = _markov_moments(sigma, engine.name, n_max, config.guard, on_progress)

    reports: List[EstimateReport] = []
    if m.n_max >= 2:
        bounds = radius_lower_bounds(m, bits)
        reports += [bounds.root[-1], bounds.best]
    else:
        reports.append(root_estimate(m, 1, bits))
    reports.append(
        ball_power_iteration(
            sigma,
            config.option("radius", 10),
            config.option("iters", DEFAULT_ITERATIONS),
            config.option("tol", DEFAULT_TOLERANCE),
            config.ball_guard,
            on_progress,
        )
    )
    exact = exact_radius(sigma, bits)
    if exact is not None:
        for r in reports:
            check_order(r, exact)
        reports.append(exact)

    columns = ["method", "direction", "value", "low", "high", "parameters"]
    rows = [{c: r.to_dict().get(c) for c in columns} for r in reports]
    tree = tree_comparison_bound(len(sigma))
    summary = {
        "set_size": len(sigma),
        "engine": engine.name,
        "moment_order": m.n_max,
        "best_lower": max(r.value for r in reports if r.bounds_below and not r.bounds_above),
        "tree_coarse_bound": tree.coarse_bound,
        "tree_refined_bound": tree.refined_bound,
    }
    return Report("radius", config.to_dict(), columns, rows, summary)


# ---- certificates ----------------------------------------------------------------


def _ints(value, default: Sequence[int]) -> List[int]:
    return list(default) if value is None else [int(v) for v in value]


def _ks(config: RunConfig, default: Sequence[int]) -> List[int]:
    return _ints(config.option("ks"), default)


def _certificates(
    config: RunConfig,
    ks: Sequence[int],
    on_progress: Optional[ProgressFn],
) -> Tuple[EstimateReport, List[SkCertificate]]:
    p, sigma = resolve_set(config)
    params = estimator_params(config)
    rho = rho_sigma_report(sigma, params)
    certs = []
    for k in sorted(ks):
        certs.append(generate_sk(p, sigma, k, params, rho, on_progress))
    return rho, certs


CERT_COLUMNS = [
    "k",
    "sk_size",
    "b_l1",
    "theorem1_rhs",
    "rho_lower",
    "corollary3_ok",
    "consistency_ok",
    "augmented_size",
    "augmented_bound",
]


def _cert_row(cert: SkCertificate, bits: int) -> dict:
    aug = augment_with_sigma(cert, bits)
    return {
        "k": cert.k,
        "sk_size": str(cert.extracted.size),
        "b_l1": cert.b_l1,
        "theorem1_rhs": cert.power_bound,
        "rho_lower": cert.rho_lower.value,
        "corollary3_ok": cert.minorant_ok,
        "consistency_ok": cert.consistency_ok,
        "augmented_size": str(aug.size),
        "augmented_bound": aug.bound,
    }


def cmd_extract(config: RunConfig, on_progress: Optional[ProgressFn] = None) -> Report:
    ks = _ks(config, [1])
    rho, certs = _certificates(config, ks, on_progress)
    bits = config.precision
    detail = {
        "rho_sigma": rho.to_dict(),
        "certificates": [
            {**c.to_dict(), "augmented": augment_with_sigma(c, bits).to_dict()} for c in certs
        ],
    }
    return Report(
        "extract",
        config.to_dict(),
        CERT_COLUMNS,
        [_cert_row(c, bits) for c in certs],
        {"count": len(certs), "rho_sigma": rho.value, "rhs_certified": rho.bounds_above},
        detail=detail,
        ok=all(c.ok for c in certs),
    )


def cmd_reproduce(config: RunConfig, on_progress: Optional[ProgressFn] = None) -> Report:
    """Certificates over a k range with the epsilon chain per row."""
    ks = _ks(config, range(20, 121, 20))
    rho, certs = _certificates(config, ks, on_progress)
    _, sigma = resolve_set(config)
    bits = config.precision
    eps = epsilon_certificate(sigma, rho, certs, bits)
    by_k = {row.k: row for row in eps.rows}

    rows = []
    for c in certs:
        row = _cert_row(c, bits)
        e = by_k[c.k]
        row.update(sk_target=e.sk_target, chain_ok=e.chain_ok, loglog_ok=e.loglog_ok)
        rows.append(row)

    summary = {
        "epsilon": eps.epsilon,
        "epsilon_high": eps.epsilon_high,
        "rho_sigma": rho.value,
        "smallest_k": eps.smallest_k,
    }
    target = config.option("target")
    if target is not None:
        found = smallest_k_below(sigma, rho, float(target), config.option("kmax", 2000), bits)
        summary["target"] = float(target)
        summary["target_k"] = found[0] if found else None
        summary["target_bound"] = found[1] if found else None
    return Report(
        "reproduce",
        config.to_dict(),
        CERT_COLUMNS + ["sk_target", "chain_ok", "loglog_ok"],
        rows,
        summary,
        ok=all(c.ok for c in certs),
    )


def cmd_epsilon(config: RunConfig, on_progress: Optional[ProgressFn] = None) -> Report:
    """The epsilon chain from the closed-form power bound; builds no sets."""
    _, sigma = resolve_set(config)
    params = estimator_params(config)
    rho = rho_sigma_report(sigma, params)
    ks = _ks(config, range(1, 121))
    report = epsilon_scan(sigma, rho, ks, params.precision)
    columns = ["k", "theorem1_rhs", "target", "chain_ok"]
    rows = [{c: row.to_dict()[c] for c in columns} for row in report.rows]
    summary = {
        "epsilon": report.epsilon,
        "epsilon_high": report.epsilon_high,
        "rho_sigma": rho.value,
        "sigma_size": report.sigma_size,
        "smallest_k": report.smallest_k,
    }
    return Report("epsilon", config.to_dict(), columns, rows, summary)


# ---- sharpness / gamma / walk --------------------------------------------------------


def cmd_sharpness(config: RunConfig, on_progress: Optional[ProgressFn] = None) -> Report:
    ns = _ints(config.option("ns"), DEFAULT_SHARPNESS_NS)
    grid = config.option("grid")
    cases = sharpness_series(ns, grid)
    columns = ["n", "I", "objective", "ratio", "guarantee", "guarantee_met"]
    if grid:
        columns += ["discrete_objective", "discrete_guarantee_met"]
    rows = []
    for case in cases:
        row = case.to_dict()
        disc = row.pop("discrete", None)
        if disc is not None:
            row["discrete_objective"] = disc["objective"]
            row["discrete_guarantee_met"] = disc["guarantee_met"]
        rows.append(row)
    return Report(
        "sharpness",
        config.to_dict(),
        columns,
        rows,
        {"cases": len(cases), "ratio_decreasing": True},
    )


def cmd_gamma(config: RunConfig, on_progress: Optional[ProgressFn] = None) -> Report:
    """Gamma bounds for standard sets of F_n, or for extracted sets when ks is given."""
    bits = config.precision
    if config.option("ks") is not None:
        _, certs = _certificates(config, _ks(config, []), on_progress)
        reports = gamma_for_certificates(certs, bits)
        source = "certificates"
    else:
        reports = gamma_free_series(_ints(config.option("ns"), range(2, 51)), bits)
        source = "free"
    columns = ["set_size", "rho_upper", "bound", "ratio", "amenable_floor"]
    rows = [r.to_dict() for r in reports]
    below = [r.set_size for r in reports if r.ratio < 1]
    summary = {
        "source": source,
        "count": len(reports),
        "first_size_below_one": below[0] if below else None,
    }
    return Report("gamma", config.to_dict(), columns, rows, summary)


def cmd_walk(config: RunConfig, on_progress: Optional[ProgressFn] = None) -> Report:
    """Monte Carlo return frequency, next to the exact tau when it is affordable."""
    _, sigma = resolve_set(config)
    steps = config.option("steps", 4)
    est = monte_carlo_return(
        sigma,
        steps,
        config.option("trials", 100_000),
        config.seed,
        config.option("workers", 1),
        on_progress,
    )
    exact = None
    if steps >= 2:
        try:
            exact = trace_moments(markov(sigma), steps // 2, config.guard).moment(steps // 2)
        except SupportGuardExceeded:
            exact = None
    z = None
    if exact is not None and est.stderr > 0:
        z = (est.frequency - float(exact)) / est.stderr
    columns = ["steps", "trials", "hits", "frequency", "stderr", "seed", "generator", "exact", "z"]
    row = {
        "steps": est.steps,
        "trials": est.trials,
        "hits": est.hits,
        "frequency": est.frequency,
        "stderr": est.stderr,
        "seed": est.seed,
        "generator": est.generator,
        "exact": exact,
        "z": z,
    }
    return Report("walk", config.to_dict(), columns, [row], {"set_size": len(sigma)})


COMMANDS: Dict[str, Callable[[RunConfig, Optional[ProgressFn]], Report]] = {
    "moments": cmd_moments,
    "radius": cmd_radius,
    "extract": cmd_extract,
    "reproduce": cmd_reproduce,
    "epsilon": cmd_epsilon,
    "sharpness": cmd_sharpness,
    "walk": cmd_walk,
    "gamma": cmd_gamma,
}


def run(config: RunConfig, on_progress: Optional[ProgressFn] = None) -> Report:
    if config.command not in COMMANDS:
        raise ValueError(f"unknown command {config.command!r}")
    return COMMANDS[config.command](config, on_progress)
