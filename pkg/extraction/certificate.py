"""Certified extraction of sets S_k with small spectral radius.

For a symmetric set Sigma and k >= 1 the pipeline takes m(Sigma)^k,
extracts its one-step minorant b_k and sets S_k = supp(b_k).  Then

    rho(S_k) <= 4 k ln|Sigma| rho(Sigma)^k,

and every inequality the construction relies on is re-checked on the
computed data in outward-rounded interval arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple, Union

from mpmath import iv

from group.genset import GenSet
from group.presentation import GroupPresentation, PresentationMismatch
from ring.element import DEFAULT_SUPPORT_GUARD, l1_norm, markov
from ring.radial import RadialElement
from estimators import intervals
from estimators.closed_form import exact_radius, kesten_exact_free
from estimators.intervals import DEFAULT_PRECISION
from estimators.moments import radius_lower_bounds, root_estimate, trace_moments
from estimators.report import (
    POWER_BOUND,
    UPPER,
    CertificateViolation,
    EstimateReport,
    OneSidedBound,
)
from engines import DenseEngine, ExtractedSet, select_engine
from extraction.minorant import l1_guarantee_holds, one_step_minorant
from extraction.profile import ThresholdReport

ProgressFn = Callable[[str, int, int], None]


@dataclass(frozen=True)
class EstimatorParams:
    """Knobs of the estimators used inside a certificate.

    Attributes:
        moment_order:       Largest n in tau(m(S_k)^{2n}) for the lower estimate of rho(S_k).
        sigma_moment_order: Largest n used for rho(Sigma) when no closed form is known.
        precision:          Interval precision in bits.
        guard:              Dense support guard.
        engine:             ``auto``, ``dense`` or ``radial``.
    """

    moment_order: int = 3
    sigma_moment_order: int = 12
    precision: int = DEFAULT_PRECISION
    guard: int = DEFAULT_SUPPORT_GUARD
    engine: str = "auto"


@dataclass(frozen=True)
class SkCertificate:
    """Everything computed and checked for one k.

    Attributes:
        extracted:     S_k = supp(b_k).
        b_value:       The single coefficient value of b_k.
        b_l1:          ||b_k||_1, exact.
        mk_l1:         ||m(Sigma)^k||_1, exact.
        size_mk:       size(m(Sigma)^k), exact.
        minorant_ok:   b_l1 >= mk_l1 / (4 ln size_mk).
        power_bound:   4 k ln|Sigma| rho(Sigma)^k, rounded up.
        rhs_certified: True iff rho(Sigma) was exact or an upper bound.
        rho_lower:     Moment lower bound for rho(S_k).
        rho_upper:     ``power_bound`` as an upper estimate (None when uncertified).
        consistency_ok: rho_lower <= power_bound (None when uncertified).

    ``to_dict`` writes the report schema names: ``corollary3_ok``,
    ``theorem1_rhs``, ``rho_Sk_lower`` and ``rho_Sk_upper``.
    """

    k: int
    sigma: GenSet
    engine: str
    extracted: ExtractedSet
    b_value: Fraction
    b_l1: Fraction
    mk_l1: Fraction
    size_mk: int
    minorant_ok: bool
    threshold: ThresholdReport
    rho_sigma: EstimateReport
    power_bound: float
    power_bound_low: float
    rhs_certified: bool
    rho_lower: EstimateReport
    rho_upper: Optional[EstimateReport]
    consistency_ok: Optional[bool]

    @property
    def flags(self) -> List[bool]:
        return [f for f in (self.minorant_ok, self.consistency_ok) if f is not None]

    @property
    def ok(self) -> bool:
        return all(self.flags)

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "sigma": self.sigma.text(),
            "group": self.sigma.presentation.spec_string(),
            "engine": self.engine,
            "S_k": self.extracted.to_dict(),
            "b_value": self.b_value,
            "b_l1": self.b_l1,
            "mk_l1": self.mk_l1,
            "size_mk": str(self.size_mk),
            "corollary3_ok": self.minorant_ok,
            "threshold": self.threshold.to_dict(),
            "rho_sigma": self.rho_sigma.to_dict(),
            "theorem1_rhs": self.power_bound,
            "theorem1_rhs_low": self.power_bound_low,
            "rhs_certified": self.rhs_certified,
            "rho_Sk_lower": self.rho_lower.to_dict(),
            "rho_Sk_upper": self.rho_upper.to_dict() if self.rho_upper else None,
            "consistency_ok": self.consistency_ok,
        }


# ---- rho(Sigma) ----------------------------------------------------------------


def rho_sigma_report(sigma: GenSet, params: EstimatorParams = EstimatorParams()) -> EstimateReport:
    """Exact rho(Sigma) when a closed form exists, else the best moment lower bound."""
    exact = exact_radius(sigma, params.precision)
    if exact is not None:
        return exact
    engine = DenseEngine(sigma, params.guard)
    n = engine.feasible_order(sigma, params.sigma_moment_order)
    moments = trace_moments(markov(sigma), n, params.guard)
    return _best_lower(moments, params.precision)


def _best_lower(moments, bits: int) -> EstimateReport:
    if moments.n_max >= 2:
        return radius_lower_bounds(moments, bits).best
    return root_estimate(moments, 1, bits)


def _rho_interval(report: EstimateReport):
    low = report.low if report.low is not None else report.value
    high = report.high if report.high is not None else report.value
    return iv.mpf([low, high])


def power_bound_interval(k: int, sigma_size: int, rho_sigma: EstimateReport):
    """4 k ln|Sigma| rho(Sigma)^k at the current interval precision."""
    return 4 * k * iv.log(sigma_size) * _rho_interval(rho_sigma) ** k


# ---- the pipeline ----------------------------------------------------------------


def _check_lengths(sigma: GenSet, k: int, S: ExtractedSet) -> None:
    """S_k lies in Sigma^k: word lengths bounded by k |Sigma|_max, parity forced when defined."""
    longest = k * sigma.max_length
    if S.lengths and S.lengths[-1] > longest:
        raise CertificateViolation(f"S_{k} has words longer than {longest}")
    p = sigma.presentation
    if p.has_length_parity and all(len(w) % 2 == 1 for w in sigma):
        wrong = [n for n in S.lengths if n % 2 != k % 2]
        if wrong:
            raise CertificateViolation(f"S_{k} has words of length {wrong[0]}, parity differs from k")


def generate_sk(
    p: GroupPresentation,
    sigma: GenSet,
    k: int,
    params: EstimatorParams = EstimatorParams(),
    rho_sigma: Optional[EstimateReport] = None,
    on_progress: Optional[ProgressFn] = None,
) -> SkCertificate:
    """Build S_k from m(Sigma)^k and certify it."""
    if sigma.presentation != p:
        raise PresentationMismatch(
            f"set lives in {sigma.presentation.spec_string()}, not {p.spec_string()}"
        )
    if len(sigma) < 3:
        raise ValueError(f"Sigma needs at least 3 elements, got {len(sigma)}")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")

    def progress(done: int) -> None:
        if on_progress is not None:
            on_progress(f"extract k={k}", done, 4)

    bits = params.precision
    engine = select_engine(sigma, params.engine, params.guard)
    a = engine.markov_power(k)
    size_mk = a.size
    mk_l1 = a.l1_norm() if isinstance(a, RadialElement) else l1_norm(a)
    progress(1)

    minorant = one_step_minorant(a, bits)
    S = engine.extracted_set(minorant.element)
    _check_lengths(sigma, k, S)
    minorant_ok = l1_guarantee_holds(minorant.l1, mk_l1, size_mk, bits)
    progress(2)

    if rho_sigma is None:
        rho_sigma = rho_sigma_report(sigma, params)
    certified = rho_sigma.bounds_above
    with intervals.precision(bits):
        rhs = power_bound_interval(k, len(sigma), rho_sigma)
        power_bound = intervals.upper(rhs)
        power_bound_low = intervals.lower(rhs)
    progress(3)

    moments = engine.set_moments(S, params.moment_order)
    rho_lower = _best_lower(moments, bits)
    rho_upper = None
    consistency_ok = None
    if certified:
        rho_upper = EstimateReport(
            value=power_bound,
            direction=UPPER,
            method=POWER_BOUND,
            parameters={"k": k, "sigma_size": len(sigma), "precision": bits},
            low=power_bound_low,
            high=power_bound,
        )
        consistency_ok = rho_lower.value <= power_bound
    progress(4)

    return SkCertificate(
        k=k,
        sigma=sigma,
        engine=engine.name,
        extracted=S,
        b_value=minorant.threshold,
        b_l1=minorant.l1,
        mk_l1=mk_l1,
        size_mk=size_mk,
        minorant_ok=minorant_ok,
        threshold=minorant.report,
        rho_sigma=rho_sigma,
        power_bound=power_bound,
        power_bound_low=power_bound_low,
        rhs_certified=certified,
        rho_lower=rho_lower,
        rho_upper=rho_upper,
        consistency_ok=consistency_ok,
    )


def generate_range(
    p: GroupPresentation,
    sigma: GenSet,
    ks: Sequence[int],
    params: EstimatorParams = EstimatorParams(),
    on_progress: Optional[ProgressFn] = None,
) -> List[SkCertificate]:
    """Certificates for several k, in the order given, sharing one rho(Sigma)."""
    if not ks:
        return []
    rho = rho_sigma_report(sigma, params)
    certs = []
    for done, k in enumerate(ks, 1):
        certs.append(generate_sk(p, sigma, k, params, rho))
        if on_progress is not None:
            on_progress("certificates", done, len(ks))
    return certs


# ---- S'_k = S_k u Sigma ----------------------------------------------------------


@dataclass(frozen=True)
class AugmentedSet:
    """S' = S_k u Sigma and its bound.

    Attributes:
        bound:            (|S_k|/|S'|) rho(S_k) + (|Sigma \\ S_k|/|S'|) rho(Sigma), upper values.
        simplified_bound: rho(S_k) + |Sigma| rho(Sigma) rho(S_k)^2.
    """

    k: int
    sk_size: int
    size: int
    outside_sigma: int
    bound: float
    simplified_bound: float
    certified: bool
    words: Optional[GenSet] = None
    spheres: Optional[Tuple[int, ...]] = None

    def to_dict(self) -> dict:
        out = {
            "k": self.k,
            "sk_size": str(self.sk_size),
            "size": str(self.size),
            "outside_sigma": self.outside_sigma,
            "bound": self.bound,
            "simplified_bound": self.simplified_bound,
            "certified": self.certified,
        }
        if self.spheres is not None:
            out["spheres"] = list(self.spheres)
        if self.words is not None:
            out["words"] = self.words.text()
        return out


def augment_with_sigma(cert: SkCertificate, bits: int = DEFAULT_PRECISION) -> AugmentedSet:
    """Add Sigma to S_k so the result generates; bound rho(S') by the triangle inequality."""
    S = cert.extracted
    sigma_size = len(cert.sigma)
    size = S.size + S.outside_sigma
    with intervals.precision(bits):
        rk = iv.mpf([cert.power_bound_low, cert.power_bound])
        rs = _rho_interval(cert.rho_sigma)
        bound = (iv.mpf(S.size) * rk + iv.mpf(S.outside_sigma) * rs) / size
        simplified = rk + sigma_size * rs * rk**2
        bound_hi = intervals.upper(bound)
        simplified_hi = intervals.upper(simplified)

    words = spheres = None
    if S.words is not None:
        words = S.words.union(cert.sigma)
    if S.spheres is not None:
        spheres = tuple(sorted(set(S.spheres) | {1}))
    return AugmentedSet(
        k=cert.k,
        sk_size=S.size,
        size=size,
        outside_sigma=S.outside_sigma,
        bound=bound_hi,
        simplified_bound=simplified_hi,
        certified=cert.rhs_certified,
        words=words,
        spheres=spheres,
    )


def smallest_k_below(
    sigma: GenSet,
    rho_sigma: EstimateReport,
    target: float,
    k_max: int = 2000,
    bits: int = DEFAULT_PRECISION,
) -> Optional[Tuple[int, float]]:
    """Smallest k whose augmented set is certified to have rho(S'_k) < target.

    Uses the simplified bound R + |Sigma| rho(Sigma) R^2 with R the power
    bound, so no set has to be built.  Returns ``(k, bound)`` or None.
    """
    if not rho_sigma.bounds_above:
        raise OneSidedBound("smallest_k_below needs an exact or upper rho(Sigma)")
    if target <= 0:
        raise ValueError(f"target must be positive, got {target}")
    n = len(sigma)
    with intervals.precision(bits):
        rs = _rho_interval(rho_sigma)
        goal = iv.mpf(target)
        for k in range(1, k_max + 1):
            r = power_bound_interval(k, n, rho_sigma)
            bound = r + n * rs * r**2
            if intervals.certainly_less(bound, goal):
                return k, intervals.upper(bound)
    return None


# ---- epsilon -------------------------------------------------------------------------


@dataclass(frozen=True)
class EpsilonRow:
    """One k of the chain 4k ln|Sigma| rho^k < (|Sigma|^k)^(-eps).

    ``sk_*`` fields are set only when a certificate for k was supplied.
    """

    k: int
    power_bound: float
    target: float
    chain_ok: bool
    sk_size: Optional[int] = None
    sk_target: Optional[float] = None
    loglog_bound: Optional[float] = None
    loglog_ok: Optional[bool] = None

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "theorem1_rhs": self.power_bound,
            "target": self.target,
            "chain_ok": self.chain_ok,
            "sk_size": None if self.sk_size is None else str(self.sk_size),
            "sk_target": self.sk_target,
            "loglog_bound": self.loglog_bound,
            "loglog_ok": self.loglog_ok,
        }


@dataclass
class EpsilonReport:
    """eps = -ln rho(Sigma) / (2 ln |Sigma|) and the chain per k.

    Attributes:
        epsilon:    Rounded down, so every certified chain also holds for the true eps.
        smallest_k: First k of ``rows`` whose chain holds, or None.
    """

    epsilon: float
    epsilon_high: float
    sigma_size: int
    rho_sigma: EstimateReport
    rows: List[EpsilonRow] = field(default_factory=list)

    @property
    def smallest_k(self) -> Optional[int]:
        return next((row.k for row in self.rows if row.chain_ok), None)

    def to_dict(self) -> dict:
        return {
            "epsilon": self.epsilon,
            "epsilon_high": self.epsilon_high,
            "sigma_size": self.sigma_size,
            "rho_sigma": self.rho_sigma.to_dict(),
            "smallest_k": self.smallest_k,
            "rows": [row.to_dict() for row in self.rows],
        }


def _epsilon_row(k: int, n: int, rho_sigma: EstimateReport, eps, sk_size: Optional[int]) -> EpsilonRow:
    lhs = power_bound_interval(k, n, rho_sigma)
    target = iv.exp(-eps * k * iv.log(n))
    row = dict(
        k=k,
        power_bound=intervals.upper(lhs),
        target=intervals.lower(target),
        chain_ok=intervals.certainly_less(lhs, target),
    )
    if sk_size is not None:
        ln_sk = iv.log(sk_size)
        sk_target = iv.exp(-eps * ln_sk)
        loglog = 1 / ln_sk
        row.update(
            sk_size=sk_size,
            sk_target=intervals.lower(sk_target),
            loglog_bound=intervals.lower(loglog),
            loglog_ok=intervals.certainly_less(lhs, loglog),
        )
    return EpsilonRow(**row)


def _epsilon(n: int, rho_sigma: EstimateReport):
    """(eps rounded down as an exact point interval, eps low, eps high)."""
    if not rho_sigma.bounds_above:
        raise OneSidedBound(
            "epsilon needs rho(Sigma) bounded from above; a lower bound would overstate eps"
        )
    eps = -iv.log(_rho_interval(rho_sigma)) / (2 * iv.log(n))
    low = max(0.0, intervals.lower(eps))
    return iv.mpf(low), low, intervals.upper(eps)


def epsilon_scan(
    sigma: GenSet,
    rho_sigma: EstimateReport,
    ks: Sequence[int],
    bits: int = DEFAULT_PRECISION,
) -> EpsilonReport:
    """The chain for each k from the closed-form power bound alone."""
    n = len(sigma)
    with intervals.precision(bits):
        eps, low, high = _epsilon(n, rho_sigma)
        rows = [_epsilon_row(k, n, rho_sigma, eps, None) for k in ks]
    return EpsilonReport(low, high, n, rho_sigma, rows)


def epsilon_certificate(
    sigma: GenSet,
    rho_sigma: EstimateReport,
    certs: Sequence[SkCertificate],
    bits: int = DEFAULT_PRECISION,
) -> EpsilonReport:
    """Certify rho(S_k) < |S_k|^(-eps) for each certificate where the chain holds.

    Since |S_k| <= |Sigma|^k, the chain 4k ln|Sigma| rho^k < |Sigma|^(-eps k)
    implies the claim.  Each row also records whether the bound is below
    1 / ln|S_k|.
    """
    n = len(sigma)
    with intervals.precision(bits):
        eps, low, high = _epsilon(n, rho_sigma)
        rows = [
            _epsilon_row(c.k, n, rho_sigma, eps, c.extracted.size)
            for c in sorted(certs, key=lambda c: c.k)
        ]
    return EpsilonReport(low, high, n, rho_sigma, rows)


# ---- gamma ------------------------------------------------------------------------


@dataclass(frozen=True)
class GammaReport:
    """2 (|S| rho(S))^(1/2) and its ratio to sqrt|S|.

    Attributes:
        amenable_floor: sqrt|S| / 2, the comparison value for amenable groups.
    """

    set_size: int
    rho_upper: float
    bound: float
    ratio: float
    amenable_floor: float

    def to_dict(self) -> dict:
        return {
            "set_size": self.set_size,
            "rho_upper": self.rho_upper,
            "bound": self.bound,
            "ratio": self.ratio,
            "amenable_floor": self.amenable_floor,
        }


def gamma_upper_bound(
    S: Union[GenSet, int], rho_upper: EstimateReport, bits: int = DEFAULT_PRECISION
) -> GammaReport:
    """gamma <= 2 ||sum_{t in S} t||^(1/2) = 2 (|S| rho(S))^(1/2)."""
    size = len(S) if isinstance(S, GenSet) else int(S)
    if size < 1:
        raise ValueError("gamma needs a nonempty set")
    rho = rho_upper.upper_value()
    with intervals.precision(bits):
        b = 2 * iv.sqrt(size * iv.mpf(rho))
        r = b / iv.sqrt(size)
        floor = iv.sqrt(size) / 2
        return GammaReport(
            set_size=size,
            rho_upper=rho,
            bound=intervals.upper(b),
            ratio=intervals.upper(r),
            amenable_floor=intervals.lower(floor),
        )


def gamma_free_series(ns: Sequence[int], bits: int = DEFAULT_PRECISION) -> List[GammaReport]:
    """Gamma bounds for the standard sets of F_n (|S| = 2n); ratios must strictly decrease."""
    rows = [gamma_upper_bound(2 * n, kesten_exact_free(n, bits), bits) for n in sorted(set(ns))]
    for a, b in zip(rows, rows[1:]):
        if not b.ratio < a.ratio:
            raise CertificateViolation(
                f"gamma ratio did not decrease from |S|={a.set_size} to |S|={b.set_size}"
            )
    return rows


def gamma_for_certificates(certs: Sequence[SkCertificate], bits: int = DEFAULT_PRECISION) -> List[GammaReport]:
    """Gamma bounds for extracted sets, from their certified upper estimates."""
    out = []
    for c in certs:
        if c.rho_upper is None:
            raise OneSidedBound(f"certificate k={c.k} has no certified upper bound")
        out.append(gamma_upper_bound(c.extracted.size, c.rho_upper, bits))
    return out
