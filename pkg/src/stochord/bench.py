"""Randomized verification bench for the ordering claims.

Each scenario id names one claim from the claim catalog (T3.x for the
Weibull-G family, T4.x for Gompertz-Makeham) and runs a batch of seeded
random instances through the order certifiers:

* T3.1 / T3.2 / T3.3: series Weibull-G with a shared shape in [2, 4];
  column-averaging T-transforms of the similarly ordered
  (alpha; gamma) matrix raise the system in the hazard rate order
  (single transform on 2 or n columns, or a chain whose intermediates
  are re-validated as similarly ordered).
* T3.4: parallel Weibull-G with shared beta and gamma; weak
  supermajorization of the alpha vector implies the reversed hazard
  order.
* T3.5: parallel Weibull-G with shared alpha and beta; weak
  supermajorization of the gamma vector implies the usual order.
* T4.1 / T4.2 / T4.3: the series claims for Gompertz-Makeham
  (alpha; beta) matrices with a shared Makeham rate; for T4.1 the
  hazard-gap curve is additionally checked to be invariant in that
  shared rate.
* T4.4: series Gompertz-Makeham with shared alpha and beta; survival
  depends on the rate vector only through its sum (checked exactly via
  dyadic redistributions), and lowering the sum raises the system in
  the usual order.
* T4.5: parallel Gompertz-Makeham with shared alpha and beta; weak
  supermajorization of the rate vector implies the usual order.

Instance 0 of T3.1 and T4.1 is pinned to the worked 2 x 2 example
matrix [[4.8, 3.4], [2.5, 1.6]] with mixing weight 0.45 so the bench
always reproduces the reference curves; the report keeps that curve for
the CLI to export.

``counterexample_probe`` reruns a scenario with one named hypothesis
deliberately violated ("pn" samples matrices whose rows are oppositely
ordered; "beta_ge_2" samples the Weibull shape from [0.5, 2)) and
reports the empirical violation count without asserting a ground truth.

Reversed-hazard comparisons are certified on a grid spanning 2.5 decades
below x_max rather than the default 4: both reversed hazards diverge
like 1/x near the origin, and the narrower window keeps the certified
difference clear of float cancellation noise at the pinned tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GenerationError
from .majorization import TTransform, apply_t_transform, generate_hypothesis_pair, pn_membership
from .models import GompertzMakeham, WeibullG
from .orders import Grid, OrderVerdict, certify_hr, certify_rh, certify_st
from .systems import SystemSpec, lambda_aggregate_sf

SCENARIO_IDS = (
    "T3.1", "T3.2", "T3.3", "T3.4", "T3.5",
    "T4.1", "T4.2", "T4.3", "T4.4", "T4.5",
)

_CLAIMS = {
    "T3.1": "series Weibull-G (2 components, shared shape in [2,4]): one column-averaging "
            "transform of the similarly ordered (alpha; gamma) matrix raises the system "
            "in the hazard rate order",
    "T3.2": "series Weibull-G (n components, shared shape in [2,4]): one column-averaging "
            "transform of the similarly ordered (alpha; gamma) matrix raises the system "
            "in the hazard rate order",
    "T3.3": "series Weibull-G (shared shape in [2,4]): a transform chain with similarly "
            "ordered intermediates raises the system in the hazard rate order at every step",
    "T3.4": "parallel Weibull-G (shared beta, gamma): weak supermajorization of the alpha "
            "vector implies the reversed hazard order",
    "T3.5": "parallel Weibull-G (shared alpha, beta): weak supermajorization of the gamma "
            "vector implies the usual stochastic order",
    "T4.1": "series Gompertz-Makeham (2 components, shared rate): one column-averaging "
            "transform of the similarly ordered (alpha; beta) matrix raises the system in "
            "the hazard rate order, with a rate-invariant hazard gap",
    "T4.2": "series Gompertz-Makeham (n components, shared rate): one column-averaging "
            "transform of the similarly ordered (alpha; beta) matrix raises the system in "
            "the hazard rate order",
    "T4.3": "series Gompertz-Makeham (shared rate): a transform chain with similarly "
            "ordered intermediates raises the system in the hazard rate order at every step",
    "T4.4": "series Gompertz-Makeham (shared alpha, beta): survival depends on the rate "
            "vector only through its sum, and lowering the sum raises the system in the "
            "usual stochastic order",
    "T4.5": "parallel Gompertz-Makeham (shared alpha, beta): weak supermajorization of "
            "the rate vector implies the usual stochastic order",
}

_HYPOTHESES = {
    "T3.1": ("pn", "beta_ge_2"),
    "T3.2": ("pn", "beta_ge_2"),
    "T3.3": ("pn", "beta_ge_2"),
    "T3.4": (),
    "T3.5": (),
    "T4.1": ("pn",),
    "T4.2": ("pn",),
    "T4.3": ("pn",),
    "T4.4": (),
    "T4.5": (),
}

EXAMPLE_MATRIX = np.array([[4.8, 3.4], [2.5, 1.6]])
EXAMPLE_TRANSFORM = TTransform(lam=0.45, i=0, j=1)
EXAMPLE_WG_BETA = 3.0
EXAMPLE_GM_LAM = 1.0
_SWEEP_LAMS = (0.1, 1.0, 10.0)
_SWEEP_TOL = 1e-12
_AGGREGATE_REL_TOL = 1e-15
_RH_SPAN_DECADES = 2.5
_DYADIC = 2.0**20


@dataclass(frozen=True)
class TheoremScenario:
    """One bench configuration: a claim id plus batch controls."""

    scenario_id: str
    count: int = 200
    seed: int = 0
    grid_count: int = 2048
    tolerance: float = 1e-9
    n: int | None = None

    def __post_init__(self):
        if self.scenario_id not in SCENARIO_IDS:
            raise ValueError(f"unknown scenario id {self.scenario_id!r}; "
                             f"known ids: {', '.join(SCENARIO_IDS)}")
        if self.count < 1:
            raise ValueError("count must be at least 1")
        if self.n is not None and self.n < 2:
            raise ValueError("n must be at least 2")


@dataclass(frozen=True, eq=False)
class CurveSample:
    """One exported comparison curve: x, the two sides, and the slack."""

    x: np.ndarray
    lhs: np.ndarray
    rhs: np.ndarray
    diff: np.ndarray
    lhs_label: str
    rhs_label: str


@dataclass(frozen=True)
class InstanceFailure:
    index: int
    detail: str
    margin: float
    witness_x: float | None


@dataclass(frozen=True, eq=False)
class BenchReport:
    """Batch outcome for one scenario (or one hypothesis-violating probe)."""

    scenario_id: str
    claim: str
    count: int
    seed: int
    grid_count: int
    tolerance: float
    passed: int
    worst_margin: float
    failures: tuple[InstanceFailure, ...]
    curve: CurveSample | None
    disabled_hypothesis: str | None = None

    @property
    def all_passed(self) -> bool:
        return self.passed == self.count

    @property
    def violation_count(self) -> int:
        return self.count - self.passed

    def summary_lines(self) -> list[str]:
        head = f"{self.scenario_id}: {self.passed}/{self.count} instances passed"
        if self.disabled_hypothesis:
            head += f" (hypothesis {self.disabled_hypothesis!r} disabled, " \
                    f"{self.violation_count} empirical violations)"
        lines = [head,
                 f"  claim: {self.claim}",
                 f"  worst margin {self.worst_margin:.3e} at tolerance {self.tolerance:.1e}, "
                 f"grid {self.grid_count}, seed {self.seed}"]
        for fail in self.failures[:5]:
            where = "" if fail.witness_x is None else f" at x={fail.witness_x:.6g}"
            lines.append(f"  instance {fail.index}: {fail.detail}{where} "
                         f"(margin {fail.margin:.3e})")
        if len(self.failures) > 5:
            lines.append(f"  ... {len(self.failures) - 5} more failures")
        return lines


def _instance_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence((int(seed), int(index))))


def _chain_matrices(
    rng: np.random.Generator, n: int, k_lo: int, k_hi: int, anti_ordered: bool
) -> list[np.ndarray]:
    """Source matrix plus each partially transformed matrix, in order."""
    raw = rng.uniform(0.5, 5.0, size=(2, n))
    if anti_ordered:
        b = np.vstack([np.sort(raw[0]), np.sort(raw[1])[::-1]])
        keep_pn = False
    else:
        b = np.sort(raw, axis=1)
        keep_pn = True
    k = int(rng.integers(k_lo, k_hi + 1))
    mats = [b]
    for step in range(k):
        last_step = step == k - 1
        for _ in range(100):
            i, j = (int(v) for v in rng.choice(n, size=2, replace=False))
            t = TTransform(lam=float(rng.uniform()), i=i, j=j)
            candidate = apply_t_transform(mats[-1], t)
            if last_step or not keep_pn or pn_membership(candidate):
                break
        else:
            raise GenerationError(f"no P_n-preserving transform found at chain step {step + 1}")
        mats.append(candidate)
    return mats


def _wg_series(matrix: np.ndarray, beta: float) -> SystemSpec:
    comps = tuple(
        WeibullG(alpha=float(matrix[0, i]), beta=beta, gamma=float(matrix[1, i]))
        for i in range(matrix.shape[1])
    )
    return SystemSpec(comps, "series")


def _gm_series(matrix: np.ndarray, lam: float) -> SystemSpec:
    comps = tuple(
        GompertzMakeham(alpha=float(matrix[0, i]), beta=float(matrix[1, i]), lam=lam)
        for i in range(matrix.shape[1])
    )
    return SystemSpec(comps, "series")


def _series_hazard_curve(source: SystemSpec, transformed: SystemSpec, xs: np.ndarray) -> CurveSample:
    lhs = np.asarray(source.hazard(xs))
    rhs = np.asarray(transformed.hazard(xs))
    return CurveSample(x=xs, lhs=lhs, rhs=rhs, diff=lhs - rhs,
                       lhs_label="hazard_source", rhs_label="hazard_transformed")


@dataclass
class _InstanceResult:
    ok: bool
    margin: float
    witness_x: float | None
    detail: str
    curve: CurveSample | None = None


def _worst_verdict(verdicts: list[OrderVerdict]) -> OrderVerdict:
    return min(verdicts, key=lambda v: v.margin)


def _hr_chain_instance(
    scenario: TheoremScenario,
    rng: np.random.Generator,
    family: str,
    n_range: tuple[int, int],
    k_range: tuple[int, int],
    disabled: str | None,
    pinned: bool,
    want_curve: bool,
) -> _InstanceResult:
    sweep_checked = True
    if pinned:
        mats = [EXAMPLE_MATRIX, apply_t_transform(EXAMPLE_MATRIX, EXAMPLE_TRANSFORM)]
        shared = EXAMPLE_WG_BETA if family == "wg" else EXAMPLE_GM_LAM
    else:
        n = scenario.n if scenario.n is not None else int(rng.integers(n_range[0], n_range[1] + 1))
        if family == "wg":
            lo, hi = (0.5, 2.0) if disabled == "beta_ge_2" else (2.0, 4.0)
            shared = float(rng.uniform(lo, hi))
        else:
            shared = float(rng.uniform(0.1, 10.0))
        mats = _chain_matrices(rng, n, k_range[0], k_range[1], anti_ordered=disabled == "pn")

    build = _wg_series if family == "wg" else _gm_series
    systems = [build(m, shared) for m in mats]
    grid = Grid.for_models(systems[0], systems[-1], count=scenario.grid_count)

    verdicts = [
        certify_hr(prev, nxt, grid=grid, tolerance=scenario.tolerance)
        for prev, nxt in zip(systems, systems[1:])
    ]
    if len(systems) > 2:
        verdicts.append(certify_hr(systems[0], systems[-1], grid=grid,
                                   tolerance=scenario.tolerance))

    sweep_dev = 0.0
    if pinned and family == "gm":
        diffs = []
        for lam in _SWEEP_LAMS:
            src, dst = _gm_series(mats[0], lam), _gm_series(mats[-1], lam)
            diffs.append(np.asarray(src.hazard(grid.points)) - np.asarray(dst.hazard(grid.points)))
        for a in range(len(diffs)):
            for b in range(a + 1, len(diffs)):
                sweep_dev = max(sweep_dev, float(np.abs(diffs[a] - diffs[b]).max()))
        sweep_checked = sweep_dev <= _SWEEP_TOL

    worst = _worst_verdict(verdicts)
    ok = all(v.holds for v in verdicts) and sweep_checked
    detail = "hazard dominance violated" if not all(v.holds for v in verdicts) else (
        "" if sweep_checked else f"hazard gap varies with shared rate (dev {sweep_dev:.3e})")
    curve = _series_hazard_curve(systems[0], systems[-1], grid.points) if want_curve else None
    return _InstanceResult(ok=ok, margin=worst.margin, witness_x=worst.witness_x,
                           detail=detail, curve=curve)


def _rh_parallel_instance(
    scenario: TheoremScenario, rng: np.random.Generator, want_curve: bool
) -> _InstanceResult:
    n = scenario.n if scenario.n is not None else int(rng.integers(2, 6))
    beta = float(rng.uniform(0.5, 4.0))
    gamma = float(rng.uniform(0.5, 5.0))
    pair = generate_hypothesis_pair(n, "weak_super", rng=rng)
    sys_x = SystemSpec(
        tuple(WeibullG(alpha=float(a), beta=beta, gamma=gamma) for a in pair.a), "parallel")
    sys_y = SystemSpec(
        tuple(WeibullG(alpha=float(b), beta=beta, gamma=gamma) for b in pair.b), "parallel")
    grid = Grid.for_models(sys_x, sys_y, count=scenario.grid_count,
                           span_decades=_RH_SPAN_DECADES)
    verdict = certify_rh(sys_x, sys_y, grid=grid, tolerance=scenario.tolerance)
    curve = None
    if want_curve:
        xs = grid.points
        lhs = np.asarray(sys_x.reversed_hazard(xs))
        rhs = np.asarray(sys_y.reversed_hazard(xs))
        curve = CurveSample(x=xs, lhs=lhs, rhs=rhs, diff=rhs - lhs,
                            lhs_label="reversed_hazard_x", rhs_label="reversed_hazard_y")
    return _InstanceResult(ok=verdict.holds, margin=verdict.margin,
                           witness_x=verdict.witness_x,
                           detail="" if verdict.holds else "reversed hazard order violated",
                           curve=curve)


def _st_parallel_instance(
    scenario: TheoremScenario, rng: np.random.Generator, family: str, want_curve: bool
) -> _InstanceResult:
    n = scenario.n if scenario.n is not None else int(rng.integers(2, 6))
    pair = generate_hypothesis_pair(n, "weak_super", rng=rng)
    if family == "wg":
        alpha = float(rng.uniform(0.5, 5.0))
        beta = float(rng.uniform(0.5, 4.0))
        sys_x = SystemSpec(
            tuple(WeibullG(alpha=alpha, beta=beta, gamma=float(g)) for g in pair.a), "parallel")
        sys_y = SystemSpec(
            tuple(WeibullG(alpha=alpha, beta=beta, gamma=float(g)) for g in pair.b), "parallel")
    else:
        alpha = float(rng.uniform(0.5, 5.0))
        beta = float(rng.uniform(0.5, 3.0))
        sys_x = SystemSpec(
            tuple(GompertzMakeham(alpha=alpha, beta=beta, lam=float(v)) for v in pair.a),
            "parallel")
        sys_y = SystemSpec(
            tuple(GompertzMakeham(alpha=alpha, beta=beta, lam=float(v)) for v in pair.b),
            "parallel")
    grid = Grid.for_models(sys_x, sys_y, count=scenario.grid_count)
    verdict = certify_st(sys_x, sys_y, grid=grid, tolerance=scenario.tolerance)
    curve = None
    if want_curve:
        xs = grid.points
        lhs = np.asarray(sys_x.sf(xs))
        rhs = np.asarray(sys_y.sf(xs))
        curve = CurveSample(x=xs, lhs=lhs, rhs=rhs, diff=rhs - lhs,
                            lhs_label="sf_x", rhs_label="sf_y")
    return _InstanceResult(ok=verdict.holds, margin=verdict.margin,
                           witness_x=verdict.witness_x,
                           detail="" if verdict.holds else "usual order violated",
                           curve=curve)


def _dyadic(values: np.ndarray) -> np.ndarray:
    """Snap to the 2^-20 grid so redistributions stay exact in floats."""
    return np.maximum(np.round(values * _DYADIC) / _DYADIC, 1.0 / _DYADIC)


def _lambda_aggregate_instance(
    scenario: TheoremScenario, rng: np.random.Generator, want_curve: bool
) -> _InstanceResult:
    n = scenario.n if scenario.n is not None else int(rng.integers(2, 6))
    alpha = float(rng.uniform(0.5, 5.0))
    beta = float(rng.uniform(0.5, 3.0))
    lam = _dyadic(rng.uniform(0.1, 10.0, size=n))

    # exact fixed-sum redistribution: move a dyadic amount between two slots
    moved = lam.copy()
    i, j = (int(v) for v in rng.choice(n, size=2, replace=False))
    delta = float(_dyadic(np.asarray([rng.uniform(0.0, 0.5) * lam[i]]))[0])
    delta = min(delta, lam[i] - 1.0 / _DYADIC)
    moved[i] -= delta
    moved[j] += delta
    shuffled = rng.permutation(moved)

    sys_x = SystemSpec(
        tuple(GompertzMakeham(alpha=alpha, beta=beta, lam=float(v)) for v in lam), "series")
    grid = Grid.for_models(sys_x, count=scenario.grid_count)
    xs = grid.points

    s_ref = np.asarray(lambda_aggregate_sf(lam, alpha, beta, xs))
    dev = 0.0
    for other in (moved, shuffled):
        s_other = np.asarray(lambda_aggregate_sf(other, alpha, beta, xs))
        with np.errstate(invalid="ignore"):
            rel = np.abs(s_other - s_ref) / np.where(s_ref > 0.0, s_ref, 1.0)
        dev = max(dev, float(rel.max()))
    invariant = dev <= _AGGREGATE_REL_TOL

    # strictly smaller rate sum -> stochastically larger system
    shrink = 1.0 - float(rng.uniform(0.05, 0.3))
    lam_small = lam * shrink
    sys_y = SystemSpec(
        tuple(GompertzMakeham(alpha=alpha, beta=beta, lam=float(v)) for v in lam_small),
        "series")
    verdict = certify_st(sys_x, sys_y, grid=grid, tolerance=scenario.tolerance)
    agg_x = s_ref
    agg_y = np.asarray(lambda_aggregate_sf(lam_small, alpha, beta, xs))
    agg_ok = bool(np.all(agg_y - agg_x >= -scenario.tolerance))

    ok = invariant and verdict.holds and agg_ok
    if not invariant:
        detail = f"aggregate survival not sum-invariant (rel dev {dev:.3e})"
    elif not (verdict.holds and agg_ok):
        detail = "usual order violated after lowering the rate sum"
    else:
        detail = ""
    curve = None
    if want_curve:
        curve = CurveSample(x=xs, lhs=agg_x, rhs=agg_y, diff=agg_y - agg_x,
                            lhs_label="sf_rate_sum_high", rhs_label="sf_rate_sum_low")
    return _InstanceResult(ok=ok, margin=verdict.margin, witness_x=verdict.witness_x,
                           detail=detail, curve=curve)


def _run_instance(
    scenario: TheoremScenario,
    rng: np.random.Generator,
    index: int,
    disabled: str | None,
) -> _InstanceResult:
    sid = scenario.scenario_id
    want_curve = index == 0
    pinned = index == 0 and disabled is None and sid in ("T3.1", "T4.1")
    if sid in ("T3.1", "T3.2", "T3.3", "T4.1", "T4.2", "T4.3"):
        family = "wg" if sid.startswith("T3") else "gm"
        n_range = (2, 2) if sid in ("T3.1", "T4.1") else (3, 5)
        k_range = (2, 3) if sid in ("T3.3", "T4.3") else (1, 1)
        return _hr_chain_instance(scenario, rng, family, n_range, k_range,
                                  disabled, pinned, want_curve)
    if sid == "T3.4":
        return _rh_parallel_instance(scenario, rng, want_curve)
    if sid == "T3.5":
        return _st_parallel_instance(scenario, rng, "wg", want_curve)
    if sid == "T4.5":
        return _st_parallel_instance(scenario, rng, "gm", want_curve)
    return _lambda_aggregate_instance(scenario, rng, want_curve)


def _run(scenario: TheoremScenario, disabled: str | None) -> BenchReport:
    failures: list[InstanceFailure] = []
    curve: CurveSample | None = None
    worst = np.inf
    passed = 0
    for index in range(scenario.count):
        rng = _instance_rng(scenario.seed, index)
        result = _run_instance(scenario, rng, index, disabled)
        worst = min(worst, result.margin)
        if index == 0:
            curve = result.curve
        if result.ok:
            passed += 1
        else:
            failures.append(InstanceFailure(index=index, detail=result.detail,
                                            margin=result.margin,
                                            witness_x=result.witness_x))
    return BenchReport(
        scenario_id=scenario.scenario_id,
        claim=_CLAIMS[scenario.scenario_id],
        count=scenario.count,
        seed=scenario.seed,
        grid_count=scenario.grid_count,
        tolerance=scenario.tolerance,
        passed=passed,
        worst_margin=float(worst),
        failures=tuple(failures),
        curve=curve,
        disabled_hypothesis=disabled,
    )


def run_scenario(scenario: TheoremScenario) -> BenchReport:
    """Run every seeded instance of one scenario and report the batch."""
    return _run(scenario, None)


def counterexample_probe(scenario: TheoremScenario, violated_hypothesis: str | None) -> BenchReport:
    """Rerun a scenario with one named hypothesis deliberately violated.

    ``None`` (or ``"none"``) reproduces run_scenario exactly. Otherwise
    the name must apply to the scenario: "pn" for the transform-based
    series claims, "beta_ge_2" for the Weibull-G ones. The report counts
    empirical violations; nothing is asserted about how many must occur.
    """
    if violated_hypothesis in (None, "none"):
        return _run(scenario, None)
    allowed = _HYPOTHESES[scenario.scenario_id]
    if violated_hypothesis not in allowed:
        raise ValueError(
            f"hypothesis {violated_hypothesis!r} does not apply to {scenario.scenario_id}; "
            f"applicable: {allowed or '(none)'}"
        )
    return _run(scenario, violated_hypothesis)
