"""What-if exploration on top of any NetworkSpec: 1-d sweeps, 2-d grids,
Monte Carlo aggregation, and named-scenario comparison.

Every operation reduces to core_net.forward, so no modeling assumptions
enter here; recomputing any reported point independently yields the
identical value.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from . import core_net
from .core_net import ScenarioInput
from .errors import InvalidRequestError, InvalidValueError, UnknownVariableError

QUANTILES = (5, 25, 50, 75, 95)


@dataclass(frozen=True)
class SweepRequest:
    variable: str
    start: float
    end: float
    steps: int
    base: ScenarioInput


@dataclass(frozen=True)
class Distribution:
    """Sampling distribution for one variable, supported within [0, 1].

    kind is one of "uniform" (lo, hi), "triangular" (lo, mode, hi) or
    "point" (value,).
    """

    kind: str
    params: tuple

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(float(p) for p in self.params))
        expected = {"uniform": 2, "triangular": 3, "point": 1}
        if self.kind not in expected:
            raise InvalidRequestError(f"unknown distribution kind {self.kind!r}")
        if len(self.params) != expected[self.kind]:
            raise InvalidRequestError(
                f"{self.kind} takes {expected[self.kind]} parameters, got {self.params}"
            )
        if any(not (0.0 <= p <= 1.0) for p in self.params):
            raise InvalidRequestError(
                f"distribution support must lie within [0, 1], got {self.params}"
            )
        if self.kind == "uniform" and not self.params[0] <= self.params[1]:
            raise InvalidRequestError(f"uniform needs lo <= hi, got {self.params}")
        if self.kind == "triangular" and not (
            self.params[0] <= self.params[1] <= self.params[2]
        ):
            raise InvalidRequestError(
                f"triangular needs lo <= mode <= hi, got {self.params}"
            )

    def sample(self, rng, n):
        if self.kind == "uniform":
            lo, hi = self.params
            return rng.uniform(lo, hi, n) if lo < hi else np.full(n, lo)
        if self.kind == "triangular":
            lo, mode, hi = self.params
            return rng.triangular(lo, mode, hi, n) if lo < hi else np.full(n, lo)
        return np.full(n, self.params[0])


@dataclass(frozen=True)
class MonteCarloRequest:
    distributions: tuple  # one Distribution per input variable
    samples: int
    seed: int


@dataclass(frozen=True)
class MonteCarloSummary:
    mean: float
    std: float
    min: float
    max: float
    quantiles: dict  # percent -> value, nearest-rank
    samples: int


@dataclass(frozen=True)
class ComparisonVariant:
    label: str
    input: ScenarioInput
    acceptance: float
    delta: float
    clamped: bool


@dataclass(frozen=True)
class ScenarioComparison:
    baseline_input: ScenarioInput
    baseline_acceptance: float
    variants: tuple


def _var_index(spec, name):
    try:
        return spec.input_names.index(name)
    except ValueError:
        raise UnknownVariableError(
            f"unknown variable {name!r}; expected one of {spec.input_names}"
        ) from None


def sweep(spec, req):
    """Evaluate along one variable at evenly spaced values, others held at
    req.base. Returns a list of (value, acceptance)."""
    idx = _var_index(spec, req.variable)
    if req.steps < 2:
        raise InvalidRequestError(f"steps must be >= 2, got {req.steps}")
    if not req.start <= req.end:
        raise InvalidRequestError(f"need start <= end, got {req.start} > {req.end}")
    points = []
    for k in range(req.steps):
        value = req.start + k * (req.end - req.start) / (req.steps - 1)
        values = np.array(req.base.values)
        values[idx] = value
        inp = ScenarioInput(values, allow_out_of_domain=req.base.allow_out_of_domain)
        points.append((value, core_net.forward(spec, inp).acceptance))
    return points


def grid_sweep(spec, var_a, var_b, steps_a, steps_b, base,
               range_a=(0.0, 1.0), range_b=(0.0, 1.0)):
    """2-d sweep; returns (values_a, values_b, matrix) with matrix[p][q] the
    acceptance at values_a[p], values_b[q]."""
    if var_a == var_b:
        raise InvalidRequestError(f"grid variables must differ, both are {var_a!r}")
    ia, ib = _var_index(spec, var_a), _var_index(spec, var_b)
    if steps_a < 2 or steps_b < 2:
        raise InvalidRequestError("grid needs at least 2 steps per axis")
    values_a = [range_a[0] + p * (range_a[1] - range_a[0]) / (steps_a - 1)
                for p in range(steps_a)]
    values_b = [range_b[0] + q * (range_b[1] - range_b[0]) / (steps_b - 1)
                for q in range(steps_b)]
    matrix = []
    for va in values_a:
        row = []
        for vb in values_b:
            values = np.array(base.values)
            values[ia] = va
            values[ib] = vb
            inp = ScenarioInput(values, allow_out_of_domain=base.allow_out_of_domain)
            row.append(core_net.forward(spec, inp).acceptance)
        matrix.append(row)
    return values_a, values_b, matrix


def _nearest_rank(sorted_values, percent):
    n = len(sorted_values)
    rank = max(1, math.ceil(percent / 100.0 * n))
    return float(sorted_values[rank - 1])


def monte_carlo(spec, req):
    """Seeded Monte Carlo over the input distributions.

    Samples are drawn variable by variable from a single generator seeded
    with req.seed, so the result is a deterministic function of the request.
    Quantiles use the nearest-rank method.
    """
    if req.samples < 1:
        raise InvalidRequestError(f"samples must be >= 1, got {req.samples}")
    if len(req.distributions) != spec.input_count:
        raise InvalidRequestError(
            f"need {spec.input_count} distributions, got {len(req.distributions)}"
        )
    rng = np.random.default_rng(req.seed)
    x = np.column_stack([d.sample(rng, req.samples) for d in req.distributions])
    y = core_net.batch_forward(spec, x)
    y_sorted = np.sort(y)
    if y_sorted[0] == y_sorted[-1]:
        # constant sample: report exactly, avoiding mean-rounding noise
        mean, std = float(y_sorted[0]), 0.0
    else:
        mean, std = float(np.mean(y)), float(np.std(y))
    return MonteCarloSummary(
        mean=mean,
        std=std,
        min=float(y_sorted[0]),
        max=float(y_sorted[-1]),
        quantiles={q: _nearest_rank(y_sorted, q) for q in QUANTILES},
        samples=req.samples,
    )


def compare(spec, baseline, variants):
    """Apply per-variable deltas to a baseline and report acceptance deltas.

    variants is a list of (label, {variable: delta}). Out-of-range results
    are clamped to [0, 1] and flagged, so analysts can push deltas past the
    boundary without errors.
    """
    labels = [label for label, _ in variants]
    if len(set(labels)) != len(labels):
        raise InvalidRequestError(f"variant labels must be unique, got {labels}")
    baseline_acceptance = core_net.forward(spec, baseline).acceptance
    out = []
    for label, deltas in variants:
        values = np.array(baseline.values)
        for name, delta in deltas.items():
            values[_var_index(spec, name)] += float(delta)
        clamped_values = np.clip(values, 0.0, 1.0)
        clamped = bool(np.any(clamped_values != values))
        inp = ScenarioInput(clamped_values)
        acceptance = core_net.forward(spec, inp).acceptance
        out.append(
            ComparisonVariant(
                label=label,
                input=inp,
                acceptance=acceptance,
                delta=acceptance - baseline_acceptance,
                clamped=clamped,
            )
        )
    return ScenarioComparison(
        baseline_input=baseline,
        baseline_acceptance=baseline_acceptance,
        variants=tuple(out),
    )
