"""Deterministic mathematical core: network representation, ReLU forward
pass, and analytic input gradients.

The network is a single dense hidden layer with ReLU activations feeding one
scalar output:

    y = sum_j w_out[j] * max(0, sum_i w_in[i, j] * x[i] + b_hidden[j]) + b_out

optionally squashed through a sigmoid. Everything here is a pure function of
immutable values and safe to call from any thread.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import InvalidValueError, ShapeError

CANONICAL_INPUTS = (
    "transparency",
    "legitimacy",
    "independence",
    "quality",
    "costs",
    "impartiality",
)

OUTPUT_ACTIVATIONS = ("linear", "sigmoid")


def _as_readonly(a, dtype=float):
    out = np.ascontiguousarray(a, dtype=dtype)
    out.flags.writeable = False
    return out


@dataclass(frozen=True)
class NetworkSpec:
    """Full parameterization of a dense input->hidden->1 network.

    w_in has shape (inputs, hidden); b_hidden and w_out have length hidden;
    b_out is a scalar.
    """

    input_names: tuple
    hidden_size: int
    w_in: np.ndarray
    b_hidden: np.ndarray
    w_out: np.ndarray
    b_out: float
    output_activation: str = "linear"

    def __post_init__(self):
        object.__setattr__(self, "input_names", tuple(self.input_names))
        object.__setattr__(self, "w_in", _as_readonly(self.w_in))
        object.__setattr__(self, "b_hidden", _as_readonly(self.b_hidden))
        object.__setattr__(self, "w_out", _as_readonly(self.w_out))
        object.__setattr__(self, "b_out", float(self.b_out))

    @property
    def input_count(self):
        return len(self.input_names)


@dataclass(frozen=True)
class ScenarioInput:
    """One assignment of the input variables, in normalized [0, 1] units.

    Values outside [0, 1] are accepted only when allow_out_of_domain is set.
    """

    values: np.ndarray
    allow_out_of_domain: bool = False

    def __post_init__(self):
        object.__setattr__(self, "values", _as_readonly(np.atleast_1d(self.values)))


@dataclass(frozen=True)
class PredictionResult:
    acceptance: float
    hidden_pre: np.ndarray
    hidden_post: np.ndarray
    input_gradient: np.ndarray


def relu(x):
    """max(0, x) for a finite scalar."""
    x = float(x)
    if not math.isfinite(x):
        raise InvalidValueError(f"relu requires a finite input, got {x!r}")
    return x if x > 0.0 else 0.0


def validate_spec(spec):
    """Check every NetworkSpec invariant; returns a list of violation strings.

    An empty list means the spec is valid. Violations are data, not errors.
    """
    violations = []
    n_in = len(spec.input_names)
    h = spec.hidden_size
    if h < 1:
        violations.append(f"hidden_size: must be a positive integer, got {h}")
    if len(set(spec.input_names)) != n_in:
        violations.append("input_names: names must be unique")
    if spec.w_in.ndim != 2 or spec.w_in.shape[0] != n_in:
        violations.append(
            f"w_in: expected {n_in} rows (one per input), got shape {spec.w_in.shape}"
        )
    if spec.w_in.ndim != 2 or spec.w_in.shape[1] != h:
        violations.append(
            f"w_in: expected {h} columns (hidden_size), got shape {spec.w_in.shape}"
        )
    if spec.b_hidden.shape != (h,):
        violations.append(
            f"b_hidden: expected length {h}, got shape {spec.b_hidden.shape}"
        )
    if spec.w_out.shape != (h,):
        violations.append(f"w_out: expected length {h}, got shape {spec.w_out.shape}")
    for name, arr in (
        ("w_in", spec.w_in),
        ("b_hidden", spec.b_hidden),
        ("w_out", spec.w_out),
    ):
        if arr.size and not np.all(np.isfinite(arr)):
            violations.append(f"{name}: contains non-finite values")
    if not math.isfinite(spec.b_out):
        violations.append("b_out: must be finite")
    if spec.output_activation not in OUTPUT_ACTIVATIONS:
        violations.append(
            f"output_activation: must be one of {OUTPUT_ACTIVATIONS}, "
            f"got {spec.output_activation!r}"
        )
    return violations


def check_spec(spec):
    """Raise if the spec is invalid (shape problems first, then values)."""
    violations = validate_spec(spec)
    if violations:
        shape_issues = [v for v in violations if "non-finite" not in v]
        if shape_issues:
            raise ShapeError("; ".join(shape_issues))
        raise InvalidValueError("; ".join(violations))


def check_input(spec, inp):
    """Validate a ScenarioInput against a spec; raises on violation."""
    values = inp.values
    if values.shape != (spec.input_count,):
        raise ShapeError(
            f"input has shape {values.shape}, expected ({spec.input_count},)"
        )
    if not np.all(np.isfinite(values)):
        raise InvalidValueError("input contains non-finite values")
    if not inp.allow_out_of_domain:
        if np.any(values < 0.0) or np.any(values > 1.0):
            raise InvalidValueError(
                "input values outside [0, 1]; set allow_out_of_domain to evaluate anyway"
            )


def forward(spec, inp):
    """Evaluate the network at one input.

    Returns a PredictionResult carrying the hidden pre/post activations and
    the analytic gradient of the output w.r.t. the inputs. Bit-reproducible
    for identical inputs.
    """
    check_spec(spec)
    check_input(spec, inp)
    x = inp.values.reshape(1, -1)
    sigmoid = spec.output_activation == "sigmoid"
    pre, post, y = kernels.batch_forward(
        spec.w_in, spec.b_hidden, spec.w_out, spec.b_out, x, sigmoid
    )
    acceptance = float(y[0])
    # step(u) = 1 for u > 0, 0 otherwise (subgradient convention at the kink)
    active = pre[0] > 0.0
    grad = spec.w_in @ (np.asarray(spec.w_out) * active)
    if sigmoid:
        grad = grad * acceptance * (1.0 - acceptance)
    return PredictionResult(
        acceptance=acceptance,
        hidden_pre=np.asarray(pre[0]),
        hidden_post=np.asarray(post[0]),
        input_gradient=grad,
    )


def batch_forward(spec, x):
    """Vectorized acceptance over rows of x (shape (n, inputs)).

    Domain checks are the caller's responsibility; used by training and the
    scenario engine where inputs are constructed internally.
    """
    x = np.ascontiguousarray(x, dtype=float)
    sigmoid = spec.output_activation == "sigmoid"
    _, _, y = kernels.batch_forward(
        spec.w_in, spec.b_hidden, spec.w_out, spec.b_out, x, sigmoid
    )
    return np.asarray(y)


def input_gradient(spec, inp):
    """Analytic gradient of the acceptance w.r.t. the six inputs."""
    return forward(spec, inp).input_gradient
