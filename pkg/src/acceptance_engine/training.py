"""From-scratch supervised training: min-max normalization, seeded 80/20
split, backpropagation, bias-corrected Adam, MSE evaluation, and a synthetic
data generator.

Every operation here is a pure function of its arguments (seeds included),
so identical calls produce bitwise-identical results.
"""
import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import core_net, kernels
from .core_net import NetworkSpec
from .errors import (
    DegenerateFeatureError,
    DivergenceError,
    EmptyDatasetError,
    InvalidValueError,
    ShapeError,
)


@dataclass(frozen=True)
class Dataset:
    """Rows of (inputs, acceptance target) plus per-feature (min, max) ranges.

    inputs has shape (n, features); targets has shape (n,); feature_ranges
    has shape (features, 2) with min < max per feature.
    """

    inputs: np.ndarray
    targets: np.ndarray
    feature_ranges: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "inputs", core_net._as_readonly(np.atleast_2d(self.inputs)))
        object.__setattr__(self, "targets", core_net._as_readonly(np.atleast_1d(self.targets)))
        object.__setattr__(self, "feature_ranges", core_net._as_readonly(self.feature_ranges))

    @property
    def n(self):
        return self.inputs.shape[0]


@dataclass(frozen=True)
class TrainingConfig:
    learning_rate: float = 0.001
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = 1e-8
    epochs: int = 5000
    split_ratio: float = 0.8
    seed: int = 0
    init_scale_rule: str = "fan_in_uniform"


@dataclass(frozen=True)
class TrainingHistory:
    train_mse: tuple
    final_test_mse: float
    epochs_run: int


@dataclass
class AdamState:
    """First/second moment accumulators shaped like the trainable parameters."""

    m: dict
    v: dict
    t: int = 0

    @classmethod
    def zeros_like(cls, params):
        return cls(
            m={k: np.zeros_like(p) for k, p in params.items()},
            v={k: np.zeros_like(p) for k, p in params.items()},
            t=0,
        )


def validate_dataset(dataset):
    if dataset.n == 0:
        raise EmptyDatasetError("dataset has no rows")
    if not np.all(np.isfinite(dataset.inputs)) or not np.all(np.isfinite(dataset.targets)):
        raise InvalidValueError("dataset contains non-finite values")
    if dataset.targets.shape != (dataset.n,):
        raise ShapeError(
            f"targets shape {dataset.targets.shape} does not match {dataset.n} rows"
        )
    if dataset.feature_ranges.shape != (dataset.inputs.shape[1], 2):
        raise ShapeError(
            f"feature_ranges shape {dataset.feature_ranges.shape} does not match "
            f"{dataset.inputs.shape[1]} features"
        )


def validate_config(config):
    checks = [
        ("learning_rate", config.learning_rate > 0),
        ("beta1", 0 < config.beta1 < 1),
        ("beta2", 0 < config.beta2 < 1),
        ("epsilon", config.epsilon > 0),
        ("epochs", config.epochs >= 1),
        ("split_ratio", 0 < config.split_ratio < 1),
        ("init_scale_rule", config.init_scale_rule == "fan_in_uniform"),
    ]
    bad = [name for name, ok in checks if not ok]
    if bad:
        raise InvalidValueError(f"invalid TrainingConfig fields: {', '.join(bad)}")


def mse(predictions, targets):
    """Mean squared error between two equal-length vectors."""
    predictions = np.asarray(predictions, dtype=float)
    targets = np.asarray(targets, dtype=float)
    if predictions.shape != targets.shape or predictions.size == 0:
        raise ShapeError(
            f"mse needs equal nonzero lengths, got {predictions.shape} and {targets.shape}"
        )
    return float(np.mean((predictions - targets) ** 2))


def _check_ranges(feature_ranges):
    lo, hi = feature_ranges[:, 0], feature_ranges[:, 1]
    degenerate = np.where(~(lo < hi))[0]
    if degenerate.size:
        if feature_ranges.shape[0] == len(core_net.CANONICAL_INPUTS):
            cols = [core_net.CANONICAL_INPUTS[i] for i in degenerate]
        else:
            cols = degenerate.tolist()
        raise DegenerateFeatureError(
            f"degenerate feature ranges (min >= max) in columns: {', '.join(map(str, cols))}"
        )


def normalize(dataset):
    """Map each input column through (x - min) / (max - min).

    Ranges are retained on the result so denormalize() can invert the map.
    Targets are left untouched.
    """
    validate_dataset(dataset)
    _check_ranges(dataset.feature_ranges)
    lo = dataset.feature_ranges[:, 0]
    hi = dataset.feature_ranges[:, 1]
    return replace(dataset, inputs=(dataset.inputs - lo) / (hi - lo))


def denormalize(dataset):
    """Inverse of normalize() for the same feature_ranges."""
    _check_ranges(dataset.feature_ranges)
    lo = dataset.feature_ranges[:, 0]
    hi = dataset.feature_ranges[:, 1]
    return replace(dataset, inputs=dataset.inputs * (hi - lo) + lo)


def split_dataset(dataset, ratio, seed):
    """Seeded shuffle then split; train gets floor(ratio * n) rows."""
    validate_dataset(dataset)
    if not (0 < ratio < 1):
        raise InvalidValueError(f"split ratio must be in (0, 1), got {ratio}")
    perm = np.random.default_rng(seed).permutation(dataset.n)
    n_train = int(math.floor(ratio * dataset.n))
    train_idx, test_idx = perm[:n_train], perm[n_train:]
    train = replace(dataset, inputs=dataset.inputs[train_idx], targets=dataset.targets[train_idx])
    test = replace(dataset, inputs=dataset.inputs[test_idx], targets=dataset.targets[test_idx])
    return train, test


def backward(spec, batch_inputs, batch_targets):
    """Batch-averaged MSE gradients for every trainable parameter.

    Returns a dict with keys w_in, b_hidden, w_out, b_out. The ReLU
    derivative at exactly 0 is 0.
    """
    x = np.ascontiguousarray(batch_inputs, dtype=float)
    t = np.ascontiguousarray(batch_targets, dtype=float)
    if x.ndim != 2 or x.shape[0] == 0:
        raise ShapeError(f"batch must be a nonempty 2-d array, got shape {x.shape}")
    if x.shape[1] != spec.input_count or t.shape != (x.shape[0],):
        raise ShapeError(
            f"batch shapes {x.shape}/{t.shape} do not match spec with "
            f"{spec.input_count} inputs"
        )
    g_w_in, g_b_hidden, g_w_out, g_b_out, _ = kernels.batch_backward(
        spec.w_in, spec.b_hidden, spec.w_out, spec.b_out, x, t,
        spec.output_activation == "sigmoid",
    )
    return {
        "w_in": np.asarray(g_w_in),
        "b_hidden": np.asarray(g_b_hidden),
        "w_out": np.asarray(g_w_out),
        "b_out": np.float64(g_b_out),
    }


def adam_step(params, grads, state, config):
    """One bias-corrected Adam update; returns (new_params, new_state)."""
    for key, g in grads.items():
        if not np.all(np.isfinite(g)):
            raise DivergenceError(f"non-finite gradient for {key}")
    t = state.t + 1
    b1, b2 = config.beta1, config.beta2
    new_params, new_m, new_v = {}, {}, {}
    for key, p in params.items():
        g = grads[key]
        m = b1 * state.m[key] + (1 - b1) * g
        v = b2 * state.v[key] + (1 - b2) * g * g
        m_hat = m / (1 - b1 ** t)
        v_hat = v / (1 - b2 ** t)
        new_params[key] = p - config.learning_rate * m_hat / (np.sqrt(v_hat) + config.epsilon)
        new_m[key], new_v[key] = m, v
    return new_params, AdamState(m=new_m, v=new_v, t=t)


def init_spec(input_names, hidden_size, seed, output_activation="linear"):
    """Seeded fan-in-scaled uniform weight init; biases start at zero."""
    rng = np.random.default_rng(seed)
    n_in = len(input_names)
    s_in = math.sqrt(1.0 / n_in)
    s_out = math.sqrt(1.0 / hidden_size)
    return NetworkSpec(
        input_names=input_names,
        hidden_size=hidden_size,
        w_in=rng.uniform(-s_in, s_in, (n_in, hidden_size)),
        b_hidden=np.zeros(hidden_size),
        w_out=rng.uniform(-s_out, s_out, hidden_size),
        b_out=0.0,
        output_activation=output_activation,
    )


def _spec_params(spec):
    return {
        "w_in": np.array(spec.w_in),
        "b_hidden": np.array(spec.b_hidden),
        "w_out": np.array(spec.w_out),
        "b_out": np.float64(spec.b_out),
    }


def _params_spec(template, params):
    return replace(
        template,
        w_in=params["w_in"],
        b_hidden=params["b_hidden"],
        w_out=params["w_out"],
        b_out=float(params["b_out"]),
    )


def train(dataset, config, hidden_size=10, input_names=core_net.CANONICAL_INPUTS):
    """Normalize, split, and fit a fresh network with full-batch Adam.

    Returns (trained NetworkSpec, TrainingHistory). Deterministic given
    (dataset, config): the split and the init both derive from config.seed.
    """
    validate_dataset(dataset)
    validate_config(config)
    normalized = normalize(dataset)
    train_set, test_set = split_dataset(normalized, config.split_ratio, config.seed)
    spec = init_spec(input_names, hidden_size, config.seed)
    params = _spec_params(spec)
    state = AdamState.zeros_like(params)
    x = np.ascontiguousarray(train_set.inputs)
    t = np.ascontiguousarray(train_set.targets)
    losses = []
    for epoch in range(config.epochs):
        g_w_in, g_b_hidden, g_w_out, g_b_out, preds = kernels.batch_backward(
            params["w_in"], params["b_hidden"], params["w_out"],
            float(params["b_out"]), x, t, spec.output_activation == "sigmoid",
        )
        with np.errstate(over="ignore"):
            loss = float(np.mean((np.asarray(preds) - t) ** 2))
        if not math.isfinite(loss):
            raise DivergenceError(f"non-finite training loss at epoch {epoch}", epoch=epoch)
        losses.append(loss)
        grads = {
            "w_in": np.asarray(g_w_in),
            "b_hidden": np.asarray(g_b_hidden),
            "w_out": np.asarray(g_w_out),
            "b_out": np.float64(g_b_out),
        }
        try:
            params, state = adam_step(params, grads, state, config)
        except DivergenceError as err:
            raise DivergenceError(f"{err} at epoch {epoch}", epoch=epoch) from None
    trained = _params_spec(spec, params)
    test_preds = core_net.batch_forward(trained, test_set.inputs)
    final_test_mse = mse(test_preds, test_set.targets) if test_set.n else float("nan")
    history = TrainingHistory(
        train_mse=tuple(losses),
        final_test_mse=final_test_mse,
        epochs_run=config.epochs,
    )
    return trained, history


def generate_synthetic(spec, n, noise_std=0.0, seed=0):
    """Draw n inputs uniformly from [0,1]^d and label them with the spec.

    Targets are forward(spec, x) plus Gaussian noise of the given std;
    feature_ranges are (0, 1) so normalization is the identity.
    """
    if n < 1:
        raise InvalidValueError(f"n must be >= 1, got {n}")
    if noise_std < 0:
        raise InvalidValueError(f"noise_std must be nonnegative, got {noise_std}")
    rng = np.random.default_rng(seed)
    d = spec.input_count
    x = rng.uniform(0.0, 1.0, (n, d))
    y = core_net.batch_forward(spec, x)
    if noise_std > 0:
        y = y + rng.normal(0.0, noise_std, n)
    ranges = np.tile([0.0, 1.0], (d, 1))
    return Dataset(inputs=x, targets=y, feature_ranges=ranges)
