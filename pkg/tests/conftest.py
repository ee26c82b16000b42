import math

import numpy as np
import pytest

from acceptance_engine import paper_model
from acceptance_engine.core_net import CANONICAL_INPUTS, NetworkSpec, ScenarioInput


@pytest.fixture(scope="session")
def paper_spec():
    return paper_model.load_paper_weights()


def naive_forward(spec, x):
    """Independent double-loop oracle for the forward pass.

    Deliberately avoids numpy vector ops so it cannot share a code path
    with the engine kernels.
    """
    y = spec.b_out
    for j in range(spec.hidden_size):
        pre = spec.b_hidden[j]
        for i in range(len(x)):
            pre += spec.w_in[i, j] * x[i]
        y += spec.w_out[j] * max(0.0, pre)
    if spec.output_activation == "sigmoid":
        y = 1.0 / (1.0 + math.exp(-y))
    return y


def random_spec(rng, hidden_size=None, n_inputs=6, scale=1.0, activation="linear"):
    h = hidden_size if hidden_size is not None else int(rng.integers(1, 11))
    names = tuple(CANONICAL_INPUTS[:n_inputs]) if n_inputs <= 6 else tuple(
        f"x{i}" for i in range(n_inputs)
    )
    return NetworkSpec(
        input_names=names,
        hidden_size=h,
        w_in=rng.normal(0.0, scale, (n_inputs, h)),
        b_hidden=rng.normal(0.0, scale, h),
        w_out=rng.normal(0.0, scale, h),
        b_out=float(rng.normal(0.0, scale)),
        output_activation=activation,
    )


def make_input(values, allow_out_of_domain=False):
    return ScenarioInput(np.asarray(values, dtype=float),
                         allow_out_of_domain=allow_out_of_domain)
