"""The published 6-10-1 parameterization, its claimed output, and the
convergence/divergence semantics of the six input variables.

The parameter tables below were transcribed by hand from the published
source; the test suite holds a second, independently transcribed copy and
compares every value.
"""
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import core_net
from .core_net import CANONICAL_INPUTS, NetworkSpec, ScenarioInput
from .errors import UnknownVariableError

# Claimed output reported for the published model. The evaluation input
# behind it was never disclosed, so the engine reports deviation from this
# constant rather than asserting equality.
CLAIMED_OUTPUT = 1.98524

# Input-to-hidden weights, one row per input variable in canonical order,
# ten columns (hidden neurons 1..10).
_W_IN = (
    (-5.928, 2.114, -0.0986, 5.871, 1.457, 3.884, 4.447, -0.908, 1.093, -4.706),   # transparency
    (-0.9665, 1.174, -2.9226, -1.561, -3.168, 10.890, 2.457, -4.431, 1.716, 5.662),  # legitimacy
    (-3.915, 7.162, -2.952, 1.204, -0.883, -8.568, -0.533, -3.383, -5.872, 4.178),   # independence
    (10.889, 3.203, -0.432, -2.308, 1.673, -1.127, 8.571, -0.753, 2.871, 3.594),     # quality
    (6.658, -5.917, -2.782, 9.889, 3.032, -10.431, 5.992, 2.764, -7.843, -6.102),    # costs
    (-8.568, 4.127, 6.765, -1.903, 3.871, 4.065, 7.431, 1.112, -5.662, 1.671),       # impartiality
)

_B_HIDDEN = (1.463, 3.565, 5.878, 2.115, 0.674, 4.774, -1.621, 3.122, 5.983, 0.913)

_W_OUT = (-17.232, -2.925, -8.706, -3.915, -3.116, 10.890, 3.203, -10.431, 4.786, 4.706)

_B_OUT = 1.985


@dataclass(frozen=True)
class VariableMeta:
    name: str
    polarity: str  # "convergence" or "divergence"
    measurement: str


_VARIABLE_META = {
    "transparency": VariableMeta(
        "transparency",
        "convergence",
        "Number of judicial processes that follow clear and accessible criteria.",
    ),
    "legitimacy": VariableMeta(
        "legitimacy",
        "convergence",
        "Public opinion surveys on trust in the judicial system.",
    ),
    "independence": VariableMeta(
        "independence",
        "convergence",
        "International indices of judicial autonomy.",
    ),
    "quality": VariableMeta(
        "quality",
        "divergence",
        "Number of appeals and overturned rulings as indicators of judicial quality.",
    ),
    "costs": VariableMeta(
        "costs",
        "divergence",
        "Budget allocated and actual expenditure on the popular election process.",
    ),
    "impartiality": VariableMeta(
        "impartiality",
        "divergence",
        "Number of decisions challenged due to lack of impartiality.",
    ),
}


@dataclass(frozen=True)
class VerificationReport:
    input_used: ScenarioInput
    computed_output: float
    claimed_output: float
    absolute_deviation: float
    matches: bool
    note: str


@dataclass(frozen=True)
class SensitivityEntry:
    variable: str
    gradient: float
    rank: int  # 1 = largest |gradient|
    polarity: str


@lru_cache(maxsize=1)
def load_paper_weights():
    """The published parameterization as an immutable NetworkSpec."""
    spec = NetworkSpec(
        input_names=CANONICAL_INPUTS,
        hidden_size=10,
        w_in=np.array(_W_IN),
        b_hidden=np.array(_B_HIDDEN),
        w_out=np.array(_W_OUT),
        b_out=_B_OUT,
        output_activation="linear",
    )
    assert not core_net.validate_spec(spec)
    return spec


def verify_claimed_output(inp, tolerance):
    """Evaluate the published model at inp and report the deviation from the
    claimed output.

    This never asserts a match: the input behind the claimed value is
    undisclosed, so the report is an audit, not a test.
    """
    if not (tolerance > 0):
        raise ValueError(f"tolerance must be positive, got {tolerance!r}")
    computed = core_net.forward(load_paper_weights(), inp).acceptance
    deviation = abs(computed - CLAIMED_OUTPUT)
    return VerificationReport(
        input_used=inp,
        computed_output=computed,
        claimed_output=CLAIMED_OUTPUT,
        absolute_deviation=deviation,
        matches=deviation <= tolerance,
        note=(
            "The evaluation input behind the claimed output is undisclosed; "
            "this report measures deviation at the supplied input only."
        ),
    )


def variable_meta(name):
    """Polarity and measurement semantics for one of the six variables."""
    try:
        return _VARIABLE_META[name]
    except KeyError:
        raise UnknownVariableError(
            f"unknown variable {name!r}; expected one of {CANONICAL_INPUTS}"
        ) from None


def all_variable_meta():
    return [_VARIABLE_META[name] for name in CANONICAL_INPUTS]


def sensitivity_report(inp, spec=None):
    """Rank the six variables by |d acceptance / d x_i| at the given input.

    Gradients come from the analytic input gradient on the published model
    (or a caller-supplied spec); ties are broken by canonical variable order.
    """
    if spec is None:
        spec = load_paper_weights()
    grad = core_net.forward(spec, inp).input_gradient
    order = sorted(
        range(len(spec.input_names)), key=lambda i: (-abs(grad[i]), i)
    )
    return [
        SensitivityEntry(
            variable=spec.input_names[i],
            gradient=float(grad[i]),
            rank=rank + 1,
            polarity=_VARIABLE_META[spec.input_names[i]].polarity,
        )
        for rank, i in enumerate(order)
    ]
