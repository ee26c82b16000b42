"""Acceptance gate: one test per criterion, each printing a PASS line and
enforcing its stated runtime budget.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines as they complete.
"""
import json
import math
import time
from pathlib import Path

import numpy as np
import numpy.testing as npt
import pytest
from fastapi.testclient import TestClient

from acceptance_engine import core_net, model_io, paper_model, scenario, training
from acceptance_engine.cli import main as cli_main
from acceptance_engine.core_net import CANONICAL_INPUTS, ScenarioInput, forward
from acceptance_engine.server import create_app
from acceptance_engine.training import Dataset, TrainingConfig

import _second_transcription as copy2
from conftest import make_input, naive_forward, random_spec
from test_core_net import PAPER_ALL_ZEROS

README = Path(__file__).resolve().parent.parent / "README.md"


def _finish(name, t0, limit):
    elapsed = time.monotonic() - t0
    assert elapsed < limit, f"{name} took {elapsed:.2f}s, budget {limit}s"
    print(f"ACCEPTANCE {name}: PASS ({elapsed:.2f}s)")


def test_fixture_fidelity(paper_spec):
    t0 = time.monotonic()
    count = 0
    for (i, j), value in copy2.W_IN.items():
        assert paper_spec.w_in[i - 1, j - 1] == value
        count += 1
    for j, value in copy2.B_HIDDEN.items():
        assert paper_spec.b_hidden[j - 1] == value
        count += 1
    for j, value in copy2.W_OUT.items():
        assert paper_spec.w_out[j - 1] == value
        count += 1
    assert paper_spec.b_out == copy2.B_OUT
    count += 1
    assert count == 81
    assert paper_spec.hidden_size == 10
    assert len(paper_spec.input_names) == 6
    _finish("fixture-fidelity", t0, 1.0)


def test_oracle_equivalence(paper_spec):
    t0 = time.monotonic()
    # per-term oracle at all zeros: sum over positive biases of w_out*b + b_out
    per_term = paper_spec.b_out
    for j in range(10):
        if paper_spec.b_hidden[j] > 0:
            per_term += paper_spec.w_out[j] * paper_spec.b_hidden[j]
    got = forward(paper_spec, make_input(np.zeros(6))).acceptance
    assert abs(got - per_term) < 1e-9
    assert abs(got - PAPER_ALL_ZEROS) < 1e-9
    rng = np.random.default_rng(2024)
    for _ in range(25):
        x = rng.uniform(0.0, 1.0, 6)
        got = forward(paper_spec, make_input(x)).acceptance
        npt.assert_allclose(got, naive_forward(paper_spec, x), rtol=1e-12)
    _finish("oracle-equivalence", t0, 1.0)


def test_paper_claim_audit():
    t0 = time.monotonic()
    for values in (np.zeros(6), np.full(6, 0.5), np.full(6, 0.123)):
        report = paper_model.verify_claimed_output(make_input(values), 1e-6)
        assert report.claimed_output == 1.98524
        assert math.isfinite(report.absolute_deviation)
    # the measured deviations at all-zeros and all-0.5 are recorded in the docs
    dev_zero = paper_model.verify_claimed_output(
        make_input(np.zeros(6)), 1e-6
    ).absolute_deviation
    dev_half = paper_model.verify_claimed_output(
        make_input(np.full(6, 0.5)), 1e-6
    ).absolute_deviation
    readme = README.read_text()
    assert f"{dev_zero:.3f}" in readme, "README must record the all-zeros deviation"
    assert f"{dev_half:.3f}" in readme, "README must record the all-0.5 deviation"
    _finish("paper-claim-audit", t0, 30.0)


def test_gradient_correctness():
    t0 = time.monotonic()
    rng = np.random.default_rng(909)
    h = 1e-6
    checked = 0
    while checked < 50:
        spec = random_spec(rng)
        x = rng.uniform(0.05, 0.95, 6)
        result = forward(spec, make_input(x))
        if np.abs(result.hidden_pre).min() <= 1e-3:
            continue
        # input gradient vs central differences
        for i in range(6):
            xp, xm = x.copy(), x.copy()
            xp[i] += h
            xm[i] -= h
            fd = (forward(spec, make_input(xp, True)).acceptance
                  - forward(spec, make_input(xm, True)).acceptance) / (2 * h)
            if abs(fd) < 1e-9 and abs(result.input_gradient[i]) < 1e-9:
                continue
            npt.assert_allclose(result.input_gradient[i], fd, rtol=1e-5)
        # parameter gradients vs central differences on a 4-sample batch
        batch = rng.uniform(0.05, 0.95, (4, 6))
        pre = batch @ spec.w_in + spec.b_hidden
        if np.abs(pre).min() <= 1e-3:
            continue
        targets = rng.normal(0.0, 1.0, 4)
        grads = training.backward(spec, batch, targets)
        params = training._spec_params(spec)

        def loss_at(p):
            return training.mse(
                core_net.batch_forward(training._params_spec(spec, p), batch), targets
            )

        for key in params:
            g_flat = np.atleast_1d(grads[key]).ravel()
            for idx in range(g_flat.size):
                pp = {k: np.array(v, dtype=float) for k, v in params.items()}
                pm = {k: np.array(v, dtype=float) for k, v in params.items()}
                np.atleast_1d(pp[key]).ravel()[idx] += h
                np.atleast_1d(pm[key]).ravel()[idx] -= h
                fd = (loss_at(pp) - loss_at(pm)) / (2 * h)
                if abs(fd) < 1e-9 and abs(g_flat[idx]) < 1e-9:
                    continue
                npt.assert_allclose(g_flat[idx], fd, rtol=1e-5, atol=1e-9)
        checked += 1
    _finish("gradient-correctness", t0, 10.0)


def test_training_self_consistency(paper_spec):
    # Substitute for the unreproducible published training run: recover
    # function values generated by the published parameterization itself.
    t0 = time.monotonic()
    dataset = training.generate_synthetic(paper_spec, 1000, noise_std=0.0, seed=42)
    config = TrainingConfig(seed=42)  # all defaults: lr 0.001, 5000 epochs, 80/20
    spec_a, hist_a = training.train(dataset, config)
    spec_b, hist_b = training.train(dataset, config)
    npt.assert_array_equal(spec_a.w_in, spec_b.w_in)
    npt.assert_array_equal(spec_a.b_hidden, spec_b.b_hidden)
    npt.assert_array_equal(spec_a.w_out, spec_b.w_out)
    assert spec_a.b_out == spec_b.b_out
    assert hist_a.train_mse == hist_b.train_mse
    elapsed = time.monotonic() - t0
    assert elapsed < 60.0
    # See the README's "Known failing acceptance criterion" note: the target
    # function has output variance ~8.5e3 and the default budget cannot fit
    # it to 1e-2. The assertion is kept as stated; it fails honestly.
    assert hist_a.final_test_mse < 1e-2, (
        f"final test MSE {hist_a.final_test_mse:.4g} (threshold 1e-2); "
        "known-unattainable with the default configuration, see README"
    )
    _finish("training-self-consistency", t0, 60.0)


def test_adam_sanity():
    t0 = time.monotonic()
    params = {"theta": np.float64(1.0)}
    state = training.AdamState.zeros_like(params)
    config = TrainingConfig(learning_rate=0.01)
    steps = 0
    while abs(float(params["theta"])) >= 1e-3:
        grads = {"theta": np.float64(2.0 * params["theta"])}
        params, state = training.adam_step(params, grads, state, config)
        steps += 1
        assert steps <= 5000, "did not reach |theta| < 1e-3 within 5000 steps"
    # zero gradient leaves parameters unchanged
    frozen = {"w": np.array([0.25, -1.5])}
    new_params, new_state = training.adam_step(
        frozen, {"w": np.zeros(2)}, training.AdamState.zeros_like(frozen), config
    )
    npt.assert_array_equal(new_params["w"], frozen["w"])
    assert new_state.t == 1
    _finish("adam-sanity", t0, 1.0)


def test_split_and_normalization_properties():
    t0 = time.monotonic()
    rng = np.random.default_rng(555)
    for trial in range(100):
        n = 100 if trial < 50 else int(rng.integers(5, 200))
        ranges = np.sort(rng.normal(0.0, 5.0, (6, 2)), axis=1)
        ranges[:, 1] += 0.25
        raw = ranges[:, 0] + rng.uniform(0.0, 1.0, (n, 6)) * (
            ranges[:, 1] - ranges[:, 0]
        )
        d = Dataset(inputs=raw, targets=rng.normal(0.0, 1.0, n),
                    feature_ranges=ranges)
        train_set, test_set = training.split_dataset(d, 0.8, seed=trial)
        assert train_set.n == math.floor(0.8 * n)
        assert train_set.n + test_set.n == n
        if n == 100:
            assert (train_set.n, test_set.n) == (80, 20)
        combined = np.vstack([
            np.column_stack([train_set.inputs, train_set.targets]),
            np.column_stack([test_set.inputs, test_set.targets]),
        ])
        original = np.column_stack([d.inputs, d.targets])
        npt.assert_array_equal(
            combined[np.lexsort(combined.T)], original[np.lexsort(original.T)]
        )
        back = training.denormalize(training.normalize(d))
        npt.assert_allclose(back.inputs, d.inputs, atol=1e-12, rtol=1e-12)
    _finish("split-normalization", t0, 5.0)


def test_piecewise_linearity(paper_spec):
    t0 = time.monotonic()
    base = make_input(np.full(6, 0.5))
    for variable in CANONICAL_INPUTS:
        idx = CANONICAL_INPUTS.index(variable)
        req = scenario.SweepRequest(variable, 0.0, 1.0, 201, base)
        points = scenario.sweep(paper_spec, req)
        patterns = []
        for x, _ in points:
            values = np.full(6, 0.5)
            values[idx] = x
            pre = forward(paper_spec, make_input(values)).hidden_pre
            patterns.append(tuple(pre > 0))
        ys = [y for _, y in points]
        interior = 0
        for k in range(1, len(ys) - 1):
            if patterns[k - 1] == patterns[k] == patterns[k + 1]:
                assert abs(ys[k + 1] - 2 * ys[k] + ys[k - 1]) < 1e-9
                interior += 1
        assert interior > 0, f"no constant-pattern segment found for {variable}"
    _finish("piecewise-linearity", t0, 5.0)


def _cli_json(capsys, argv):
    code = cli_main(argv)
    out = capsys.readouterr().out
    assert code == 0
    return json.loads(out)


def test_interface_conformance(paper_spec, capsys, tmp_path):
    t0 = time.monotonic()
    client = TestClient(create_app(paper_spec))
    rng = np.random.default_rng(31337)

    def var_flags(values):
        return [f"--{name}={v!r}" for name, v in zip(CANONICAL_INPUTS, values)]

    for k in range(20):
        kind = k % 5
        values = rng.uniform(0.0, 1.0, 6).tolist()
        if kind == 0:
            cli = _cli_json(capsys, ["predict", "--paper", "--json"] + var_flags(values))
            http = client.post("/api/predict", json={"values": values}).json()
            assert cli == http
        elif kind == 1:
            variable = CANONICAL_INPUTS[int(rng.integers(0, 6))]
            steps = int(rng.integers(2, 9))
            cli = _cli_json(capsys, [
                "sweep", "--paper", "--json", "--variable", variable,
                "--steps", str(steps),
            ] + var_flags(values))
            http = client.post("/api/sweep", json={
                "variable": variable, "steps": steps, "base": values,
            }).json()
            assert cli == http
        elif kind == 2:
            va, vb = "quality", CANONICAL_INPUTS[int(rng.integers(0, 3))]
            cli = _cli_json(capsys, [
                "grid", "--paper", "--json", "--var-a", va, "--var-b", vb,
                "--steps-a", "3", "--steps-b", "3",
            ] + var_flags(values))
            http = client.post("/api/grid", json={
                "var_a": va, "var_b": vb, "steps_a": 3, "steps_b": 3,
                "base": values,
            }).json()
            assert cli == http
        elif kind == 3:
            seed = int(rng.integers(0, 1000))
            cli = _cli_json(capsys, [
                "montecarlo", "--paper", "--json", "--samples", "200",
                "--seed", str(seed), "--dist", "costs=triangular:0.1,0.4,0.9",
            ])
            http = client.post("/api/montecarlo", json={
                "samples": 200, "seed": seed,
                "distributions": {
                    "costs": {"kind": "triangular", "params": [0.1, 0.4, 0.9]},
                },
            }).json()
            assert cli == http
        else:
            delta = float(rng.uniform(-0.3, 0.3))
            cli = _cli_json(capsys, [
                "compare", "--paper", "--json",
                "--variant", f"v:impartiality={delta}",
            ] + var_flags(values))
            http = client.post("/api/compare", json={
                "baseline": values,
                "variants": [{"label": "v", "deltas": {"impartiality": delta}}],
            }).json()
            assert cli == http

    # model-spec files round-trip exactly
    path = tmp_path / "paper.json"
    model_io.save_model(paper_spec, path)
    first = path.read_bytes()
    loaded = model_io.load_model(path)
    npt.assert_array_equal(loaded.w_in, paper_spec.w_in)
    model_io.save_model(loaded, path)
    assert path.read_bytes() == first

    # exit code matrix
    assert cli_main(["predict", "--paper", "--all=0"]) == 0
    capsys.readouterr()
    assert cli_main(["predict", "--paper", "--transparency=0.5"]) == 2
    capsys.readouterr()
    broken = tmp_path / "broken.json"
    broken.write_text("{")
    assert cli_main(["predict", "--model", str(broken), "--all=0"]) == 2
    capsys.readouterr()
    # degenerate feature -> 3
    d = training.generate_synthetic(paper_spec, 30, seed=0)
    inputs = np.array(d.inputs)
    inputs[:, 2] = 0.5
    data_path = tmp_path / "degenerate.csv"
    model_io.save_dataset(
        Dataset(inputs=inputs, targets=d.targets, feature_ranges=d.feature_ranges),
        data_path,
    )
    assert cli_main(["train", str(data_path), "--out", str(tmp_path / "m.json"),
                     "--epochs", "2"]) == 3
    capsys.readouterr()
    # divergence -> 4
    explode = tmp_path / "explode.csv"
    model_io.save_dataset(
        Dataset(inputs=np.array(d.inputs), targets=np.full(30, 1e200),
                feature_ranges=d.feature_ranges),
        explode,
    )
    assert cli_main(["train", str(explode), "--out", str(tmp_path / "m.json"),
                     "--epochs", "2"]) == 4
    capsys.readouterr()
    _finish("interface-conformance", t0, 30.0)
