import { describe, expect, it } from "vitest";

import { compareView, gaugeView, sliderGroups, tornadoView } from "../src/viewmodel.js";
import type { Comparison } from "../src/types.js";
import { MODEL, prediction } from "./stub.js";

describe("sliderGroups", () => {
  it("splits the six variables into 3 convergence and 3 divergence", () => {
    const groups = sliderGroups(MODEL);
    expect(groups).toHaveLength(2);
    expect(groups[0].heading).toBe("Convergences");
    expect(groups[0].variables.map((v) => v.name)).toEqual([
      "transparency",
      "legitimacy",
      "independence",
    ]);
    expect(groups[1].heading).toBe("Divergences");
    expect(groups[1].variables.map((v) => v.name)).toEqual([
      "quality",
      "costs",
      "impartiality",
    ]);
  });

  it("keeps the measurement text for tooltips", () => {
    const groups = sliderGroups(MODEL);
    for (const group of groups) {
      for (const variable of group.variables) {
        expect(variable.measurement.length).toBeGreaterThan(0);
      }
    }
  });
});

describe("gaugeView", () => {
  it("shows the raw score verbatim", () => {
    const view = gaugeView(prediction(1.98524));
    expect(view.score).toBe(1.98524);
    expect(view.scoreText).toBe("1.98524");
  });

  it("carries reference ticks at 1.0 and 1.98524", () => {
    const view = gaugeView(prediction(0.3));
    expect(view.ticks.map((t) => t.value)).toEqual([1.0, 1.98524]);
    expect(view.ticks[0].label).toBe("rejection reference (paper)");
    expect(view.ticks[1].label).toBe("paper's reported output");
  });

  it("highlights a tick only when the score lands exactly on it", () => {
    expect(gaugeView(prediction(1.0)).ticks[0].highlighted).toBe(true);
    expect(gaugeView(prediction(1.0)).ticks[1].highlighted).toBe(false);
    expect(gaugeView(prediction(1.98524)).ticks[1].highlighted).toBe(true);
    expect(gaugeView(prediction(0.5)).ticks.some((t) => t.highlighted)).toBe(false);
  });

  it("shows a dash, never 0, for a missing or NaN result", () => {
    expect(gaugeView(null).scoreText).toBe("—");
    expect(gaugeView(prediction(Number.NaN)).scoreText).toBe("—");
    expect(gaugeView(prediction(Number.NaN)).score).toBeNull();
  });
});

describe("tornadoView", () => {
  it("always produces exactly six bars", () => {
    const bars = tornadoView(prediction(1, [3, -1, 0.5, 2, -4, 0]), MODEL);
    expect(bars).toHaveLength(6);
  });

  it("sorts by absolute gradient with signed direction and polarity", () => {
    const bars = tornadoView(prediction(1, [3, -1, 0.5, 2, -4, 0]), MODEL);
    expect(bars.map((b) => b.name)).toEqual([
      "costs",
      "transparency",
      "quality",
      "legitimacy",
      "independence",
      "impartiality",
    ]);
    expect(bars.map((b) => b.rank)).toEqual([1, 2, 3, 4, 5, 6]);
    expect(bars[0].direction).toBe("negative");
    expect(bars[0].polarity).toBe("divergence");
    expect(bars[1].direction).toBe("positive");
    expect(bars[1].polarity).toBe("convergence");
    expect(bars[5].direction).toBe("zero");
  });

  it("renders an all-zero gradient in canonical input order", () => {
    const bars = tornadoView(prediction(1, [0, 0, 0, 0, 0, 0]), MODEL);
    expect(bars.map((b) => b.name)).toEqual(MODEL.input_names);
    expect(bars.every((b) => b.magnitude === 0)).toBe(true);
  });
});

describe("compareView", () => {
  const comparison: Comparison = {
    engine_version: "0.1.0",
    baseline: { values: [0.1, 0.2, 0.3, 0.4, 0.5, 0.6], acceptance: 2.5 },
    variants: [
      {
        label: "current",
        values: [0.2, 0.2, 0.3, 0.4, 0.5, 0.9],
        acceptance: 3.25,
        delta: 0.75,
        clamped: false,
      },
    ],
  };

  it("is hidden without a pinned comparison", () => {
    expect(compareView(null, MODEL).visible).toBe(false);
    expect(compareView(null, MODEL).rows).toEqual([]);
  });

  it("carries service acceptances and delta verbatim", () => {
    const view = compareView(comparison, MODEL);
    expect(view.visible).toBe(true);
    expect(view.baselineAcceptance).toBe(2.5);
    expect(view.currentAcceptance).toBe(3.25);
    expect(view.acceptanceDelta).toBe(0.75);
  });

  it("derives per-variable deltas from the two value vectors", () => {
    const view = compareView(comparison, MODEL);
    expect(view.rows.map((r) => r.variable)).toEqual(MODEL.input_names);
    expect(view.rows[0].delta).toBeCloseTo(0.1, 12);
    expect(view.rows[5].delta).toBeCloseTo(0.3, 12);
    expect(view.rows[2].delta).toBe(0);
  });
});
