// Pure view models: service responses in, display-ready structures out.
// No DOM access and no arithmetic beyond grouping, ranking, and deltas,
// so these are directly testable against a stubbed service.
import type {
  Comparison,
  ModelInfo,
  Polarity,
  Prediction,
  VariableMeta,
} from "./types.js";

export interface SliderGroup {
  heading: string;
  polarity: Polarity;
  variables: VariableMeta[];
}

export function sliderGroups(model: ModelInfo): SliderGroup[] {
  const byPolarity = (p: Polarity) =>
    model.variables.filter((v) => v.polarity === p);
  return [
    { heading: "Convergences", polarity: "convergence", variables: byPolarity("convergence") },
    { heading: "Divergences", polarity: "divergence", variables: byPolarity("divergence") },
  ];
}

export interface GaugeTick {
  value: number;
  label: string;
  highlighted: boolean;
}

export interface GaugeView {
  scoreText: string;
  score: number | null;
  ticks: GaugeTick[];
}

const REJECTION_REFERENCE = 1.0;
const REPORTED_OUTPUT = 1.98524;

export function gaugeView(prediction: Prediction | null): GaugeView {
  const score =
    prediction !== null && Number.isFinite(prediction.acceptance)
      ? prediction.acceptance
      : null;
  const tick = (value: number, label: string): GaugeTick => ({
    value,
    label,
    highlighted: score === value,
  });
  return {
    scoreText: score === null ? "—" : String(score),
    score,
    ticks: [
      tick(REJECTION_REFERENCE, "rejection reference (paper)"),
      tick(REPORTED_OUTPUT, "paper's reported output"),
    ],
  };
}

export interface TornadoBar {
  name: string;
  gradient: number;
  magnitude: number;
  direction: "positive" | "negative" | "zero";
  polarity: Polarity;
  rank: number;
}

export function tornadoView(
  prediction: Prediction,
  model: ModelInfo,
): TornadoBar[] {
  const polarityOf = new Map(model.variables.map((v) => [v.name, v.polarity]));
  const bars = model.input_names.map((name, i) => {
    const g = prediction.gradient[i];
    return {
      name,
      gradient: g,
      magnitude: Math.abs(g),
      direction: g > 0 ? "positive" : g < 0 ? "negative" : "zero",
      polarity: polarityOf.get(name) ?? "convergence",
      canonical: i,
    } as TornadoBar & { canonical: number };
  });
  // ties break on canonical input order so all-zero gradients stay stable
  bars.sort((a, b) => b.magnitude - a.magnitude || a.canonical - b.canonical);
  return bars.map((b, i) => {
    const { canonical, ...bar } = b;
    void canonical;
    return { ...bar, rank: i + 1 };
  });
}

export interface CompareRow {
  variable: string;
  baseline: number;
  current: number;
  delta: number;
}

export interface CompareView {
  visible: boolean;
  baselineAcceptance: number | null;
  currentAcceptance: number | null;
  acceptanceDelta: number | null;
  clamped: boolean;
  rows: CompareRow[];
}

export function compareView(
  comparison: Comparison | null,
  model: ModelInfo | null,
): CompareView {
  if (comparison === null || model === null || comparison.variants.length === 0) {
    return {
      visible: false,
      baselineAcceptance: null,
      currentAcceptance: null,
      acceptanceDelta: null,
      clamped: false,
      rows: [],
    };
  }
  const variant = comparison.variants[0];
  return {
    visible: true,
    baselineAcceptance: comparison.baseline.acceptance,
    currentAcceptance: variant.acceptance,
    acceptanceDelta: variant.delta,
    clamped: variant.clamped,
    rows: model.input_names.map((name, i) => ({
      variable: name,
      baseline: comparison.baseline.values[i],
      current: variant.values[i],
      delta: variant.values[i] - comparison.baseline.values[i],
    })),
  };
}
