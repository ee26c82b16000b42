// Central state for the explorer. All numbers on screen come from service
// responses held here; the store never computes model math.
//
// Every request carries a sequence number taken at issue time. A response
// only applies when its number is newer than the last applied one, so
// out-of-order arrivals can never overwrite fresher state.
import { debounce } from "./debounce.js";
import type { ServiceClient } from "./client.js";
import type { Comparison, ModelInfo, Prediction } from "./types.js";

export interface ExplorerState {
  model: ModelInfo | null;
  sliders: number[];
  prediction: Prediction | null;
  predictionValues: number[] | null;
  baseline: { values: number[]; acceptance: number } | null;
  comparison: Comparison | null;
  serviceError: boolean;
}

function clamp01(v: number): number {
  if (Number.isNaN(v)) return 0;
  return Math.min(1, Math.max(0, v));
}

export class ExplorerStore {
  readonly state: ExplorerState = {
    model: null,
    sliders: [0.5, 0.5, 0.5, 0.5, 0.5, 0.5],
    prediction: null,
    predictionValues: null,
    baseline: null,
    comparison: null,
    serviceError: false,
  };

  private predictIssued = 0;
  private predictApplied = 0;
  private compareIssued = 0;
  private compareApplied = 0;
  private schedulePredict: () => void;

  constructor(
    private client: ServiceClient,
    private onChange: () => void = () => {},
    debounceMs = 150,
  ) {
    this.schedulePredict = debounce(() => this.requestPredict(), debounceMs);
  }

  async init(): Promise<void> {
    try {
      this.state.model = await this.client.getModel();
      this.state.serviceError = false;
    } catch {
      this.state.serviceError = true;
    }
    this.onChange();
    this.requestPredict();
  }

  setSlider(index: number, value: number): void {
    this.state.sliders[index] = clamp01(value);
    this.onChange();
    this.schedulePredict();
  }

  requestPredict(): void {
    const seq = ++this.predictIssued;
    const values = this.state.sliders.slice();
    this.client.predict(values).then(
      (prediction) => {
        if (seq <= this.predictApplied) return;
        this.predictApplied = seq;
        this.state.prediction = prediction;
        this.state.predictionValues = values;
        this.state.serviceError = false;
        this.onChange();
        this.refreshComparison();
      },
      () => {
        if (seq <= this.predictApplied) return;
        this.state.serviceError = true;
        this.onChange();
      },
    );
  }

  pinBaseline(): void {
    if (this.state.prediction === null || this.state.predictionValues === null) {
      return;
    }
    this.state.baseline = {
      values: this.state.predictionValues.slice(),
      acceptance: this.state.prediction.acceptance,
    };
    this.onChange();
    this.refreshComparison();
  }

  unpinBaseline(): void {
    this.state.baseline = null;
    this.state.comparison = null;
    this.onChange();
  }

  // Promote the current scenario to baseline and keep comparing.
  swapBaseline(): void {
    this.pinBaseline();
  }

  private refreshComparison(): void {
    const { baseline, model } = this.state;
    if (baseline === null || model === null) return;
    const deltas: Record<string, number> = {};
    model.input_names.forEach((name, i) => {
      deltas[name] = this.state.sliders[i] - baseline.values[i];
    });
    const seq = ++this.compareIssued;
    this.client.compare(baseline.values.slice(), [{ label: "current", deltas }]).then(
      (comparison) => {
        if (seq <= this.compareApplied) return;
        this.compareApplied = seq;
        this.state.comparison = comparison;
        this.state.serviceError = false;
        this.onChange();
      },
      () => {
        if (seq <= this.compareApplied) return;
        this.state.serviceError = true;
        this.onChange();
      },
    );
  }
}
