// Service client. The store depends only on this interface, so tests can
// substitute a stub and the UI never computes model math itself.
import type { Comparison, ModelInfo, Prediction, VariantRequest } from "./types.js";

export interface ServiceClient {
  getModel(): Promise<ModelInfo>;
  predict(values: number[]): Promise<Prediction>;
  compare(baseline: number[], variants: VariantRequest[]): Promise<Comparison>;
}

async function postJson<T>(url: string, body: unknown): Promise<T> {
  const response = await fetch(url, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(body),
  });
  if (!response.ok) {
    throw new Error(`${url} failed with status ${response.status}`);
  }
  return response.json() as Promise<T>;
}

export class HttpClient implements ServiceClient {
  constructor(private baseUrl: string = "") {}

  async getModel(): Promise<ModelInfo> {
    const response = await fetch(`${this.baseUrl}/api/model`);
    if (!response.ok) {
      throw new Error(`GET /api/model failed with status ${response.status}`);
    }
    return response.json() as Promise<ModelInfo>;
  }

  predict(values: number[]): Promise<Prediction> {
    return postJson(`${this.baseUrl}/api/predict`, { values });
  }

  compare(baseline: number[], variants: VariantRequest[]): Promise<Comparison> {
    return postJson(`${this.baseUrl}/api/compare`, { baseline, variants });
  }
}
