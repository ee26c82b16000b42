// Shapes of the service's JSON responses, mirrored field for field.

export type Polarity = "convergence" | "divergence";

export interface VariableMeta {
  name: string;
  polarity: Polarity;
  measurement: string;
}

export interface ModelInfo {
  engine_version: string;
  input_names: string[];
  hidden_size: number;
  output_activation: string;
  variables: VariableMeta[];
}

export interface Prediction {
  engine_version: string;
  acceptance: number;
  hidden_pre: number[];
  hidden_post: number[];
  gradient: number[];
}

export interface ComparisonVariant {
  label: string;
  values: number[];
  acceptance: number;
  delta: number;
  clamped: boolean;
}

export interface Comparison {
  engine_version: string;
  baseline: { values: number[]; acceptance: number };
  variants: ComparisonVariant[];
}

export interface VariantRequest {
  label: string;
  deltas: Record<string, number>;
}
