// Wire payload shapes served by the incident service. Rationals travel as
// exact strings ("37.8125" or "19/7"); currency amounts as integer minor units.

export type DecisionLabel = 'Pay' | 'Resist';
export type Criticality = 'Critical' | 'High' | 'Medium' | 'Low';

export interface MoneyPayload {
  amount: number;
  currency: string;
}

export interface ReportRowPayload {
  app_id: string;
  name: string;
  criticality: Criticality;
  cap: string;
  decision_factor: string;
  adjusted_factor: string;
  decision: DecisionLabel;
}

export interface CostComparisonPayload {
  ransom_to_breached: string;
  ransom_to_recovery: string;
  flags: string[];
}

export interface DecisionReportPayload {
  scenario_id: string;
  elapsed_days: string;
  threshold: string;
  rows: ReportRowPayload[];
  mean_criticality: string;
  weight_criticality: string;
  ransom_now: MoneyPayload;
  costs: CostComparisonPayload;
}

export interface AssessmentPayload {
  impact: string;
  feasibility: string;
  effort_time: string;
  effort_cost: string;
  framing: string;
  reference: string;
  advisory_notes?: Record<string, string>;
}

export interface ApplicationPayload {
  id: string;
  name: string;
  criticality: Criticality;
  affected: boolean;
  assessment?: AssessmentPayload;
}

export interface ScenarioPayload {
  id: string;
  organisation: string;
  applications: ApplicationPayload[];
  weights: Record<string, string>;
  threshold: string;
  [key: string]: unknown;
}

export interface CountdownPayload {
  elapsed_days: string;
  current_amount: number;
  days_to_next_doubling: string | null;
  next_amount: number | null;
  expired: boolean;
}

export interface SweepPointPayload {
  sample: string;
  report: DecisionReportPayload;
}

export interface SweepResultPayload {
  quantity: string;
  constraint_mode: string;
  elapsed_days: string;
  points: SweepPointPayload[];
}

export interface IncidentSummaryPayload {
  id: string;
  organisation: string;
  status: string;
  latest_version: number;
  detected_at: string;
}

export interface ErrorPayload {
  code: string;
  message: string;
  violations: { code: string; path: string; message: string }[];
}

export const FACTOR_NAMES = [
  'impact',
  'feasibility',
  'effort_time',
  'effort_cost',
  'framing',
  'reference',
] as const;

export type FactorName = (typeof FACTOR_NAMES)[number];

// grid presets are snap points in the editor, never constraints
export const GRID_PRESETS = ['0', '0.25', '0.5', '0.75', '1'];
