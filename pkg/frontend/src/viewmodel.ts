// Console view model. Every number shown in the UI is derived from the
// server payload strings alone (single source of truth); nothing here
// recomputes a decision or a score.

import type { RadsClient, SaveResult } from './api.js';
import { formatFixed, formatMoney } from './rational.js';
import type {
  AssessmentPayload,
  ApplicationPayload,
  CountdownPayload,
  DecisionReportPayload,
  FactorName,
  ScenarioPayload,
  SweepResultPayload,
} from './types.js';
import { FACTOR_NAMES } from './types.js';

export interface DecisionRowView {
  appId: string;
  name: string;
  criticality: string;
  factors: Record<FactorName, string>;
  cap: string;
  decisionFactor: string;
  adjustedFactor: string;
  decision: 'Pay' | 'Resist';
}

export interface CountdownView {
  elapsedDays: string;
  currentAmount: string;
  nextAmount: string | null;
  daysToNextDoubling: string | null;
  expired: boolean;
}

export interface EditBuffer {
  appId: string;
  values: AssessmentPayload;
  dirty: boolean;
}

export interface ConflictState {
  appId: string;
  staleVersion: number;
  latest: ScenarioPayload;
  latestVersion: number;
  pending: AssessmentPayload;
}

export interface SweepPanelState {
  lastRequest: { quantity: string; grid: string[] } | null;
  result: SweepResultPayload | null;
}

export class ConsoleViewModel {
  scenario: ScenarioPayload | null = null;
  version = 0;
  report: DecisionReportPayload | null = null;
  countdown: CountdownPayload | null = null;
  sweep: SweepPanelState = { lastRequest: null, result: null };
  edit: EditBuffer | null = null;
  conflict: ConflictState | null = null;

  constructor(
    private client: RadsClient,
    readonly incidentId: string,
  ) {}

  async refresh(day = '0'): Promise<void> {
    this.scenario = await this.client.getScenario(this.incidentId);
    this.version = await currentVersion(this.client, this.incidentId);
    this.report = await this.client.getDecision(this.incidentId, day);
  }

  beginEdit(appId: string): EditBuffer {
    if (!this.scenario) throw new Error('no scenario loaded');
    const app = this.scenario.applications.find((a) => a.id === appId);
    if (!app) throw new Error(`unknown application ${appId}`);
    const values = app.assessment
      ? { ...app.assessment }
      : Object.fromEntries(FACTOR_NAMES.map((n) => [n, '0']));
    this.edit = { appId, values: values as AssessmentPayload, dirty: false };
    return this.edit;
  }

  setFactor(name: FactorName, value: string): void {
    if (!this.edit) throw new Error('no edit in progress');
    this.edit.values[name] = value;
    this.edit.dirty = true;
  }

  /** Versioned save. A 409 never overwrites: the latest scenario is
   *  re-fetched and surfaced as a conflict prompt with the pending edit. */
  async saveEdit(): Promise<SaveResult> {
    if (!this.edit || !this.scenario) throw new Error('no edit in progress');
    const result = await this.client.saveAssessment(
      this.incidentId,
      this.edit.appId,
      this.edit.values,
      this.version,
    );
    if (result.ok) {
      this.version = result.version;
      this.edit.dirty = false;
      this.scenario = await this.client.getScenario(this.incidentId);
      return result;
    }
    const latest = await this.client.getScenario(this.incidentId);
    const latestVersion = await currentVersion(this.client, this.incidentId);
    this.conflict = {
      appId: this.edit.appId,
      staleVersion: this.version,
      latest,
      latestVersion,
      pending: { ...this.edit.values },
    };
    return result;
  }

  /** After the responder reviewed the conflict: adopt the fresh version
   *  and keep the pending values as the (still dirty) edit buffer. */
  adoptConflict(): void {
    if (!this.conflict) throw new Error('no conflict to adopt');
    this.scenario = this.conflict.latest;
    this.version = this.conflict.latestVersion;
    this.edit = { appId: this.conflict.appId, values: this.conflict.pending, dirty: true };
    this.conflict = null;
  }
}

async function currentVersion(client: RadsClient, id: string): Promise<number> {
  const summaries = await client.listIncidents();
  const summary = summaries.find((s) => s.id === id);
  if (!summary) throw new Error(`incident ${id} not listed`);
  return summary.latest_version;
}

// --- pure render helpers -----------------------------------------------------

export function decisionRows(
  report: DecisionReportPayload,
  scenario: ScenarioPayload | null,
): DecisionRowView[] {
  const byId = new Map<string, ApplicationPayload>(
    (scenario?.applications ?? []).map((a) => [a.id, a]),
  );
  return report.rows.map((row) => {
    const assessment = byId.get(row.app_id)?.assessment;
    const factors = Object.fromEntries(
      FACTOR_NAMES.map((name) => [name, assessment ? formatFixed(assessment[name]) : '']),
    ) as Record<FactorName, string>;
    return {
      appId: row.app_id,
      name: row.name,
      criticality: row.criticality,
      factors,
      cap: formatFixed(row.cap),
      decisionFactor: formatFixed(row.decision_factor),
      adjustedFactor: formatFixed(row.adjusted_factor),
      decision: row.decision,
    };
  });
}

export function summaryLine(report: DecisionReportPayload): string {
  const payCount = report.rows.filter((r) => r.decision === 'Pay').length;
  const verdict = payCount > 0 ? 'PAY' : 'RESIST';
  return `${payCount}/${report.rows.length} above threshold ${report.threshold}: ${verdict}`;
}

export function costAdvisory(report: DecisionReportPayload): string[] {
  const lines = [
    `Ransom now: ${formatMoney(report.ransom_now.amount, report.ransom_now.currency)}`,
    `Ransom/breached: ${formatFixed(report.costs.ransom_to_breached)}`,
    `Ransom/recovery: ${formatFixed(report.costs.ransom_to_recovery)}`,
  ];
  return lines.concat(report.costs.flags.map((flag) => `note: ${flag}`));
}

export function countdownView(payload: CountdownPayload, currency: string): CountdownView {
  return {
    elapsedDays: formatFixed(payload.elapsed_days, 2),
    currentAmount: formatMoney(payload.current_amount, currency),
    nextAmount:
      payload.next_amount === null ? null : formatMoney(payload.next_amount, currency),
    daysToNextDoubling:
      payload.days_to_next_doubling === null
        ? null
        : formatFixed(payload.days_to_next_doubling, 2),
    expired: payload.expired,
  };
}

export function payCounts(result: SweepResultPayload): { sample: string; count: number }[] {
  return result.points.map((point) => ({
    sample: point.sample,
    count: point.report.rows.filter((row) => row.decision === 'Pay').length,
  }));
}
