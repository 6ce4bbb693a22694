// HTTP client for the incident service. One base URL is the only
// configuration. Writes return a discriminated result so callers are
// forced to handle version conflicts explicitly.

import type {
  AssessmentPayload,
  CountdownPayload,
  DecisionReportPayload,
  ErrorPayload,
  IncidentSummaryPayload,
  ScenarioPayload,
  SweepResultPayload,
} from './types.js';

export class ApiError extends Error {
  constructor(
    public status: number,
    public payload: ErrorPayload,
  ) {
    super(`${payload.code}: ${payload.message}`);
  }
}

export type SaveResult =
  | { ok: true; version: number }
  | { ok: false; conflict: true; error: ErrorPayload };

async function errorPayload(response: Response): Promise<ErrorPayload> {
  try {
    return (await response.json()) as ErrorPayload;
  } catch {
    return { code: 'HttpError', message: response.statusText, violations: [] };
  }
}

export class RadsClient {
  constructor(
    private baseUrl: string,
    private actor = 'console',
  ) {}

  private headers(): Record<string, string> {
    return { 'Content-Type': 'application/json', 'X-Actor': this.actor };
  }

  private async getJson<T>(path: string): Promise<T> {
    const response = await fetch(this.baseUrl + path, { headers: this.headers() });
    if (!response.ok) throw new ApiError(response.status, await errorPayload(response));
    return (await response.json()) as T;
  }

  listIncidents(): Promise<IncidentSummaryPayload[]> {
    return this.getJson('/api/incidents');
  }

  getScenario(id: string, version?: number): Promise<ScenarioPayload> {
    const suffix = version === undefined ? '' : `?version=${version}`;
    return this.getJson(`/api/incidents/${encodeURIComponent(id)}${suffix}`);
  }

  getDecision(id: string, day: string): Promise<DecisionReportPayload> {
    return this.getJson(
      `/api/incidents/${encodeURIComponent(id)}/decision?day=${encodeURIComponent(day)}`,
    );
  }

  getCountdown(id: string): Promise<CountdownPayload> {
    return this.getJson(`/api/incidents/${encodeURIComponent(id)}/countdown`);
  }

  async createIncident(doc: unknown, detectedAt?: string): Promise<{ id: string; version: number }> {
    const suffix = detectedAt ? `?detected_at=${encodeURIComponent(detectedAt)}` : '';
    const response = await fetch(`${this.baseUrl}/api/incidents${suffix}`, {
      method: 'POST',
      headers: this.headers(),
      body: JSON.stringify(doc),
    });
    if (!response.ok) throw new ApiError(response.status, await errorPayload(response));
    return (await response.json()) as { id: string; version: number };
  }

  private async put(path: string, body: unknown): Promise<SaveResult> {
    const response = await fetch(this.baseUrl + path, {
      method: 'PUT',
      headers: this.headers(),
      body: JSON.stringify(body),
    });
    if (response.status === 409) {
      return { ok: false, conflict: true, error: await errorPayload(response) };
    }
    if (!response.ok) throw new ApiError(response.status, await errorPayload(response));
    const payload = (await response.json()) as { version: number };
    return { ok: true, version: payload.version };
  }

  saveAssessment(
    id: string,
    appId: string,
    assessment: AssessmentPayload,
    baseVersion: number,
  ): Promise<SaveResult> {
    return this.put(
      `/api/incidents/${encodeURIComponent(id)}/applications/${encodeURIComponent(appId)}/assessment`,
      { assessment, base_version: baseVersion },
    );
  }

  saveWeights(
    id: string,
    weights: Record<string, string>,
    baseVersion: number,
  ): Promise<SaveResult> {
    return this.put(`/api/incidents/${encodeURIComponent(id)}/weights`, {
      weights,
      base_version: baseVersion,
    });
  }

  async runSweep(
    id: string,
    request: { quantity: string; grid: string[]; elapsed_days?: string },
  ): Promise<SweepResultPayload> {
    const response = await fetch(
      `${this.baseUrl}/api/incidents/${encodeURIComponent(id)}/sweep`,
      { method: 'POST', headers: this.headers(), body: JSON.stringify(request) },
    );
    if (!response.ok) throw new ApiError(response.status, await errorPayload(response));
    return (await response.json()) as SweepResultPayload;
  }

  async derive(
    id: string,
    kind: 'framing' | 'reference' | 'feasibility',
    facts: Record<string, unknown> = {},
  ): Promise<string> {
    const response = await fetch(
      `${this.baseUrl}/api/incidents/${encodeURIComponent(id)}/derive/${kind}`,
      { method: 'POST', headers: this.headers(), body: JSON.stringify(facts) },
    );
    if (!response.ok) throw new ApiError(response.status, await errorPayload(response));
    return ((await response.json()) as { value: string }).value;
  }
}
