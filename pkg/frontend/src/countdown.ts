// Countdown polling: the service is the clock authority; the console just
// re-asks every few seconds and re-renders.

import type { RadsClient } from './api.js';
import type { CountdownPayload } from './types.js';

export const POLL_INTERVAL_MS = 5000;

export interface CountdownPoller {
  stop(): void;
}

export function startCountdownPolling(
  client: RadsClient,
  incidentId: string,
  onUpdate: (payload: CountdownPayload) => void,
  onError: (error: unknown) => void = () => {},
  intervalMs: number = POLL_INTERVAL_MS,
): CountdownPoller {
  let stopped = false;

  async function tick(): Promise<void> {
    if (stopped) return;
    try {
      onUpdate(await client.getCountdown(incidentId));
    } catch (error) {
      onError(error);
    }
  }

  void tick();
  const timer = setInterval(() => void tick(), intervalMs);
  return {
    stop() {
      stopped = true;
      clearInterval(timer);
    },
  };
}
