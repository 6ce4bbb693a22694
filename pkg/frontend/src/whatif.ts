// What-if panel: choose a quantity, drag the grid slider, watch where
// decisions flip. Every plotted point comes from a POST /sweep call.

import type { RadsClient } from './api.js';
import { payCountChartSvg, sweepChartSvg } from './charts.js';
import type { ConsoleViewModel } from './viewmodel.js';
import { payCounts } from './viewmodel.js';

export interface WhatifControls {
  quantity: HTMLSelectElement;
  gridInput: HTMLInputElement;
  slider: HTMLInputElement;
  charts: HTMLElement;
  status: HTMLElement;
}

export function quantityOptions(vm: ConsoleViewModel): string[] {
  const options = ['threshold', 'elapsed_days'];
  for (const name of ['impact', 'feasibility', 'effort_time', 'effort_cost', 'framing', 'reference']) {
    options.push(`weight:${name}`);
  }
  for (const app of vm.scenario?.applications ?? []) {
    if (app.affected) {
      options.push(`factor:${app.id}:impact`, `factor:${app.id}:framing`);
    }
  }
  return options;
}

/** Slider positions spread between the first and last grid point. */
export function sliderGrid(lo: number, hi: number, steps: number): string[] {
  const grid: string[] = [];
  for (let i = 0; i < steps; i++) {
    const value = lo + ((hi - lo) * i) / (steps - 1);
    grid.push(Number.isInteger(value) ? String(value) : value.toFixed(2));
  }
  return grid;
}

export function renderWhatif(
  controls: WhatifControls,
  vm: ConsoleViewModel,
  client: RadsClient,
): void {
  controls.quantity.replaceChildren(
    ...quantityOptions(vm).map((name) => {
      const option = document.createElement('option');
      option.value = name;
      option.textContent = name;
      return option;
    }),
  );

  async function run(): Promise<void> {
    const quantity = controls.quantity.value;
    const grid = controls.gridInput.value
      .split(',')
      .map((s) => s.trim())
      .filter(Boolean);
    if (!grid.length) return;
    controls.status.textContent = 'sweeping...';
    try {
      const result = await client.runSweep(vm.incidentId, { quantity, grid });
      vm.sweep = { lastRequest: { quantity, grid }, result };
      controls.charts.innerHTML = sweepChartSvg(result) + payCountChartSvg(result);
      const counts = payCounts(result)
        .map((c) => `${c.sample}: pay ${c.count}`)
        .join('  |  ');
      controls.status.textContent = counts;
    } catch (error) {
      controls.status.textContent = `sweep failed: ${error}`;
    }
  }

  controls.quantity.addEventListener('change', () => void run());
  controls.gridInput.addEventListener('change', () => void run());
  controls.slider.addEventListener('change', () => {
    // the slider picks the upper end of a 5-point grid from 0 to its value
    const upper = Number(controls.slider.value);
    controls.gridInput.value = sliderGrid(Math.max(1, upper - 10), upper, 5).join(',');
    void run();
  });
  void run();
}
