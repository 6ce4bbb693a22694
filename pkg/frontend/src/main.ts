// Console boot: pick the incident, load the dashboard, start the
// countdown poller, wire the editor and what-if panel.

import { RadsClient } from './api.js';
import { startCountdownPolling } from './countdown.js';
import { renderDashboard } from './dashboard.js';
import { renderConflictPrompt, renderEditor } from './editor.js';
import { valueCurveSvg } from './valueCurve.js';
import { ConsoleViewModel } from './viewmodel.js';
import { renderWhatif, type WhatifControls } from './whatif.js';

const params = new URLSearchParams(window.location.search);
const BASE_URL = params.get('api') ?? localStorage.getItem('rads.baseUrl') ?? 'http://127.0.0.1:8000';
const ACTOR = params.get('actor') ?? 'console';

const client = new RadsClient(BASE_URL, ACTOR);

function byId(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node;
}

async function pickIncident(): Promise<string> {
  const fromUrl = params.get('incident');
  if (fromUrl) return fromUrl;
  const summaries = await client.listIncidents();
  if (!summaries.length) {
    byId('summary').textContent =
      `No incidents in the store at ${BASE_URL}. POST a scenario to /api/incidents first.`;
    throw new Error('no incidents');
  }
  return summaries[0].id;
}

async function boot(): Promise<void> {
  localStorage.setItem('rads.baseUrl', BASE_URL);
  const incidentId = await pickIncident();
  const vm = new ConsoleViewModel(client, incidentId);

  const roots = {
    table: byId('decision-table'),
    summary: byId('summary'),
    costs: byId('costs'),
    countdown: byId('countdown'),
  };
  const editorRoot = byId('editor');

  const redraw = () =>
    renderDashboard(vm, roots, (appId) => {
      vm.beginEdit(appId);
      renderEditor(editorRoot, vm, client, async () => {
        await vm.refresh();
        redraw();
        renderEditor(editorRoot, vm, client, () => void 0);
      });
    });

  byId('incident-title').textContent = incidentId;
  await vm.refresh();
  redraw();

  startCountdownPolling(
    client,
    incidentId,
    (payload) => {
      vm.countdown = payload;
      redraw();
    },
    (error) => {
      byId('countdown').textContent = `countdown unavailable: ${error}`;
    },
  );

  const whatifControls: WhatifControls = {
    quantity: byId('whatif-quantity') as HTMLSelectElement,
    gridInput: byId('whatif-grid') as HTMLInputElement,
    slider: byId('whatif-slider') as HTMLInputElement,
    charts: byId('whatif-charts'),
    status: byId('whatif-status'),
  };
  renderWhatif(whatifControls, vm, client);

  byId('value-curve').innerHTML = valueCurveSvg();

  // surface any conflict recorded outside the editor flow
  if (vm.conflict) renderConflictPrompt(editorRoot, vm, redraw);
}

void boot().catch((error) => {
  console.error(error);
});
