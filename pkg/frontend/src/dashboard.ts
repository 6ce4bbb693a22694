// Incident dashboard rendering: decision table, summary, countdown header,
// cost advisory. All values come pre-formatted from the view model.

import type { ConsoleViewModel, CountdownView, DecisionRowView } from './viewmodel.js';
import { costAdvisory, countdownView, decisionRows, summaryLine } from './viewmodel.js';
import { FACTOR_NAMES } from './types.js';

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function renderCountdownHeader(root: HTMLElement, view: CountdownView): void {
  root.replaceChildren();
  root.appendChild(el('span', 'countdown-amount', view.currentAmount));
  if (view.expired) {
    root.appendChild(el('span', 'countdown-expired', 'OFFER EXPIRED'));
  } else if (view.nextAmount !== null && view.daysToNextDoubling !== null) {
    root.appendChild(
      el('span', 'countdown-next', `doubles to ${view.nextAmount} in ${view.daysToNextDoubling} days`),
    );
  } else {
    root.appendChild(el('span', 'countdown-next', 'no further doubling before the deadline'));
  }
  root.appendChild(el('span', 'countdown-elapsed', `day ${view.elapsedDays}`));
}

export function renderDecisionTable(
  root: HTMLElement,
  rows: DecisionRowView[],
  onEdit: (appId: string) => void,
): void {
  const table = el('table', 'decision-table');
  const head = el('tr');
  for (const title of [
    'Application', 'Criticality', ...FACTOR_NAMES.map((n) => n.replace('_', ' ')),
    'DF', 'AF', 'Decision', '',
  ]) {
    head.appendChild(el('th', undefined, title));
  }
  table.appendChild(head);
  for (const row of rows) {
    const tr = el('tr');
    tr.appendChild(el('td', 'app-name', `${row.name} (${row.appId})`));
    tr.appendChild(el('td', `crit-${row.criticality.toLowerCase()}`, row.criticality));
    for (const name of FACTOR_NAMES) {
      tr.appendChild(el('td', 'num', row.factors[name]));
    }
    tr.appendChild(el('td', 'num', row.decisionFactor));
    tr.appendChild(el('td', 'num af', row.adjustedFactor));
    tr.appendChild(el('td', `badge badge-${row.decision.toLowerCase()}`, row.decision));
    const editCell = el('td');
    const button = el('button', 'edit-btn', 'edit');
    button.addEventListener('click', () => onEdit(row.appId));
    editCell.appendChild(button);
    tr.appendChild(editCell);
    table.appendChild(tr);
  }
  root.replaceChildren(table);
}

export function renderDashboard(
  vm: ConsoleViewModel,
  roots: { table: HTMLElement; summary: HTMLElement; costs: HTMLElement; countdown: HTMLElement },
  onEdit: (appId: string) => void,
): void {
  if (!vm.report) return;
  renderDecisionTable(roots.table, decisionRows(vm.report, vm.scenario), onEdit);
  roots.summary.textContent = summaryLine(vm.report);
  roots.costs.replaceChildren(
    ...costAdvisory(vm.report).map((line) => el('div', 'cost-line', line)),
  );
  if (vm.countdown) {
    renderCountdownHeader(
      roots.countdown,
      countdownView(vm.countdown, vm.report.ransom_now.currency),
    );
  }
}
