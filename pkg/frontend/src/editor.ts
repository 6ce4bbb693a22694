// Assessment editor: six sliders constrained to [0, 1] with the grid
// presets as snap points (snap, not constraint - any 4-decimal value is
// legal), derive buttons that prefill suggestions, and a versioned save
// whose 409 path opens the reload-and-merge prompt.

import type { RadsClient } from './api.js';
import type { ConsoleViewModel } from './viewmodel.js';
import { FACTOR_NAMES, GRID_PRESETS, type FactorName } from './types.js';

const DERIVABLE: Partial<Record<FactorName, 'framing' | 'reference' | 'feasibility'>> = {
  framing: 'framing',
  reference: 'reference',
  feasibility: 'feasibility',
};

export function renderEditor(
  root: HTMLElement,
  vm: ConsoleViewModel,
  client: RadsClient,
  onSaved: () => void,
): void {
  const edit = vm.edit;
  if (!edit) {
    root.replaceChildren();
    return;
  }
  root.replaceChildren();
  const form = document.createElement('form');
  form.className = 'editor';
  const title = document.createElement('h3');
  title.textContent = `Assessment: ${edit.appId} (v${vm.version})`;
  form.appendChild(title);

  const datalist = document.createElement('datalist');
  datalist.id = 'grid-presets';
  for (const preset of GRID_PRESETS) {
    const option = document.createElement('option');
    option.value = preset;
    datalist.appendChild(option);
  }
  form.appendChild(datalist);

  for (const name of FACTOR_NAMES) {
    const row = document.createElement('label');
    row.className = 'editor-row';
    const caption = document.createElement('span');
    caption.textContent = name.replace('_', ' ');
    row.appendChild(caption);

    const slider = document.createElement('input');
    slider.type = 'range';
    slider.min = '0';
    slider.max = '1';
    slider.step = '0.0001';
    slider.setAttribute('list', 'grid-presets');
    slider.value = edit.values[name];
    const value = document.createElement('input');
    value.type = 'text';
    value.className = 'factor-value';
    value.value = edit.values[name];
    slider.addEventListener('input', () => {
      value.value = slider.value;
      vm.setFactor(name, slider.value);
    });
    value.addEventListener('change', () => {
      vm.setFactor(name, value.value);
      slider.value = value.value;
    });
    row.appendChild(slider);
    row.appendChild(value);

    const kind = DERIVABLE[name];
    if (kind) {
      const derive = document.createElement('button');
      derive.type = 'button';
      derive.textContent = 'derive';
      derive.title = 'suggest a value from the incident facts';
      derive.addEventListener('click', async () => {
        try {
          const suggested = await client.derive(vm.incidentId, kind);
          value.value = suggested;
          slider.value = suggested;
          vm.setFactor(name, suggested);
        } catch (error) {
          alert(`derivation failed: ${error}`);
        }
      });
      row.appendChild(derive);
    }
    form.appendChild(row);
  }

  const save = document.createElement('button');
  save.type = 'submit';
  save.textContent = 'Save (versioned)';
  form.appendChild(save);

  form.addEventListener('submit', async (event) => {
    event.preventDefault();
    const result = await vm.saveEdit();
    if (result.ok) {
      onSaved();
      return;
    }
    renderConflictPrompt(root, vm, onSaved);
  });

  root.appendChild(form);
}

export function renderConflictPrompt(
  root: HTMLElement,
  vm: ConsoleViewModel,
  onResolved: () => void,
): void {
  const conflict = vm.conflict;
  if (!conflict) return;
  const prompt = document.createElement('div');
  prompt.className = 'conflict-prompt';
  const message = document.createElement('p');
  message.textContent =
    `Someone else saved version ${conflict.latestVersion} while you were editing ` +
    `from version ${conflict.staleVersion}. Your values were NOT saved. ` +
    `Review the fresh data, then reapply and save again.`;
  prompt.appendChild(message);
  const adopt = document.createElement('button');
  adopt.textContent = 'Load latest and keep my pending edits';
  adopt.addEventListener('click', () => {
    vm.adoptConflict();
    onResolved();
  });
  prompt.appendChild(adopt);
  root.appendChild(prompt);
}
