// Dependency-free SVG charts for the what-if panel. Pixel placement uses
// floats (drawing only); the labels carry the exact payload strings.

import type { SweepResultPayload } from './types.js';
import { payCounts } from './viewmodel.js';

const WIDTH = 640;
const HEIGHT = 260;
const PAD = 42;

const SERIES_COLORS = [
  '#2c7fb8', '#c0392b', '#27ae60', '#8e44ad', '#e67e22', '#16a085', '#7f8c8d',
];

function scale(values: number[], lo: number, hi: number): (v: number) => number {
  const min = Math.min(...values);
  const max = Math.max(...values);
  const span = max - min || 1;
  return (v) => lo + ((v - min) / span) * (hi - lo);
}

function esc(text: string): string {
  return text.replace(/&/g, '&amp;').replace(/</g, '&lt;').replace(/>/g, '&gt;');
}

/** Adjusted-factor curves per application across the sweep grid. */
export function sweepChartSvg(result: SweepResultPayload): string {
  const samples = result.points.map((p) => Number(p.sample.includes('/') ? fracToNumber(p.sample) : p.sample));
  const x = scale(samples, PAD, WIDTH - PAD);
  const rows = result.points[0].report.rows;
  const allValues: number[] = [];
  const series = rows.map((_, index) =>
    result.points.map((p) => {
      const value = Number(
        p.report.rows[index].adjusted_factor.includes('/')
          ? fracToNumber(p.report.rows[index].adjusted_factor)
          : p.report.rows[index].adjusted_factor,
      );
      allValues.push(value);
      return value;
    }),
  );
  const y = scale(allValues, HEIGHT - PAD, PAD);
  const lines = series
    .map((values, index) => {
      const points = values
        .map((value, i) => `${x(samples[i]).toFixed(1)},${y(value).toFixed(1)}`)
        .join(' ');
      const color = SERIES_COLORS[index % SERIES_COLORS.length];
      return `<polyline fill="none" stroke="${color}" stroke-width="1.5" points="${points}"><title>${esc(rows[index].app_id)}</title></polyline>`;
    })
    .join('');
  const labels = samples
    .map(
      (s, i) =>
        `<text x="${x(s).toFixed(1)}" y="${HEIGHT - 12}" text-anchor="middle" class="tick">${esc(
          result.points[i].sample,
        )}</text>`,
    )
    .join('');
  return (
    `<svg viewBox="0 0 ${WIDTH} ${HEIGHT}" role="img" aria-label="adjusted factors across ${esc(result.quantity)}">` +
    `<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>` +
    lines +
    labels +
    `</svg>`
  );
}

/** Pay-count step chart across the sweep grid. */
export function payCountChartSvg(result: SweepResultPayload): string {
  const counts = payCounts(result);
  const samples = counts.map((c, i) => i);
  const x = scale(samples, PAD, WIDTH - PAD);
  const y = scale([0, ...counts.map((c) => c.count)], HEIGHT - PAD, PAD);
  const steps = counts
    .map((c, i) => `${i === 0 ? 'M' : 'L'}${x(i).toFixed(1)},${y(c.count).toFixed(1)}`)
    .join(' ');
  const labels = counts
    .map(
      (c, i) =>
        `<text x="${x(i).toFixed(1)}" y="${HEIGHT - 12}" text-anchor="middle" class="tick">${esc(c.sample)}</text>` +
        `<text x="${x(i).toFixed(1)}" y="${(y(c.count) - 8).toFixed(1)}" text-anchor="middle" class="count">${c.count}</text>`,
    )
    .join('');
  return (
    `<svg viewBox="0 0 ${WIDTH} ${HEIGHT}" role="img" aria-label="applications to pay for across ${esc(result.quantity)}">` +
    `<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>` +
    `<path d="${steps}" fill="none" stroke="#c0392b" stroke-width="2"/>` +
    labels +
    `</svg>`
  );
}

function fracToNumber(text: string): number {
  const [p, q] = text.split('/');
  return Number(p) / Number(q);
}
