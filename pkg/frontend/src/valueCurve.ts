// Static, purely educational s-curve: how perceived value bends around a
// reference point (steeper for losses than for gains), and how an attacker
// shifts that reference so a ransom payment reads as a gain. Decorative
// only; never computed from scenario data.

const WIDTH = 420;
const HEIGHT = 300;
const CX = WIDTH / 2;
const CY = HEIGHT / 2;

function perceivedValue(outcome: number): number {
  // concave over gains, convex and steeper over losses
  return outcome >= 0 ? Math.pow(outcome, 0.6) : -2.25 * Math.pow(-outcome, 0.6);
}

export function valueCurveSvg(): string {
  const points: string[] = [];
  for (let px = -1; px <= 1.001; px += 0.02) {
    const x = CX + px * (WIDTH / 2 - 20);
    const y = CY - perceivedValue(px) * 52;
    points.push(`${x.toFixed(1)},${y.toFixed(1)}`);
  }
  const shifted = CX - 0.45 * (WIDTH / 2 - 20);
  return (
    `<svg viewBox="0 0 ${WIDTH} ${HEIGHT}" role="img" aria-label="illustrative value curve">` +
    `<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>` +
    `<line x1="10" y1="${CY}" x2="${WIDTH - 10}" y2="${CY}" stroke="#999"/>` +
    `<line x1="${CX}" y1="10" x2="${CX}" y2="${HEIGHT - 10}" stroke="#999"/>` +
    `<polyline fill="none" stroke="#2c7fb8" stroke-width="2.5" points="${points.join(' ')}"/>` +
    `<circle cx="${shifted.toFixed(1)}" cy="${CY}" r="4" fill="#c0392b"/>` +
    `<text x="${(shifted - 4).toFixed(1)}" y="${CY + 18}" class="annotation" text-anchor="end">reference shifted into losses</text>` +
    `<text x="${CX + 8}" y="24" class="annotation">perceived value</text>` +
    `<text x="${WIDTH - 14}" y="${CY - 8}" class="annotation" text-anchor="end">outcome</text>` +
    `<text x="${CX + 10}" y="${CY + 60}" class="annotation">losses loom ~2x larger,</text>` +
    `<text x="${CX + 10}" y="${CY + 76}" class="annotation">so "stop the loss" framing sells</text>` +
    `</svg>`
  );
}
