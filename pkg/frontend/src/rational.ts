// Exact rendering of the server's rational strings. Everything runs on
// BigInt so a displayed value can never drift from the payload: what the
// engine computed is what the responder reads.

interface Rational {
  num: bigint; // signed numerator
  den: bigint; // positive denominator
}

const DECIMAL_RE = /^(-?)(\d+)(?:\.(\d+))?$/;
const FRACTION_RE = /^(-?)(\d+)\/([1-9]\d*)$/;

export function parseRational(text: string): Rational {
  const dec = DECIMAL_RE.exec(text);
  if (dec) {
    const [, sign, whole, frac = ''] = dec;
    const den = 10n ** BigInt(frac.length);
    let num = BigInt(whole) * den + BigInt(frac || '0');
    if (sign === '-') num = -num;
    return { num, den };
  }
  const fra = FRACTION_RE.exec(text);
  if (fra) {
    const [, sign, p, q] = fra;
    let num = BigInt(p);
    if (sign === '-') num = -num;
    return { num, den: BigInt(q) };
  }
  throw new Error(`not a rational: ${JSON.stringify(text)}`);
}

/** Render with exactly `places` decimals, rounding half-up (no floats). */
export function formatFixed(text: string, places = 4): string {
  const { num, den } = parseRational(text);
  const sign = num < 0n ? '-' : '';
  const abs = num < 0n ? -num : num;
  const scale = 10n ** BigInt(places);
  const scaled = (abs * scale * 2n + den) / (2n * den);
  const digits = scaled.toString().padStart(places + 1, '0');
  if (places === 0) return `${sign}${digits}`;
  return `${sign}${digits.slice(0, -places)}.${digits.slice(-places)}`;
}

export function compareRationals(a: string, b: string): number {
  const ra = parseRational(a);
  const rb = parseRational(b);
  const left = ra.num * rb.den;
  const right = rb.num * ra.den;
  return left === right ? 0 : left < right ? -1 : 1;
}

/** Minor currency units -> "10,000,000.00 USD", exact at any magnitude. */
export function formatMoney(minor: number | bigint, currency: string): string {
  const value = BigInt(minor);
  const sign = value < 0n ? '-' : '';
  const abs = value < 0n ? -value : value;
  const major = abs / 100n;
  const cents = (abs % 100n).toString().padStart(2, '0');
  const grouped = major.toString().replace(/\B(?=(\d{3})+(?!\d))/g, ',');
  return `${sign}${grouped}.${cents} ${currency}`;
}
