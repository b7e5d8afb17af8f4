import { Figure, SeriesPoint, splitAtGaps } from "./figures";

const WIDTH = 720;
const HEIGHT = 480;
const MARGIN = { top: 44, right: 180, bottom: 54, left: 74 };

const PALETTE = [
  "#1b6ca8",
  "#d1495b",
  "#3a7d44",
  "#8d5a97",
  "#c77b21",
  "#3f3f3f",
  "#0f8b8d",
  "#a23b72",
];

function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function px(v: number): string {
  return v.toFixed(2);
}

function fmtTick(v: number): string {
  return String(+v.toPrecision(10));
}

interface Scale {
  lo: number;
  hi: number;
  a: number;
  b: number;
}

function makeScale(lo: number, hi: number, outLo: number, outHi: number): Scale {
  const a = (outHi - outLo) / (hi - lo);
  return { lo, hi, a, b: outLo - a * lo };
}

function apply(scale: Scale, v: number): number {
  return scale.a * v + scale.b;
}

/** Tick positions at a 1/2/5 step covering [lo, hi]. */
export function niceTicks(lo: number, hi: number, want = 6): number[] {
  const span = hi - lo;
  const raw = span / Math.max(1, want - 1);
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  let step = 10 * mag;
  for (const mult of [1, 2, 5]) {
    if (mult * mag >= raw) {
      step = mult * mag;
      break;
    }
  }
  const ticks: number[] = [];
  let v = Math.ceil(lo / step - 1e-9) * step;
  while (v <= hi + 1e-9 * span) {
    ticks.push(+v.toPrecision(12));
    v += step;
  }
  return ticks;
}

function dataRange(figure: Figure): { x: [number, number]; y: [number, number] } {
  let xLo = Infinity;
  let xHi = -Infinity;
  let yLo = 0;
  let yHi = -Infinity;
  for (const one of figure.series) {
    for (const p of one.points) {
      xLo = Math.min(xLo, p.x);
      xHi = Math.max(xHi, p.x);
      yLo = Math.min(yLo, p.mean - p.stderr);
      yHi = Math.max(yHi, p.mean + p.stderr);
    }
  }
  if (!Number.isFinite(xLo)) {
    xLo = 0;
    xHi = 1;
  }
  if (xHi === xLo) {
    xLo -= 0.5;
    xHi += 0.5;
  }
  if (!Number.isFinite(yHi) || yHi <= yLo) yHi = yLo + 1;
  const pad = 0.04 * (yHi - yLo);
  return { x: [xLo, xHi], y: [yLo, yHi + pad] };
}

function errorBar(x: number, p: SeriesPoint, sy: Scale, color: string): string {
  const top = apply(sy, p.mean + p.stderr);
  const bot = apply(sy, p.mean - p.stderr);
  const cap = 3;
  return (
    `<g class="errbar" stroke="${color}" stroke-width="1">` +
    `<line x1="${px(x)}" y1="${px(top)}" x2="${px(x)}" y2="${px(bot)}"/>` +
    `<line x1="${px(x - cap)}" y1="${px(top)}" x2="${px(x + cap)}" y2="${px(top)}"/>` +
    `<line x1="${px(x - cap)}" y1="${px(bot)}" x2="${px(x + cap)}" y2="${px(bot)}"/>` +
    `</g>`
  );
}

/** Render a figure to a standalone SVG document. Pure function of its input. */
export function render(figure: Figure): string {
  const plotW = WIDTH - MARGIN.left - MARGIN.right;
  const plotH = HEIGHT - MARGIN.top - MARGIN.bottom;
  const range = dataRange(figure);
  const sx = makeScale(range.x[0], range.x[1], MARGIN.left, MARGIN.left + plotW);
  const sy = makeScale(range.y[0], range.y[1], MARGIN.top + plotH, MARGIN.top);

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" ` +
      `viewBox="0 0 ${WIDTH} ${HEIGHT}">`
  );
  parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="#ffffff"/>`);
  parts.push(`<g font-family="Helvetica, Arial, sans-serif" font-size="12" fill="#1a1a1a">`);
  parts.push(
    `<text x="${px(MARGIN.left + plotW / 2)}" y="24" text-anchor="middle" ` +
      `font-size="14">${esc(figure.title)}</text>`
  );

  // Frame and ticks.
  parts.push(
    `<rect x="${px(MARGIN.left)}" y="${px(MARGIN.top)}" width="${px(plotW)}" ` +
      `height="${px(plotH)}" fill="none" stroke="#333333"/>`
  );
  const bottom = MARGIN.top + plotH;
  for (const tick of niceTicks(range.x[0], range.x[1])) {
    const x = apply(sx, tick);
    parts.push(
      `<line x1="${px(x)}" y1="${px(bottom)}" x2="${px(x)}" y2="${px(bottom + 5)}" stroke="#333333"/>`
    );
    parts.push(
      `<text x="${px(x)}" y="${px(bottom + 18)}" text-anchor="middle">${fmtTick(tick)}</text>`
    );
  }
  for (const tick of niceTicks(range.y[0], range.y[1])) {
    const y = apply(sy, tick);
    parts.push(
      `<line x1="${px(MARGIN.left - 5)}" y1="${px(y)}" x2="${px(MARGIN.left)}" y2="${px(y)}" stroke="#333333"/>`
    );
    parts.push(
      `<text x="${px(MARGIN.left - 8)}" y="${px(y + 4)}" text-anchor="end">${fmtTick(tick)}</text>`
    );
  }
  parts.push(
    `<text x="${px(MARGIN.left + plotW / 2)}" y="${px(bottom + 38)}" ` +
      `text-anchor="middle">${esc(figure.xLabel)}</text>`
  );
  parts.push(
    `<text x="20" y="${px(MARGIN.top + plotH / 2)}" text-anchor="middle" ` +
      `transform="rotate(-90 20 ${px(MARGIN.top + plotH / 2)})">${esc(figure.yLabel)}</text>`
  );

  // One color per series; gaps split the polyline instead of interpolating.
  figure.series.forEach((one, i) => {
    const color = PALETTE[i % PALETTE.length];
    parts.push(`<g class="series" data-series="${esc(one.label)}">`);
    for (const run of splitAtGaps(figure.grid, one.points)) {
      if (run.length > 1) {
        const coords = run
          .map((p) => `${px(apply(sx, p.x))},${px(apply(sy, p.mean))}`)
          .join(" ");
        parts.push(
          `<polyline points="${coords}" fill="none" stroke="${color}" stroke-width="1.5"/>`
        );
      }
    }
    for (const p of one.points) {
      const x = apply(sx, p.x);
      parts.push(errorBar(x, p, sy, color));
      parts.push(
        `<circle cx="${px(x)}" cy="${px(apply(sy, p.mean))}" r="2.5" fill="${color}"/>`
      );
    }
    parts.push(`</g>`);
  });

  // Legend in the right margin, one row per series.
  const legendX = MARGIN.left + plotW + 14;
  figure.series.forEach((one, i) => {
    const color = PALETTE[i % PALETTE.length];
    const y = MARGIN.top + 10 + 20 * i;
    parts.push(
      `<line x1="${px(legendX)}" y1="${px(y)}" x2="${px(legendX + 22)}" y2="${px(y)}" ` +
        `stroke="${color}" stroke-width="1.5"/>`
    );
    parts.push(
      `<circle cx="${px(legendX + 11)}" cy="${px(y)}" r="2.5" fill="${color}"/>`
    );
    parts.push(
      `<text x="${px(legendX + 28)}" y="${px(y + 4)}">${esc(one.label)}</text>`
    );
  });

  parts.push(`</g>`);
  parts.push(`</svg>`);
  return parts.join("\n") + "\n";
}
