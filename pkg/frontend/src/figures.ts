import { AggregateRow } from "./csv";

export type FigureKind = "err_vs_delta" | "ut_vs_t";

export interface FigureSpec {
  inputCsv: string;
  figureKind: FigureKind;
  k: number;
  s: number;
  decoder?: string;
  outputImage: string;
}

export interface SeriesPoint {
  x: number;
  mean: number;
  stderr: number;
}

export interface Series {
  label: string;
  // Sorted by x, at most one point per grid value.
  points: SeriesPoint[];
}

export interface Figure {
  title: string;
  xLabel: string;
  yLabel: string;
  // Shared x grid; a series missing a grid value is drawn with a gap there.
  grid: number[];
  series: Series[];
}

// Per-iteration curves are stored with one decoder label per truncation depth.
const TRUNCATED = /^iterative_t(\d+)$/;

export function parseKind(raw: string): FigureKind {
  const kind = raw.toLowerCase().replace(/-/g, "_");
  if (kind === "err_vs_delta" || kind === "ut_vs_t") return kind;
  throw new Error(`unknown figure kind "${raw}"`);
}

function fmtShort(v: number): string {
  return String(+v.toPrecision(10));
}

function addPoint(
  byLabel: Map<string, Map<number, SeriesPoint>>,
  label: string,
  point: SeriesPoint
): void {
  let cells = byLabel.get(label);
  if (cells === undefined) {
    cells = new Map();
    byLabel.set(label, cells);
  }
  if (cells.has(point.x)) {
    throw new Error(`duplicate cell for "${label}" at x=${fmtShort(point.x)}`);
  }
  cells.set(point.x, point);
}

function toSeries(byLabel: Map<string, Map<number, SeriesPoint>>): Series[] {
  const labels = [...byLabel.keys()].sort();
  return labels.map((label) => {
    const cells = byLabel.get(label)!;
    const points = [...cells.values()].sort((a, b) => a.x - b.x);
    return { label, points };
  });
}

function gridOf(series: Series[]): number[] {
  const xs = new Set<number>();
  for (const one of series) {
    for (const p of one.points) xs.add(p.x);
  }
  return [...xs].sort((a, b) => a - b);
}

/** Mean error per task against the straggler fraction, one curve per scheme. */
export function errVsDelta(
  rows: AggregateRow[],
  k: number,
  s: number,
  decoder?: string
): Figure {
  const kept = rows.filter(
    (r) =>
      r.k === k && r.s === s && (decoder === undefined || r.decoder === decoder)
  );
  const decoders = new Set(kept.map((r) => r.decoder));
  const byLabel = new Map<string, Map<number, SeriesPoint>>();
  for (const r of kept) {
    const label = decoders.size > 1 ? `${r.scheme} (${r.decoder})` : r.scheme;
    addPoint(byLabel, label, {
      x: r.delta,
      mean: r.meanErrPerTask,
      stderr: r.stderr,
    });
  }
  const series = toSeries(byLabel);
  const suffix = decoder === undefined ? "" : `, ${decoder}`;
  return {
    title: `mean error per task (k=${k}, s=${s}${suffix})`,
    xLabel: "straggler fraction",
    yLabel: "err per task",
    grid: gridOf(series),
    series,
  };
}

/** Decoding error per task against iteration count, one curve per straggler fraction. */
export function utVsT(rows: AggregateRow[], k: number, s: number): Figure {
  const byDelta = new Map<number, Map<number, SeriesPoint>>();
  for (const r of rows) {
    if (r.k !== k || r.s !== s) continue;
    const m = TRUNCATED.exec(r.decoder);
    if (m === null) continue;
    let cells = byDelta.get(r.delta);
    if (cells === undefined) {
      cells = new Map();
      byDelta.set(r.delta, cells);
    }
    const t = Number(m[1]);
    if (cells.has(t)) {
      throw new Error(`duplicate cell for delta=${fmtShort(r.delta)} at t=${t}`);
    }
    cells.set(t, { x: t, mean: r.meanErrPerTask, stderr: r.stderr });
  }
  const deltas = [...byDelta.keys()].sort((a, b) => a - b);
  const series = deltas.map((d) => {
    const points = [...byDelta.get(d)!.values()].sort((a, b) => a.x - b.x);
    return { label: `delta=${fmtShort(d)}`, points };
  });
  return {
    title: `iterative decoding error per task (k=${k}, s=${s})`,
    xLabel: "iterations",
    yLabel: "err per task",
    grid: gridOf(series),
    series,
  };
}

export function buildFigure(
  rows: AggregateRow[],
  kind: FigureKind,
  k: number,
  s: number,
  decoder?: string
): Figure {
  if (kind === "err_vs_delta") return errVsDelta(rows, k, s, decoder);
  return utVsT(rows, k, s);
}

/** Split a series into runs of consecutive grid values; missing cells become gaps. */
export function splitAtGaps(
  grid: number[],
  points: SeriesPoint[]
): SeriesPoint[][] {
  const at = new Map(points.map((p) => [p.x, p]));
  const runs: SeriesPoint[][] = [];
  let run: SeriesPoint[] = [];
  for (const x of grid) {
    const p = at.get(x);
    if (p === undefined) {
      if (run.length > 0) runs.push(run);
      run = [];
    } else {
      run.push(p);
    }
  }
  if (run.length > 0) runs.push(run);
  return runs;
}
