import { readFileSync } from "fs";

// Must match the header written by the sweep runner byte for byte.
export const AGGREGATE_HEADER =
  "scheme,k,s,delta,decoder,mean_err_per_task,stderr,trials";

export interface AggregateRow {
  scheme: string;
  k: number;
  s: number;
  delta: number;
  decoder: string;
  meanErrPerTask: number;
  stderr: number;
  trials: number;
}

function toNumber(field: string, line: number, name: string): number {
  const v = Number(field);
  if (field === "" || !Number.isFinite(v)) {
    throw new Error(`line ${line}: ${name} is not a number: "${field}"`);
  }
  return v;
}

/** Parse the aggregate CSV written by the sweep runner. */
export function parseAggregate(text: string): AggregateRow[] {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0 || lines[0] !== AGGREGATE_HEADER) {
    throw new Error(
      `expected header "${AGGREGATE_HEADER}", got "${lines[0] ?? ""}"`
    );
  }
  const rows: AggregateRow[] = [];
  for (let i = 1; i < lines.length; i++) {
    const parts = lines[i].split(",");
    if (parts.length !== 8) {
      throw new Error(`line ${i + 1}: expected 8 fields, got ${parts.length}`);
    }
    rows.push({
      scheme: parts[0],
      k: toNumber(parts[1], i + 1, "k"),
      s: toNumber(parts[2], i + 1, "s"),
      delta: toNumber(parts[3], i + 1, "delta"),
      decoder: parts[4],
      meanErrPerTask: toNumber(parts[5], i + 1, "mean_err_per_task"),
      stderr: toNumber(parts[6], i + 1, "stderr"),
      trials: toNumber(parts[7], i + 1, "trials"),
    });
  }
  return rows;
}

export function readAggregate(path: string): AggregateRow[] {
  return parseAggregate(readFileSync(path, "utf8"));
}
