import { writeFileSync } from "fs";
import { parseArgs } from "util";
import { readAggregate } from "./csv";
import { buildFigure, parseKind } from "./figures";
import { render } from "./svg";

const USAGE =
  "usage: plot_fig --csv <path> --kind err-vs-delta|ut-vs-t " +
  "--k <int> --s <int> [--decoder <name>] --out <path>";

function intArg(raw: string | undefined, name: string): number {
  if (raw === undefined) throw new Error(`missing --${name}\n${USAGE}`);
  const v = Number(raw);
  if (!Number.isInteger(v) || v <= 0) {
    throw new Error(`--${name} must be a positive integer, got "${raw}"`);
  }
  return v;
}

export function run(argv: string[]): void {
  const { values } = parseArgs({
    args: argv,
    options: {
      csv: { type: "string" },
      kind: { type: "string" },
      k: { type: "string" },
      s: { type: "string" },
      decoder: { type: "string" },
      out: { type: "string" },
    },
    strict: true,
  });
  if (values.csv === undefined || values.kind === undefined || values.out === undefined) {
    throw new Error(`missing --csv, --kind, or --out\n${USAGE}`);
  }
  const kind = parseKind(values.kind);
  const k = intArg(values.k, "k");
  const s = intArg(values.s, "s");

  const rows = readAggregate(values.csv);
  if (rows.length === 0) {
    throw new Error(`no data rows in ${values.csv}`);
  }
  const figure = buildFigure(rows, kind, k, s, values.decoder);
  if (figure.series.length === 0) {
    throw new Error(`no rows match k=${k} s=${s} in ${values.csv}`);
  }
  writeFileSync(values.out, render(figure));
  console.log(`wrote ${values.out} (${figure.series.length} series)`);
}

function main(): void {
  try {
    run(process.argv.slice(2));
  } catch (err) {
    console.error(`plot_fig: ${(err as Error).message}`);
    process.exitCode = 1;
  }
}

if (typeof require !== "undefined" && require.main === module) main();
