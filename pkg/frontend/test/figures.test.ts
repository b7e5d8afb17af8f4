import { describe, expect, it } from "vitest";
import { AggregateRow } from "../src/csv";
import {
  buildFigure,
  errVsDelta,
  parseKind,
  splitAtGaps,
  utVsT,
} from "../src/figures";

function row(
  scheme: string,
  delta: number,
  mean: number,
  opts: Partial<AggregateRow> = {}
): AggregateRow {
  return {
    scheme,
    k: 100,
    s: 5,
    delta,
    decoder: "one-step",
    meanErrPerTask: mean,
    stderr: 0.01,
    trials: 100,
    ...opts,
  };
}

describe("parseKind", () => {
  it("accepts both spellings of each kind", () => {
    expect(parseKind("err-vs-delta")).toBe("err_vs_delta");
    expect(parseKind("ERR_VS_DELTA")).toBe("err_vs_delta");
    expect(parseKind("ut-vs-t")).toBe("ut_vs_t");
    expect(parseKind("UT_VS_T")).toBe("ut_vs_t");
  });

  it("rejects anything else", () => {
    expect(() => parseKind("histogram")).toThrow(/unknown figure kind/);
  });
});

describe("errVsDelta", () => {
  it("builds one curve per scheme over the shared delta grid", () => {
    const rows = [
      row("frc", 0.1, 1.0),
      row("frc", 0.2, 2.0),
      row("bgc", 0.1, 3.0),
      row("bgc", 0.2, 4.0),
    ];
    const fig = errVsDelta(rows, 100, 5);
    expect(fig.grid).toEqual([0.1, 0.2]);
    expect(fig.series.map((s) => s.label)).toEqual(["bgc", "frc"]);
    expect(fig.series[1].points.map((p) => p.mean)).toEqual([1.0, 2.0]);
  });

  it("drops rows for other k and s values", () => {
    const rows = [row("frc", 0.1, 1.0), row("frc", 0.1, 9.0, { k: 50 })];
    const fig = errVsDelta(rows, 100, 5);
    expect(fig.series).toHaveLength(1);
    expect(fig.series[0].points[0].mean).toBe(1.0);
  });

  it("filters on decoder when asked", () => {
    const rows = [
      row("frc", 0.1, 1.0),
      row("frc", 0.1, 2.0, { decoder: "optimal" }),
    ];
    const fig = errVsDelta(rows, 100, 5, "optimal");
    expect(fig.series.map((s) => s.label)).toEqual(["frc"]);
    expect(fig.series[0].points[0].mean).toBe(2.0);
  });

  it("labels curves by scheme and decoder when both vary", () => {
    const rows = [
      row("frc", 0.1, 1.0),
      row("frc", 0.1, 2.0, { decoder: "optimal" }),
    ];
    const fig = errVsDelta(rows, 100, 5);
    expect(fig.series.map((s) => s.label)).toEqual([
      "frc (one-step)",
      "frc (optimal)",
    ]);
  });

  it("keeps a missing cell as a hole, not a merged point", () => {
    const rows = [
      row("frc", 0.1, 1.0),
      row("frc", 0.2, 2.0),
      row("frc", 0.3, 3.0),
      row("bgc", 0.1, 4.0),
      row("bgc", 0.3, 5.0),
    ];
    const fig = errVsDelta(rows, 100, 5);
    expect(fig.grid).toEqual([0.1, 0.2, 0.3]);
    const bgc = fig.series[0];
    expect(bgc.points.map((p) => p.x)).toEqual([0.1, 0.3]);
    const runs = splitAtGaps(fig.grid, bgc.points);
    expect(runs).toHaveLength(2);
    expect(runs[0].map((p) => p.mean)).toEqual([4.0]);
    expect(runs[1].map((p) => p.mean)).toEqual([5.0]);
  });

  it("rejects duplicate cells", () => {
    const rows = [row("frc", 0.1, 1.0), row("frc", 0.1, 2.0)];
    expect(() => errVsDelta(rows, 100, 5)).toThrow(/duplicate cell/);
  });
});

describe("utVsT", () => {
  it("builds one curve per delta from per-iteration decoder labels", () => {
    const rows: AggregateRow[] = [];
    for (const delta of [0.8, 0.1]) {
      for (const t of [1, 2, 3]) {
        rows.push(
          row("bgc", delta, delta * t, { decoder: `iterative_t${t}` })
        );
      }
    }
    rows.push(row("bgc", 0.1, 99.0));
    const fig = utVsT(rows, 100, 5);
    expect(fig.grid).toEqual([1, 2, 3]);
    expect(fig.series.map((s) => s.label)).toEqual(["delta=0.1", "delta=0.8"]);
    expect(fig.series[1].points.map((p) => p.x)).toEqual([1, 2, 3]);
    expect(fig.series[1].points[2].mean).toBeCloseTo(2.4, 12);
  });

  it("ignores decoders without an iteration suffix", () => {
    const rows = [row("bgc", 0.1, 1.0), row("bgc", 0.1, 2.0, { decoder: "optimal" })];
    const fig = utVsT(rows, 100, 5);
    expect(fig.series).toHaveLength(0);
    expect(fig.grid).toEqual([]);
  });
});

describe("buildFigure", () => {
  it("dispatches on the figure kind", () => {
    const rows = [
      row("frc", 0.1, 1.0),
      row("bgc", 0.2, 2.0, { decoder: "iterative_t4" }),
    ];
    const byDelta = buildFigure(rows, "err_vs_delta", 100, 5);
    expect(byDelta.series.map((c) => c.label)).toEqual([
      "bgc (iterative_t4)",
      "frc (one-step)",
    ]);
    const byStep = buildFigure(rows, "ut_vs_t", 100, 5);
    expect(byStep.series.map((c) => c.label)).toEqual(["delta=0.2"]);
  });
});

describe("splitAtGaps", () => {
  it("returns one run when nothing is missing", () => {
    const points = [
      { x: 1, mean: 0, stderr: 0 },
      { x: 2, mean: 0, stderr: 0 },
    ];
    expect(splitAtGaps([1, 2], points)).toEqual([points]);
  });

  it("returns no runs for an empty series", () => {
    expect(splitAtGaps([1, 2], [])).toEqual([]);
  });
});
