/** Figure assembly: CSV rows -> curve selection -> SVG string. */

import * as fs from "node:fs";
import * as path from "node:path";
import { CcdfRow, MetricRow, parseCcdfCsv, parseMetricsCsv } from "./csv.js";
import { Curve, renderChart } from "./svg.js";

export type FigureKind = "ber" | "nmse" | "ccdf";

export class EmptySelectionError extends Error {}

export interface FigureSpec {
  kind: FigureKind;
  channel?: string;
  subcarriers: number;
}

const SCHEME_ORDER = ["IAM_C", "E_IAM_C", "NPS", "M_IAM"];

function schemeSort(a: string, b: string): number {
  const ia = SCHEME_ORDER.indexOf(a);
  const ib = SCHEME_ORDER.indexOf(b);
  return (ia < 0 ? 99 : ia) - (ib < 0 ? 99 : ib) || a.localeCompare(b);
}

export function metricCurves(rows: MetricRow[], spec: FigureSpec): Curve[] {
  const selected = rows.filter(
    (r) =>
      r.M === spec.subcarriers &&
      (spec.channel === undefined || r.channel === spec.channel),
  );
  if (selected.length === 0) {
    throw new EmptySelectionError(
      `no rows match channel=${spec.channel ?? "*"} M=${spec.subcarriers}`,
    );
  }
  const bySchemes = new Map<string, MetricRow[]>();
  for (const r of selected) {
    const list = bySchemes.get(r.scheme) ?? [];
    list.push(r);
    bySchemes.set(r.scheme, list);
  }
  const curves: Curve[] = [];
  for (const scheme of [...bySchemes.keys()].sort(schemeSort)) {
    const rs = bySchemes
      .get(scheme)!
      .slice()
      .sort((a, b) => a.snrDb - b.snrDb);
    const points: [number, number][] = [];
    for (const r of rs) {
      const y = spec.kind === "ber" ? r.ber : Math.pow(10, r.nmseDb / 10);
      if (y > 0 && Number.isFinite(y) && Number.isFinite(r.snrDb)) {
        points.push([r.snrDb, y]);
      }
    }
    if (points.length > 0) {
      curves.push({ label: scheme, points });
    }
  }
  if (curves.length === 0) {
    throw new EmptySelectionError(
      "selection contains no positive finite values to plot",
    );
  }
  return curves;
}

export function ccdfCurves(rowsPerFile: CcdfRow[][], spec: FigureSpec): Curve[] {
  const curves: Curve[] = [];
  const all = rowsPerFile.flat().filter((r) => r.M === spec.subcarriers);
  if (all.length === 0) {
    throw new EmptySelectionError(`no CCDF rows match M=${spec.subcarriers}`);
  }
  const bySchemes = new Map<string, CcdfRow[]>();
  for (const r of all) {
    const list = bySchemes.get(r.scheme) ?? [];
    list.push(r);
    bySchemes.set(r.scheme, list);
  }
  for (const scheme of [...bySchemes.keys()].sort(schemeSort)) {
    const rs = bySchemes
      .get(scheme)!
      .slice()
      .sort((a, b) => a.papr0Db - b.papr0Db);
    const points = rs
      .filter((r) => r.ccdf > 0)
      .map((r): [number, number] => [r.papr0Db, r.ccdf]);
    if (points.length > 0) {
      curves.push({ label: scheme, points });
    }
  }
  return curves;
}

export function render(csvDir: string, spec: FigureSpec): string {
  if (spec.kind === "ccdf") {
    const files = fs
      .readdirSync(csvDir)
      .filter((f) => f.startsWith("ccdf_") && f.endsWith(".csv"))
      .sort();
    if (files.length === 0) {
      throw new EmptySelectionError(`no ccdf_*.csv files in ${csvDir}`);
    }
    const rows = files.map((f) =>
      parseCcdfCsv(fs.readFileSync(path.join(csvDir, f), "utf-8")),
    );
    return renderChart(ccdfCurves(rows, spec), {
      title: `PAPR CCDF, M=${spec.subcarriers}`,
      xLabel: "PAPR0 (dB)",
      yLabel: "CCDF",
    });
  }
  const metricsPath = path.join(csvDir, "metrics.csv");
  const rows = parseMetricsCsv(fs.readFileSync(metricsPath, "utf-8"));
  const curves = metricCurves(rows, spec);
  const where = `${spec.channel ?? "all channels"}, M=${spec.subcarriers}`;
  if (spec.kind === "ber") {
    return renderChart(curves, {
      title: `BER vs SNR (${where})`,
      xLabel: "SNR (dB)",
      yLabel: "BER",
    });
  }
  return renderChart(curves, {
    title: `NMSE vs SNR (${where})`,
    xLabel: "SNR (dB)",
    yLabel: "NMSE",
  });
}
