export { parseMetricsCsv, parseCcdfCsv, SchemaError } from "./csv.js";
export type { MetricRow, CcdfRow } from "./csv.js";
export { render, metricCurves, ccdfCurves, EmptySelectionError } from "./figure.js";
export type { FigureKind, FigureSpec } from "./figure.js";
export { renderChart } from "./svg.js";
export type { Curve, ChartOptions } from "./svg.js";
