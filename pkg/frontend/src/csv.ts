/**
 * Strict readers for the sweep CSV files.
 *
 * Both formats start with any number of `#` comment lines, then an exact
 * header row, then data rows.  Schema violations report the 1-based file
 * line number.
 */

export class SchemaError extends Error {}

export interface MetricRow {
  scheme: string;
  channel: string;
  M: number;
  snrDb: number;
  trials: number;
  bitErrors: number;
  bitsTotal: number;
  ber: number;
  nmseDb: number;
}

export interface CcdfRow {
  scheme: string;
  M: number;
  papr0Db: number;
  ccdf: number;
}

const METRICS_HEADER = [
  "scheme", "channel", "M", "snr_db", "trials", "bit_errors",
  "bits_total", "ber", "nmse_db",
];
const CCDF_HEADER = ["scheme", "M", "papr0_db", "ccdf"];

function parseNumber(token: string, column: string, line: number): number {
  const t = token.trim();
  const v =
    t === "inf" ? Infinity : t === "-inf" ? -Infinity : Number(t);
  if (t === "" || Number.isNaN(v)) {
    throw new SchemaError(
      `line ${line}: column '${column}' is not a number: '${token}'`,
    );
  }
  return v;
}

function parseInteger(token: string, column: string, line: number): number {
  const v = parseNumber(token, column, line);
  if (!Number.isInteger(v)) {
    throw new SchemaError(
      `line ${line}: column '${column}' is not an integer: '${token}'`,
    );
  }
  return v;
}

/** Split off comments, locate the header, validate column names. */
function splitRows(
  text: string,
  expectedHeader: string[],
): { cells: string[]; line: number }[] {
  const lines = text.split(/\r?\n/);
  let headerLine = -1;
  for (let i = 0; i < lines.length; i++) {
    const s = lines[i].trim();
    if (s === "" || s.startsWith("#")) continue;
    headerLine = i;
    break;
  }
  if (headerLine < 0) {
    throw new SchemaError("line 1: file contains no header row");
  }
  const header = lines[headerLine].split(",").map((c) => c.trim());
  for (const col of expectedHeader) {
    if (!header.includes(col)) {
      throw new SchemaError(
        `line ${headerLine + 1}: missing column '${col}'`,
      );
    }
  }
  if (header.length !== expectedHeader.length) {
    throw new SchemaError(
      `line ${headerLine + 1}: expected ${expectedHeader.length} columns, ` +
        `found ${header.length}`,
    );
  }
  const rows: { cells: string[]; line: number }[] = [];
  for (let i = headerLine + 1; i < lines.length; i++) {
    const s = lines[i].trim();
    if (s === "" || s.startsWith("#")) continue;
    const cells = lines[i].split(",");
    if (cells.length !== expectedHeader.length) {
      throw new SchemaError(
        `line ${i + 1}: expected ${expectedHeader.length} fields, ` +
          `found ${cells.length}`,
      );
    }
    rows.push({ cells, line: i + 1 });
  }
  return rows;
}

export function parseMetricsCsv(text: string): MetricRow[] {
  return splitRows(text, METRICS_HEADER).map(({ cells, line }) => ({
    scheme: cells[0].trim(),
    channel: cells[1].trim(),
    M: parseInteger(cells[2], "M", line),
    snrDb: parseNumber(cells[3], "snr_db", line),
    trials: parseInteger(cells[4], "trials", line),
    bitErrors: parseInteger(cells[5], "bit_errors", line),
    bitsTotal: parseInteger(cells[6], "bits_total", line),
    ber: parseNumber(cells[7], "ber", line),
    nmseDb: parseNumber(cells[8], "nmse_db", line),
  }));
}

export function parseCcdfCsv(text: string): CcdfRow[] {
  return splitRows(text, CCDF_HEADER).map(({ cells, line }) => ({
    scheme: cells[0].trim(),
    M: parseInteger(cells[1], "M", line),
    papr0Db: parseNumber(cells[2], "papr0_db", line),
    ccdf: parseNumber(cells[3], "ccdf", line),
  }));
}
