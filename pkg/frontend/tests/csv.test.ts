import { describe, expect, it } from "vitest";
import * as fs from "node:fs";
import * as path from "node:path";
import { parseCcdfCsv, parseMetricsCsv, SchemaError } from "../src/csv.js";

const FIXTURES = path.join(__dirname, "fixtures");

const GOOD_HEADER =
  "scheme,channel,M,snr_db,trials,bit_errors,bits_total,ber,nmse_db";

describe("metrics CSV parsing", () => {
  it("parses the golden fixture", () => {
    const rows = parseMetricsCsv(
      fs.readFileSync(path.join(FIXTURES, "metrics.csv"), "utf-8"),
    );
    expect(rows.length).toBe(32);
    expect(rows[0].scheme).toBe("IAM_C");
    expect(rows[0].M).toBe(16);
    expect(rows[0].ber).toBeGreaterThan(0);
  });

  it("accepts comment lines and inf values", () => {
    const text = `# comment\n${GOOD_HEADER}\nM_IAM,AWGN,16,inf,2,0,100,0.0,-inf\n`;
    const rows = parseMetricsCsv(text);
    expect(rows[0].snrDb).toBe(Infinity);
    expect(rows[0].nmseDb).toBe(-Infinity);
  });

  it("names the missing column", () => {
    const text = "scheme,channel,M\nM_IAM,AWGN,16\n";
    expect(() => parseMetricsCsv(text)).toThrowError(/missing column 'snr_db'/);
  });

  it("reports the line number of a short row", () => {
    const text = `${GOOD_HEADER}\nM_IAM,AWGN,16,10.0,2,0,100,0.0,-20\nM_IAM,AWGN,16\n`;
    expect(() => parseMetricsCsv(text)).toThrowError(/line 3:/);
  });

  it("reports the line number of a non-numeric value", () => {
    const text = `# c\n${GOOD_HEADER}\nM_IAM,AWGN,16,ten,2,0,100,0.0,-20\n`;
    try {
      parseMetricsCsv(text);
      expect.unreachable();
    } catch (e) {
      expect(e).toBeInstanceOf(SchemaError);
      expect((e as Error).message).toMatch(/line 3: column 'snr_db'/);
    }
  });

  it("rejects a non-integer count with its line number", () => {
    const text = `${GOOD_HEADER}\nM_IAM,AWGN,16,10.0,2.5,0,100,0.0,-20\n`;
    expect(() => parseMetricsCsv(text)).toThrowError(
      /line 2: column 'trials' is not an integer/,
    );
  });
});

describe("ccdf CSV parsing", () => {
  it("parses a golden ccdf fixture with monotone probabilities", () => {
    const rows = parseCcdfCsv(
      fs.readFileSync(path.join(FIXTURES, "ccdf_M_IAM_16.csv"), "utf-8"),
    );
    expect(rows.length).toBeGreaterThan(10);
    for (let i = 1; i < rows.length; i++) {
      expect(rows[i].ccdf).toBeLessThanOrEqual(rows[i - 1].ccdf);
    }
  });

  it("rejects the wrong header", () => {
    expect(() => parseCcdfCsv("a,b,c,d\n1,2,3,4\n")).toThrowError(
      /missing column 'scheme'/,
    );
  });
});
