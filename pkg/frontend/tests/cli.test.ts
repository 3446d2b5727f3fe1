import { afterEach, describe, expect, it, vi } from "vitest";
import * as fs from "node:fs";
import * as os from "node:os";
import * as path from "node:path";
import { main, parseArgs } from "../src/cli.js";

const FIXTURES = path.join(__dirname, "fixtures");

function tmpdir(): string {
  return fs.mkdtempSync(path.join(os.tmpdir(), "plot-test-"));
}

afterEach(() => {
  vi.restoreAllMocks();
});

describe("argument parsing", () => {
  it("parses a full flag set", () => {
    const args = parseArgs([
      "--kind", "ber", "--channel", "VEH_A", "--subcarriers", "16",
      "--in", "d", "--out", "f.svg",
    ]);
    expect(args).toEqual({
      kind: "ber", channel: "VEH_A", subcarriers: 16, inDir: "d",
      out: "f.svg",
    });
  });

  it("rejects unknown kinds", () => {
    expect(() =>
      parseArgs(["--kind", "psd", "--subcarriers", "16", "--in", "d",
        "--out", "f"]),
    ).toThrowError(/--kind/);
  });
});

describe("cli end to end", () => {
  it("writes a BER SVG and reports the path", () => {
    const dir = tmpdir();
    const out = path.join(dir, "ber.svg");
    const stdout = vi.spyOn(process.stdout, "write").mockReturnValue(true);
    const rc = main([
      "--kind", "ber", "--channel", "VEH_A", "--subcarriers", "16",
      "--in", FIXTURES, "--out", out,
    ]);
    expect(rc).toBe(0);
    expect(stdout).toHaveBeenCalledWith(out + "\n");
    const svg = fs.readFileSync(out, "utf-8");
    expect(svg.startsWith("<svg")).toBe(true);
    expect(svg.match(/class="curve"/g)?.length).toBe(4);
  });

  it("reports schema violations with the line number, exit 3", () => {
    const dir = tmpdir();
    fs.writeFileSync(
      path.join(dir, "metrics.csv"),
      "scheme,channel,M,snr_db,trials,bit_errors,bits_total,ber,nmse_db\n" +
        "M_IAM,AWGN,16,10.0,2,0,100,0.0,-20\nbroken row\n",
    );
    const stderr = vi.spyOn(process.stderr, "write").mockReturnValue(true);
    const rc = main([
      "--kind", "ber", "--subcarriers", "16", "--in", dir,
      "--out", path.join(dir, "x.svg"),
    ]);
    expect(rc).toBe(3);
    const msg = (stderr.mock.calls[0][0] as string) ?? "";
    expect(msg).toMatch(/schema error: line 3:/);
  });

  it("reports empty selections, exit 4", () => {
    const stderr = vi.spyOn(process.stderr, "write").mockReturnValue(true);
    const dir = tmpdir();
    const rc = main([
      "--kind", "ber", "--channel", "NOPE", "--subcarriers", "16",
      "--in", FIXTURES, "--out", path.join(dir, "x.svg"),
    ]);
    expect(rc).toBe(4);
    expect((stderr.mock.calls[0][0] as string)).toMatch(/empty selection/);
  });
});
