#!/usr/bin/env node
/**
 * plot --kind {ber,nmse,ccdf} --channel X --subcarriers M --in DIR --out FILE
 *
 * Reads the sweep CSV files from DIR and writes one SVG figure.
 */

import * as fs from "node:fs";
import { SchemaError } from "./csv.js";
import { EmptySelectionError, FigureKind, render } from "./figure.js";

interface Args {
  kind: FigureKind;
  channel?: string;
  subcarriers: number;
  inDir: string;
  out: string;
}

export function parseArgs(argv: string[]): Args {
  const get = (flag: string): string | undefined => {
    const i = argv.indexOf(flag);
    if (i < 0) return undefined;
    const v = argv[i + 1];
    if (v === undefined || v.startsWith("--")) {
      throw new Error(`flag ${flag} expects a value`);
    }
    return v;
  };
  const kind = get("--kind");
  if (kind !== "ber" && kind !== "nmse" && kind !== "ccdf") {
    throw new Error("--kind must be one of ber, nmse, ccdf");
  }
  const sub = get("--subcarriers");
  if (sub === undefined || !Number.isInteger(Number(sub))) {
    throw new Error("--subcarriers expects an integer");
  }
  const inDir = get("--in");
  const out = get("--out");
  if (inDir === undefined || out === undefined) {
    throw new Error("--in and --out are required");
  }
  return {
    kind,
    channel: get("--channel"),
    subcarriers: Number(sub),
    inDir,
    out,
  };
}

export function main(argv: string[]): number {
  let args: Args;
  try {
    args = parseArgs(argv);
  } catch (e) {
    process.stderr.write(`error: ${(e as Error).message}\n`);
    return 2;
  }
  try {
    const svg = render(args.inDir, {
      kind: args.kind,
      channel: args.channel,
      subcarriers: args.subcarriers,
    });
    fs.writeFileSync(args.out, svg);
    process.stdout.write(`${args.out}\n`);
    return 0;
  } catch (e) {
    if (e instanceof SchemaError) {
      process.stderr.write(`schema error: ${(e as Error).message}\n`);
      return 3;
    }
    if (e instanceof EmptySelectionError) {
      process.stderr.write(`empty selection: ${(e as Error).message}\n`);
      return 4;
    }
    process.stderr.write(`error: ${(e as Error).message}\n`);
    return 1;
  }
}

const isMain =
  process.argv[1] !== undefined &&
  import.meta.url.endsWith(process.argv[1].split("/").pop() ?? "");
if (isMain) {
  process.exit(main(process.argv.slice(2)));
}
