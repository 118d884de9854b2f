#!/usr/bin/env node
/** anpolar-figures <kind> --in TABLE --out FILE
 *
 * Kinds: capacity-sweep, ber-vs-n, ber-cdf.  Reads one TSV table produced by
 * the anpolar CLI and writes a deterministic SVG.
 */

import { readFileSync, writeFileSync } from "node:fs";

import { renderBerCdf, renderBerVsN, renderCapacitySweep } from "./figures.js";

const RENDERERS: Record<string, (text: string, source: string) => string> = {
  "capacity-sweep": renderCapacitySweep,
  "ber-vs-n": renderBerVsN,
  "ber-cdf": renderBerCdf,
};

export function main(argv: string[]): number {
  const [kind, ...rest] = argv;
  if (!kind || !(kind in RENDERERS)) {
    process.stderr.write(
      `usage: anpolar-figures <${Object.keys(RENDERERS).join("|")}> --in TABLE --out FILE\n`,
    );
    return 2;
  }
  const inputs: string[] = [];
  let out: string | undefined;
  for (let i = 0; i < rest.length; i += 1) {
    if (rest[i] === "--in") {
      inputs.push(rest[++i]);
    } else if (rest[i] === "--out") {
      out = rest[++i];
    } else {
      process.stderr.write(`unknown argument: ${rest[i]}\n`);
      return 2;
    }
  }
  if (inputs.length !== 1 || inputs[0] === undefined || !out) {
    process.stderr.write("exactly one --in TABLE and one --out FILE are required\n");
    return 2;
  }
  let text: string;
  try {
    text = readFileSync(inputs[0], "utf-8");
  } catch (err) {
    process.stderr.write(`cannot read ${inputs[0]}: ${(err as Error).message}\n`);
    return 2;
  }
  try {
    writeFileSync(out, RENDERERS[kind](text, inputs[0]));
  } catch (err) {
    process.stderr.write(`${(err as Error).message}\n`);
    return 1;
  }
  return 0;
}

if (process.argv[1] && process.argv[1].endsWith("cli.js")) {
  process.exit(main(process.argv.slice(2)));
}
