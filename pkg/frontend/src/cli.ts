#!/usr/bin/env node
/**
 * render --kind si_vs_n|relrate_vs_sel --in results.csv --out fig.svg
 *        [--format svg|png] [--dpi N]
 */

import { FigureSpec, render } from "./render.js";

function usage(): never {
  console.error(
    "usage: render --kind si_vs_n|relrate_vs_sel --in results.csv --out fig.svg [--format svg|png] [--dpi N]",
  );
  process.exit(2);
}

export function parseArgs(argv: string[]): FigureSpec {
  const opts = new Map<string, string>();
  for (let i = 0; i < argv.length; i += 2) {
    const flag = argv[i];
    const value = argv[i + 1];
    if (!flag.startsWith("--") || value === undefined) {
      usage();
    }
    opts.set(flag.slice(2), value);
  }
  const kind = opts.get("kind");
  const input = opts.get("in");
  const output = opts.get("out");
  const format = opts.get("format") ?? "svg";
  const dpi = Number(opts.get("dpi") ?? "144");
  if (kind !== "si_vs_n" && kind !== "relrate_vs_sel") usage();
  if (!input || !output) usage();
  if (format !== "svg" && format !== "png") usage();
  if (!Number.isFinite(dpi) || dpi <= 0) usage();
  return { kind, input, output, format, dpi };
}

export async function main(argv: string[]): Promise<number> {
  let spec: FigureSpec;
  try {
    spec = parseArgs(argv);
  } catch {
    return 2;
  }
  try {
    await render(spec);
  } catch (err) {
    console.error(`error: ${err instanceof Error ? err.message : err}`);
    return 1;
  }
  console.log(`wrote ${spec.output}`);
  return 0;
}

const invokedDirectly =
  process.argv[1] !== undefined &&
  import.meta.url.endsWith(process.argv[1].split("/").pop() ?? "");
if (invokedDirectly) {
  main(process.argv.slice(2)).then((code) => {
    process.exitCode = code;
  });
}
