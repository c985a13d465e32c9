/** File-level entry: read an aggregate CSV, write the requested figure. */

import { readFile, writeFile } from "fs/promises";

import { FigureKind, buildFigure, renderFigureSvg } from "./chart.js";
import { parseAggregateCsv } from "./csv.js";

export interface FigureSpec {
  input: string;
  kind: FigureKind;
  output: string;
  format: "svg" | "png";
  dpi: number;
}

export async function render(spec: FigureSpec): Promise<void> {
  const text = await readFile(spec.input, "utf8");
  const rows = parseAggregateCsv(text);
  const svg = renderFigureSvg(buildFigure(spec.kind, rows));
  if (spec.format === "svg") {
    await writeFile(spec.output, svg, "utf8");
    return;
  }
  const png = await rasterize(svg, spec.dpi);
  await writeFile(spec.output, png);
}

async function rasterize(svg: string, dpi: number): Promise<Buffer> {
  let sharp: (input: Buffer, opts: { density: number }) => { png(): { toBuffer(): Promise<Buffer> } };
  try {
    sharp = (await import("sharp")).default;
  } catch {
    throw new Error("png output needs the optional 'sharp' package; install it or use --format svg");
  }
  return sharp(Buffer.from(svg), { density: dpi }).png().toBuffer();
}
