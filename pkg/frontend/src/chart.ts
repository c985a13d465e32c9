/**
 * Minimal line-chart SVG builder for the two paper-style figures.
 *
 * A point whose samples were all infinite has no finite mean; it is drawn
 * as an annotated off-scale marker pinned to the top of the plot area
 * instead of being dropped.
 */

import { AggregateRow } from "./csv.js";

export type FigureKind = "si_vs_n" | "relrate_vs_sel";

export interface SeriesPoint {
  x: number;
  y: number | null; // null = off-scale (all samples infinite)
}

export interface Series {
  label: string;
  points: SeriesPoint[];
}

export interface Figure {
  title: string;
  xLabel: string;
  yLabel: string;
  series: Series[];
}

const PALETTE = [
  "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
  "#17becf", "#e377c2",
];

const WIDTH = 640;
const HEIGHT = 420;
const MARGIN = { top: 48, right: 24, bottom: 56, left: 64 };

export function buildFigure(kind: FigureKind, rows: AggregateRow[]): Figure {
  if (rows.length === 0) {
    throw new Error("no data rows to plot");
  }
  if (kind === "si_vs_n") {
    return {
      title: "Selectivity vs RIS size",
      xLabel: "RIS reflectors N",
      yLabel: "mean S/I [dB]",
      series: groupSeries(
        rows,
        (r) => `${r.method}, |I| = ${r.sel_size}`,
        (r) => r.N,
        (r) => (r.inf_count === r.realizations ? null : r.mean_si_db),
      ),
    };
  }
  return {
    title: "Relative rate vs selection size",
    xLabel: "selected subcarriers |I|",
    yLabel: "mean relative rate [%]",
    series: groupSeries(
      rows,
      (r) => r.method,
      (r) => r.sel_size,
      (r) => r.mean_rel_rate_pct,
    ),
  };
}

function groupSeries(
  rows: AggregateRow[],
  key: (r: AggregateRow) => string,
  x: (r: AggregateRow) => number,
  y: (r: AggregateRow) => number | null,
): Series[] {
  const groups = new Map<string, SeriesPoint[]>();
  for (const row of rows) {
    const label = key(row);
    if (!groups.has(label)) {
      groups.set(label, []);
    }
    groups.get(label)!.push({ x: x(row), y: y(row) });
  }
  return [...groups.entries()].map(([label, points]) => ({
    label,
    points: points.slice().sort((a, b) => a.x - b.x),
  }));
}

interface Scale {
  (v: number): number;
  min: number;
  max: number;
}

function linearScale(min: number, max: number, lo: number, hi: number): Scale {
  const span = max - min || 1;
  const fn = ((v: number) => lo + ((v - min) / span) * (hi - lo)) as Scale;
  fn.min = min;
  fn.max = max;
  return fn;
}

function ticks(min: number, max: number, count = 6): number[] {
  const span = max - min || 1;
  const step = Math.pow(10, Math.floor(Math.log10(span / count)));
  const candidates = [step, 2 * step, 5 * step, 10 * step];
  const chosen = candidates.find((s) => span / s <= count) ?? 10 * step;
  const out: number[] = [];
  for (let t = Math.ceil(min / chosen) * chosen; t <= max + 1e-9; t += chosen) {
    out.push(Number(t.toPrecision(12)));
  }
  return out;
}

const fmt = (v: number): string =>
  Math.abs(v) >= 1e5 || (v !== 0 && Math.abs(v) < 1e-3)
    ? v.toExponential(1)
    : String(Number(v.toPrecision(6)));

const esc = (s: string): string =>
  s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");

export function renderFigureSvg(figure: Figure): string {
  const xs = figure.series.flatMap((s) => s.points.map((p) => p.x));
  const ys = figure.series.flatMap((s) =>
    s.points.filter((p) => p.y !== null).map((p) => p.y as number),
  );
  const xMin = Math.min(...xs);
  const xMax = Math.max(...xs);
  const yMin = ys.length > 0 ? Math.min(...ys) : 0;
  const yMax = ys.length > 0 ? Math.max(...ys) : 1;
  const pad = (yMax - yMin || 1) * 0.05;

  const sx = linearScale(xMin, xMax, MARGIN.left, WIDTH - MARGIN.right);
  const sy = linearScale(yMin - pad, yMax + pad, HEIGHT - MARGIN.bottom, MARGIN.top);

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" ` +
      `viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="sans-serif" font-size="12">`,
    `<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`,
    `<text x="${WIDTH / 2}" y="24" text-anchor="middle" font-size="16">${esc(figure.title)}</text>`,
  );

  // axes, grid, tick labels
  const plotBottom = HEIGHT - MARGIN.bottom;
  for (const t of ticks(sx.min, sx.max)) {
    const px = sx(t);
    parts.push(
      `<line x1="${px.toFixed(2)}" y1="${MARGIN.top}" x2="${px.toFixed(2)}" y2="${plotBottom}" stroke="#ddd"/>`,
      `<text x="${px.toFixed(2)}" y="${plotBottom + 18}" text-anchor="middle">${fmt(t)}</text>`,
    );
  }
  for (const t of ticks(sy.min, sy.max)) {
    const py = sy(t);
    parts.push(
      `<line x1="${MARGIN.left}" y1="${py.toFixed(2)}" x2="${WIDTH - MARGIN.right}" y2="${py.toFixed(2)}" stroke="#ddd"/>`,
      `<text x="${MARGIN.left - 8}" y="${(py + 4).toFixed(2)}" text-anchor="end">${fmt(t)}</text>`,
    );
  }
  parts.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${WIDTH - MARGIN.left - MARGIN.right}" ` +
      `height="${plotBottom - MARGIN.top}" fill="none" stroke="#333"/>`,
    `<text x="${(MARGIN.left + WIDTH - MARGIN.right) / 2}" y="${HEIGHT - 12}" text-anchor="middle">${esc(figure.xLabel)}</text>`,
    `<text x="18" y="${(MARGIN.top + plotBottom) / 2}" text-anchor="middle" ` +
      `transform="rotate(-90 18 ${(MARGIN.top + plotBottom) / 2})">${esc(figure.yLabel)}</text>`,
  );

  figure.series.forEach((series, si) => {
    const color = PALETTE[si % PALETTE.length];
    const finite = series.points.filter((p) => p.y !== null);
    const coords = finite
      .map((p) => `${sx(p.x).toFixed(2)},${sy(p.y as number).toFixed(2)}`)
      .join(" ");
    parts.push(
      `<polyline class="series" data-label="${esc(series.label)}" points="${coords}" ` +
        `fill="none" stroke="${color}" stroke-width="2"/>`,
    );
    for (const p of finite) {
      parts.push(
        `<circle cx="${sx(p.x).toFixed(2)}" cy="${sy(p.y as number).toFixed(2)}" r="3" fill="${color}"/>`,
      );
    }
    for (const p of series.points) {
      if (p.y !== null) continue;
      const px = sx(p.x);
      parts.push(
        `<g class="offscale-marker" data-label="${esc(series.label)}" data-x="${p.x}">` +
          `<path d="M ${(px - 6).toFixed(2)} ${MARGIN.top + 14} L ${px.toFixed(2)} ${MARGIN.top + 2} ` +
          `L ${(px + 6).toFixed(2)} ${MARGIN.top + 14} Z" fill="${color}"/>` +
          `<text x="${px.toFixed(2)}" y="${MARGIN.top + 28}" text-anchor="middle" fill="${color}">&#8734;</text>` +
          `</g>`,
      );
    }
    // legend entry
    const ly = MARGIN.top + 16 + si * 16;
    const lx = WIDTH - MARGIN.right - 160;
    parts.push(
      `<line x1="${lx}" y1="${ly - 4}" x2="${lx + 22}" y2="${ly - 4}" stroke="${color}" stroke-width="2"/>`,
      `<text x="${lx + 28}" y="${ly}">${esc(series.label)}</text>`,
    );
  });

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
