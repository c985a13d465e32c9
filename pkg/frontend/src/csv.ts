/**
 * Strict reader for the simulator's aggregate CSV.
 *
 * The header must match the emitter's schema exactly; any missing or extra
 * column is reported by name. Blank numeric cells mark values that do not
 * exist (e.g. the mean S/I of a point where every sample was infinite).
 */

export const EXPECTED_HEADER = [
  "method", "K", "N", "sel_size", "realizations", "finite_count",
  "inf_count", "mean_si_db", "std_si_db", "mean_rate_bps",
  "mean_coh_rate_bps", "mean_rel_rate_pct", "std_rel_rate_pct", "seed",
] as const;

export interface AggregateRow {
  method: string;
  K: number;
  N: number;
  sel_size: number;
  realizations: number;
  finite_count: number;
  inf_count: number;
  mean_si_db: number | null;
  std_si_db: number | null;
  mean_rate_bps: number;
  mean_coh_rate_bps: number;
  mean_rel_rate_pct: number;
  std_rel_rate_pct: number;
  seed: number;
}

export class SchemaError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "SchemaError";
  }
}

const INT_COLUMNS = new Set([
  "K", "N", "sel_size", "realizations", "finite_count", "inf_count", "seed",
]);

function checkHeader(cells: string[]): void {
  const expected = EXPECTED_HEADER as readonly string[];
  const missing = expected.filter((c) => !cells.includes(c));
  const extra = cells.filter((c) => !expected.includes(c));
  if (missing.length > 0) {
    throw new SchemaError(`missing column(s): ${missing.join(", ")}`);
  }
  if (extra.length > 0) {
    throw new SchemaError(`unexpected column(s): ${extra.join(", ")}`);
  }
  for (let i = 0; i < expected.length; i++) {
    if (cells[i] !== expected[i]) {
      throw new SchemaError(
        `column ${i + 1} is ${JSON.stringify(cells[i])}, expected ${JSON.stringify(expected[i])}`,
      );
    }
  }
}

export function parseAggregateCsv(text: string): AggregateRow[] {
  const lines = text.split(/\r?\n/).filter((line) => line.trim().length > 0);
  if (lines.length === 0) {
    throw new SchemaError("empty CSV");
  }
  checkHeader(lines[0].split(","));
  const rows: AggregateRow[] = [];
  for (let ln = 1; ln < lines.length; ln++) {
    const cells = lines[ln].split(",");
    if (cells.length !== EXPECTED_HEADER.length) {
      throw new SchemaError(
        `row ${ln + 1} has ${cells.length} cells, expected ${EXPECTED_HEADER.length}`,
      );
    }
    const row: Record<string, unknown> = {};
    EXPECTED_HEADER.forEach((col, i) => {
      const cell = cells[i].trim();
      if (col === "method") {
        row[col] = cell;
        return;
      }
      if (cell === "") {
        if (col === "mean_si_db" || col === "std_si_db") {
          row[col] = null;
          return;
        }
        throw new SchemaError(`row ${ln + 1}: column ${col} is empty`);
      }
      const value = Number(cell);
      if (!Number.isFinite(value)) {
        throw new SchemaError(`row ${ln + 1}: column ${col} is not a number: ${cell}`);
      }
      if (INT_COLUMNS.has(col) && !Number.isInteger(value)) {
        throw new SchemaError(`row ${ln + 1}: column ${col} must be an integer: ${cell}`);
      }
      row[col] = value;
    });
    const parsed = row as unknown as AggregateRow;
    if (parsed.finite_count + parsed.inf_count !== parsed.realizations) {
      throw new SchemaError(
        `row ${ln + 1}: finite_count + inf_count != realizations`,
      );
    }
    rows.push(parsed);
  }
  return rows;
}
