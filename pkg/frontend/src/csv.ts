/**
 * Reader for the simulator's experiment result CSVs.
 *
 * The files use a fixed superset schema: every experiment writes the
 * same columns and fills the ones that do not apply with "NA". Values
 * never contain commas (list-valued config echoes use "|"), so a plain
 * split is safe.
 */

import { readFileSync } from "fs";

export type Row = Record<string, string>;

export interface ResultTable {
  /** Column names in file order. */
  columns: string[];
  rows: Row[];
}

export class CsvError extends Error {}

export function parseCsv(text: string, source = "<csv>"): ResultTable {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new CsvError(`${source}: file is empty`);
  }
  const columns = lines[0].split(",");
  const rows: Row[] = [];
  for (let i = 1; i < lines.length; i++) {
    const cells = lines[i].split(",");
    if (cells.length !== columns.length) {
      throw new CsvError(
        `${source}:${i + 1}: expected ${columns.length} cells, got ${cells.length}`,
      );
    }
    const row: Row = {};
    columns.forEach((name, j) => (row[name] = cells[j]));
    rows.push(row);
  }
  if (rows.length === 0) {
    throw new CsvError(`${source}: no data rows`);
  }
  return { columns, rows };
}

export function loadCsv(path: string): ResultTable {
  return parseCsv(readFileSync(path, "utf-8"), path);
}

export function requireColumns(table: ResultTable, needed: string[], source = "<csv>"): void {
  const missing = needed.filter((name) => !table.columns.includes(name));
  if (missing.length > 0) {
    throw new CsvError(
      `${source}: schema mismatch, missing columns: ${missing.join(", ")}`,
    );
  }
}

export function numeric(row: Row, column: string): number | null {
  const raw = row[column];
  if (raw === undefined || raw === "NA" || raw === "") {
    return null;
  }
  const value = Number(raw);
  if (Number.isNaN(value)) {
    throw new CsvError(`non-numeric value ${JSON.stringify(raw)} in column ${column}`);
  }
  return value;
}

/** Rows of one kind ("seed" | "mean" | "stddev") sorted by the x column. */
export function rowsOfKind(table: ResultTable, kind: string, xColumn: string): Row[] {
  return table.rows
    .filter((row) => row.row_kind === kind)
    .sort((a, b) => (numeric(a, xColumn) ?? 0) - (numeric(b, xColumn) ?? 0));
}
