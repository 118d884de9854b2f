/** Tab-separated tables with a header row, as written by the anpolar CLI. */

export interface Table {
  header: string[];
  rows: string[][];
}

export function parseTsv(text: string, source = "<input>"): Table {
  const lines = text.split("\n").filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new Error(`${source}: empty table`);
  }
  const header = lines[0].split("\t");
  const rows = lines.slice(1).map((line) => line.split("\t"));
  for (const [i, row] of rows.entries()) {
    if (row.length !== header.length) {
      throw new Error(
        `${source}: row ${i + 2} has ${row.length} cells, header has ${header.length}`,
      );
    }
  }
  return { header, rows };
}

/** Returns a per-column accessor after checking every required column exists. */
export function requireColumns(table: Table, required: string[], source = "<input>") {
  const missing = required.filter((name) => !table.header.includes(name));
  if (missing.length > 0) {
    throw new Error(
      `${source}: missing required column(s) ${missing.join(", ")}; found ${table.header.join(", ")}`,
    );
  }
  const index = new Map(table.header.map((name, i) => [name, i]));
  return (row: string[], name: string): string => row[index.get(name)!];
}

export function toNumber(value: string, context: string): number {
  const num = Number(value);
  if (Number.isNaN(num) && value !== "nan") {
    throw new Error(`${context}: not a number: ${value}`);
  }
  return num;
}
