/** The three figure kinds rendered from anpolar result tables.
 *
 * Each renderer is a pure function of the input table text: same bytes in,
 * same bytes out.  Tables must carry the expected header columns; anything
 * else fails loudly with the offending file named.
 */

import { linearScale, logScale } from "./scale.js";
import * as svg from "./svg.js";
import { parseTsv, requireColumns, toNumber } from "./tsv.js";

/** Secrecy capacity vs signal power, one curve per channel pair. */
export function renderCapacitySweep(tsvText: string, source = "capacity-sweep"): string {
  const table = parseTsv(tsvText, source);
  const cell = requireColumns(table, ["pair_id", "p_u", "c_b", "c_e", "c_s"], source);
  if (table.rows.length === 0) {
    throw new Error(`${source}: no data rows`);
  }
  const byPair = new Map<string, Array<[number, number]>>();
  for (const row of table.rows) {
    const pair = cell(row, "pair_id");
    if (!byPair.has(pair)) {
      byPair.set(pair, []);
    }
    byPair
      .get(pair)!
      .push([toNumber(cell(row, "p_u"), source), toNumber(cell(row, "c_s"), source)]);
  }
  const pus = table.rows.map((r) => toNumber(cell(r, "p_u"), source));
  const css = table.rows.map((r) => toNumber(cell(r, "c_s"), source));
  const x = linearScale([0, Math.max(...pus)], [svg.PLOT.x0, svg.PLOT.x1]);
  const yLo = Math.min(0, Math.min(...css));
  const yHi = Math.max(0.1, Math.max(...css));
  const y = linearScale([yLo, yHi], [svg.PLOT.y0, svg.PLOT.y1]);

  const curves: svg.Curve[] = [...byPair.entries()].map(([pair, pts], i) => ({
    label: pair,
    color: svg.PALETTE[i % svg.PALETTE.length],
    points: pts.map(([pu, cs]) => [x(pu), y(cs)] as [number, number]),
  }));
  const body = [
    svg.axes(x, y, "signal power P_u", "secrecy capacity (bits/use)"),
    zeroLine(x, y, yLo),
    ...curves.map((c) => svg.polyline(c.points, c.color)),
    svg.legend(curves),
  ].join("\n");
  return svg.document("Secrecy capacity vs signal power", body);
}

function zeroLine(x: ReturnType<typeof linearScale>, y: ReturnType<typeof linearScale>, yLo: number): string {
  if (yLo >= 0) {
    return "";
  }
  const yz = svg.fmt(y(0));
  return `<line x1="${svg.PLOT.x0}" y1="${yz}" x2="${svg.PLOT.x1}" y2="${yz}" stroke="#888" stroke-width="0.8" stroke-dasharray="2,3"/>`;
}

/** Mean BER vs block length from a CSI summary table (log-y). */
export function renderBerVsN(tsvText: string, source = "csi-summary"): string {
  const table = parseTsv(tsvText, source);
  const cell = requireColumns(table, ["block_length", "bob_ber", "eve_ber"], source);
  if (table.rows.length === 0) {
    throw new Error(`${source}: no data rows`);
  }
  const lengths = table.rows.map((r) => toNumber(cell(r, "block_length"), source));
  const bob = table.rows.map((r) => toNumber(cell(r, "bob_ber"), source));
  const eve = table.rows.map((r) => toNumber(cell(r, "eve_ber"), source));
  const positives = [...bob, ...eve].filter((v) => v > 0 && !Number.isNaN(v));
  if (positives.length === 0) {
    throw new Error(`${source}: no positive BER values to place on a log axis`);
  }
  // zero BERs (measured none in the bit budget) sit on the axis floor
  const floor = Math.pow(10, Math.floor(Math.log10(Math.min(...positives))) - 1);
  const clamp = (v: number) => (Number.isNaN(v) ? NaN : Math.max(v, floor));
  const x = logScale(
    [Math.min(...lengths), Math.max(...lengths)],
    [svg.PLOT.x0, svg.PLOT.x1],
  );
  const y = logScale([floor, 1], [svg.PLOT.y0, svg.PLOT.y1]);

  const mkPoints = (vals: number[]) =>
    lengths
      .map((len, i) => [len, clamp(vals[i])] as [number, number])
      .filter(([, v]) => !Number.isNaN(v))
      .map(([len, v]) => [x(len), y(v)] as [number, number]);
  const curves: svg.Curve[] = [
    { label: "legitimate receiver", color: svg.PALETTE[0], points: mkPoints(bob) },
    { label: "eavesdropper", color: svg.PALETTE[1], points: mkPoints(eve), dashed: true },
  ];
  const body = [
    svg.axes(x, y, "block length N", "bit error rate", (v) => String(v)),
    ...curves.map((c) => svg.polyline(c.points, c.color, c.dashed)),
    ...curves.map((c) => svg.markers(c.points, c.color)),
    svg.legend(curves),
  ].join("\n");
  return svg.document("BER vs block length", body);
}

export interface CdfSeries {
  label: string;
  /** (ber, cumulative fraction) in ascending ber order */
  points: Array<[number, number]>;
}

/** Empirical CDF points per receiver from a CDI results table ('ok' rows). */
export function extractBerCdf(tsvText: string, source = "cdi-results"): CdfSeries[] {
  const table = parseTsv(tsvText, source);
  const cell = requireColumns(table, ["status", "bob_ber", "eve_ber"], source);
  const ok = table.rows.filter((row) => cell(row, "status") === "ok");
  if (ok.length === 0) {
    throw new Error(`${source}: no rows with status 'ok'`);
  }
  const series: CdfSeries[] = [];
  for (const [label, column] of [
    ["legitimate receiver", "bob_ber"],
    ["eavesdropper", "eve_ber"],
  ] as const) {
    const values = ok
      .map((row) => toNumber(cell(row, column), source))
      .sort((a, b) => a - b);
    series.push({
      label,
      points: values.map((v, i) => [v, (i + 1) / values.length] as [number, number]),
    });
  }
  return series;
}

/** BER CDF curves for both receivers (step curves, linear axes). */
export function renderBerCdf(tsvText: string, source = "cdi-results"): string {
  const series = extractBerCdf(tsvText, source);
  const maxBer = Math.max(0.6, ...series.flatMap((s) => s.points.map(([b]) => b)));
  const x = linearScale([0, maxBer], [svg.PLOT.x0, svg.PLOT.x1]);
  const y = linearScale([0, 1], [svg.PLOT.y0, svg.PLOT.y1]);

  const curves: svg.Curve[] = series.map((s, i) => {
    const pts: Array<[number, number]> = [[x(0), y(0)]];
    let prev = 0;
    for (const [ber, cdf] of s.points) {
      pts.push([x(ber), y(prev)]); // horizontal run to the next sample
      pts.push([x(ber), y(cdf)]); // vertical step
      prev = cdf;
    }
    pts.push([x(maxBer), y(1)]);
    return {
      label: s.label,
      color: svg.PALETTE[i % svg.PALETTE.length],
      points: pts,
      dashed: i === 1,
    };
  });
  const body = [
    svg.axes(x, y, "bit error rate", "empirical CDF"),
    ...curves.map((c) => svg.polyline(c.points, c.color, c.dashed)),
    svg.legend(curves),
  ].join("\n");
  return svg.document("BER distribution", body);
}
