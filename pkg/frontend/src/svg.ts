/** Deterministic SVG assembly: fixed canvas, fixed fonts, no timestamps.
 *
 * Coordinates are rounded to 2 decimals so the output is byte-stable across
 * runs and platforms with IEEE-754 doubles.
 */

import { Scale } from "./scale.js";

export const WIDTH = 640;
export const HEIGHT = 440;
export const MARGIN = { top: 36, right: 24, bottom: 52, left: 72 } as const;

export const PLOT = {
  x0: MARGIN.left,
  x1: WIDTH - MARGIN.right,
  y0: HEIGHT - MARGIN.bottom,
  y1: MARGIN.top,
} as const;

export const PALETTE = ["#1f5fa8", "#c0392b", "#2e8b57", "#8e44ad", "#b8860b", "#36454f"];

const FONT = 'font-family="Helvetica, Arial, sans-serif"';

export function fmt(value: number): string {
  const rounded = value.toFixed(2);
  return rounded === "-0.00" ? "0.00" : rounded;
}

export function tickLabel(value: number): string {
  if (value !== 0 && (Math.abs(value) < 1e-3 || Math.abs(value) >= 1e4)) {
    return value.toExponential(0).replace("+", "");
  }
  return String(Number(value.toPrecision(10)));
}

export interface Curve {
  label: string;
  points: Array<[number, number]>;
  color: string;
  dashed?: boolean;
}

export function polyline(points: Array<[number, number]>, color: string, dashed = false): string {
  const path = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
  const dash = dashed ? ' stroke-dasharray="6,4"' : "";
  return `<polyline fill="none" stroke="${color}" stroke-width="1.8"${dash} points="${path}"/>`;
}

export function markers(points: Array<[number, number]>, color: string): string {
  return points
    .map(([x, y]) => `<circle cx="${fmt(x)}" cy="${fmt(y)}" r="3" fill="${color}"/>`)
    .join("\n");
}

export function axes(
  xScale: Scale,
  yScale: Scale,
  xLabel: string,
  yLabel: string,
  xTickFormat: (v: number) => string = tickLabel,
): string {
  const parts: string[] = [];
  parts.push(
    `<line x1="${PLOT.x0}" y1="${PLOT.y0}" x2="${PLOT.x1}" y2="${PLOT.y0}" stroke="#222" stroke-width="1"/>`,
    `<line x1="${PLOT.x0}" y1="${PLOT.y0}" x2="${PLOT.x0}" y2="${PLOT.y1}" stroke="#222" stroke-width="1"/>`,
  );
  for (const tick of xScale.ticks()) {
    const x = fmt(xScale(tick));
    parts.push(
      `<line x1="${x}" y1="${PLOT.y0}" x2="${x}" y2="${PLOT.y0 + 5}" stroke="#222" stroke-width="1"/>`,
      `<text x="${x}" y="${PLOT.y0 + 18}" text-anchor="middle" font-size="11" ${FONT}>${xTickFormat(tick)}</text>`,
      `<line x1="${x}" y1="${PLOT.y0}" x2="${x}" y2="${PLOT.y1}" stroke="#ddd" stroke-width="0.5"/>`,
    );
  }
  for (const tick of yScale.ticks()) {
    const y = fmt(yScale(tick));
    parts.push(
      `<line x1="${PLOT.x0 - 5}" y1="${y}" x2="${PLOT.x0}" y2="${y}" stroke="#222" stroke-width="1"/>`,
      `<text x="${PLOT.x0 - 8}" y="${y}" text-anchor="end" dominant-baseline="middle" font-size="11" ${FONT}>${tickLabel(tick)}</text>`,
      `<line x1="${PLOT.x0}" y1="${y}" x2="${PLOT.x1}" y2="${y}" stroke="#ddd" stroke-width="0.5"/>`,
    );
  }
  const xMid = (PLOT.x0 + PLOT.x1) / 2;
  const yMid = (PLOT.y0 + PLOT.y1) / 2;
  parts.push(
    `<text x="${fmt(xMid)}" y="${HEIGHT - 14}" text-anchor="middle" font-size="13" ${FONT}>${xLabel}</text>`,
    `<text x="20" y="${fmt(yMid)}" text-anchor="middle" font-size="13" ${FONT} transform="rotate(-90 20 ${fmt(yMid)})">${yLabel}</text>`,
  );
  return parts.join("\n");
}

export function legend(curves: Curve[]): string {
  const parts: string[] = [];
  curves.forEach((curve, i) => {
    const y = PLOT.y1 + 14 + i * 16;
    const x = PLOT.x1 - 150;
    const dash = curve.dashed ? ' stroke-dasharray="6,4"' : "";
    parts.push(
      `<line x1="${x}" y1="${y}" x2="${x + 26}" y2="${y}" stroke="${curve.color}" stroke-width="1.8"${dash}/>`,
      `<text x="${x + 32}" y="${y + 4}" font-size="11" ${FONT}>${curve.label}</text>`,
    );
  });
  return parts.join("\n");
}

export function document(title: string, body: string): string {
  return [
    '<?xml version="1.0" encoding="UTF-8"?>',
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}">`,
    `<rect x="0" y="0" width="${WIDTH}" height="${HEIGHT}" fill="#ffffff"/>`,
    `<text x="${WIDTH / 2}" y="20" text-anchor="middle" font-size="14" ${FONT}>${title}</text>`,
    body,
    "</svg>",
    "",
  ].join("\n");
}
