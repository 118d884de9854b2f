export { renderBerCdf, renderBerVsN, renderCapacitySweep, extractBerCdf } from "./figures.js";
export { parseTsv, requireColumns } from "./tsv.js";
