/** Linear and logarithmic axis scales with deterministic tick generation. */

export interface Scale {
  (value: number): number;
  ticks(): number[];
  domain: [number, number];
  range: [number, number];
  kind: "linear" | "log";
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 === 0 ? 1 : d1 - d0;
  const fn = ((value: number) => r0 + ((value - d0) / span) * (r1 - r0)) as Scale;
  fn.domain = domain;
  fn.range = range;
  fn.kind = "linear";
  fn.ticks = () => niceTicks(d0, d1, 6);
  return fn;
}

export function logScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  if (d0 <= 0 || d1 <= 0) {
    throw new Error(`log scale needs a positive domain, got [${d0}, ${d1}]`);
  }
  const l0 = Math.log10(d0);
  const l1 = Math.log10(d1);
  const span = l1 - l0 === 0 ? 1 : l1 - l0;
  const [r0, r1] = range;
  const fn = ((value: number) => r0 + ((Math.log10(value) - l0) / span) * (r1 - r0)) as Scale;
  fn.domain = domain;
  fn.range = range;
  fn.kind = "log";
  fn.ticks = () => {
    const ticks: number[] = [];
    for (let p = Math.ceil(l0 - 1e-9); p <= Math.floor(l1 + 1e-9); p += 1) {
      ticks.push(Math.pow(10, p));
    }
    return ticks;
  };
  return fn;
}

/** Round-valued ticks covering [lo, hi] with roughly `count` steps. */
export function niceTicks(lo: number, hi: number, count: number): number[] {
  if (lo === hi) {
    return [lo];
  }
  const rawStep = (hi - lo) / Math.max(count, 1);
  const power = Math.pow(10, Math.floor(Math.log10(rawStep)));
  const candidates = [1, 2, 2.5, 5, 10];
  let step = candidates[candidates.length - 1] * power;
  for (const c of candidates) {
    if (c * power >= rawStep) {
      step = c * power;
      break;
    }
  }
  const ticks: number[] = [];
  let tick = Math.ceil(lo / step) * step;
  while (tick <= hi + step * 1e-9) {
    ticks.push(Math.abs(tick) < step * 1e-9 ? 0 : tick);
    tick += step;
  }
  return ticks;
}
