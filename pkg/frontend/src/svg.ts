/**
 * Minimal deterministic SVG line-chart builder.
 *
 * Output contains no timestamps or random identifiers: identical input
 * always produces identical bytes.  Curves carry `class="curve"` and a
 * `data-scheme` attribute; the plot group carries `data-yscale="log"`.
 */

export interface Curve {
  label: string;
  points: [number, number][]; // (x, y-linear); y must be > 0 for log scale
}

export interface ChartOptions {
  title: string;
  xLabel: string;
  yLabel: string;
  width?: number;
  height?: number;
}

const MARGIN = { left: 70, right: 170, top: 40, bottom: 50 };
const COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
  "#8c564b"];

function fmt(v: number): string {
  return Number(v.toFixed(3)).toString();
}

function niceLinearTicks(lo: number, hi: number, n = 7): number[] {
  if (!(hi > lo)) return [lo];
  const raw = (hi - lo) / n;
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  const step = [1, 2, 5, 10].map((s) => s * mag).find((s) => s >= raw)!;
  const ticks: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + 1e-12; v += step) {
    ticks.push(Number(v.toFixed(9)));
  }
  return ticks;
}

export function renderChart(curves: Curve[], opts: ChartOptions): string {
  const W = opts.width ?? 800;
  const H = opts.height ?? 560;
  const plotW = W - MARGIN.left - MARGIN.right;
  const plotH = H - MARGIN.top - MARGIN.bottom;

  const xs = curves.flatMap((c) => c.points.map((p) => p[0]));
  const ys = curves.flatMap((c) => c.points.map((p) => p[1]));
  if (xs.length === 0) {
    throw new Error("no points to plot");
  }
  const xLo = Math.min(...xs);
  const xHi = Math.max(...xs);
  const yLoDec = Math.floor(Math.log10(Math.min(...ys)));
  const yHiDec = Math.ceil(Math.log10(Math.max(...ys)));

  const sx = (x: number) =>
    MARGIN.left + (xHi === xLo ? 0.5 : (x - xLo) / (xHi - xLo)) * plotW;
  const sy = (y: number) =>
    MARGIN.top +
    (1 - (Math.log10(y) - yLoDec) / Math.max(1, yHiDec - yLoDec)) * plotH;

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${W}" height="${H}" ` +
      `viewBox="0 0 ${W} ${H}" font-family="Helvetica,sans-serif">`,
  );
  parts.push(`<rect width="${W}" height="${H}" fill="white"/>`);
  parts.push(
    `<text x="${W / 2}" y="20" text-anchor="middle" font-size="15">` +
      `${opts.title}</text>`,
  );
  parts.push(`<g data-yscale="log">`);

  // frame
  parts.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${plotW}" ` +
      `height="${plotH}" fill="none" stroke="black"/>`,
  );
  // y decades: gridline + tick label
  for (let d = yLoDec; d <= yHiDec; d++) {
    const y = sy(Math.pow(10, d));
    parts.push(
      `<line x1="${MARGIN.left}" y1="${fmt(y)}" x2="${MARGIN.left + plotW}" ` +
        `y2="${fmt(y)}" stroke="#cccccc" stroke-width="0.5"/>`,
    );
    parts.push(
      `<text x="${MARGIN.left - 8}" y="${fmt(y + 4)}" text-anchor="end" ` +
        `font-size="11">1e${d}</text>`,
    );
  }
  // x ticks
  for (const t of niceLinearTicks(xLo, xHi)) {
    const x = sx(t);
    parts.push(
      `<line x1="${fmt(x)}" y1="${MARGIN.top + plotH}" x2="${fmt(x)}" ` +
        `y2="${MARGIN.top + plotH + 5}" stroke="black"/>`,
    );
    parts.push(
      `<text x="${fmt(x)}" y="${MARGIN.top + plotH + 18}" ` +
        `text-anchor="middle" font-size="11">${t}</text>`,
    );
  }
  // axis labels
  parts.push(
    `<text x="${MARGIN.left + plotW / 2}" y="${H - 12}" ` +
      `text-anchor="middle" font-size="13">${opts.xLabel}</text>`,
  );
  parts.push(
    `<text x="18" y="${MARGIN.top + plotH / 2}" text-anchor="middle" ` +
      `font-size="13" transform="rotate(-90 18 ${MARGIN.top + plotH / 2})">` +
      `${opts.yLabel}</text>`,
  );

  // curves with markers and legend
  curves.forEach((c, i) => {
    const color = COLORS[i % COLORS.length];
    const pts = c.points
      .map(([x, y]) => `${fmt(sx(x))},${fmt(sy(y))}`)
      .join(" L");
    parts.push(
      `<path class="curve" data-scheme="${c.label}" d="M${pts}" ` +
        `fill="none" stroke="${color}" stroke-width="1.6"/>`,
    );
    for (const [x, y] of c.points) {
      parts.push(
        `<circle cx="${fmt(sx(x))}" cy="${fmt(sy(y))}" r="3" ` +
          `fill="${color}"/>`,
      );
    }
    const ly = MARGIN.top + 14 + i * 20;
    const lx = MARGIN.left + plotW + 14;
    parts.push(
      `<line x1="${lx}" y1="${ly - 4}" x2="${lx + 22}" y2="${ly - 4}" ` +
        `stroke="${color}" stroke-width="1.6"/>`,
    );
    parts.push(
      `<text class="legend" x="${lx + 28}" y="${ly}" font-size="12">` +
        `${c.label}</text>`,
    );
  });

  parts.push(`</g>`);
  parts.push(`</svg>`);
  return parts.join("\n") + "\n";
}
