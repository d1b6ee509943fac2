/**
 * Minimal line-chart renderer producing standalone SVG.
 *
 * Series are mean lines with optional +-stddev bands; an optional
 * horizontal baseline supports reference values. No third-party
 * plotting dependency: the output only needs polylines, paths, and
 * text.
 */

export interface SeriesPoint {
  x: number;
  y: number;
  /** Half-width of the uncertainty band at this x, if any. */
  spread?: number;
}

export interface Series {
  label: string;
  points: SeriesPoint[];
}

export interface ChartSpec {
  title: string;
  xLabel: string;
  yLabel: string;
  series: Series[];
  baseline?: { label: string; value: number };
  /** Render y values as percentages. */
  yPercent?: boolean;
  logX?: boolean;
}

const WIDTH = 840;
const HEIGHT = 520;
const MARGIN = { top: 48, right: 32, bottom: 64, left: 84 };
const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

class Scale {
  constructor(
    private lo: number,
    private hi: number,
    private outLo: number,
    private outHi: number,
    private log: boolean,
  ) {
    if (log && lo <= 0) {
      throw new Error("log scale needs positive domain");
    }
  }

  at(value: number): number {
    const [a, b] = this.log
      ? [Math.log(this.lo), Math.log(this.hi)]
      : [this.lo, this.hi];
    const v = this.log ? Math.log(value) : value;
    const t = b === a ? 0.5 : (v - a) / (b - a);
    return this.outLo + t * (this.outHi - this.outLo);
  }

  ticks(count = 5): number[] {
    if (this.log) {
      const out: number[] = [];
      let decade = Math.pow(10, Math.floor(Math.log10(this.lo)));
      while (decade <= this.hi * 1.0001) {
        if (decade >= this.lo * 0.9999) out.push(decade);
        decade *= 10;
      }
      return out.length >= 2 ? out : [this.lo, this.hi];
    }
    const step = (this.hi - this.lo) / count;
    return Array.from({ length: count + 1 }, (_, i) => this.lo + i * step);
  }
}

function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function fmt(value: number, percent: boolean): string {
  if (percent) {
    return `${(value * 100).toPrecision(3)}%`;
  }
  if (Math.abs(value) >= 1000) {
    return value.toPrecision(4);
  }
  return Number(value.toPrecision(3)).toString();
}

export function renderChart(spec: ChartSpec): string {
  const all = spec.series.flatMap((s) => s.points);
  if (all.length === 0) {
    throw new Error("nothing to plot: no data points");
  }
  const xs = all.map((p) => p.x);
  const ysLow = all.map((p) => p.y - (p.spread ?? 0));
  const ysHigh = all.map((p) => p.y + (p.spread ?? 0));
  if (spec.baseline) {
    ysLow.push(spec.baseline.value);
    ysHigh.push(spec.baseline.value);
  }
  let yLo = Math.min(0, ...ysLow);
  let yHi = Math.max(...ysHigh);
  if (yHi === yLo) {
    yHi = yLo + 1;
  }
  yHi += (yHi - yLo) * 0.05;

  const x = new Scale(
    Math.min(...xs),
    Math.max(...xs),
    MARGIN.left,
    WIDTH - MARGIN.right,
    Boolean(spec.logX),
  );
  const y = new Scale(yLo, yHi, HEIGHT - MARGIN.bottom, MARGIN.top, false);

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="sans-serif">`,
    `<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`,
    `<text x="${WIDTH / 2}" y="24" text-anchor="middle" font-size="17" class="title">${esc(spec.title)}</text>`,
  );

  // axes + grid
  const axisY = HEIGHT - MARGIN.bottom;
  parts.push(
    `<line x1="${MARGIN.left}" y1="${axisY}" x2="${WIDTH - MARGIN.right}" y2="${axisY}" stroke="#333"/>`,
    `<line x1="${MARGIN.left}" y1="${MARGIN.top}" x2="${MARGIN.left}" y2="${axisY}" stroke="#333"/>`,
  );
  for (const tick of x.ticks()) {
    const px = x.at(tick);
    parts.push(
      `<line x1="${px.toFixed(1)}" y1="${axisY}" x2="${px.toFixed(1)}" y2="${axisY + 5}" stroke="#333"/>`,
      `<text x="${px.toFixed(1)}" y="${axisY + 20}" text-anchor="middle" font-size="12">${fmt(tick, false)}</text>`,
    );
  }
  for (const tick of y.ticks()) {
    const py = y.at(tick);
    parts.push(
      `<line x1="${MARGIN.left - 5}" y1="${py.toFixed(1)}" x2="${MARGIN.left}" y2="${py.toFixed(1)}" stroke="#333"/>`,
      `<line x1="${MARGIN.left}" y1="${py.toFixed(1)}" x2="${WIDTH - MARGIN.right}" y2="${py.toFixed(1)}" stroke="#eee"/>`,
      `<text x="${MARGIN.left - 9}" y="${(py + 4).toFixed(1)}" text-anchor="end" font-size="12">${fmt(tick, Boolean(spec.yPercent))}</text>`,
    );
  }
  parts.push(
    `<text x="${(MARGIN.left + WIDTH - MARGIN.right) / 2}" y="${HEIGHT - 18}" text-anchor="middle" font-size="14">${esc(spec.xLabel)}</text>`,
    `<text x="22" y="${(MARGIN.top + axisY) / 2}" text-anchor="middle" font-size="14" transform="rotate(-90 22 ${(MARGIN.top + axisY) / 2})">${esc(spec.yLabel)}</text>`,
  );

  // uncertainty bands under the lines
  spec.series.forEach((series, idx) => {
    const banded = series.points.filter((p) => (p.spread ?? 0) > 0);
    if (banded.length < 2) return;
    const upper = series.points.map(
      (p) => `${x.at(p.x).toFixed(1)},${y.at(p.y + (p.spread ?? 0)).toFixed(1)}`,
    );
    const lower = [...series.points]
      .reverse()
      .map((p) => `${x.at(p.x).toFixed(1)},${y.at(p.y - (p.spread ?? 0)).toFixed(1)}`);
    parts.push(
      `<path class="band" data-label="${esc(series.label)}" d="M${upper.join(" L")} L${lower.join(" L")} Z" fill="${PALETTE[idx % PALETTE.length]}" opacity="0.15"/>`,
    );
  });

  if (spec.baseline) {
    const py = y.at(spec.baseline.value).toFixed(1);
    parts.push(
      `<line class="baseline" data-label="${esc(spec.baseline.label)}" x1="${MARGIN.left}" y1="${py}" x2="${WIDTH - MARGIN.right}" y2="${py}" stroke="#555" stroke-dasharray="7 5" stroke-width="1.5"/>`,
    );
  }

  spec.series.forEach((series, idx) => {
    const color = PALETTE[idx % PALETTE.length];
    const coords = series.points
      .map((p) => `${x.at(p.x).toFixed(1)},${y.at(p.y).toFixed(1)}`)
      .join(" ");
    parts.push(
      `<polyline class="series" data-label="${esc(series.label)}" points="${coords}" fill="none" stroke="${color}" stroke-width="2.2"/>`,
    );
    for (const p of series.points) {
      parts.push(
        `<circle cx="${x.at(p.x).toFixed(1)}" cy="${y.at(p.y).toFixed(1)}" r="3" fill="${color}"/>`,
      );
    }
  });

  // legend
  const legendEntries = spec.series.map((s, idx) => ({
    label: s.label,
    color: PALETTE[idx % PALETTE.length],
    dashed: false,
  }));
  if (spec.baseline) {
    legendEntries.push({ label: spec.baseline.label, color: "#555", dashed: true });
  }
  legendEntries.forEach((entry, i) => {
    const ly = MARGIN.top + 8 + i * 20;
    const lx = WIDTH - MARGIN.right - 220;
    parts.push(
      `<line x1="${lx}" y1="${ly}" x2="${lx + 26}" y2="${ly}" stroke="${entry.color}" stroke-width="2.2"${entry.dashed ? ' stroke-dasharray="7 5"' : ""}/>`,
      `<text x="${lx + 32}" y="${ly + 4}" font-size="13">${esc(entry.label)}</text>`,
    );
  });

  parts.push("</svg>");
  return parts.join("\n");
}
