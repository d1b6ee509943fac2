/**
 * Figure definitions: which CSV columns feed each chart.
 *
 * Charts draw the per-setting mean rows with +-stddev bands; nothing is
 * recomputed from seed rows beyond what the files already aggregate.
 * fig5 additionally draws a baseline: the honest-profit mean of the
 * zero-rational setting, i.e. the proportional payoff of a 10% miner.
 */

import { CsvError, ResultTable, numeric, requireColumns, rowsOfKind } from "./csv.js";
import { ChartSpec, Series, SeriesPoint } from "./svg.js";

export const FIGURE_NAMES = ["fig4", "fig5", "fig6", "fig7", "fig8", "fig9"] as const;
export type FigureName = (typeof FIGURE_NAMES)[number];

interface SeriesDef {
  column: string;
  label: string;
}

function extractSeries(
  table: ResultTable,
  xColumn: string,
  def: SeriesDef,
  source: string,
  labelSuffix = "",
): Series {
  const means = rowsOfKind(table, "mean", xColumn);
  const spreads = new Map<number, number>();
  for (const row of rowsOfKind(table, "stddev", xColumn)) {
    const x = numeric(row, xColumn);
    const s = numeric(row, def.column);
    if (x !== null && s !== null) {
      spreads.set(x, s);
    }
  }
  const points: SeriesPoint[] = [];
  for (const row of means) {
    const x = numeric(row, xColumn);
    const y = numeric(row, def.column);
    if (x === null || y === null) continue;
    points.push({ x, y, spread: spreads.get(x) });
  }
  if (points.length === 0) {
    throw new CsvError(
      `${source}: no plottable mean rows for column ${def.column}`,
    );
  }
  return { label: def.label + labelSuffix, points };
}

function modeSuffix(table: ResultTable): string {
  const strategies = table.rows[0]?.strategies ?? "";
  if (!strategies.includes("|")) return "";
  const kinds = new Set(strategies.split("|"));
  if (kinds.size === 1) {
    return kinds.has("rational") ? " (all rational)" : " (all honest)";
  }
  return " (mixed)";
}

export function buildFigure(name: FigureName, tables: ResultTable[], sources: string[]): ChartSpec {
  if (tables.length === 0) {
    throw new CsvError("at least one CSV is required");
  }
  const first = tables[0];
  const firstSource = sources[0];

  switch (name) {
    case "fig4": {
      // Would-be-orphan rate against the block creation time.
      const series = tables.map((t, i) => {
        requireColumns(t, ["lambda", "parallel_block_rate", "row_kind"], sources[i]);
        return extractSeries(
          t,
          "lambda",
          { column: "parallel_block_rate", label: "orphan-equivalent block rate" },
          sources[i],
          tables.length > 1 ? modeSuffix(t) : "",
        );
      });
      return {
        title: "Orphan-equivalent block rate vs block creation time",
        xLabel: "block creation time (s)",
        yLabel: "blocks with an earlier parallel sibling",
        series,
        yPercent: true,
        logX: true,
      };
    }
    case "fig5": {
      requireColumns(
        first,
        ["malicious_count", "honest_profit_mean", "malicious_profit_mean", "row_kind"],
        firstSource,
      );
      const honest = extractSeries(
        first,
        "malicious_count",
        { column: "honest_profit_mean", label: "honest miner (random selection)" },
        firstSource,
      );
      const malicious = extractSeries(
        first,
        "malicious_count",
        { column: "malicious_profit_mean", label: "rational miner (highest fees)" },
        firstSource,
      );
      const zero = honest.points.find((p) => p.x === 0);
      if (zero === undefined) {
        throw new CsvError(
          `${firstSource}: baseline needs the zero-rational setting`,
        );
      }
      return {
        title: "Average profit per miner vs number of rational miners",
        xLabel: "rational miners (of 10)",
        yLabel: "average profit (fee units)",
        series: [honest, malicious],
        baseline: { label: "proportional payoff (10% power)", value: zero.y },
      };
    }
    case "fig6": {
      requireColumns(
        first,
        ["malicious_count", "collision_rate", "worst_case_collision", "row_kind"],
        firstSource,
      );
      return {
        title: "Transaction collision rate vs number of rational miners",
        xLabel: "rational miners (of 10)",
        yLabel: "collision rate (duplicates / capacity)",
        series: [
          extractSeries(
            first,
            "malicious_count",
            { column: "collision_rate", label: "measured collision rate" },
            firstSource,
          ),
          extractSeries(
            first,
            "malicious_count",
            { column: "worst_case_collision", label: "worst case (all parallel payloads duplicate)" },
            firstSource,
          ),
        ],
        yPercent: true,
      };
    }
    case "fig7": {
      requireColumns(first, ["malicious_count", "throughput", "row_kind"], firstSource);
      return {
        title: "Network throughput vs number of rational miners",
        xLabel: "rational miners (of 10)",
        yLabel: "unique share of mined transactions",
        series: [
          extractSeries(
            first,
            "malicious_count",
            { column: "throughput", label: "throughput" },
            firstSource,
          ),
        ],
        yPercent: true,
      };
    }
    case "fig8": {
      requireColumns(
        first,
        ["alpha", "malicious_relative_mean", "honest_relative_mean", "row_kind"],
        firstSource,
      );
      return {
        title: "Relative profit vs adversarial mining power",
        xLabel: "adversarial power share",
        yLabel: "share of total reward",
        series: [
          extractSeries(
            first,
            "alpha",
            { column: "malicious_relative_mean", label: "rational miner" },
            firstSource,
          ),
          extractSeries(
            first,
            "alpha",
            { column: "honest_relative_mean", label: "honest miner" },
            firstSource,
          ),
        ],
      };
    }
    case "fig9": {
      const series = tables.map((t, i) => {
        requireColumns(t, ["lambda", "collision_rate", "row_kind"], sources[i]);
        return extractSeries(
          t,
          "lambda",
          { column: "collision_rate", label: "collision rate" },
          sources[i],
          modeSuffix(t),
        );
      });
      return {
        title: "Transaction collision rate vs block creation time",
        xLabel: "block creation time (s)",
        yLabel: "collision rate (duplicates / capacity)",
        series,
        yPercent: true,
        logX: true,
      };
    }
  }
}
