#!/usr/bin/env node
/**
 * dagsim-plot: render an experiment CSV as an SVG chart.
 *
 *   dagsim-plot --csv results.csv --figure fig5 --out fig5.svg
 *
 * --csv may repeat (or take a comma-separated list) for figures that
 * overlay several result files, e.g. the two block-time sweeps.
 */

import { writeFileSync } from "fs";

import { CsvError, loadCsv } from "./csv.js";
import { FIGURE_NAMES, FigureName, buildFigure } from "./figures.js";
import { renderChart } from "./svg.js";

interface Args {
  csv: string[];
  figure: FigureName;
  out: string;
}

export function parseArgs(argv: string[]): Args {
  const csv: string[] = [];
  let figure: string | undefined;
  let out: string | undefined;
  const rest = [...argv];
  if (rest[0] === "plot") {
    rest.shift();
  }
  while (rest.length > 0) {
    const flag = rest.shift()!;
    const take = () => {
      const value = rest.shift();
      if (value === undefined) {
        throw new CsvError(`missing value for ${flag}`);
      }
      return value;
    };
    switch (flag) {
      case "--csv":
        csv.push(...take().split(",").filter((p) => p.length > 0));
        break;
      case "--figure":
        figure = take();
        break;
      case "--out":
        out = take();
        break;
      default:
        throw new CsvError(`unknown argument: ${flag}`);
    }
  }
  if (csv.length === 0 || figure === undefined || out === undefined) {
    throw new CsvError("usage: dagsim-plot --csv PATH[,PATH] --figure figN --out PATH");
  }
  if (!(FIGURE_NAMES as readonly string[]).includes(figure)) {
    throw new CsvError(
      `unknown figure ${JSON.stringify(figure)}; expected one of ${FIGURE_NAMES.join(", ")}`,
    );
  }
  return { csv, figure: figure as FigureName, out };
}

export function runPlot(args: Args): void {
  const tables = args.csv.map((path) => loadCsv(path));
  const spec = buildFigure(args.figure, tables, args.csv);
  const svg = renderChart(spec);
  writeFileSync(args.out, svg, "utf-8");
}

export function main(argv: string[]): number {
  try {
    const args = parseArgs(argv);
    runPlot(args);
  } catch (err) {
    if (err instanceof CsvError || err instanceof Error) {
      console.error(`error: ${err.message}`);
      return 2;
    }
    throw err;
  }
  return 0;
}

const invokedDirectly = process.argv[1]?.endsWith("cli.js") ?? false;
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}
