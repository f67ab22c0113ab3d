/** Feasibility plot: normalized coverage demand vs read length, one curve
 * per algorithm, with the infeasible read-length band of each curve shaded
 * and its minimum feasible L marked by a vertical asymptote. */

import { FeasibilityRow, FeasibilityTable } from "./csv.js";

export interface FeasibilityPlotOptions {
    width?: number;
    height?: number;
    logY?: boolean;
    title?: string;
}

interface Curve {
    key: "lower" | "greedy" | "dbg";
    label: string;
    color: string;
    value: (r: FeasibilityRow) => number;
    feasible: (r: FeasibilityRow) => boolean;
}

const CURVES: Curve[] = [
    { key: "lower", label: "information lower bound", color: "#1f77b4",
      value: (r) => r.cbarLower, feasible: (r) => r.feasibleLower },
    { key: "greedy", label: "greedy", color: "#2ca02c",
      value: (r) => r.cbarGreedy, feasible: (r) => r.feasibleGreedy },
    { key: "dbg", label: "de Bruijn", color: "#d62728",
      value: (r) => r.cbarDbg, feasible: (r) => r.feasibleDbg },
];

export const minFeasibleL = (
    table: FeasibilityTable,
    key: Curve["key"],
): number => {
    const curve = CURVES.find((c) => c.key === key)!;
    const row = table.rows.find((r) => curve.feasible(r));
    return row ? row.L : Infinity;
};

/** Numeric form of the qualitative claim the plot is meant to show: the
 * de Bruijn curve sits to the right of (and above) the lower-bound curve
 * at every plotted L. */
export const dbgRightOfLowerBound = (table: FeasibilityTable): boolean =>
    minFeasibleL(table, "dbg") >= minFeasibleL(table, "lower") &&
    table.rows.every((r) => r.cbarDbg >= r.cbarLower);

const fmt = (x: number): string => (Math.round(x * 100) / 100).toString();

/** Renders straight from the CSV grid: one marker per row per finite
 * column, no interpolation or reordering. */
export const renderFeasibilitySvg = (
    table: FeasibilityTable,
    options: FeasibilityPlotOptions = {},
): string => {
    const width = options.width ?? 720;
    const height = options.height ?? 480;
    const margin = { top: 36, right: 24, bottom: 48, left: 64 };
    const plotW = width - margin.left - margin.right;
    const plotH = height - margin.top - margin.bottom;
    const rows = table.rows;

    const Ls = rows.map((r) => r.L);
    const Lmin = Math.min(...Ls);
    const Lmax = Math.max(...Ls);
    const finite = rows.flatMap((r) =>
        CURVES.map((c) => c.value(r)).filter(Number.isFinite),
    );
    const yRaw = options.logY ? (v: number) => Math.log10(v) : (v: number) => v;
    const yLo = yRaw(Math.min(...finite));
    const yHi = yRaw(Math.max(...finite));
    const ySpan = yHi - yLo || 1;
    const x = (L: number) =>
        margin.left + ((L - Lmin) / (Lmax - Lmin || 1)) * plotW;
    const y = (v: number) =>
        margin.top + plotH - ((yRaw(v) - yLo) / ySpan) * plotH;

    const parts: string[] = [];
    parts.push(
        `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}">`,
        `<rect width="${width}" height="${height}" fill="white"/>`,
        `<text x="${width / 2}" y="20" text-anchor="middle" font-size="14">${
            options.title ?? "Coverage demand vs read length"
        }</text>`,
    );

    // shaded infeasible band and asymptote per curve
    for (const curve of CURVES) {
        const L0 = minFeasibleL(table, curve.key);
        if (!Number.isFinite(L0) || L0 <= Lmin) continue;
        parts.push(
            `<rect x="${margin.left}" y="${margin.top}" width="${
                x(L0) - margin.left
            }" height="${plotH}" fill="${curve.color}" opacity="0.06"/>`,
            `<line x1="${x(L0)}" y1="${margin.top}" x2="${x(L0)}" y2="${
                margin.top + plotH
            }" stroke="${curve.color}" stroke-dasharray="4 3"/>`,
        );
    }

    // axes
    parts.push(
        `<line x1="${margin.left}" y1="${margin.top + plotH}" x2="${
            margin.left + plotW
        }" y2="${margin.top + plotH}" stroke="black"/>`,
        `<line x1="${margin.left}" y1="${margin.top}" x2="${margin.left}" y2="${
            margin.top + plotH
        }" stroke="black"/>`,
        `<text x="${margin.left + plotW / 2}" y="${
            height - 10
        }" text-anchor="middle" font-size="12">read length L</text>`,
        `<text x="16" y="${margin.top + plotH / 2}" font-size="12" transform="rotate(-90 16 ${
            margin.top + plotH / 2
        })" text-anchor="middle">normalized coverage${
            options.logY ? " (log)" : ""
        }</text>`,
    );
    const nTicks = 6;
    for (let i = 0; i <= nTicks; i++) {
        const L = Lmin + ((Lmax - Lmin) * i) / nTicks;
        parts.push(
            `<text x="${x(L)}" y="${
                margin.top + plotH + 16
            }" text-anchor="middle" font-size="10">${Math.round(L)}</text>`,
        );
        const v = yLo + (ySpan * i) / nTicks;
        const shown = options.logY ? Math.pow(10, v) : v;
        parts.push(
            `<text x="${margin.left - 6}" y="${
                margin.top + plotH - (plotH * i) / nTicks + 3
            }" text-anchor="end" font-size="10">${fmt(shown)}</text>`,
        );
    }

    // curves: polyline over finite points plus one marker per finite row
    for (const [ci, curve] of CURVES.entries()) {
        const pts = rows
            .filter((r) => Number.isFinite(curve.value(r)))
            .map((r) => [x(r.L), y(curve.value(r))] as const);
        if (pts.length) {
            parts.push(
                `<polyline fill="none" stroke="${curve.color}" stroke-width="1.5" points="${pts
                    .map(([px, py]) => `${fmt(px)},${fmt(py)}`)
                    .join(" ")}"/>`,
            );
        }
        for (const [px, py] of pts) {
            parts.push(
                `<circle class="pt-${curve.key}" cx="${fmt(px)}" cy="${fmt(
                    py,
                )}" r="2.5" fill="${curve.color}"/>`,
            );
        }
        parts.push(
            `<rect x="${margin.left + 10}" y="${margin.top + 8 + 16 * ci}" width="14" height="3" fill="${curve.color}"/>`,
            `<text x="${margin.left + 30}" y="${
                margin.top + 13 + 16 * ci
            }" font-size="11">${curve.label}</text>`,
        );
    }
    parts.push("</svg>");
    return parts.join("\n");
};
