/** Bar chart of a repeat-statistics CSV (one bar per column; the genome
 * length column is dropped since it dwarfs the repeat scales). */

import { StatsTable } from "./csv.js";

export interface StatsPlotOptions {
    width?: number;
    height?: number;
    title?: string;
}

export const renderStatsSvg = (
    table: StatsTable,
    options: StatsPlotOptions = {},
): string => {
    const width = options.width ?? 720;
    const height = options.height ?? 420;
    const margin = { top: 36, right: 16, bottom: 110, left: 72 };
    const plotW = width - margin.left - margin.right;
    const plotH = height - margin.top - margin.bottom;

    const entries = table.entries.filter(([name]) => name !== "G");
    const vMax = Math.max(...entries.map(([, v]) => v), 1);
    const band = plotW / entries.length;

    const parts: string[] = [];
    parts.push(
        `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}">`,
        `<rect width="${width}" height="${height}" fill="white"/>`,
        `<text x="${width / 2}" y="20" text-anchor="middle" font-size="14">${
            options.title ?? "Repeat statistics"
        }</text>`,
        `<line x1="${margin.left}" y1="${margin.top + plotH}" x2="${
            margin.left + plotW
        }" y2="${margin.top + plotH}" stroke="black"/>`,
        `<line x1="${margin.left}" y1="${margin.top}" x2="${margin.left}" y2="${
            margin.top + plotH
        }" stroke="black"/>`,
    );
    entries.forEach(([name, value], i) => {
        const h = (value / vMax) * plotH;
        const bx = margin.left + i * band + band * 0.15;
        const by = margin.top + plotH - h;
        const cx = margin.left + i * band + band / 2;
        parts.push(
            `<rect class="bar" x="${bx.toFixed(1)}" y="${by.toFixed(1)}" width="${(
                band * 0.7
            ).toFixed(1)}" height="${h.toFixed(1)}" fill="#1f77b4"/>`,
            `<text x="${cx.toFixed(1)}" y="${(by - 4).toFixed(1)}" text-anchor="middle" font-size="10">${value}</text>`,
            `<text x="${cx.toFixed(1)}" y="${margin.top + plotH + 10}" font-size="10" text-anchor="end" transform="rotate(-45 ${cx.toFixed(1)} ${
                margin.top + plotH + 10
            })">${name}</text>`,
        );
    });
    parts.push("</svg>");
    return parts.join("\n");
};
