#!/usr/bin/env node
/** plot_feasibility <feasibility.csv> -o out.svg [--log-y]
 *  plot_feasibility --stats <stats.csv> -o out.svg
 *
 * Exit codes: 0 ok, 1 data failure (schema mismatch, unreadable file),
 * 2 usage error. */

import { readFileSync, writeFileSync } from "fs";
import process from "process";

import { parseFeasibilityCsv, parseStatsCsv, SchemaMismatch } from "./csv.js";
import { dbgRightOfLowerBound, renderFeasibilitySvg } from "./feasibility.js";
import { renderStatsSvg } from "./stats.js";

const USAGE =
    "usage: plot_feasibility <feasibility.csv> -o <out.svg> [--log-y]\n" +
    "       plot_feasibility --stats <stats.csv> -o <out.svg>";

interface Args {
    input: string;
    output: string;
    logY: boolean;
    statsMode: boolean;
}

const parseArgs = (argv: string[]): Args => {
    let input: string | undefined;
    let output: string | undefined;
    let logY = false;
    let statsMode = false;
    for (let i = 0; i < argv.length; i++) {
        const arg = argv[i];
        if (arg === "-o" || arg === "--output") {
            output = argv[++i];
            if (output === undefined) throw new Error("-o needs a path");
        } else if (arg === "--log-y") {
            logY = true;
        } else if (arg === "--stats") {
            statsMode = true;
        } else if (arg.startsWith("-")) {
            throw new Error(`unknown option ${arg}`);
        } else if (input === undefined) {
            input = arg;
        } else {
            throw new Error(`unexpected argument ${arg}`);
        }
    }
    if (input === undefined || output === undefined) {
        throw new Error("input CSV and -o output are required");
    }
    return { input, output, logY, statsMode };
};

export const main = (argv: string[]): number => {
    let args: Args;
    try {
        args = parseArgs(argv);
    } catch (err) {
        console.error(`error: ${(err as Error).message}\n${USAGE}`);
        return 2;
    }
    try {
        const text = readFileSync(args.input, "utf8");
        let svg: string;
        if (args.statsMode) {
            svg = renderStatsSvg(parseStatsCsv(text), { title: args.input });
        } else {
            const table = parseFeasibilityCsv(text);
            if (!dbgRightOfLowerBound(table)) {
                console.error(
                    "warning: de Bruijn curve is not right of the lower bound in this data",
                );
            }
            svg = renderFeasibilitySvg(table, { logY: args.logY });
        }
        writeFileSync(args.output, svg);
        console.error(`wrote ${args.output}`);
        return 0;
    } catch (err) {
        if (err instanceof SchemaMismatch) {
            console.error(`schema mismatch: ${err.message}`);
        } else {
            console.error(`error: ${(err as Error).message}`);
        }
        return 1;
    }
};

if (process.argv[1] && import.meta.url.endsWith(process.argv[1].split("/").pop()!)) {
    process.exit(main(process.argv.slice(2)));
}
