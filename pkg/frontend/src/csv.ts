/** Parsers for the two CSV contracts emitted by the diploidlab CLI. */

export class SchemaMismatch extends Error {
    constructor(message: string) {
        super(message);
        this.name = "SchemaMismatch";
    }
}

export const FEASIBILITY_COLUMNS = [
    "L",
    "cbar_lower",
    "cbar_greedy",
    "cbar_dbg",
    "feasible_lower",
    "feasible_greedy",
    "feasible_dbg",
] as const;

export interface FeasibilityRow {
    L: number;
    cbarLower: number;
    cbarGreedy: number;
    cbarDbg: number;
    feasibleLower: boolean;
    feasibleGreedy: boolean;
    feasibleDbg: boolean;
}

export interface FeasibilityTable {
    /** `# key=value` header comments (threshold annotations). */
    thresholds: Map<string, number>;
    rows: FeasibilityRow[];
}

const parseNumber = (field: string, line: number): number => {
    if (field === "inf") return Infinity;
    const value = Number(field);
    if (field === "" || Number.isNaN(value)) {
        throw new SchemaMismatch(`line ${line}: non-numeric field "${field}"`);
    }
    return value;
};

const splitCsv = (text: string): { comments: string[]; lines: string[] } => {
    const comments: string[] = [];
    const lines: string[] = [];
    for (const raw of text.split(/\r?\n/)) {
        const line = raw.trim();
        if (line === "") continue;
        (line.startsWith("#") ? comments : lines).push(line);
    }
    return { comments, lines };
};

export const parseFeasibilityCsv = (text: string): FeasibilityTable => {
    const { comments, lines } = splitCsv(text);
    if (lines.length === 0) {
        throw new SchemaMismatch("empty CSV: no header row");
    }
    const header = lines[0].split(",");
    if (header.join(",") !== FEASIBILITY_COLUMNS.join(",")) {
        throw new SchemaMismatch(
            `header mismatch: expected "${FEASIBILITY_COLUMNS.join(",")}", got "${lines[0]}"`,
        );
    }
    const thresholds = new Map<string, number>();
    for (const comment of comments) {
        const match = /^#\s*([\w.]+)=(\S+)$/.exec(comment);
        if (match) thresholds.set(match[1], Number(match[2]));
    }
    const rows = lines.slice(1).map((line, i) => {
        const fields = line.split(",");
        if (fields.length !== FEASIBILITY_COLUMNS.length) {
            throw new SchemaMismatch(
                `line ${i + 2}: expected ${FEASIBILITY_COLUMNS.length} fields, got ${fields.length}`,
            );
        }
        const nums = fields.map((f) => parseNumber(f, i + 2));
        return {
            L: nums[0],
            cbarLower: nums[1],
            cbarGreedy: nums[2],
            cbarDbg: nums[3],
            feasibleLower: nums[4] !== 0,
            feasibleGreedy: nums[5] !== 0,
            feasibleDbg: nums[6] !== 0,
        };
    });
    if (rows.length === 0) {
        throw new SchemaMismatch("empty CSV: header but no data rows");
    }
    return { thresholds, rows };
};

export interface StatsTable {
    /** Column name -> value, in file order. */
    entries: [string, number][];
}

export const parseStatsCsv = (text: string): StatsTable => {
    const { lines } = splitCsv(text);
    if (lines.length < 2) {
        throw new SchemaMismatch("stats CSV needs a header row and one value row");
    }
    const names = lines[0].split(",");
    const values = lines[1].split(",");
    if (names.length !== values.length || names.length === 0) {
        throw new SchemaMismatch("stats CSV header/value width mismatch");
    }
    return { entries: names.map((n, i) => [n, parseNumber(values[i], 2)]) };
};
