// Session state for the explorer: a history of matrices linked by single
// mutations, an undo/redo cursor, and verdicts fetched from the service.
// Replaying the recorded click sequence from the seed always reproduces the
// cursor state, and the exported artifact replays through `quiverlab mutate`.

import { Matrix, QuiverApi, Verdict } from "./api.js";

export interface SeedDescriptor {
    family: string;
    n: number;
    orient?: number;
}

function cloneMatrix(m: Matrix): Matrix {
    return m.map((row) => row.slice());
}

export function matrixToText(m: Matrix): string {
    const lines = [String(m.length)];
    for (let s = 0; s < m.length; s++) {
        for (let t = 0; t < m.length; t++) {
            if (m[s][t] > 0) lines.push(`${s} ${t} ${m[s][t]}`);
        }
    }
    return lines.join("\n") + "\n";
}

export class Session {
    private history: Matrix[];
    private verdicts: (Verdict | null)[];
    private clicks: number[] = [];
    private cursorIndex = 0;

    private constructor(
        private readonly api: QuiverApi,
        readonly seed: SeedDescriptor | null,
        seedMatrix: Matrix,
        seedVerdict: Verdict,
    ) {
        this.history = [cloneMatrix(seedMatrix)];
        this.verdicts = [seedVerdict];
    }

    static async load(api: QuiverApi, family: string, n: number, orient?: number): Promise<Session> {
        const seed = await api.seed(family, n, orient);
        const verdict = await api.classify(seed.matrix);
        return new Session(api, { family, n, orient }, seed.matrix, verdict);
    }

    static async fromMatrix(api: QuiverApi, matrix: Matrix): Promise<Session> {
        const verdict = await api.classify(matrix);
        return new Session(api, null, matrix, verdict);
    }

    get cursor(): number {
        return this.cursorIndex;
    }

    get length(): number {
        return this.history.length;
    }

    current(): Matrix {
        return cloneMatrix(this.history[this.cursorIndex]);
    }

    verdict(): Verdict | null {
        return this.verdicts[this.cursorIndex];
    }

    clickSequence(): number[] {
        return this.clicks.slice(0, this.cursorIndex);
    }

    canUndo(): boolean {
        return this.cursorIndex > 0;
    }

    canRedo(): boolean {
        return this.cursorIndex < this.history.length - 1;
    }

    undo(): boolean {
        if (!this.canUndo()) return false;
        this.cursorIndex -= 1;
        return true;
    }

    redo(): boolean {
        if (!this.canRedo()) return false;
        this.cursorIndex += 1;
        return true;
    }

    /** Mutate at `vertex`; truncates any redo tail, appends, and advances. */
    async clickMutate(vertex: number): Promise<Verdict> {
        const here = this.history[this.cursorIndex];
        if (vertex < 0 || vertex >= here.length) {
            throw new Error(`vertex ${vertex} out of range`);
        }
        const next = await this.api.mutate(here, vertex);
        const verdict = await this.api.classify(next);
        // only commit once both calls succeeded, so errors never corrupt history
        this.history = this.history.slice(0, this.cursorIndex + 1);
        this.verdicts = this.verdicts.slice(0, this.cursorIndex + 1);
        this.clicks = this.clicks.slice(0, this.cursorIndex);
        this.history.push(next);
        this.verdicts.push(verdict);
        this.clicks.push(vertex);
        this.cursorIndex += 1;
        return verdict;
    }

    /**
     * Text artifact replayable by the command line:
     * `quiverlab mutate --at j1 --at j2 ... session.txt` prints exactly the
     * recorded final matrix block.
     */
    exportText(): string {
        const clicks = this.clickSequence();
        const head = [
            "# quiverlab session v1",
            this.seed
                ? `# seed: ${this.seed.family} ${this.seed.n}` +
                  (this.seed.orient !== undefined ? ` orient=${this.seed.orient}` : "")
                : "# seed: raw matrix import",
            `# clicks: ${clicks.join(" ") || "(none)"}`,
            clicks.length
                ? `# replay: quiverlab mutate ${clicks.map((j) => `--at ${j}`).join(" ")} <this file>`
                : "# replay: quiverlab mutate <this file>",
        ];
        const final = matrixToText(this.history[this.cursorIndex])
            .trimEnd()
            .split("\n")
            .map((ln) => `# final: ${ln}`);
        return (
            head.join("\n") +
            "\n" +
            matrixToText(this.history[0]) +
            final.join("\n") +
            "\n"
        );
    }
}

/** Parse the `# final:` block out of an exported session artifact. */
export function exportedFinalText(artifact: string): string {
    const lines = artifact
        .split("\n")
        .filter((ln) => ln.startsWith("# final: "))
        .map((ln) => ln.slice("# final: ".length));
    return lines.join("\n") + "\n";
}
