// Integration against the real service: spawns `quiverlab serve`, drives
// sessions through the wire, and replays exported artifacts through the
// command line, asserting byte-exact final matrices.  The three scripted
// scenarios: an involution, the double-spike-apex move (single-cycle family
// flips to its 4-cycle form), and the shared-vertex move on two 4-cycle
// ends (paired type flips to the two-cycle family).

import { afterAll, beforeAll, describe, expect, it } from "vitest";
import { spawn, spawnSync, ChildProcess } from "node:child_process";
import { mkdtempSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join, resolve } from "node:path";
import { Matrix, QuiverApi } from "../src/api.js";
import { exportedFinalText, Session } from "../src/session.js";

const PY = process.env.QUIVERLAB_PYTHON ?? "python3";
const REPO = resolve(__dirname, "..", "..");
const PORT = 8917 + (process.pid % 500);
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess;
let workdir: string;

async function waitForHealth(api: QuiverApi, tries = 100): Promise<void> {
    for (let i = 0; i < tries; i++) {
        try {
            const h = await api.health();
            if (h.status === "ok") return;
        } catch {
            await new Promise((r) => setTimeout(r, 100));
        }
    }
    throw new Error("service did not come up");
}

beforeAll(async () => {
    workdir = mkdtempSync(join(tmpdir(), "quiverlab-ui-"));
    server = spawn(PY, ["-m", "quiverlab.cli", "serve", "--port", String(PORT)], {
        cwd: REPO,
        stdio: "ignore",
    });
    await waitForHealth(new QuiverApi(BASE));
}, 30000);

afterAll(() => {
    server?.kill();
    rmSync(workdir, { recursive: true, force: true });
});

function replayThroughCli(artifact: string): string {
    const path = join(workdir, `session-${Math.random().toString(36).slice(2)}.txt`);
    writeFileSync(path, artifact);
    const clicksLine = artifact.split("\n").find((ln) => ln.startsWith("# clicks:"))!;
    const clicks = clicksLine.replace("# clicks:", "").trim();
    const args = ["-m", "quiverlab.cli", "mutate"];
    if (clicks !== "(none)") {
        for (const j of clicks.split(/\s+/)) args.push("--at", j);
    }
    args.push(path);
    const run = spawnSync(PY, args, { cwd: REPO, encoding: "utf8" });
    expect(run.status).toBe(0);
    return run.stdout;
}

// Quivers for the scripted scenarios, as raw matrices.
function fromArrows(n: number, arrows: [number, number, number][]): Matrix {
    const m = Array.from({ length: n }, () => new Array(n).fill(0));
    for (const [s, t, w] of arrows) {
        m[s][t] = w;
        m[t][s] = -w;
    }
    return m;
}

const MINIMAL_SINGLE_CYCLE = fromArrows(5, [
    [0, 1, 1], [1, 2, 1], [2, 0, 1], [1, 3, 1], [3, 0, 1], [1, 4, 1], [4, 0, 1],
]);

const TWO_FOUR_CYCLE_ENDS = fromArrows(9, [
    [0, 1, 1], [1, 2, 1], [2, 3, 1], [3, 0, 1],
    [0, 4, 1], [4, 5, 1], [5, 6, 1], [6, 0, 1],
    [2, 7, 1], [5, 8, 1],
]);

describe("scripted scenarios against the live service", () => {
    it("seed renders as the doubled-fork paired type and double-click is an involution", async () => {
        const api = new QuiverApi(BASE);
        const s = await Session.load(api, "D-tilde", 10);
        expect(s.verdict()?.family).toBe("D-tilde");
        expect(s.verdict()?.subtype).toBe("I-I");
        const seedMatrix = s.current();
        await s.clickMutate(3);
        await s.clickMutate(3);
        expect(s.current()).toEqual(seedMatrix);
        expect(replayThroughCli(s.exportText())).toBe(exportedFinalText(s.exportText()));
    });

    it("clicking a double-spike apex flips the verdict to the 4-cycle form", async () => {
        const api = new QuiverApi(BASE);
        const s = await Session.fromMatrix(api, MINIMAL_SINGLE_CYCLE);
        expect(s.verdict()?.subtype).toBe("V");
        // highlight soundness: every certified motif arc exists in the quiver
        const m = s.current();
        for (const [src, dst] of s.verdict()!.certificate!.motif_edges) {
            expect(m[src][dst]).toBeGreaterThan(0);
        }
        const roles = s.verdict()!.certificate!.roles;
        const d = Number(Object.keys(roles).find((v) => roles[v] === "d"));
        await s.clickMutate(d);
        expect(s.verdict()?.subtype).toBe("Va");
        expect(replayThroughCli(s.exportText())).toBe(exportedFinalText(s.exportText()));
    });

    it("clicking the shared attachment of two 4-cycle ends yields the two-cycle family", async () => {
        const api = new QuiverApi(BASE);
        const s = await Session.fromMatrix(api, TWO_FOUR_CYCLE_ENDS);
        expect(s.verdict()?.subtype).toBe("III-III");
        const roles = s.verdict()!.certificate!.roles;
        const c = Number(Object.keys(roles).find((v) => roles[v] === "c"));
        await s.clickMutate(c);
        expect(s.verdict()?.subtype).toBe("VI");
        expect(replayThroughCli(s.exportText())).toBe(exportedFinalText(s.exportText()));
    });

    it("invalid seeds surface the service error without corrupting state", async () => {
        const api = new QuiverApi(BASE);
        await expect(Session.load(api, "E-tilde", 11)).rejects.toThrow(/E-tilde/);
    });

    it("random click walks replay byte-exact through the CLI", async () => {
        const api = new QuiverApi(BASE);
        const s = await Session.load(api, "D-tilde", 8);
        const steps = [0, 3, 5, 2, 7, 1, 4];
        for (const j of steps) await s.clickMutate(j);
        const artifact = s.exportText();
        expect(replayThroughCli(artifact)).toBe(exportedFinalText(artifact));
        // history replay determinism: a fresh session fed the same clicks
        const s2 = await Session.load(api, "D-tilde", 8);
        for (const j of steps) await s2.clickMutate(j);
        expect(s2.current()).toEqual(s.current());
    }, 20000);
});
