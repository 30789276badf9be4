// Explorer wiring: seed pickers, click-to-mutate, undo/redo, verdict panel,
// raw matrix import, session export.  At most one request is in flight and
// verdicts are only shown once confirmed by the service.

import { Matrix, QuiverApi } from "./api.js";
import { Layout } from "./layout.js";
import { renderQuiver } from "./render.js";
import { Session } from "./session.js";

const api = new QuiverApi("");
const layout = new Layout(720, 520);

let session: Session | null = null;
let busy = false;

function el<T extends Element>(id: string): T {
    const node = document.getElementById(id);
    if (!node) throw new Error(`missing element #${id}`);
    return node as unknown as T;
}

function setStatus(text: string, isError = false): void {
    const status = el<HTMLDivElement>("status");
    status.textContent = text;
    status.className = isError ? "status error" : "status";
}

function describeVerdict(): string {
    const v = session?.verdict();
    if (!v) return "unclassified";
    let out = v.family;
    if (v.subtype) out += ` / ${v.subtype}`;
    out += ` (${v.method})`;
    return out;
}

function redraw(): void {
    if (!session) return;
    const matrix = session.current();
    const points = layout.update(matrix);
    renderQuiver(el<SVGSVGElement>("canvas"), matrix, points,
        session.verdict()?.certificate ?? null, {
            onVertexClick: (v) => void clickVertex(v),
        });
    setStatus(`verdict: ${describeVerdict()}  |  step ${session.cursor} of ${session.length - 1}`
        + `  |  clicks: ${session.clickSequence().join(" ") || "(none)"}`);
    el<HTMLButtonElement>("undo").disabled = !session.canUndo();
    el<HTMLButtonElement>("redo").disabled = !session.canRedo();
}

async function guarded(work: () => Promise<void>): Promise<void> {
    if (busy) return;
    busy = true;
    document.body.style.cursor = "progress";
    try {
        await work();
    } catch (err) {
        setStatus(String(err), true);
    } finally {
        busy = false;
        document.body.style.cursor = "";
    }
}

async function clickVertex(v: number): Promise<void> {
    await guarded(async () => {
        if (!session) return;
        await session.clickMutate(v);
        redraw();
    });
}

function wire(): void {
    el<HTMLButtonElement>("load").addEventListener("click", () =>
        void guarded(async () => {
            const family = el<HTMLSelectElement>("family").value;
            const n = parseInt(el<HTMLInputElement>("size").value, 10);
            session = await Session.load(api, family, n);
            redraw();
        }),
    );
    el<HTMLButtonElement>("import").addEventListener("click", () =>
        void guarded(async () => {
            const matrix = JSON.parse(el<HTMLTextAreaElement>("raw").value) as Matrix;
            session = await Session.fromMatrix(api, matrix);
            redraw();
        }),
    );
    el<HTMLButtonElement>("undo").addEventListener("click", () => {
        if (session?.undo()) redraw();
    });
    el<HTMLButtonElement>("redo").addEventListener("click", () => {
        if (session?.redo()) redraw();
    });
    el<HTMLButtonElement>("export").addEventListener("click", () => {
        if (!session) return;
        const blob = new Blob([session.exportText()], { type: "text/plain" });
        const a = document.createElement("a");
        a.href = URL.createObjectURL(blob);
        a.download = "session.txt";
        a.click();
        URL.revokeObjectURL(a.href);
    });
    setStatus("pick a seed family and size, then load");
}

wire();
