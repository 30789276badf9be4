// Typed client for the quiverlab HTTP protocol.  All mathematics stays
// server-side; this module only moves matrices over the wire.

export type Matrix = number[][];

export interface Certificate {
    roles: Record<string, string>;
    motif_edges: [number, number][];
}

export interface Verdict {
    v: number;
    family: string;
    subtype: string | null;
    certificate: Certificate | null;
    method: string;
    matched?: { family: string; n: number };
    note?: string;
}

export interface SeedResponse {
    v: number;
    matrix: Matrix;
    family: string;
    n: number;
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
    constructor(message: string, readonly status?: number) {
        super(message);
    }
}

export class QuiverApi {
    constructor(
        private readonly base: string,
        private readonly fetchImpl: FetchLike = (u, i) => fetch(u, i),
    ) {}

    private async request<T>(path: string, init?: RequestInit): Promise<T> {
        let resp: Response;
        try {
            resp = await this.fetchImpl(this.base + path, init);
        } catch (err) {
            throw new ApiError(`service unreachable: ${String(err)}`);
        }
        const body = (await resp.json()) as T & { error?: string };
        if (!resp.ok) {
            throw new ApiError(body.error ?? `HTTP ${resp.status}`, resp.status);
        }
        return body;
    }

    health(): Promise<{ v: number; status: string }> {
        return this.request("/health");
    }

    seed(family: string, n: number, orient?: number): Promise<SeedResponse> {
        const extra = orient !== undefined ? `&orient=${orient}` : "";
        return this.request(`/seed?family=${encodeURIComponent(family)}&n=${n}${extra}`);
    }

    async mutate(matrix: Matrix, vertex: number): Promise<Matrix> {
        const body = await this.request<{ v: number; matrix: Matrix }>("/mutate", {
            method: "POST",
            headers: { "Content-Type": "application/json" },
            body: JSON.stringify({ matrix, vertex }),
        });
        return body.matrix;
    }

    classify(matrix: Matrix): Promise<Verdict> {
        return this.request("/classify", {
            method: "POST",
            headers: { "Content-Type": "application/json" },
            body: JSON.stringify({ matrix }),
        });
    }
}
