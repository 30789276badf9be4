// Small force-directed layout with pinned continuity: vertices keep their
// positions across mutations (only arrows restyle), so motif migration is
// visually trackable.  New vertex counts are seeded on a circle.

import { Matrix } from "./api.js";

export interface Point {
    x: number;
    y: number;
}

export class Layout {
    private positions: Point[] = [];

    constructor(
        readonly width = 640,
        readonly height = 480,
    ) {}

    /** Current positions, (re)fitted to the given matrix size. */
    update(matrix: Matrix, iterations = 60): Point[] {
        const n = matrix.length;
        if (this.positions.length !== n) {
            this.positions = [];
            const r = Math.min(this.width, this.height) / 2 - 60;
            for (let i = 0; i < n; i++) {
                const angle = (2 * Math.PI * i) / n - Math.PI / 2;
                this.positions.push({
                    x: this.width / 2 + r * Math.cos(angle),
                    y: this.height / 2 + r * Math.sin(angle),
                });
            }
            iterations = 200; // fresh layout gets a longer settle
        }
        this.relax(matrix, iterations);
        return this.positions.map((p) => ({ ...p }));
    }

    private relax(matrix: Matrix, iterations: number): void {
        const n = matrix.length;
        if (n <= 1) return;
        const pos = this.positions;
        const ideal = 110;
        for (let it = 0; it < iterations; it++) {
            const step = 0.02 * Math.max(0.2, 1 - it / iterations);
            const fx = new Array(n).fill(0);
            const fy = new Array(n).fill(0);
            for (let i = 0; i < n; i++) {
                for (let j = i + 1; j < n; j++) {
                    let dx = pos[i].x - pos[j].x;
                    let dy = pos[i].y - pos[j].y;
                    let d2 = dx * dx + dy * dy;
                    if (d2 < 1) {
                        dx = (i - j) * 0.3;
                        dy = 0.7;
                        d2 = 1;
                    }
                    const d = Math.sqrt(d2);
                    const repel = (ideal * ideal) / d2;
                    fx[i] += (dx / d) * repel;
                    fy[i] += (dy / d) * repel;
                    fx[j] -= (dx / d) * repel;
                    fy[j] -= (dy / d) * repel;
                    if (matrix[i][j] !== 0) {
                        const pull = (d - ideal) * 0.08;
                        fx[i] -= (dx / d) * pull * ideal;
                        fy[i] -= (dy / d) * pull * ideal;
                        fx[j] += (dx / d) * pull * ideal;
                        fy[j] += (dy / d) * pull * ideal;
                    }
                }
            }
            for (let i = 0; i < n; i++) {
                pos[i].x += Math.max(-15, Math.min(15, fx[i] * step));
                pos[i].y += Math.max(-15, Math.min(15, fy[i] * step));
                pos[i].x = Math.max(30, Math.min(this.width - 30, pos[i].x));
                pos[i].y = Math.max(30, Math.min(this.height - 30, pos[i].y));
            }
        }
    }
}
