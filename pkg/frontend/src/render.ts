// SVG rendering of the current quiver with certificate highlights: motif
// arrows in bold, the two central cycles in distinct hues, weight-2 arrows
// as doubled strokes with a numeral.

import { Certificate, Matrix } from "./api.js";
import { Point } from "./layout.js";

const SVG = "http://www.w3.org/2000/svg";

export function roleColor(role: string | undefined): string {
    if (!role) return "#e8e8e8";
    if (role === "c" || role === "c'" || role === "c''" || role === "c'''") return "#f3c14b";
    if (role === "d" || role === "d'") return "#b08ae0";
    if (role === "dead") return "#9aa0a6";
    if (role === "apex") return "#8fd08f";
    if (role.startsWith("cycle:1")) return "#e57373";
    if (role.startsWith("cycle:2")) return "#64a5f5";
    if (role === "a" || role === "b") return "#ffb74d";
    return "#e8e8e8";
}

export interface RenderCallbacks {
    onVertexClick: (v: number) => void;
}

export function renderQuiver(
    svg: SVGSVGElement,
    matrix: Matrix,
    points: Point[],
    cert: Certificate | null,
    cb: RenderCallbacks,
): void {
    while (svg.firstChild) svg.removeChild(svg.firstChild);
    const n = matrix.length;
    const motif = new Set((cert?.motif_edges ?? []).map(([s, t]) => `${s},${t}`));
    defsArrowheads(svg);

    for (let s = 0; s < n; s++) {
        for (let t = 0; t < n; t++) {
            const w = matrix[s][t];
            if (w <= 0) continue;
            drawArrow(svg, points[s], points[t], w, motif.has(`${s},${t}`));
        }
    }
    for (let v = 0; v < n; v++) {
        const g = document.createElementNS(SVG, "g");
        g.setAttribute("cursor", "pointer");
        const circle = document.createElementNS(SVG, "circle");
        circle.setAttribute("cx", String(points[v].x));
        circle.setAttribute("cy", String(points[v].y));
        circle.setAttribute("r", "14");
        circle.setAttribute("fill", roleColor(cert?.roles[String(v)]));
        circle.setAttribute("stroke", "#333");
        const label = document.createElementNS(SVG, "text");
        label.setAttribute("x", String(points[v].x));
        label.setAttribute("y", String(points[v].y + 4));
        label.setAttribute("text-anchor", "middle");
        label.setAttribute("font-size", "12");
        label.textContent = String(v);
        g.appendChild(circle);
        g.appendChild(label);
        const role = cert?.roles[String(v)];
        if (role && role !== "body") {
            const tag = document.createElementNS(SVG, "text");
            tag.setAttribute("x", String(points[v].x));
            tag.setAttribute("y", String(points[v].y - 18));
            tag.setAttribute("text-anchor", "middle");
            tag.setAttribute("font-size", "10");
            tag.setAttribute("fill", "#555");
            tag.textContent = role;
            g.appendChild(tag);
        }
        g.addEventListener("click", () => cb.onVertexClick(v));
        svg.appendChild(g);
    }
}

function defsArrowheads(svg: SVGSVGElement): void {
    const defs = document.createElementNS(SVG, "defs");
    for (const [id, color] of [["arrow", "#444"], ["arrow-hot", "#c62828"]] as const) {
        const marker = document.createElementNS(SVG, "marker");
        marker.setAttribute("id", id);
        marker.setAttribute("viewBox", "0 0 10 10");
        marker.setAttribute("refX", "9");
        marker.setAttribute("refY", "5");
        marker.setAttribute("markerWidth", "7");
        marker.setAttribute("markerHeight", "7");
        marker.setAttribute("orient", "auto-start-reverse");
        const path = document.createElementNS(SVG, "path");
        path.setAttribute("d", "M 0 0 L 10 5 L 0 10 z");
        path.setAttribute("fill", color);
        marker.appendChild(path);
        defs.appendChild(marker);
    }
    svg.appendChild(defs);
}

function drawArrow(svg: SVGSVGElement, a: Point, b: Point, weight: number, hot: boolean): void {
    const dx = b.x - a.x;
    const dy = b.y - a.y;
    const d = Math.hypot(dx, dy) || 1;
    const ux = dx / d;
    const uy = dy / d;
    const margin = 17;
    const x1 = a.x + ux * margin;
    const y1 = a.y + uy * margin;
    const x2 = b.x - ux * margin;
    const y2 = b.y - uy * margin;
    const offsets = weight >= 2 ? [-3, 3] : [0];
    for (const off of offsets) {
        const line = document.createElementNS(SVG, "line");
        line.setAttribute("x1", String(x1 - uy * off));
        line.setAttribute("y1", String(y1 + ux * off));
        line.setAttribute("x2", String(x2 - uy * off));
        line.setAttribute("y2", String(y2 + ux * off));
        line.setAttribute("stroke", hot ? "#c62828" : "#444");
        line.setAttribute("stroke-width", hot ? "2.5" : "1.5");
        if (off === offsets[offsets.length - 1]) {
            line.setAttribute("marker-end", hot ? "url(#arrow-hot)" : "url(#arrow)");
        }
        svg.appendChild(line);
    }
    if (weight >= 2) {
        const label = document.createElementNS(SVG, "text");
        label.setAttribute("x", String((x1 + x2) / 2 + uy * 10));
        label.setAttribute("y", String((y1 + y2) / 2 - ux * 10));
        label.setAttribute("font-size", "11");
        label.setAttribute("text-anchor", "middle");
        label.textContent = String(weight);
        svg.appendChild(label);
    }
}
