// Built with `wasm-pack build --target web --out-dir www/pkg` from crates/wasm.
import init, { warpView, dendrogram, ratioHeatmap, measureIds } from "./pkg/tsclust_wasm.js";

const $ = (id) => document.getElementById(id);
const REGIMES = ["none", "scale", "shift", "noise", "all"];
const SEED = 2024;

function fill(select, values, selected) {
  select.innerHTML = values.map((v) => `<option${v === selected ? " selected" : ""}>${v}</option>`).join("");
}

function call(f, ...args) {
  try {
    $("status").textContent = "";
    return JSON.parse(f(...args));
  } catch (e) {
    $("status").textContent = String(e);
    return null;
  }
}

function drawLines(canvas, series) {
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  ctx.clearRect(0, 0, w, h);
  const all = series.flatMap((s) => s.values);
  const lo = Math.min(...all), hi = Math.max(...all);
  const n = Math.max(...series.map((s) => s.values.length));
  const x = (i) => 10 + (i / (n - 1)) * (w - 20);
  const y = (v) => h - 10 - ((v - lo) / (hi - lo || 1)) * (h - 20);
  for (const s of series) {
    ctx.strokeStyle = s.color;
    ctx.lineWidth = 1.5;
    ctx.beginPath();
    s.values.forEach((v, i) => (i ? ctx.lineTo(x(i), y(v)) : ctx.moveTo(x(i), y(v))));
    ctx.stroke();
  }
}

function updateWarp() {
  const alpha = Number($("wv-alpha").value), delta = Number($("wv-delta").value);
  $("wv-alpha-out").textContent = alpha.toFixed(1);
  $("wv-delta-out").textContent = delta;
  const v = call(warpView, $("wv-wave").value, alpha, delta, $("wv-regime").value, SEED);
  if (!v) return;
  drawLines($("wv-canvas"), [
    { values: v.base, color: "#222" },
    { values: v.delayed, color: "#d62" },
    { values: v.warped, color: "#27c" },
  ]);
  const rows = v.ratios.map((r) => {
    const val = r.ratio === null ? `<td title="${r.error}">n/a</td>` : `<td class="${r.ratio > 1 ? "bad" : ""}">${r.ratio.toFixed(4)}</td>`;
    return `<tr><th>${r.measure}</th>${val}</tr>`;
  });
  $("wv-ratios").innerHTML = `<tr><th>measure</th><th>R</th></tr>` + rows.join("");
}

function updateDendrogram() {
  const v = call(dendrogram, $("dg-measure").value, $("dg-linkage").value, $("dg-mode").value, SEED);
  if (!v) return;
  const canvas = $("dg-canvas"), ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  ctx.clearRect(0, 0, w, h);
  const n = v.labels.length;
  // Leaf order: depth-first from the root.
  const order = [];
  const walk = (id) => (id < n ? order.push(id) : (walk(v.merges[id - n].left), walk(v.merges[id - n].right)));
  walk(n + v.merges.length - 1);
  const heights = v.merges.map((m) => m.height);
  const lo = Math.min(0, ...heights), hi = Math.max(...heights);
  const pos = new Map(order.map((id, k) => [id, 40 + (k * (w - 80)) / (n - 1)]));
  const y = (hgt) => h - 90 - ((hgt - lo) / (hi - lo || 1)) * (h - 110);
  const top = new Map(order.map((id) => [id, y(lo)]));
  ctx.strokeStyle = "#333";
  ctx.font = "11px sans-serif";
  v.merges.forEach((m, k) => {
    const id = n + k, ym = y(m.height);
    const xl = pos.get(m.left), xr = pos.get(m.right);
    ctx.beginPath();
    ctx.moveTo(xl, top.get(m.left)); ctx.lineTo(xl, ym); ctx.lineTo(xr, ym); ctx.lineTo(xr, top.get(m.right));
    ctx.stroke();
    pos.set(id, (xl + xr) / 2);
    top.set(id, ym);
  });
  order.forEach((id) => {
    ctx.save();
    ctx.translate(pos.get(id), h - 84);
    ctx.rotate(Math.PI / 3);
    ctx.fillText(v.labels[id], 0, 0);
    ctx.restore();
  });
  $("dg-newick").textContent = v.newick + (v.inversions ? `\n\n${v.inversions} height inversion(s)` : "");
}

function updateHeatmap() {
  const v = call(ratioHeatmap, $("hm-measure").value, $("hm-regime").value, SEED);
  if (!v) return;
  const canvas = $("hm-canvas"), ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  ctx.clearRect(0, 0, w, h);
  const cw = (w - 60) / v.alphas.length, ch = (h - 40) / v.deltas.length;
  ctx.font = "11px sans-serif";
  v.values.forEach((row, d) =>
    row.forEach((r, a) => {
      const x0 = 50 + a * cw, y0 = 10 + d * ch;
      if (r === null) {
        ctx.fillStyle = "#eee";
      } else {
        // Blue below 1, red above; saturates at 0 and 2.
        const t = Math.max(-1, Math.min(1, r - 1));
        ctx.fillStyle = t <= 0 ? `rgb(${255 + 200 * t},${255 + 120 * t},255)` : `rgb(255,${255 - 200 * t},${255 - 200 * t})`;
      }
      ctx.fillRect(x0, y0, cw - 1, ch - 1);
      ctx.fillStyle = "#000";
      ctx.fillText(r === null ? "–" : r.toFixed(2), x0 + 6, y0 + ch / 2 + 4);
    })
  );
  v.deltas.forEach((d, k) => ctx.fillText(`Δ=${d}`, 4, 10 + k * ch + ch / 2 + 4));
  v.alphas.forEach((a, k) => ctx.fillText(a.toFixed(1), 50 + k * cw + cw / 3, h - 14));
  $("hm-summary").textContent = `${v.exceed} of ${4 * 81} ratios above 1`;
}

async function main() {
  await init();
  const measures = measureIds().split(",");
  fill($("wv-regime"), REGIMES, "none");
  fill($("hm-regime"), REGIMES, "none");
  fill($("dg-measure"), measures, "cdm");
  fill($("hm-measure"), measures, "cdm");
  for (const id of ["wv-wave", "wv-alpha", "wv-delta", "wv-regime"]) $(id).addEventListener("input", updateWarp);
  for (const id of ["dg-measure", "dg-linkage", "dg-mode"]) $(id).addEventListener("input", updateDendrogram);
  for (const id of ["hm-measure", "hm-regime"]) $(id).addEventListener("input", updateHeatmap);
  $("status").textContent = "";
  updateWarp();
  updateDendrogram();
  updateHeatmap();
}

main();
