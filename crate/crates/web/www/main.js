import init, { profile, analyze, classify } from "./pkg/wordstat_web.js";

const $ = (id) => document.getElementById(id);
const KINDS = ["periodic", "sparse", "random", "literal"];

function showFields() {
  const kind = $("kind").value;
  for (const k of KINDS) {
    for (const el of document.querySelectorAll("." + k)) {
      el.style.display = k === kind ? "" : "none";
    }
  }
  $("length").parentElement.style.display = kind === "literal" ? "none" : "";
}

function request(extra = {}) {
  const kind = $("kind").value;
  if (kind === "literal") {
    return JSON.stringify({ word: $("word").value, ...extra });
  }
  return JSON.stringify({
    kind,
    length: Number($("length").value),
    eta: $("eta").value,
    zeta: $("zeta").value,
    k1: Number($("k1").value),
    ratio: $("ratio").value,
    seed: Number($("seed").value),
    ...extra,
  });
}

function run(label, fn) {
  $("status").textContent = label + "…";
  $("status").className = "";
  setTimeout(() => {
    const t0 = performance.now();
    try {
      fn();
      $("status").textContent = `${label} done in ${(performance.now() - t0).toFixed(0)} ms`;
    } catch (e) {
      $("status").textContent = String(e);
      $("status").className = "error";
    }
  }, 0);
}

function plot(data) {
  const canvas = $("chart");
  const ctx = canvas.getContext("2d");
  const w = canvas.width, h = canvas.height, m = 50;
  ctx.clearRect(0, 0, w, h);

  const pts = data.n.map((n, i) => [n, data.sigma_over_n3[i]]).filter(([x, y]) => x > 0 && y > 0);
  if (pts.length < 2) return;
  const lx = pts.map(([x]) => Math.log10(x));
  const ys = pts.map(([, y]) => y);
  const [x0, x1] = [Math.min(...lx), Math.max(...lx)];
  let [y0, y1] = [Math.min(...ys), Math.max(...ys)];
  if (y1 - y0 < 1e-12) { y0 -= 0.5 * y0; y1 += 0.5 * y1; }
  const px = (x) => m + ((Math.log10(x) - x0) / (x1 - x0)) * (w - 2 * m);
  const py = (y) => h - m - ((y - y0) / (y1 - y0)) * (h - 2 * m);

  ctx.strokeStyle = "#000";
  ctx.beginPath();
  ctx.moveTo(m, m); ctx.lineTo(m, h - m); ctx.lineTo(w - m, h - m);
  ctx.stroke();

  ctx.fillStyle = "#000";
  ctx.font = "12px sans-serif";
  ctx.fillText(`n = ${pts[0][0]}`, m, h - m + 18);
  ctx.textAlign = "right";
  ctx.fillText(`n = ${pts[pts.length - 1][0]} (log scale)`, w - m, h - m + 18);
  ctx.fillText(y1.toPrecision(5), m - 4, m + 4);
  ctx.fillText(y0.toPrecision(5), m - 4, h - m);
  ctx.textAlign = "left";
  ctx.fillText("Σ / n³", m + 8, m - 10);

  ctx.strokeStyle = "#1f77b4";
  ctx.lineWidth = 1.5;
  ctx.beginPath();
  pts.forEach(([x, y], i) => (i ? ctx.lineTo(px(x), py(y)) : ctx.moveTo(px(x), py(y))));
  ctx.stroke();
}

await init();
$("kind").addEventListener("change", showFields);
showFields();

$("profile").onclick = () => run("profile", () => {
  const data = JSON.parse(profile(request()));
  plot(data);
  const last = data.n.length - 1;
  $("output").textContent =
    `${data.n.length} checkpoints; at n = ${data.n[last]}: Σ = ${data.sigma[last]}, ` +
    `Σ/n² = ${data.sigma_over_n2[last]}, Σ/n³ = ${data.sigma_over_n3[last]}`;
});

$("analyze").onclick = () => run("analyze", () => {
  $("output").textContent = JSON.stringify(JSON.parse(analyze(request())), null, 2);
});

$("classify").onclick = () => run("classify", () => {
  const minLength = Math.min(16384, Number($("length").value) || 16384);
  $("output").textContent = JSON.stringify(JSON.parse(classify(request({ min_length: minLength }))), null, 2);
});
