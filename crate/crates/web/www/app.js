import init, { regionFlags, jointSteering, entropySamples, boundCurve } from "./pkg/cvinfo_web.js";

const $ = (id) => document.getElementById(id);
const GRID = 200;
const COLORS = { 1: "#c6dbef", 3: "#6baed6", 7: "#08519c" };

function drawRegion() {
  const c = parseFloat($("c").value);
  $("c-val").textContent = c.toFixed(2);
  const flags = regionFlags(c, 6, GRID);
  const canvas = $("region");
  const ctx = canvas.getContext("2d");
  const cell = canvas.width / GRID;
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  for (let i = 0; i < GRID; i++) {
    for (let j = 0; j < GRID; j++) {
      const color = COLORS[flags[i * GRID + j]];
      if (!color) continue;
      ctx.fillStyle = color;
      // a along x, b upward
      ctx.fillRect(i * cell, canvas.height - (j + 1) * cell, Math.ceil(cell), Math.ceil(cell));
    }
  }
  ctx.fillStyle = "#222";
  ctx.fillText("a →", canvas.width - 28, canvas.height - 6);
  ctx.fillText("b ↑", 4, 12);
}

function updateSteering() {
  const a = parseFloat($("a").value);
  const s = parseFloat($("s").value);
  $("a-val").textContent = a.toFixed(2);
  $("s-val").textContent = s.toFixed(2);
  const [gab, gcb, ssa] = jointSteering(a, s);
  $("gab").textContent = gab.toFixed(6);
  $("gcb").textContent = gcb.toFixed(6);
  $("ssa").textContent = ssa.toFixed(6);
}

let seed = 1;

function drawBounds() {
  const n = parseInt($("n").value, 10);
  $("n-val").textContent = n;
  const count = Math.max(1, Math.min(2000, parseInt($("count").value, 10) || 300));
  const nuMax = Math.max(1, parseFloat($("numax").value) || 4);
  const pts = entropySamples(n, count, seed, nuMax);
  let mMax = 1;
  for (let k = 0; k < pts.length; k += 2) mMax = Math.max(mMax, pts[k]);
  mMax *= 1.05;
  const lower = boundCurve(1, mMax, 200);
  const upper = boundCurve(n, mMax, 200);
  let hMax = 1;
  for (let k = 1; k < upper.length; k += 2) hMax = Math.max(hMax, upper[k]);

  const canvas = $("bounds");
  const ctx = canvas.getContext("2d");
  const pad = 36;
  const sx = (m) => pad + (m / mMax) * (canvas.width - 2 * pad);
  const sy = (h) => canvas.height - pad - (h / hMax) * (canvas.height - 2 * pad);
  ctx.clearRect(0, 0, canvas.width, canvas.height);

  ctx.strokeStyle = "#999";
  ctx.beginPath();
  ctx.moveTo(sx(0), sy(hMax));
  ctx.lineTo(sx(0), sy(0));
  ctx.lineTo(sx(mMax), sy(0));
  ctx.stroke();
  ctx.fillStyle = "#222";
  ctx.fillText("M", canvas.width - pad + 6, sy(0) + 4);
  ctx.fillText("H", sx(0) - 4, pad - 8);
  ctx.fillText(mMax.toFixed(2), sx(mMax) - 20, sy(0) + 16);
  ctx.fillText(hMax.toFixed(2), 2, sy(hMax) + 4);

  const curve = (xs, color, label) => {
    ctx.strokeStyle = color;
    ctx.lineWidth = 2;
    ctx.beginPath();
    for (let k = 0; k < xs.length; k += 2) {
      const f = k === 0 ? "moveTo" : "lineTo";
      ctx[f](sx(xs[k]), sy(xs[k + 1]));
    }
    ctx.stroke();
    ctx.lineWidth = 1;
    ctx.fillStyle = color;
    ctx.fillText(label, sx(xs[xs.length - 2]) - 30, sy(xs[xs.length - 1]) - 6);
  };
  curve(upper, "#d62728", `f${n}(M)`);
  curve(lower, "#1f77b4", "f1(M)");

  ctx.fillStyle = "rgba(0,0,0,0.55)";
  for (let k = 0; k < pts.length; k += 2) {
    ctx.fillRect(sx(pts[k]) - 1.5, sy(pts[k + 1]) - 1.5, 3, 3);
  }
}

function guard(f) {
  return () => {
    try {
      $("error").textContent = "";
      f();
    } catch (e) {
      $("error").textContent = String(e.message ?? e);
    }
  };
}

await init();
$("c").addEventListener("input", guard(drawRegion));
$("a").addEventListener("input", guard(updateSteering));
$("s").addEventListener("input", guard(updateSteering));
$("n").addEventListener("input", guard(drawBounds));
$("count").addEventListener("change", guard(drawBounds));
$("numax").addEventListener("change", guard(drawBounds));
$("resample").addEventListener("click", guard(() => { seed += 1000; drawBounds(); }));
guard(drawRegion)();
guard(updateSteering)();
guard(drawBounds)();
