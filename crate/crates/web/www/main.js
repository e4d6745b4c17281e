import init, { spectrum, resonance_map, lzs_population_map, map_field_max } from "./pkg/floquet_lzs_web.js";

const field = (sec, name) => sec.querySelector(`[name=${name}]`);
const num = (sec, name) => Number(field(sec, name).value);

function status(sec, text, isError = false) {
  const el = sec.querySelector(".status");
  el.textContent = text;
  el.className = isError ? "status error" : "status";
}

function timed(sec, work) {
  const t0 = performance.now();
  try {
    work();
    status(sec, `${(performance.now() - t0).toFixed(0)} ms`);
  } catch (e) {
    status(sec, String(e.message ?? e), true);
  }
}

function drawSpectrum(canvas, triples) {
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  ctx.clearRect(0, 0, w, h);
  if (triples.length === 0) return;
  let lo = Infinity, hi = -Infinity, top = 0;
  for (let i = 0; i < triples.length; i += 3) {
    lo = Math.min(lo, triples[i + 1]);
    hi = Math.max(hi, triples[i + 1]);
    top = Math.max(top, triples[i + 2]);
  }
  const pad = Math.max(1, 0.05 * (hi - lo));
  lo -= pad;
  hi += pad;
  const x = (e) => ((e - lo) / (hi - lo)) * (w - 20) + 10;
  for (let i = 0; i < triples.length; i += 3) {
    const [n, e, p] = [triples[i], triples[i + 1], triples[i + 2]];
    ctx.fillStyle = n === 0 ? "#1f5fd1" : "#333";
    const bar = (p / top) * (h - 30);
    ctx.fillRect(x(e) - 1, h - 20 - bar, 2, bar);
  }
  ctx.fillStyle = "#666";
  ctx.fillText(`${lo.toFixed(1)} MHz`, 10, h - 5);
  ctx.fillText(`${hi.toFixed(1)} MHz`, w - 70, h - 5);
}

// Row-major values with F_rf as the slow index; F_rf grows upward.
function drawMap(canvas, values, steps) {
  const ctx = canvas.getContext("2d");
  const img = ctx.createImageData(steps, steps);
  for (let j = 0; j < steps; j++) {
    for (let i = 0; i < steps; i++) {
      const v = Math.max(0, Math.min(1, values[j * steps + i]));
      const o = 4 * ((steps - 1 - j) * steps + i);
      img.data[o] = 255 * v;
      img.data[o + 1] = 255 * v * v;
      img.data[o + 2] = 255 * (1 - v) * 0.6;
      img.data[o + 3] = 255;
    }
  }
  const off = new OffscreenCanvas(steps, steps);
  off.getContext("2d").putImageData(img, 0, 0);
  ctx.imageSmoothingEnabled = false;
  ctx.drawImage(off, 0, 0, canvas.width, canvas.height);
  ctx.fillStyle = "#fff";
  ctx.fillText(`F_s 0..${map_field_max()} V/cm, F_rf upward`, 6, canvas.height - 6);
}

function wireSpectrum() {
  const sec = document.getElementById("spectrum");
  const run = () => {
    for (const name of ["fs", "frf"]) {
      field(sec, name).nextElementSibling.textContent = Number(field(sec, name).value).toFixed(3);
    }
    timed(sec, () => {
      const t = spectrum(field(sec, "preset").value, num(sec, "omega"), num(sec, "fs"), num(sec, "frf"));
      drawSpectrum(sec.querySelector("canvas"), t);
    });
  };
  sec.querySelectorAll("input, select").forEach((el) => el.addEventListener("input", run));
  run();
}

function wireMap(id, compute) {
  const sec = document.getElementById(id);
  sec.querySelector("button").addEventListener("click", () => {
    status(sec, "computing...");
    // Let the status repaint before the synchronous computation.
    setTimeout(() => timed(sec, () => {
      const steps = num(sec, "steps");
      drawMap(sec.querySelector("canvas"), compute(sec, steps), steps);
    }), 10);
  });
}

await init();
wireSpectrum();
wireMap("resonance", (sec, steps) =>
  resonance_map(field(sec, "preset").value, num(sec, "omega"), num(sec, "omega0"), steps));
wireMap("lzs", (sec, steps) =>
  lzs_population_map(field(sec, "preset").value, num(sec, "omega"), num(sec, "cycles"), steps));
