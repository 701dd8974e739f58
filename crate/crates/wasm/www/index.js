import init, { classify, meet, pl_meet } from "./pkg/rrorder_wasm.js";

const $ = (id) => document.getElementById(id);

const RINGS = {
  "a = b mod 2 in Z^2": { moduli: [0, 0], constraints: [[1, 2, 2]] },
  "Z^2": { moduli: [0, 0] },
  "Z/6": { moduli: [6] },
  "(Z/2)^3": { moduli: [2, 2, 2] },
  "width 3, not weakly Baer": { moduli: [0, 0, 0], constraints: [[1, 2, 2], [2, 3, 3]] },
  "width 4, x3 = x4 mod 2": { moduli: [0, 0, 0, 0], constraints: [[3, 4, 2]] },
};

const PL = {
  "shared hump": {
    f: { domain: [0, 2], pieces: [{ until: 1, coeffs: [0, 1, -1] }, { until: 2, coeffs: [2, -3, 1] }] },
    g: { domain: [0, 2], pieces: [{ until: 1, coeffs: [0, 1, -1] }, { until: 2, coeffs: [-2, 3, -1] }] },
    window: "",
  },
  "restriction breaks meets": {
    f: { domain: [-1, 1], pieces: [{ until: 1, coeffs: ["1/2", -1] }] },
    g: {
      domain: [-1, 1],
      pieces: [
        { until: 0, coeffs: ["1/2", -2] },
        { until: "1/2", coeffs: ["1/2", -1] },
        { until: 1, coeffs: ["1/4", 0, -1] },
      ],
    },
    window: "[0, 1]",
  },
  "crossing lines": {
    f: { domain: [0, 1], pieces: [{ until: 1, coeffs: [0, 1] }] },
    g: { domain: [0, 1], pieces: [{ until: 1, coeffs: [1, -1] }] },
    window: "",
  },
};

function fillSelect(select, table, onPick) {
  for (const name of Object.keys(table)) {
    const opt = document.createElement("option");
    opt.textContent = name;
    select.appendChild(opt);
  }
  select.addEventListener("change", () => onPick(table[select.value]));
  onPick(table[select.value]);
}

function show(out, f, hide = []) {
  out.classList.remove("err");
  try {
    const v = JSON.parse(f());
    out.textContent = JSON.stringify(v, (k, x) => (hide.includes(k) ? undefined : x), 2);
    return v;
  } catch (e) {
    out.classList.add("err");
    out.textContent = String(e.message ?? e);
    return null;
  }
}

function draw(canvas, series) {
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  ctx.clearRect(0, 0, w, h);
  const pts = series.flatMap((s) => s.points);
  if (pts.length === 0) return;
  let [x0, x1] = [Math.min(...pts.map((p) => p[0])), Math.max(...pts.map((p) => p[0]))];
  let [y0, y1] = [Math.min(0, ...pts.map((p) => p[1])), Math.max(0, ...pts.map((p) => p[1]))];
  if (y1 - y0 < 1e-9) y1 = y0 + 1;
  const pad = 24;
  const sx = (x) => pad + ((x - x0) / (x1 - x0 || 1)) * (w - 2 * pad);
  const sy = (y) => h - pad - ((y - y0) / (y1 - y0)) * (h - 2 * pad);
  ctx.strokeStyle = "#999";
  ctx.lineWidth = 1;
  ctx.beginPath();
  ctx.moveTo(pad, sy(0));
  ctx.lineTo(w - pad, sy(0));
  ctx.stroke();
  ctx.fillStyle = "#666";
  ctx.font = "12px sans-serif";
  ctx.fillText(String(x0), pad, h - 6);
  ctx.fillText(String(x1), w - pad - 20, h - 6);
  for (const s of series) {
    ctx.strokeStyle = s.color;
    ctx.lineWidth = s.width;
    ctx.setLineDash(s.dash ?? []);
    ctx.beginPath();
    s.points.forEach(([x, y], i) => (i ? ctx.lineTo(sx(x), sy(y)) : ctx.moveTo(sx(x), sy(y))));
    ctx.stroke();
  }
  ctx.setLineDash([]);
}

async function main() {
  await init();

  fillSelect($("ring-preset"), RINGS, (r) => ($("ring").value = JSON.stringify(r)));
  $("classify").addEventListener("click", () => show($("classify-out"), () => classify($("ring").value)));
  $("meet").addEventListener("click", () => show($("meet-out"), () => meet($("ring").value, $("a").value, $("b").value)));

  fillSelect($("pl-preset"), PL, (p) => {
    $("f").value = JSON.stringify(p.f);
    $("g").value = JSON.stringify(p.g);
    $("window").value = p.window;
  });
  $("plmeet").addEventListener("click", () => {
    const span = $("window").value.trim() || undefined;
    const v = show($("pl-out"), () => pl_meet($("f").value, $("g").value, 400, span), ["samples"]);
    if (!v) return;
    const series = [
      { points: v.samples.f, color: "#1f77b4", width: 1.5 },
      { points: v.samples.g, color: "#ff7f0e", width: 1.5 },
      { points: v.samples.meet, color: "#2ca02c", width: 3.5 },
    ];
    if (v.restricted) series.push({ points: v.restricted.samples, color: "#9467bd", width: 2.5, dash: [6, 4] });
    draw($("plot"), series);
  });

  $("classify").click();
  $("meet").click();
  $("plmeet").click();
}

main();
