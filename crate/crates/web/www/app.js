import init, { sphere_cone, verify_cylinder, classification_table } from "./pkg/gausslab_web.js";

const $ = (id) => document.getElementById(id);

function call(fn, ...args) {
  const out = JSON.parse(fn(...args));
  if (out.error) throw new Error(out.error);
  return out;
}

function showError(target, err) {
  target.textContent = String(err.message || err);
  target.className = "error";
}

function runSphere() {
  const out = $("sphere-out");
  out.className = "";
  try {
    out.textContent = JSON.stringify(call(sphere_cone, Number($("sphere-m").value)), null, 2);
  } catch (err) {
    showError(out, err);
  }
}

function plot(samples) {
  const svg = $("cyl-plot");
  svg.innerHTML = "";
  if (samples.length === 0) return;
  const w = 560, h = 200, pad = 24;
  const ys = samples.map((p) => p.residual_norm);
  const top = Math.max(...ys, 1e-12);
  const x = (s) => pad + ((s + 1) / 2) * (w - 2 * pad);
  const y = (r) => h - pad - (r / top) * (h - 2 * pad);
  const ns = "http://www.w3.org/2000/svg";
  const line = document.createElementNS(ns, "polyline");
  line.setAttribute("points", samples.map((p) => `${x(p.s)},${y(p.residual_norm)}`).join(" "));
  line.setAttribute("fill", "none");
  line.setAttribute("stroke", "#1f5fa8");
  line.setAttribute("stroke-width", "2");
  svg.appendChild(line);
  const label = document.createElementNS(ns, "text");
  label.setAttribute("x", pad);
  label.setAttribute("y", 14);
  label.setAttribute("font-size", "12");
  label.textContent = `|residual| along s (max ${top.toExponential(2)})`;
  svg.appendChild(label);
}

function runCylinder() {
  const verdict = $("cyl-verdict");
  verdict.className = "verdict";
  try {
    const out = call(verify_cylinder, Number($("cyl-a").value), Number($("cyl-b").value), Number($("cyl-c").value));
    verdict.textContent = out.verdict;
    $("cyl-detail").textContent = `(max residual ${out.max_residual.toExponential(3)}, ${out.points} points)`;
    plot(out.samples);
  } catch (err) {
    showError(verdict, err);
    $("cyl-detail").textContent = "";
  }
}

function table(title, rows) {
  const wrap = document.createElement("div");
  const h = document.createElement("h3");
  h.textContent = `${title} (${rows.length} rows)`;
  wrap.appendChild(h);
  if (rows.length === 0) return wrap;
  const t = document.createElement("table");
  const keys = Object.keys(rows[0]);
  const head = t.insertRow();
  for (const k of keys) {
    const th = document.createElement("th");
    th.textContent = k;
    head.appendChild(th);
  }
  for (const r of rows) {
    const tr = t.insertRow();
    for (const k of keys) {
      const v = r[k];
      tr.insertCell().textContent = typeof v === "number" ? v.toPrecision(10) : String(v);
    }
  }
  wrap.appendChild(t);
  return wrap;
}

function runTable() {
  const out = $("table-out");
  out.className = "";
  out.innerHTML = "";
  try {
    const res = call(classification_table, Number($("table-n").value));
    out.appendChild(table("Sphere links", res.sphere));
    out.appendChild(table("Type 3 (l = 3)", res.type3));
    out.appendChild(table("Takagi family (l = 4)", res.takagi));
  } catch (err) {
    showError(out, err);
  }
}

async function main() {
  try {
    await init();
  } catch (err) {
    showError($("status"), `Could not load the module: ${err}. Build it into www/pkg first (see README).`);
    return;
  }
  $("status").textContent = "Ready.";
  $("sphere-run").addEventListener("click", runSphere);
  $("cyl-run").addEventListener("click", runCylinder);
  $("table-run").addEventListener("click", runTable);
  runSphere();
  runCylinder();
  runTable();
}

main();
