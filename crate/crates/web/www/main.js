import init, { machinTable, verify, golden, piDigits } from "./pkg/arctan_forge_web.js";

const $ = (id) => document.getElementById(id);

function guarded(out, f) {
  try {
    f();
  } catch (e) {
    out.textContent = `error: ${e}`;
  }
}

function renderTable() {
  const out = $("table-out");
  guarded(out, () => {
    const maxN = Number($("max-n").value);
    const maxX = Number($("max-x").value);
    const rows = JSON.parse(machinTable(maxN, maxX));
    const table = document.createElement("table");
    const head = table.insertRow();
    head.insertCell().outerHTML = "<th>n \\ x</th>";
    for (let x = 2; x <= maxX; x++) head.insertCell().outerHTML = `<th>${x}</th>`;
    let row;
    for (const cell of rows) {
      if (cell.x === 2) {
        row = table.insertRow();
        row.insertCell().outerHTML = `<th>${cell.n}</th>`;
      }
      const td = row.insertCell();
      td.textContent = cell.k;
      td.title = `${cell.identity}\nLehmer ${cell.lehmer === null ? "inf" : cell.lehmer.toFixed(4)}`;
    }
    out.replaceChildren(table);
  });
}

function showVerdict(json) {
  const v = JSON.parse(json);
  const out = $("verify-out");
  out.className = v.holds ? "ok" : "bad";
  const lines = [v.identity, v.holds ? "holds" : `fails: left side is ${v.actual}`];
  if (v.numeric) lines.push(`numeric residual ${v.numeric}`);
  out.textContent = lines.join("\n");
}

function runVerify() {
  guarded($("verify-out"), () => showVerdict(verify($("verify-in").value)));
}

function runGolden() {
  guarded($("verify-out"), () => {
    const json = golden($("golden-family").value, Number($("golden-k").value));
    $("verify-in").value = JSON.parse(json).identity;
    showVerdict(json);
  });
}

function runDigits() {
  const out = $("pi-out");
  guarded(out, () => {
    const t0 = performance.now();
    const r = JSON.parse(piDigits(Number($("pi-n").value), $("pi-x").value, Number($("pi-digits").value)));
    const ms = (performance.now() - t0).toFixed(1);
    out.textContent = `${r.identity}\n${r.count} digits in ${ms} ms\n\n${r.digits}`;
  });
}

await init();
$("table-go").onclick = renderTable;
$("verify-go").onclick = runVerify;
$("golden-go").onclick = runGolden;
$("pi-go").onclick = runDigits;
renderTable();
