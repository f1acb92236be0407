/** DOM bindings: materialize the pure view models into elements.
 *
 * Every displayed number is written with String(value) on the verbatim
 * API value; scaling only ever affects positions and bar lengths.
 */

import type { BarsView, ScatterView, WhatifView } from "./render";

const SVG = "http://www.w3.org/2000/svg";
const PLOT = 640;
const PAD = 24;

export interface ScatterHandlers {
  onSelect: (index: number) => void;
}

function scale(v: number, [lo, hi]: [number, number], flip = false): number {
  const t = hi > lo ? (v - lo) / (hi - lo) : 0.5;
  return PAD + (flip ? 1 - t : t) * (PLOT - 2 * PAD);
}

function pointColor(colorT: number | null): string {
  if (colorT === null) return "#5577aa";
  return `hsl(${Math.round(240 - 240 * colorT)} 70% 45%)`;
}

export function renderScatter(
  host: HTMLElement,
  view: ScatterView,
  handlers: ScatterHandlers,
): void {
  host.textContent = "";
  if (view.kind === "empty") {
    const p = document.createElement("p");
    p.className = "empty";
    p.textContent = view.message ?? "";
    host.append(p);
    return;
  }
  if (view.kind === "table") {
    const p = document.createElement("p");
    p.className = "note";
    p.textContent = view.message ?? "";
    const table = document.createElement("table");
    table.className = "coords";
    for (const row of view.rows) {
      const tr = document.createElement("tr");
      if (row.selected) tr.className = "selected";
      tr.dataset.index = String(row.index);
      const th = document.createElement("th");
      th.textContent = `#${row.index}`;
      tr.append(th);
      for (const c of row.coords) {
        const td = document.createElement("td");
        td.textContent = String(c);
        td.dataset.value = String(c);
        tr.append(td);
      }
      tr.addEventListener("click", () => handlers.onSelect(row.index));
      table.append(tr);
    }
    host.append(p, table);
    return;
  }

  const svg = document.createElementNS(SVG, "svg");
  svg.setAttribute("viewBox", `0 0 ${PLOT} ${PLOT}`);
  svg.setAttribute("class", "scatter");
  const extent = view.extent!;
  for (const p of view.points) {
    const c = document.createElementNS(SVG, "circle");
    c.setAttribute("cx", String(scale(p.x, extent.x)));
    c.setAttribute("cy", String(scale(p.y, extent.y, true)));
    c.setAttribute("r", p.selected ? "7" : "4");
    c.setAttribute("fill", pointColor(p.colorT));
    c.setAttribute("class", p.selected ? "pt selected" : "pt");
    c.dataset.index = String(p.index);
    c.dataset.x = String(p.x);
    c.dataset.y = String(p.y);
    if (p.t !== null) c.dataset.target = String(p.t);
    c.addEventListener("click", () => handlers.onSelect(p.index));
    svg.append(c);
  }
  if (view.ghost) {
    const g = document.createElementNS(SVG, "circle");
    g.setAttribute("cx", String(scale(view.ghost.x, extent.x)));
    g.setAttribute("cy", String(scale(view.ghost.y, extent.y, true)));
    g.setAttribute("r", "9");
    g.setAttribute("class", "ghost");
    g.dataset.x = String(view.ghost.x);
    g.dataset.y = String(view.ghost.y);
    svg.append(g);
  }
  if (view.tweaked) {
    const t = document.createElementNS(SVG, "circle");
    t.setAttribute("cx", String(scale(view.tweaked.x, extent.x)));
    t.setAttribute("cy", String(scale(view.tweaked.y, extent.y, true)));
    t.setAttribute("r", "9");
    t.setAttribute("class", "tweaked");
    t.dataset.x = String(view.tweaked.x);
    t.dataset.y = String(view.tweaked.y);
    svg.append(t);
  }
  host.append(svg);
}

export interface BarsHandlers {
  onComponent: (component: number) => void;
}

export function renderBars(
  host: HTMLElement,
  view: BarsView,
  handlers: BarsHandlers,
): void {
  host.textContent = "";
  if (view.kind === "hidden") {
    const p = document.createElement("p");
    p.className = "empty";
    p.textContent = "select a point to see its local explanation";
    host.append(p);
    return;
  }

  const head = document.createElement("div");
  head.className = "bars-head";
  const select = document.createElement("select");
  for (let i = 0; i < view.componentCount; i += 1) {
    const opt = document.createElement("option");
    opt.value = String(i);
    opt.textContent = `component ${i + 1}`;
    opt.selected = i === view.component;
    select.append(opt);
  }
  select.addEventListener("change", () =>
    handlers.onComponent(Number(select.value)),
  );
  const meta = document.createElement("span");
  meta.className = "meta";
  meta.textContent =
    `alpha ${String(view.alpha)} · instance difference ` +
    String(view.instanceDifference);
  head.append(select, meta);
  host.append(head);

  if (view.note) {
    const note = document.createElement("p");
    note.className = "note";
    note.textContent = view.note;
    host.append(note);
  }
  const list = document.createElement("div");
  list.className = "bars";
  for (const bar of view.bars) {
    const row = document.createElement("div");
    row.className = "bar-row";
    row.dataset.feature = String(bar.feature);
    const label = document.createElement("span");
    label.className = "bar-label";
    label.textContent = bar.name;
    const track = document.createElement("div");
    track.className = "bar-track";
    const fill = document.createElement("div");
    fill.className = bar.negative ? "bar-fill negative" : "bar-fill";
    fill.style.width = `${(bar.widthT * 100).toFixed(1)}%`;
    track.append(fill);
    const value = document.createElement("span");
    value.className = "bar-value";
    value.textContent = String(bar.value);
    value.dataset.value = String(bar.value);
    row.append(label, track, value);
    list.append(row);
  }
  host.append(list);
}

export interface WhatifHandlers {
  onEdit: (feature: number, raw: string) => void;
  onMean: (feature: number) => void;
  onApply: () => void;
  onReset: () => void;
}

export function renderWhatif(
  host: HTMLElement,
  view: WhatifView,
  handlers: WhatifHandlers,
): void {
  host.textContent = "";
  if (view.kind === "hidden") {
    const p = document.createElement("p");
    p.className = "empty";
    p.textContent = "select a point to try feature tweaks";
    host.append(p);
    return;
  }

  const table = document.createElement("table");
  table.className = "whatif";
  for (const row of view.rows) {
    const tr = document.createElement("tr");
    if (row.edited) tr.className = "edited";
    const name = document.createElement("th");
    name.textContent = row.name;
    const cell = document.createElement("td");
    const input = document.createElement("input");
    input.type = "text";
    input.value = row.meanRequested ? "" : row.raw;
    input.placeholder = row.meanRequested
      ? "dataset mean"
      : String(row.original);
    input.dataset.original = String(row.original);
    input.addEventListener("input", () =>
      handlers.onEdit(row.feature, input.value),
    );
    cell.append(input);
    const meanTd = document.createElement("td");
    const mean = document.createElement("button");
    mean.type = "button";
    mean.textContent = "set to mean";
    mean.addEventListener("click", () => handlers.onMean(row.feature));
    meanTd.append(mean);
    tr.append(name, cell, meanTd);
    table.append(tr);
  }
  host.append(table);

  const actions = document.createElement("div");
  actions.className = "actions";
  const apply = document.createElement("button");
  apply.type = "button";
  apply.textContent = view.busy ? "applying…" : "apply";
  apply.disabled = !view.canApply || view.busy;
  apply.addEventListener("click", handlers.onApply);
  const reset = document.createElement("button");
  reset.type = "button";
  reset.textContent = "reset";
  reset.addEventListener("click", handlers.onReset);
  actions.append(apply, reset);
  host.append(actions);

  if (view.error) {
    const err = document.createElement("p");
    err.className = "error";
    err.textContent = view.error;
    host.append(err);
  }
  if (view.result) {
    const res = document.createElement("dl");
    res.className = "result";
    const pairs: [string, string][] = [
      ["before", view.result.before.map(String).join(", ")],
      ["after", view.result.after.map(String).join(", ")],
      ["applied value", String(view.result.appliedValue)],
    ];
    if (view.result.predictionBefore !== null) {
      pairs.push(["prediction before", String(view.result.predictionBefore)]);
      pairs.push(["prediction after", String(view.result.predictionAfter)]);
    }
    for (const [k, v] of pairs) {
      const dt = document.createElement("dt");
      dt.textContent = k;
      const dd = document.createElement("dd");
      dd.textContent = v;
      res.append(dt, dd);
    }
    host.append(res);
  }
}
