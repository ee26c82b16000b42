// Thin HTML layer over the view models. Kept free of state and requests;
// main.ts owns wiring and event handlers.
import type { ExplorerState } from "./store.js";
import {
  compareView,
  gaugeView,
  sliderGroups,
  tornadoView,
} from "./viewmodel.js";

function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function renderSliders(state: ExplorerState): string {
  if (state.model === null) return "<p>loading model…</p>";
  const indexOf = new Map(state.model.input_names.map((n, i) => [n, i]));
  return sliderGroups(state.model)
    .map((group) => {
      const rows = group.variables
        .map((v) => {
          const i = indexOf.get(v.name) ?? 0;
          const value = state.sliders[i];
          return `
            <label class="slider-row" title="${esc(v.measurement)}">
              <span class="slider-name">${esc(v.name)}</span>
              <input type="range" min="0" max="1" step="0.01"
                     data-index="${i}" value="${value}">
              <span class="slider-value">${value.toFixed(2)}</span>
            </label>`;
        })
        .join("");
      return `<section class="group ${group.polarity}">
        <h2>${esc(group.heading)}</h2>${rows}</section>`;
    })
    .join("");
}

export function renderGauge(state: ExplorerState): string {
  const view = gaugeView(state.prediction);
  const ticks = view.ticks
    .map(
      (t) =>
        `<li class="tick${t.highlighted ? " highlighted" : ""}">
          ${t.value} — ${esc(t.label)}</li>`,
    )
    .join("");
  return `<div class="gauge">
    <div class="score">${esc(view.scoreText)}</div>
    <ul class="ticks">${ticks}</ul>
  </div>`;
}

export function renderTornado(state: ExplorerState): string {
  if (state.prediction === null || state.model === null) return "";
  const bars = tornadoView(state.prediction, state.model);
  const maxMagnitude = Math.max(1e-12, ...bars.map((b) => b.magnitude));
  const rows = bars
    .map((b) => {
      const width = (100 * b.magnitude) / maxMagnitude;
      return `<div class="bar-row ${b.polarity} ${b.direction}">
        <span class="bar-name">${esc(b.name)}</span>
        <span class="bar" style="width:${width.toFixed(1)}%"></span>
        <span class="bar-value">${b.gradient}</span>
      </div>`;
    })
    .join("");
  return `<div class="tornado">${rows}</div>`;
}

export function renderCompare(state: ExplorerState): string {
  const view = compareView(state.comparison, state.model);
  if (!view.visible) return "";
  const rows = view.rows
    .map(
      (r) => `<tr><td>${esc(r.variable)}</td><td>${r.baseline}</td>
        <td>${r.current}</td><td>${r.delta}</td></tr>`,
    )
    .join("");
  return `<div class="compare">
    <p>baseline ${view.baselineAcceptance} → current ${view.currentAcceptance}
       (Δ ${view.acceptanceDelta})${view.clamped ? " [clamped]" : ""}</p>
    <table>
      <thead><tr><th>variable</th><th>baseline</th><th>current</th><th>Δ</th></tr></thead>
      <tbody>${rows}</tbody>
    </table>
  </div>`;
}

export function renderBanner(state: ExplorerState): string {
  return state.serviceError
    ? `<div class="banner">service unreachable; controls stay live and retry on change</div>`
    : "";
}
