// Entry point: wires the store to the document.
import { HttpClient } from "./client.js";
import { ExplorerStore } from "./store.js";
import {
  renderBanner,
  renderCompare,
  renderGauge,
  renderSliders,
  renderTornado,
} from "./render.js";

const SERVICE_BASE_URL = ""; // same origin by default; set at build time

function mount(): void {
  const app = document.getElementById("app");
  if (app === null) return;

  const store = new ExplorerStore(new HttpClient(SERVICE_BASE_URL), () => {
    const banner = document.getElementById("banner");
    const gauge = document.getElementById("gauge");
    const tornado = document.getElementById("tornado");
    const compare = document.getElementById("compare");
    if (banner) banner.innerHTML = renderBanner(store.state);
    if (gauge) gauge.innerHTML = renderGauge(store.state);
    if (tornado) tornado.innerHTML = renderTornado(store.state);
    if (compare) compare.innerHTML = renderCompare(store.state);
    syncSliders(store);
  });

  app.innerHTML = `
    <div id="banner"></div>
    <div id="sliders"></div>
    <div id="gauge"></div>
    <div id="tornado"></div>
    <div class="tray-controls">
      <button id="pin">pin baseline</button>
      <button id="swap">swap</button>
      <button id="unpin">unpin</button>
    </div>
    <div id="compare"></div>`;

  const sliders = document.getElementById("sliders")!;
  // rebuild the panel once the model arrives, then keep the inputs stable
  // so drags are not interrupted by re-renders
  const rebuild = () => {
    sliders.innerHTML = renderSliders(store.state);
    sliders.querySelectorAll<HTMLInputElement>("input[type=range]").forEach((input) => {
      input.addEventListener("input", () => {
        store.setSlider(Number(input.dataset.index), Number(input.value));
      });
    });
  };

  document.getElementById("pin")!.addEventListener("click", () => store.pinBaseline());
  document.getElementById("swap")!.addEventListener("click", () => store.swapBaseline());
  document.getElementById("unpin")!.addEventListener("click", () => store.unpinBaseline());

  store.init().then(rebuild);
}

function syncSliders(store: ExplorerStore): void {
  document
    .querySelectorAll<HTMLInputElement>("#sliders input[type=range]")
    .forEach((input) => {
      const i = Number(input.dataset.index);
      input.value = String(store.state.sliders[i]);
      const label = input.parentElement?.querySelector(".slider-value");
      if (label) label.textContent = store.state.sliders[i].toFixed(2);
    });
}

mount();
