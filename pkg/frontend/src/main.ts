/** Bootstrap: wires controls, the API client, the state transitions, and
 * the renderers together. All interaction is request/response; a new
 * explain/what-if interaction cancels the previous pending one. */

import { ApiClient, ApiError, isAbort } from "./api";
import * as s from "./state";
import { barsView, scatterView, whatifView } from "./render";
import { renderBars, renderScatter, renderWhatif } from "./dom";
import "./style.css";

const api = new ApiClient("");
let state = s.initialState;

const $ = <T extends HTMLElement>(id: string): T =>
  document.getElementById(id) as T;

const els = {
  dataset: $<HTMLSelectElement>("dataset"),
  method: $<HTMLSelectElement>("method"),
  components: $<HTMLInputElement>("components"),
  k: $<HTMLInputElement>("k"),
  fit: $<HTMLButtonElement>("fit"),
  status: $<HTMLElement>("status"),
  scatter: $<HTMLElement>("scatter"),
  bars: $<HTMLElement>("bars"),
  whatif: $<HTMLElement>("whatif"),
};

function redraw(): void {
  renderScatter(els.scatter, scatterView(state), { onSelect: selectPoint });
  renderBars(els.bars, barsView(state), {
    onComponent: (component) => {
      state = s.componentChosen(state, component);
      redraw();
    },
  });
  renderWhatif(els.whatif, whatifView(state), {
    onEdit: (feature, raw) => {
      state = s.tweakEdited(state, feature, raw);
      redrawControlsOnly();
    },
    onMean: (feature) => {
      state = s.tweakToMean(state, feature);
      redraw();
    },
    onApply: applyTweak,
    onReset: () => {
      state = s.tweakReset(state);
      redraw();
    },
  });
  els.status.textContent = state.error
    ? `error (${state.error.where}): ${state.error.message}`
    : state.busy
      ? `waiting for ${state.busy}…`
      : "";
}

/** Keep focus in the edited input: only refresh status + apply button. */
function redrawControlsOnly(): void {
  const view = whatifView(state);
  const apply = els.whatif.querySelector<HTMLButtonElement>(
    ".actions button",
  );
  if (apply) apply.disabled = !view.canApply || view.busy;
}

function fail(err: unknown, fallbackWhere: string): void {
  if (isAbort(err)) return;
  const where = err instanceof ApiError ? err.where : fallbackWhere;
  const message = err instanceof Error ? err.message : String(err);
  state = s.requestFailed(state, where, message);
  redraw();
}

async function loadDataset(): Promise<void> {
  try {
    const dataset = await api.loadBundled(els.dataset.value);
    state = s.datasetLoaded(state, dataset);
    redraw();
  } catch (err) {
    fail(err, "dataset");
  }
}

async function fitModel(): Promise<void> {
  if (!state.dataset) await loadDataset();
  if (!state.dataset) return;
  try {
    const model = await api.fitDr({
      dataset_id: state.dataset.dataset_id,
      method: els.method.value as "pca" | "kpca" | "ae",
      n_components: Number(els.components.value),
      fit_predictor: state.dataset.target !== null,
    });
    state = s.modelFitted(state, model);
    redraw();
  } catch (err) {
    fail(err, "model");
  }
}

function selectPoint(index: number): void {
  const model = state.model;
  if (!model) return;
  state = s.pointSelected(state, index);
  redraw();
  api
    .explain({
      model_id: model.model_id,
      instance_index: index,
      k: els.k.value ? Number(els.k.value) : undefined,
      auto_alpha: true,
    })
    .then((info) => {
      state = s.explanationLoaded(state, info);
      redraw();
    })
    .catch((err) => fail(err, "explain"));
}

function applyTweak(): void {
  const tweak = state.tweak;
  if (!state.model || state.selected === null || !tweak) return;
  const req = {
    model_id: state.model.model_id,
    instance_index: state.selected,
    feature: tweak.feature,
    ...(tweak.toMean
      ? { to_mean: true }
      : { value: Number(tweak.raw) }),
  };
  if (!tweak.toMean && !Number.isFinite(Number(tweak.raw))) {
    state = s.requestFailed(state, "value", `not a number: ${tweak.raw}`);
    redraw();
    return;
  }
  state = s.whatifStarted(state);
  redraw();
  api
    .whatif(req)
    .then((info) => {
      state = s.whatifApplied(state, info);
      redraw();
    })
    .catch((err) => fail(err, "whatif"));
}

els.fit.addEventListener("click", () => void fitModel());
els.dataset.addEventListener("change", () => void loadDataset());
void loadDataset();
redraw();
