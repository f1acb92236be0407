/** Pure view models derived from UiState.
 *
 * Every `value`, coordinate, or prediction in these structures is carried
 * verbatim from an API response; the only arithmetic here is presentational
 * (screen scaling fractions and color positions), which never feeds a
 * displayed number.
 */

import type { UiState } from "./state";

export interface ScatterPoint {
  index: number;
  /** Verbatim embedding coordinates. */
  x: number;
  y: number;
  /** Verbatim target value, when the dataset has one. */
  t: number | null;
  /** Position of `t` within the target range, for the palette only. */
  colorT: number | null;
  selected: boolean;
}

export interface ScatterView {
  kind: "scatter" | "table" | "empty";
  message: string | null;
  points: ScatterPoint[];
  /** Coordinate ranges for screen scaling (presentational). */
  extent: { x: [number, number]; y: [number, number] } | null;
  /** Table fallback rows for non-2-D embeddings (verbatim coordinates). */
  rows: { index: number; coords: number[]; selected: boolean }[];
  /** Original position of the tweaked instance (verbatim `before`). */
  ghost: { x: number; y: number } | null;
  /** Re-projected position after the tweak (verbatim `after`). */
  tweaked: { x: number; y: number } | null;
}

export function scatterView(state: UiState): ScatterView {
  const none: ScatterView = {
    kind: "empty",
    message: "fit a model to see its embedding",
    points: [],
    extent: null,
    rows: [],
    ghost: null,
    tweaked: null,
  };
  const model = state.model;
  if (!model) return none;
  if (model.embedding.length === 0) {
    return { ...none, message: "the embedding is empty" };
  }
  if (model.n_reduced !== 2) {
    return {
      ...none,
      kind: "table",
      message:
        `embedding has ${model.n_reduced} dimensions; the plot needs 2 — ` +
        "showing coordinates instead",
      rows: model.embedding.map((coords, index) => ({
        index,
        coords,
        selected: index === state.selected,
      })),
    };
  }

  const target = state.dataset?.target ?? null;
  let lo = Infinity;
  let hi = -Infinity;
  if (target) {
    for (const t of target) {
      if (t < lo) lo = t;
      if (t > hi) hi = t;
    }
  }
  const span = hi - lo;
  const points = model.embedding.map(([x, y], index) => {
    const t = target ? target[index] : null;
    return {
      index,
      x,
      y,
      t,
      colorT: t !== null && span > 0 ? (t - lo) / span : null,
      selected: index === state.selected,
    };
  });

  let xs: [number, number] = [points[0].x, points[0].x];
  let ys: [number, number] = [points[0].y, points[0].y];
  for (const p of points) {
    xs = [Math.min(xs[0], p.x), Math.max(xs[1], p.x)];
    ys = [Math.min(ys[0], p.y), Math.max(ys[1], p.y)];
  }

  const w = state.whatif;
  return {
    kind: "scatter",
    message: null,
    points,
    extent: { x: xs, y: ys },
    rows: [],
    ghost: w ? { x: w.before[0], y: w.before[1] } : null,
    tweaked: w ? { x: w.after[0], y: w.after[1] } : null,
  };
}

export interface Bar {
  feature: number;
  name: string;
  /** Verbatim slope entry. */
  value: number;
  /** |value| relative to the row's largest |value| (bar length). */
  widthT: number;
  negative: boolean;
}

export interface BarsView {
  kind: "bars" | "hidden";
  component: number;
  componentCount: number;
  /** Sorted by |value| descending; ties keep feature order. */
  bars: Bar[];
  allZero: boolean;
  note: string | null;
  /** Verbatim regularization strength used by the surrogate. */
  alpha: number | null;
  /** Verbatim surrogate-vs-model projection distance. */
  instanceDifference: number | null;
}

export function barsView(state: UiState): BarsView {
  const info = state.explanation;
  if (!info) {
    return {
      kind: "hidden",
      component: 0,
      componentCount: 0,
      bars: [],
      allZero: false,
      note: null,
      alpha: null,
      instanceDifference: null,
    };
  }
  const row = info.explanation.slopes[state.component];
  const names = state.dataset?.feature_names ?? [];
  let peak = 0;
  for (const v of row) peak = Math.max(peak, Math.abs(v));
  const allZero = peak === 0;

  const bars = row
    .map((value, feature) => ({
      feature,
      name: names[feature] ?? `f${feature}`,
      value,
      widthT: allZero ? 0 : Math.abs(value) / peak,
      negative: value < 0,
    }))
    .sort(
      (a, b) =>
        Math.abs(b.value) - Math.abs(a.value) || a.feature - b.feature,
    );

  return {
    kind: "bars",
    component: state.component,
    componentCount: info.explanation.slopes.length,
    bars,
    allZero,
    note: allZero ? "all weights of this component are zero" : null,
    alpha: info.explanation.alpha,
    instanceDifference: info.instance_difference,
  };
}

export interface WhatifRow {
  feature: number;
  name: string;
  /** Verbatim instance value, the input's starting point. */
  original: number;
  /** Current input text (the original's text form until edited). */
  raw: string;
  edited: boolean;
  meanRequested: boolean;
}

export interface WhatifView {
  kind: "panel" | "hidden";
  rows: WhatifRow[];
  canApply: boolean;
  busy: boolean;
  /** Verbatim coordinates/predictions of the applied tweak. */
  result: {
    before: number[];
    after: number[];
    appliedValue: number;
    feature: number;
    predictionBefore: number | null;
    predictionAfter: number | null;
  } | null;
  error: string | null;
}

export function whatifView(state: UiState): WhatifView {
  const info = state.explanation;
  if (state.selected === null || !info) {
    return {
      kind: "hidden",
      rows: [],
      canApply: false,
      busy: false,
      result: null,
      error: null,
    };
  }
  const names = state.dataset?.feature_names ?? [];
  const tweak = state.tweak;
  const rows = info.instance.map((original, feature) => {
    const edited = tweak !== null && tweak.feature === feature;
    return {
      feature,
      name: names[feature] ?? `f${feature}`,
      original,
      raw: edited && !tweak.toMean ? tweak.raw : String(original),
      edited,
      meanRequested: edited && tweak.toMean,
    };
  });
  const w = state.whatif;
  return {
    kind: "panel",
    rows,
    canApply:
      tweak !== null && (tweak.toMean || tweak.raw.trim().length > 0),
    busy: state.busy === "whatif",
    result: w
      ? {
          before: w.before,
          after: w.after,
          appliedValue: w.value,
          feature: w.feature,
          predictionBefore: w.prediction_before,
          predictionAfter: w.prediction_after,
        }
      : null,
    error: state.error ? `${state.error.where}: ${state.error.message}` : null,
  };
}
