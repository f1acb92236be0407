/** Application state and its pure transitions.
 *
 * Views render from this state alone, so replaying a recorded sequence of
 * API responses through these functions reproduces the exact same UI data.
 * Numbers are stored verbatim as they arrived from the service.
 */

import type { DatasetInfo, DrInfo, ExplainInfo, WhatIfInfo } from "./api";

/** The single pending feature edit in the what-if panel. */
export interface TweakState {
  feature: number;
  /** Raw input text as typed; ignored when `toMean` is set. */
  raw: string;
  toMean: boolean;
}

export interface UiState {
  dataset: DatasetInfo | null;
  model: DrInfo | null;
  /** Selected embedding row, or null. Always a valid index when set. */
  selected: number | null;
  explanation: ExplainInfo | null;
  /** Which slope row the bar chart shows. */
  component: number;
  tweak: TweakState | null;
  whatif: WhatIfInfo | null;
  busy: "explain" | "whatif" | null;
  error: { where: string; message: string } | null;
}

export const initialState: UiState = {
  dataset: null,
  model: null,
  selected: null,
  explanation: null,
  component: 0,
  tweak: null,
  whatif: null,
  busy: null,
  error: null,
};

export function datasetLoaded(_state: UiState, dataset: DatasetInfo): UiState {
  return { ...initialState, dataset };
}

export function modelFitted(state: UiState, model: DrInfo): UiState {
  return { ...initialState, dataset: state.dataset, model };
}

/** Select an embedding point; out-of-range indices leave state unchanged
 * (the selection invariant: null or a valid row). */
export function pointSelected(state: UiState, index: number): UiState {
  const rows = state.model?.embedding.length ?? 0;
  if (!Number.isInteger(index) || index < 0 || index >= rows) return state;
  return {
    ...state,
    selected: index,
    explanation: null,
    tweak: null,
    whatif: null,
    error: null,
    busy: "explain",
  };
}

export function explanationLoaded(state: UiState, info: ExplainInfo): UiState {
  // a stale response for a point that is no longer selected is dropped
  if (info.instance_index !== state.selected) return state;
  const count = info.explanation.slopes.length;
  return {
    ...state,
    explanation: info,
    component: Math.min(state.component, Math.max(0, count - 1)),
    busy: null,
    error: null,
  };
}

/** Switch which component row the bars show; no refetch involved. */
export function componentChosen(state: UiState, component: number): UiState {
  const count = state.explanation?.explanation.slopes.length ?? 0;
  if (!Number.isInteger(component) || component < 0 || component >= count) {
    return state;
  }
  return { ...state, component };
}

export function tweakEdited(
  state: UiState,
  feature: number,
  raw: string,
): UiState {
  if (state.selected === null || !validFeature(state, feature)) return state;
  return { ...state, tweak: { feature, raw, toMean: false } };
}

export function tweakToMean(state: UiState, feature: number): UiState {
  if (state.selected === null || !validFeature(state, feature)) return state;
  return { ...state, tweak: { feature, raw: "", toMean: true } };
}

/** Drop the pending edit and any applied result (removes the ghost). */
export function tweakReset(state: UiState): UiState {
  return { ...state, tweak: null, whatif: null, error: null };
}

export function whatifStarted(state: UiState): UiState {
  return { ...state, busy: "whatif", error: null };
}

export function whatifApplied(state: UiState, info: WhatIfInfo): UiState {
  return { ...state, whatif: info, busy: null, error: null };
}

export function requestFailed(
  state: UiState,
  where: string,
  message: string,
): UiState {
  return { ...state, busy: null, error: { where, message } };
}

function validFeature(state: UiState, feature: number): boolean {
  const cols = state.dataset?.cols ?? 0;
  return Number.isInteger(feature) && feature >= 0 && feature < cols;
}
