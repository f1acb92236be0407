/** Contract tests against a transcript recorded from the real service:
 * a diabetes + kernel-PCA(2) session that selects the component-1 outlier
 * (row 123) and pulls its dominant feature back to the dataset mean.
 * The views must surface the recorded numbers verbatim. */

import { describe, expect, it } from "vitest";

import type {
  DatasetInfo,
  DrInfo,
  ExplainInfo,
  WhatIfInfo,
} from "../src/api";
import { barsView, scatterView, whatifView } from "../src/render";
import {
  datasetLoaded,
  explanationLoaded,
  initialState,
  modelFitted,
  pointSelected,
  tweakToMean,
  whatifApplied,
  type UiState,
} from "../src/state";
import transcript from "./transcript.json";

const dataset = transcript.steps[0].response as unknown as DatasetInfo;
const dr = transcript.steps[1].response as unknown as DrInfo;
const explain = transcript.steps[2].response as unknown as ExplainInfo;
const whatif = transcript.steps[3].response as unknown as WhatIfInfo;

function sessionState(): UiState {
  let st = initialState;
  st = datasetLoaded(st, dataset);
  st = modelFitted(st, dr);
  st = pointSelected(st, explain.instance_index as number);
  st = explanationLoaded(st, explain);
  return st;
}

describe("recorded outlier session", () => {
  it("shows the first component's slope row verbatim", () => {
    const bars = barsView(sessionState());
    expect(bars.kind).toBe("bars");
    expect(bars.componentCount).toBe(2);
    const inFeatureOrder = [...bars.bars]
      .sort((a, b) => a.feature - b.feature)
      .map((b) => b.value);
    expect(inFeatureOrder).toEqual(explain.explanation.slopes[0]);
    expect(bars.alpha).toBe(explain.explanation.alpha);
    expect(bars.instanceDifference).toBe(explain.instance_difference);
  });

  it("ranks the eighth feature (s4) first by absolute weight", () => {
    const bars = barsView(sessionState());
    expect(bars.bars[0].feature).toBe(7);
    expect(bars.bars[0].name).toBe("s4");
    expect(bars.bars[0].widthT).toBe(1);
    for (let i = 1; i < bars.bars.length; i += 1) {
      expect(Math.abs(bars.bars[i - 1].value)).toBeGreaterThanOrEqual(
        Math.abs(bars.bars[i].value),
      );
    }
  });

  it("renders the applied tweak's after-coordinates verbatim", () => {
    let st = sessionState();
    st = tweakToMean(st, whatif.feature);
    st = whatifApplied(st, whatif);

    const sc = scatterView(st);
    expect(sc.tweaked).toEqual({ x: whatif.after[0], y: whatif.after[1] });
    expect(sc.ghost).toEqual({ x: whatif.before[0], y: whatif.before[1] });

    const panel = whatifView(st);
    expect(panel.result?.after).toEqual(whatif.after);
    expect(panel.result?.before).toEqual(whatif.before);
    expect(panel.result?.appliedValue).toBe(whatif.value);
    expect(panel.result?.feature).toBe(7);
  });

  it("plots every embedding point verbatim, colored by target", () => {
    const sc = scatterView(sessionState());
    expect(sc.kind).toBe("scatter");
    expect(sc.points).toHaveLength(442);
    expect(sc.points[123].x).toBe(dr.embedding[123][0]);
    expect(sc.points[123].y).toBe(dr.embedding[123][1]);
    expect(sc.points[123].selected).toBe(true);
    expect(sc.points[0].t).toBe((dataset.target as number[])[0]);
    for (const p of sc.points) {
      expect(p.colorT).not.toBeNull();
      expect(p.colorT as number).toBeGreaterThanOrEqual(0);
      expect(p.colorT as number).toBeLessThanOrEqual(1);
    }
  });

  it("initializes the tweak inputs to the instance's raw features", () => {
    const panel = whatifView(sessionState());
    expect(panel.kind).toBe("panel");
    expect(panel.rows.map((r) => r.original)).toEqual(explain.instance);
    for (const row of panel.rows) {
      expect(row.raw).toBe(String(row.original));
      expect(row.edited).toBe(false);
    }
    expect(panel.canApply).toBe(false);
  });
});

describe("view fallbacks", () => {
  const threeD: DrInfo = {
    model_id: "m9",
    n_reduced: 3,
    embedding: [
      [1.5, -2.0, 0.25],
      [0.5, 1.0, -0.75],
    ],
    has_predictor: false,
  };

  it("falls back to a coordinate table for non-2-D embeddings", () => {
    let st = datasetLoaded(initialState, dataset);
    st = modelFitted(st, threeD);
    st = pointSelected(st, 1);
    const sc = scatterView(st);
    expect(sc.kind).toBe("table");
    expect(sc.message).toContain("3 dimensions");
    expect(sc.rows).toHaveLength(2);
    expect(sc.rows[1].coords).toEqual([0.5, 1.0, -0.75]);
    expect(sc.rows[1].selected).toBe(true);
  });

  it("shows an empty state before a model exists or for no rows", () => {
    expect(scatterView(initialState).kind).toBe("empty");
    const st = modelFitted(datasetLoaded(initialState, dataset), {
      ...threeD,
      n_reduced: 2,
      embedding: [],
    });
    const sc = scatterView(st);
    expect(sc.kind).toBe("empty");
    expect(sc.message).toContain("empty");
  });

  it("flags an all-zero slope row instead of drawing bars", () => {
    const zero: ExplainInfo = {
      model_id: "m1",
      instance_index: 0,
      instance: [1, 2],
      explanation: {
        slopes: [[0, 0]],
        intercepts: [0.5],
        alpha: 1,
        orientation: "components_by_features",
        generator: {},
        query: null,
      },
      instance_difference: 0,
    };
    const st: UiState = {
      ...initialState,
      dataset,
      model: { ...threeD, n_reduced: 1, embedding: [[0.1, 0.2]] },
      selected: 0,
      explanation: zero,
    };
    const bars = barsView(st);
    expect(bars.allZero).toBe(true);
    expect(bars.note).toMatch(/zero/);
    for (const bar of bars.bars) {
      expect(bar.widthT).toBe(0);
      expect(bar.value).toBe(0);
    }
  });

  it("hides explanation and what-if panels with nothing selected", () => {
    const st = modelFitted(datasetLoaded(initialState, dataset), threeD);
    expect(barsView(st).kind).toBe("hidden");
    expect(whatifView(st).kind).toBe("hidden");
  });
});
