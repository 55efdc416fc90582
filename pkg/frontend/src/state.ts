import type { EvaluationPayload } from "./types.js";

/** UI state. The metric panel snapshot is always the evaluation from the
 * most recent server response for the active session; the client never
 * computes metrics itself. */
export interface ViewState {
  selectedRank: number;
  sessionId: string | null;
  highlightedForm: number | null;
  overlayReference: boolean;
  metricPanel: EvaluationPayload | null;
}

export const initialState: ViewState = {
  selectedRank: 0,
  sessionId: null,
  highlightedForm: null,
  overlayReference: false,
  metricPanel: null,
};

export function setRank(state: ViewState, rank: number): ViewState {
  if (rank < 0 || !Number.isInteger(rank)) return state;
  return { ...state, selectedRank: rank };
}

export function setSession(
  state: ViewState,
  sessionId: string,
  evaluation: EvaluationPayload,
): ViewState {
  return { ...state, sessionId, metricPanel: evaluation, highlightedForm: null };
}

export function clearSession(state: ViewState): ViewState {
  return {
    ...state,
    sessionId: null,
    metricPanel: null,
    highlightedForm: null,
    overlayReference: false,
  };
}

export function setMetrics(state: ViewState, evaluation: EvaluationPayload): ViewState {
  return { ...state, metricPanel: evaluation };
}

export function setHighlight(state: ViewState, form: number | null): ViewState {
  return { ...state, highlightedForm: form };
}

export function toggleOverlay(state: ViewState): ViewState {
  return { ...state, overlayReference: !state.overlayReference };
}
