// View state transitions, kept pure so they can be unit-tested without
// touching the DOM. History is append-only; one request is in flight at
// a time and a submission made meanwhile is queued.

import type { AnswerPayload } from "./api.js";

export interface HistoryEntry {
  question: string;
  shortAnswers: string[];
}

export interface AskViewState {
  question: string;
  loading: boolean;
  lastAnswer: AnswerPayload | null;
  lastQuestion: string | null;
  history: HistoryEntry[];
  traceExpanded: boolean;
  error: string | null;
  queued: string | null;
}

export function initialState(): AskViewState {
  return {
    question: "",
    loading: false,
    lastAnswer: null,
    lastQuestion: null,
    history: [],
    traceExpanded: false,
    error: null,
    queued: null,
  };
}

export function editQuestion(state: AskViewState, text: string): AskViewState {
  return { ...state, question: text };
}

export function canSubmit(state: AskViewState): boolean {
  return state.question.trim().length > 0 && !state.loading;
}

export function submitStarted(state: AskViewState, question: string): AskViewState {
  if (state.loading) {
    return { ...state, queued: question };
  }
  return { ...state, loading: true, error: null, queued: null };
}

export function submitSucceeded(
  state: AskViewState,
  question: string,
  payload: AnswerPayload,
): AskViewState {
  return {
    ...state,
    loading: false,
    lastAnswer: payload,
    lastQuestion: question,
    history: [...state.history, { question, shortAnswers: payload.short_answers }],
    question: "",
    error: null,
  };
}

export function submitFailed(state: AskViewState, message: string): AskViewState {
  // the input stays as typed so the user can retry
  return { ...state, loading: false, error: message };
}

export function takeQueued(state: AskViewState): [string | null, AskViewState] {
  if (state.queued === null) {
    return [null, state];
  }
  return [state.queued, { ...state, queued: null }];
}

export function toggleTrace(state: AskViewState): AskViewState {
  return { ...state, traceExpanded: !state.traceExpanded };
}
