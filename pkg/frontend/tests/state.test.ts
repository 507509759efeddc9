import { describe, expect, it } from "vitest";

import {
  canSubmit,
  editQuestion,
  initialState,
  submitFailed,
  submitStarted,
  submitSucceeded,
  takeQueued,
  toggleTrace,
} from "../src/state.js";
import { fptAnswer } from "./fixtures.js";

describe("ask view state", () => {
  it("disables submit for empty or in-flight input", () => {
    let state = initialState();
    expect(canSubmit(state)).toBe(false);
    state = editQuestion(state, "  ");
    expect(canSubmit(state)).toBe(false);
    state = editQuestion(state, "Dân số của Hà Nội là bao nhiêu?");
    expect(canSubmit(state)).toBe(true);
    state = submitStarted(state, state.question);
    expect(canSubmit(state)).toBe(false);
  });

  it("appends to history on success and clears the input", () => {
    let state = editQuestion(initialState(), "q1");
    state = submitStarted(state, "q1");
    state = submitSucceeded(state, "q1", fptAnswer());
    expect(state.history).toHaveLength(1);
    expect(state.history[0].question).toBe("q1");
    expect(state.history[0].shortAnswers).toEqual([
      "Trương Gia Bình",
      "Bùi Quang Ngọc",
      "Đỗ Cao Bảo",
    ]);
    expect(state.question).toBe("");

    state = editQuestion(state, "q2");
    state = submitStarted(state, "q2");
    state = submitSucceeded(state, "q2", fptAnswer());
    expect(state.history.map((h) => h.question)).toEqual(["q1", "q2"]);
  });

  it("keeps the input and history on failure", () => {
    let state = editQuestion(initialState(), "còn nguyên");
    state = submitStarted(state, "còn nguyên");
    state = submitFailed(state, "service error 503");
    expect(state.question).toBe("còn nguyên");
    expect(state.error).toBe("service error 503");
    expect(state.history).toHaveLength(0);
    expect(state.loading).toBe(false);
  });

  it("queues a submission made while one is in flight", () => {
    let state = editQuestion(initialState(), "first");
    state = submitStarted(state, "first");
    state = submitStarted(state, "second");
    expect(state.queued).toBe("second");
    state = submitSucceeded(state, "first", fptAnswer());
    const [queued, next] = takeQueued(state);
    expect(queued).toBe("second");
    expect(next.queued).toBeNull();
  });

  it("trace panel starts collapsed and toggles", () => {
    let state = initialState();
    expect(state.traceExpanded).toBe(false);
    state = toggleTrace(state);
    expect(state.traceExpanded).toBe(true);
  });

  it("rendering a payload never mutates it", () => {
    const payload = fptAnswer();
    const snapshot = JSON.stringify(payload);
    submitSucceeded(submitStarted(initialState(), "q"), "q", payload);
    expect(JSON.stringify(payload)).toBe(snapshot);
  });
});
