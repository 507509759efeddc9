// Wires the ask/stats tabs to the API client. One request in flight at a
// time; a submission made during flight is queued and sent afterwards.

import { ApiError, makeClient, type Client } from "./api.js";
import {
  canSubmit,
  editQuestion,
  initialState,
  submitFailed,
  submitStarted,
  submitSucceeded,
  takeQueued,
  toggleTrace,
} from "./state.js";
import { renderAnswer, renderError, renderHistory, renderStats } from "./render.js";

export function mount(root: HTMLElement, client: Client = makeClient()) {
  let state = initialState();

  root.innerHTML = `
    <header>
      <h1>vnqa console</h1>
      <nav>
        <button id="tab-ask" class="tab active">Ask</button>
        <button id="tab-stats" class="tab">KB stats</button>
      </nav>
    </header>
    <main>
      <section id="panel-ask">
        <form id="ask-form">
          <input id="question" type="text" autocomplete="off"
                 placeholder="Đặt câu hỏi, ví dụ: Dân số của Hà Nội là bao nhiêu?" />
          <button id="submit" type="submit" disabled>Ask</button>
        </form>
        <div id="error"></div>
        <div id="result"></div>
        <div id="history"></div>
      </section>
      <section id="panel-stats" hidden>
        <button id="refresh-stats">Refresh</button>
        <div id="stats"></div>
      </section>
    </main>
  `;

  const input = root.querySelector<HTMLInputElement>("#question")!;
  const submit = root.querySelector<HTMLButtonElement>("#submit")!;
  const form = root.querySelector<HTMLFormElement>("#ask-form")!;
  const errorBox = root.querySelector<HTMLElement>("#error")!;
  const resultBox = root.querySelector<HTMLElement>("#result")!;
  const historyBox = root.querySelector<HTMLElement>("#history")!;
  const statsBox = root.querySelector<HTMLElement>("#stats")!;
  const panelAsk = root.querySelector<HTMLElement>("#panel-ask")!;
  const panelStats = root.querySelector<HTMLElement>("#panel-stats")!;

  function sync() {
    submit.disabled = !canSubmit(state);
    if (input.value !== state.question) input.value = state.question;
    errorBox.replaceChildren();
    if (state.error) errorBox.append(renderError(state.error));
    resultBox.replaceChildren();
    if (state.lastAnswer) {
      if (state.lastQuestion) {
        resultBox.append(renderEcho(state.lastQuestion));
      }
      const answer = renderAnswer(state.lastAnswer, state.traceExpanded);
      answer
        .querySelector("details.trace")
        ?.addEventListener("toggle", () => {
          state = toggleTrace(state);
        });
      resultBox.append(answer);
    }
    historyBox.replaceChildren(renderHistory(state.history));
  }

  function renderEcho(question: string): HTMLElement {
    const node = document.createElement("p");
    node.className = "echo";
    node.textContent = question;
    return node;
  }

  async function send(question: string) {
    const before = state;
    state = submitStarted(state, question);
    if (before.loading) {
      // queued; the active request's completion will pick it up
      return;
    }
    sync();
    try {
      const payload = await client.ask(question);
      state = submitSucceeded(state, question, payload);
    } catch (err) {
      const message = err instanceof ApiError ? err.message : String(err);
      state = submitFailed(state, message);
    }
    let queued: string | null;
    [queued, state] = takeQueued(state);
    sync();
    if (queued !== null) {
      await send(queued);
    }
  }

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    if (!canSubmit(state)) return;
    void send(state.question.trim());
  });
  input.addEventListener("input", () => {
    state = editQuestion(state, input.value);
    submit.disabled = !canSubmit(state);
  });

  async function refreshStats() {
    try {
      const stats = await client.kbStats();
      statsBox.replaceChildren(renderStats(stats));
    } catch (err) {
      const message = err instanceof ApiError ? err.message : String(err);
      statsBox.replaceChildren(renderError(message));
    }
  }

  root.querySelector("#tab-ask")!.addEventListener("click", () => {
    panelAsk.hidden = false;
    panelStats.hidden = true;
  });
  root.querySelector("#tab-stats")!.addEventListener("click", () => {
    panelAsk.hidden = true;
    panelStats.hidden = false;
    void refreshStats();
  });
  root.querySelector("#refresh-stats")!.addEventListener("click", () => void refreshStats());

  sync();
  return {
    getState: () => state,
    send,
    refreshStats,
  };
}
