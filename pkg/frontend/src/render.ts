// DOM rendering of an answer payload: short answers up front, the
// abstract and the pipeline trace behind <details>, the winning query
// always visible. Rendering never mutates the payload.

import type { AnswerPayload, KbStats, TraceInfo } from "./api.js";

export const STAGES = ["SEGMENT", "TAG", "CLASSIFY", "CONSTRUCT", "BUILD", "EXECUTE"] as const;

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function renderAnswer(payload: AnswerPayload, traceExpanded: boolean): HTMLElement {
  const root = el("section", "answer");

  const answers = el("div", "short-answers");
  if (payload.short_answers.length === 0) {
    const miss = el("p", "no-answer", "Không tìm thấy câu trả lời.");
    if (payload.trace.failure_stage) {
      miss.append(el("span", "failure-stage", ` (failed at ${payload.trace.failure_stage})`));
    }
    answers.append(miss);
  }
  for (const text of payload.short_answers) {
    answers.append(el("p", "short-answer", text));
  }
  root.append(answers);

  if (payload.long_answer) {
    const details = el("details", "long-answer");
    details.append(el("summary", undefined, "Abstract"));
    details.append(el("p", undefined, payload.long_answer));
    root.append(details);
  }

  if (payload.cypher) {
    const query = el("p", "cypher");
    query.append(el("span", "label", "query "));
    query.append(el("code", undefined, payload.cypher));
    root.append(query);
  }

  root.append(renderTrace(payload.trace, traceExpanded));
  return root;
}

export function renderTrace(trace: TraceInfo, expanded: boolean): HTMLElement {
  const details = el("details", "trace");
  details.open = expanded;
  details.append(el("summary", undefined, "Pipeline trace"));

  const stage = (name: (typeof STAGES)[number]) => {
    const block = el("div", `stage stage-${name.toLowerCase()}`);
    const elapsed = trace.elapsed_ms[name];
    block.append(
      el("h4", undefined, elapsed === undefined ? name : `${name} (${elapsed.toFixed(2)} ms)`),
    );
    return block;
  };

  const segment = stage("SEGMENT");
  segment.append(el("p", undefined, (trace.tokens ?? []).join(" ")));
  details.append(segment);

  const tagBlock = stage("TAG");
  tagBlock.append(
    el("p", undefined, (trace.tagged ?? []).map(([s, t]) => `${s}/${t}`).join(" ")),
  );
  const keywords = el("p", "keywords");
  keywords.append(el("span", "label", "keywords "));
  keywords.append((trace.keywords ?? []).map(([s, t]) => `${s}/${t}`).join(" "));
  tagBlock.append(keywords);
  details.append(tagBlock);

  const classify = stage("CLASSIFY");
  const dist = Object.entries(trace.distribution ?? {})
    .map(([label, p]) => `${label} ${(p * 100).toFixed(1)}%`)
    .join(", ");
  classify.append(el("p", undefined, `${trace.answer_type ?? "?"} — ${dist}`));
  details.append(classify);

  const construct = stage("CONSTRUCT");
  const parts = trace.construction;
  if (parts) {
    const list = el("ul");
    const entry = (label: string, values: string[]) => {
      const item = el("li");
      item.append(el("span", "label", `${label}: `));
      item.append(values.join(", ") || "—");
      return item;
    };
    list.append(entry("entities", parts.entities));
    list.append(entry("properties", parts.properties.map((t) => t.graph_name)));
    list.append(entry("relationships", parts.relationships.map((t) => t.graph_name)));
    if (parts.dropped.length) list.append(entry("dropped", parts.dropped));
    construct.append(list);
  }
  details.append(construct);

  const build = stage("BUILD");
  const candidates = el("ol", "candidates");
  for (const candidate of trace.candidates ?? []) {
    const item = el("li", candidate.rank === trace.winning_index ? "candidate winner" : "candidate");
    item.append(el("code", undefined, candidate.text));
    item.append(el("span", "template", ` ${candidate.template}`));
    candidates.append(item);
  }
  build.append(candidates);
  details.append(build);

  const execute = stage("EXECUTE");
  if (trace.result) {
    const table = el("table", "result");
    const head = el("tr");
    for (const column of trace.result.columns) head.append(el("th", undefined, column));
    table.append(head);
    for (const row of trace.result.rows) {
      const tr = el("tr");
      for (const cell of row) tr.append(el("td", undefined, cell === null ? "∅" : String(cell)));
      table.append(tr);
    }
    execute.append(table);
  } else {
    execute.append(el("p", undefined, "no result"));
  }
  details.append(execute);

  return details;
}

export function renderStats(stats: KbStats): HTMLElement {
  const root = el("section", "stats");
  const table = el("table");
  for (const [label, value] of [
    ["nodes", stats.nodes],
    ["relationships", stats.relationships],
    ["properties", stats.properties],
  ] as const) {
    const row = el("tr");
    row.append(el("th", undefined, label));
    row.append(el("td", `stat-${label}`, String(value)));
    table.append(row);
  }
  root.append(table);
  return root;
}

export function renderHistory(history: { question: string; shortAnswers: string[] }[]): HTMLElement {
  const root = el("section", "history");
  for (const entry of [...history].reverse()) {
    const item = el("div", "history-entry");
    item.append(el("p", "history-question", entry.question));
    item.append(el("p", "history-answers", entry.shortAnswers.join("; ") || "(no answer)"));
    root.append(item);
  }
  return root;
}

export function renderError(message: string): HTMLElement {
  return el("div", "error-banner", message);
}
