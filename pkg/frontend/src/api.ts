// Typed client for the QA service HTTP/JSON API. This is the only
// coupling to the backend: the UI never imports engine code.

export interface CandidateInfo {
  rank: number;
  group: number;
  template: string;
  text: string;
}

export interface SchemaTermInfo {
  surface: string;
  graph_name: string;
  confidence: number;
}

export interface ConstructionInfo {
  entities: string[];
  properties: SchemaTermInfo[];
  relationships: SchemaTermInfo[];
  dropped: string[];
}

export interface ResultTableInfo {
  columns: string[];
  rows: (string | number | boolean | null)[][];
}

export interface TraceInfo {
  tokens: string[] | null;
  tagged: [string, string][] | null;
  keywords: [string, string][] | null;
  answer_type: string | null;
  distribution: Record<string, number> | null;
  construction: ConstructionInfo | null;
  candidates: CandidateInfo[] | null;
  winning_index: number;
  group_winners: [number, number][];
  result: ResultTableInfo | null;
  candidate_errors: [number, string][];
  elapsed_ms: Record<string, number>;
  failure_stage: string | null;
}

export interface AnswerPayload {
  short_answers: string[];
  long_answer: string | null;
  answer_type: string | null;
  cypher: string | null;
  trace: TraceInfo;
}

export interface KbStats {
  nodes: number;
  relationships: number;
  properties: number;
}

export class ApiError extends Error {
  constructor(message: string, readonly status?: number) {
    super(message);
  }
}

async function request<T>(base: string, path: string, init?: RequestInit): Promise<T> {
  let response: Response;
  try {
    response = await fetch(base + path, init);
  } catch (err) {
    throw new ApiError(`service unreachable: ${String(err)}`);
  }
  if (!response.ok) {
    throw new ApiError(`service error ${response.status}`, response.status);
  }
  return (await response.json()) as T;
}

export function makeClient(base = "") {
  return {
    ask(question: string): Promise<AnswerPayload> {
      return request<AnswerPayload>(base, "/ask", {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ question }),
      });
    },
    kbStats(): Promise<KbStats> {
      return request<KbStats>(base, "/kb/stats");
    },
  };
}

export type Client = ReturnType<typeof makeClient>;
