import type { AnswerPayload } from "../src/api.js";

export function fptAnswer(): AnswerPayload {
  return {
    short_answers: ["Trương Gia Bình", "Bùi Quang Ngọc", "Đỗ Cao Bảo"],
    long_answer: null,
    answer_type: "HUM",
    cypher: 'START x = node:DBPediaIndex(key="FPT") RETURN DISTINCT x.thànhViênChủChốt',
    trace: {
      tokens: ["Thành_viên", "chủ_chốt", "của", "tập_đoàn", "FPT", "là_những_ai", "?"],
      tagged: [
        ["Thành_viên", "N"],
        ["chủ_chốt", "N"],
        ["của", "E"],
        ["tập_đoàn", "N"],
        ["FPT", "Np"],
        ["là_những_ai", "QW"],
        ["?", "X"],
      ],
      keywords: [
        ["Thành_viên", "N"],
        ["chủ_chốt", "N"],
        ["tập_đoàn", "N"],
        ["FPT", "Np"],
      ],
      answer_type: "HUM",
      distribution: { HUM: 0.93, NUM: 0.02, DTIME: 0.01, LOC: 0.01, YESNO: 0.01, DEF: 0.01, ENTY: 0.01 },
      construction: {
        entities: ["FPT"],
        properties: [],
        relationships: [
          { surface: "thành_viên_chủ_chốt", graph_name: "thànhViênChủChốt", confidence: 1.0 },
        ],
        dropped: ["tập_đoàn"],
      },
      candidates: [
        {
          rank: 0,
          group: 0,
          template: "relationship",
          text: 'START x = node:DBPediaIndex(key="FPT") RETURN DISTINCT x.thànhViênChủChốt',
        },
        {
          rank: 1,
          group: 0,
          template: "relationship",
          text: 'START x = node:DBPediaIndex(key="FPT") MATCH (x)-[:thànhViênChủChốt]->(m) RETURN DISTINCT m',
        },
      ],
      winning_index: 0,
      group_winners: [[0, 0]],
      result: {
        columns: ["x.thànhViênChủChốt"],
        rows: [["Trương Gia Bình"], ["Bùi Quang Ngọc"], ["Đỗ Cao Bảo"]],
      },
      candidate_errors: [],
      elapsed_ms: { SEGMENT: 0.1, TAG: 0.05, CLASSIFY: 0.2, CONSTRUCT: 0.1, BUILD: 0.1, EXECUTE: 0.2, total: 0.8 },
      failure_stage: null,
    },
  };
}
