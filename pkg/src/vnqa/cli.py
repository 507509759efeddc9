"""Operator entry points: ingest, ask, query, train-classifier, eval,
serve, templates export. Exit codes: 0 success, 1 domain error, 2 usage."""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import builder
from .classifier import MaxentModel
from .cypher import parse, render
from .engine import execute
from .errors import VnqaError
from .evaluate import evaluate, load_dataset
from .graph import PropertyGraph
from .nlp import Lexicon
from .service import (
    QAService,
    ServiceConfig,
    answer_to_json,
    load_graph,
    train_model_from_corpus,
)


def _service_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--kb", help="triple dump (.tsv) or snapshot (.json)")
    parser.add_argument("--lexicon")
    parser.add_argument("--stoplist")
    parser.add_argument("--roles")
    parser.add_argument("--corpus", help="answer-type training corpus")
    parser.add_argument("--model", help="pre-trained answer-type model (json)")
    parser.add_argument("--config", help="service config file (json)")


def _build_config(args) -> ServiceConfig:
    config = ServiceConfig.from_file(args.config) if args.config else ServiceConfig.bundled()
    if getattr(args, "kb", None):
        config.kb_path = args.kb
    if getattr(args, "lexicon", None):
        config.lexicon_path = args.lexicon
    if getattr(args, "stoplist", None):
        config.stoplist_path = args.stoplist
    if getattr(args, "roles", None):
        config.roles_path = args.roles
    if getattr(args, "corpus", None):
        config.corpus_path = args.corpus
    if getattr(args, "model", None):
        config.model_path = args.model
    return config


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vnqa", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="load a triple dump and report counts")
    p.add_argument("triples")
    p.add_argument("--out", help="write a JSON snapshot of the graph")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("ask", help="answer a question")
    p.add_argument("question")
    p.add_argument("--trace", action="store_true", help="print every pipeline stage")
    p.add_argument("--json", action="store_true")
    _service_options(p)

    p = sub.add_parser("query", help="run a Cypher query against the KB")
    p.add_argument("cypher")
    p.add_argument("--json", action="store_true")
    _service_options(p)

    p = sub.add_parser("train-classifier", help="train the answer-type model")
    p.add_argument("corpus")
    p.add_argument("--seed", type=int, default=0, help="accepted for reproducibility scripts")
    p.add_argument("--out", default="model.json")
    p.add_argument("--lexicon")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("eval", help="score a gold dataset")
    p.add_argument("dataset", nargs="?", help="defaults to the bundled mini dataset")
    p.add_argument("--lenient", action="store_true", help="gold answers may be a subset")
    p.add_argument("--json", action="store_true")
    _service_options(p)

    p = sub.add_parser("serve", help="run the HTTP API")
    p.add_argument("--port", type=int)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--static", help="directory with the web UI bundle")
    p.add_argument("--json", action="store_true")
    _service_options(p)

    p = sub.add_parser("templates", help="template catalog tools")
    tsub = p.add_subparsers(dest="templates_command", required=True)
    te = tsub.add_parser("export", help="dump the template catalog as JSON")
    te.add_argument("--json", action="store_true")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except VnqaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _dispatch(args) -> int:
    if args.command == "ingest":
        return _cmd_ingest(args)
    if args.command == "ask":
        return _cmd_ask(args)
    if args.command == "query":
        return _cmd_query(args)
    if args.command == "train-classifier":
        return _cmd_train(args)
    if args.command == "eval":
        return _cmd_eval(args)
    if args.command == "serve":
        return _cmd_serve(args)
    if args.command == "templates":
        print(json.dumps(builder.catalog_as_dicts(), ensure_ascii=False, indent=1))
        return 0
    raise AssertionError(f"unhandled command {args.command}")


def _cmd_ingest(args) -> int:
    graph = PropertyGraph()
    report = graph.load_triples(args.triples)
    stats = graph.stats()
    payload = {
        "nodes": stats.nodes,
        "relationships": stats.relationships,
        "properties": stats.properties,
        "skipped_lines": report.skipped,
    }
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            json.dump(graph.to_dict(), handle, ensure_ascii=False)
        payload["snapshot"] = args.out
    if args.json:
        print(json.dumps(payload, ensure_ascii=False))
    else:
        for key, value in payload.items():
            print(f"{key}: {value}")
    return 0


def _cmd_ask(args) -> int:
    service = QAService(_build_config(args))
    answer = service.answer(args.question)
    if args.json:
        print(answer_to_json(answer))
        return 0
    if answer.short_answers:
        print("answer: " + "; ".join(answer.short_answers))
    else:
        print("answer: (none)")
    if answer.cypher:
        print(f"cypher: {answer.cypher}")
    if answer.long_answer:
        print(f"abstract: {answer.long_answer}")
    if args.trace:
        _print_trace(answer.trace)
    return 0


def _print_trace(trace) -> None:
    print(f"SEGMENT: {' '.join(trace.tokens or [])}")
    print("TAG: " + " ".join(f"{s}/{t}" for s, t in (trace.tagged or [])))
    print("  keywords: " + " ".join(f"{s}/{t}" for s, t in (trace.keywords or [])))
    dist = ", ".join(f"{k}={v:.3f}" for k, v in (trace.distribution or {}).items())
    print(f"CLASSIFY: {trace.answer_type} ({dist})")
    print(f"CONSTRUCT: {json.dumps(trace.construction, ensure_ascii=False)}")
    print("BUILD:")
    for candidate in trace.candidates or []:
        marker = "*" if candidate["rank"] == trace.winning_index else " "
        print(f"  {marker} [{candidate['rank']}] {candidate['text']}")
    print(f"EXECUTE: winner={trace.winning_index} result={json.dumps(trace.result, ensure_ascii=False)}")
    if trace.failure_stage:
        print(f"failed at: {trace.failure_stage}")
    print("elapsed_ms: " + ", ".join(f"{k}={v:.2f}" for k, v in trace.elapsed_ms.items()))


def _cmd_query(args) -> int:
    config = _build_config(args)
    graph = load_graph(config.kb_path)
    ast = parse(args.cypher)
    table = execute(ast, graph)
    if args.json:
        print(json.dumps(table.to_dict(), ensure_ascii=False))
        return 0
    print("\t".join(table.columns))
    for row in table.rows:
        print("\t".join("" if cell is None else builder.format_value(cell) for cell in row))
    print(f"({len(table.rows)} rows; canonical: {render(ast)})")
    return 0


def _cmd_train(args) -> int:
    lexicon_path = args.lexicon or ServiceConfig.bundled().lexicon_path
    model = train_model_from_corpus(args.corpus, Lexicon.load(lexicon_path))
    model.save(args.out)
    payload = {
        "model": args.out,
        "labels": [label.value for label in model.labels],
        "features": len(model.feature_names),
    }
    print(json.dumps(payload, ensure_ascii=False) if args.json else
          f"wrote {args.out} ({payload['features']} features, labels: {', '.join(payload['labels'])})")
    return 0


def _cmd_eval(args) -> int:
    config = _build_config(args)
    service = QAService(config)
    dataset = load_dataset(args.dataset or config.default_eval_dataset())
    report = evaluate(dataset, service, strict=not args.lenient)
    print(json.dumps(report.to_dict(), ensure_ascii=False) if args.json else report.table())
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .api import create_app

    config = _build_config(args)
    if os.environ.get("VNQA_KB"):
        config.kb_path = os.environ["VNQA_KB"]
    port = args.port or int(os.environ.get("VNQA_PORT", config.port))
    service = QAService(config)
    app = create_app(service, static_dir=args.static)
    uvicorn.run(app, host=args.host, port=port, log_level="warning")
    return 0


if __name__ == "__main__":
    sys.exit(main())
