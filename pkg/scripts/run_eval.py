#!/usr/bin/env python3
"""Score the bundled gold dataset end to end and report latency.

Usage: python3 scripts/run_eval.py [dataset.jsonl] [--json]
"""

import json
import sys
import time

from vnqa.evaluate import evaluate, load_dataset
from vnqa.service import QAService


def main(argv):
    args = [a for a in argv if not a.startswith("--")]
    as_json = "--json" in argv
    service = QAService()
    dataset = load_dataset(args[0]) if args else load_dataset(
        service.config.default_eval_dataset()
    )
    started = time.perf_counter()
    report = evaluate(dataset, service)
    elapsed = time.perf_counter() - started
    if as_json:
        print(json.dumps(report.to_dict(), ensure_ascii=False, indent=1))
    else:
        print(report.table())
        print(f"{'mean latency':<34}{elapsed * 1000 / max(1, report.n):.2f} ms/question")
    return 0 if report.qa_accuracy >= 0.90 and report.query_accuracy >= 0.95 else 1


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
