"""Paths to the bundled fixtures (mini KB, lexicon, corpora)."""

from importlib import resources
from pathlib import Path


def data_path(name: str) -> Path:
    return Path(str(resources.files("vnqa").joinpath("data", name)))


MINI_KB = "mini_kb.tsv"
LEXICON = "lexicon.tsv"
STOPWORDS = "stopwords.txt"
ROLES = "roles.tsv"
QUESTIONS = "questions.tsv"
EVAL_DATASET = "eval.jsonl"
