import pytest

from vnqa.nlp import Lexicon
from vnqa.resources import data_path
from vnqa.service import QAService


@pytest.fixture(scope="session")
def service() -> QAService:
    # building the service trains the classifiers once; reuse it everywhere
    return QAService()


@pytest.fixture(scope="session")
def graph(service):
    return service.graph


@pytest.fixture(scope="session")
def lexicon() -> Lexicon:
    return Lexicon.load(data_path("lexicon.tsv"))


@pytest.fixture(scope="session")
def kb_path():
    return data_path("mini_kb.tsv")
