from pathlib import Path

import pytest

from slhr.grammar import validate
from slhr.tableau import precompute_store
from slhr.textio import parse_grammar
from slhr.traverse_table import precompute_traverse

DATA = Path(__file__).parent / "data"


def load_example():
    return validate(parse_grammar((DATA / "example.slhr").read_text()))


@pytest.fixture
def ex():
    return load_example()


@pytest.fixture
def ex_tt(ex):
    return precompute_traverse(ex)


@pytest.fixture
def ex_store(ex, ex_tt):
    return precompute_store(ex, ex_tt)
