from pathlib import Path

import pytest

from ddnnf_topk.algebra import NAT_PLUS, load_weights
from ddnnf_topk.circuit import read_nnf
from ddnnf_topk.preprocess import prepare

DATA = Path(__file__).parent / "data"

# Example 1 models (b, c, h, s) and their values under the example weights.
EXAMPLE1_MODELS = {(0, 1, 1, 0): 3, (1, 0, 0, 1): 2, (1, 0, 1, 0): 3, (1, 1, 1, 0): 5}


@pytest.fixture
def example1():
    return read_nnf(DATA / "example1.nnf")


@pytest.fixture
def example1_prepared(example1):
    return prepare(example1)


@pytest.fixture
def example1_nu():
    return load_weights(NAT_PLUS, (DATA / "example1.weights").read_text(), 4)


def recursive_eval(c, i, omega):
    """Textbook recursive semantics; independent of the library evaluators."""
    nd = c.nodes[i]
    if nd.kind == "L":
        return bool(omega[abs(nd.literal) - 1]) == (nd.literal > 0)
    if nd.kind == "T":
        return True
    if nd.kind == "F":
        return False
    results = [recursive_eval(c, ch, omega) for ch in nd.children]
    return all(results) if nd.kind == "A" else any(results)
