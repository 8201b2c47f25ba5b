import pytest

from hypercore import parse_hg


def hg(text):
    """Build a hypergraph from .hg text, discarding the build report."""
    H, _ = parse_hg(text)
    return H


@pytest.fixture
def fig_five():
    """Five nodes, edges {a,b,e},{a,c,d},{c,d,e}: the canonical fixture where
    the uncorrected h-index recurrence overshoots the true core numbers."""
    return hg("a b e\na c d\nc d e\n")


@pytest.fixture
def triangle_pairs():
    return hg("a b\nb c\na c\n")


@pytest.fixture
def single_triple():
    return hg("a b c\n")


@pytest.fixture
def path3():
    """Pair-edge path a-b-c."""
    return hg("a b\nb c\n")


def ids(H, labels):
    return [H.label_to_id[s] for s in labels]


def by_label(H, array):
    return {H.labels[v]: array[v] for v in range(H.n)}
