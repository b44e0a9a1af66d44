import pytest

from omlab.corpus import corpus_lattice
from omlab.theorem import TheoremLab

# Lattices small enough for the exhaustive subobject oracle.
ORACLE_CORPUS = ("l4", "mo2", "mo3", "b8", "mo2xl2")
# Every corpus lattice with a nontrivial context graph.
FULL_CORPUS = ("l4", "mo2", "mo3", "b8", "b16", "mo2xl2", "mo2xl4")


@pytest.fixture(scope="session")
def labs():
    """Shared TheoremLab instances; building graphs once keeps the suite fast."""
    cache: dict[str, TheoremLab] = {}

    def get(name: str) -> TheoremLab:
        if name not in cache:
            cache[name] = TheoremLab(corpus_lattice(name), name)
        return cache[name]

    return get
