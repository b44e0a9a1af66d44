"""The named lattice corpus used by the acceptance checks and the CLI.

Covers the Boolean/irreducible/reducible and distributive/non-distributive
quadrants at desk scale: l2, l4, b8, b16, mo2, mo3, mo2xl2, mo2xl4.
"""

from __future__ import annotations

from .lattice import OmlLattice, direct_product, make_boolean, make_mo

CORPUS_NAMES = ("l2", "l4", "b8", "b16", "mo2", "mo3", "mo2xl2", "mo2xl4")

# Lattices with a subobject oracle small enough for exhaustive enumeration
# under the default bound; the rest fall back to the generated frontier.
ORACLE_NAMES = ("l4", "b8", "mo2", "mo3", "mo2xl2")


def corpus_lattice(name: str) -> OmlLattice:
    key = name.lower()
    if key == "l2":
        return make_boolean(1)
    if key == "l4":
        return make_boolean(2)
    if key == "b8":
        return make_boolean(3)
    if key == "b16":
        return make_boolean(4)
    if key == "mo2":
        return make_mo(2)
    if key == "mo3":
        return make_mo(3)
    if key == "mo2xl2":
        return direct_product(make_mo(2), make_boolean(1))
    if key == "mo2xl4":
        return direct_product(make_mo(2), make_boolean(2))
    raise KeyError(f"unknown corpus lattice {name!r}; known: {', '.join(CORPUS_NAMES)}")


def full_corpus() -> dict[str, OmlLattice]:
    return {name: corpus_lattice(name) for name in CORPUS_NAMES}
