"""omlab: a workbench for finite orthomodular lattices.

Builds the Boolean-context graph of a finite orthomodular lattice,
realizes subobjects of the associated context presheaf with their full
bi-Heyting algebra, daseinises lattice elements into that algebra, and
machine-checks the equivalence of the eight preservation conditions,
producing concrete witnesses where preservation fails.
"""

from .errors import (AxiomViolation, NoContextsError, OmlabError, OracleBoundExceeded,
                     SizeCapExceeded, SpecSemanticError, SpecSyntaxError,
                     SubalgebraRejected)
from .lattice import (BOOLEAN, IRREDUCIBLE, NEITHER, Classification, CommuteEquivalents,
                      Filter, OmlLattice, atoms, axiom_report, central_elements, classify,
                      commute_equivalents, commutes, direct_product, enumerate_ultrafilters,
                      is_distributive_triple, make_boolean, make_mo, sublattice,
                      two_valued_homs, verify_redei)
from .specfile import parse_lattice_spec, parse_structure, to_spec_json, to_spec_text
from .contexts import (Context, ContextGraph, enumerate_contexts, generated_subalgebra)
from .presheaf import (Subobject, bottom, coheyting_implies, coheyting_not,
                       enumerate_all_subobjects, heyting_implies, heyting_not, join,
                       join_all, leq, meet, meet_all, pointwise_complement,
                       restriction_closure, top)
from .dasein import DaseinMap
from .theorem import (AuditRow, BatteryEntry, BreakfastRecord, ConditionResult,
                      NegationGapWitness, TheoremLab, TheoremReport, Witness)
from .corpus import CORPUS_NAMES, corpus_lattice, full_corpus

__version__ = "0.1.0"
