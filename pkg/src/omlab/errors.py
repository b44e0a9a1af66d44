"""Exception types shared across the workbench."""


class OmlabError(Exception):
    """Base class for all workbench errors."""


class SpecSyntaxError(OmlabError):
    """Malformed lattice spec text, with 1-based location."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class SpecSemanticError(OmlabError):
    """Well-formed spec text that does not describe a usable structure."""


class AxiomViolation(OmlabError):
    """A lattice or orthocomplement axiom fails; carries the axiom name and a witness."""

    def __init__(self, axiom: str, witness: str):
        super().__init__(f"axiom '{axiom}' violated: {witness}")
        self.axiom = axiom
        self.witness = witness


class SizeCapExceeded(OmlabError):
    """A configurable size bound (elements, contexts, scan width) was exceeded."""


class SubalgebraRejected(OmlabError):
    """Seed set cannot produce a usable Boolean subalgebra."""


class OracleBoundExceeded(OmlabError):
    """Exhaustive subobject enumeration would exceed the candidate-family bound."""


class NoContextsError(OmlabError):
    """The lattice has no Boolean context, so presheaf machinery is undefined."""
