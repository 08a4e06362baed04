"""Exception hierarchy shared by every ncq module."""


class NcqError(Exception):
    """Base class; ``kind`` is the stable name used in JSON error objects."""

    kind = "NcqError"

    def to_json(self):
        return {"type": self.kind, "message": str(self)}


def _make(name, doc):
    return type(name, (NcqError,), {"kind": name, "__doc__": doc})


BadParameter = _make("BadParameter", "Invalid field mode or algebra parameter.")
DSLSyntaxError = _make("DSLSyntaxError", "Malformed presentation or expression text.")
InhomogeneousRelation = _make("InhomogeneousRelation", "A relation is not homogeneous of degree 2.")
NonConfluent = _make("NonConfluent", "An overlap ambiguity does not resolve.")
DegenerateLeading = _make("DegenerateLeading", "Leading words do not give a PBW rewriting system.")
NotCentral = _make("NotCentral", "A supplied generator is not central.")
WrongCase = _make("WrongCase", "Computation requested outside its parameter case.")
NonSquare = _make("NonSquare", "Relation matrix is not square and not of full-space type.")
ShapeMismatch = _make("ShapeMismatch", "Point scheme or automorphism has an unexpected shape.")
NotOnScheme = _make("NotOnScheme", "Point does not lie on the point scheme.")
KernelTooBig = _make("KernelTooBig", "Relation matrix kernel has dimension at least 2.")
TruncationTooShallow = _make("TruncationTooShallow", "Truncated algebra is not deep enough.")
NotNormal = _make("NotNormal", "Element is not normal.")
OrderInfinite = _make("OrderInfinite", "Parameter has infinite multiplicative order.")
NeitherHolds = _make("NeitherHolds", "Matrix pair satisfies neither Weyl relation orientation.")
DimensionMismatch = _make("DimensionMismatch", "Matrix pairs have different sizes.")


class DSLError(DSLSyntaxError):
    def __init__(self, message, line=None, column=None):
        self.line, self.column = line, column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)

    def to_json(self):
        out = super().to_json()
        out["line"], out["column"] = self.line, self.column
        return out
