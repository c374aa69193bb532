"""Exception hierarchy.

Every error raised deliberately by the package derives from
:class:`PolywedgeError`; most also derive from :class:`ValueError` so
callers that only care about bad input can catch that.
"""


class PolywedgeError(Exception):
    pass


# -- complex construction ----------------------------------------------------

class ComplexError(PolywedgeError, ValueError):
    pass


class DegenerateFace(ComplexError):
    def __init__(self, face, reason):
        self.face = face
        self.reason = reason
        super().__init__(f"face {face}: {reason}")


class NotAPseudomanifold(ComplexError):
    """A pseudomanifold condition failed.

    ``condition`` is 1 (a cell is not a face of any 2-cell), 2 (an edge
    bounds more than two faces) or 3 (faces are not edge-connected).
    ``cells`` lists the offending cell ids.
    """

    def __init__(self, condition, cells, detail=""):
        self.condition = condition
        self.cells = tuple(cells)
        msg = f"pseudomanifold condition {condition} fails at {self.cells}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class IncoherentOrientation(ComplexError):
    """Two faces induce the same sign on a shared edge."""

    def __init__(self, edge, faces, detail=""):
        self.edge = edge
        self.faces = tuple(faces)
        msg = f"faces {self.faces} are not coherently oriented along edge {edge}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class Nonorientable(IncoherentOrientation):
    """No choice of face orientations is coherent."""


class UnknownCell(ComplexError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


# -- forms and products ------------------------------------------------------

class FormError(PolywedgeError, ValueError):
    pass


class DegreeMismatch(FormError):
    pass


class ComplexMismatch(FormError):
    pass


class DegreeOutOfRange(FormError):
    pass


class DegreeOverflow(FormError):
    pass


class NotClosed(FormError):
    pass


class UnsupportedDegreePair(FormError):
    pass


# -- text formats ------------------------------------------------------------

class ParseError(PolywedgeError, ValueError):
    """Malformed mesh or form text. ``line`` is 1-based when known."""

    def __init__(self, message, line=None):
        self.line = line
        self.message = message
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class MalformedHeader(ParseError):
    pass


class MalformedLine(ParseError):
    pass


class CountMismatch(ParseError):
    pass


class IndexOutOfRange(ParseError):
    pass


class UnparseableNumber(ParseError):
    pass


# -- verification harness ----------------------------------------------------

class UnknownProperty(PolywedgeError, KeyError):
    def __str__(self):
        return Exception.__str__(self)
