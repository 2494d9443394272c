"""Exception types raised across the package.

Every error carries its class name as a machine-readable ``code`` so the
command line can report it verbatim.
"""


class UnknotterError(Exception):
    exit_code = 2

    @property
    def code(self) -> str:
        return type(self).__name__


class MalformedWord(UnknotterError, ValueError):
    """A Gauss word where some label does not occur exactly twice."""


class InconsistentEdges(UnknotterError, ValueError):
    """Planar code edges that do not pair up or are not numbered along the loop."""


class DisconnectedTraversal(UnknotterError, ValueError):
    """Planar code edges that close up before visiting every crossing."""


class NonPlanarCode(UnknotterError, ValueError):
    """Planar code whose rotation system does not embed in the 2-sphere."""


class MissingPlanarData(UnknotterError, ValueError):
    pass


class TooLarge(UnknotterError, ValueError):
    exit_code = 4


class InvalidChordSystem(UnknotterError, ValueError):
    pass


class NotAStep(UnknotterError, ValueError):
    pass


class IncompleteTree(UnknotterError, ValueError):
    pass


class ArityMismatch(UnknotterError, ValueError):
    pass


class IndexOutOfRange(UnknotterError, IndexError):
    pass


class IllegalMove(UnknotterError, ValueError):
    """A Reidemeister move that is not available at the named site."""
