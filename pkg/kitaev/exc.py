# -*- coding: utf-8 -*-


class KitaevError(Exception):
    pass


class InvalidSize(KitaevError):
    pass


class InvalidParameter(KitaevError):
    pass


class GapClosed(KitaevError):
    pass


class DomainError(KitaevError):
    pass


class BoundaryAmbiguous(KitaevError):
    pass


class BoundaryViolation(KitaevError):
    pass


class NoConvergence(KitaevError):
    """Adaptive refinement gave up before reaching the tolerance.

    `partial` holds the best estimate at the point of failure, `panels`
    the number of panels in use.
    """

    def __init__(self, message, partial=None, panels=0):
        super().__init__(message)
        self.partial = partial
        self.panels = panels
