"""Exception hierarchy shared by all parcones modules."""


class ParconesError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(ParconesError, ValueError):
    """Input data violates one or more invariants.

    ``issues`` holds every violation found, not only the first one.
    """

    def __init__(self, issues):
        if isinstance(issues, str):
            issues = [issues]
        self.issues = list(issues)
        super().__init__("; ".join(self.issues))


class UnderdeterminedBundleError(ParconesError):
    """Rank >= 2 bundle with neither explicit HN data nor a split description."""


class ContextMismatchError(ParconesError, ValueError):
    pass


class GradeError(ParconesError, ValueError):
    pass


class DegenerateConeError(ParconesError, ValueError):
    pass


class InadmissibleGammaError(ParconesError, ValueError):
    def __init__(self, message, suggestion=None):
        self.suggestion = suggestion
        super().__init__(message)


class ConsistencyError(ParconesError, RuntimeError):
    """Two independent presentations of the same quantity disagreed."""
