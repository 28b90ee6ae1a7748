"""Exception hierarchy.

Errors split into three families that the command line maps to exit codes:
``InputError`` (bad files, violated preconditions), ``MathematicalFailure``
(the construction does not apply or could not finish), and
``VerificationFailure`` (a certificate check did not pass).
"""


class LineableError(Exception):
    """Base class for every error raised by this package."""

    kind = "LineableError"

    def __init__(self, message="", **detail):
        super().__init__(message)
        self.detail = detail

    def to_json(self):
        out = {"error": self.kind, "message": str(self)}
        for key, value in self.detail.items():
            if hasattr(value, "to_json"):
                value = value.to_json()
            out[key] = value
        return out

    def annotate(self, **detail):
        for key, value in detail.items():
            self.detail.setdefault(key, value)
        return self


class InputError(LineableError):
    kind = "InputError"


class MathematicalFailure(LineableError):
    kind = "MathematicalFailure"


# -- scalars -----------------------------------------------------------------

class BackendMismatch(InputError):
    kind = "BackendMismatch"


class ZeroPolynomial(InputError):
    kind = "ZeroPolynomial"


class ZeroDegree(InputError):
    kind = "ZeroDegree"


class NoConvergence(MathematicalFailure):
    kind = "NoConvergence"


# -- polynomials -------------------------------------------------------------

class FieldMismatch(InputError):
    kind = "FieldMismatch"


class ArityMismatch(InputError):
    kind = "ArityMismatch"


class EmptyBasis(InputError):
    kind = "EmptyBasis"


# -- spaces ------------------------------------------------------------------

class StreamExhausted(MathematicalFailure):
    kind = "StreamExhausted"


class ZeroVector(InputError):
    kind = "ZeroVector"


class DependentSeed(InputError):
    kind = "DependentSeed"


# -- zero finding and building -----------------------------------------------

class RealFieldRejected(InputError):
    kind = "RealFieldRejected"


class BudgetExhausted(MathematicalFailure):
    kind = "BudgetExhausted"


class NoRealZero(MathematicalFailure):
    kind = "NoRealZero"


class DepthExceeded(MathematicalFailure):
    kind = "DepthExceeded"


class SeedNotInZeroSet(InputError):
    kind = "SeedNotInZeroSet"


class PointNotAZero(InputError):
    kind = "PointNotAZero"


class UnknownKind(InputError):
    kind = "UnknownKind"


class VerificationFailure(LineableError):
    kind = "VerificationFailure"
