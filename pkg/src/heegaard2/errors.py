"""Error taxonomy for the whole pipeline.

Every error carries a stable ``code`` string so the CLI can render it as
structured JSON.  Errors are split into two severities:

* input problems (bad files, preconditions not met)        -> exit code 1
* invariant violations (a proven lemma failed on real data) -> exit code 2

The second kind is the valuable one: it means either an upstream bug or an
input that does not satisfy the hypotheses the combinatorics relies on.
"""

from __future__ import annotations


class HeegaardError(Exception):
    """Base class; ``code`` is a machine-readable identifier."""

    code = "Error"
    exit_code = 1

    def to_json(self) -> dict:
        return {"error": self.code, "message": str(self)}


# ---------------------------------------------------------------------------
# input / precondition errors (exit code 1)


class DiagramSyntaxError(HeegaardError):
    code = "SyntaxError"

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)

    def to_json(self) -> dict:
        d = super().to_json()
        if self.line is not None:
            d["line"] = self.line
        return d


class DuplicateVertexError(HeegaardError):
    code = "DuplicateVertex"


class MissingVertexError(HeegaardError):
    code = "MissingVertex"


class GenusMismatchError(HeegaardError):
    code = "GenusMismatch"


class NotTightError(HeegaardError):
    code = "NotTight"


class NotAWaveError(HeegaardError):
    code = "NotAWave"


class EmptyClassError(HeegaardError):
    code = "EmptyClass"


class BudgetExceededError(HeegaardError):
    code = "BudgetExceeded"


class UndecidedComparisonError(HeegaardError):
    code = "UndecidedComparison"


class UndecidedSignError(HeegaardError):
    code = "UndecidedSign"


class ObstructionError(HeegaardError):
    """No positive cone exists at the requested depth (a finite certificate)."""

    code = "Obstruction"

    def __init__(self, message: str, witness: tuple = ()):
        self.witness = witness
        super().__init__(message)


# ---------------------------------------------------------------------------
# invariant violations (exit code 2): a checked lemma failed


class InvariantViolation(HeegaardError):
    exit_code = 2


class PostconditionViolation(InvariantViolation):
    code = "PostconditionViolation"


class ParallelismViolation(InvariantViolation):
    code = "ParallelismViolation"


class InconsistentLabelsError(InvariantViolation):
    code = "InconsistentLabels"


class CuspRelationViolation(InvariantViolation):
    code = "CuspRelationViolation"


class SourceViolation(InvariantViolation):
    code = "SourceViolation"


class QuadViolation(InvariantViolation):
    code = "QuadViolation"


class MergeWordMismatch(InvariantViolation):
    code = "MergeWordMismatch"


class NotRemovableError(InvariantViolation):
    code = "NotRemovable"


class PositivityViolation(InvariantViolation):
    code = "PositivityViolation"


class CountMismatchError(InvariantViolation):
    code = "CountMismatch"


class WaveDetectedError(InvariantViolation):
    code = "WaveDetected"
