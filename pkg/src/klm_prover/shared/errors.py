"""Exception hierarchy for the KLM prover."""

from typing import List, Optional, Sequence


class KLMError(Exception):
    """Base class for every error raised by the prover."""


class FormulaSyntaxError(KLMError):
    """Raised when a formula cannot be parsed.

    Attributes:
        message: Human readable reason
        position: Zero-based character offset in the parsed text
        line: One-based line number when the text came from a knowledge base
    """

    def __init__(self, message: str, position: int = 0, line: Optional[int] = None):
        self.message = message
        self.position = position
        self.line = line
        super().__init__(str(self))

    def __str__(self) -> str:
        where = f"line {self.line}, " if self.line is not None else ""
        return f"{where}position {self.position}: {self.message}"


class KnowledgeBaseError(KLMError):
    """Raised when one or more lines of a knowledge base fail to parse."""

    def __init__(self, errors: Sequence[FormulaSyntaxError]):
        self.errors: List[FormulaSyntaxError] = list(errors)
        super().__init__("; ".join(str(e) for e in self.errors))


class LanguageError(KLMError):
    """Raised when a formula lies outside the language of a logic."""

    def __init__(self, violations: Sequence[str]):
        self.violations: List[str] = list(violations)
        super().__init__("; ".join(self.violations))


class RuleApplicationError(KLMError):
    """Raised when a tableau rule is applied outside its precondition."""


class ModelError(KLMError):
    """Raised when a model cannot answer an evaluation request."""
