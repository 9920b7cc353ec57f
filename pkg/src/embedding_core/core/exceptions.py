"""
Embedding Core Exceptions - Custom exceptions for graph embedding pipelines.

Exceptions are organized by component and carry structured details so the
command line can report them and map them onto exit codes:
usage errors exit with 2, data errors with 3, numerical errors with 4.
"""
from typing import Any, Dict, List, Optional

from ..shared_types import EXIT_DATA, EXIT_NUMERICAL, EXIT_USAGE, EmbeddingError


class InvalidArgumentError(EmbeddingError):
    """Raised when an operation precondition is violated."""

    exit_code = EXIT_USAGE
    code = "INVALID_ARGUMENT"

    def __init__(
        self,
        message: str,
        argument: Optional[str] = None,
        value: Optional[Any] = None,
        component: str = "core",
    ):
        super().__init__(
            message=message,
            error_code=self.code,
            component=component,
            details={"argument": argument, "value": _jsonable(value)},
        )


# Data exceptions
class InvalidDataError(InvalidArgumentError):
    """Raised when input data, not a caller's choice, breaks a precondition."""

    exit_code = EXIT_DATA
    code = "INVALID_DATA"


class GraphFormatError(EmbeddingError):
    """Raised when an edge-list file cannot be parsed."""

    exit_code = EXIT_DATA

    def __init__(
        self,
        message: str,
        path: Optional[str] = None,
        line_number: Optional[int] = None,
        line: Optional[str] = None,
    ):
        super().__init__(
            message=message,
            error_code="GRAPH_FORMAT_ERROR",
            component="graphs",
            details={"path": path, "line_number": line_number, "line": line},
        )


class EmbeddingFormatError(EmbeddingError):
    """Raised when an embedding container is malformed."""

    exit_code = EXIT_DATA

    def __init__(self, message: str, path: Optional[str] = None):
        super().__init__(
            message=message,
            error_code="EMBEDDING_FORMAT_ERROR",
            component="lpca",
            details={"path": path},
        )


class DatasetNotFoundError(EmbeddingError):
    """Raised when a reproduction recipe needs a dataset file that is absent."""

    exit_code = EXIT_DATA

    def __init__(self, dataset: str, expected_path: str):
        super().__init__(
            message=(
                f"Dataset '{dataset}' not found: expected edge list at "
                f"'{expected_path}' (set --data-dir or EMBEDDING_CORE_DATA_DIR)"
            ),
            error_code="DATASET_NOT_FOUND",
            component="reproduce",
            details={"dataset": dataset, "expected_path": expected_path},
        )


# Numerical exceptions
class EigensolverError(EmbeddingError):
    """Raised when the eigensolver fails to converge."""

    exit_code = EXIT_NUMERICAL

    def __init__(
        self,
        message: str,
        n: Optional[int] = None,
        k: Optional[int] = None,
        iterations: Optional[int] = None,
        converged: Optional[int] = None,
    ):
        super().__init__(
            message=message,
            error_code="EIGENSOLVER_ERROR",
            component="linalg",
            details={
                "n": n,
                "k": k,
                "iterations": iterations,
                "converged": converged,
            },
        )


class NonFiniteValueError(EmbeddingError):
    """Raised when an objective returns a non-finite loss or gradient."""

    exit_code = EXIT_NUMERICAL

    def __init__(
        self,
        message: str,
        evaluation: Optional[int] = None,
        iteration: Optional[int] = None,
        quantity: Optional[str] = None,
    ):
        super().__init__(
            message=message,
            error_code="NON_FINITE_VALUE",
            component="linalg",
            details={
                "evaluation": evaluation,
                "iteration": iteration,
                "quantity": quantity,
            },
        )


class ConstructionError(EmbeddingError):
    """Raised when a constructive embedding fails its margin or validation checks."""

    exit_code = EXIT_NUMERICAL

    def __init__(
        self,
        message: str,
        method: str,
        row: Optional[int] = None,
        suggestions: Optional[List[str]] = None,
    ):
        super().__init__(
            message=message,
            error_code="CONSTRUCTION_ERROR",
            component="constructions",
            details={"method": method, "row": row, "suggestions": suggestions or []},
        )


# Utility functions for error handling
def format_error_chain(exc: BaseException) -> str:
    """
    Format a chain of exceptions for logging.

    Args:
        exc: The exception to format

    Returns:
        Formatted error string
    """
    errors = []
    current: Optional[BaseException] = exc

    while current:
        if isinstance(current, EmbeddingError):
            errors.append(f"{current.error_code}: {current.message}")
        else:
            errors.append(f"{current.__class__.__name__}: {str(current)}")

        current = current.__cause__ or current.__context__

    return " | ".join(errors)


def _jsonable(value: Any) -> Any:
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    return repr(value)
