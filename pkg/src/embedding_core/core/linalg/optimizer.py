"""
Quasi-Newton Minimizer - L-BFGS driver with reported stopping reasons.

Wraps the SciPy L-BFGS-B implementation (no bounds) with the default
hyper-parameters of that implementation: memory 10, projected-gradient
tolerance 1e-5, relative function reduction 2.2e-9 (factr * machine eps),
20 line-search steps, and a 2000-iteration cap. The line search enforces
sufficient decrease, so accepted iterates have non-increasing loss.

Line-search failure is reported as a stopping reason, not raised. A
non-finite loss or gradient from the objective raises NonFiniteValueError
naming the evaluation and iteration where it happened.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field
from scipy.optimize import minimize

from ...shared_types import DEFAULT_MAX_ITERS, FloatArray
from ..exceptions import InvalidArgumentError, NonFiniteValueError

logger = logging.getLogger(__name__)

LossAndGradient = Callable[[FloatArray], Tuple[float, FloatArray]]


class ConvergenceReason(str, Enum):
    """Why the optimizer stopped."""

    GRAD_TOL = "grad_tol"
    REL_F_TOL = "rel_f_tol"
    MAX_ITERS = "max_iters"
    MAX_EVALUATIONS = "max_evaluations"
    LINE_SEARCH_FAILURE = "line_search_failure"

    @property
    def converged(self) -> bool:
        return self in (ConvergenceReason.GRAD_TOL, ConvergenceReason.REL_F_TOL)


class LBFGSSettings(BaseModel):
    """L-BFGS hyper-parameters."""

    memory: int = Field(default=10, ge=1, le=100, description="Stored correction pairs")
    max_iters: int = Field(
        default=DEFAULT_MAX_ITERS, ge=1, description="Iteration cap"
    )
    grad_tol: float = Field(
        default=1e-5, ge=0.0, description="Stop when max |gradient| <= grad_tol"
    )
    rel_f_tol: float = Field(
        default=2.2e-9,
        ge=0.0,
        description="Stop when (f_k - f_{k+1}) / max(|f_k|, |f_{k+1}|, 1) <= rel_f_tol",
    )
    max_line_search: int = Field(
        default=20, ge=1, description="Line-search steps per iteration"
    )

    def to_dict(self) -> Dict[str, Any]:
        return self.model_dump()


@dataclass
class OptimizeOutcome:
    """Final state of an L-BFGS run."""

    x_final: FloatArray
    loss_final: float
    iters: int
    converged_reason: ConvergenceReason
    evaluations: int = 0
    loss_history: List[float] = field(default_factory=list)
    message: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {
            "loss_final": self.loss_final,
            "iters": self.iters,
            "converged_reason": self.converged_reason.value,
            "evaluations": self.evaluations,
            "message": self.message,
        }


class _TrackedObjective:
    """Counts evaluations, rejects non-finite values and records accepted losses."""

    def __init__(self, f_and_grad: LossAndGradient, size: int):
        self.f_and_grad = f_and_grad
        self.size = size
        self.evaluations = 0
        self.iteration = 0
        self.history: List[float] = []
        self._last_x: Optional[FloatArray] = None
        self._last_f = np.inf

    def __call__(self, x: FloatArray) -> Tuple[float, FloatArray]:
        self.evaluations += 1
        loss, grad = self.f_and_grad(x)
        loss = float(loss)
        grad = np.asarray(grad, dtype=np.float64).ravel()

        if grad.size != self.size:
            raise InvalidArgumentError(
                f"Gradient has {grad.size} entries, expected {self.size}",
                argument="f_and_grad",
                component="linalg",
            )
        if not np.isfinite(loss):
            raise NonFiniteValueError(
                f"Non-finite loss at evaluation {self.evaluations}",
                evaluation=self.evaluations,
                iteration=self.iteration,
                quantity="loss",
            )
        if not np.all(np.isfinite(grad)):
            raise NonFiniteValueError(
                f"Non-finite gradient at evaluation {self.evaluations}",
                evaluation=self.evaluations,
                iteration=self.iteration,
                quantity="gradient",
            )

        self._last_x = x.copy()
        self._last_f = loss
        return loss, grad

    def accept(self, xk: FloatArray) -> None:
        self.iteration += 1
        if self._last_x is not None and np.array_equal(xk, self._last_x):
            self.history.append(self._last_f)
        logger.debug(f"L-BFGS iteration {self.iteration}: loss={self._last_f:.6g}")


def lbfgs_minimize(
    f_and_grad: LossAndGradient,
    x0: FloatArray,
    settings: Optional[LBFGSSettings] = None,
) -> OptimizeOutcome:
    """
    Minimize a smooth objective with L-BFGS.

    Args:
        f_and_grad: Maps a parameter vector to (loss, gradient)
        x0: Finite starting point
        settings: Hyper-parameters (defaults when omitted)

    Returns:
        Final iterate, loss, iteration count and stopping reason
    """
    settings = settings or LBFGSSettings()
    x0 = np.asarray(x0, dtype=np.float64).ravel()
    if not np.all(np.isfinite(x0)):
        raise InvalidArgumentError(
            "Starting point must be finite", argument="x0", component="linalg"
        )

    objective = _TrackedObjective(f_and_grad, x0.size)
    result = minimize(
        objective,
        x0,
        jac=True,
        method="L-BFGS-B",
        callback=objective.accept,
        options={
            "maxcor": settings.memory,
            "maxiter": settings.max_iters,
            "gtol": settings.grad_tol,
            "ftol": settings.rel_f_tol,
            "maxls": settings.max_line_search,
            "maxfun": max(15000, settings.max_iters * settings.max_line_search),
        },
    )

    message = _message_text(result.message)
    reason = _reason_from_message(message, result.nit, settings.max_iters)
    if reason is ConvergenceReason.LINE_SEARCH_FAILURE:
        logger.warning(f"L-BFGS line search failed after {result.nit} iterations")

    return OptimizeOutcome(
        x_final=np.asarray(result.x, dtype=np.float64),
        loss_final=float(result.fun),
        iters=int(result.nit),
        converged_reason=reason,
        evaluations=objective.evaluations,
        loss_history=objective.history,
        message=message,
    )


def _message_text(message: Any) -> str:
    if isinstance(message, bytes):
        return message.decode(errors="replace")
    return str(message)


def _reason_from_message(message: str, iters: int, max_iters: int) -> ConvergenceReason:
    text = message.upper().replace("_", " ")
    if "PROJECTED GRADIENT" in text:
        return ConvergenceReason.GRAD_TOL
    if "REDUCTION OF F" in text:
        return ConvergenceReason.REL_F_TOL
    if "ITERATIONS" in text or iters >= max_iters:
        return ConvergenceReason.MAX_ITERS
    if "EVALUATIONS" in text:
        return ConvergenceReason.MAX_EVALUATIONS
    return ConvergenceReason.LINE_SEARCH_FAILURE
