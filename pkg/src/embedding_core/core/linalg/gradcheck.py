"""
Gradient Checker - Central finite differences against an analytic gradient.
"""
from dataclasses import dataclass

import numpy as np

from ...shared_types import FloatArray
from .optimizer import LossAndGradient


@dataclass(frozen=True)
class GradientCheck:
    """Analytic vs. numerical gradient at one point."""

    analytic: FloatArray
    numerical: FloatArray

    @property
    def relative_error(self) -> float:
        """||g_a - g_n|| / max(||g_a||, ||g_n||)."""
        scale = max(
            float(np.linalg.norm(self.analytic)),
            float(np.linalg.norm(self.numerical)),
            np.finfo(float).tiny,
        )
        return float(np.linalg.norm(self.analytic - self.numerical)) / scale


def check_gradient(
    f_and_grad: LossAndGradient, x: FloatArray, step: float = 1e-5
) -> GradientCheck:
    """Compare the analytic gradient with central differences of step `step`."""
    x = np.asarray(x, dtype=np.float64).ravel()
    _, analytic = f_and_grad(x)
    numerical = np.zeros_like(x)

    for i in range(x.size):
        dx = np.zeros_like(x)
        dx[i] = step
        f_plus, _ = f_and_grad(x + dx)
        f_minus, _ = f_and_grad(x - dx)
        numerical[i] = (f_plus - f_minus) / (2 * step)

    return GradientCheck(
        analytic=np.asarray(analytic, dtype=np.float64).ravel(), numerical=numerical
    )
