"""Fringe visibility under Gaussian phase noise, and visibility-vs-order fits."""

from __future__ import annotations

import io
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np


class VisibilityDataError(ValueError):
    pass


@dataclass(frozen=True)
class VisibilityPoint:
    order: int
    visibility: float
    sigma: float | None = None

    def __post_init__(self):
        if int(self.order) != self.order or self.order < 1:
            raise VisibilityDataError(f"order must be a positive integer, got {self.order!r}")
        if not 0 <= self.visibility <= 1:
            raise VisibilityDataError(f"visibility must lie in [0, 1], got {self.visibility!r}")
        if self.sigma is not None and not self.sigma >= 0:
            raise VisibilityDataError(f"sigma must be >= 0, got {self.sigma!r}")


@dataclass(frozen=True)
class VisibilityFit:
    v_max: float
    phi1_sq: float
    covariance: np.ndarray | None = None

    @property
    def v_max_err(self):
        return float(np.sqrt(self.covariance[0, 0])) if self.covariance is not None else float("nan")

    @property
    def phi1_sq_err(self):
        return float(np.sqrt(self.covariance[1, 1])) if self.covariance is not None else float("nan")


def visibility_from_variance(v_max, phi_sq):
    """Visibility left by a Gaussian phase noise of variance ``phi_sq``."""
    return v_max * np.exp(-np.asarray(phi_sq) / 2)


def visibility_curve(fit, orders):
    p = np.asarray(orders, dtype=float)
    return visibility_from_variance(fit.v_max, p**2 * fit.phi1_sq)


def fit_visibility(points):
    """Fit ``V = V_max exp(-p**2 phi1_sq / 2)`` by weighted regression of ln V on p**2.

    Weights are ``(V / sigma)**2`` when every point carries an uncertainty and
    the covariance is then taken as absolute; otherwise weights are uniform
    and the covariance is scaled by the residual variance.
    """
    points = list(points)
    if len(points) < 2:
        raise VisibilityDataError("need at least two points")
    bad = [i for i, pt in enumerate(points) if pt.visibility <= 0]
    if bad:
        raise VisibilityDataError(
            "visibility must be > 0 to take its log; offending points: "
            + ", ".join(f"#{i} (p={points[i].order})" for i in bad)
        )
    p = np.array([pt.order for pt in points], dtype=float)
    if np.unique(p).size < 2:
        raise VisibilityDataError("all points share the same diffraction order")
    v = np.array([pt.visibility for pt in points])
    y = np.log(v)
    x = p**2

    absolute = all(pt.sigma for pt in points)
    w = (v / np.array([pt.sigma for pt in points], dtype=float)) ** 2 if absolute else np.ones_like(v)

    design = np.column_stack([np.ones_like(x), x])
    normal = design.T @ (w[:, None] * design)
    intercept, slope = np.linalg.solve(normal, design.T @ (w * y))
    cov_lin = np.linalg.inv(normal)
    if not absolute:
        dof = len(points) - 2
        resid = y - (intercept + slope * x)
        cov_lin = cov_lin * (float(resid @ resid) / dof if dof > 0 else 0.0)

    v_max, phi1_sq = float(np.exp(intercept)), float(-2 * slope)
    jac = np.diag([v_max, -2.0])
    cov = jac @ cov_lin @ jac.T
    if v_max > 1:
        warnings.warn(f"fitted V_max = {v_max:.4f} exceeds 1; clamped to 1", stacklevel=2)
        v_max = 1.0
    return VisibilityFit(v_max=v_max, phi1_sq=phi1_sq, covariance=cov)


def variance_to_visibility_report(variance_per_p2, v_max, max_order):
    """Predicted visibility for orders ``1..max_order`` as ``[(p, V), ...]``."""
    if variance_per_p2 < 0:
        raise ValueError("variance must be >= 0")
    orders = np.arange(1, int(max_order) + 1)
    return [(int(p), float(v)) for p, v in zip(orders, visibility_from_variance(v_max, orders**2 * variance_per_p2))]


def parse_visibility(text, source="<string>"):
    """Parse lines ``p V [sigma_V]``; '#' starts a comment."""
    points = []
    for lineno, raw in enumerate(io.StringIO(text), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise VisibilityDataError(f"{source}:{lineno}: expected 'p V [sigma_V]', got {line!r}")
        try:
            order = float(parts[0])
            vals = [float(s) for s in parts[1:]]
        except ValueError:
            raise VisibilityDataError(f"{source}:{lineno}: not a number in {line!r}") from None
        try:
            points.append(VisibilityPoint(int(order) if order.is_integer() else order, *vals))
        except VisibilityDataError as exc:
            raise VisibilityDataError(f"{source}:{lineno}: {exc}") from None
    return points


def load_visibility(path):
    path = Path(path)
    return parse_visibility(path.read_text(encoding="utf-8"), source=str(path))
