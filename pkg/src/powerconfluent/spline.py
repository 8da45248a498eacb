"""Uniform B-splines with open ends, evaluated with de Boor's scheme."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

CLAMP = "clamp"
DUPLICATE = "duplicate"
END_METHODS = (CLAMP, DUPLICATE)


def make_knots(n_ctrl: int, p: int = 2, method: str = CLAMP) -> np.ndarray:
    """Knot vector for ``n_ctrl`` control points of degree ``p``.

    ``clamp`` repeats the end knots to multiplicity p+1 around unit-spaced
    interior knots. ``duplicate`` leaves the knots uniform and instead
    repeats the first and last control points p-1 extra times, so the
    vector returned is for ``n_ctrl + 2*(p-1)`` points.
    """
    if p < 1:
        raise ValueError("degree must be at least 1")
    padded = n_ctrl + 2 * (p - 1) if method == DUPLICATE else n_ctrl
    if n_ctrl < 2 or padded < p + 1:
        raise ValueError(f"too few control points ({n_ctrl}) for degree {p} with {method!r} ends")
    if method == CLAMP:
        inner = np.arange(1, n_ctrl - p, dtype=float)
        last = float(n_ctrl - p)
        return np.concatenate([np.zeros(p + 1), inner, np.full(p + 1, last)])
    if method == DUPLICATE:
        return np.arange(padded + p + 1, dtype=float)
    raise ValueError(f"unknown end method {method!r}")


@dataclass(frozen=True)
class BSpline:
    degree: int
    control_points: np.ndarray
    knots: np.ndarray
    end_method: str = CLAMP

    def __post_init__(self):
        ctrl = np.asarray(self.control_points, dtype=float)
        knots = np.asarray(self.knots, dtype=float)
        if ctrl.ndim != 2:
            raise ValueError("control points must be an (n, dim) array")
        if len(knots) != len(ctrl) + self.degree + 1:
            raise ValueError("knot count must equal control points + degree + 1")
        if np.any(np.diff(knots) < 0):
            raise ValueError("knots must be non-decreasing")
        object.__setattr__(self, "control_points", ctrl)
        object.__setattr__(self, "knots", knots)

    @classmethod
    def from_points(cls, points, degree: int = 2, end_method: str = CLAMP) -> "BSpline":
        """Spline through a control polygon, attached to its first and last point."""
        pts = np.asarray(points, dtype=float)
        knots = make_knots(len(pts), degree, end_method)
        if end_method == DUPLICATE and degree > 1:
            reps = degree - 1
            pts = np.concatenate([np.repeat(pts[:1], reps, axis=0), pts, np.repeat(pts[-1:], reps, axis=0)])
        return cls(degree, pts, knots, end_method)

    @property
    def domain(self) -> tuple:
        p, n = self.degree, len(self.control_points)
        return float(self.knots[p]), float(self.knots[n])

    def breakpoints(self) -> np.ndarray:
        """Distinct knot values inside the domain; consecutive pairs bound the spans."""
        p, n = self.degree, len(self.control_points)
        return np.unique(self.knots[p:n + 1])

    def _span(self, t: float) -> int:
        p, n = self.degree, len(self.control_points)
        if t >= self.knots[n]:
            k = n - 1
            while self.knots[k] == self.knots[k + 1]:
                k -= 1
            return k
        return int(np.searchsorted(self.knots, t, side="right")) - 1

    def _check(self, t: float) -> None:
        lo, hi = self.domain
        if not (lo <= t <= hi):
            raise ValueError(f"parameter {t} outside the spline domain [{lo}, {hi}]")

    def _de_boor(self, k: int, ts: np.ndarray, ctrl: np.ndarray) -> np.ndarray:
        p, u = self.degree, self.knots
        d = [np.broadcast_to(ctrl[j + k - p], (len(ts),) + ctrl.shape[1:]).astype(float) for j in range(p + 1)]
        for r in range(1, p + 1):
            for j in range(p, r - 1, -1):
                lo = u[j + k - p]
                hi = u[j + 1 + k - r]
                alpha = ((ts - lo) / (hi - lo))[:, None]
                d[j] = (1.0 - alpha) * d[j - 1] + alpha * d[j]
        return d[p]

    def evaluate(self, t: float) -> np.ndarray:
        self._check(t)
        k = self._span(t)
        return self._de_boor(k, np.array([float(t)]), self.control_points)[0]

    def basis(self, t: float) -> np.ndarray:
        """Values of all basis functions at ``t`` (de Boor applied to unit vectors)."""
        self._check(t)
        k = self._span(t)
        eye = np.eye(len(self.control_points))
        return self._de_boor(k, np.array([float(t)]), eye)[0]

    def active_indices(self, t: float) -> range:
        """Indices of the p+1 control points that can influence the curve at ``t``."""
        k = self._span(t)
        return range(k - self.degree, k + 1)

    def sample(self, samples_per_segment: int = 64) -> np.ndarray:
        return sample_polyline(self, samples_per_segment)


def sample_polyline(s: BSpline, samples_per_segment: int = 64) -> np.ndarray:
    """Evaluate ``s`` at evenly spaced parameters in each knot span, span ends included."""
    if samples_per_segment < 1:
        raise ValueError("samples_per_segment must be at least 1")
    bps = s.breakpoints()
    frac = np.arange(samples_per_segment) / samples_per_segment
    chunks = []
    for lo, hi in zip(bps[:-1], bps[1:]):
        ts = lo + (hi - lo) * frac
        chunks.append(s._de_boor(s._span(lo), ts, s.control_points))
    k_end = s._span(bps[-1])
    chunks.append(s._de_boor(k_end, np.array([bps[-1]]), s.control_points))
    return np.concatenate(chunks)


def spline_for_path(points, degree: int = 2, end_method: str = CLAMP) -> BSpline:
    """Spline through a routing path; clamped paths too short for ``degree`` use a lower one."""
    pts = np.asarray(points, dtype=float)
    if end_method == CLAMP:
        degree = min(degree, len(pts) - 1)
    return BSpline.from_points(pts, degree, end_method)
