"""Dimension-generic geometric kernel.

The slice plane is always the span of the first k coordinate axes; general
positions are handled by rotating inputs before they get here. Provides
projections with slice weights, smallest anchored circumspheres, emptiness
tests, facet-visibility interval typing, and the Jacobian of the
sphere-parametrization change of variables.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .constants import IntervalType
from .errors import DegeneracyError

__all__ = [
    "WeightedPoint",
    "AnchoredSphere",
    "Interval",
    "project_to_slice",
    "slice_cloud",
    "smallest_anchored_circumsphere",
    "sphere_is_empty",
    "visibility_type",
    "bp_jacobian",
]

_RANK_RCOND = 1e-12


@dataclass(frozen=True)
class WeightedPoint:
    """Projection of an R^n point onto the slice plane, with its slice weight.

    The weight is minus the squared distance of the preimage to the plane, so
    it is always <= 0 for slice-induced weights.
    """

    y: np.ndarray
    w: float
    preimage: np.ndarray | None = None


@dataclass(frozen=True)
class AnchoredSphere:
    """Sphere in R^n whose center (the anchor) lies in the slice plane."""

    anchor: np.ndarray
    radius: float


@dataclass(frozen=True)
class Interval:
    """Interval [lower, upper] of mosaic simplices sharing one anchored sphere.

    Simplices are identified by sorted tuples of generator indices; the type
    is (dim lower, dim upper) and the members are all simplices Q with
    lower <= Q <= upper.
    """

    lower: tuple[int, ...]
    upper: tuple[int, ...]
    type: IntervalType
    sphere: AnchoredSphere
    members: tuple[tuple[int, ...], ...]


def project_to_slice(x: Sequence[float] | np.ndarray, k: int) -> WeightedPoint:
    """Drop coordinates k+1..n of ``x`` and attach the weight -(distance to plane)^2."""
    x = np.asarray(x, dtype=float)
    if x.ndim != 1:
        raise ValueError("expected a single point")
    if not 1 <= k <= x.size:
        raise ValueError(f"need 1 <= k <= {x.size}, got k={k}")
    tail = x[k:]
    return WeightedPoint(y=x[:k].copy(), w=-float(tail @ tail), preimage=x.copy())


def slice_cloud(cloud: np.ndarray, k: int) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized projection of an (N, n) cloud: returns (projections, weights)."""
    cloud = np.atleast_2d(np.asarray(cloud, dtype=float))
    if not 1 <= k <= cloud.shape[1]:
        raise ValueError(f"need 1 <= k <= {cloud.shape[1]}, got k={k}")
    tails = cloud[:, k:]
    return cloud[:, :k].copy(), -np.einsum("ij,ij->i", tails, tails)


def smallest_anchored_circumsphere(
    points: Sequence[Sequence[float]] | np.ndarray, k: int
) -> AnchoredSphere:
    """Smallest sphere through m+1 points of R^n whose center lies in the k-plane.

    The anchors of all circumscribing anchored spheres form a (k-m)-flat, cut
    out by the m linear equal-power equations; the smallest sphere's anchor is
    the orthogonal projection of the first point's slice projection onto that
    flat (the minimum of a convex quadratic).
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    count, n = pts.shape
    m = count - 1
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n={n}, got k={k}")
    if m > k:
        raise ValueError(f"at most k+1={k + 1} points can lie on an anchored sphere generically")
    y = pts[:, :k]
    sq = np.einsum("ij,ij->i", pts, pts)
    if m == 0:
        anchor = y[0].copy()
    else:
        lhs = 2.0 * (y[1:] - y[0])
        rhs = (sq[1:] - sq[0]) - lhs @ y[0]
        shift, _, rank, _ = np.linalg.lstsq(lhs, rhs, rcond=_RANK_RCOND)
        if rank < m:
            raise DegeneracyError(
                "projected points are affinely dependent; no unique anchored circumsphere"
            )
        anchor = y[0] + shift
    r2 = float(np.sum((anchor - y[0]) ** 2) + (sq[0] - y[0] @ y[0]))
    return AnchoredSphere(anchor=anchor, radius=math.sqrt(max(r2, 0.0)))


def sphere_is_empty(
    sphere: AnchoredSphere,
    cloud: np.ndarray,
    exclude: Sequence[int] = (),
    rel_tol: float = 1e-9,
) -> bool:
    """True iff no non-excluded cloud point lies strictly inside the sphere.

    Points closer to the embedded anchor than radius * (1 - rel_tol) count as
    inside; the tolerance band absorbs floating-point noise for the defining
    points, which sit exactly on the sphere.
    """
    cloud = np.atleast_2d(np.asarray(cloud, dtype=float))
    if cloud.shape[0] == 0:
        return True
    center = np.zeros(cloud.shape[1])
    center[: sphere.anchor.size] = sphere.anchor
    d2 = np.einsum("ij,ij->i", cloud - center, cloud - center)
    keep = np.ones(cloud.shape[0], dtype=bool)
    if len(exclude):
        keep[np.asarray(list(exclude), dtype=int)] = False
    threshold = (sphere.radius * (1.0 - rel_tol)) ** 2
    return bool(np.all(d2[keep] >= threshold))


def visibility_type(
    sphere: AnchoredSphere,
    simplex: Sequence[WeightedPoint],
    rel_tol: float = 1e-9,
    check_on_sphere: bool = True,
) -> IntervalType:
    """Interval type (ell, m) of an m-simplex on its anchored circumsphere.

    m - ell is the number of facets of the projected simplex whose supporting
    hyperplane (within the affine hull of the projections) strictly separates
    the anchor from the opposite vertex; in barycentric coordinates of the
    anchor these are exactly the negative coordinates.
    """
    proj = np.stack([np.asarray(p.y, dtype=float) for p in simplex])
    m = proj.shape[0] - 1
    anchor = np.asarray(sphere.anchor, dtype=float)
    scale = max(1.0, float(np.max(np.abs(proj - anchor))))
    if check_on_sphere:
        weights = np.array([p.w for p in simplex])
        powers = np.einsum("ij,ij->i", proj - anchor, proj - anchor) - weights
        r2 = sphere.radius**2
        if np.max(np.abs(powers - r2)) > 1e-6 * max(r2, scale**2):
            raise ValueError("simplex vertices do not lie on the given sphere")
    system = np.vstack([proj.T, np.ones(m + 1)])
    target = np.append(anchor, 1.0)
    bary, _, rank, _ = np.linalg.lstsq(system, target, rcond=_RANK_RCOND)
    if rank < m + 1:
        raise DegeneracyError("projected simplex is affinely degenerate")
    if np.max(np.abs(system @ bary - target)) > rel_tol * scale:
        raise DegeneracyError("anchor does not lie in the affine hull of the projections")
    if np.min(np.abs(bary)) < rel_tol:
        raise DegeneracyError("anchor lies on a facet hyperplane of the projected simplex")
    visible = int(np.count_nonzero(bary < 0.0))
    return IntervalType(ell=m - visible, m=m)


def bp_jacobian(r: float, u: np.ndarray, k: int, n: int | None = None) -> float:
    """Jacobian r^((n-1)(k+1)) * k! * Vol_k(u') of the map
    (y, r, u) -> (y + r u_0, ..., y + r u_k), where u' is the projection of
    the k+1 unit vectors u onto the k-plane.

    Degenerate projections give 0. For k = n this is the classical sphere
    parametrization Jacobian with the full (unprojected) simplex volume.
    """
    u = np.atleast_2d(np.asarray(u, dtype=float))
    if u.shape[0] != k + 1:
        raise ValueError(f"need k+1={k + 1} unit vectors, got {u.shape[0]}")
    if n is None:
        n = u.shape[1]
    elif n != u.shape[1]:
        raise ValueError(f"vectors live in dimension {u.shape[1]}, not n={n}")
    if k == 0:
        vol_factor = 1.0  # k! Vol_0 = 1
    else:
        proj = u[:, :k]
        vol_factor = abs(np.linalg.det(proj[1:] - proj[0]))
    return float(r ** ((n - 1) * (k + 1)) * vol_factor)
