"""Regular (weighted Delaunay) triangulations in the plane, their power
diagrams, the anchored radius function, and the interval decomposition.

The triangulation is the lower convex hull of the lift
(y1, y2) -> (y1, y2, |y|^2 - w); generators strictly above the lower hull
have empty power cells and are submerged. Dual power-diagram features carry
the radius function: the radius of a simplex is the minimum of its
generators' power over the dual face, minimized in closed form (a point for
triangles, a clamped quadratic on a segment or ray for edges, a projection
onto the convex cell for vertices). No bounding-box clipping is needed for
the minimization: rays and unbounded cells are handled exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.spatial import ConvexHull, QhullError, cKDTree

from . import geomcore
from .constants import IntervalType
from .errors import DegeneracyError, MosaicError
from .geomcore import AnchoredSphere, Interval, WeightedPoint

__all__ = [
    "RegularTriangulation",
    "PowerDiagram",
    "Mosaic2D",
    "regular_triangulation",
    "power_dual",
    "radius_and_intervals_2d",
]


@dataclass
class RegularTriangulation:
    """Weighted Delaunay triangulation of projections ``y`` with weights ``w``.

    ``triangles`` index into the full generator array and are oriented
    counter-clockwise; ``vertices`` lists the surviving (non-submerged)
    generators. ``preimages`` optionally keeps the originating R^n points.
    """

    y: np.ndarray
    w: np.ndarray
    triangles: np.ndarray
    vertices: np.ndarray
    preimages: np.ndarray | None = None

    @cached_property
    def lifted(self) -> np.ndarray:
        return np.einsum("ij,ij->i", self.y, self.y) - self.w

    @cached_property
    def edges(self) -> np.ndarray:
        pairs = np.vstack(
            [self.triangles[:, [0, 1]], self.triangles[:, [1, 2]], self.triangles[:, [0, 2]]]
        )
        return np.unique(np.sort(pairs, axis=1), axis=0)

    @cached_property
    def edge_triangles(self) -> dict[tuple[int, int], list[int]]:
        incidence: dict[tuple[int, int], list[int]] = {}
        for t, tri in enumerate(self.triangles):
            a, b, c = int(tri[0]), int(tri[1]), int(tri[2])
            for e in ((a, b), (b, c), (a, c)):
                incidence.setdefault(tuple(sorted(e)), []).append(t)
        for e, tris in incidence.items():
            if len(tris) > 2:
                raise MosaicError(f"edge {e} belongs to {len(tris)} triangles")
        return incidence


def regular_triangulation(
    y: np.ndarray, w: np.ndarray, preimages: np.ndarray | None = None
) -> RegularTriangulation:
    """Regular triangulation of weighted points via the lower convex hull of the lift."""
    y = np.ascontiguousarray(np.atleast_2d(np.asarray(y, dtype=float)))
    w = np.asarray(w, dtype=float)
    if y.ndim != 2 or y.shape[1] != 2:
        raise ValueError("expected (N, 2) projections")
    if w.shape != (y.shape[0],):
        raise ValueError("weights must be a vector matching the projections")
    n_pts = y.shape[0]
    if n_pts < 3:
        raise ValueError(f"need at least 3 weighted points, got {n_pts}")
    uniq = np.unique(y, axis=0)
    if uniq.shape[0] < n_pts:
        raise DegeneracyError("duplicate projected generators")

    lifted = np.einsum("ij,ij->i", y, y) - w
    scale = max(1.0, float(np.max(np.ptp(y, axis=0))))
    if n_pts == 3:
        ab, ac = y[1] - y[0], y[2] - y[0]
        area2 = float(ab[0] * ac[1] - ab[1] * ac[0])
        if abs(area2) <= 1e-12 * scale * scale:
            raise DegeneracyError("the three projections are collinear")
        triangles = np.array([[0, 1, 2]] if area2 > 0 else [[0, 2, 1]], dtype=int)
    else:
        try:
            hull = ConvexHull(np.column_stack([y, lifted]), qhull_options="Qt")
        except QhullError as exc:
            raise DegeneracyError(f"degenerate lifted configuration: {exc}") from exc
        downward = hull.equations[:, 2] < 0.0
        triangles = np.asarray(hull.simplices[downward], dtype=int)
        if triangles.shape[0] == 0:
            raise DegeneracyError("no downward-facing hull facets")
        # orient counter-clockwise in the projection
        ab = y[triangles[:, 1]] - y[triangles[:, 0]]
        ac = y[triangles[:, 2]] - y[triangles[:, 0]]
        det = ab[:, 0] * ac[:, 1] - ab[:, 1] * ac[:, 0]
        flip = det < 0
        triangles[flip] = triangles[flip][:, [0, 2, 1]]

    vertices = np.unique(triangles)
    tri = RegularTriangulation(
        y=y, w=w, triangles=triangles, vertices=vertices, preimages=preimages
    )
    tri.edge_triangles  # force the incidence check
    return tri


@dataclass
class PowerDiagram:
    """Dual of a regular triangulation.

    A diagram vertex per triangle (the equal-power point of its three
    generators), a segment or outward ray per triangulation edge, and one
    convex (possibly unbounded) cell per surviving generator, represented by
    its neighbor half-planes.
    """

    tri: RegularTriangulation
    dual_vertices: np.ndarray          # (T, 2) equal-power points
    edges: np.ndarray                  # (E, 2) sorted generator pairs
    edge_tris: np.ndarray              # (E, 2) adjacent triangles, -1 = unbounded side
    ray_dirs: np.ndarray               # (E, 2) unit outward direction for boundary edges
    neighbors: dict[int, np.ndarray] = field(repr=False, default_factory=dict)
    incident_triangles: dict[int, np.ndarray] = field(repr=False, default_factory=dict)

    def cell_halfplanes(self, i: int) -> tuple[np.ndarray, np.ndarray]:
        """Cell of generator i as {z : U z <= c} with unit rows U."""
        nb = self.neighbors[i]
        diff = self.tri.y[nb] - self.tri.y[i]
        norms = np.linalg.norm(diff, axis=1)
        u = diff / norms[:, None]
        c = (self.tri.lifted[nb] - self.tri.lifted[i]) / (2.0 * norms)
        return u, c

    def cell_polygon(self, i: int, box: tuple[float, float, float, float] | None = None) -> np.ndarray:
        """Cell of generator i clipped to ``box`` (xmin, xmax, ymin, ymax) as a
        counter-clockwise polygon, for inspection and export."""
        y = self.tri.y
        if box is None:
            span = max(float(np.max(np.ptp(y, axis=0))), 1.0)
            xmin, ymin = np.min(y, axis=0) - 2.0 * span
            xmax, ymax = np.max(y, axis=0) + 2.0 * span
        else:
            xmin, xmax, ymin, ymax = box
        poly = [
            np.array([xmin, ymin]),
            np.array([xmax, ymin]),
            np.array([xmax, ymax]),
            np.array([xmin, ymax]),
        ]
        u, c = self.cell_halfplanes(i)
        for normal, offset in zip(u, c):
            poly = _clip_halfplane(poly, normal, offset)
            if not poly:
                break
        return np.asarray(poly)


def _clip_halfplane(poly: list[np.ndarray], normal: np.ndarray, offset: float) -> list[np.ndarray]:
    # Sutherland-Hodgman clip of a convex polygon against normal . z <= offset
    out: list[np.ndarray] = []
    m = len(poly)
    for idx in range(m):
        cur, nxt = poly[idx], poly[(idx + 1) % m]
        cur_in = normal @ cur <= offset
        nxt_in = normal @ nxt <= offset
        if cur_in:
            out.append(cur)
        if cur_in != nxt_in:
            denom = normal @ (nxt - cur)
            t = (offset - normal @ cur) / denom
            out.append(cur + t * (nxt - cur))
    return out


def power_dual(tri: RegularTriangulation) -> PowerDiagram:
    """Power diagram dual to a regular triangulation.

    Diagram vertices solve the two linear equal-power equations per triangle;
    boundary edges carry outward rays along the radical line of their
    generator pair.
    """
    y = tri.y
    lifted = tri.lifted
    a, b, c = tri.triangles[:, 0], tri.triangles[:, 1], tri.triangles[:, 2]
    lhs = np.stack([2.0 * (y[b] - y[a]), 2.0 * (y[c] - y[a])], axis=1)
    rhs = np.stack([lifted[b] - lifted[a], lifted[c] - lifted[a]], axis=1)
    try:
        duals = np.linalg.solve(lhs, rhs[..., None])[..., 0]
    except np.linalg.LinAlgError as exc:
        raise DegeneracyError("a triangle has collinear generators") from exc

    edges = tri.edges
    edge_tris = np.full((len(edges), 2), -1, dtype=int)
    for row, (i, j) in enumerate(map(tuple, edges)):
        tris = tri.edge_triangles[(int(i), int(j))]
        edge_tris[row, : len(tris)] = tris

    ray_dirs = np.full((len(edges), 2), np.nan)
    boundary = edge_tris[:, 1] < 0
    for row in np.flatnonzero(boundary):
        i, j = edges[row]
        t0 = edge_tris[row, 0]
        third = next(int(v) for v in tri.triangles[t0] if v not in (i, j))
        tangent = y[j] - y[i]
        direction = np.array([-tangent[1], tangent[0]])
        direction /= np.linalg.norm(direction)
        # the dual ray leaves the triangle where the third generator's power deficit grows
        if -2.0 * (y[third] - y[i]) @ direction < 0.0:
            direction = -direction
        ray_dirs[row] = direction

    neighbors: dict[int, list[int]] = {int(v): [] for v in tri.vertices}
    for i, j in edges:
        neighbors[int(i)].append(int(j))
        neighbors[int(j)].append(int(i))
    incident: dict[int, list[int]] = {int(v): [] for v in tri.vertices}
    for t, tri_row in enumerate(tri.triangles):
        for v in tri_row:
            incident[int(v)].append(t)

    return PowerDiagram(
        tri=tri,
        dual_vertices=duals,
        edges=edges,
        edge_tris=edge_tris,
        ray_dirs=ray_dirs,
        neighbors={k: np.asarray(v, dtype=int) for k, v in neighbors.items()},
        incident_triangles={k: np.asarray(v, dtype=int) for k, v in incident.items()},
    )


@dataclass
class Mosaic2D:
    """Planar mosaic with per-simplex spheres and the interval decomposition.

    Simplices are sorted tuples of generator indices: M vertices, E edges, and
    T triangles in that order. ``anchors``/``radii`` hold each simplex's
    canonical sphere (shared within an interval); ``interval_id`` maps each
    simplex to its interval.
    """

    tri: RegularTriangulation
    diagram: PowerDiagram
    simplices: list[tuple[int, ...]]
    dims: np.ndarray
    anchors: np.ndarray
    radii: np.ndarray
    interval_id: np.ndarray
    intervals: list[Interval]
    window: tuple[tuple[float, float], tuple[float, float]] | None = None

    def to_dict(self) -> dict:
        """JSON-ready dump: vertices, simplices with radii/anchors, interval ids."""
        return {
            "schema_version": 1,
            "k": 2,
            "window": None
            if self.window is None
            else [[float(b) for b in side] for side in self.window],
            "vertices": [
                {
                    "id": int(v),
                    "y": [float(c) for c in self.tri.y[v]],
                    "w": float(self.tri.w[v]),
                }
                for v in self.tri.vertices
            ],
            "simplices": [
                {
                    "vertices": list(s),
                    "dim": int(self.dims[idx]),
                    "radius": float(self.radii[idx]),
                    "anchor": [float(c) for c in self.anchors[idx]],
                    "interval": int(self.interval_id[idx]),
                }
                for idx, s in enumerate(self.simplices)
            ],
            "intervals": [
                {
                    "id": iid,
                    "ell": iv.type.ell,
                    "m": iv.type.m,
                    "radius": float(iv.sphere.radius),
                    "anchor": [float(c) for c in iv.sphere.anchor],
                    "lower": list(iv.lower),
                    "upper": list(iv.upper),
                    "members": [list(mm) for mm in iv.members],
                }
                for iid, iv in enumerate(self.intervals)
            ],
        }


class _UnionFind:
    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i: int, j: int) -> None:
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            self.parent[rj] = ri


def _edge_minimizers(tri: RegularTriangulation, dia: PowerDiagram) -> tuple[np.ndarray, np.ndarray]:
    y = tri.y
    gen = dia.edges[:, 0]
    start = dia.dual_vertices[dia.edge_tris[:, 0]]
    anchors = np.empty_like(start)
    interior = dia.edge_tris[:, 1] >= 0

    seg = dia.dual_vertices[dia.edge_tris[interior, 1]] - start[interior]
    seg_len2 = np.einsum("ij,ij->i", seg, seg)
    safe = np.maximum(seg_len2, 1e-300)
    t = np.einsum("ij,ij->i", y[gen[interior]] - start[interior], seg) / safe
    anchors[interior] = start[interior] + np.clip(t, 0.0, 1.0)[:, None] * seg

    rays = ~interior
    d = dia.ray_dirs[rays]
    t = np.einsum("ij,ij->i", y[gen[rays]] - start[rays], d)
    anchors[rays] = start[rays] + np.maximum(t, 0.0)[:, None] * d

    diff = anchors - y[gen]
    power = np.einsum("ij,ij->i", diff, diff) - tri.w[gen]
    return anchors, power


def _vertex_minimizer(
    dia: PowerDiagram, i: int, feas_tol: float
) -> tuple[np.ndarray, float]:
    yi = dia.tri.y[i]
    u, c = dia.cell_halfplanes(i)
    slack = u @ yi - c
    if np.all(slack <= feas_tol):
        return yi.copy(), -float(dia.tri.w[i])
    candidates = [yi - s * normal for s, normal in zip(slack, u) if s > 0.0]
    feasible = [
        z for z in candidates if np.all(u @ z - c <= feas_tol)
    ]
    corners = dia.dual_vertices[dia.incident_triangles[i]]
    zs = np.vstack([np.asarray(feasible).reshape(-1, 2), corners])
    d2 = np.einsum("ij,ij->i", zs - yi, zs - yi)
    best = int(np.argmin(d2))
    return zs[best], float(d2[best]) - float(dia.tri.w[i])


def radius_and_intervals_2d(
    tri: RegularTriangulation,
    dia: PowerDiagram,
    cloud: np.ndarray | None = None,
    window: tuple[tuple[float, float], tuple[float, float]] | None = None,
) -> Mosaic2D:
    """Anchored radius function and interval decomposition of a planar mosaic.

    Groups simplices that share an anchored sphere (anchors within
    1e-7 * diameter, radii within 1e-7 relative), validates that every group
    is a combinatorial interval [L, U] with 2^(m-ell) members, and
    cross-checks the (ell, m) type against the facet-visibility
    classification; any disagreement raises MosaicError.
    """
    del cloud  # emptiness against the originating cloud is audited externally
    y = tri.y
    scale = max(1.0, float(np.max(np.ptp(y[tri.vertices], axis=0))))
    feas_tol = 1e-9 * scale

    # triangles: the dual vertex is the anchor
    a, b, c = tri.triangles[:, 0], tri.triangles[:, 1], tri.triangles[:, 2]
    za = dia.dual_vertices
    pow_a = np.einsum("ij,ij->i", za - y[a], za - y[a]) - tri.w[a]
    pow_b = np.einsum("ij,ij->i", za - y[b], za - y[b]) - tri.w[b]
    pow_c = np.einsum("ij,ij->i", za - y[c], za - y[c]) - tri.w[c]
    power_scale = np.maximum(np.abs(pow_a), 1e-12 * scale * scale)
    if np.max(np.abs(pow_b - pow_a) / power_scale) > 1e-6 or np.max(
        np.abs(pow_c - pow_a) / power_scale
    ) > 1e-6:
        raise MosaicError("a dual vertex fails the equal-power certificate")
    tri_power = (pow_a + pow_b + pow_c) / 3.0

    edge_anchor, edge_power = _edge_minimizers(tri, dia)
    vert_anchor = np.empty((len(tri.vertices), 2))
    vert_power = np.empty(len(tri.vertices))
    for row, v in enumerate(tri.vertices):
        vert_anchor[row], vert_power[row] = _vertex_minimizer(dia, int(v), feas_tol)

    simplices: list[tuple[int, ...]] = [(int(v),) for v in tri.vertices]
    simplices += [tuple(int(x) for x in e) for e in dia.edges]
    simplices += [tuple(sorted(int(x) for x in trow)) for trow in tri.triangles]
    dims = np.concatenate(
        [
            np.zeros(len(tri.vertices), dtype=int),
            np.ones(len(dia.edges), dtype=int),
            np.full(len(tri.triangles), 2, dtype=int),
        ]
    )
    anchors = np.vstack([vert_anchor, edge_anchor, za])
    powers = np.concatenate([vert_power, edge_power, tri_power])
    if np.min(powers) < -1e-9 * scale * scale:
        raise MosaicError("negative squared radius; weights are not slice-induced")
    radii = np.sqrt(np.maximum(powers, 0.0))

    index_of = {s: i for i, s in enumerate(simplices)}
    count = len(simplices)

    # group simplices sharing a sphere
    eps = 1e-7 * scale
    features = np.column_stack([anchors, radii])
    pairs = cKDTree(features).query_pairs(r=2.0 * eps, p=np.inf, output_type="ndarray")
    uf = _UnionFind(count)
    for i, j in pairs:
        if (
            np.max(np.abs(anchors[i] - anchors[j])) <= eps
            and abs(radii[i] - radii[j]) <= 1e-7 * max(radii[i], radii[j], 1e-9)
        ):
            uf.union(int(i), int(j))
    groups: dict[int, list[int]] = {}
    for i in range(count):
        groups.setdefault(uf.find(i), []).append(i)

    def assemble(rows: list[int]) -> Interval:
        members = [simplices[r] for r in rows]
        vertex_sets = [set(mm) for mm in members]
        lower = tuple(sorted(set.intersection(*vertex_sets)))
        upper = tuple(sorted(set.union(*vertex_sets)))
        ell, m = len(lower) - 1, len(upper) - 1
        if ell < 0 or upper not in index_of:
            raise MosaicError(f"sphere-sharing group {members} is not an interval")
        expected = {
            tuple(sorted(set(lower) | set(extra)))
            for extra in _subsets(tuple(set(upper) - set(lower)))
        }
        if set(members) != expected or len(members) != 2 ** (m - ell):
            raise MosaicError(f"group {members} is not the interval [{lower}, {upper}]")
        upper_row = index_of[upper]
        sphere = AnchoredSphere(
            anchor=anchors[upper_row].copy(), radius=float(radii[upper_row])
        )
        witness = [
            WeightedPoint(
                y=y[v].copy(),
                w=float(tri.w[v]),
                preimage=None if tri.preimages is None else tri.preimages[v].copy(),
            )
            for v in upper
        ]
        got = geomcore.visibility_type(sphere, witness)
        if got != IntervalType(ell, m):
            raise MosaicError(
                f"visibility type {got} disagrees with sphere grouping ({ell}, {m})"
            )
        return Interval(
            lower=lower,
            upper=upper,
            type=got,
            sphere=sphere,
            members=tuple(sorted(members, key=lambda s: (len(s), s))),
        )

    def refine(rows: list[int]) -> list[list[int]]:
        # two distinct spheres merged at the coarse tolerance (an interval-type
        # transition passes through coinciding spheres); re-cluster at a
        # tolerance that only keeps genuinely identical spheres together
        fine = 1e-10 * scale
        sub = _UnionFind(len(rows))
        for i in range(len(rows)):
            for j in range(i + 1, len(rows)):
                ri, rj = rows[i], rows[j]
                if (
                    np.max(np.abs(anchors[ri] - anchors[rj])) <= fine
                    and abs(radii[ri] - radii[rj]) <= 1e-10 * max(radii[ri], radii[rj])
                ):
                    sub.union(i, j)
        clusters: dict[int, list[int]] = {}
        for i, r in enumerate(rows):
            clusters.setdefault(sub.find(i), []).append(r)
        if len(clusters) < 2:
            raise MosaicError(
                f"grouping conflict not resolved by refinement for {[simplices[r] for r in rows]}"
            )
        return list(clusters.values())

    intervals: list[Interval] = []
    interval_id = np.full(count, -1, dtype=int)
    pending = list(groups.values())
    while pending:
        rows = pending.pop()
        try:
            interval = assemble(rows)
        except (MosaicError, DegeneracyError):
            pending.extend(refine(rows))
            continue
        iid = len(intervals)
        intervals.append(interval)
        for r in rows:
            interval_id[r] = iid
            anchors[r] = interval.sphere.anchor
            radii[r] = interval.sphere.radius

    return Mosaic2D(
        tri=tri,
        diagram=dia,
        simplices=simplices,
        dims=dims,
        anchors=anchors,
        radii=radii,
        interval_id=interval_id,
        intervals=intervals,
        window=window,
    )


def _subsets(items: tuple[int, ...]) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = [()]
    for item in items:
        out += [prev + (item,) for prev in out]
    return out
