"""Polyhedral complexes: normal fans, stars, stable intersections, sampling.

Cells are canonicalized H-rep Polyhedra, so complexes compare and dedupe by
exact cell keys.  Stable intersection follows the combinatorial definition:
keep sigma1 cap sigma2 whenever the direction spaces of the two cells span
the ambient space, then close under faces.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
from scipy.spatial.distance import directed_hausdorff

from . import linalg
from .polyhedra import Polyhedron, Polytope, point_key, vdot, vsub
from .scalars import as_float, format_scalar, riszero, rsign


class PolyhedralComplex:
    """A finite set of polyhedra closed under taking faces."""

    def __init__(self, ambient_dim, cells=(), close: bool = True):
        self.ambient_dim = int(ambient_dim)
        self._cells: dict = {}
        for c in cells:
            self._add(c)
        if close:
            self._close_under_faces()

    def _add(self, cell: Polyhedron):
        if cell.empty:
            return
        if cell.ambient_dim != self.ambient_dim:
            raise ValueError("cell ambient dimension mismatch")
        self._cells.setdefault(cell.key(), cell)

    def _close_under_faces(self):
        for cell in list(self._cells.values()):
            for f in cell.faces():
                self._add(f)

    # -- vocabulary ---------------------------------------------------------

    @property
    def cells(self):
        return list(self._cells.values())

    def __len__(self):
        return len(self._cells)

    def __iter__(self):
        return iter(self._cells.values())

    def is_empty(self) -> bool:
        return not self._cells

    def dim(self) -> int:
        return max((c.dim() for c in self), default=-1)

    def max_cells(self):
        """Facets of the complex: cells not contained in a larger cell."""
        out = []
        for c in self:
            contained = False
            for other in self:
                if other.key() == c.key() or other.dim() < c.dim():
                    continue
                if other.contains(c.relint_point()):
                    contained = True
                    break
            if not contained:
                out.append(c)
        return out

    def is_pure(self) -> bool:
        dims = {c.dim() for c in self.max_cells()}
        return len(dims) <= 1

    def skeleton(self, k: int) -> "PolyhedralComplex":
        return PolyhedralComplex(
            self.ambient_dim, [c for c in self if c.dim() <= k], close=False
        )

    def contains_point(self, x) -> bool:
        return any(c.contains(x) for c in self)

    def cell_with_point_in_relint(self, x):
        """The unique cell whose relative interior contains x, or None."""
        best = None
        for c in self:
            if c.contains(x) and (best is None or c.dim() < best.dim()):
                best = c
        return best

    def key_set(self):
        return frozenset(self._cells.keys())

    def __eq__(self, other):
        return (
            isinstance(other, PolyhedralComplex)
            and self.ambient_dim == other.ambient_dim
            and self.key_set() == other.key_set()
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.key_set()))

    def __repr__(self):
        dims = {}
        for c in self:
            dims[c.dim()] = dims.get(c.dim(), 0) + 1
        desc = ", ".join(f"{v}x dim {k}" for k, v in sorted(dims.items()))
        return f"PolyhedralComplex(R^{self.ambient_dim}: {desc})"

    # -- constructions ------------------------------------------------------

    def refine(self, other: "PolyhedralComplex") -> "PolyhedralComplex":
        """Common refinement: all pairwise intersections of cells."""
        cells = []
        for a in self:
            for b in other:
                c = a.intersect(b)
                if not c.empty:
                    cells.append(c)
        return PolyhedralComplex(self.ambient_dim, cells, close=False)

    def stable_intersection(self, other: "PolyhedralComplex") -> "PolyhedralComplex":
        """Cells sigma1 cap sigma2 with dim(sigma1 + sigma2) = ambient dim."""
        n = self.ambient_dim
        if other.ambient_dim != n:
            raise ValueError("ambient dimension mismatch")
        kept = []
        for a in self:
            da = a.direction_basis()
            for b in other:
                db = b.direction_basis()
                if linalg.rank([list(v) for v in da + db]) != n:
                    continue
                c = a.intersect(b)
                if not c.empty:
                    kept.append(c)
        return PolyhedralComplex(n, kept, close=True)

    def star(self, tau: Polyhedron) -> "PolyhedralComplex":
        """Star of the cell tau: cones of directions into cells containing tau."""
        if tau.key() not in self._cells:
            raise ValueError("tau is not a cell of the complex")
        x0 = tau.relint_point()
        cones = []
        for sigma in self:
            if not sigma.contains(x0) or not tau.is_subset(sigma):
                continue
            eqs = [(row, rhs * 0) for row, rhs in sigma.eqs]
            ineqs = []
            for row, rhs in sigma.ineqs:
                if riszero(vdot(row, x0) - rhs):
                    ineqs.append((row, rhs * 0))
            cones.append(Polyhedron(self.ambient_dim, ineqs, eqs))
        return PolyhedralComplex(self.ambient_dim, cones, close=True)

    # -- float-world views ----------------------------------------------------

    def sample_support(self, radius: float = 10.0, step: float = 0.05) -> np.ndarray:
        """Finite sample of the support inside the box [-radius, radius]^n."""
        pts = []
        for cell in self.max_cells():
            pts.append(_sample_cell(cell, radius, step))
        if not pts:
            return np.zeros((0, self.ambient_dim))
        allpts = np.vstack(pts)
        if allpts.size == 0:
            return np.zeros((0, self.ambient_dim))
        # dedupe on a fine grid to keep Hausdorff computations tractable
        snapped = np.round(allpts / (step / 2)).astype(np.int64)
        _, idx = np.unique(snapped, axis=0, return_index=True)
        return allpts[np.sort(idx)]

    def to_jsonable(self):
        return {
            "ambient_dim": self.ambient_dim,
            "cells": [
                {
                    "equalities": [
                        [*map(format_scalar_real, row), format_scalar_real(rhs)]
                        for row, rhs in c.eqs
                    ],
                    "inequalities": [
                        [*map(format_scalar_real, row), format_scalar_real(rhs)]
                        for row, rhs in c.ineqs
                    ],
                    "dim": c.dim(),
                }
                for c in sorted(self, key=lambda c: (c.dim(), repr(c.key())))
            ],
        }


def format_scalar_real(x) -> str:
    if isinstance(x, float):
        return repr(x)
    return format_scalar(x)


def _sample_cell(cell: Polyhedron, radius: float, step: float) -> np.ndarray:
    n = cell.ambient_dim
    k = cell.dim()
    p0 = np.array([as_float(x) for x in cell.relint_point()], dtype=float)
    if k == 0:
        if np.all(np.abs(p0) <= radius + 1e-9):
            return p0.reshape(1, n)
        return np.zeros((0, n))
    # orthonormal float basis of the direction space
    D = np.array(
        [[as_float(x) for x in v] for v in cell.direction_basis()], dtype=float
    ).T
    Q, _ = np.linalg.qr(D)
    Q = Q[:, :k]
    span = 2.0 * radius * math.sqrt(n)
    ticks = np.arange(-span, span + step, step)
    if k == 1:
        params = ticks.reshape(-1, 1)
    elif k == 2:
        a, b = np.meshgrid(ticks, ticks)
        params = np.column_stack([a.ravel(), b.ravel()])
    else:
        # coarser grid in higher cell dimensions to keep sizes sane
        coarse = np.arange(-span, span + 4 * step, 4 * step)
        grids = np.meshgrid(*([coarse] * k))
        params = np.column_stack([g.ravel() for g in grids])
    pts = p0[None, :] + params @ Q.T
    inside = np.all(np.abs(pts) <= radius + 1e-9, axis=1)
    pts = pts[inside]
    if pts.size == 0:
        return np.zeros((0, n))
    A = np.array(
        [[as_float(x) for x in row] for row, _ in cell.ineqs], dtype=float
    ).reshape(len(cell.ineqs), n) if cell.ineqs else np.zeros((0, n))
    b = np.array([as_float(rhs) for _, rhs in cell.ineqs], dtype=float)
    if len(A):
        ok = np.all(pts @ A.T <= b[None, :] + 1e-9, axis=1)
        pts = pts[ok]
    return pts


# ---------------------------------------------------------------------------
# Normal fans
# ---------------------------------------------------------------------------


def normal_fan(P: Polytope) -> PolyhedralComplex:
    """Normal fan of a polytope: one closed cone per face, max convention.

    The cone of a face F is the closure of {w : face_w(P) = F}, i.e. the
    directions whose maximum over P is attained exactly on F.
    """
    if P.is_empty():
        raise ValueError("normal fan of empty polytope")
    n = P.ambient_dim
    V = list(P.vertices)
    cones = []
    for F in P.faces():
        u0 = F.vertices[0]
        eqs = [(vsub(v, u0), Fraction(0)) for v in F.vertices[1:]]
        ineqs = [
            (vsub(v, u0), Fraction(0))
            for v in V
            if v not in F.vertices
        ]
        cones.append(Polyhedron(n, ineqs, eqs))
    return PolyhedralComplex(n, cones, close=False)


def trivial_complex(n: int) -> PolyhedralComplex:
    """The complex whose only cell is all of R^n."""
    return PolyhedralComplex(n, [Polyhedron.whole_space(n)], close=False)


def line_complex(direction) -> PolyhedralComplex:
    """The line R*direction through the origin, as a one-cell complex."""
    n = len(direction)
    rows = linalg.nullspace([list(direction)], n)
    eqs = [(tuple(r), Fraction(0)) for r in rows]
    return PolyhedralComplex(n, [Polyhedron(n, [], eqs)], close=False)


def point_complex(p) -> PolyhedralComplex:
    return PolyhedralComplex(len(p), [Polyhedron.from_point(p)], close=False)


def stable_intersection(S1: PolyhedralComplex, S2: PolyhedralComplex):
    return S1.stable_intersection(S2)


def star(S: PolyhedralComplex, tau: Polyhedron):
    return S.star(tau)


def common_refinement(complexes) -> PolyhedralComplex:
    cs = list(complexes)
    if not cs:
        raise ValueError("no complexes to refine")
    out = cs[0]
    for c in cs[1:]:
        out = out.refine(c)
    return out


# ---------------------------------------------------------------------------
# Hausdorff distance on finite samples
# ---------------------------------------------------------------------------


def hausdorff_distance(A, B) -> float:
    """Symmetric Hausdorff distance between two finite point sets."""
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    if A.ndim == 1:
        A = A.reshape(1, -1)
    if B.ndim == 1:
        B = B.reshape(1, -1)
    if len(A) == 0 or len(B) == 0:
        raise ValueError("hausdorff distance of an empty set")
    d1 = directed_hausdorff(A, B)[0]
    d2 = directed_hausdorff(B, A)[0]
    return max(d1, d2)
