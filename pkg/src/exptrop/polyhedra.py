"""Exact polyhedral kernel: polytopes (V-rep), polyhedra (H-rep), volumes.

Coordinates are exact scalars (Fraction / ExactReal) or, for numeric
fallback instances, plain floats.  Everything is decided through exact
comparisons (`rsign`), so irrational sqrt(d) coordinates are first-class.
Desk scale is assumed throughout: ambient dimension <= 4 for volumes,
a few dozen vertices, short inequality lists.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from . import linalg
from .scalars import ExactReal, as_float, riszero, rsign

Point = tuple


def sort_key(x):
    """Deterministic total order key; equal scalars of different types agree."""
    from .scalars import ExactComplex

    if isinstance(x, ExactComplex):
        if x.im.is_zero():
            return sort_key(x.re)
        return (as_float(x.re), "c") + sort_key(x.re)[2:] + sort_key(x.im)
    if isinstance(x, complex):
        if x.imag == 0:
            return sort_key(x.real)
        return (x.real, "fc", x.imag, 0, 0, 0, 0)
    if isinstance(x, ExactReal):
        return (
            as_float(x),
            "q",
            x.a.numerator,
            x.a.denominator,
            x.b.numerator,
            x.b.denominator,
            x.d,
        )
    if isinstance(x, (int, Fraction)):
        xx = Fraction(x)
        return (float(xx), "q", xx.numerator, xx.denominator, 0, 1, 0)
    return (float(x), "f", 0, 0, 0, 0, 0)


def point_key(p):
    return tuple(sort_key(x) for x in p)


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vscale(s, u):
    return tuple(s * a for a in u)


def vdot(u, v):
    return linalg.dot(list(u), list(v))


def det(rows):
    """Exact determinant by cofactor expansion (small matrices only)."""
    k = len(rows)
    if k == 0:
        return Fraction(1)
    if k == 1:
        return rows[0][0]
    if k == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    acc = None
    for j in range(k):
        if riszero(rows[0][j]):
            continue
        minor = [[r[c] for c in range(k) if c != j] for r in rows[1:]]
        term = rows[0][j] * det(minor)
        if j % 2:
            term = -term
        acc = term if acc is None else acc + term
    if acc is None:
        return rows[0][0] - rows[0][0]  # typed zero
    return acc


def _scalar_abs(x):
    return -x if rsign(x) < 0 else x


# ---------------------------------------------------------------------------
# Convex hulls
# ---------------------------------------------------------------------------


def _dedupe_points(points):
    seen = {}
    for p in points:
        seen.setdefault(tuple(p), None)
    # exact equality can hide behind distinct representations; compare pairwise
    out = []
    for p in seen:
        if not any(all(riszero(a - b) for a, b in zip(p, q)) for q in out):
            out.append(p)
    return out


def _direction_rows(points):
    p0 = points[0]
    return [list(vsub(p, p0)) for p in points[1:]]


def affine_dim(points) -> int:
    pts = _dedupe_points(points)
    if len(pts) <= 1:
        return 0 if pts else -1
    return linalg.rank(_direction_rows(pts))


def _projection_coords(points) -> list[int]:
    """Coordinate indices on which the affine span projects isomorphically."""
    _, pivots = linalg.rref(_direction_rows(points))
    return pivots


def _chain2d(points, coords):
    """Counterclockwise hull order of planar points via monotone chain."""
    i, j = coords

    def cross(o, a, b):
        return (a[i] - o[i]) * (b[j] - o[j]) - (a[j] - o[j]) * (b[i] - o[i])

    pts = sorted(points, key=lambda p: (sort_key(p[i]), sort_key(p[j])))
    lower = []
    for p in pts:
        while len(lower) >= 2 and rsign(cross(lower[-2], lower[-1], p)) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and rsign(cross(upper[-2], upper[-1], p)) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _extreme_filter_lp(points):
    """Vertices of conv(points) by LP membership tests (any dimension)."""
    out = []
    for idx, p in enumerate(points):
        others = [q for k, q in enumerate(points) if k != idx]
        if not others:
            out.append(p)
            continue
        n = len(p)
        m = len(others)
        # lambda >= 0, sum lambda = 1, sum lambda q = p
        A = [[Fraction(0)] * m for _ in range(m)]
        for k in range(m):
            A[k][k] = Fraction(-1)
        b = [Fraction(0)] * m
        E = [[Fraction(1)] * m] + [[others[k][c] for k in range(m)] for c in range(n)]
        f = [Fraction(1)] + list(p)
        if linalg.feasible_point(A, b, E, f) is None:
            out.append(p)
    return out


def hull_vertices(points):
    """Irredundant vertex list of conv(points), canonically ordered."""
    pts = _dedupe_points(points)
    if len(pts) <= 1:
        return pts
    k = affine_dim(pts)
    if k == 0:
        return pts[:1]
    if k == 1:
        d = vsub(pts[1], pts[0]) if any(not riszero(x) for x in vsub(pts[1], pts[0])) else None
        for q in pts[1:]:
            dd = vsub(q, pts[0])
            if any(not riszero(x) for x in dd):
                d = dd
                break
        params = [(vdot(vsub(p, pts[0]), d), p) for p in pts]
        params.sort(key=lambda t: sort_key(t[0]))
        return [params[0][1], params[-1][1]]
    if k == 2:
        coords = _projection_coords(pts)
        return _chain2d(pts, coords)
    return sorted(_extreme_filter_lp(pts), key=point_key)


class Polytope:
    """Bounded polyhedron given by its irredundant vertex list."""

    __slots__ = ("ambient_dim", "vertices")

    def __init__(self, vertices, ambient_dim=None):
        vertices = [tuple(v) for v in vertices]
        if ambient_dim is None:
            if not vertices:
                raise ValueError("ambient_dim required for empty polytope")
            ambient_dim = len(vertices[0])
        for v in vertices:
            if len(v) != ambient_dim:
                raise ValueError("vertex dimension mismatch")
        self.ambient_dim = ambient_dim
        self.vertices = tuple(sorted(vertices, key=point_key))

    @classmethod
    def hull(cls, points, ambient_dim=None):
        points = list(points)
        if not points:
            return cls([], ambient_dim)
        return cls(hull_vertices(points), ambient_dim)

    # -- basics -----------------------------------------------------------

    def is_empty(self) -> bool:
        return not self.vertices

    def dim(self) -> int:
        return affine_dim(self.vertices)

    def __eq__(self, other):
        return (
            isinstance(other, Polytope)
            and self.ambient_dim == other.ambient_dim
            and self.vertices == other.vertices
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.vertices))

    def __repr__(self):
        vs = ", ".join("(" + ", ".join(str(x) for x in v) + ")" for v in self.vertices)
        return f"Polytope[{vs}]"

    def translate(self, t):
        return Polytope([vadd(v, t) for v in self.vertices], self.ambient_dim)

    def scale(self, s):
        return Polytope([vscale(s, v) for v in self.vertices], self.ambient_dim)

    # -- faces ------------------------------------------------------------

    def face(self, w) -> "Polytope":
        """face_w(P): the subpolytope maximizing w.x."""
        if len(w) != self.ambient_dim:
            raise ValueError("direction dimension mismatch")
        if self.is_empty():
            raise ValueError("face of empty polytope")
        vals = [vdot(w, v) for v in self.vertices]
        best = vals[0]
        for x in vals[1:]:
            if rsign(x - best) > 0:
                best = x
        keep = [v for v, x in zip(self.vertices, vals) if riszero(x - best)]
        return Polytope(keep, self.ambient_dim)

    def facet_data(self):
        """Facets as (inner normal u, vertex frozenset): u.(v - f) <= 0 off the facet.

        Normals live in the direction space of the polytope, so for
        lower-dimensional polytopes they are relative facets.
        """
        V = list(self.vertices)
        k = self.dim()
        if k <= 0:
            return []
        if k == 1:
            a, b = hull_vertices(V)
            ia, ib = V.index(a), V.index(b)
            d = vsub(b, a)
            return [
                (tuple(d), frozenset([ib])),
                (tuple(vscale(-1, d)), frozenset([ia])),
            ]
        out = {}
        dirs = _direction_rows(V)
        dirs_cols = [list(col) for col in zip(*dirs)]
        for S in itertools.combinations(range(len(V)), k):
            pts = [V[i] for i in S]
            base = pts[0]
            rows = [list(vsub(p, base)) for p in pts[1:]]
            if linalg.rank(rows) != k - 1:
                continue
            # u orthogonal to the candidate hyperplane, inside the direction space
            for u in linalg.nullspace(rows, self.ambient_dim):
                if linalg.solve(dirs_cols, u) is None:
                    continue
                signs = [rsign(vdot(u, vsub(v, base))) for v in V]
                if all(s <= 0 for s in signs):
                    uu = tuple(u)
                elif all(s >= 0 for s in signs):
                    uu = tuple(vscale(-1, u))
                    signs = [-s for s in signs]
                else:
                    continue
                members = frozenset(i for i, s in enumerate(signs) if s == 0)
                if len(members) < k:
                    continue
                out.setdefault(members, uu)
        return [(u, m) for m, u in out.items()]

    def faces(self):
        """All nonempty faces (including the polytope itself), as Polytopes."""
        V = list(self.vertices)
        if not V:
            return []
        k = self.dim()
        all_idx = frozenset(range(len(V)))
        sets = {all_idx}
        if k >= 1:
            facets = {m for _, m in self.facet_data()}
            frontier = set(facets)
            sets |= facets
            while frontier:
                new = set()
                for a in frontier:
                    for b in facets:
                        c = a & b
                        if c and c not in sets:
                            # intersection of faces is a face
                            new.add(c)
                sets |= new
                frontier = new
            # every vertex of a polytope is a face
            for i in range(len(V)):
                sets.add(frozenset([i]))
        faces = [Polytope([V[i] for i in s], self.ambient_dim) for s in sets]
        return sorted(
            set(faces),
            key=lambda P: (P.dim(), tuple(point_key(v) for v in P.vertices)),
        )

    # -- metric data --------------------------------------------------------

    def support(self, z) -> object:
        """Support value max_a Re<z, a> over the polytope (a real scalar)."""
        if self.is_empty():
            raise ValueError("support of empty polytope")
        from .scalars import re_of

        zr = [re_of(c) for c in z]
        best = None
        for v in self.vertices:
            val = vdot(zr, v)
            if best is None or rsign(val - best) > 0:
                best = val
        return best

    def minkowski(self, other: "Polytope") -> "Polytope":
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch in Minkowski sum")
        if self.is_empty() or other.is_empty():
            return Polytope([], self.ambient_dim)
        sums = [vadd(u, v) for u in self.vertices for v in other.vertices]
        return Polytope.hull(sums, self.ambient_dim)

    def __add__(self, other):
        return self.minkowski(other)

    def _triangulate(self):
        """Partition into simplices (lists of vertices), by recursive coning."""
        V = list(self.vertices)
        k = self.dim()
        if k <= 0:
            return [V[:1]] if V else []
        if k == 1:
            return [hull_vertices(V)]
        if k == 2:
            chain = _chain2d(V, _projection_coords(V))
            v0 = chain[0]
            return [[v0, chain[i], chain[i + 1]] for i in range(1, len(chain) - 1)]
        v0 = V[0]
        simplices = []
        for u, members in self.facet_data():
            if 0 in members:
                continue
            F = Polytope([V[i] for i in members], self.ambient_dim)
            for S in F._triangulate():
                simplices.append([v0] + S)
        return simplices

    def euclidean_volume(self):
        """Exact n-dimensional Euclidean volume (0 for lower-dimensional P)."""
        n = self.ambient_dim
        if n > 4:
            raise ValueError("volume computations support ambient dimension <= 4")
        zero = Fraction(0)
        if self.is_empty() or self.dim() < n:
            return zero
        total = None
        fact = 1
        for i in range(2, n + 1):
            fact *= i
        for S in self._triangulate():
            rows = [list(vsub(p, S[0])) for p in S[1:]]
            term = _scalar_abs(det(rows))
            total = term if total is None else total + term
        if total is None:
            return zero
        return total / fact

    def normalized_volume(self):
        """n! times the Euclidean volume; 1 for the unit simplex."""
        n = self.ambient_dim
        fact = 1
        for i in range(2, n + 1):
            fact *= i
        return self.euclidean_volume() * fact


def face_of(P: Polytope, w) -> Polytope:
    return P.face(w)


def minkowski_sum(P: Polytope, Q: Polytope) -> Polytope:
    return P.minkowski(Q)


def normalized_volume(P: Polytope):
    return P.normalized_volume()


def support_function(P: Polytope, z):
    return P.support(z)


def mixed_volume(polytopes) -> object:
    """Mixed volume of n polytopes in R^n.

    Normalized so that MV(P, ..., P) equals the normalized volume of P and
    MV of the n coordinate unit segments is 1: this is the coefficient of
    the square-free monomial in the Euclidean volume of lambda_1 P_1 + ...
    + lambda_n P_n, computed by inclusion-exclusion.
    """
    Ps = list(polytopes)
    n = len(Ps)
    if n == 0:
        raise ValueError("mixed volume needs at least one polytope")
    for P in Ps:
        if P.ambient_dim != n:
            raise ValueError(
                f"mixed volume of {n} polytopes needs ambient dimension {n}"
            )
    total = None
    for r in range(1, n + 1):
        sign = 1 if (n - r) % 2 == 0 else -1
        for J in itertools.combinations(range(n), r):
            S = Ps[J[0]]
            for j in J[1:]:
                S = S.minkowski(Ps[j])
            term = S.euclidean_volume()
            if sign < 0:
                term = -term
            total = term if total is None else total + term
    return total


# ---------------------------------------------------------------------------
# H-representation polyhedra (cells of complexes)
# ---------------------------------------------------------------------------


def _normalize_eq_rows(eqs, n):
    """Canonical rref form of equality constraints [row | rhs]."""
    if not eqs:
        return []
    aug = [list(row) + [rhs] for row, rhs in eqs]
    red, pivots = linalg.rref(aug, n)
    out = []
    for r, _ in zip(red, range(len(pivots))):
        out.append((tuple(r[:n]), r[n]))
    return out


class Polyhedron:
    """Canonicalized H-rep polyhedron {x : eqs hold, ineq rows . x <= rhs}.

    Construction detects emptiness, promotes implicit equalities, removes
    redundant inequalities and scales the rest to a canonical form, so two
    Polyhedra describe the same set iff their `key()` values coincide.
    """

    __slots__ = (
        "ambient_dim",
        "eqs",
        "ineqs",
        "empty",
        "_relint",
        "_dirbasis",
    )

    def __init__(self, ambient_dim, ineqs=(), eqs=()):
        n = int(ambient_dim)
        self.ambient_dim = n
        ineqs = [(tuple(r), c) for r, c in ineqs]
        eqs = [(tuple(r), c) for r, c in eqs]
        self._relint = None
        self._dirbasis = None

        A = [list(r) for r, _ in ineqs]
        b = [c for _, c in ineqs]
        E = [list(r) for r, _ in eqs]
        f = [c for _, c in eqs]
        pt = linalg.feasible_point(A, b, E, f) if (A or E) else []
        if (A or E) and pt is None:
            self.empty = True
            self.eqs = ()
            self.ineqs = ()
            return
        self.empty = False

        # find implicit equalities among the inequalities
        strict = self._relint_lp(ineqs, eqs) if ineqs else pt
        if ineqs and strict is None:
            # no common strict point: some inequalities are tight everywhere;
            # max slack (rhs - row.x) is rhs + max((-row).x)
            implicit, kept = [], []
            for row, rhs in ineqs:
                res = linalg.lp_solve(
                    [-x for x in row], [list(r) for r, _ in ineqs],
                    [c for _, c in ineqs], E, f,
                )
                if res.status == "optimal" and riszero(res.value + rhs):
                    implicit.append((row, rhs))
                else:
                    kept.append((row, rhs))
            eqs = eqs + implicit
            ineqs = kept

        E2 = _normalize_eq_rows(eqs, n)
        # reduce inequality rows modulo the equality rowspace, then scale
        reduced = []
        for row, rhs in ineqs:
            row = list(row)
            for erow, erhs in E2:
                piv = next(
                    (j for j, x in enumerate(erow) if not riszero(x)), None
                )
                if piv is not None and not riszero(row[piv]):
                    fkt = row[piv] / erow[piv]
                    row = [a - fkt * e for a, e in zip(row, erow)]
                    rhs = rhs - fkt * erhs
            lead = next((x for x in row if not riszero(x)), None)
            if lead is None:
                continue  # trivial given the equalities (0 <= rhs, rhs >= 0 holds: feasible)
            scale = _scalar_abs(lead)
            row = [x / scale for x in row]
            rhs = rhs / scale
            reduced.append((tuple(row), rhs))
        # dedupe
        seen = {}
        for row, rhs in reduced:
            k = (point_key(row), sort_key(rhs))
            seen.setdefault(k, (row, rhs))
        reduced = list(seen.values())

        # drop redundant inequalities one at a time
        irredundant = []
        active = list(reduced)
        for i in range(len(reduced)):
            row, rhs = reduced[i]
            rest = [c for c in active if c != (row, rhs)]
            A2 = [list(r) for r, _ in rest]
            b2 = [c for _, c in rest]
            res = linalg.lp_solve(
                list(row), A2, b2, [list(r) for r, _ in E2], [c for _, c in E2]
            )
            if res.status == "optimal" and rsign(res.value - rhs) <= 0:
                active = rest  # redundant
            else:
                irredundant.append((row, rhs))
        self.eqs = tuple(E2)
        self.ineqs = tuple(
            sorted(irredundant, key=lambda rc: (point_key(rc[0]), sort_key(rc[1])))
        )

    @staticmethod
    def _relint_lp(ineqs, eqs):
        """Point satisfying all inequalities strictly, or None."""
        if not ineqs:
            A = [r for r, _ in eqs]
            if eqs:
                x = linalg.solve([list(r) for r, _ in eqs], [c for _, c in eqs])
                return x
            return None
        n = len(ineqs[0][0])
        zero = linalg.mat_zero([list(r) for r, _ in ineqs])
        one = zero + 1
        # maximize t subject to row.x + t <= rhs, t <= 1
        c = [zero] * n + [one]
        A = [list(r) + [one] for r, _ in ineqs] + [[zero] * n + [one]]
        b = [rhs for _, rhs in ineqs] + [one]
        E = [list(r) + [zero] for r, _ in eqs]
        f = [rhs for _, rhs in eqs]
        res = linalg.lp_solve(c, A, b, E, f)
        if res.status != "optimal" or rsign(res.value) <= 0:
            return None
        return res.x[:n]

    # -- queries ------------------------------------------------------------

    def key(self):
        if self.empty:
            return (self.ambient_dim, "empty")
        return (
            self.ambient_dim,
            tuple((point_key(r), sort_key(c)) for r, c in self.eqs),
            tuple((point_key(r), sort_key(c)) for r, c in self.ineqs),
        )

    def __eq__(self, other):
        return isinstance(other, Polyhedron) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        if self.empty:
            return f"Polyhedron(dim {self.ambient_dim}, empty)"
        return (
            f"Polyhedron(dim {self.ambient_dim}, {len(self.eqs)} eqs, "
            f"{len(self.ineqs)} ineqs)"
        )

    def dim(self) -> int:
        if self.empty:
            return -1
        return self.ambient_dim - len(self.eqs)

    def direction_basis(self):
        """Basis of the direction space of the affine hull."""
        if self._dirbasis is None:
            self._dirbasis = linalg.nullspace(
                [list(r) for r, _ in self.eqs], self.ambient_dim
            )
        return self._dirbasis

    def relint_point(self):
        """A point in the relative interior (exact scalars)."""
        if self.empty:
            raise ValueError("relative interior of empty polyhedron")
        if self._relint is None:
            if not self.ineqs:
                if self.eqs:
                    self._relint = linalg.solve(
                        [list(r) for r, _ in self.eqs], [c for _, c in self.eqs]
                    )
                else:
                    self._relint = [Fraction(0)] * self.ambient_dim
            else:
                pt = self._relint_lp(list(self.ineqs), list(self.eqs))
                if pt is None:
                    raise RuntimeError("canonical polyhedron lost its relint point")
                self._relint = pt
        return list(self._relint)

    def contains(self, x, strict: bool = False) -> bool:
        if self.empty:
            return False
        for row, rhs in self.eqs:
            if not riszero(vdot(row, x) - rhs):
                return False
        for row, rhs in self.ineqs:
            s = rsign(vdot(row, x) - rhs)
            if s > 0 or (strict and s == 0):
                return False
        return True

    def intersect(self, other: "Polyhedron") -> "Polyhedron":
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        return Polyhedron(
            self.ambient_dim,
            list(self.ineqs) + list(other.ineqs),
            list(self.eqs) + list(other.eqs),
        )

    def is_subset(self, other: "Polyhedron") -> bool:
        if self.empty:
            return True
        return self.intersect(other).key() == self.key()

    def faces(self):
        """The full face lattice (nonempty faces), this polyhedron included."""
        found = {self.key(): self}
        frontier = [self]
        while frontier:
            nxt = []
            for cell in frontier:
                for i in range(len(cell.ineqs)):
                    row, rhs = cell.ineqs[i]
                    child = Polyhedron(
                        self.ambient_dim,
                        [c for j, c in enumerate(cell.ineqs) if j != i],
                        list(cell.eqs) + [(row, rhs)],
                    )
                    if child.empty:
                        continue
                    if child.key() not in found:
                        found[child.key()] = child
                        nxt.append(child)
            frontier = nxt
        return list(found.values())

    def recession_contains(self, v) -> bool:
        """Whether direction v lies in the recession cone."""
        for row, _ in self.eqs:
            if not riszero(vdot(row, v)):
                return False
        return all(rsign(vdot(row, v)) <= 0 for row, _ in self.ineqs)

    @classmethod
    def whole_space(cls, n):
        return cls(n)

    @classmethod
    def from_point(cls, p):
        n = len(p)
        one = Fraction(1)
        eqs = []
        for i in range(n):
            row = [Fraction(0)] * n
            row[i] = one
            eqs.append((tuple(row), p[i]))
        return cls(n, [], eqs)
