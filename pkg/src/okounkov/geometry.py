"""
Exact rational geometry.

Everything here works over :class:`fractions.Fraction`; no floating point is
used anywhere.  Vectors are plain tuples of fractions and matrices are tuples
of row tuples, so all values are hashable and immutable.

The module provides

* small linear algebra helpers (``solve_linear``, ``rank``, ``nullspace``),
* :class:`PolyhedralCone` with a double description conversion between
  generators and inward facet normals,
* 2D and 3D convex hulls (:func:`convex_hull_2d`, :func:`convex_hull_3d`),
  exact volumes and cross sections,
* :class:`PiecewiseLinear` functions on a closed interval.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from itertools import combinations
from typing import Iterable, Optional, Sequence, Union

from .errors import DomainError

Vec = tuple
Matrix = tuple

INFINITY = math.inf

MAX_CONE_DIM = 6


# ---------------------------------------------------------------------------
# scalars and vectors
# ---------------------------------------------------------------------------

def q(x) -> Fraction:
    """Parse an int, Fraction or ``"p/q"`` string into a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def vec(xs: Iterable) -> Vec:
    return tuple(q(x) for x in xs)


def mat(rows: Iterable[Iterable]) -> Matrix:
    return tuple(vec(r) for r in rows)


def dot(u: Sequence, v: Sequence):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def add(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v: Vec) -> Vec:
    return tuple(c * a for a in v)


def matvec(A: Matrix, v: Sequence) -> Vec:
    return tuple(dot(row, v) for row in A)


def matmul(A: Matrix, B: Matrix) -> Matrix:
    cols = list(zip(*B))
    return tuple(tuple(dot(row, c) for c in cols) for row in A)


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def fmt(x: Fraction) -> str:
    """Canonical ``p/q`` text for a rational (integers without denominator)."""
    x = q(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def fmt_vec(v: Sequence) -> str:
    return ",".join(fmt(x) for x in v)


def primitive(v: Sequence) -> tuple:
    """Positive multiple of ``v`` that is a primitive integer vector."""
    v = [q(x) for x in v]
    den = reduce(math.lcm, (x.denominator for x in v), 1)
    ints = [int(x * den) for x in v]
    g = reduce(math.gcd, ints, 0)
    if g == 0:
        return tuple(ints)
    return tuple(i // g for i in ints)


# ---------------------------------------------------------------------------
# linear algebra
# ---------------------------------------------------------------------------

def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    A = [[q(x) for x in r] for r in rows]
    if not A:
        return [], []
    ncols = len(A[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        p = A[r][c]
        A[r] = [x / p for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[tuple]:
    """Basis of ``{x : Ax = 0}`` as primitive integer vectors."""
    R, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(R, pivots):
            x[p] = -row[f]
        basis.append(primitive(x))
    return basis


def solve_linear(A: Sequence[Sequence], b: Sequence) -> Optional[Vec]:
    """Exact solution of the square system ``Ax = b``; ``None`` if singular."""
    n = len(A)
    if any(len(row) != n for row in A) or len(b) != n:
        raise ValueError("solve_linear needs a square system")
    aug = [[q(x) for x in row] + [q(bi)] for row, bi in zip(A, b)]
    R, pivots = rref(aug)
    if pivots != list(range(n)):
        return None
    return tuple(row[n] for row in R)


def inverse(A: Sequence[Sequence]) -> Optional[Matrix]:
    n = len(A)
    aug = [[q(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(A)]
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        return None
    return tuple(tuple(row[n:]) for row in R)


def det(A: Sequence[Sequence]) -> Fraction:
    M = [[q(x) for x in row] for row in A]
    n = len(M)
    d = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            d = -d
        d *= M[c][c]
        for i in range(c + 1, n):
            if M[i][c]:
                f = M[i][c] / M[c][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return d


def _rowspace_basis(rows: Sequence[Sequence]) -> list[tuple]:
    R, _ = rref(rows)
    return [primitive(r) for r in R]


# ---------------------------------------------------------------------------
# double description
# ---------------------------------------------------------------------------

def _idot(u, v) -> int:
    return sum(a * b for a, b in zip(u, v))


def _iprimitive(v) -> tuple:
    g = reduce(math.gcd, v, 0)
    return tuple(x // g for x in v) if g > 1 else tuple(v)


def extreme_rays(rows: Sequence[Sequence], dim: int) -> tuple[list[tuple], list[tuple]]:
    """Generators of ``{x : r.x >= 0 for every row r}``.

    Returns ``(rays, lineality)`` where ``rays`` are the extreme rays of the
    cone modulo its lineality space and ``lineality`` is a basis of that
    space.  Both are primitive integer vectors.  The pointed part is computed
    by the incremental double description method with the combinatorial
    adjacency test.
    """
    rows = [primitive(r) for r in rows]
    rows = [r for r in rows if any(r)]
    lineality = nullspace(rows, dim)
    if not rows:
        return [], lineality
    Q = _rowspace_basis(rows)
    r = len(Q)
    M = [tuple(_idot(row, qj) for qj in Q) for row in rows]

    # initial simplicial cone from r independent constraint rows
    basis_idx = []
    for i, row in enumerate(M):
        if rank([M[j] for j in basis_idx] + [row]) > len(basis_idx):
            basis_idx.append(i)
            if len(basis_idx) == r:
                break
    Binv = inverse([M[i] for i in basis_idx])
    rays = []
    for j in range(r):
        col = primitive([Binv[i][j] for i in range(r)])
        zeros = frozenset(basis_idx[k] for k in range(r) if k != j)
        rays.append((col, zeros))

    in_basis = set(basis_idx)
    for i, a in enumerate(M):
        if i in in_basis:
            continue
        vals = [_idot(a, z) for z, _ in rays]
        pos = [k for k, s in enumerate(vals) if s > 0]
        neg = [k for k, s in enumerate(vals) if s < 0]
        zer = [k for k, s in enumerate(vals) if s == 0]
        if not neg:
            rays = [(z, Z | {i}) if vals[k] == 0 else (z, Z)
                    for k, (z, Z) in enumerate(rays)]
            continue
        new = []
        for p in pos:
            zp, Zp = rays[p]
            for n in neg:
                zn, Zn = rays[n]
                common = Zp & Zn
                if len(common) < r - 2:
                    continue
                if any(k != p and k != n and common <= rays[k][1]
                       for k in range(len(rays))):
                    continue
                sp, sn = vals[p], vals[n]
                z = _iprimitive(tuple(sp * b - sn * c for b, c in zip(zn, zp)))
                new.append((z, common | {i}))
        rays = ([rays[k] for k in pos] + [(rays[k][0], rays[k][1] | {i}) for k in zer]
                + new)

    out = []
    for z, _ in rays:
        x = [sum(zj * Q[j][c] for j, zj in enumerate(z)) for c in range(dim)]
        out.append(_iprimitive(tuple(x)))
    return sorted(set(out)), lineality


# ---------------------------------------------------------------------------
# cones
# ---------------------------------------------------------------------------

def _as_int_vectors(vs) -> tuple:
    return tuple(sorted(set(primitive(v) for v in vs if any(q(x) for x in v))))


@dataclass(frozen=True, eq=False)
class PolyhedralCone:
    """Rational polyhedral cone with generators and/or inward facet normals.

    Either description may be missing; the other is filled in lazily by
    :func:`dual_description`.  Lineality (lines in the cone, or equations in
    the H-description) is represented by including both ``v`` and ``-v``.
    """

    dim: int
    generators: Optional[tuple] = None
    facets: Optional[tuple] = None

    def __post_init__(self):
        if self.generators is None and self.facets is None:
            raise ValueError("a cone needs generators or facets")
        if not 1 <= self.dim <= MAX_CONE_DIM:
            raise ValueError(f"cone dimension {self.dim} outside 1..{MAX_CONE_DIM}")
        for v in (self.generators or ()) + (self.facets or ()):
            if len(v) != self.dim:
                raise ValueError("vector length does not match cone dimension")

    @classmethod
    def from_generators(cls, gens, dim: Optional[int] = None) -> "PolyhedralCone":
        gens = tuple(vec(g) for g in gens)
        d = dim if dim is not None else len(gens[0])
        return cls(d, generators=gens)

    @classmethod
    def from_facets(cls, facets, dim: Optional[int] = None) -> "PolyhedralCone":
        facets = tuple(vec(f) for f in facets)
        d = dim if dim is not None else len(facets[0])
        return cls(d, facets=facets)

    @cached_property
    def rays(self) -> tuple:
        """Minimal generators as primitive integer vectors, sorted."""
        if self.facets is not None:
            rays, lin = extreme_rays(self.facets, self.dim)
        else:
            # go through the facets so redundant generators drop out
            return extreme_rays_from_facets(self.normals, self.dim)
        return _canon(rays, lin)

    @cached_property
    def normals(self) -> tuple:
        """Minimal inward facet normals as primitive integer vectors, sorted."""
        if self.generators is not None:
            rays, lin = extreme_rays(self.generators, self.dim)
        else:
            return extreme_rays_from_facets(self.rays, self.dim)
        return _canon(rays, lin)

    def contains(self, v: Sequence) -> bool:
        return cone_contains(self, v)

    def is_full_dimensional(self) -> bool:
        return all(tuple(-x for x in n) not in set(self.normals) for n in self.normals)

    def interior_contains(self, v: Sequence) -> bool:
        """True when ``v`` lies in the topological interior (full-dim cones only)."""
        if not self.is_full_dimensional():
            return False
        return all(dot(n, v) > 0 for n in self.normals)

    def same_as(self, other: "PolyhedralCone") -> bool:
        return self.dim == other.dim and self.normals == other.normals

    def __repr__(self):
        return f"PolyhedralCone(dim={self.dim}, rays={list(self.rays)})"


def _canon(rays, lineality) -> tuple:
    out = set(rays)
    for v in lineality:
        out.add(tuple(v))
        out.add(tuple(-x for x in v))
    return tuple(sorted(out))


def extreme_rays_from_facets(vectors, dim) -> tuple:
    rays, lin = extreme_rays(vectors, dim)
    return _canon(rays, lin)


def dual_description(cone: PolyhedralCone) -> PolyhedralCone:
    """Cone with both descriptions populated and minimal."""
    gens = tuple(vec(r) for r in cone.rays)
    facets = tuple(vec(n) for n in cone.normals)
    return PolyhedralCone(cone.dim, generators=gens, facets=facets)


def cone_contains(cone: PolyhedralCone, v: Sequence) -> bool:
    if len(v) != cone.dim:
        raise ValueError("dimension mismatch")
    return all(dot(n, v) >= 0 for n in cone.normals)


def ray_exit(cone: PolyhedralCone, base: Sequence, direction: Sequence) -> Union[Fraction, float]:
    """Largest ``t`` with ``base - t*direction`` in the cone (``inf`` if none)."""
    if not cone_contains(cone, base):
        raise DomainError("base not in cone")
    best = None
    for n in cone.normals:
        s = dot(n, direction)
        if s > 0:
            t = dot(n, base) / s
            if best is None or t < best:
                best = t
    return INFINITY if best is None else best


# ---------------------------------------------------------------------------
# piecewise linear functions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PiecewiseLinear:
    """Continuous piecewise affine function on ``[breakpoints[0], breakpoints[-1]]``.

    ``pieces[i] = (slope, intercept)`` is valid on ``[breakpoints[i],
    breakpoints[i+1]]``.  Zero-length pieces are allowed.
    """

    breakpoints: tuple
    pieces: tuple

    def __post_init__(self):
        bp = self.breakpoints
        if len(bp) != len(self.pieces) + 1:
            raise ValueError("need one piece per consecutive breakpoint pair")
        if any(b < a for a, b in zip(bp, bp[1:])):
            raise ValueError("breakpoints must be non-decreasing")
        for i in range(len(self.pieces) - 1):
            t = bp[i + 1]
            (s0, c0), (s1, c1) = self.pieces[i], self.pieces[i + 1]
            if s0 * t + c0 != s1 * t + c1:
                raise ValueError(f"discontinuity at t={t}")

    @property
    def domain(self) -> tuple:
        return self.breakpoints[0], self.breakpoints[-1]

    def __call__(self, t) -> Fraction:
        t = q(t)
        lo, hi = self.domain
        if not lo <= t <= hi:
            raise DomainError(f"t={t} outside [{lo}, {hi}]")
        for i, (s, c) in enumerate(self.pieces):
            if t <= self.breakpoints[i + 1]:
                return s * t + c
        s, c = self.pieces[-1]
        return s * t + c

    @classmethod
    def constant(cls, lo, hi, value=0) -> "PiecewiseLinear":
        return cls((q(lo), q(hi)), ((Fraction(0), q(value)),))


# ---------------------------------------------------------------------------
# polygons
# ---------------------------------------------------------------------------

def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


@dataclass(frozen=True)
class Polygon2:
    """Convex polygon, counterclockwise, starting at the lexicographically
    smallest vertex.  One vertex is a point, two vertices a segment."""

    vertices: tuple

    @property
    def affine_dim(self) -> int:
        return min(len(self.vertices) - 1, 2)

    @property
    def area(self) -> Fraction:
        vs = self.vertices
        if len(vs) < 3:
            return Fraction(0)
        s = sum((vs[i][0] * vs[(i + 1) % len(vs)][1] - vs[(i + 1) % len(vs)][0] * vs[i][1]
                 for i in range(len(vs))), Fraction(0))
        return s / 2

    def contains(self, p: Sequence) -> bool:
        p = vec(p)
        vs = self.vertices
        if len(vs) == 1:
            return p == vs[0]
        if len(vs) == 2:
            a, b = vs
            if _cross(a, b, p) != 0:
                return False
            return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and \
                min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
        return all(_cross(vs[i], vs[(i + 1) % len(vs)], p) >= 0 for i in range(len(vs)))

    def translate(self, v: Sequence) -> "Polygon2":
        v = vec(v)
        return Polygon2(tuple(add(p, v) for p in self.vertices))

    def scaled(self, c) -> "Polygon2":
        c = q(c)
        if c <= 0:
            raise ValueError("scale factor must be positive")
        return Polygon2(tuple(scale(c, p) for p in self.vertices))


def convex_hull_2d(points: Iterable[Sequence]) -> Polygon2:
    """Andrew's monotone chain with exact orientation tests."""
    pts = sorted(set(vec(p) for p in points))
    if not pts:
        raise DomainError("empty point set")
    if any(len(p) != 2 for p in pts):
        raise ValueError("convex_hull_2d needs 2D points")
    if len(pts) <= 2:
        return Polygon2(tuple(pts))
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    return Polygon2(tuple(hull))


# ---------------------------------------------------------------------------
# polytopes in R^3
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Polytope3:
    """Convex polytope in R^3 given by its vertices and inequalities.

    Each facet is ``(normal, offset)`` meaning ``normal . x >= offset``.
    Lower-dimensional polytopes carry equations as pairs of opposite
    inequalities; ``affine_dim`` records the dimension of the affine hull.
    """

    vertices: tuple
    facets: tuple
    affine_dim: int

    def __eq__(self, other):
        return isinstance(other, Polytope3) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    @property
    def is_degenerate(self) -> bool:
        return self.affine_dim < 3

    def contains(self, p: Sequence) -> bool:
        p = vec(p)
        return all(dot(n, p) >= b for n, b in self.facets)

    def translate(self, v: Sequence) -> "Polytope3":
        v = vec(v)
        return Polytope3(tuple(sorted(add(p, v) for p in self.vertices)),
                         tuple((n, b + dot(n, v)) for n, b in self.facets),
                         self.affine_dim)

    def scaled(self, c) -> "Polytope3":
        c = q(c)
        if c <= 0:
            raise ValueError("scale factor must be positive")
        return Polytope3(tuple(sorted(scale(c, p) for p in self.vertices)),
                         tuple((n, b * c) for n, b in self.facets), self.affine_dim)

    @property
    def volume(self) -> Fraction:
        return polytope_volume(self)

    def section(self, t) -> Optional[Polygon2]:
        """Cross-section ``{x1 = t}`` projected to ``(x2, x3)``; ``None`` if empty."""
        t = q(t)
        pts = [(v[1], v[2]) for v in self.vertices if v[0] == t]
        vs = self.vertices
        for a, b in combinations(vs, 2):
            if (a[0] - t) * (b[0] - t) < 0:
                s = (t - a[0]) / (b[0] - a[0])
                pts.append((a[1] + s * (b[1] - a[1]), a[2] + s * (b[2] - a[2])))
        if not pts:
            return None
        return convex_hull_2d(pts)


def affine_dimension(points: Sequence[Sequence]) -> int:
    pts = [vec(p) for p in points]
    if not pts:
        return -1
    return rank([sub(p, pts[0]) for p in pts[1:]]) if len(pts) > 1 else 0


def convex_hull_3d(points: Iterable[Sequence]) -> Polytope3:
    """Exact hull of points in R^3 via double description on the homogenised cone."""
    pts = sorted(set(vec(p) for p in points))
    if not pts:
        raise DomainError("empty point set")
    if any(len(p) != 3 for p in pts):
        raise ValueError("convex_hull_3d needs 3D points")
    rows = [(Fraction(1),) + p for p in pts]
    rays, lin = extreme_rays(rows, 4)
    # a ray tight at no point is the trivial inequality 1 >= 0 modulo equations
    rays = [y for y in rays if any(dot(y, r) == 0 for r in rows)]
    ineqs = list(rays) + [tuple(v) for v in lin] + [tuple(-x for x in v) for v in lin]
    facets = tuple(sorted(set(
        (vec(y[1:]), Fraction(-y[0])) for y in ineqs if any(y[1:]))))
    verts = []
    for p in pts:
        tight = [n for n, b in facets if dot(n, p) == b]
        if tight and rank(tight) == 3:
            verts.append(p)
    if len(pts) == 1:
        verts = pts
    adim = affine_dimension(pts)
    return Polytope3(tuple(sorted(verts)), facets, adim)


def polytope_volume(P: Union[Polytope3, Polygon2]) -> Fraction:
    """Exact volume (area for polygons); zero for degenerate input."""
    if isinstance(P, Polygon2):
        return P.area
    if P.affine_dim < 3:
        return Fraction(0)
    v0 = P.vertices[0]
    total = Fraction(0)
    seen = set()
    for n, b in P.facets:
        if (n, b) in seen:
            continue
        seen.add((n, b))
        on = [v for v in P.vertices if dot(n, v) == b]
        if v0 in on or len(on) < 3:
            continue
        k = next(i for i in range(3) if n[i] != 0)
        keep = [i for i in range(3) if i != k]
        proj = {(v[keep[0]], v[keep[1]]): v for v in on}
        ring = [proj[p] for p in convex_hull_2d(proj).vertices]
        for i in range(1, len(ring) - 1):
            a, bb, c = ring[0], ring[i], ring[i + 1]
            total += abs(det([sub(a, v0), sub(bb, v0), sub(c, v0)]))
    return total / 6


def polygon_inequalities(P: Polygon2) -> tuple:
    """Minimal ``(normal, offset)`` pairs with ``normal . x >= offset`` cutting out ``P``.

    Segments and points get their affine equations as opposite pairs.
    """
    rows = [(Fraction(1),) + tuple(v) for v in P.vertices]
    rays, lin = extreme_rays(rows, 3)
    rays = [y for y in rays if any(dot(y, r) == 0 for r in rows)]
    ineqs = list(rays) + [tuple(v) for v in lin] + [tuple(-x for x in v) for v in lin]
    return tuple(sorted(set((vec(y[1:]), Fraction(-y[0])) for y in ineqs if any(y[1:]))))
