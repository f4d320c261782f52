"""Independent reference implementations used only by the tests.

Nothing here imports from the package's geometry pipeline: hull
membership goes through an exact phase-1 simplex, and lattice counting
through a test-local hyperplane enumeration for dimensions up to 3.
Both are deliberately naive.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd


def _simplex_feasible(columns, rhs) -> bool:
    """Phase-1 simplex with Bland's rule, everything in Fractions.

    Decides whether ``columns @ x = rhs`` has a solution with x >= 0.
    """
    m = len(rhs)
    n = len(columns)
    # flip rows so artificial variables start at a nonnegative basis
    rows = []
    b = []
    for i in range(m):
        scale = -1 if rhs[i] < 0 else 1
        rows.append([Fraction(col[i]) * scale for col in columns])
        b.append(Fraction(rhs[i]) * scale)
    # tableau over structural + artificial variables
    width = n + m
    table = []
    for i in range(m):
        row = rows[i] + [Fraction(1) if j == i else Fraction(0) for j in range(m)]
        row.append(b[i])
        table.append(row)
    basis = list(range(n, width))
    # objective: minimize the artificial sum.  The reduced-cost row of
    # the artificial basis is the column sum for structural columns and
    # zero for the (basic) artificials themselves.
    cost = [Fraction(0)] * (width + 1)
    for i in range(m):
        for j in range(n):
            cost[j] += table[i][j]
        cost[width] += table[i][width]

    while True:
        enter = -1
        for j in range(n):  # artificials never re-enter
            if j not in basis and cost[j] > 0:
                enter = j
                break
        if enter < 0:
            break
        leave = -1
        best = None
        for i in range(m):
            if table[i][enter] > 0:
                ratio = table[i][width] / table[i][enter]
                if best is None or ratio < best or (
                    ratio == best and basis[i] < basis[leave]
                ):
                    best = ratio
                    leave = i
        if leave < 0:
            return False  # unbounded phase-1 cannot happen, defensive
        pivot = table[leave][enter]
        table[leave] = [x / pivot for x in table[leave]]
        for i in range(m):
            if i != leave and table[i][enter] != 0:
                factor = table[i][enter]
                table[i] = [
                    a - factor * p for a, p in zip(table[i], table[leave])
                ]
        if cost[enter] != 0:
            factor = cost[enter]
            cost = [a - factor * p for a, p in zip(cost, table[leave])]
        basis[leave] = enter
    return cost[width] == 0


def in_hull(points, target) -> bool:
    """Whether target is a convex combination of the given points."""
    if not points:
        return False
    columns = [[Fraction(c) for c in p] + [Fraction(1)] for p in points]
    rhs = [Fraction(c) for c in target] + [Fraction(1)]
    return _simplex_feasible(columns, rhs)


def is_extreme(points, index) -> bool:
    """Whether points[index] is outside the hull of the other points."""
    others = [p for i, p in enumerate(points) if i != index]
    return not in_hull(others, points[index])


def _primitive(vec):
    g = 0
    for x in vec:
        g = gcd(g, abs(x))
    if g == 0:
        return None
    return tuple(x // g for x in vec)


def _cross(u, v):
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def _facet_normals(points):
    """All supporting hyperplanes of a full-dimensional hull, n <= 3."""
    dim = len(points[0])
    normals = set()
    if dim == 1:
        lo = min(p[0] for p in points)
        hi = max(p[0] for p in points)
        return {((-1,), -lo), ((1,), hi)}
    for subset in itertools.combinations(points, dim):
        if dim == 2:
            (x1, y1), (x2, y2) = subset
            normal = (y2 - y1, x1 - x2)
        else:
            a, b, c = subset
            u = tuple(b[i] - a[i] for i in range(3))
            v = tuple(c[i] - a[i] for i in range(3))
            normal = _cross(u, v)
        normal = _primitive(normal)
        if normal is None:
            continue
        base = sum(n * x for n, x in zip(normal, subset[0]))
        values = [sum(n * x for n, x in zip(normal, p)) for p in points]
        if all(v <= base for v in values):
            normals.add((normal, base))
        elif all(v >= base for v in values):
            flipped = tuple(-n for n in normal)
            normals.add((flipped, -base))
    return normals


def box_count(points, k: int):
    """(total, interior) lattice points of the k-th dilate, n <= 3.

    Scans the dilated bounding box and tests each point against every
    supporting hyperplane found by the local enumeration.  Requires a
    full-dimensional input hull.
    """
    if k == 0:
        return 1, 0
    dim = len(points[0])
    facets = _facet_normals(points)
    if not facets:
        raise ValueError("degenerate input")
    lows = [k * min(p[i] for p in points) for i in range(dim)]
    highs = [k * max(p[i] for p in points) for i in range(dim)]
    total = 0
    interior = 0
    for candidate in itertools.product(
        *(range(lo, hi + 1) for lo, hi in zip(lows, highs))
    ):
        values = [
            (sum(n * x for n, x in zip(normal, candidate)), k * base)
            for normal, base in facets
        ]
        if all(v <= bound for v, bound in values):
            total += 1
            if all(v < bound for v, bound in values):
                interior += 1
    return total, interior
