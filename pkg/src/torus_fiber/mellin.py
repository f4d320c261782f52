"""Gamma-factor skeletons of fibre transforms and pole bookkeeping.

For a lattice vector J the transform of the associated monomial is, up
to an entire factor that is never computed here, a ratio of gamma
functions whose arguments are the affine forms of
:func:`torus_fiber.simplicial.linear_forms`: positive-class forms in the
numerator, reflected negative-class forms in the denominator, and
z-free constants collected separately.  Poles reported from this
skeleton are therefore *candidate* poles: every true pole of the
transform appears here, but a candidate can be killed by the entire
factor.  Checks in the sweeps below only assert what survives that
one-sided relationship — candidate positions, exact multiplicity
bookkeeping at the expected position, and global upper bounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DegenerateSkeletonError, InternalConsistencyError
from .exact import dot
from .lattice import dilation_degree, filtration_degree, lattice_points
from .polytope import minimal_face_of, newton_polytope
from .simplicial import LinearForm, SimplicialData, linear_forms, preserved_faces


@lru_cache(maxsize=128)
def extended_polytope(data: SimplicialData):
    """Hull of the extended support (shared across calls)."""
    return newton_polytope(data.extended.support)


@lru_cache(maxsize=128)
def closure_polytope(data: SimplicialData):
    """Hull of the extended support together with the origin."""
    origin = (0,) * data.n_extended_vars
    return newton_polytope(data.extended.support + (origin,))


@dataclass(frozen=True)
class MellinSkeleton:
    """Gamma-quotient shape of one monomial transform.

    ``numerator`` holds the arguments of numerator gamma factors,
    ``denominator`` those of denominator gamma factors (already
    reflected, so every slope in both tuples is positive), and
    ``constants`` the z-free arguments.  ``degenerate`` flags a
    constant at a nonpositive integer, where the skeleton as written
    degenerates and pole enumeration refuses to run.
    """

    vector: tuple[int, ...]
    gamma: int
    numerator: tuple[LinearForm, ...]
    denominator: tuple[LinearForm, ...]
    constants: tuple[Fraction, ...]
    degenerate: bool


def mellin_skeleton(data: SimplicialData, vector) -> MellinSkeleton:
    forms = linear_forms(data, vector)
    numerator = []
    denominator = []
    constants = []
    for form in forms:
        if form.q in data.pos_class:
            numerator.append(form)
        elif form.q in data.neg_class:
            denominator.append(
                LinearForm(
                    q=form.q,
                    constant=1 - form.constant,
                    slope=-form.slope,
                    kind="reflected",
                )
            )
        else:
            constants.append(form.constant)
    if any(f.slope <= 0 for f in numerator) or any(f.slope <= 0 for f in denominator):
        raise InternalConsistencyError("all skeleton slopes must be positive")
    if sum(f.slope for f in numerator) != sum(f.slope for f in denominator):
        raise InternalConsistencyError("numerator and denominator slopes must balance")
    degenerate = any(c.denominator == 1 and c <= 0 for c in constants)
    return MellinSkeleton(
        vector=tuple(int(x) for x in vector),
        gamma=data.gamma,
        numerator=tuple(numerator),
        denominator=tuple(denominator),
        constants=tuple(constants),
        degenerate=degenerate,
    )


def _hits(forms, z) -> int:
    """Number of forms taking a nonpositive-integer value at z."""
    count = 0
    for form in forms:
        val = form.at(z)
        if val.denominator == 1 and val <= 0:
            count += 1
    return count


@dataclass(frozen=True)
class PoleReport:
    """Candidate poles of the skeleton at or above ``z_min``.

    ``poles`` is (position, order) sorted by descending position;
    ``cancellations`` lists positions where denominator factors removed
    numerator hits, as (position, numerator hits, denominator hits).
    """

    z_min: Fraction
    poles: tuple[tuple[Fraction, int], ...]
    cancellations: tuple[tuple[Fraction, int, int], ...]
    degenerate_constants: tuple[Fraction, ...]

    @property
    def max_pole(self) -> tuple[Fraction, int] | None:
        return self.poles[0] if self.poles else None


def enumerate_poles(
    skeleton: MellinSkeleton, z_min, allow_degenerate: bool = False
) -> PoleReport:
    """All candidate pole positions with order >= 1 down to ``z_min``."""
    bad = tuple(c for c in skeleton.constants if c.denominator == 1 and c <= 0)
    if skeleton.degenerate and not allow_degenerate:
        raise DegenerateSkeletonError(
            f"constant gamma arguments {bad} sit at nonpositive integers"
        )
    z_min = Fraction(z_min)
    counts: dict[Fraction, list[int]] = {}
    for side, forms in ((0, skeleton.numerator), (1, skeleton.denominator)):
        for form in forms:
            arg = 0
            while True:
                z = (arg - form.constant) / form.slope
                if z < z_min:
                    break
                counts.setdefault(z, [0, 0])[side] += 1
                arg -= 1
    poles = []
    cancellations = []
    for z in sorted(counts, reverse=True):
        num, den = counts[z]
        if num >= 1 and den >= 1:
            cancellations.append((z, num, den))
        if num >= 1 and num - den >= 1:
            poles.append((z, num - den))
    return PoleReport(
        z_min=z_min,
        poles=tuple(poles),
        cancellations=tuple(cancellations),
        degenerate_constants=bad,
    )


@dataclass(frozen=True)
class PolePrediction:
    """Expected highest pole location for one monomial, from the geometry.

    ``degree_k`` classifies the vector against the hull of the support
    together with the origin; ``tight_pos`` / ``tight_neg`` list the
    0-based factor indices whose facet normals are tight at that degree.
    With at least one tight positive factor the prediction is an exact
    position with an order bound; otherwise an open interval.  The
    prediction speaks about the true transform, so the skeleton can
    only confirm it as a candidate (see module docstring).
    """

    vector: tuple[int, ...]
    degree_k: int
    hodge_p: int
    tight_pos: tuple[int, ...]
    tight_neg: tuple[int, ...]
    kind: str  # "at" | "interval"
    position: Fraction | None
    order_bound: int | None
    interval: tuple[Fraction, Fraction] | None
    filtration_k: int | None


def pole_prediction(data: SimplicialData, vector) -> PolePrediction:
    vector = tuple(int(x) for x in vector)
    m = data.m
    closure = closure_polytope(data)
    k = dilation_degree(closure, vector)
    p = (m - 1) - k
    tight_pos = tuple(
        q for q in data.pos_class
        if q < m and dot(data.facet_normals[q], vector) == k
    )
    tight_neg = tuple(
        q for q in data.neg_class
        if dot(data.facet_normals[q], vector) == k
    )
    fil_k = filtration_degree(extended_polytope(data), vector)
    if tight_pos:
        return PolePrediction(
            vector=vector,
            degree_k=k,
            hodge_p=p,
            tight_pos=tight_pos,
            tight_neg=tight_neg,
            kind="at",
            position=Fraction(1 - k),
            order_bound=len(tight_pos) + 1,
            interval=None,
            filtration_k=fil_k,
        )
    stretch = max(Fraction(data.gamma, data.z_coeffs[q]) for q in data.pos_class)
    lower = 1 - k * (1 + stretch)
    return PolePrediction(
        vector=vector,
        degree_k=k,
        hodge_p=p,
        tight_pos=(),
        tight_neg=tight_neg,
        kind="interval",
        position=None,
        order_bound=None,
        interval=(lower, Fraction(1 - k)),
        filtration_k=fil_k,
    )


@dataclass(frozen=True)
class SweepIssue:
    vector: tuple[int, ...]
    code: str
    detail: str


@dataclass(frozen=True)
class SweepReport:
    k_max: int
    checked: int
    violations: tuple[SweepIssue, ...]
    notes: tuple[SweepIssue, ...]
    skipped_degenerate: tuple[tuple[int, ...], ...]


def sweep_domain(data: SimplicialData, k_max: int) -> list[tuple[int, ...]]:
    """Nonzero lattice vectors of the extended-polytope dilates up to k_max."""
    ext_poly = extended_polytope(data)
    origin = (0,) * data.n_extended_vars
    seen: set[tuple[int, ...]] = set()
    for k in range(1, k_max + 1):
        for point in lattice_points(ext_poly, k):
            if point != origin:
                seen.add(point)
    return sorted(seen)


def sweep_pole_checks(data: SimplicialData, k_max: int) -> SweepReport:
    """Exhaustive candidate-pole consistency scan over low filtration degrees.

    For every nonzero lattice vector of the dilates of the extended
    Newton polytope up to ``k_max`` (classified by its minimal dilate),
    verify on the skeleton:

    * no candidate pole lies right of zero;
    * with r tight positive factors at degree k, the expected position
      1-k collects exactly r+1 numerator hits, and its order is exactly
      r+1 minus the denominator hits there (so, r+1 when nothing
      cancels) and never more than r+1;
    * the order reported by full enumeration agrees with that count.

    Denominator cancellations and vectors with no tight positive factor
    are recorded as notes, never violations: the skeleton only bounds
    the true transform from above.
    """
    ext_poly = extended_polytope(data)
    violations: list[SweepIssue] = []
    notes: list[SweepIssue] = []
    skipped: list[tuple[int, ...]] = []
    checked = 0
    for vector in sweep_domain(data, k_max):
        fil_k = filtration_degree(ext_poly, vector)
        if fil_k is None or fil_k > k_max:
            raise InternalConsistencyError(
                f"swept vector {vector} has no dilate degree <= {k_max}"
            )
        skeleton = mellin_skeleton(data, vector)
        if skeleton.degenerate:
            skipped.append(vector)
            continue
        checked += 1
        report = enumerate_poles(skeleton, z_min=Fraction(1 - fil_k))
        for z, order in report.poles:
            if z > 0:
                violations.append(
                    SweepIssue(vector, "pole-right-of-zero", f"pole at {z} order {order}")
                )
        r = sum(
            1 for q in data.pos_class
            if q < data.m and dot(data.facet_normals[q], vector) == fil_k
        )
        z0 = Fraction(1 - fil_k)
        num_hits = _hits(skeleton.numerator, z0)
        den_hits = _hits(skeleton.denominator, z0)
        if r >= 1:
            if num_hits != r + 1:
                violations.append(
                    SweepIssue(
                        vector,
                        "tight-count-mismatch",
                        f"expected {r + 1} numerator hits at {z0}, found {num_hits}",
                    )
                )
            order = num_hits - den_hits
            if order > r + 1:
                violations.append(
                    SweepIssue(
                        vector,
                        "order-bound-exceeded",
                        f"order {order} at {z0} exceeds bound {r + 1}",
                    )
                )
            listed = dict(report.poles).get(z0)
            expected = order if order >= 1 else None
            if listed != expected:
                violations.append(
                    SweepIssue(
                        vector,
                        "enumeration-mismatch",
                        f"enumerated order {listed} at {z0}, counted {expected}",
                    )
                )
            if den_hits:
                notes.append(
                    SweepIssue(
                        vector,
                        "cancellation",
                        f"{den_hits} denominator hit(s) at {z0}; order drops to {order}",
                    )
                )
        else:
            notes.append(
                SweepIssue(vector, "no-tight-factor", f"degree {fil_k}, no position pinned")
            )
    return SweepReport(
        k_max=k_max,
        checked=checked,
        violations=tuple(violations),
        notes=tuple(notes),
        skipped_degenerate=tuple(skipped),
    )


@dataclass(frozen=True)
class FaceSweepReport:
    k_max: int
    checked: int
    skipped_unpreserved: int
    violations: tuple[SweepIssue, ...]
    notes: tuple[SweepIssue, ...]
    exemptions: int


def sweep_preserved_face_checks(data: SimplicialData, k_max: int) -> FaceSweepReport:
    """Scan base-lattice vectors whose stratum survives the extension.

    For each nonzero vector of a dilate of the base Newton polytope up
    to ``k_max`` whose minimal face (at its minimal dilate degree k) is
    preserved by the extension, the zero-padded vector must satisfy the
    strict sandwich inequalities of the facet-normal pairing, class by
    class: zero-class values in (0, k), positive-class in
    (k, k(1+gamma/B_q)), negative-class in (k(1+gamma/B_q), k).  A
    pairing value of exactly zero is exempt (the vector is orthogonal
    to that normal), and boundary equalities are logged as notes.
    Candidate poles of the padded skeleton must stay at or left of
    zero; sharper true-transform bounds are noted, not enforced.
    """
    kept = preserved_faces(data)
    base_poly = kept.base_polytope
    pad = (0,) * data.choice.n_aux
    kept_keys = {face.vertex_indices for face in kept.faces}
    seen: set[tuple[int, ...]] = set()
    origin = (0,) * base_poly.ambient_dim
    for k in range(1, k_max + 1):
        for point in lattice_points(base_poly, k):
            if point != origin:
                seen.add(point)
    violations: list[SweepIssue] = []
    notes: list[SweepIssue] = []
    checked = 0
    skipped = 0
    exemptions = 0
    for vector in sorted(seen):
        k = filtration_degree(base_poly, vector)
        if k is None or k > k_max:
            skipped += 1
            continue
        point = tuple(Fraction(x, k) for x in vector)
        stratum = minimal_face_of(base_poly, point)
        if stratum.vertex_indices not in kept_keys:
            skipped += 1
            continue
        checked += 1
        padded = vector + pad
        for q in range(data.m):
            t = dot(data.facet_normals[q], padded)
            if t == 0:
                exemptions += 1
                continue
            if q in data.zero_class:
                lo, hi = Fraction(0), Fraction(k)
            elif q in data.pos_class:
                lo = Fraction(k)
                hi = k * (1 + Fraction(data.gamma, data.z_coeffs[q]))
            else:
                lo = k * (1 + Fraction(data.gamma, data.z_coeffs[q]))
                hi = Fraction(k)
            if t == lo or t == hi:
                notes.append(
                    SweepIssue(
                        vector,
                        "chain-boundary",
                        f"pairing with normal {q + 1} equals a chain endpoint ({t})",
                    )
                )
            elif not lo < t < hi:
                violations.append(
                    SweepIssue(
                        vector,
                        "chain-violated",
                        f"pairing {t} with normal {q + 1} escapes ({lo}, {hi})",
                    )
                )
        skeleton = mellin_skeleton(data, padded)
        report = enumerate_poles(skeleton, z_min=Fraction(-k), allow_degenerate=True)
        if skeleton.degenerate:
            notes.append(
                SweepIssue(
                    vector,
                    "degenerate-constant",
                    f"constants {report.degenerate_constants} absorbed into the entire factor",
                )
            )
        for z, order in report.poles:
            if z > 0:
                violations.append(
                    SweepIssue(vector, "pole-right-of-zero", f"pole at {z} order {order}")
                )
        top = report.max_pole
        if top is not None and top[0] > 1 - k:
            notes.append(
                SweepIssue(
                    vector,
                    "candidate-above-sharp-bound",
                    f"candidate pole at {top[0]} exceeds 1-k = {1 - k}",
                )
            )
    return FaceSweepReport(
        k_max=k_max,
        checked=checked,
        skipped_unpreserved=skipped,
        violations=tuple(violations),
        notes=tuple(notes),
        exemptions=exemptions,
    )
