"""Auxiliary-variable extensions and the square exponent matrix.

Given a polynomial with M monomials in N variables (all coefficients 1),
each choice of M - N - 1 monomial positions receives one fresh variable,
making the extended support affinely independent whenever the resulting
(M+1) x (M+1) matrix

    [ exponent rows | 0 | 1 ]
    [   0  ...  0   | 1 | 1 ]

is nonsingular.  The inverse of that matrix drives everything downstream:
its scaled s-row and u-row give the integer weight vectors B and C, the
scaled variable rows give one rational vector per column, and those
vectors are exactly the inward data of a half-space description of the
extended Newton polytope.

All derived quantities come with redundant internal checks; a failed
check raises InternalConsistencyError because it means arithmetic went
wrong, not that input was bad.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

from .errors import InternalConsistencyError, NotSimplicializingError
from .exact import dot, int_det, mat_inverse, primitive_vector, vec_sub
from .lattice import normalized_volume
from .laurent import LaurentPolynomial, Monomial
from .polytope import Face, NewtonPolytope, newton_polytope

DEFAULT_CHOICE_CAP = 10000


@dataclass(frozen=True)
class AuxChoice:
    """One way of attaching auxiliary variables to monomial positions.

    ``positions`` are 0-based indices into the term order of the base
    polynomial; ``ordinal`` is the 1-based rank of this choice in the
    lexicographic enumeration, which is what user-facing output shows.
    """

    positions: tuple[int, ...]
    ordinal: int
    total_monomials: int
    base_variables: int

    @property
    def n_aux(self) -> int:
        return len(self.positions)


def enumerate_choices(
    f: LaurentPolynomial, cap: int | None = DEFAULT_CHOICE_CAP
) -> tuple[tuple[AuxChoice, ...], bool]:
    """All auxiliary-variable choices in lexicographic order.

    Returns ``(choices, truncated)``; ``truncated`` is True when ``cap``
    cut the enumeration short.
    """
    m = len(f.terms)
    n = f.n_variables
    n_aux = m - n - 1
    if n_aux < 0:
        raise NotSimplicializingError(
            f"{m} monomials in {n} variables: need at least {n + 1} monomials"
        )
    total = comb(m, n_aux)
    truncated = cap is not None and total > cap
    limit = cap if truncated else total
    choices = []
    for ordinal, positions in enumerate(combinations(range(m), n_aux), start=1):
        if ordinal > limit:
            break
        choices.append(
            AuxChoice(
                positions=positions,
                ordinal=ordinal,
                total_monomials=m,
                base_variables=n,
            )
        )
    return tuple(choices), truncated


def _aux_names(f: LaurentPolynomial, count: int) -> tuple[str, ...]:
    for stem in ("u", "aux", "_aux"):
        names = tuple(f"{stem}{i}" for i in range(1, count + 1))
        if not set(names) & set(f.variables):
            return names
    raise AssertionError("could not find fresh auxiliary variable names")


def support_condition_warnings(f: LaurentPolynomial, poly: NewtonPolytope) -> tuple[str, ...]:
    """Warn about support points in the interior of the Newton polytope.

    Results downstream are only guaranteed when no monomial sits in the
    relative interior of the hull.  The test is only performed for
    full-dimensional hulls; degenerate hulls fail hard elsewhere.
    """
    if not poly.full_dimensional:
        return ()
    warnings = []
    for mono in f.support:
        if all(facet.value(mono) < facet.offset for facet in poly.facets):
            warnings.append(
                f"support point {mono} lies in the interior of the Newton polytope; "
                "filtration statements may fail"
            )
    return tuple(warnings)


def extend_polynomial(f: LaurentPolynomial, choice: AuxChoice) -> LaurentPolynomial:
    """Attach one fresh variable to each chosen monomial, coefficient 1.

    Term order is preserved: row/term indexing downstream relies on it.
    """
    if not f.all_coefficients_one:
        raise NotSimplicializingError("all coefficients must be 1")
    if choice.total_monomials != len(f.terms) or choice.base_variables != f.n_variables:
        raise ValueError("choice was enumerated for a different polynomial")
    aux = _aux_names(f, choice.n_aux)
    position_of = {pos: j for j, pos in enumerate(choice.positions)}
    monomials = []
    for i, (mono, _) in enumerate(f.terms):
        extra = [0] * choice.n_aux
        if i in position_of:
            extra[position_of[i]] = 1
        monomials.append(mono + tuple(extra))
    return LaurentPolynomial.from_support(f.variables + aux, monomials)


@dataclass(frozen=True)
class SimplicialData:
    """The square matrix of an auxiliary-variable choice and its inverse data.

    ``matrix`` is the (M+1) x (M+1) integer matrix after any row swap
    needed to make the determinant positive; ``row_terms[i]`` says which
    term of the base polynomial row ``i`` came from.  ``z_coeffs`` (B)
    and ``u_coeffs`` (C) are the scaled s- and u-rows of the inverse;
    ``exponent_coeffs[q]`` is the q-th column of the scaled variable
    rows; ``facet_normals[q]`` is that column divided by B_q (or by the
    determinant on the zero class).  Index M is the added projective
    row; its facet normal is the zero vector.
    """

    base: LaurentPolynomial
    choice: AuxChoice
    extended: LaurentPolynomial
    matrix: tuple[tuple[int, ...], ...]
    row_terms: tuple[int, ...]
    row_swap: tuple[int, int] | None
    gamma: int
    inverse: tuple[tuple[Fraction, ...], ...]
    adjugate: tuple[tuple[int, ...], ...]
    z_coeffs: tuple[int, ...]
    u_coeffs: tuple[int, ...]
    exponent_coeffs: tuple[tuple[int, ...], ...]
    pos_class: tuple[int, ...]
    neg_class: tuple[int, ...]
    zero_class: tuple[int, ...]
    facet_normals: tuple[tuple[Fraction, ...], ...]
    warnings: tuple[str, ...]

    @property
    def m(self) -> int:
        return self.choice.total_monomials

    @property
    def n_extended_vars(self) -> int:
        return self.m - 1


def build_data(f: LaurentPolynomial, choice: AuxChoice) -> SimplicialData:
    """Assemble and validate the full matrix package for one choice."""
    extended = extend_polynomial(f, choice)
    m = choice.total_monomials
    width = m + 1

    def assemble(row_terms):
        rows = []
        for i in row_terms:
            mono = extended.terms[i][0]
            rows.append(mono + (0, 1))
        rows.append((0,) * (m - 1) + (1, 1))
        return tuple(rows)

    row_terms = tuple(range(m))
    matrix = assemble(row_terms)
    det = int_det(matrix)
    if det == 0:
        raise NotSimplicializingError(
            f"extended support is affinely dependent for positions "
            f"{tuple(p + 1 for p in choice.positions)}"
        )
    row_swap = None
    if det < 0:
        row_terms = (1, 0) + tuple(range(2, m))
        matrix = assemble(row_terms)
        det = -det
        row_swap = (0, 1)
    gamma = det

    inverse = mat_inverse(matrix)
    adjugate = []
    for row in inverse:
        scaled = []
        for x in row:
            y = gamma * x
            if y.denominator != 1:
                raise InternalConsistencyError("scaled inverse is not integral")
            scaled.append(int(y))
        adjugate.append(tuple(scaled))
    adjugate = tuple(adjugate)

    z_coeffs = adjugate[m - 1]
    u_coeffs = adjugate[m]
    exponent_coeffs = tuple(
        tuple(adjugate[r][q] for r in range(m - 1)) for q in range(width)
    )

    if z_coeffs[m] != gamma or u_coeffs[m] != 0:
        raise InternalConsistencyError("projective column of inverse is wrong")
    if any(exponent_coeffs[m]):
        raise InternalConsistencyError("projective column of inverse is wrong")
    if sum(z_coeffs) != 0 or sum(u_coeffs) != gamma:
        raise InternalConsistencyError("row sums of scaled inverse are wrong")
    if any(u_coeffs[q] != -z_coeffs[q] for q in range(m)):
        raise InternalConsistencyError("u-row must be the negated s-row off the last entry")

    pos_class = tuple(q for q in range(width) if z_coeffs[q] > 0)
    neg_class = tuple(q for q in range(width) if z_coeffs[q] < 0)
    zero_class = tuple(q for q in range(width) if z_coeffs[q] == 0)

    normals = []
    for q in range(width):
        if q == m:
            normals.append(tuple(Fraction(0) for _ in range(m - 1)))
        elif z_coeffs[q] != 0:
            normals.append(tuple(Fraction(a, z_coeffs[q]) for a in exponent_coeffs[q]))
        else:
            normals.append(tuple(Fraction(a, gamma) for a in exponent_coeffs[q]))
    base_poly = newton_polytope(f.support)
    warnings = support_condition_warnings(f, base_poly)

    return SimplicialData(
        base=f,
        choice=choice,
        extended=extended,
        matrix=matrix,
        row_terms=row_terms,
        row_swap=row_swap,
        gamma=gamma,
        inverse=inverse,
        adjugate=adjugate,
        z_coeffs=z_coeffs,
        u_coeffs=u_coeffs,
        exponent_coeffs=exponent_coeffs,
        pos_class=pos_class,
        neg_class=neg_class,
        zero_class=zero_class,
        facet_normals=tuple(normals),
        warnings=warnings,
    )


def simplex_volumes(data: SimplicialData) -> tuple[int, ...]:
    """|B_q| recomputed as a normalized simplex volume, for each q <= M.

    Row q is deleted, the projective row acts as the origin, and the
    normalized volume of the remaining exponent rows is compared against
    the magnitude of the corresponding weight entry.
    """
    m = data.m
    vols = []
    for q in range(m + 1):
        pts = [
            data.matrix[i][: m - 1] for i in range(m + 1) if i != q
        ]
        diffs = [vec_sub(p, pts[0]) for p in pts[1:]]
        vols.append(abs(int_det(diffs)))
    for q in range(m + 1):
        if vols[q] != abs(data.z_coeffs[q]):
            raise InternalConsistencyError(
                f"simplex volume {vols[q]} disagrees with |B_{q + 1}| = "
                f"{abs(data.z_coeffs[q])}"
            )
    return tuple(vols)


@dataclass(frozen=True)
class EulerData:
    chi: int
    closure_volume: int


def euler_characteristic(data: SimplicialData) -> EulerData:
    """Signed count of torus solutions, two independent ways.

    The positive-class weights sum to the normalized volume of the hull
    of the extended support together with the origin; the signed version
    is the Euler characteristic of the hypersurface cut out on the torus.
    """
    weight_sum = sum(data.z_coeffs[q] for q in data.pos_class)
    closure = newton_polytope(data.extended.support + ((0,) * data.n_extended_vars,))
    vol = normalized_volume(closure)
    if weight_sum != vol:
        raise InternalConsistencyError(
            f"positive weights sum to {weight_sum} but the closure volume is {vol}"
        )
    chi = (-1) ** data.m * weight_sum
    return EulerData(chi=chi, closure_volume=vol)


@dataclass(frozen=True)
class LinearForm:
    """Affine form in z attached to factor index q (0-based).

    ``kind`` is "z" for the projective slot, "facet" when the form can
    be rewritten through a facet normal, "constant" when z-free.
    """

    q: int
    constant: Fraction
    slope: Fraction
    kind: str

    def at(self, z) -> Fraction:
        return self.constant + self.slope * Fraction(z)


def linear_forms(data: SimplicialData, vector) -> tuple[LinearForm, ...]:
    """The M+1 affine forms attached to a lattice vector of the extended space."""
    vector = tuple(int(x) for x in vector)
    if len(vector) != data.n_extended_vars:
        raise ValueError(
            f"vector has {len(vector)} entries, expected {data.n_extended_vars}"
        )
    g = data.gamma
    forms = []
    for q in range(data.m + 1):
        constant = Fraction(dot(data.exponent_coeffs[q], vector) + data.u_coeffs[q], g)
        slope = Fraction(data.z_coeffs[q], g)
        if q == data.m:
            kind = "z"
            if constant != 0 or slope != 1:
                raise InternalConsistencyError("projective form must be exactly z")
        elif data.z_coeffs[q] != 0:
            kind = "facet"
            expected = slope * (dot(data.facet_normals[q], vector) - 1)
            if constant != expected:
                raise InternalConsistencyError(
                    f"facet form mismatch at q={q + 1}: {constant} != {expected}"
                )
        else:
            kind = "constant"
        forms.append(LinearForm(q=q, constant=constant, slope=slope, kind=kind))
    return tuple(forms)


@dataclass(frozen=True)
class HalfSpaceSystem:
    """Facet description derived from the inverse matrix, verified.

    ``inequalities`` are (primitive integer normal, integer offset)
    pairs meaning ``<normal, x> <= offset``, sorted; they are checked to
    agree exactly with the independently computed facet list of the
    extended Newton polytope.
    """

    inequalities: tuple[tuple[tuple[int, ...], int], ...]
    polytope: NewtonPolytope


def half_space_system(data: SimplicialData) -> HalfSpaceSystem:
    m = data.m
    raw = []
    for q in range(m):
        v = data.facet_normals[q]
        if q in data.pos_class or q in data.zero_class:
            normal, offset = tuple(-c for c in v), Fraction(-1 if q in data.pos_class else 0)
        else:
            normal, offset = v, Fraction(1)
        prim = primitive_vector(normal)
        pivot = next(i for i, c in enumerate(normal) if c != 0)
        scale = Fraction(prim[pivot]) / normal[pivot]
        scaled_offset = offset * scale
        if scaled_offset.denominator != 1:
            raise InternalConsistencyError(
                f"facet offset {scaled_offset} is not integral at q={q + 1}"
            )
        raw.append((prim, int(scaled_offset)))
    inequalities = tuple(sorted(raw))
    poly = newton_polytope(data.extended.support)
    reference = tuple(sorted((f.normal, f.offset) for f in poly.facets))
    if inequalities != reference:
        raise InternalConsistencyError(
            "inverse-matrix half-spaces disagree with the computed hull: "
            f"{inequalities} vs {reference}"
        )
    return HalfSpaceSystem(inequalities=inequalities, polytope=poly)


@dataclass(frozen=True)
class PreservedFaces:
    """Faces of the base Newton polytope that survive extension untouched.

    A base face survives when its vertex set, zero-padded into the
    extended exponent space, is exactly the vertex set of some face of
    the extended Newton polytope.
    """

    base_polytope: NewtonPolytope
    extended_polytope: NewtonPolytope
    faces: tuple[Face, ...]


def preserved_faces(data: SimplicialData) -> PreservedFaces:
    base_poly = newton_polytope(data.base.support)
    base_poly.require_full_dimensional()
    ext_poly = newton_polytope(data.extended.support)
    pad = (0,) * data.choice.n_aux
    ext_face_sets = {frozenset(ext_poly.face_points(g)) for g in ext_poly.faces}
    kept = []
    for face in base_poly.faces:
        embedded = frozenset(v + pad for v in base_poly.face_points(face))
        if embedded in ext_face_sets:
            kept.append(face)
    kept.sort(key=lambda f: (f.dimension, f.vertex_indices))
    return PreservedFaces(
        base_polytope=base_poly,
        extended_polytope=ext_poly,
        faces=tuple(kept),
    )


@dataclass(frozen=True)
class PreservationSearch:
    """Result of scanning choices for one preserving a given stratum."""

    choice: AuxChoice | None
    data: SimplicialData | None
    degree_k: int
    stratum: Face
    tried: int
    truncated: bool


def find_preserving_choice(
    f: LaurentPolynomial, vector, cap: int | None = DEFAULT_CHOICE_CAP
) -> PreservationSearch:
    """First choice (lexicographic) whose extension preserves the stratum
    of ``vector``, scanning at most ``cap`` choices."""
    from .lattice import filtration_degree
    from .polytope import minimal_face_of

    base_poly = newton_polytope(f.support)
    base_poly.require_full_dimensional()
    k = filtration_degree(base_poly, vector)
    if k is None:
        raise ValueError(f"vector {tuple(vector)} lies in no dilate of the polytope")
    point = tuple(Fraction(int(x), k) for x in vector)
    stratum = minimal_face_of(base_poly, point)
    choices, truncated = enumerate_choices(f, cap)
    tried = 0
    for choice in choices:
        tried += 1
        try:
            data = build_data(f, choice)
        except NotSimplicializingError:
            continue
        kept = preserved_faces(data)
        if any(g.vertex_indices == stratum.vertex_indices for g in kept.faces):
            return PreservationSearch(
                choice=choice,
                data=data,
                degree_k=k,
                stratum=stratum,
                tried=tried,
                truncated=truncated,
            )
    return PreservationSearch(
        choice=None,
        data=None,
        degree_k=k,
        stratum=stratum,
        tried=tried,
        truncated=truncated,
    )
