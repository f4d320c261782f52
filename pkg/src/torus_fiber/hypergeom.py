"""Ordinary differential operators annihilating the fibre integrals.

The plan: read local exponents at 0 and infinity straight off the
inverse-matrix data, cancel the common ones, and work with the reduced
order-``delta`` operator

    R = prod(theta + a) - t * prod(theta + b),

where ``theta = t d/dt``.  Everything stays in exact rationals; the
eigenvalues of the local monodromies are roots of unity handled in the
group ring of :mod:`torus_fiber.cyclotomic`, and floating point appears
only in optional numpy views (eigenvalue sanity checks, plots).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import numpy as np

from .cyclotomic import CycValue
from .errors import InternalConsistencyError, ResonantExponentError
from .exact import dot
from .mellin import pole_prediction
from .simplicial import SimplicialData, linear_forms

# ---------------------------------------------------------------------------
# exponents


@dataclass(frozen=True)
class OperatorShape:
    """Root lists of the two theta polynomials before reduction.

    ``p_roots`` / ``q_roots`` are the roots in the original variable;
    dividing by ``gamma`` gives the roots after the Kummer substitution
    t = s^gamma.
    """

    p_roots: tuple[Fraction, ...]
    q_roots: tuple[Fraction, ...]
    gamma: int


def theta_operators(data: SimplicialData, vector) -> OperatorShape:
    forms = linear_forms(data, vector)
    g = data.gamma
    p_roots: list[Fraction] = []
    q_roots: list[Fraction] = []
    for form in forms:
        b = data.z_coeffs[form.q]
        if form.q in data.pos_class:
            p_roots.extend(Fraction(g * (form.constant + j), b) for j in range(b))
        elif form.q in data.neg_class:
            q_roots.extend(Fraction(g * (form.constant + j), b) for j in range(-b))
    return OperatorShape(
        p_roots=tuple(sorted(p_roots)),
        q_roots=tuple(sorted(q_roots)),
        gamma=g,
    )


@dataclass(frozen=True)
class ExponentSets:
    """Local exponent multisets at 0 (plus) and infinity (minus).

    ``common`` is the multiset intersection; the reduced operator uses
    the two differences.  All four are sorted tuples with multiplicity.
    """

    plus: tuple[Fraction, ...]
    minus: tuple[Fraction, ...]
    common: tuple[Fraction, ...]
    reduced_plus: tuple[Fraction, ...]
    reduced_minus: tuple[Fraction, ...]

    @property
    def reduced_order(self) -> int:
        return len(self.reduced_plus)


def _multiset_split(a, b):
    """Return (common, a - common, b - common) as sorted tuples."""
    from collections import Counter

    ca, cb = Counter(a), Counter(b)
    common = ca & cb
    return (
        tuple(sorted(common.elements())),
        tuple(sorted((ca - common).elements())),
        tuple(sorted((cb - common).elements())),
    )


def local_exponents(data: SimplicialData, vector) -> ExponentSets:
    vector = tuple(int(x) for x in vector)
    g = data.gamma
    plus: list[Fraction] = []
    minus: list[Fraction] = []
    for q in data.pos_class:
        b = data.z_coeffs[q]
        pairing = dot(data.facet_normals[q], vector)
        shift = Fraction(pairing - 1, g)
        plus.extend(Fraction(j, b) - shift for j in range(b))
    for q in data.neg_class:
        b = data.z_coeffs[q]
        pairing = dot(data.facet_normals[q], vector)
        shift = Fraction(pairing - 1, g)
        minus.extend(Fraction(j, b) - shift for j in range(1, -b + 1))
    if len(plus) != len(minus):
        raise InternalConsistencyError(
            f"exponent multisets have sizes {len(plus)} != {len(minus)}"
        )
    common, red_plus, red_minus = _multiset_split(plus, minus)
    return ExponentSets(
        plus=tuple(sorted(plus)),
        minus=tuple(sorted(minus)),
        common=common,
        reduced_plus=red_plus,
        reduced_minus=red_minus,
    )


def verify_exponent_bridge(shape: OperatorShape, sets: ExponentSets) -> None:
    """The negated plus-exponents and the Kummer roots agree modulo 1."""
    left = sorted((-a) % 1 for a in sets.plus)
    right = sorted((r / shape.gamma) % 1 for r in shape.p_roots)
    if left != right:
        raise InternalConsistencyError(
            "plus exponents and theta roots disagree modulo 1: "
            f"{left} vs {right}"
        )


# ---------------------------------------------------------------------------
# the reduced operator and its series solutions


@dataclass(frozen=True)
class ReducedOperator:
    """R = prod(theta + a) - t * prod(theta + b), a/b sorted with multiplicity."""

    plus_shifts: tuple[Fraction, ...]
    minus_shifts: tuple[Fraction, ...]

    @property
    def order(self) -> int:
        return len(self.plus_shifts)

    @property
    def indicial_roots(self) -> tuple[Fraction, ...]:
        return tuple(sorted(-a for a in self.plus_shifts))


def reduced_operator(sets: ExponentSets) -> ReducedOperator:
    if len(sets.reduced_plus) != len(sets.reduced_minus):
        raise InternalConsistencyError("reduced exponent sets must balance")
    return ReducedOperator(
        plus_shifts=sets.reduced_plus,
        minus_shifts=tuple(sorted(a + 1 for a in sets.reduced_minus)),
    )


def simple_nonresonant_exponents(op: ReducedOperator) -> tuple[Fraction, ...]:
    """Indicial roots at 0 that admit a plain power-series solution."""
    roots = op.indicial_roots
    good = []
    for rho in roots:
        if roots.count(rho) != 1:
            continue
        resonant = any(
            (other - rho).denominator == 1 and other - rho >= 1 for other in roots
        )
        if not resonant:
            good.append(rho)
    return tuple(good)


@dataclass(frozen=True)
class FrobeniusSeries:
    exponent: Fraction
    coefficients: tuple[Fraction, ...]


def frobenius_series(op: ReducedOperator, rho, count: int = 8) -> FrobeniusSeries:
    """Power-series solution t^rho * sum a_k t^k with a_0 = 1.

    Refuses multiple or resonant exponents: those need logarithmic
    solutions, which this package does not construct.
    """
    rho = Fraction(rho)
    roots = op.indicial_roots
    if roots.count(rho) == 0:
        raise ResonantExponentError(f"{rho} is not an indicial root")
    if roots.count(rho) > 1:
        raise ResonantExponentError(f"indicial root {rho} has multiplicity > 1")
    for other in roots:
        d = other - rho
        if d.denominator == 1 and d >= 1:
            raise ResonantExponentError(
                f"resonant pair: {other} = {rho} + {d}"
            )
    coeffs = [Fraction(1)]
    for k in range(1, count + 1):
        num = Fraction(1)
        for b in op.minus_shifts:
            num *= rho + k - 1 + b
        den = Fraction(1)
        for a in op.plus_shifts:
            den *= rho + k + a
        coeffs.append(coeffs[-1] * num / den)
    return FrobeniusSeries(exponent=rho, coefficients=tuple(coeffs))


def _expand_shifts(shifts) -> tuple[Fraction, ...]:
    """Dense coefficients of prod (x + a), low to high."""
    poly = [Fraction(1)]
    for a in shifts:
        nxt = [Fraction(0)] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i] += c * a
            nxt[i + 1] += c
        poly = nxt
    return tuple(poly)


def _eval_poly(coeffs, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def verify_annihilation(op: ReducedOperator, series: FrobeniusSeries) -> None:
    """Apply R to the truncated series through expanded coefficients.

    This re-derives every theta-polynomial value by Horner evaluation
    of the expanded product, independently of the factored recurrence
    that built the series, and demands that all computable coefficients
    of R(series) vanish exactly.
    """
    a_poly = _expand_shifts(op.plus_shifts)
    b_poly = _expand_shifts(op.minus_shifts)
    rho = series.exponent
    coeffs = series.coefficients
    head = _eval_poly(a_poly, rho) * coeffs[0]
    if head != 0:
        raise InternalConsistencyError(
            f"operator does not kill the leading term: A({rho}) = {head}"
        )
    for k in range(1, len(coeffs)):
        residual = (
            _eval_poly(a_poly, rho + k) * coeffs[k]
            - _eval_poly(b_poly, rho + k - 1) * coeffs[k - 1]
        )
        if residual != 0:
            raise InternalConsistencyError(
                f"nonzero coefficient of t^({rho}+{k}) after applying the operator"
            )


# ---------------------------------------------------------------------------
# characteristic polynomials of the local monodromies


@dataclass(frozen=True)
class CharPolyData:
    """Exact characteristic polynomials of the monodromies at 0 and infinity.

    Coefficients are group-ring values (reduced canonical form), stored
    low to high; both polynomials are monic of degree ``order``.  The
    constant terms are carried separately as explicit single-term units,
    which is what makes exact matrix inversion possible downstream.
    """

    modulus: int
    order: int
    x_zero: tuple[CycValue, ...]
    x_infinity: tuple[CycValue, ...]
    x_zero_const: CycValue
    x_infinity_const: CycValue
    unit_multiplicity: int

    def floats(self, which: str = "zero") -> np.ndarray:
        coeffs = self.x_zero if which == "zero" else self.x_infinity
        return np.array([c.to_complex() for c in coeffs], dtype=complex)


def _poly_from_roots(modulus: int, roots) -> list[CycValue]:
    """prod (t - root) over the group ring, coefficients unreduced."""
    coeffs = [CycValue.from_rational(modulus, 1)]
    for root in roots:
        nxt = [CycValue.zero(modulus) for _ in range(len(coeffs) + 1)]
        for i, c in enumerate(coeffs):
            nxt[i + 1] = nxt[i + 1] + c
            nxt[i] = nxt[i] - c * root
        coeffs = nxt
    return coeffs


def _poly_from_phases(modulus: int, phases) -> list[CycValue]:
    """prod (t - e^(2 pi i phase)), coefficients in reduced canonical form.

    The expansion stays in the plain group ring (multiplying by a
    monomial is just an exponent shift) and each coefficient is reduced
    once at the end.
    """
    roots = [CycValue.from_phase(modulus, phase) for phase in phases]
    return [c.reduce() for c in _poly_from_roots(modulus, roots)]


def _unit_root_multiplicity(modulus: int, coeffs) -> int:
    """How many times (t - 1) divides the polynomial, complex-exactly."""
    current = list(coeffs)
    count = 0
    while len(current) > 1:
        remainder = CycValue.zero(modulus)
        for c in current:
            remainder = remainder + c
        if not remainder.is_zero_complex:
            break
        # synthetic division by (t - 1): quotient coefficients are the
        # partial sums from the top
        quotient = []
        acc = CycValue.zero(modulus)
        for c in reversed(current[1:]):
            acc = acc + c
            quotient.append(acc)
        current = [c.reduce() for c in reversed(quotient)]
        count += 1
    return count


def characteristic_polynomials(data: SimplicialData, vector,
                               sets: ExponentSets | None = None) -> CharPolyData:
    if sets is None:
        sets = local_exponents(data, vector)
    all_exps = sets.plus + sets.minus
    modulus = 1
    for a in all_exps:
        modulus = lcm(modulus, a.denominator)
    x_zero = _poly_from_phases(modulus, [-a for a in sets.reduced_plus])
    x_inf = _poly_from_phases(modulus, [-a for a in sets.reduced_minus])

    def symbolic_const(exps):
        phase = -sum(exps, Fraction(0))
        sign = Fraction(-1) ** len(exps)
        return (CycValue.from_phase(modulus, phase) * sign).reduce()

    x_zero_const = symbolic_const(sets.reduced_plus)
    x_inf_const = symbolic_const(sets.reduced_minus)
    if not x_zero[0].eq_complex(x_zero_const) or not x_inf[0].eq_complex(x_inf_const):
        raise InternalConsistencyError("constant terms disagree with symbolic product")

    _verify_grouped_products(data, vector, sets, modulus, x_zero, x_inf)

    unit_mult = _unit_root_multiplicity(modulus, x_zero)
    direct = sum(1 for a in sets.reduced_plus if a.denominator == 1)
    if unit_mult != direct:
        raise InternalConsistencyError(
            f"unit-root multiplicity {unit_mult} != integer exponent count {direct}"
        )
    return CharPolyData(
        modulus=modulus,
        order=sets.reduced_order,
        x_zero=tuple(x_zero),
        x_infinity=tuple(x_inf),
        x_zero_const=x_zero_const,
        x_infinity_const=x_inf_const,
        unit_multiplicity=unit_mult,
    )


def _verify_grouped_products(data, vector, sets, modulus, x_zero, x_inf):
    """Check the factored closed forms of the full exponent products.

    Before cancellation, the polynomial over the plus exponents factors
    as prod_q (t^{B_q} - w_q) with one explicit root-of-unity w_q per
    positive-class index, and likewise over the minus side.  We expand
    those, multiply the cancelled factors back in, and compare
    coefficientwise in the complex-number sense.
    """
    vector = tuple(int(x) for x in vector)
    g = data.gamma

    def grouped(classes, negate):
        poly = [CycValue.from_rational(modulus, 1)]
        for q in classes:
            b = data.z_coeffs[q]
            size = b if not negate else -b
            pairing = dot(data.facet_normals[q], vector)
            w = CycValue.from_phase(modulus, Fraction(pairing - 1, g) * size)
            nxt = [CycValue.zero(modulus) for _ in range(len(poly) + size)]
            for i, c in enumerate(poly):
                if c.is_zero_ring:
                    continue
                nxt[i + size] = nxt[i + size] + c
                nxt[i] = nxt[i] - c * w
            poly = nxt
        return poly

    full_plus = grouped(data.pos_class, negate=False)
    full_minus = grouped(data.neg_class, negate=True)

    def restore(reduced_poly):
        poly = list(reduced_poly)
        for a in sets.common:
            root = CycValue.from_phase(modulus, -a)
            nxt = [CycValue.zero(modulus) for _ in range(len(poly) + 1)]
            for i, c in enumerate(poly):
                nxt[i + 1] = nxt[i + 1] + c
                nxt[i] = nxt[i] - c * root
            poly = nxt
        return poly

    for label, full, restored in (
        ("plus", full_plus, restore(x_zero)),
        ("minus", full_minus, restore(x_inf)),
    ):
        if len(full) != len(restored):
            raise InternalConsistencyError(f"{label} product degrees disagree")
        for i, (a, b) in enumerate(zip(full, restored)):
            if not a.eq_complex(b):
                raise InternalConsistencyError(
                    f"{label} closed form disagrees at degree {i}"
                )


# ---------------------------------------------------------------------------
# monodromy matrices


def _identity_matrix(n: int, modulus: int):
    one = CycValue.from_rational(modulus, 1)
    zero = CycValue.zero(modulus)
    return tuple(
        tuple(one if i == j else zero for j in range(n)) for i in range(n)
    )


def _matmul_cyc(a, b):
    n = len(a)
    if n == 0:
        return a
    k = len(b[0])
    cols = tuple(zip(*b))
    out = []
    for row in a:
        out_row = []
        for col in cols:
            acc = CycValue.zero(row[0].modulus)
            for x, y in zip(row, col):
                if x.is_zero_ring or y.is_zero_ring:
                    continue
                acc = acc + x * y
            out_row.append(acc.reduce())
        out.append(tuple(out_row))
    return tuple(out)


def _mat_pow_cyc(mat, k: int, modulus: int):
    n = len(mat)
    out = _identity_matrix(n, modulus)
    base = mat
    while k:
        if k & 1:
            out = _matmul_cyc(out, base)
        base = _matmul_cyc(base, base)
        k >>= 1
    return out


def _mat_eq(a, b) -> bool:
    return all(
        x.reduce() == y.reduce()
        for ra, rb in zip(a, b)
        for x, y in zip(ra, rb)
    )


def _companion(coeffs, modulus: int):
    """Companion matrix of a monic polynomial given low-to-high."""
    n = len(coeffs) - 1
    zero = CycValue.zero(modulus)
    one = CycValue.from_rational(modulus, 1)
    rows = []
    for i in range(n):
        row = [one if (j + 1 == i) else zero for j in range(n - 1)]
        row.append((-coeffs[i]).reduce())
        rows.append(tuple(row))
    return tuple(rows)


def _companion_inverse(coeffs, const_unit: CycValue, modulus: int):
    """Exact inverse of the companion matrix, using the unit constant term."""
    n = len(coeffs) - 1
    if n == 0:
        return ()
    zero = CycValue.zero(modulus)
    one = CycValue.from_rational(modulus, 1)
    inv_const = const_unit.monomial_inverse()
    cols: list[list[CycValue]] = [[zero] * n for _ in range(n)]
    # column j >= 1 is e_{j-1}
    for j in range(1, n):
        cols[j][j - 1] = one
    # column 0 solves C v = e_0
    cols[0][n - 1] = (-inv_const).reduce()
    for r in range(n - 1):
        cols[0][r] = (-(coeffs[r + 1] * inv_const)).reduce()
    return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class SingularLocus:
    """The non-smooth fibres sit where s^gamma equals ``ratio``."""

    ratio: Fraction
    gamma: int

    def positions(self) -> np.ndarray:
        if self.ratio == 0:
            return np.zeros(0, dtype=complex)
        radius = float(abs(self.ratio)) ** (1.0 / self.gamma)
        base = np.pi if self.ratio < 0 else 0.0
        angles = (base + 2 * np.pi * np.arange(self.gamma)) / self.gamma
        return radius * np.exp(1j * angles)


@dataclass(frozen=True)
class MonodromyData:
    """Local monodromies in a companion basis, exact over the group ring.

    ``h_zero`` and ``h_infinity`` generate one full turn around 0 and
    infinity; ``h_one`` is defined by the product-one relation.
    ``m_zero`` / ``m_infinity`` are their gamma-th powers (one turn in
    the base coordinate), and ``around[i]`` conjugates ``h_one`` to the
    turn around the i-th finite singular fibre.

    Eigenvalues are evaluated from the exact spectra, not from floating
    matrices: the companion matrices carry the roots of their defining
    polynomials (explicit roots of unity), and when ``h_one - 1`` has
    rank one — verified exactly — the spectrum of ``h_one`` is 1 with
    multiplicity ``order - 1`` plus one explicit determinant unit.
    Repeated unit eigenvalues make floating eigensolvers drift by far
    more than the checked tolerance, so they are never consulted unless
    the rank-one structure fails (``h_one_spectrum_exact`` False).
    """

    modulus: int
    order: int
    h_zero: tuple
    h_infinity: tuple
    h_infinity_inverse: tuple
    h_one: tuple
    m_zero: tuple
    m_infinity: tuple
    around: tuple
    singular: SingularLocus
    max_eigenvalue_deviation: float
    h_one_spectrum_exact: bool

    def to_complex(self, mat) -> np.ndarray:
        return np.array(
            [[entry.to_complex() for entry in row] for row in mat], dtype=complex
        )


def _unit_phase_deviation(phases) -> float:
    deviation = 0.0
    for phase in phases:
        value = np.exp(2j * np.pi * float(phase))
        deviation = max(deviation, abs(abs(value) - 1.0))
    return deviation


def _rank_at_most_one_complex(mat) -> bool:
    """Whether the complex residue of the matrix has rank 0 or 1.

    With a nonzero pivot entry, vanishing of every 2x2 minor through the
    pivot forces the matrix to be the outer product of its pivot row and
    column, so only those minors need testing.
    """
    n = len(mat)
    pivot = None
    for i in range(n):
        for j in range(n):
            if not mat[i][j].is_zero_complex:
                pivot = (i, j)
                break
        if pivot is not None:
            break
    if pivot is None:
        return True
    pi, pj = pivot
    p = mat[pi][pj]
    for i in range(n):
        if i == pi:
            continue
        for j in range(n):
            if j == pj:
                continue
            minor = p * mat[i][j] - mat[pi][j] * mat[i][pj]
            if not minor.is_zero_complex:
                return False
    return True


def monodromy(data: SimplicialData, vector,
              char: CharPolyData | None = None,
              sets: ExponentSets | None = None,
              tolerance: float = 1e-10) -> MonodromyData:
    if sets is None:
        sets = local_exponents(data, vector)
    if char is None:
        char = characteristic_polynomials(data, vector, sets)
    modulus = char.modulus
    n = char.order
    g = data.gamma

    h0 = _companion(char.x_zero, modulus)
    h_inf_inv = _companion(char.x_infinity, modulus)
    h_inf = _companion_inverse(char.x_infinity, char.x_infinity_const, modulus)
    h0_inv = _companion_inverse(char.x_zero, char.x_zero_const, modulus)

    ident = _identity_matrix(n, modulus)
    if not _mat_eq(_matmul_cyc(h_inf, h_inf_inv), ident):
        raise InternalConsistencyError("companion inverse failed at infinity")
    if not _mat_eq(_matmul_cyc(h0, h0_inv), ident):
        raise InternalConsistencyError("companion inverse failed at zero")

    h1 = _matmul_cyc(h_inf_inv, h0_inv)
    if not _mat_eq(_matmul_cyc(_matmul_cyc(h0, h_inf), h1), ident):
        raise InternalConsistencyError("product-one relation failed")

    m_zero = _mat_pow_cyc(h0, g, modulus)
    m_inf = _mat_pow_cyc(h_inf, g, modulus)
    around = [h1]
    for _ in range(g - 1):
        around.append(_matmul_cyc(_matmul_cyc(h_inf_inv, around[-1]), h_inf))
    for i in range(g - 1):
        left = _matmul_cyc(h_inf, around[i + 1])
        right = _matmul_cyc(around[i], h_inf)
        if not _mat_eq(left, right):
            raise InternalConsistencyError("conjugation chain broke")

    ratio_num = 1
    for q in data.pos_class:
        ratio_num *= data.z_coeffs[q]
    ratio_den = 1
    for q in data.neg_class:
        ratio_den *= data.z_coeffs[q]
    singular = SingularLocus(ratio=Fraction(ratio_num, ratio_den), gamma=g)

    # exact spectra: eigenvalues of h0 / h_inf / their gamma-th powers
    # are explicit roots of unity read off the exponent multisets
    phases = []
    for a in sets.reduced_plus:
        phases.append(-a)
        phases.append(-a * g)
    for a in sets.reduced_minus:
        phases.append(a)
        phases.append(a * g)
    deviation = _unit_phase_deviation(phases)

    # det(h1) = det(h_inf_inv) / det(h0); the (-1)^n factors cancel
    special = char.x_infinity_const * char.x_zero_const.monomial_inverse()
    h_one_exact = True
    if n:
        zero = CycValue.zero(modulus)
        one = CycValue.from_rational(modulus, 1)
        diff = tuple(
            tuple(h1[i][j] - (one if i == j else zero) for j in range(n))
            for i in range(n)
        )
        h_one_exact = _rank_at_most_one_complex(diff)
        if h_one_exact:
            trace = zero
            for i in range(n):
                trace = trace + h1[i][i]
            expected = special + CycValue.from_rational(modulus, n - 1)
            if not trace.eq_complex(expected):
                raise InternalConsistencyError(
                    "h_one trace disagrees with its rank-one spectrum"
                )
            deviation = max(deviation, abs(abs(special.to_complex()) - 1.0))
        else:
            floats = np.array(
                [[entry.to_complex() for entry in row] for row in h1],
                dtype=complex,
            )
            eigs = np.linalg.eigvals(floats)
            numeric = float(np.max(np.abs(np.abs(eigs) - 1.0)))
            # repeated eigenvalues perturb like eps^(1/multiplicity) in a
            # floating eigensolver, so only a loose screen is meaningful
            if numeric > 1e-4:
                raise InternalConsistencyError(
                    f"h_one eigenvalues drifted off the unit circle by {numeric}"
                )
            deviation = max(deviation, numeric)
    if deviation > tolerance and h_one_exact:
        raise InternalConsistencyError(
            f"monodromy eigenvalues drifted off the unit circle by {deviation}"
        )
    return MonodromyData(
        modulus=modulus,
        order=n,
        h_zero=h0,
        h_infinity=h_inf,
        h_infinity_inverse=h_inf_inv,
        h_one=h1,
        m_zero=m_zero,
        m_infinity=m_inf,
        around=tuple(around),
        singular=singular,
        max_eigenvalue_deviation=deviation,
        h_one_spectrum_exact=h_one_exact,
    )


# ---------------------------------------------------------------------------
# unipotent block bookkeeping


@dataclass(frozen=True)
class JordanReport:
    """Size of the expected maximal unipotent block of the turn around 0.

    ``block_size`` comes from the tight-factor count minus integer
    common exponents; ``unit_multiplicity`` is the eigenvalue-1
    multiplicity of the characteristic polynomial at 0, computed
    independently.  The two need not agree in general — a mismatch is
    reported, never reconciled silently.
    """

    block_size: int
    unit_multiplicity: int
    tight_count: int
    common_integer_count: int
    consistent: bool


def jordan_report(data: SimplicialData, vector,
                  sets: ExponentSets | None = None,
                  char: CharPolyData | None = None) -> JordanReport:
    if sets is None:
        sets = local_exponents(data, vector)
    if char is None:
        char = characteristic_polynomials(data, vector, sets)
    prediction = pole_prediction(data, vector)
    r = len(prediction.tight_pos)
    common_ints = sum(1 for a in sets.common if a.denominator == 1)
    block = r + 1 - common_ints
    return JordanReport(
        block_size=block,
        unit_multiplicity=char.unit_multiplicity,
        tight_count=r,
        common_integer_count=common_ints,
        consistent=(block == char.unit_multiplicity),
    )
