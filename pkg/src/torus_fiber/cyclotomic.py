"""Exact arithmetic with roots of unity.

Values live in the group ring Q[x]/(x^m - 1): a sparse map from
exponents mod m to rational coefficients, where x stands for a fixed
primitive m-th root e^(2 pi i / m).  Ring arithmetic is exact and fast,
but the ring is larger than the field it pictures: two elements are
equal *as complex numbers* exactly when their difference reduces to
zero modulo the m-th cyclotomic polynomial.  ``reduce`` computes that
canonical form, and all complex-number equality below goes through it.
Nothing here ever touches floating point except the explicit
``to_complex`` view.
"""

from __future__ import annotations

from cmath import exp as cexp, pi
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


def _poly_mul_int(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return tuple(out)


def _poly_divmod_int(num: tuple[int, ...], den: tuple[int, ...]):
    """Division of integer polynomials with monic divisor."""
    assert den[-1] == 1, "divisor must be monic"
    rem = list(num)
    dn = len(den) - 1
    quot = [0] * max(len(num) - dn, 1)
    for i in range(len(rem) - 1, dn - 1, -1):
        c = rem[i]
        if c == 0:
            continue
        quot[i - dn] = c
        for j, d in enumerate(den):
            rem[i - dn + j] -= c * d
    while len(rem) > 1 and rem[-1] == 0:
        rem.pop()
    return tuple(quot), tuple(rem)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Coefficients (low to high) of the m-th cyclotomic polynomial."""
    if m < 1:
        raise ValueError("modulus must be positive")
    if m == 1:
        return (-1, 1)
    num = (-1,) + (0,) * (m - 1) + (1,)
    den = (1,)
    for d in range(1, m):
        if m % d == 0:
            den = _poly_mul_int(den, cyclotomic_polynomial(d))
    quot, rem = _poly_divmod_int(num, den)
    assert rem == (0,), "cyclotomic division must be exact"
    return quot


@lru_cache(maxsize=None)
def _reduction_rows(m: int) -> dict[int, tuple[int, ...]]:
    """Reduced form of x^e modulo the m-th cyclotomic polynomial, e >= deg."""
    phi = cyclotomic_polynomial(m)
    deg = len(phi) - 1
    rows: dict[int, tuple[int, ...]] = {}
    current = tuple(-c for c in phi[:deg])
    rows[deg] = current
    for e in range(deg + 1, m):
        top = current[deg - 1]
        shifted = (0,) + current[: deg - 1]
        current = tuple(s + top * b for s, b in zip(shifted, rows[deg]))
        rows[e] = current
    return rows


def _coerce(value, modulus: int) -> "CycValue":
    if isinstance(value, CycValue):
        if value.modulus != modulus:
            raise ValueError(
                f"mixed moduli {value.modulus} and {modulus}; rescale first"
            )
        return value
    return CycValue.from_rational(modulus, Fraction(value))


@dataclass(frozen=True)
class CycValue:
    """Element of Q[x]/(x^m - 1), x a primitive m-th root of unity."""

    modulus: int
    coeffs: tuple[tuple[int, Fraction], ...]

    @classmethod
    def build(cls, modulus: int, mapping) -> "CycValue":
        acc: dict[int, Fraction] = {}
        for exp, c in mapping.items() if isinstance(mapping, dict) else mapping:
            c = Fraction(c)
            if c == 0:
                continue
            e = exp % modulus
            acc[e] = acc.get(e, Fraction(0)) + c
        cleaned = tuple(sorted((e, c) for e, c in acc.items() if c != 0))
        return cls(modulus=modulus, coeffs=cleaned)

    @classmethod
    def zero(cls, modulus: int) -> "CycValue":
        return cls(modulus, ())

    @classmethod
    def from_rational(cls, modulus: int, value) -> "CycValue":
        return cls.build(modulus, {0: Fraction(value)})

    @classmethod
    def root(cls, modulus: int, numerator: int = 1) -> "CycValue":
        """x^numerator, i.e. e^(2 pi i numerator / m)."""
        return cls.build(modulus, {numerator: Fraction(1)})

    @classmethod
    def from_phase(cls, modulus: int, phase) -> "CycValue":
        """e^(2 pi i phase) for a rational phase with denominator dividing m."""
        scaled = Fraction(phase) * modulus
        if scaled.denominator != 1:
            raise ValueError(f"phase {phase} is not an m-th root for m={modulus}")
        return cls.root(modulus, int(scaled))

    # -- ring operations -------------------------------------------------

    def __add__(self, other):
        other = _coerce(other, self.modulus)
        return CycValue.build(self.modulus, list(self.coeffs) + list(other.coeffs))

    __radd__ = __add__

    def __neg__(self):
        return CycValue(self.modulus, tuple((e, -c) for e, c in self.coeffs))

    def __sub__(self, other):
        return self + (-_coerce(other, self.modulus))

    def __rsub__(self, other):
        return _coerce(other, self.modulus) - self

    def __mul__(self, other):
        other = _coerce(other, self.modulus)
        acc: dict[int, Fraction] = {}
        for e1, c1 in self.coeffs:
            for e2, c2 in other.coeffs:
                e = (e1 + e2) % self.modulus
                acc[e] = acc.get(e, Fraction(0)) + c1 * c2
        return CycValue.build(self.modulus, acc)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.monomial_inverse() ** (-k)
        out = CycValue.from_rational(self.modulus, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- structure -------------------------------------------------------

    @property
    def is_zero_ring(self) -> bool:
        return not self.coeffs

    @property
    def is_monomial(self) -> bool:
        return len(self.coeffs) == 1

    def monomial_inverse(self) -> "CycValue":
        """Inverse of a single-term unit c * x^e."""
        if not self.is_monomial:
            raise ValueError("only single-term values are inverted exactly here")
        e, c = self.coeffs[0]
        return CycValue.build(self.modulus, {(-e) % self.modulus: 1 / c})

    def rescale(self, new_modulus: int) -> "CycValue":
        """Re-express in a finer root-of-unity lattice (m | new_m)."""
        if new_modulus % self.modulus:
            raise ValueError("new modulus must be a multiple of the old one")
        step = new_modulus // self.modulus
        return CycValue.build(new_modulus, {e * step: c for e, c in self.coeffs})

    # -- complex-number semantics ---------------------------------------

    def reduce(self) -> "CycValue":
        """Canonical representative modulo the cyclotomic polynomial.

        Two values picture the same complex number exactly when their
        reduced forms are identical.
        """
        phi = cyclotomic_polynomial(self.modulus)
        deg = len(phi) - 1
        if all(e < deg for e, _ in self.coeffs):
            return self
        rows = _reduction_rows(self.modulus)
        acc = [Fraction(0)] * deg
        for e, c in self.coeffs:
            if e < deg:
                acc[e] += c
            else:
                for j, b in enumerate(rows[e]):
                    if b:
                        acc[j] += c * b
        return CycValue.build(self.modulus, dict(enumerate(acc)))

    @property
    def is_zero_complex(self) -> bool:
        return not self.reduce().coeffs

    def eq_complex(self, other) -> bool:
        return (self - _coerce(other, self.modulus)).is_zero_complex

    def to_complex(self) -> complex:
        return sum(
            (float(c) * cexp(2j * pi * e / self.modulus) for e, c in self.coeffs),
            complex(0),
        )

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in self.coeffs:
            if e == 0:
                parts.append(str(c))
            else:
                head = "" if c == 1 else ("-" if c == -1 else f"{c}*")
                parts.append(f"{head}z{self.modulus}^{e}")
        return " + ".join(parts)
