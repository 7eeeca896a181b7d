"""Monic complex polynomials and their compensated evaluation."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .compensated import ComplexDD
from .errors import NonFiniteError


def is_finite(z: complex) -> bool:
    """True when both parts of z are finite (no inf, no nan)."""
    return math.isfinite(z.real) and math.isfinite(z.imag)


def require_finite(z: complex, what: str) -> complex:
    if not is_finite(z):
        raise NonFiniteError(f"{what} is not finite: {z!r}")
    return z


@dataclass(frozen=True)
class MonicPolynomial:
    """A monic polynomial  x^n + a_1 x^(n-1) + ... + a_n.

    Only the trailing coefficients a_1..a_n are stored; the leading
    coefficient is implicitly 1.  The degree equals the number of stored
    coefficients and must be at least 1.
    """

    low_coefficients: tuple[complex, ...]

    def __post_init__(self):
        coeffs = tuple(complex(c) for c in self.low_coefficients)
        if len(coeffs) < 1:
            raise ValueError("a monic polynomial needs degree >= 1")
        for k, c in enumerate(coeffs, start=1):
            if not is_finite(c):
                raise ValueError(f"coefficient a_{k} is not finite: {c!r}")
        object.__setattr__(self, "low_coefficients", coeffs)

    @property
    def degree(self) -> int:
        return len(self.low_coefficients)


def eval_with_derivative(poly: MonicPolynomial, z: complex) -> tuple[complex, complex]:
    """Evaluate a monic polynomial and its first derivative at z.

    A single synthetic-division (Horner) pass produces both values.  The
    accumulators are double-word compensated, so the result is accurate to
    roughly eps^2 times the condition sum; this keeps residuals meaningful
    close to multiple roots, where plain binary64 Horner returns pure noise.

    Parameters
    ----------
    poly : MonicPolynomial
    z : complex
        Evaluation point; must be finite.

    Returns
    -------
    (value, derivative) : tuple of complex

    Raises
    ------
    NonFiniteError
        If z is not finite or the evaluation overflows.
    """
    zc = complex(z)
    require_finite(zc, "evaluation point")
    value = ComplexDD(1.0)
    deriv = ComplexDD(0.0)
    for a in poly.low_coefficients:
        deriv = deriv.mul_complex(zc).add(value)
        value = value.mul_complex(zc).add_complex(a)
    v = value.to_complex()
    d = deriv.to_complex()
    if not (is_finite(v) and is_finite(d)):
        raise NonFiniteError(
            f"polynomial evaluation overflowed at z={zc!r} (degree {poly.degree})"
        )
    return v, d


def integer_power(base: complex, exponent: int) -> complex:
    """base**exponent by binary exponentiation, for exponent >= 0.

    Repeated-multiplication semantics: exponent 0 returns 1 even for
    base 0 (empty product).
    """
    if exponent < 0:
        raise ValueError("exponent must be a nonnegative integer")
    result = complex(1.0)
    b = complex(base)
    e = int(exponent)
    while e:
        if e & 1:
            result *= b
        b *= b
        e >>= 1
        if e and not is_finite(b):
            raise NonFiniteError(f"integer_power overflowed: base={base!r}")
    require_finite(result, "integer_power result")
    return result
