"""Root configurations: known roots with known multiplicities."""

from __future__ import annotations

from dataclasses import dataclass

from .compensated import ComplexDD
from .errors import DegenerateSystemError
from .polynomial import MonicPolynomial, is_finite

#: Two roots closer than this (relative to the largest root magnitude) are
#: rejected; near-coincident roots should be merged into one root of higher
#: multiplicity by the caller.
DISTINCTNESS_THRESHOLD = 1e-12


@dataclass(frozen=True)
class RootSystem:
    """Distinct roots x_1..x_m with multiplicities summing to the degree.

    Invariants enforced at construction: at least one root, equal-length
    lists, positive integer multiplicities, finite roots, and pairwise
    distances above ``DISTINCTNESS_THRESHOLD * max(1, max|x_i|)``.
    """

    roots: tuple[complex, ...]
    multiplicities: tuple[int, ...]

    def __post_init__(self):
        roots = tuple(complex(r) for r in self.roots)
        mults = tuple(int(a) for a in self.multiplicities)
        if len(roots) < 1:
            raise ValueError("a root system needs at least one root")
        if len(roots) != len(mults):
            raise ValueError(
                f"{len(roots)} roots but {len(mults)} multiplicities"
            )
        for r in roots:
            if not is_finite(r):
                raise ValueError(f"root is not finite: {r!r}")
        for a in mults:
            if a < 1:
                raise ValueError(f"multiplicities must be positive, got {a}")
        scale = max(1.0, max(abs(r) for r in roots))
        limit = DISTINCTNESS_THRESHOLD * scale
        for i in range(len(roots)):
            for j in range(i):
                if abs(roots[i] - roots[j]) <= limit:
                    raise ValueError(
                        f"roots {j} and {i} are closer than {limit:.3e}; "
                        f"merge them into one root of higher multiplicity"
                    )
        object.__setattr__(self, "roots", roots)
        object.__setattr__(self, "multiplicities", mults)

    @property
    def m(self) -> int:
        """Number of distinct roots."""
        return len(self.roots)

    @property
    def degree(self) -> int:
        """Degree of the associated polynomial (sum of multiplicities)."""
        return sum(self.multiplicities)


def poly_from_roots(rs: RootSystem) -> MonicPolynomial:
    """Expand prod (x - x_i)^alpha_i into a monic coefficient list.

    Linear factors are multiplied in ascending index order (deterministic
    coefficient-level output; permutation invariance holds only to rounding).
    The convolution is accumulated in double-word arithmetic and rounded to
    binary64 once at the end, so the stored coefficients are as accurate as
    the representation allows.
    """
    coeffs = [ComplexDD(1.0)]
    for root, mult in zip(rs.roots, rs.multiplicities):
        neg = -complex(root)
        for _ in range(mult):
            nxt = [ComplexDD(0.0) for _ in range(len(coeffs) + 1)]
            nxt[0] = coeffs[0]
            for k in range(1, len(coeffs)):
                nxt[k] = coeffs[k].add(coeffs[k - 1].mul_complex(neg))
            nxt[len(coeffs)] = coeffs[-1].mul_complex(neg)
            coeffs = nxt
    low = [c.to_complex() for c in coeffs[1:]]
    for k, c in enumerate(low, start=1):
        if not is_finite(c):
            raise ValueError(f"expanded coefficient a_{k} overflowed")
    return MonicPolynomial(tuple(low))


def separation(rs: RootSystem) -> float:
    """Minimum pairwise distance between the distinct roots.

    Undefined for a single root (the minimum runs over pairs); raises
    DegenerateSystemError when m == 1.
    """
    if rs.m < 2:
        raise DegenerateSystemError(
            "separation needs at least two distinct roots"
        )
    return min(
        abs(rs.roots[i] - rs.roots[j])
        for i in range(rs.m)
        for j in range(i)
    )
