import numpy as np
import pytest

from multiroots import MonicPolynomial, RootSystem, SolveConfig, poly_from_roots

# The showcase problem used throughout: a double, a simple and a triple
# root of a degree-6 polynomial with exactly representable coefficients.
DEMO_ROOTS = (complex(-2.0), complex(1.0), complex(3.0))
DEMO_MULTS = (2, 1, 3)
DEMO_INITIAL = (complex(-3.0), complex(0.1), complex(4.0))

# k = 1 iterate of the demo problem (published reference values).
DEMO_K1_ROW = (
    -1.98938060918119354,
    0.995064651338749428,
    3.02604710332169412,
)


@pytest.fixture
def demo_system() -> RootSystem:
    return RootSystem(DEMO_ROOTS, DEMO_MULTS)


@pytest.fixture
def demo_poly(demo_system) -> MonicPolynomial:
    return poly_from_roots(demo_system)


@pytest.fixture
def demo_config() -> SolveConfig:
    return SolveConfig(max_iterations=20, step_tolerance=1e-15,
                       residual_tolerance=1e-26)


def gaussian_integer_system(rng: np.random.Generator, m_max=5, alpha_max=3,
                            box=3) -> RootSystem:
    """Random roots on the Gaussian-integer lattice (exactly representable
    coefficients, pairwise separation >= 1 by construction)."""
    m = int(rng.integers(1, m_max + 1))
    points = set()
    while len(points) < m:
        points.add((int(rng.integers(-box, box + 1)),
                    int(rng.integers(-box, box + 1))))
    roots = tuple(complex(a, b) for a, b in sorted(points))
    mults = tuple(int(rng.integers(1, alpha_max + 1)) for _ in range(m))
    return RootSystem(roots, mults)


def continuous_system(rng: np.random.Generator, m_max=5, alpha_max=3,
                      box=1.75, min_separation=1.0) -> RootSystem:
    """Random roots drawn from a continuous box with a separation floor."""
    while True:
        m = int(rng.integers(1, m_max + 1))
        pts = rng.uniform(-box, box, size=(m, 2))
        roots = tuple(complex(p[0], p[1]) for p in pts)
        if all(abs(roots[i] - roots[j]) >= min_separation
               for i in range(m) for j in range(i)):
            mults = tuple(int(rng.integers(1, alpha_max + 1)) for _ in range(m))
            return RootSystem(roots, mults)


def perturbed(rng: np.random.Generator, roots, radius: float):
    """Each root shifted by a complex offset of magnitude below `radius`."""
    out = []
    for r in roots:
        re, im = rng.uniform(-radius / np.sqrt(2), radius / np.sqrt(2), 2)
        out.append(r + complex(re, im))
    return tuple(out)
