import random

import pytest

from curvelab.algebra import BiPoly, TruncSeries
from curvelab.parametric import Param


def random_poly(rng: random.Random, max_degree: int, height: int, through_origin=True) -> BiPoly:
    """Random nonzero sparse polynomial; vanishing at the origin by default."""
    while True:
        terms = {}
        for i in range(max_degree + 1):
            for j in range(max_degree + 1 - i):
                if through_origin and i == j == 0:
                    continue
                if rng.random() < 0.45:
                    c = rng.randint(-height, height)
                    if c:
                        terms[(i, j)] = c
        p = BiPoly(terms)
        if not p.is_zero:
            return p


def random_unit(rng: random.Random, height: int = 5) -> BiPoly:
    """Random polynomial not vanishing at the origin."""
    u = BiPoly.constant(rng.choice([1, -1, 2, -2, 3, -3]))
    for i in range(3):
        for j in range(3 - i):
            if i == j == 0:
                continue
            if rng.random() < 0.4:
                u = u + BiPoly({(i, j): rng.randint(-height, height)})
    return u


def random_linear_change(rng: random.Random, height: int = 5) -> tuple[BiPoly, BiPoly]:
    """Random invertible linear substitution."""
    while True:
        a, b, c, d = (rng.randint(-height, height) for _ in range(4))
        if a * d - b * c:
            return BiPoly({(1, 0): a, (0, 1): b}), BiPoly({(1, 0): c, (0, 1): d})


def random_polynomial_change(rng: random.Random, degree: int = 3, height: int = 5):
    """Random polynomial coordinate change with invertible linear part."""
    phi_x, phi_y = random_linear_change(rng, height)
    for i in range(degree + 1):
        for j in range(degree + 1 - i):
            if i + j < 2:
                continue
            if rng.random() < 0.35:
                phi_x = phi_x + BiPoly({(i, j): rng.randint(-height, height)})
            if rng.random() < 0.35:
                phi_y = phi_y + BiPoly({(i, j): rng.randint(-height, height)})
    return phi_x, phi_y


def random_immersion(rng: random.Random, max_degree: int = 8, height: int = 10) -> Param:
    """Random immersed probe: order one in at least one component."""
    while True:
        xc = {k: rng.randint(-height, height) for k in range(1, max_degree + 1) if rng.random() < 0.4}
        yc = {k: rng.randint(-height, height) for k in range(1, max_degree + 1) if rng.random() < 0.4}
        xc = {k: c for k, c in xc.items() if c}
        yc = {k: c for k, c in yc.items() if c}
        if xc.get(1) or yc.get(1):
            return Param(TruncSeries(xc), TruncSeries(yc))


def random_exact_series(rng: random.Random, max_degree: int = 6, height: int = 6) -> TruncSeries:
    while True:
        coeffs = {k: rng.randint(-height, height) for k in range(1, max_degree + 1) if rng.random() < 0.5}
        s = TruncSeries(coeffs)
        if not s.is_exactly_zero:
            return s


@pytest.fixture
def rng():
    return random.Random(20260809)
