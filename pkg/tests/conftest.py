import random
from pathlib import Path

import pytest

from bottfano import GeneralizedBottTower

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def make_tower(stage_dims, coeffs=None) -> GeneralizedBottTower:
    return GeneralizedBottTower(tuple(stage_dims), dict(coeffs or {}))


def hirzebruch(a: int) -> GeneralizedBottTower:
    return make_tower((1, 1), {(2, 1): (a,)})


def fano_4stage() -> GeneralizedBottTower:
    return make_tower(
        (3, 2, 2, 2),
        {
            (2, 1): (-1, -1),
            (3, 1): (0, 0),
            (3, 2): (0, -1),
            (4, 1): (0, 2),
            (4, 2): (0, 1),
            (4, 3): (0, 1),
        },
    )


def not_weak_fano_3stage() -> GeneralizedBottTower:
    return make_tower(
        (3, 3, 2),
        {(2, 1): (0, -1, -1), (3, 1): (-4, -2), (3, 2): (-2, -1)},
    )


def random_tower(rng: random.Random, max_stages=4, max_dim=3, coeff_bound=2):
    m = rng.randint(1, max_stages)
    dims = tuple(rng.randint(1, max_dim) for _ in range(m))
    coeffs = {
        (j, l): tuple(rng.randint(-coeff_bound, coeff_bound) for _ in range(dims[j - 1]))
        for j in range(2, m + 1)
        for l in range(1, j)
    }
    return make_tower(dims, coeffs)


@pytest.fixture
def rng():
    return random.Random(20260823)
