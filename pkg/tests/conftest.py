import random

import pytest


@pytest.fixture
def rng():
    return random.Random(52941)


def random_unimodular(rng, n, steps=12, bound=2):
    """Product of elementary row operations: unimodular with small entries."""
    m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        f = rng.choice([-bound, -1, 1, bound])
        for k in range(n):
            m[i][k] += f * m[j][k]
    return m


def congruent(gram, p):
    """p^T * gram * p over the integers."""
    n = len(gram)
    tmp = [[sum(p[k][i] * gram[k][l] for k in range(n)) for l in range(n)] for i in range(n)]
    return [[sum(tmp[i][k] * p[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
