"""Shared fixtures: brute-force oracles and small complexes."""
from itertools import combinations
from math import gcd

import numpy as np
import pytest
from sympy import Matrix

from torsion_growth.core.config import EngineConfig
from torsion_growth.core.group_complex import cyclic_presentation, lens_complex


def dense_snf(matrix):
    """Textbook Smith form by repeated smallest-pivot reduction; nonzero divisors only."""
    a = [list(row) for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    diagonal = []
    t = 0
    while t < min(rows, cols):
        entries = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            for i in range(t + 1, rows):
                q = a[i][t] // a[t][t]
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
            for j in range(t + 1, cols):
                q = a[t][j] // a[t][t]
                if q:
                    for row in a:
                        row[j] -= q * row[t]
            rest = [(abs(a[i][t]), i, t) for i in range(t + 1, rows) if a[i][t]]
            rest += [(abs(a[t][j]), t, j) for j in range(t + 1, cols) if a[t][j]]
            if rest:
                _, i, j = min(rest)
                a[t], a[i] = a[i], a[t]
                for row in a:
                    row[t], row[j] = row[j], row[t]
                continue
            bad = next((i for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % a[t][t]), None)
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad])]
        diagonal.append(abs(a[t][t]))
        t += 1
    return tuple(diagonal)


def determinantal_divisors(matrix):
    """gcd of all k x k minors for k = 1, 2, ... while nonzero."""
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    out = []
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rs in combinations(range(rows), k):
            for cs in combinations(range(cols), k):
                g = gcd(g, int(Matrix([[matrix[r][c] for c in cs] for r in rs]).det()))
        if g == 0:
            break
        out.append(g)
    return out


@pytest.fixture(scope="session")
def snf_oracle():
    return dense_snf


@pytest.fixture(scope="session")
def minor_gcds():
    return determinantal_divisors


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def config():
    return EngineConfig()


@pytest.fixture
def lens_5_1():
    return lens_complex(5, 1)


@pytest.fixture
def cyclic_5():
    return cyclic_presentation(5)


def acyclic_shape(rng, max_length=5, max_rank=4):
    """Dimensions k_0, k_0 + k_1, ..., k_(L-2) of a split exact complex of length L."""
    length = int(rng.integers(2, max_length + 1))
    ks = [int(x) for x in rng.integers(0, max_rank + 1, size=length - 1)]
    return [ks[0]] + [ks[i - 1] + ks[i] for i in range(1, length - 1)] + [ks[-1]]


@pytest.fixture(scope="session")
def shape_factory():
    return acyclic_shape
