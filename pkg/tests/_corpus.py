"""Seeded input generators shared by the unit and acceptance tests."""

import random
from fractions import Fraction as F

import numpy as np

from multilinear_multipliers.fourier import GridFunction


def piecewise_constant(spec, seed, pieces=8, scale=16):
    """Dyadic-rational step function: exact block averages in floating point."""
    rng = np.random.default_rng(seed)
    per = spec.N // pieces
    vals = rng.integers(-scale, scale + 1, size=(pieces,) * spec.n) / 4.0
    for d in range(spec.n):
        vals = np.repeat(vals, per, axis=d)
    return GridFunction(spec, vals)


def extreme_examples(count, seed=3, max_ell=3):
    """(n, r, s) triples with every r_i in {0, s_i/n, s_i/n + 1/2}, exactly one top value, ell(r) <= max_ell."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(1, 2)
        m = rng.randint(1, 4)
        top = rng.randrange(m)
        k = rng.randint(0, min(max_ell, m - 1))
        ell = rng.sample([i for i in range(m) if i != top], k)
        r, s = [], []
        for i in range(m):
            if i == top:
                ri = F(rng.randint(2, 8), 4)
                si = n * (ri - F(1, 2))
            elif i in ell:
                ri = F(rng.randint(51, 99), 100)
                si = n * ri
            else:
                ri = rng.choice([F(0), F(1), F(3, 2)])
                si = n * ri if ri else F(n, 2) + F(rng.randint(0, 4), 4)
            r.append(ri)
            s.append(si)
        if any(si * 2 < n for si in s):
            continue
        out.append((n, r, s))
    return out
