"""Shared test plumbing: cached systems and golden-file access."""

import json
from functools import lru_cache
from pathlib import Path

from twistcode import make_system

DATA = Path(__file__).parent / "data"


def prime_power(q):
    for p in (2, 3, 5, 7):
        m, t = q, 0
        while m % p == 0:
            m //= p
            t += 1
        if m == 1:
            return p, t
    raise ValueError(f"{q} is not a small prime power")


@lru_cache(maxsize=None)
def system(p, t, j, n):
    return make_system(p, t, j, n)


def golden(name):
    with open(DATA / f"{name}.json") as fh:
        return json.load(fh)
