"""Cube-free set search, constructions and claim verification."""

import json

from . import _core
from ._core import CapExceeded

__all__ = ["CapExceeded", "check", "claims", "construct", "incidence", "incidence_prime_power", "max_size", "search", "verify"]


def check(ambient, n, pattern, d, elements, include_zero=False):
    """Freeness report for `elements`; `report["free"]` is the verdict."""
    return json.loads(_core.check(ambient, n, pattern, d, list(elements), include_zero))


def search(ambient, n, pattern, d, *, include_zero=False, method="auto", cap=None, force=False,
           workers=1, time_limit_ms=None, cross_check=False):
    """Exact maximum with a witness, as a search-result dict."""
    return json.loads(_core.max(ambient, n, pattern, d, include_zero, method, cap, force, workers,
                                time_limit_ms, cross_check))


def max_size(ambient, n, pattern, d, **kwargs):
    return search(ambient, n, pattern, d, **kwargs)["max"]


def verify(claim, ranges=None, tuples=None, *, workers=1, brute_cap=22, cap=30):
    """Verdicts for every parameter point plus a summary."""
    ranges = {k: str(v) for k, v in (ranges or {}).items()}
    return json.loads(_core.verify(claim, ranges, tuples, workers, brute_cap, cap))


def construct(name, *, n=None, d=None, p=None, l=None, upto=None, ambient=None):
    return json.loads(_core.construct(name, n, d, p, l, upto, ambient))


def claims():
    return list(_core.claims())


def incidence(n, d, multiplicity=None, set_size=None):
    """Double-counting report for the family {x, 2x, ..., (d-1)x} over Z_n."""
    m = d - 1 if multiplicity is None else multiplicity
    k = d - 1 if set_size is None else set_size
    return json.loads(_core.incidence(n, d, m, k))


def incidence_prime_power(p, l, d, a):
    return json.loads(_core.incidence_prime_power(p, l, d, a))
