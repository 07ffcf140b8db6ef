"""Two independent computations of M(r, k, g) = dim H^0(SU_X(r), L^k).

``m_via_factorization`` iterates the fusion ring (power of the handle
element).  ``m_via_gw`` sums twisted Gromov-Witten numbers

    < omega_I1, ..., omega_Ig, omega_I1', ..., omega_Ig' >_{0, -k(g-1)}

over all g-tuples of r-subsets of [r+k] containing 1.  Tuples are
independent, so they can be farmed out to a process pool; the reduction is
always done in tuple order.
"""

from __future__ import annotations

import itertools
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb
from typing import MutableMapping, Sequence

from .fusion import conformal_block_dim
from .quantum import GWQuery, gw_twisted
from .schubert import GrassmannianShape, InputError, Subset, dual_subset

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1


def _check_rkg(r: int, k: int, g: int) -> None:
    for name, v in (("r", r), ("k", k), ("g", g)):
        if not isinstance(v, int) or v < 1:
            raise InputError(f"{name} must be a positive integer, got {v!r}")


def m_via_factorization(r: int, k: int, g: int) -> int:
    _check_rkg(r, k, g)
    return conformal_block_dim(r, k, g)


def tuple_query(r: int, k: int, subsets: Sequence[Subset]) -> GWQuery:
    """The twisted query attached to a g-tuple of subsets containing 1."""
    shape = GrassmannianShape(r, k)
    g = len(subsets)
    duals = [dual_subset(shape, s) for s in subsets]
    return GWQuery(shape, (*subsets, *duals), d=0, D=-k * (g - 1))


def tuples(r: int, k: int, g: int) -> list[tuple[Subset, ...]]:
    """All g-tuples of r-subsets of [r+k] containing 1, lexicographically."""
    shape = GrassmannianShape(r, k)
    with_one = [s for s in shape.subsets() if s[0] == 1]
    return list(itertools.product(with_one, repeat=g))


def _evaluate(args: tuple[int, int, tuple[Subset, ...]]) -> int:
    r, k, subsets = args
    return gw_twisted(tuple_query(r, k, subsets))


def tuple_values(
    r: int,
    k: int,
    g: int,
    jobs: int = 1,
    cache: MutableMapping[str, int] | None = None,
) -> dict[tuple[Subset, ...], int]:
    """Twisted GW value of every tuple, in tuple order."""
    _check_rkg(r, k, g)
    all_tuples = tuples(r, k, g)
    values: dict[tuple[Subset, ...], int] = {}
    todo = []
    for t in all_tuples:
        key = tuple_query(r, k, t).canonical().key()
        if cache is not None and key in cache:
            values[t] = int(cache[key])
        else:
            todo.append(t)
    if jobs > 1 and len(todo) > 1:
        chunk = max(1, len(todo) // (4 * jobs))
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            computed = list(pool.map(_evaluate, [(r, k, t) for t in todo], chunksize=chunk))
    else:
        computed = [_evaluate((r, k, t)) for t in todo]
    for t, v in zip(todo, computed):
        values[t] = v
        if cache is not None:
            cache[tuple_query(r, k, t).canonical().key()] = v
    return {t: values[t] for t in all_tuples}


def m_via_gw(r: int, k: int, g: int, jobs: int = 1, cache: MutableMapping[str, int] | None = None) -> int:
    return sum(tuple_values(r, k, g, jobs=jobs, cache=cache).values())


@dataclass
class SDReport:
    r: int
    k: int
    g: int
    m_factorization: int
    m_gw: int
    per_tuple: dict[tuple[Subset, ...], int] | None = None
    seconds: dict[str, float] = field(default_factory=dict)

    @property
    def agree(self) -> bool:
        return self.m_factorization == self.m_gw

    @property
    def value(self) -> int | None:
        return self.m_factorization if self.agree else None

    def to_json(self) -> dict:
        out = {
            "schema_version": SCHEMA_VERSION,
            "r": self.r,
            "k": self.k,
            "g": self.g,
            "M": str(self.m_factorization) if self.agree else None,
            "m_factorization": str(self.m_factorization),
            "m_gw": str(self.m_gw),
            "agree": self.agree,
        }
        if self.per_tuple is not None:
            out["per_tuple"] = [
                {"subsets": [list(s) for s in t], "value": str(v)}
                for t, v in self.per_tuple.items()
            ]
        return out

    def csv_row(self) -> list:
        return [
            self.r,
            self.k,
            self.g,
            self.m_factorization,
            self.agree,
            round(sum(self.seconds.values()), 3),
        ]


CSV_HEADER = ["r", "k", "g", "M", "route_agreement", "seconds"]


def sd_check(
    r: int,
    k: int,
    g: int,
    per_tuple: bool = False,
    jobs: int = 1,
    cache: MutableMapping[str, int] | None = None,
) -> SDReport:
    """Run both routes and report; a disagreement is reported, not raised."""
    _check_rkg(r, k, g)
    t0 = time.perf_counter()
    m_fact = m_via_factorization(r, k, g)
    t1 = time.perf_counter()
    values = tuple_values(r, k, g, jobs=jobs, cache=cache)
    t2 = time.perf_counter()
    report = SDReport(
        r, k, g, m_fact, sum(values.values()),
        per_tuple=values if per_tuple else None,
        seconds={"factorization": t1 - t0, "gw": t2 - t1},
    )
    if not report.agree:
        log.warning("routes disagree for (r,k,g)=(%d,%d,%d): %d vs %d", r, k, g, m_fact, report.m_gw)
    return report


def rank_level_symmetry_check(r: int, k: int, g: int, method: str = "factorization") -> bool:
    """M(r,k,g) k^g == M(k,r,g) r^g."""
    compute = {"factorization": m_via_factorization, "gw": m_via_gw}[method]
    return compute(r, k, g) * k**g == compute(k, r, g) * r**g


def g1_count(r: int, k: int) -> int:
    """Number of level-k weights of SU(r), which is M(r, k, 1)."""
    return comb(r + k - 1, r - 1)


def summand_profile(g: int, jobs: int = 1) -> dict[int, int]:
    """For r = k = 2, the twisted GW summand as a function of the number l
    of entries equal to {1, 3}.  Raises if two tuples with the same l give
    different values."""
    values = tuple_values(2, 2, g, jobs=jobs)
    profile: dict[int, int] = {}
    for t, v in values.items():
        ell = sum(1 for s in t if s == (1, 3))
        if profile.setdefault(ell, v) != v:
            raise RuntimeError(f"summands with l={ell} differ: {profile[ell]} vs {v} at {t}")
    return dict(sorted(profile.items()))
