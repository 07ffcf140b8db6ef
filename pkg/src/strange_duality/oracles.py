"""Independent cross-check implementations.

Nothing here is used by the main computation paths.  Each function
recomputes a quantity by a different method so the self-test and the test
suite can compare:

* classical products via Jacobi-Trudi and iterated Pieri (no LR tableaux);
* quantum products via the quantum Pieri rule and quantum Giambelli
  (no rim hooks);
* conformal block dimensions via the literal genus recursion;
* SU(r) invariant dimensions via classical tensor products;
* SU(2) fusion via the explicit level-k Clebsch-Gordan rule.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, Sequence

from .fusion import fusion_coefficient, level_reps, su_dual
from .littlewood_richardson import lr_product, trim
from .schubert import GrassmannianShape, Subset, lambda_of_subset, subset_of_lambda

Partition = tuple[int, ...]


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def horizontal_strips(lam: Partition, p: int, max_rows: int, max_cols: int | None = None) -> list[Partition]:
    """Partitions mu / lam a horizontal strip of size p (Pieri rule)."""
    lam = tuple(lam) + (0,) * (max_rows - len(lam))
    out = []

    def rec(i: int, remaining: int, acc: list[int]) -> None:
        if i == max_rows:
            if remaining == 0:
                out.append(tuple(acc))
            return
        upper = lam[i - 1] if i else lam[0] + remaining
        if max_cols is not None:
            upper = min(upper, max_cols)
        for m in range(lam[i], min(upper, lam[i] + remaining) + 1):
            rec(i + 1, remaining - (m - lam[i]), acc + [m])

    rec(0, p, [])
    return out


def pieri_lr_product(lam: Sequence[int], mu: Sequence[int], max_rows: int) -> dict[Partition, int]:
    """s_lam * s_mu in max_rows variables via Jacobi-Trudi for s_mu."""
    lam, mu = trim(lam), trim(mu)
    if len(lam) > max_rows:
        return {}
    ell = len(mu)
    out: dict[Partition, int] = {}
    for perm in itertools.permutations(range(ell)):
        degrees = [mu[i] - i + perm[i] for i in range(ell)]
        if any(d < 0 for d in degrees):
            continue
        current = {lam: 1}
        for p in degrees:
            nxt: dict = {}
            for shape, c in current.items():
                for new in horizontal_strips(trim(shape), p, max_rows):
                    nxt[new] = nxt.get(new, 0) + c
            current = nxt
        sign = _perm_sign(perm)
        for shape, c in current.items():
            key = trim(shape)
            out[key] = out.get(key, 0) + sign * c
    return {key: c for key, c in out.items() if c}


def quantum_pieri(shape: GrassmannianShape, p: int, lam: Sequence[int]) -> dict[tuple[Partition, int], int]:
    """sigma_p * sigma_lam in QH*(Gr(r, n)) by the quantum Pieri rule.

    Keys are ``(partition, q_degree)``.
    """
    r, k, n = shape.r, shape.k, shape.n
    lam = tuple(lam) + (0,) * (r - len(lam))
    if p < 0 or p > k:
        return {}
    out: dict = {}
    for mu in horizontal_strips(trim(lam), p, r, max_cols=k):
        out[(mu, 0)] = 1
    size = sum(lam) + p - n
    if size >= 0:
        ranges = []
        for i in range(r):
            lo = lam[i + 1] - 1 if i + 1 < r else 0
            lo = max(lo, 0)
            hi = lam[i] - 1
            ranges.append(range(lo, hi + 1))
        for nu in itertools.product(*ranges):
            if sum(nu) == size:
                out[(tuple(nu), 1)] = out.get((tuple(nu), 1), 0) + 1
    return out


def giambelli_qproduct(shape: GrassmannianShape, a: Subset, b: Subset) -> dict[tuple[Subset, int], int]:
    """omega_a * omega_b via quantum Giambelli for omega_b and quantum Pieri."""
    lam = lambda_of_subset(shape, a)
    mu = trim(lambda_of_subset(shape, b))
    ell = len(mu)
    out: dict = {}
    for perm in itertools.permutations(range(ell)):
        degrees = [mu[i] - i + perm[i] for i in range(ell)]
        if any(d < 0 or d > shape.k for d in degrees):
            continue
        current = {(lam, 0): 1}
        for p in degrees:
            nxt: dict = {}
            for (part, d), c in current.items():
                for (new, dq), c2 in quantum_pieri(shape, p, part).items():
                    key = (new, d + dq)
                    nxt[key] = nxt.get(key, 0) + c * c2
            current = nxt
        sign = _perm_sign(perm)
        for (part, d), c in current.items():
            key = (subset_of_lambda(shape, part), d)
            out[key] = out.get(key, 0) + sign * c
    return {key: c for key, c in sorted(out.items()) if c}


def giambelli_multiply(shape: GrassmannianShape, subsets: Sequence[Subset]) -> dict[tuple[Subset, int], int]:
    """Iterated oracle product of Schubert classes."""
    current = {(shape.fundamental(), 0): 1}
    for s in subsets:
        nxt: dict = {}
        for (part, d), c in current.items():
            for (new, dq), c2 in giambelli_qproduct(shape, part, s).items():
                key = (new, d + dq)
                nxt[key] = nxt.get(key, 0) + c * c2
        current = {key: c for key, c in nxt.items() if c}
    return current


def conformal_block_dim_literal(r: int, k: int, g: int, reps: Sequence[Sequence[int]] = ()) -> int:
    """N_g(reps) = sum_nu N_{g-1}(reps, nu, nu^*), unrolled down to genus 0."""
    reps = tuple(tuple(rep) for rep in reps)
    if g == 0:
        return fusion_coefficient(r, k, reps)
    return sum(
        conformal_block_dim_literal(r, k, g - 1, reps + (nu, su_dual(nu)))
        for nu in level_reps(r, k)
    )


def classical_invariant_dim(r: int, reps: Iterable[Sequence[int]]) -> int:
    """Dimension of SU(r)-invariants in a tensor product of irreducibles."""
    current: dict[Partition, int] = {(): 1}
    for rep in reps:
        nxt: dict = {}
        for part, c in current.items():
            for new, c2 in lr_product(part, trim(rep), max_rows=r).items():
                nxt[new] = nxt.get(new, 0) + c * c2
        current = nxt
    return sum(
        c for part, c in current.items()
        if not part or (len(part) == r and len(set(part)) == 1)
    )


def su2_fusion(k: int, a: int, b: int, c: int) -> int:
    """N_{ab}^c for SU(2) at level k, weights given as Dynkin labels."""
    if (a + b + c) % 2:
        return 0
    return int(abs(a - b) <= c <= min(a + b, 2 * k - a - b))


@lru_cache(maxsize=None)
def pgl2_three_point_count(p: int, targets: tuple[int, int, int]) -> int:
    """Count degree-1 maps f: P^1 -> P^1 over F_p with f(0), f(1), f(inf)
    equal to the given points (encoded 0..p-1 and p for infinity).

    Brute force over all invertible 2x2 matrices modulo scalars.
    """
    def image(m, x):
        a, b, c, d = m
        if x == p:
            num, den = a, c
        else:
            num, den = (a * x + b) % p, (c * x + d) % p
        if den % p == 0:
            return p
        return num * pow(den, -1, p) % p

    seen = set()
    count = 0
    for m in itertools.product(range(p), repeat=4):
        a, b, c, d = m
        if (a * d - b * c) % p == 0:
            continue
        # normalize by the first nonzero entry
        lead = next(v for v in m if v)
        inv = pow(lead, -1, p)
        norm = tuple(v * inv % p for v in m)
        if norm in seen:
            continue
        seen.add(norm)
        if (image(norm, 0), image(norm, 1), image(norm, p)) == targets:
            count += 1
    return count
