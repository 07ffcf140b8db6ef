"""Invariant checks for every module, and the ``selftest`` driver.

Each ``check_*`` function returns True when the property holds on the
given range.  The test suite calls the same functions.
"""

from __future__ import annotations

import itertools
import random
import time
from typing import Callable, Iterable, Sequence

from . import duality, fusion, oracles, quantum, schubert
from .fusion import (
    FusionElement,
    RTildeElement,
    level_reps,
    su_dual,
    su_normalize,
)
from .quantum import GWQuery, QClass
from .schubert import CohClass, GrassmannianShape, codim, dual_subset, lambda_of_subset


def shapes_up_to(max_n: int) -> list[GrassmannianShape]:
    return [
        GrassmannianShape(r, n - r) for n in range(2, max_n + 1) for r in range(1, n)
    ]


def box_partitions(shape: GrassmannianShape) -> list[tuple[int, ...]]:
    return [
        tuple(reversed(c))
        for c in itertools.combinations_with_replacement(range(shape.k + 1), shape.r)
    ]


# -- schubert_core ----------------------------------------------------------


def check_bijection(shape: GrassmannianShape) -> bool:
    for s in shape.subsets():
        if schubert.subset_of_lambda(shape, lambda_of_subset(shape, s)) != s:
            return False
    for lam in box_partitions(shape):
        if lambda_of_subset(shape, schubert.subset_of_lambda(shape, lam)) != lam:
            return False
    return len(box_partitions(shape)) == len(shape.subsets())


def check_duality_codim(shape: GrassmannianShape) -> bool:
    return all(
        codim(shape, s) + codim(shape, dual_subset(shape, s)) == shape.dimension
        and dual_subset(shape, dual_subset(shape, s)) == s
        for s in shape.subsets()
    )


def check_pairing_permutation(shape: GrassmannianShape) -> bool:
    basis = shape.subsets()
    for a in basis:
        for b in basis:
            if codim(shape, a) + codim(shape, b) != shape.dimension:
                continue
            value = schubert.pairing(
                shape, CohClass.schubert(shape, a), CohClass.schubert(shape, b)
            )
            if value != int(b == dual_subset(shape, a)):
                return False
    return True


def check_poincare(shape: GrassmannianShape) -> bool:
    counts: dict[int, int] = {}
    for s in shape.subsets():
        counts[codim(shape, s)] = counts.get(codim(shape, s), 0) + 1
    return all(counts.get(c, 0) == counts.get(shape.dimension - c, 0) for c in counts)


def check_classical_ring(shape: GrassmannianShape) -> bool:
    """Commutativity, associativity, grading and unit on the full basis."""
    basis = [CohClass.schubert(shape, s) for s in shape.subsets()]
    one = CohClass.schubert(shape, shape.fundamental())
    prod = lambda a, b: schubert.classical_product(shape, a, b)  # noqa: E731
    for a in basis:
        if prod(a, one) != a:
            return False
    for a, b in itertools.product(basis, repeat=2):
        ab = prod(a, b)
        if ab != prod(b, a):
            return False
        (sa,), (sb,) = a, b
        if any(codim(shape, s) != codim(shape, sa) + codim(shape, sb) for s in ab):
            return False
    for a, b, c in itertools.product(basis, repeat=3):
        if prod(prod(a, b), c) != prod(a, prod(b, c)):
            return False
    return True


def check_lr_vs_pieri(shape: GrassmannianShape) -> bool:
    from .littlewood_richardson import lr_product

    parts = box_partitions(shape)
    return all(
        lr_product(a, b, shape.r) == oracles.pieri_lr_product(a, b, shape.r)
        for a in parts
        for b in parts
    )


# -- quantum_gw -------------------------------------------------------------


def _qbasis(shape: GrassmannianShape) -> list[QClass]:
    return [QClass.schubert(shape, s) for s in shape.subsets()]


def check_q0_truncation(shape: GrassmannianShape) -> bool:
    for a, b in itertools.product(shape.subsets(), repeat=2):
        qp = quantum.quantum_product(shape, QClass.schubert(shape, a), QClass.schubert(shape, b))
        cp = schubert.classical_product(
            shape, CohClass.schubert(shape, a), CohClass.schubert(shape, b)
        )
        if qp.q_zero() != cp:
            return False
    return True


def check_quantum_ring(shape: GrassmannianShape, samples: int | None = None, seed: int = 0) -> bool:
    """Commutativity, grading, nonnegativity and associativity.

    Associativity runs over all basis triples, or ``samples`` random ones.
    """
    basis = _qbasis(shape)
    prod = lambda a, b: quantum.quantum_product(shape, a, b)  # noqa: E731
    for a, b in itertools.product(basis, repeat=2):
        ab = prod(a, b)
        if ab != prod(b, a) or any(c < 0 for _, c in ab.items()):
            return False
        (ka,), (kb,) = a, b
        expect = codim(shape, ka[0]) + codim(shape, kb[0])
        if ab and ab.gradings() != {expect}:
            return False
    if samples is None:
        triples: Iterable = itertools.product(basis, repeat=3)
    else:
        rng = random.Random(seed)
        triples = [tuple(rng.choice(basis) for _ in range(3)) for _ in range(samples)]
    return all(prod(prod(a, b), c) == prod(a, prod(b, c)) for a, b, c in triples)


def check_quantum_pieri(shape: GrassmannianShape) -> bool:
    for p in range(1, shape.k + 1):
        special = schubert.subset_of_lambda(shape, (p,))
        for s in shape.subsets():
            lam = lambda_of_subset(shape, s)
            expected = {
                (schubert.subset_of_lambda(shape, mu), d): c
                for (mu, d), c in oracles.quantum_pieri(shape, p, lam).items()
            }
            if quantum.basis_qproduct(shape, special, s) != expected:
                return False
    return True


def check_giambelli(shape: GrassmannianShape) -> bool:
    return all(
        quantum.basis_qproduct(shape, a, b) == oracles.giambelli_qproduct(shape, a, b)
        for a, b in itertools.product(shape.subsets(), repeat=2)
    )


def check_shift_roundtrip(shape: GrassmannianShape, degrees: Iterable[int] = (0, 1, 2)) -> bool:
    for s in shape.subsets():
        for d in degrees:
            j, dj = quantum.shift(shape, s, d)
            if quantum.unshift(shape, j, dj) != (s, d):
                return False
            if quantum.shift(shape, *quantum.unshift(shape, s, d)) != (s, d):
                return False
    return True


def random_dim0_query(shape: GrassmannianShape, rng: random.Random, s_range=(2, 5), d_max: int = 3) -> GWQuery:
    """A random untwisted query whose expected dimension is 0."""
    basis = shape.subsets()
    while True:
        subs = tuple(rng.choice(basis) for _ in range(rng.randint(*s_range)))
        excess = sum(codim(shape, x) for x in subs) - shape.dimension
        if excess >= 0 and excess % shape.n == 0 and excess // shape.n <= d_max:
            return GWQuery(shape, subs, excess // shape.n, 0)


def check_fundamental_insertion(shape: GrassmannianShape, samples: int = 50, seed: int = 0) -> bool:
    rng = random.Random(seed)
    fundamental = shape.fundamental()
    for _ in range(samples):
        q = random_dim0_query(shape, rng)
        base = quantum.gw_number(shape, q.insertions, q.d)
        if quantum.gw_number(shape, [*q.insertions, fundamental], q.d) != base:
            return False
        twisted = GWQuery(shape, (*q.insertions, fundamental), q.d, q.D)
        if quantum.gw_twisted(twisted) != base:
            return False
    return True


def check_shift_invariance(shapes: Iterable[GrassmannianShape], samples: int = 100, seed: int = 0) -> bool:
    rng = random.Random(seed)
    shapes = list(shapes)
    for _ in range(samples):
        shape = rng.choice(shapes)
        q = random_dim0_query(shape, rng)
        j = rng.randrange(len(q.insertions))
        moved, d_new = quantum.shift(shape, q.insertions[j], q.d)
        subs = list(q.insertions)
        subs[j] = moved
        direct = quantum.gw_number(shape, q.insertions, q.d)
        shifted = quantum.gw_twisted(GWQuery(shape, tuple(subs), d_new, -1))
        if direct != shifted:
            return False
    return True


def check_gw_support(shape: GrassmannianShape, max_points: int = 3, max_d: int = 2) -> bool:
    """GW numbers are nonnegative and vanish off expected dimension 0."""
    for s in range(1, max_points + 1):
        for subs in itertools.combinations_with_replacement(shape.subsets(), s):
            for d in range(max_d + 1):
                v = quantum.gw_number(shape, subs, d)
                if v < 0 or (v and quantum.expected_dimension(shape, subs, d) != 0):
                    return False
    return True


# -- verlinde_fusion --------------------------------------------------------


def check_level_reps(r: int, k: int) -> bool:
    shape = GrassmannianShape(r, k)
    reps = level_reps(r, k)
    with_one = [s for s in shape.subsets() if s[0] == 1]
    images = [fusion.rep_of_subset(shape, s) for s in with_one]
    if sorted(images) != sorted(reps) or len(set(images)) != len(images):
        return False
    if len(reps) != duality.g1_count(r, k):
        return False
    for s in with_one:
        if fusion.subset_of_rep(shape, fusion.rep_of_subset(shape, s)) != s:
            return False
        dual_rep = su_normalize(lambda_of_subset(shape, dual_subset(shape, s)))
        if dual_rep != su_dual(fusion.rep_of_subset(shape, s)):
            return False
    return all(su_dual(su_dual(rep)) == rep for rep in reps)


def check_fusion_ring(r: int, k: int) -> bool:
    """Commutativity, associativity, unit and nonnegativity of fusion."""
    reps = [FusionElement.basis(r, k, rep) for rep in level_reps(r, k)]
    one = FusionElement.one(r, k)
    for a in reps:
        if a * one != a:
            return False
    for a, b in itertools.product(reps, repeat=2):
        ab = a * b
        if ab != b * a or any(c < 0 for _, c in ab.items()):
            return False
    return all((a * b) * c == a * (b * c) for a, b, c in itertools.product(reps, repeat=3))


def check_fusion_symmetry(r: int, k: int, samples: int = 30, seed: int = 0) -> bool:
    rng = random.Random(seed)
    reps = level_reps(r, k)
    for _ in range(samples):
        args = [rng.choice(reps) for _ in range(rng.choice((3, 4)))]
        target = fusion.fusion_coefficient(r, k, args)
        for perm in itertools.permutations(args):
            # exercise the unsorted path as well
            acc = fusion.fuse_all(r, k, perm[:-1])
            if acc[su_dual(perm[-1])] != target:
                return False
    return True


def check_vacuum(r: int, k: int, max_s: int = 3) -> bool:
    reps = level_reps(r, k)
    vac = fusion.trivial(r)
    for s in range(0, max_s + 1):
        for args in itertools.combinations_with_replacement(reps, s):
            if fusion.fusion_coefficient(r, k, (*args, vac)) != fusion.fusion_coefficient(r, k, args):
                return False
    two_point = all(
        fusion.fusion_coefficient(r, k, (mu, nu)) == int(nu == su_dual(mu))
        for mu in reps
        for nu in reps
    )
    one_point = all(fusion.fusion_coefficient(r, k, (mu,)) == int(mu == vac) for mu in reps)
    return two_point and one_point and fusion.fusion_coefficient(r, k, ()) == 1


def check_congruence(r: int, k: int, max_s: int = 3) -> bool:
    for s in range(1, max_s + 1):
        for args in itertools.combinations_with_replacement(level_reps(r, k), s):
            if sum(map(sum, args)) % r and fusion.fusion_coefficient(r, k, args):
                return False
    return True


def check_stabilization(r: int, max_s: int = 4, max_weight: int = 2) -> bool:
    """For k >= sum of first parts, fusion equals tensor-product invariants."""
    small = [rep for rep in level_reps(r, max_weight)]
    for s in range(1, max_s + 1):
        for args in itertools.combinations_with_replacement(small, s):
            k = max(1, sum(rep[0] for rep in args))
            if fusion.fusion_coefficient(r, k, args) != oracles.classical_invariant_dim(r, args):
                return False
    return True


def check_witten_homomorphism(shape: GrassmannianShape) -> bool:
    for a, b in itertools.product(shape.subsets(), repeat=2):
        qa, qb = QClass.schubert(shape, a), QClass.schubert(shape, b)
        lhs = fusion.witten_map(shape, quantum.quantum_product(shape, qa, qb)).normal_form()
        rhs = (fusion.witten_map(shape, qa) * fusion.witten_map(shape, qb)).normal_form()
        if lhs != rhs:
            return False
    return True


def check_t_operator(r: int, k: int) -> bool:
    n = r + k
    current = RTildeElement.basis(r, k, su_normalize((k,) + (0,) * (r - 1)), n)
    for rep in level_reps(r, k):
        for a in range(r * n):
            if (a - sum(rep)) % r:
                continue
            u = RTildeElement.basis(r, k, rep, a)
            t_rep, t_a = fusion.t_operator(r, k, rep, a)
            if u * current != RTildeElement.basis(r, k, t_rep, t_a):
                return False
            nf = fusion.orbit_normal_form(r, k, rep, a)
            if fusion.orbit_normal_form(r, k, *nf) != nf:
                return False
            lam = fusion.box_partition_of(r, k, *nf)
            if lam is None or lam[0] > k or lam[-1] < 0 or (sum(lam) - nf[1]) % (r * n):
                return False
            # every orbit member has the same normal form
            if fusion.orbit_normal_form(r, k, t_rep, t_a) != nf:
                return False
    return True


def check_handle_vs_literal(r: int, k: int, max_g: int = 3) -> bool:
    return all(
        fusion.conformal_block_dim(r, k, g) == oracles.conformal_block_dim_literal(r, k, g)
        for g in range(max_g + 1)
    )


def check_twisted_gw_is_fusion(shapes: Iterable[GrassmannianShape], samples: int = 50, seed: int = 0) -> bool:
    """Twisted GW numbers equal fusion coefficients of the associated weights."""
    rng = random.Random(seed)
    shapes = list(shapes)
    done = 0
    while done < samples:
        shape = rng.choice(shapes)
        subs = tuple(rng.choice(shape.subsets()) for _ in range(rng.randint(2, 6)))
        excess = sum(codim(shape, s) for s in subs) - shape.dimension
        if excess < 0 or excess % shape.r:
            continue
        q = GWQuery(shape, subs, 0, -(excess // shape.r))
        reps = [su_normalize(lambda_of_subset(shape, s)) for s in subs]
        if quantum.gw_twisted(q) != fusion.fusion_coefficient(shape.r, shape.k, reps):
            return False
        done += 1
    return True


# -- strange_duality --------------------------------------------------------


def check_routes(grid: Iterable[tuple[int, int, int]]) -> bool:
    return all(duality.sd_check(r, k, g).agree for r, k, g in grid)


def check_rank_level(grid: Iterable[tuple[int, int, int]]) -> bool:
    return all(duality.rank_level_symmetry_check(r, k, g) for r, k, g in grid)


def check_expected_dims(r: int, k: int, g: int) -> bool:
    return all(
        duality.tuple_query(r, k, t).expected_dimension == 0 for t in duality.tuples(r, k, g)
    )


def check_closed_forms(max_g_k1: int, max_g_k2: int) -> bool:
    ok = all(
        duality.m_via_factorization(r, 1, g) == duality.m_via_gw(r, 1, g) == r**g
        for r in (2, 3, 4)
        for g in range(1, max_g_k1 + 1)
    )
    return ok and all(
        duality.m_via_factorization(2, 2, g) == duality.m_via_gw(2, 2, g) == 2 ** (g - 1) * (2**g + 1)
        for g in range(1, max_g_k2 + 1)
    )


def check_g1(max_r: int, max_k: int) -> bool:
    return all(
        duality.m_via_factorization(r, k, 1) == duality.m_via_gw(r, k, 1) == duality.g1_count(r, k)
        for r in range(1, max_r + 1)
        for k in range(1, max_k + 1)
    )


# -- driver -----------------------------------------------------------------


def clear_caches() -> None:
    """Drop every memo table, so timings measure cold computations."""
    from . import littlewood_richardson

    for module in (littlewood_richardson, schubert, quantum, fusion, oracles):
        for obj in vars(module).values():
            if callable(getattr(obj, "cache_clear", None)):
                obj.cache_clear()


G24, G25, G36 = GrassmannianShape(2, 2), GrassmannianShape(2, 3), GrassmannianShape(3, 3)


def suites(level: str) -> list[tuple[str, Callable[[], bool]]]:
    full = level == "full"
    max_n_bij = 10 if full else 5
    max_n_pair = 8 if full else 5
    max_n_diag = 7 if full else 5
    ring_shapes = [G24, G25, G36] if full else [G24, G25]
    rk_small = [(r, k) for r in range(1, 4) for k in range(1, 4)]
    if not full:
        rk_small = [(r, k) for r, k in rk_small if r + k <= 5]
    grid_rk = [(1, 1), (2, 1), (3, 1), (4, 1), (2, 2), (2, 3), (3, 2)]
    max_g = 3 if full else 2
    grid = [(r, k, g) for r, k in grid_rk for g in range(1, max_g + 1)]

    return [
        ("schubert: subset/partition bijection",
         lambda: all(check_bijection(s) for s in shapes_up_to(max_n_bij))),
        ("schubert: duality and codimension",
         lambda: all(check_duality_codim(s) for s in shapes_up_to(max_n_bij))),
        ("schubert: pairing is the duality permutation",
         lambda: all(check_pairing_permutation(s) for s in shapes_up_to(max_n_pair))),
        ("schubert: Poincare symmetry",
         lambda: all(check_poincare(s) for s in shapes_up_to(max_n_bij))),
        ("schubert: classical ring axioms",
         lambda: all(check_classical_ring(s) for s in ring_shapes)),
        ("schubert: LR tableaux vs iterated Pieri",
         lambda: all(check_lr_vs_pieri(s) for s in shapes_up_to(7 if full else 5))),
        ("schubert: diagonal decomposition",
         lambda: all(schubert.diagonal_decomposition_check(s) for s in shapes_up_to(max_n_diag))),
        ("quantum: q^0 truncation is classical",
         lambda: all(check_q0_truncation(s) for s in ring_shapes)),
        ("quantum: ring axioms",
         lambda: check_quantum_ring(G24) and check_quantum_ring(G25)
         and (not full or check_quantum_ring(G36, samples=200))),
        ("quantum: quantum Pieri oracle",
         lambda: all(check_quantum_pieri(s) for s in ring_shapes)),
        ("quantum: quantum Giambelli oracle",
         lambda: all(check_giambelli(s) for s in ring_shapes)),
        ("quantum: shift/unshift round trips",
         lambda: all(check_shift_roundtrip(s) for s in shapes_up_to(6))),
        ("quantum: fundamental class insertion",
         lambda: all(check_fundamental_insertion(s, samples=50 if full else 15) for s in ring_shapes)),
        ("quantum: shift invariance",
         lambda: check_shift_invariance([G24, G25], samples=100 if full else 30)),
        ("quantum: GW support and sign",
         lambda: check_gw_support(G24) and check_gw_support(GrassmannianShape(1, 2))),
        ("fusion: level reps and duals",
         lambda: all(check_level_reps(r, k) for r, k in rk_small)),
        ("fusion: ring axioms",
         lambda: all(check_fusion_ring(r, k) for r, k in rk_small)),
        ("fusion: permutation symmetry",
         lambda: all(check_fusion_symmetry(r, k, samples=20 if full else 5) for r, k in rk_small)),
        ("fusion: vacuum insertion and base cases",
         lambda: all(check_vacuum(r, k) for r, k in rk_small)),
        ("fusion: congruence vanishing",
         lambda: all(check_congruence(r, k) for r, k in rk_small)),
        ("fusion: high-level stabilization",
         lambda: all(check_stabilization(r, max_s=4 if full else 3) for r in (1, 2, 3))),
        ("fusion: Witten map multiplicative",
         lambda: all(check_witten_homomorphism(s) for s in ring_shapes)),
        ("fusion: T operator and orbit normal forms",
         lambda: all(check_t_operator(r, k) for r, k in rk_small)),
        ("fusion: handle power vs factorization sum",
         lambda: all(check_handle_vs_literal(r, k, max_g) for r, k in rk_small)),
        ("fusion: twisted GW equals fusion coefficient",
         lambda: check_twisted_gw_is_fusion([G24, G25, G36] if full else [G24, G25], samples=50 if full else 15)),
        ("duality: closed-form values",
         lambda: check_closed_forms(4 if full else 2, 5 if full else 2)),
        ("duality: route equality",
         lambda: check_routes(grid)),
        ("duality: rank-level symmetry",
         lambda: check_rank_level([(r, k, g) for r, k in ((2, 2), (2, 3), (3, 2)) for g in range(1, max_g + 1)])),
        ("duality: g=1 count",
         lambda: check_g1(4 if full else 3, 4 if full else 2)),
        ("duality: expected dimension of every summand",
         lambda: all(check_expected_dims(r, k, g) for r, k, g in grid)),
        ("quantum: zero route disagreements",
         lambda: quantum.route_stats.disagreements == 0),
    ]


def run(
    level: str = "quick",
    out: Callable[[str], None] = print,
    extra: Sequence[tuple[str, Callable[[], bool]]] = (),
) -> bool:
    all_ok = True
    start = time.perf_counter()
    for name, fn in [*suites(level), *extra]:
        t0 = time.perf_counter()
        try:
            ok = bool(fn())
            detail = ""
        except Exception as exc:  # report and keep going
            ok = False
            detail = f" ({type(exc).__name__}: {exc})"
        all_ok &= ok
        out(f"{'PASS' if ok else 'FAIL'}  {name}  [{time.perf_counter() - t0:.2f}s]{detail}")
    out(f"{'OK' if all_ok else 'FAILED'}  selftest {level} in {time.perf_counter() - start:.1f}s")
    return all_ok
