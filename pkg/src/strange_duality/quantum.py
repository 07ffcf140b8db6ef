"""Small quantum cohomology of Gr(r, n) and Gromov-Witten numbers.

Quantum products are computed by the rim-hook rule: expand classically in
Schur polynomials of r variables, then strip n-rim hooks from every
partition that sticks out of the r x k box.  In beta-numbers
(``beta_a = nu_a + r - a``) removing a rim hook subtracts n from one entry;
each removal costs one power of q and the sign ``(-1)^(r - height)``.

Twisted invariants ``<...>_{d,D}`` with ``D <= 0`` are always evaluated two
ways (by unshifting the first insertion back to ``D = 0``, and by appending
``-D`` copies of the class of ``K = {1, k+2, ..., n}``) and the two results
must agree.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .littlewood_richardson import lr_product
from .schubert import (
    CohClass,
    Combination,
    GrassmannianShape,
    InputError,
    Subset,
    bilinear,
    check_subset,
    codim,
    dual_subset,
    lambda_of_subset,
    subset_of_lambda,
)


class RouteDisagreement(RuntimeError):
    """The two evaluations of a twisted Gromov-Witten number differ."""


class QClass(Combination):
    """A class in QH*(Gr(r, n)): combination of ``(subset, q_degree)`` keys."""

    __slots__ = ()

    def _check_key(self, key):
        subset, d = key
        d = int(d)
        if d < 0:
            raise InputError(f"negative q-degree {d}")
        return (check_subset(self.shape, subset), d)

    @classmethod
    def schubert(cls, shape: GrassmannianShape, subset: Iterable[int], d: int = 0) -> "QClass":
        return cls(shape, {(tuple(subset), d): 1})

    @classmethod
    def from_classical(cls, c: CohClass) -> "QClass":
        return cls(c.shape, {(s, 0): v for s, v in c.items()})

    def q_zero(self) -> CohClass:
        """The q^0 part as a classical class."""
        return CohClass(self.shape, {s: c for (s, d), c in self.items() if d == 0})

    def at_q_one(self) -> CohClass:
        """Specialize q = 1."""
        out: dict = {}
        for (s, _), c in self.items():
            out[s] = out.get(s, 0) + c
        return CohClass(self.shape, out)

    def gradings(self) -> set[int]:
        """The set of values codim + d*n over all terms."""
        return {codim(self.shape, s) + d * self.shape.n for (s, d) in self}

    def to_json(self) -> dict:
        return {
            "shape": [self.shape.r, self.shape.n],
            "terms": [
                {"subset": list(s), "q": d, "coeff": str(c)} for (s, d), c in self.items()
            ],
        }

    @classmethod
    def from_json(cls, data) -> "QClass":
        import json

        if isinstance(data, str):
            data = json.loads(data)
        shape = GrassmannianShape.from_rn(*data["shape"])
        terms: dict = {}
        for term in data["terms"]:
            key = (tuple(term["subset"]), int(term["q"]))
            terms[key] = terms.get(key, 0) + int(term["coeff"])
        return cls(shape, terms)


def rim_hook_reduce(nu: Sequence[int], r: int, k: int) -> tuple[int, int, tuple[int, ...]] | None:
    """Reduce a partition with at most r parts into the r x k box.

    Returns ``(sign, d, lam)`` meaning ``s_nu = sign * q^d * sigma_lam`` in
    QH*(Gr(r, r+k)), or ``None`` when ``s_nu`` vanishes.
    """
    n = r + k
    parts = tuple(nu) + (0,) * (r - len(nu))
    if len(parts) > r:
        return None
    beta = [p + r - a for a, p in enumerate(parts, start=1)]
    removed = sum(b // n for b in beta)
    residues = [b % n for b in beta]
    if len(set(residues)) < r:
        return None
    # sign of the permutation sorting the residues decreasingly
    inversions = sum(
        1 for i in range(r) for j in range(i + 1, r) if residues[i] < residues[j]
    )
    sign = -1 if inversions % 2 else 1
    if (r - 1) * removed % 2:
        sign = -sign
    ordered = sorted(residues, reverse=True)
    lam = tuple(b - (r - a) for a, b in enumerate(ordered, start=1))
    return sign, removed, lam


@lru_cache(maxsize=None)
def _basis_qproduct(shape: GrassmannianShape, a: Subset, b: Subset) -> tuple:
    lam = lambda_of_subset(shape, a)
    mu = lambda_of_subset(shape, b)
    out: dict = {}
    for nu, c in lr_product(lam, mu, max_rows=shape.r).items():
        reduced = rim_hook_reduce(nu, shape.r, shape.k)
        if reduced is None:
            continue
        sign, d, kappa = reduced
        key = (subset_of_lambda(shape, kappa), d)
        out[key] = out.get(key, 0) + sign * c
    return tuple(sorted((key, c) for key, c in out.items() if c))


def basis_qproduct(shape: GrassmannianShape, a: Iterable[int], b: Iterable[int]) -> dict:
    """omega_a * omega_b in QH*, as {(subset, d): coefficient}."""
    a, b = check_subset(shape, a), check_subset(shape, b)
    return dict(_basis_qproduct(shape, *sorted((a, b))))


def _qbasis(shape: GrassmannianShape, x, y) -> dict:
    (sa, da), (sb, db) = x, y
    return {
        (s, d + da + db): c for (s, d), c in _basis_qproduct(shape, *sorted((sa, sb)))
    }


def quantum_product(shape: GrassmannianShape, a: QClass, b: QClass) -> QClass:
    if a.shape != shape or b.shape != shape:
        raise InputError(f"classes must live on {shape}")
    return bilinear(shape, a, b, lambda x, y: _qbasis(shape, x, y), QClass)


def multiply_subsets(shape: GrassmannianShape, subsets: Sequence[Subset]) -> QClass:
    """The quantum product of the Schubert classes of ``subsets`` (1 if empty)."""
    acc = QClass.schubert(shape, shape.fundamental())
    for s in subsets:
        acc = quantum_product(shape, acc, QClass.schubert(shape, s))
    return acc


@lru_cache(maxsize=None)
def _product_prefix(shape: GrassmannianShape, subsets: tuple[Subset, ...]) -> QClass:
    if not subsets:
        return QClass.schubert(shape, shape.fundamental())
    head = _product_prefix(shape, subsets[:-1])
    return quantum_product(shape, head, QClass.schubert(shape, subsets[-1]))


def expected_dimension(shape: GrassmannianShape, insertions: Sequence[Iterable[int]], d: int, D: int = 0) -> int:
    """r(n-r) + d n - D r - sum of codimensions."""
    return (
        shape.dimension
        + d * shape.n
        - D * shape.r
        - sum(codim(shape, s) for s in insertions)
    )


@lru_cache(maxsize=None)
def _gw_number(shape: GrassmannianShape, insertions: tuple[Subset, ...], d: int) -> int:
    if d < 0 or expected_dimension(shape, insertions, d) != 0:
        return 0
    *head, last = insertions
    product = _product_prefix(shape, tuple(head))
    return product[(dual_subset(shape, last), d)]


def gw_number(shape: GrassmannianShape, insertions: Sequence[Iterable[int]], d: int) -> int:
    """The untwisted (D = 0) genus-0 Gromov-Witten number <omega_I1, ...>_d."""
    subs = tuple(sorted(check_subset(shape, s) for s in insertions))
    if not subs:
        raise InputError("need at least one insertion")
    return _gw_number(shape, subs, int(d))


def shift(shape: GrassmannianShape, subset: Iterable[int], d: int) -> tuple[Subset, int]:
    """Trade one unit of twist: <I, ...>_{d,D} = <J, ...>_{d~,D-1}."""
    sub = check_subset(shape, subset)
    if sub[0] > 1:
        return tuple(i - 1 for i in sub), d
    return tuple(i - 1 for i in sub[1:]) + (shape.n,), d - 1


def unshift(shape: GrassmannianShape, subset: Iterable[int], d: int) -> tuple[Subset, int]:
    """Inverse of :func:`shift`; raises the twist D by one."""
    sub = check_subset(shape, subset)
    if sub[-1] == shape.n:
        return (1,) + tuple(j + 1 for j in sub[:-1]), d + 1
    return tuple(j + 1 for j in sub), d


def special_k(shape: GrassmannianShape) -> Subset:
    """K = {1, k+2, ..., n}; its class absorbs one unit of twist."""
    return (1,) + tuple(range(shape.k + 2, shape.n + 1))


@dataclass(frozen=True)
class GWQuery:
    shape: GrassmannianShape
    insertions: tuple[Subset, ...]
    d: int = 0
    D: int = 0

    def __post_init__(self) -> None:
        subs = tuple(check_subset(self.shape, s) for s in self.insertions)
        if not subs:
            raise InputError("need at least one insertion")
        object.__setattr__(self, "insertions", subs)
        object.__setattr__(self, "d", int(self.d))
        object.__setattr__(self, "D", int(self.D))

    @property
    def expected_dimension(self) -> int:
        return expected_dimension(self.shape, self.insertions, self.d, self.D)

    def canonical(self) -> "GWQuery":
        return GWQuery(self.shape, tuple(sorted(self.insertions)), self.d, self.D)

    def key(self) -> str:
        subs = ";".join(",".join(map(str, s)) for s in sorted(self.insertions))
        return f"gw|{self.shape.r},{self.shape.n}|{subs}|{self.d}|{self.D}"


@dataclass
class RouteStats:
    """Counts of twisted evaluations where both routes were compared."""

    comparisons: int = 0
    disagreements: int = 0
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def record(self, agree: bool) -> None:
        with self._lock:
            self.comparisons += 1
            if not agree:
                self.disagreements += 1

    def reset(self) -> None:
        with self._lock:
            self.comparisons = 0
            self.disagreements = 0


route_stats = RouteStats()


def twisted_by_unshift(query: GWQuery) -> int:
    """Unshift the first insertion until the twist is gone."""
    first, *rest = query.insertions
    d = query.d
    for _ in range(-query.D):
        first, d = unshift(query.shape, first, d)
    return gw_number(query.shape, [first, *rest], d)


def twisted_by_insertion(query: GWQuery) -> int:
    """Append -D copies of omega_K and raise the degree by -D."""
    extra = [special_k(query.shape)] * (-query.D)
    return gw_number(query.shape, [*query.insertions, *extra], query.d - query.D)


@lru_cache(maxsize=None)
def _gw_twisted(query: GWQuery) -> int:
    if query.expected_dimension != 0:
        return 0
    via_shift = twisted_by_unshift(query)
    via_k = twisted_by_insertion(query)
    route_stats.record(via_shift == via_k)
    if via_shift != via_k:
        raise RouteDisagreement(
            f"{query.key()}: unshift route gives {via_shift}, K-insertion route gives {via_k}"
        )
    return via_shift


def gw_twisted(query: GWQuery) -> int:
    """The twisted number <omega_I1, ..., omega_Is>_{d,D} for D <= 0."""
    if query.D > 0:
        raise InputError("positive twist D is not supported; shift the query to D <= 0")
    return _gw_twisted(query.canonical())
