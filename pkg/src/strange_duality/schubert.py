"""Schubert calculus on the Grassmannian Gr(r, n).

Schubert classes are indexed by r-subsets ``I = (i_1 < ... < i_r)`` of
``{1, ..., n}``.  The partition of a subset is ``lam_a = n - r + a - i_a``;
it lives in the r x k box (k = n - r) and its size is the codimension.
Subsets are plain sorted tuples and partitions are tuples of length r.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Callable, Hashable, Iterable, Iterator, Mapping

from .littlewood_richardson import lr_product

Subset = tuple[int, ...]
Partition = tuple[int, ...]


class InputError(ValueError):
    """Invalid argument to a public operation."""


@dataclass(frozen=True, order=True)
class GrassmannianShape:
    r: int
    k: int

    def __post_init__(self) -> None:
        if not (isinstance(self.r, int) and isinstance(self.k, int)):
            raise InputError("r and k must be integers")
        if self.r < 1 or self.k < 1:
            raise InputError(f"need r >= 1 and k >= 1, got r={self.r}, k={self.k}")

    @classmethod
    def from_rn(cls, r: int, n: int) -> "GrassmannianShape":
        return cls(r, n - r)

    @property
    def n(self) -> int:
        return self.r + self.k

    @property
    def dimension(self) -> int:
        return self.r * self.k

    def subsets(self) -> list[Subset]:
        """All r-subsets of [n], in lexicographic order."""
        return _subsets(self.r, self.n)

    def fundamental(self) -> Subset:
        """The subset {k+1, ..., n} of the fundamental class (codimension 0)."""
        return tuple(range(self.k + 1, self.n + 1))

    def point(self) -> Subset:
        """The subset {1, ..., r} of the point class."""
        return tuple(range(1, self.r + 1))

    def __str__(self) -> str:
        return f"Gr({self.r},{self.n})"


@lru_cache(maxsize=None)
def _subsets(r: int, n: int) -> list[Subset]:
    return list(itertools.combinations(range(1, n + 1), r))


def check_subset(shape: GrassmannianShape, subset: Iterable[int]) -> Subset:
    """Validate and return ``subset`` as a sorted tuple."""
    try:
        sub = tuple(int(i) for i in subset)
    except (TypeError, ValueError) as exc:
        raise InputError(f"subset must be a sequence of integers: {subset!r}") from exc
    if len(sub) != shape.r:
        raise InputError(f"subset {sub} must have {shape.r} elements for {shape}")
    if any(i < 1 or i > shape.n for i in sub):
        raise InputError(f"subset {sub} has entries outside 1..{shape.n}")
    if any(a >= b for a, b in zip(sub, sub[1:])):
        raise InputError(f"subset {sub} must be strictly increasing")
    return sub


def check_partition(shape: GrassmannianShape, parts: Iterable[int]) -> Partition:
    """Validate a partition of length r inside the r x k box (padding zeros)."""
    lam = tuple(int(p) for p in parts)
    if len(lam) > shape.r:
        raise InputError(f"partition {lam} has more than {shape.r} parts")
    lam = lam + (0,) * (shape.r - len(lam))
    if any(p < 0 for p in lam) or any(a < b for a, b in zip(lam, lam[1:])):
        raise InputError(f"{lam} is not a weakly decreasing nonnegative sequence")
    if lam[0] > shape.k:
        raise InputError(f"partition {lam} does not fit in the {shape.r}x{shape.k} box")
    return lam


def lambda_of_subset(shape: GrassmannianShape, subset: Iterable[int]) -> Partition:
    sub = check_subset(shape, subset)
    return tuple(shape.k + a - i for a, i in enumerate(sub, start=1))


def subset_of_lambda(shape: GrassmannianShape, parts: Iterable[int]) -> Subset:
    lam = check_partition(shape, parts)
    return tuple(shape.k + a - p for a, p in enumerate(lam, start=1))


def dual_subset(shape: GrassmannianShape, subset: Iterable[int]) -> Subset:
    """I' = {n + 1 - i}; the Poincare dual index."""
    sub = check_subset(shape, subset)
    return tuple(sorted(shape.n + 1 - i for i in sub))


def codim(shape: GrassmannianShape, subset: Iterable[int]) -> int:
    return sum(lambda_of_subset(shape, subset))


class Combination:
    """Finite integer combination of hashable basis keys over one shape.

    Zero coefficients are never stored; iteration follows the canonical
    (sorted) key order.
    """

    __slots__ = ("shape", "_terms")

    def __init__(self, shape: GrassmannianShape, terms: Mapping[Any, int] | None = None):
        self.shape = shape
        clean = {}
        for key, coeff in (terms or {}).items():
            key = self._check_key(key)
            coeff = int(coeff)
            if coeff:
                clean[key] = clean.get(key, 0) + coeff
        self._terms = {key: clean[key] for key in sorted(clean) if clean[key]}

    def _check_key(self, key: Hashable) -> Hashable:
        return key

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def __iter__(self) -> Iterator:
        return iter(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __getitem__(self, key) -> int:
        return self._terms.get(key, 0)

    def _same_shape(self, other: "Combination") -> None:
        if type(other) is not type(self):
            raise InputError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.shape != self.shape:
            raise InputError(f"shape mismatch: {self.shape} vs {other.shape}")

    def __add__(self, other: "Combination"):
        self._same_shape(other)
        terms = dict(self._terms)
        for key, coeff in other.items():
            terms[key] = terms.get(key, 0) + coeff
        return type(self)(self.shape, terms)

    def __neg__(self):
        return type(self)(self.shape, {key: -c for key, c in self.items()})

    def __sub__(self, other: "Combination"):
        return self + (-other)

    def __mul__(self, scalar: int):
        if not isinstance(scalar, int):
            return NotImplemented
        return type(self)(self.shape, {key: scalar * c for key, c in self.items()})

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self.shape == other.shape and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.shape, tuple(self._terms.items())))

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*{key}" for key, c in self.items()) or "0"
        return f"{type(self).__name__}({self.shape}: {body})"


class CohClass(Combination):
    """A class in H*(Gr(r, n)) as a combination of Schubert classes."""

    __slots__ = ()

    def _check_key(self, key):
        return check_subset(self.shape, key)

    @classmethod
    def schubert(cls, shape: GrassmannianShape, subset: Iterable[int]) -> "CohClass":
        return cls(shape, {tuple(subset): 1})

    @classmethod
    def from_partition(cls, shape: GrassmannianShape, parts: Iterable[int]) -> "CohClass":
        return cls(shape, {subset_of_lambda(shape, parts): 1})

    def to_json(self) -> dict:
        return {
            "shape": [self.shape.r, self.shape.n],
            "terms": [{"subset": list(s), "coeff": str(c)} for s, c in self.items()],
        }

    @classmethod
    def from_json(cls, data: Mapping | str) -> "CohClass":
        if isinstance(data, str):
            data = json.loads(data)
        shape = GrassmannianShape.from_rn(*data["shape"])
        terms: dict = {}
        for term in data["terms"]:
            key = tuple(term["subset"])
            terms[key] = terms.get(key, 0) + int(term["coeff"])
        return cls(shape, terms)


@lru_cache(maxsize=None)
def _basis_product(shape: GrassmannianShape, a: Subset, b: Subset) -> tuple[tuple[Subset, int], ...]:
    lam = lambda_of_subset(shape, a)
    mu = lambda_of_subset(shape, b)
    out = {}
    for nu, c in lr_product(lam, mu, max_rows=shape.r).items():
        if nu and nu[0] > shape.k:
            continue
        out[subset_of_lambda(shape, nu)] = c
    return tuple(sorted(out.items()))


def basis_product(shape: GrassmannianShape, a: Iterable[int], b: Iterable[int]) -> dict[Subset, int]:
    """omega_a * omega_b in the classical ring, as {subset: coefficient}."""
    a, b = check_subset(shape, a), check_subset(shape, b)
    return dict(_basis_product(shape, *sorted((a, b))))


def bilinear(
    shape: GrassmannianShape,
    left: Combination,
    right: Combination,
    basis_fn: Callable[[Hashable, Hashable], Mapping],
    result_type: type,
):
    """Extend a product on basis keys bilinearly."""
    left._same_shape(right)
    out: dict = {}
    for ka, ca in left.items():
        for kb, cb in right.items():
            for key, c in basis_fn(ka, kb).items():
                out[key] = out.get(key, 0) + ca * cb * c
    return result_type(shape, out)


def classical_product(shape: GrassmannianShape, a: CohClass, b: CohClass) -> CohClass:
    if a.shape != shape or b.shape != shape:
        raise InputError(f"classes must live on {shape}")
    return bilinear(shape, a, b, lambda x, y: basis_product(shape, x, y), CohClass)


def pairing(shape: GrassmannianShape, a: CohClass, b: CohClass) -> int:
    """Intersection number: the point-class coefficient of ``a * b``."""
    return classical_product(shape, a, b)[shape.point()]


def diagonal_decomposition_check(shape: GrassmannianShape) -> bool:
    """Check that sum_I omega_I (x) omega_{I'} acts as the diagonal class.

    Also checks that the subsets containing 1 and those avoiding 1 split the
    basis into two disjoint pieces.
    """
    basis = shape.subsets()
    with_one = {s for s in basis if 1 in s}
    without_one = {s for s in basis if 1 not in s}
    if with_one & without_one or (with_one | without_one) != set(basis):
        return False

    cls = {s: CohClass.schubert(shape, s) for s in basis}
    cod = {s: codim(shape, s) for s in basis}

    @lru_cache(maxsize=None)
    def pair(x: Subset, y: Subset) -> int:
        return pairing(shape, cls[x], cls[y])

    top = shape.dimension
    for j in basis:
        for kk in basis:
            if cod[j] + cod[kk] != top:
                continue
            via_diagonal = sum(
                pair(j, i) * pair(dual_subset(shape, i), kk) for i in basis
            )
            if via_diagonal != pair(j, kk):
                return False
    return True
