"""The SU(r) level-k fusion (Verlinde) algebra, obtained from QH*(Gr(r, r+k)).

An SU(r) representation is stored as its normalized highest weight: a weakly
decreasing tuple of length r whose last entry is 0.  Fusion structure
constants are read off from quantum products at q = 1 through the Witten
map ``omega_I -> lambda(I) x^codim(I)``: a term ``q^d omega_K`` of
``omega_I * omega_J`` corresponds to the representation obtained from
``lambda(K)`` by d cyclic shifts.

Elements of the ring R~ (pairs of an SU(r) weight and a U(1) charge ``a``
modulo r n with ``a = |lambda| mod r``) are keyed by ``(rep, a)``.
"""

from __future__ import annotations

import itertools
import json
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .schubert import (
    CohClass,
    GrassmannianShape,
    InputError,
    check_subset,
    codim,
    lambda_of_subset,
    subset_of_lambda,
)
from .quantum import QClass, basis_qproduct

Rep = tuple[int, ...]


def su_normalize(parts: Sequence[int]) -> Rep:
    """Shift a weakly decreasing sequence so that its last entry is 0."""
    parts = tuple(int(p) for p in parts)
    if not parts:
        raise InputError("empty weight")
    if any(a < b for a, b in zip(parts, parts[1:])):
        raise InputError(f"{parts} is not weakly decreasing")
    return tuple(p - parts[-1] for p in parts)


def check_rep(r: int, k: int, rep: Iterable[int]) -> Rep:
    rep = tuple(int(p) for p in rep)
    if len(rep) != r:
        raise InputError(f"weight {rep} must have {r} entries")
    rep = su_normalize(rep)
    if rep[0] > k:
        raise InputError(f"weight {rep} has level {rep[0]} > {k}")
    return rep


def trivial(r: int) -> Rep:
    return (0,) * r


def su_dual(rep: Sequence[int]) -> Rep:
    """(mu_1 - mu_r, mu_1 - mu_{r-1}, ..., mu_1 - mu_2, 0)."""
    mu = su_normalize(rep)
    return tuple(mu[0] - m for m in reversed(mu))


@lru_cache(maxsize=None)
def level_reps(r: int, k: int) -> tuple[Rep, ...]:
    """All normalized weights of level <= k, in lexicographic order."""
    if r < 1 or k < 0:
        raise InputError(f"need r >= 1, k >= 0 (got r={r}, k={k})")
    reps = [
        tuple(reversed(c)) + (0,)
        for c in itertools.combinations_with_replacement(range(k + 1), r - 1)
    ]
    return tuple(sorted(reps))


def rep_of_subset(shape: GrassmannianShape, subset: Iterable[int]) -> Rep:
    """The SU(r) weight of a subset containing 1."""
    sub = check_subset(shape, subset)
    if sub[0] != 1:
        raise InputError(f"subset {sub} must contain 1")
    return su_normalize(lambda_of_subset(shape, sub))


def subset_of_rep(shape: GrassmannianShape, rep: Iterable[int]) -> tuple[int, ...]:
    """The unique subset containing 1 whose weight is ``rep``."""
    rep = check_rep(shape.r, shape.k, rep)
    lifted = tuple(p + shape.k - rep[0] for p in rep)
    return subset_of_lambda(shape, lifted)


def cyclic_shift(k: int, parts: Sequence[int]) -> Rep:
    """(k + lam_r, lam_1, ..., lam_{r-1}), normalized."""
    parts = tuple(parts)
    return su_normalize((k + parts[-1],) + parts[:-1])


class FusionElement:
    """Integer combination of level-k weights of SU(r)."""

    __slots__ = ("r", "k", "_terms")

    def __init__(self, r: int, k: int, terms: Mapping[Sequence[int], int] | None = None):
        self.r, self.k = r, k
        clean: dict = {}
        for rep, c in (terms or {}).items():
            rep = check_rep(r, k, rep)
            clean[rep] = clean.get(rep, 0) + int(c)
        self._terms = {rep: clean[rep] for rep in sorted(clean) if clean[rep]}

    @classmethod
    def basis(cls, r: int, k: int, rep: Sequence[int]) -> "FusionElement":
        return cls(r, k, {tuple(rep): 1})

    @classmethod
    def one(cls, r: int, k: int) -> "FusionElement":
        return cls(r, k, {trivial(r): 1})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __getitem__(self, rep) -> int:
        return self._terms.get(tuple(rep), 0)

    def __len__(self) -> int:
        return len(self._terms)

    def _check(self, other: "FusionElement") -> None:
        if not isinstance(other, FusionElement) or (other.r, other.k) != (self.r, self.k):
            raise InputError("fusion elements must share (r, k)")

    def __add__(self, other: "FusionElement") -> "FusionElement":
        self._check(other)
        terms = dict(self._terms)
        for rep, c in other.items():
            terms[rep] = terms.get(rep, 0) + c
        return FusionElement(self.r, self.k, terms)

    def __mul__(self, other):
        if isinstance(other, int):
            return FusionElement(self.r, self.k, {rep: other * c for rep, c in self.items()})
        return fusion_product(self.r, self.k, self, other)

    def __rmul__(self, other: int) -> "FusionElement":
        return self * other

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FusionElement):
            return NotImplemented
        return (self.r, self.k, self._terms) == (other.r, other.k, other._terms)

    def __hash__(self) -> int:
        return hash((self.r, self.k, tuple(self._terms.items())))

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*{rep}" for rep, c in self.items()) or "0"
        return f"FusionElement(SU({self.r})_{self.k}: {body})"

    def to_json(self) -> dict:
        return {
            "group": [self.r, self.k],
            "terms": [{"rep": list(rep), "coeff": str(c)} for rep, c in self.items()],
        }

    @classmethod
    def from_json(cls, data: Mapping | str) -> "FusionElement":
        if isinstance(data, str):
            data = json.loads(data)
        r, k = data["group"]
        terms: dict = {}
        for term in data["terms"]:
            rep = tuple(term["rep"])
            terms[rep] = terms.get(rep, 0) + int(term["coeff"])
        return cls(r, k, terms)


@lru_cache(maxsize=None)
def _fusion_basis(r: int, k: int, mu: Rep, nu: Rep) -> tuple[tuple[Rep, int], ...]:
    shape = GrassmannianShape(r, k)
    product = basis_qproduct(shape, subset_of_rep(shape, mu), subset_of_rep(shape, nu))
    out: dict = {}
    for (subset, d), c in product.items():
        rep = su_normalize(lambda_of_subset(shape, subset))
        for _ in range(d % r):
            rep = cyclic_shift(k, rep)
        out[rep] = out.get(rep, 0) + c
    return tuple(sorted(out.items()))


def fusion_basis_product(r: int, k: int, mu: Sequence[int], nu: Sequence[int]) -> dict[Rep, int]:
    mu, nu = check_rep(r, k, mu), check_rep(r, k, nu)
    return dict(_fusion_basis(r, k, *sorted((mu, nu))))


def fusion_product(r: int, k: int, a: FusionElement, b: FusionElement) -> FusionElement:
    a._check(b)
    if (a.r, a.k) != (r, k):
        raise InputError("fusion elements must live in SU(r) level k")
    out: dict = {}
    for mu, ca in a.items():
        for nu, cb in b.items():
            for rep, c in _fusion_basis(r, k, *sorted((mu, nu))):
                out[rep] = out.get(rep, 0) + ca * cb * c
    return FusionElement(r, k, out)


def fuse_all(r: int, k: int, reps: Iterable[Sequence[int]]) -> FusionElement:
    acc = FusionElement.one(r, k)
    for rep in reps:
        acc = fusion_product(r, k, acc, FusionElement.basis(r, k, rep))
    return acc


@lru_cache(maxsize=None)
def _fusion_coefficient(r: int, k: int, reps: tuple[Rep, ...]) -> int:
    if not reps:
        return 1
    if len(reps) == 1:
        return int(reps[0] == trivial(r))
    *head, last = reps
    # multiplicity of the trivial weight in (product of head) * last
    partial = _fused(r, k, tuple(head))
    return partial[su_dual(last)]


@lru_cache(maxsize=None)
def _fused(r: int, k: int, reps: tuple[Rep, ...]) -> FusionElement:
    if not reps:
        return FusionElement.one(r, k)
    return fusion_product(r, k, _fused(r, k, reps[:-1]), FusionElement.basis(r, k, reps[-1]))


def fusion_coefficient(r: int, k: int, reps: Iterable[Sequence[int]]) -> int:
    """N_0^(k)(mu^1, ..., mu^s): multiplicity of the trivial weight in the
    fusion product of all arguments."""
    reps = tuple(sorted(check_rep(r, k, rep) for rep in reps))
    return _fusion_coefficient(r, k, reps)


@lru_cache(maxsize=None)
def handle_element(r: int, k: int) -> FusionElement:
    """sum over level-k weights nu of nu * nu^*."""
    acc = FusionElement(r, k)
    for nu in level_reps(r, k):
        acc = acc + fusion_product(
            r, k, FusionElement.basis(r, k, nu), FusionElement.basis(r, k, su_dual(nu))
        )
    return acc


@lru_cache(maxsize=None)
def handle_power(r: int, k: int, g: int) -> FusionElement:
    if g == 0:
        return FusionElement.one(r, k)
    return fusion_product(r, k, handle_power(r, k, g - 1), handle_element(r, k))


def conformal_block_dim(r: int, k: int, g: int, reps: Iterable[Sequence[int]] = ()) -> int:
    """N_g^(k)(mu^1, ..., mu^s), the genus-g conformal block dimension."""
    if g < 0:
        raise InputError(f"genus must be >= 0, got {g}")
    reps = tuple(sorted(check_rep(r, k, rep) for rep in reps))
    if g == 0:
        return _fusion_coefficient(r, k, reps)
    product = fusion_product(r, k, _fused(r, k, reps), handle_power(r, k, g))
    return product[trivial(r)]


# -- the ring R~ and the Witten map -----------------------------------------


def _check_charge(r: int, k: int, rep: Rep, a: int) -> tuple[Rep, int]:
    rep = check_rep(r, k, rep)
    a = int(a) % (r * (r + k))
    if (a - sum(rep)) % r:
        raise InputError(f"charge {a} is not congruent to |{rep}| mod {r}")
    return rep, a


class RTildeElement:
    """Combination of terms ``rep x x^a`` with ``a`` taken mod r n."""

    __slots__ = ("r", "k", "_terms")

    def __init__(self, r: int, k: int, terms: Mapping[tuple, int] | None = None):
        self.r, self.k = r, k
        clean: dict = {}
        for (rep, a), c in (terms or {}).items():
            key = _check_charge(r, k, tuple(rep), a)
            clean[key] = clean.get(key, 0) + int(c)
        self._terms = {key: clean[key] for key in sorted(clean) if clean[key]}

    @classmethod
    def basis(cls, r: int, k: int, rep: Sequence[int], a: int) -> "RTildeElement":
        return cls(r, k, {(tuple(rep), a): 1})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __add__(self, other: "RTildeElement") -> "RTildeElement":
        terms = dict(self._terms)
        for key, c in other.items():
            terms[key] = terms.get(key, 0) + c
        return RTildeElement(self.r, self.k, terms)

    def __sub__(self, other: "RTildeElement") -> "RTildeElement":
        terms = dict(self._terms)
        for key, c in other.items():
            terms[key] = terms.get(key, 0) - c
        return RTildeElement(self.r, self.k, terms)

    def __mul__(self, other: "RTildeElement") -> "RTildeElement":
        r, k = self.r, self.k
        modulus = r * (r + k)
        out: dict = {}
        for (mu, a), ca in self.items():
            for (nu, b), cb in other.items():
                for rep, c in _fusion_basis(r, k, *sorted((mu, nu))):
                    key = (rep, (a + b) % modulus)
                    out[key] = out.get(key, 0) + ca * cb * c
        return RTildeElement(r, k, out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RTildeElement):
            return NotImplemented
        return (self.r, self.k, self._terms) == (other.r, other.k, other._terms)

    def __hash__(self) -> int:
        return hash((self.r, self.k, tuple(self._terms.items())))

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*{rep}x^{a}" for (rep, a), c in self.items()) or "0"
        return f"RTildeElement({body})"

    def normal_form(self) -> "RTildeElement":
        """Replace each term by its T-orbit representative."""
        out: dict = {}
        for (rep, a), c in self.items():
            key = orbit_normal_form(self.r, self.k, rep, a)
            out[key] = out.get(key, 0) + c
        return RTildeElement(self.r, self.k, out)


def t_operator(r: int, k: int, rep: Sequence[int], a: int) -> tuple[Rep, int]:
    """T(lam x x^a) = eta x x^(n+a), eta the cyclic shift of lam."""
    rep, a = _check_charge(r, k, tuple(rep), a)
    n = r + k
    return cyclic_shift(k, rep), (a + n) % (r * n)


def box_partition_of(r: int, k: int, rep: Sequence[int], a: int) -> tuple[int, ...] | None:
    """The lift lam of ``rep`` with |lam| = a (mod r n), 0 <= lam_r and
    lam_1 <= k, if it exists."""
    rep, a = _check_charge(r, k, tuple(rep), a)
    n = r + k
    shift_by = ((a - sum(rep)) // r) % n
    if rep[0] + shift_by > k:
        return None
    return tuple(p + shift_by for p in rep)


def orbit_normal_form(r: int, k: int, rep: Sequence[int], a: int) -> tuple[Rep, int]:
    """The unique term ``lam x x^|lam|`` (lam in the r x k box) in the T-orbit."""
    rep, a = _check_charge(r, k, tuple(rep), a)
    found = []
    term = (rep, a)
    for _ in range(r):
        if box_partition_of(r, k, *term) is not None:
            found.append(term)
        term = t_operator(r, k, *term)
    if len(found) != 1:
        raise AssertionError(f"T-orbit of {rep} x^{a} has {len(found)} normal forms")
    return found[0]


def witten_map(shape: GrassmannianShape, c: CohClass | QClass) -> RTildeElement:
    """omega_I -> lambda(I)bar x x^codim(I), at q = 1."""
    if isinstance(c, QClass):
        c = c.at_q_one()
    r, k = shape.r, shape.k
    out: dict = {}
    for subset, coeff in c.items():
        key = (su_normalize(lambda_of_subset(shape, subset)), codim(shape, subset))
        out[key] = out.get(key, 0) + coeff
    return RTildeElement(r, k, out)
