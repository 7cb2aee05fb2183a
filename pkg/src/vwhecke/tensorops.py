"""Operators on V^{(x)k}: swaps, trivial projectors, split Casimirs and xi-legs.

Legs are numbered 1..k (leg 0, the module factor, only exists inside psmodel).
A basis index of V^{(x)k} is read as k base-dimV digits, leg 1 most significant.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Dict, FrozenSet, Iterable, Tuple

from .exactlin import ExactMatrix, GaussRat, kron
from .liealg import LieAlgebraData, omega_vv, swap_matrix, trivial_projector_vv


class BadLeg(ValueError):
    pass


@dataclass(frozen=True)
class TensorSpace:
    dimV: int
    k: int

    @property
    def totalDim(self) -> int:
        return self.dimV ** self.k

    def check_leg(self, *legs: int):
        for l in legs:
            if not 1 <= l <= self.k:
                raise BadLeg(f"leg {l} outside 1..{self.k}")

    def digits(self, index: int) -> Tuple[int, ...]:
        out = []
        for _ in range(self.k):
            index, r = divmod(index, self.dimV)
            out.append(r)
        return tuple(reversed(out))

    def index(self, digits: Iterable[int]) -> int:
        idx = 0
        for d in digits:
            idx = idx * self.dimV + d
        return idx

    def product_vector(self, factors) -> Tuple[GaussRat, ...]:
        """u_1 (x) ... (x) u_k as a dense vector."""
        out = None
        for f in factors:
            col = ExactMatrix.from_columns([f])
            out = col if out is None else kron(out, col)
        return out.column(0)


@dataclass(frozen=True)
class LegOperator:
    matrix: ExactMatrix
    legs: FrozenSet[int]
    label: str

    def __matmul__(self, other: "LegOperator") -> "LegOperator":
        return LegOperator(self.matrix @ other.matrix, self.legs | other.legs, f"{self.label}*{other.label}")


def embed_one(space: TensorSpace, leg: int, x: ExactMatrix) -> ExactMatrix:
    space.check_leg(leg)
    d = space.dimV
    left = ExactMatrix.identity(d ** (leg - 1))
    right = ExactMatrix.identity(d ** (space.k - leg))
    return kron(kron(left, x), right)


def embed_two(space: TensorSpace, i: int, j: int, t: ExactMatrix) -> ExactMatrix:
    """Place an operator t on V_i (x) V_j (t indexed as a*dimV + b for leg i digit a)."""
    space.check_leg(i, j)
    if i == j:
        raise BadLeg("two-leg operator needs distinct legs")
    d, k = space.dimV, space.k
    others = [l for l in range(1, k + 1) if l not in (i, j)]
    data: Dict[int, Dict[int, GaussRat]] = {}
    tent = [(r // d, r % d, c // d, c % d, v) for (r, c), v in t.entries.items()]
    for rest in product(range(d), repeat=len(others)):
        digits = [0] * (k + 1)
        for l, x in zip(others, rest):
            digits[l] = x
        for a, b, a2, b2, v in tent:
            digits[i], digits[j] = a, b
            r = space.index(digits[1:])
            digits[i], digits[j] = a2, b2
            c = space.index(digits[1:])
            data.setdefault(r, {})[c] = v
    return ExactMatrix(space.totalDim, space.totalDim, data, _trusted=True)


def build_swap(space: TensorSpace, i: int, j: int) -> LegOperator:
    if not i < j:
        raise BadLeg("swap needs i < j")
    return LegOperator(embed_two(space, i, j, swap_matrix(space.dimV)), frozenset({i, j}), f"s({i},{j})")


def build_trivial_projector(space: TensorSpace, data: LieAlgebraData, i: int, j: int | None = None) -> LegOperator:
    """Projector onto the invariant line of legs (i, j); j defaults to i+1."""
    if j is None:
        j = i + 1
    if not i < j:
        raise BadLeg("projector needs i < j")
    return LegOperator(embed_two(space, i, j, _pr_cached(data)), frozenset({i, j}), f"pr({i},{j})")


def build_omega(space: TensorSpace, data: LieAlgebraData, i: int, j: int, part: str = "full") -> LegOperator:
    if not i < j:
        raise BadLeg("Omega needs i < j")
    return LegOperator(embed_two(space, i, j, _omega_cached(data, part)), frozenset({i, j}), f"Omega_{part}({i},{j})")


def build_xi_leg(space: TensorSpace, data: LieAlgebraData, i: int) -> LegOperator:
    return LegOperator(embed_one(space, i, data.xi), frozenset({i}), f"xi({i})")


def diagonal_action(space: TensorSpace, x: ExactMatrix) -> ExactMatrix:
    """sum over legs of x acting on that leg."""
    acc = ExactMatrix.zeros(space.totalDim)
    for l in range(1, space.k + 1):
        acc = acc + embed_one(space, l, x)
    return acc


_CACHE: Dict[Tuple[int, str], ExactMatrix] = {}


def _omega_cached(data: LieAlgebraData, part: str) -> ExactMatrix:
    key = (id(data), "omega" + part)
    hit = _CACHE.get(key)
    if hit is None or hit[0] is not data:
        hit = (data, omega_vv(data, part))
        _CACHE[key] = hit
    return hit[1]


def _pr_cached(data: LieAlgebraData) -> ExactMatrix:
    key = (id(data), "pr")
    hit = _CACHE.get(key)
    if hit is None or hit[0] is not data:
        hit = (data, trivial_projector_vv(data.spec))
        _CACHE[key] = hit
    return hit[1]
