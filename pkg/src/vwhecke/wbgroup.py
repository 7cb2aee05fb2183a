"""The hyperoctahedral group W(B_k) as signed permutations.

An element is stored in window notation: images[i-1] = +-j means i -> +-j.
Simple reflections are the adjacent transpositions s_{i,i+1} (i = 1..k-1) and
the sign change theta_k of the last coordinate.
"""

from __future__ import annotations

from collections import deque
from itertools import permutations, product
from typing import Dict, List, Sequence, Tuple

from .exactlin import ExactMatrix


class TooLarge(ValueError):
    pass


class SignedPerm:
    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        imgs = tuple(int(x) for x in images)
        k = len(imgs)
        if sorted(abs(x) for x in imgs) != list(range(1, k + 1)):
            raise ValueError(f"not a signed permutation: {imgs}")
        self.images = imgs

    @property
    def k(self) -> int:
        return len(self.images)

    @property
    def perm(self) -> Tuple[int, ...]:
        return tuple(abs(x) for x in self.images)

    @property
    def signs(self) -> Tuple[int, ...]:
        return tuple(1 if x > 0 else -1 for x in self.images)

    @staticmethod
    def identity(k: int) -> "SignedPerm":
        return SignedPerm(range(1, k + 1))

    @staticmethod
    def transposition(k: int, i: int) -> "SignedPerm":
        """s_{i,i+1}."""
        imgs = list(range(1, k + 1))
        imgs[i - 1], imgs[i] = imgs[i], imgs[i - 1]
        return SignedPerm(imgs)

    @staticmethod
    def sign_flip(k: int, j: int) -> "SignedPerm":
        """theta_j: negate coordinate j."""
        imgs = list(range(1, k + 1))
        imgs[j - 1] = -j
        return SignedPerm(imgs)

    @staticmethod
    def parse(text: str) -> "SignedPerm":
        parts = [p.strip() for p in text.split(",") if p.strip()]
        return SignedPerm([int(p) for p in parts])

    def __str__(self) -> str:
        return ",".join(str(x) for x in self.images)

    def __repr__(self) -> str:
        return f"SignedPerm({str(self)!r})"

    def __call__(self, i: int) -> int:
        """Image of the signed index i."""
        v = self.images[abs(i) - 1]
        return v if i > 0 else -v

    def __mul__(self, other: "SignedPerm") -> "SignedPerm":
        """Composition: (self * other)(i) = self(other(i))."""
        if self.k != other.k:
            raise ValueError("rank mismatch")
        return SignedPerm([self(other(i)) for i in range(1, self.k + 1)])

    def inverse(self) -> "SignedPerm":
        out = [0] * self.k
        for i, v in enumerate(self.images, start=1):
            out[abs(v) - 1] = i if v > 0 else -i
        return SignedPerm(out)

    def __eq__(self, other):
        return isinstance(other, SignedPerm) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __lt__(self, other: "SignedPerm"):
        return sort_key(self) < sort_key(other)

    def is_identity(self) -> bool:
        return self.images == tuple(range(1, self.k + 1))

    def length(self) -> int:
        return length(self)

    def reduced_word(self) -> List[int]:
        return reduced_word(self)


def sort_key(g: SignedPerm):
    return (g.perm, tuple(0 if s > 0 else 1 for s in g.signs))


def enumerate_group(k: int) -> List[SignedPerm]:
    """All k!2^k elements ordered by permutation word, then sign vector (+ before -)."""
    if k > 6:
        raise TooLarge(f"W(B_{k}) enumeration is limited to k <= 6")
    if k < 0:
        raise ValueError("k must be non-negative")
    out = []
    for perm in permutations(range(1, k + 1)):
        for signs in product((1, -1), repeat=k):
            out.append(SignedPerm([p * s for p, s in zip(perm, signs)]))
    return out


def simple_generators(k: int) -> List[Tuple[str, SignedPerm]]:
    """[("s1", s_{12}), ..., ("s{k-1}", ...), ("t", theta_k)]."""
    gens = [(f"s{i}", SignedPerm.transposition(k, i)) for i in range(1, k)]
    if k >= 1:
        gens.append(("t", SignedPerm.sign_flip(k, k)))
    return gens


def length(g: SignedPerm) -> int:
    """Coxeter length for generators {s_{i,i+1}, theta_k}.

    Reversing coordinates (i -> k+1-i) turns theta_k into the sign change of the
    first coordinate, where the length is inv(w) - sum_{w(j)<0} w(j) computed on
    the signed window values.
    """
    k = g.k
    rev = [0] * k
    for i in range(1, k + 1):
        v = g(k + 1 - i)
        rev[i - 1] = (k + 1 - abs(v)) * (1 if v > 0 else -1)
    inv = sum(1 for a in range(k) for b in range(a + 1, k) if rev[a] > rev[b])
    neg = -sum(v for v in rev if v < 0)
    return inv + neg


def length_by_search(k: int) -> Dict[SignedPerm, int]:
    """Word lengths by breadth-first search on the Cayley graph (oracle)."""
    start = SignedPerm.identity(k)
    dist = {start: 0}
    queue = deque([start])
    gens = [g for _, g in simple_generators(k)]
    while queue:
        x = queue.popleft()
        for s in gens:
            y = x * s
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def reduced_word(g: SignedPerm) -> List[int]:
    """Reduced word as generator indices: i in 1..k-1 for s_{i,i+1}, k for theta_k.

    The product of the generators in the listed order equals g.
    """
    k = g.k
    if k == 0:
        return []
    gens = {i: SignedPerm.transposition(k, i) for i in range(1, k)}
    gens[k] = SignedPerm.sign_flip(k, k)
    word: List[int] = []
    x = g
    while not x.is_identity():
        lx = length(x)
        for i in sorted(gens):
            y = x * gens[i]
            if length(y) < lx:
                word.append(i)
                x = y
                break
        else:  # pragma: no cover - a non-identity element always has a descent
            raise RuntimeError("no descent found")
    return list(reversed(word))


def generator(k: int, i: int) -> SignedPerm:
    return SignedPerm.transposition(k, i) if i < k else SignedPerm.sign_flip(k, k)


def longest_element(k: int) -> SignedPerm:
    """w0 = theta_1 ... theta_k = -1."""
    return SignedPerm([-i for i in range(1, k + 1)])


def act_on_epsilon(g: SignedPerm, idx: int) -> int:
    """g(eps_idx) = sign * eps_j, returned as the signed index +-j."""
    return g(idx)


def regular_matrix(g: SignedPerm, elements: Sequence[SignedPerm]) -> ExactMatrix:
    """Left-regular action of g on the basis `elements`."""
    pos = {h: i for i, h in enumerate(elements)}
    n = len(elements)
    return ExactMatrix.from_entries(n, n, {(pos[g * h], i): 1 for i, h in enumerate(elements)})
