import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Optional

import numpy as np

from affine_lyndon.words import AlphabetOrder


logger = logging.getLogger(__name__)


class RootKind(str, Enum):
    REAL = "real"
    IMAGINARY = "imaginary"
    NONE = "none"


def _chain(rank: int) -> np.ndarray:
    cartan = 2 * np.eye(rank, dtype=int)
    for i in range(rank - 1):
        cartan[i, i + 1] = cartan[i + 1, i] = -1
    return cartan


def _from_edges(rank: int, edges: list) -> np.ndarray:
    cartan = 2 * np.eye(rank, dtype=int)
    for i, j in edges:
        cartan[i - 1, j - 1] = cartan[j - 1, i - 1] = -1
    return cartan


def _type_a(rank: int) -> np.ndarray:
    return _chain(rank)


def _type_b(rank: int) -> np.ndarray:
    cartan = _chain(rank)
    # alpha_n is short
    cartan[rank - 1, rank - 2] = -2
    return cartan


def _type_c(rank: int) -> np.ndarray:
    cartan = _chain(rank)
    # alpha_n is long
    cartan[rank - 2, rank - 1] = -2
    return cartan


def _type_d(rank: int) -> np.ndarray:
    edges = [(i, i + 1) for i in range(1, rank - 1)] + [(rank - 2, rank)]
    return _from_edges(rank, edges)


def _type_e(rank: int) -> np.ndarray:
    # Kac numbering of the branch node
    branch = {6: 3, 7: 3, 8: 5}[rank]
    edges = [(i, i + 1) for i in range(1, rank - 1)] + [(branch, rank)]
    return _from_edges(rank, edges)


def _type_f(rank: int) -> np.ndarray:
    cartan = _chain(rank)
    cartan[2, 1] = -2
    return cartan


def _type_g(rank: int) -> np.ndarray:
    # alpha_1 is long
    return np.array([[2, -1], [-3, 2]], dtype=int)


cartan_builders = {
    "A": (_type_a, lambda rank: rank >= 1),
    "B": (_type_b, lambda rank: rank >= 2),
    "C": (_type_c, lambda rank: rank >= 2),
    "D": (_type_d, lambda rank: rank >= 4),
    "E": (_type_e, lambda rank: rank in (6, 7, 8)),
    "F": (_type_f, lambda rank: rank == 4),
    "G": (_type_g, lambda rank: rank == 2),
}


def _symmetrizer(cartan: np.ndarray) -> tuple:
    # Propagate d_j = d_i a_ij / a_ji along the connected Dynkin diagram
    rank = len(cartan)
    d = [None] * rank
    d[0] = Fraction(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(rank):
            if i != j and cartan[i, j] != 0 and d[j] is None:
                d[j] = d[i] * int(cartan[i, j]) / int(cartan[j, i])
                stack.append(j)
    denominators = reduce(lambda a, b: a * b // gcd(a, b), (x.denominator for x in d))
    scaled = [int(x * denominators) for x in d]
    common = reduce(gcd, scaled)
    return tuple(x // common for x in scaled)


class FiniteRootSystem:
    """
    Finite root system of type A-G: Cartan matrix, symmetrizer and positive roots.

    Letters are numbered after Kac's affine Dynkin diagrams; in particular
    G_2 has alpha_1 long and E_6 has its branch node at 3.
    """

    def __init__(self, root_type: str, rank: int):
        root_type = root_type.upper()
        if root_type not in cartan_builders:
            raise ValueError(f"Unknown root system type '{root_type}'.")
        builder, valid = cartan_builders[root_type]
        if not valid(rank):
            raise ValueError(f"Invalid rank {rank} for type {root_type}.")

        self.type = root_type
        self.rank = rank
        self.cartan = builder(rank)
        self.symmetrizer = self._check_symmetrizer(_symmetrizer(self.cartan))
        # Symmetric bilinear form (alpha_i, alpha_j) = d_i a_ij
        self.form = np.diag(self.symmetrizer) @ self.cartan
        self._cartan_rows = [tuple(int(x) for x in row) for row in self.cartan]
        self._form_rows = [tuple(int(x) for x in row) for row in self.form]

        self.positive_roots = self._generate_positive_roots()
        self.root_set = frozenset(self.positive_roots)
        self.theta = max(self.positive_roots, key=sum)

    def __repr__(self):
        return f"FiniteRootSystem({self.type}{self.rank})"

    def _check_symmetrizer(self, d: tuple) -> tuple:
        sym = np.diag(d) @ self.cartan
        if not np.array_equal(sym, sym.T):
            raise RuntimeError(
                f"Cartan matrix of {self.type}{self.rank} is not symmetrizable."
            )
        return d

    def coroot_pairing(self, beta, i: int) -> int:
        """
        <beta, alpha_i^vee> for a classical vector beta.
        """
        return sum(a * b for a, b in zip(self._cartan_rows[i], beta))

    def _generate_positive_roots(self) -> list:
        # Grow alpha_i-strings by height: beta + alpha_i is a root iff q > 0
        simple = [
            tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank)
        ]
        roots = list(simple)
        known = set(roots)
        layer = list(simple)
        while layer:
            next_layer = []
            for beta in layer:
                for i in range(self.rank):
                    p = 0
                    lower = list(beta)
                    while True:
                        lower[i] -= 1
                        if tuple(lower) not in known:
                            break
                        p += 1
                    q = p - self.coroot_pairing(beta, i)
                    if q > 0:
                        higher = tuple(b + (j == i) for j, b in enumerate(beta))
                        if higher not in known:
                            known.add(higher)
                            next_layer.append(higher)
            roots.extend(sorted(next_layer))
            layer = next_layer
        return roots

    def is_root(self, beta) -> bool:
        """
        Membership in the classical root system, positive or negative.
        """
        beta = tuple(beta)
        return beta in self.root_set or tuple(-b for b in beta) in self.root_set

    def inner(self, u, v) -> int:
        """
        The invariant form (u, v) on classical vectors; short roots have length 2.
        """
        return sum(
            u[i] * sum(r * x for r, x in zip(row, v))
            for i, row in enumerate(self._form_rows)
        )

    def coroot(self, beta) -> tuple:
        """
        beta^vee in simple-coroot coordinates.

        Raises:
            ValueError: If beta is not a root.
        """
        if not self.is_root(beta):
            raise ValueError(f"{tuple(beta)} is not a root of {self.type}{self.rank}.")
        length = self.inner(beta, beta)
        return tuple(
            Fraction(n * 2 * self.symmetrizer[i], length) for i, n in enumerate(beta)
        )

    def pair_with_coroot_vector(self, beta, h) -> Fraction:
        """
        <beta, h> for h given in simple-coroot coordinates.
        """
        return sum(
            (h_i * self.coroot_pairing(beta, i) for i, h_i in enumerate(h)), Fraction(0)
        )


@dataclass(frozen=True)
class ExtRoot:
    """
    An extended affine root: a real root, or the slot (k delta, i) of an imaginary one.
    """

    degree: tuple
    slot: Optional[int] = None

    @property
    def is_real(self) -> bool:
        return self.slot is None

    @property
    def height(self) -> int:
        return sum(self.degree)

    def __str__(self):
        if self.slot is None:
            return "[" + ",".join(map(str, self.degree)) + "]"
        return f"({self.degree[0]}d,{self.slot})"


def primitive(vector) -> tuple:
    """
    Scale a rational vector to the primitive integer vector with positive leading entry.
    """
    vector = [Fraction(x) for x in vector]
    if not any(vector):
        raise ValueError("The zero vector has no direction.")
    lcm = reduce(lambda a, b: a * b // gcd(a, b), (x.denominator for x in vector))
    ints = [int(x * lcm) for x in vector]
    common = reduce(gcd, (abs(x) for x in ints if x))
    sign = 1 if next(x for x in ints if x) > 0 else -1
    return tuple(sign * x // common for x in ints)


def ext_order(root: ExtRoot) -> tuple:
    """
    Sort key: height, reals before slots, degree vector, slot index.
    """
    return root.height, not root.is_real, root.degree, root.slot or 0


class AffineSystem:
    """
    Untwisted affinization of a finite root system together with an order on
    the letters 0, 1, ..., rank.

    Degree vectors are tuples over (alpha_0, alpha_1, ..., alpha_n); alpha_0
    stands for (-theta, 1) in the loop realization.
    """

    def __init__(self, finite: FiniteRootSystem, order: AlphabetOrder):
        if order.size != finite.rank + 1:
            raise ValueError(
                f"Order {order} has {order.size} letters, expected {finite.rank + 1}."
            )
        self.finite = finite
        self.order = order
        self.rank = finite.rank
        self.delta = (1,) + tuple(finite.theta)
        self.delta_height = sum(self.delta)
        self.zero = (0,) * (self.rank + 1)

        # Real roots of height below |delta|: classical positive roots and delta - beta
        self.base_real = sorted(
            [(0,) + beta for beta in finite.positive_roots]
            + [self.sub(self.delta, (0,) + beta) for beta in finite.positive_roots],
            key=lambda v: (sum(v), v),
        )
        logger.debug(f"Built {self.descriptor} with delta {self.delta}")

    @classmethod
    def build(cls, root_type: str, rank: int, order=None) -> "AffineSystem":
        finite = FiniteRootSystem(root_type, rank)
        if order is None:
            order = list(range(rank + 1))
        if not isinstance(order, AlphabetOrder):
            if isinstance(order, str):
                order = AlphabetOrder.parse(order)
            else:
                order = AlphabetOrder(order)
        return cls(finite, order)

    @classmethod
    def from_descriptor(cls, text: str) -> "AffineSystem":
        """
        Build a system from "<Type><rank>:<order>", e.g. "G2:1,2,0".
        """
        try:
            name, order = text.split(":")
            root_type, rank = name[0], int(name[1:])
        except ValueError:
            raise ValueError(f"Malformed system descriptor '{text}'.")
        return cls.build(root_type, rank, AlphabetOrder.parse(order))

    @property
    def descriptor(self) -> str:
        return f"{self.finite.type}{self.rank}:{self.order}"

    @property
    def letters(self) -> int:
        return self.rank + 1

    # ----- Degree arithmetic -----

    @staticmethod
    def add(u, v) -> tuple:
        return tuple(a + b for a, b in zip(u, v))

    @staticmethod
    def sub(u, v) -> tuple:
        return tuple(a - b for a, b in zip(u, v))

    def shift(self, v, k: int) -> tuple:
        """
        v + k delta.
        """
        return tuple(a + k * d for a, d in zip(v, self.delta))

    def simple(self, i: int) -> tuple:
        return tuple(int(i == j) for j in range(self.letters))

    def k_delta(self, k: int) -> tuple:
        return tuple(k * d for d in self.delta)

    def mod_delta(self, v) -> tuple:
        """
        Remove as many copies of delta as possible.

        Returns:
            (v - k delta, k) with k maximal such that the difference stays nonnegative.
        """
        k = min(a // d for a, d in zip(v, self.delta))
        k = max(k, 0)
        return self.shift(v, -k), k

    def classical(self, v) -> tuple:
        """
        Classical part of a degree vector, alpha_0 read as -theta.
        """
        return tuple(a - v[0] * t for a, t in zip(v[1:], self.finite.theta))

    def classify(self, v) -> tuple:
        """
        Classify a degree vector as a positive affine root.

        Returns:
            (RootKind, k) where k is the number of deltas removed by mod_delta.
        """
        v = tuple(v)
        if any(a < 0 for a in v):
            return RootKind.NONE, 0
        remainder, k = self.mod_delta(v)
        if not any(remainder):
            return (RootKind.IMAGINARY, k) if k > 0 else (RootKind.NONE, 0)
        if remainder[0] == 0 and remainder[1:] in self.finite.root_set:
            return RootKind.REAL, k
        if remainder[0] == 1:
            beta = self.sub(self.delta, remainder)[1:]
            if beta in self.finite.root_set:
                return RootKind.REAL, k
        return RootKind.NONE, 0

    def is_real(self, v) -> bool:
        return self.classify(v)[0] is RootKind.REAL

    # ----- Extended roots -----

    def slot(self, k: int, i: int) -> ExtRoot:
        if not 1 <= i <= self.rank:
            raise ValueError(f"Slot index {i} outside 1..{self.rank}.")
        return ExtRoot(self.k_delta(k), i)

    def expand(self, v) -> list:
        """
        The extended roots of a degree: itself if real, its rank slots if imaginary.
        """
        kind, k = self.classify(v)
        if kind is RootKind.REAL:
            return [ExtRoot(tuple(v))]
        if kind is RootKind.IMAGINARY:
            return [self.slot(k, i) for i in range(1, self.rank + 1)]
        return []

    def real_roots_below(self, v) -> list:
        """
        Real roots whose degree is componentwise at most v.
        """
        found = []
        for base in self.base_real:
            shifted = base
            while all(a <= b for a, b in zip(shifted, v)):
                found.append(shifted)
                shifted = self.shift(shifted, 1)
        return found

    def decompositions(self, alpha: ExtRoot) -> list:
        """
        All unordered splittings of alpha into two positive extended roots.

        Imaginary members are expanded into their slots. For imaginary alpha
        only real/real splittings are returned.

        Returns:
            A list of (ExtRoot, ExtRoot) pairs.
        """
        target = alpha.degree
        pairs = []
        degrees = self.real_roots_below(target)
        if alpha.is_real:
            top = self.mod_delta(target)[1]
            degrees += [self.k_delta(k) for k in range(1, top + 1)]
        seen = set()
        for first in degrees:
            second = self.sub(target, first)
            if not any(second) or (second, first) in seen:
                continue
            kind, _ = self.classify(second)
            if kind is RootKind.NONE:
                continue
            if not alpha.is_real and kind is not RootKind.REAL:
                continue
            seen.add((first, second))
            for left in self.expand(first):
                for right in self.expand(second):
                    pairs.append((left, right))
        return pairs

    def enumerate_ext(self, max_k: int) -> list:
        """
        Every extended root of height at most max_k |delta|, by ascending height.

        Ties: lexicographic on degree vectors, reals before slots, slots ascending.
        """
        if max_k < 1:
            raise ValueError(f"max_k must be at least 1, got {max_k}.")
        bound = self.k_delta(max_k)
        roots = [ExtRoot(v) for v in self.real_roots_below(bound)]
        roots += [
            self.slot(k, i)
            for k in range(1, max_k + 1)
            for i in range(1, self.rank + 1)
        ]
        return sorted(roots, key=ext_order)

    # ----- Pairings -----

    def pairing(self, u, v) -> int:
        """
        The invariant form on degree vectors; delta is isotropic.
        """
        return self.finite.inner(self.classical(u), self.classical(v))

    def coroot(self, beta) -> tuple:
        return self.finite.coroot(beta)

    def coroot_direction(self, v) -> tuple:
        """
        Primitive direction of the coroot of the classical part of a real degree.
        """
        return primitive(self.coroot(self.classical(v)))

    def smallest_once(self) -> Optional[int]:
        """
        The smallest letter, if its coefficient in delta is 1.
        """
        letter = self.order.smallest
        return letter if self.delta[letter] == 1 else None

    def __repr__(self):
        return f"AffineSystem({self.descriptor})"
