import logging
from dataclasses import dataclass
from fractions import Fraction

from affine_lyndon.rootsystem import AffineSystem
from affine_lyndon.words import (
    Word,
    costandard_split,
    is_lyndon,
    standard_split,
)


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Zero:
    def __str__(self):
        return "0"


@dataclass(frozen=True)
class RealVec:
    """
    e_root t^tdeg, recorded up to a nonzero scalar.
    """

    root: tuple
    tdeg: int

    def __str__(self):
        return f"e[{','.join(map(str, self.root))}]t^{self.tdeg}"


@dataclass(frozen=True)
class CartanVec:
    """
    h t^tdeg for h a primitive integer direction in simple-coroot coordinates.
    """

    direction: tuple
    tdeg: int

    def __str__(self):
        return f"h[{','.join(map(str, self.direction))}]t^{self.tdeg}"


ZERO = Zero()

FACTORIZATIONS = {
    "costandard": costandard_split,
    "standard": standard_split,
}


class LoopAlgebra:
    """
    Scalar-free model of the positive part of g (x) C[t].

    Every bracket of generators lands in a one-dimensional real root space or
    in h t^k as a multiple of a single coroot, so an element is stored as its
    root (or coroot direction) and t-degree only.
    """

    name = "scalar-free"

    def __init__(self, system: AffineSystem, factorization: str = "costandard"):
        if factorization not in FACTORIZATIONS:
            raise ValueError(f"Unknown factorization '{factorization}'.")
        self.system = system
        self.finite = system.finite
        self.factorization = factorization
        self._split = FACTORIZATIONS[factorization]
        self._memo = {}

    def generator(self, letter: int):
        if letter == 0:
            return RealVec(tuple(-t for t in self.finite.theta), 1)
        return RealVec(self.system.simple(letter)[1:], 0)

    def bracket(self, x, y):
        """
        Lie bracket of two scalar-free loop elements.

        Raises:
            RuntimeError: If the bracket would produce the central term.
        """
        if isinstance(x, Zero) or isinstance(y, Zero):
            return ZERO
        tdeg = x.tdeg + y.tdeg
        if isinstance(x, RealVec) and isinstance(y, RealVec):
            total = tuple(a + b for a, b in zip(x.root, y.root))
            # opposite roots meet in h t^k
            if not any(total):
                if tdeg < 1:
                    raise RuntimeError(f"Bracket of {x} and {y} hits the center.")
                return CartanVec(self.system.coroot_direction((0,) + x.root), tdeg)
            if self.finite.is_root(total):
                return RealVec(total, tdeg)
            return ZERO
        if isinstance(x, CartanVec) and isinstance(y, CartanVec):
            return ZERO
        # [h t^a, e t^b] is <beta, h> e t^(a+b)
        cartan, real = (x, y) if isinstance(x, CartanVec) else (y, x)
        if self.finite.pair_with_coroot_vector(real.root, cartan.direction) != 0:
            return RealVec(real.root, tdeg)
        return ZERO

    def standard_bracketing(self, word: Word):
        """
        Evaluate b[word] along the costandard (or standard) factorization.

        Parameters:
            word: A Lyndon word over the letters 0..rank.

        Returns:
            ZERO, a RealVec or a CartanVec.

        Raises:
            ValueError: If the word is not Lyndon.
        """
        if not is_lyndon(word):
            raise ValueError(f"Word '{word}' is not Lyndon.")
        return self._evaluate(word.letters, word.key)

    def _evaluate(self, letters: tuple, key: tuple):
        cached = self._memo.get(letters)
        if cached is not None:
            return cached
        if len(letters) == 1:
            value = self.generator(letters[0])
        else:
            cut = self._split(key)
            value = self.bracket(
                self._evaluate(letters[:cut], key[:cut]),
                self._evaluate(letters[cut:], key[cut:]),
            )
        self._memo[letters] = value
        return value

    def pseudo_bracketing(self, u: Word, v: Word):
        return self.bracket(self.standard_bracketing(u), self.standard_bracketing(v))

    @staticmethod
    def is_zero(x) -> bool:
        return isinstance(x, Zero)

    @staticmethod
    def is_cartan(x) -> bool:
        return isinstance(x, CartanVec)

    @staticmethod
    def direction(x) -> tuple:
        """
        The vector whose span the flags track.
        """
        if not isinstance(x, CartanVec):
            raise ValueError(f"{x} is not a Cartan element.")
        return x.direction

    def degree(self, x) -> tuple:
        """
        Degree vector of a nonzero element, alpha_0 = (-theta, 1).
        """
        theta = self.finite.theta
        root = x.root if isinstance(x, RealVec) else (0,) * self.system.rank
        return (x.tdeg,) + tuple(r + x.tdeg * t for r, t in zip(root, theta))


class DirectionSpan:
    """
    Exact span of rational vectors, kept as a reduced row-echelon basis.

    Single-writer: extend it from one thread; snapshots are immutable copies.
    """

    def __init__(self, rows=()):
        self._rows = []
        self._pivots = []
        for row in rows:
            self.try_extend(row)

    @property
    def rank(self) -> int:
        return len(self._rows)

    def _reduce(self, vector) -> list:
        vector = [Fraction(x) for x in vector]
        # rows are 1 at their pivot
        for row, pivot in zip(self._rows, self._pivots):
            if vector[pivot] != 0:
                factor = vector[pivot]
                vector = [a - factor * b for a, b in zip(vector, row)]
        return vector

    def contains(self, vector) -> bool:
        return not any(self._reduce(vector))

    def try_extend(self, vector) -> bool:
        """
        Insert a vector if it is independent of the current span.

        Returns:
            True if the vector was inserted.

        Raises:
            ValueError: If the vector is zero.
        """
        if not any(vector):
            raise ValueError("Cannot extend a span by the zero vector.")
        reduced = self._reduce(vector)
        if not any(reduced):
            return False
        pivot = next(i for i, x in enumerate(reduced) if x != 0)
        reduced = [x / reduced[pivot] for x in reduced]
        # Keep the basis fully reduced
        for index, row in enumerate(self._rows):
            if row[pivot] != 0:
                factor = row[pivot]
                self._rows[index] = [a - factor * b for a, b in zip(row, reduced)]
        self._rows.append(reduced)
        self._pivots.append(pivot)
        return True

    def snapshot(self) -> "DirectionSpan":
        copy = DirectionSpan()
        copy._rows = [list(row) for row in self._rows]
        copy._pivots = list(self._pivots)
        return copy

    def same_span(self, other: "DirectionSpan") -> bool:
        if self.rank != other.rank:
            return False
        return all(self.contains(row) for row in other._rows)
