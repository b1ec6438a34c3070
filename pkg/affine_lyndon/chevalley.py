import logging
from dataclasses import dataclass

import numpy as np

from affine_lyndon.liealg import ZERO, Zero
from affine_lyndon.rootsystem import AffineSystem
from affine_lyndon.words import Word, costandard_split, is_lyndon


logger = logging.getLogger(__name__)


def _unit(size: int, row: int, col: int, scale: int = 1) -> np.ndarray:
    # 1-indexed matrix unit E[row, col], mapping v_col to v_row
    matrix = np.zeros((size, size), dtype=np.int64)
    matrix[row - 1, col - 1] = scale
    return matrix


def _type_a_generators(rank: int) -> tuple:
    size = rank + 1
    e = [_unit(size, i, i + 1) for i in range(1, rank + 1)]
    f = [_unit(size, i + 1, i) for i in range(1, rank + 1)]
    return e, f


def _type_g_generators(rank: int) -> tuple:
    # 7-dimensional representation; weights of v_1..v_7 are
    # a1+2a2, a1+a2, a2, 0, -a2, -a1-a2, -a1-2a2
    e1 = _unit(7, 2, 3) + _unit(7, 5, 6)
    f1 = _unit(7, 3, 2) + _unit(7, 6, 5)
    e2 = _unit(7, 1, 2) + _unit(7, 3, 4, 2) + _unit(7, 4, 5) + _unit(7, 6, 7)
    f2 = _unit(7, 2, 1) + _unit(7, 4, 3) + _unit(7, 5, 4, 2) + _unit(7, 7, 6)
    return [e1, e2], [f1, f2]


representations = {
    "A": _type_a_generators,
    "G": _type_g_generators,
}


@dataclass(frozen=True, eq=False)
class MatrixLoop:
    matrix: np.ndarray
    tdeg: int

    def __str__(self):
        return f"{self.matrix.tolist()}t^{self.tdeg}"


class ChevalleyAlgebra:
    """
    Full-scalar loop algebra on a matrix representation, for types A and G only.

    e_i acts by its Chevalley matrix at t^0 and e_0 by a root vector of -theta
    at t^1. It serves as an independent check of the scalar-free model.
    """

    name = "chevalley"

    def __init__(self, system: AffineSystem, factorization: str = "costandard"):
        root_type = system.finite.type
        if root_type not in representations:
            raise ValueError(f"No matrix representation for type {root_type}.")
        if factorization != "costandard":
            raise ValueError("The matrix model only supports the costandard recursion.")
        self.system = system
        self.factorization = factorization
        self.e, self.f = representations[root_type](system.rank)
        self.lowest = self._root_vector(system.finite.theta, self.f)
        self._memo = {}

    def _root_vector(self, beta: tuple, generators: list) -> np.ndarray:
        """
        Iterated bracket of generators along a path of simple roots to beta.
        """
        finite = self.system.finite
        beta = list(beta)
        path = []
        while sum(beta) > 1:
            i = next(
                i
                for i in range(finite.rank)
                if beta[i] > 0
                and tuple(b - (j == i) for j, b in enumerate(beta)) in finite.root_set
            )
            path.append(i)
            beta[i] -= 1
        vector = generators[beta.index(1)]
        for i in reversed(path):
            vector = generators[i] @ vector - vector @ generators[i]
        if not vector.any():
            raise RuntimeError(f"Root vector for {tuple(beta)} vanished.")
        return vector

    def generator(self, letter: int):
        if letter == 0:
            return MatrixLoop(self.lowest, 1)
        return MatrixLoop(self.e[letter - 1], 0)

    def bracket(self, x, y):
        if isinstance(x, Zero) or isinstance(y, Zero):
            return ZERO
        matrix = x.matrix @ y.matrix - y.matrix @ x.matrix
        if not matrix.any():
            return ZERO
        return MatrixLoop(matrix, x.tdeg + y.tdeg)

    def standard_bracketing(self, word: Word):
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
            cut = costandard_split(key)
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
        if isinstance(x, Zero):
            return False
        matrix = x.matrix
        return not (matrix - np.diag(np.diag(matrix))).any()

    @staticmethod
    def direction(x) -> tuple:
        return tuple(int(a) for a in np.diag(x.matrix))
