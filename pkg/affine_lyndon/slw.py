import logging
import os
from dataclasses import dataclass, field

from tqdm import tqdm

from affine_lyndon.chevalley import ChevalleyAlgebra
from affine_lyndon.liealg import DirectionSpan, LoopAlgebra
from affine_lyndon.models import CachedWord, CacheFile, SystemDescriptor
from affine_lyndon.rootsystem import AffineSystem, ExtRoot, RootKind, ext_order
from affine_lyndon.words import (
    AlphabetOrder,
    Ordering,
    Word,
    compare,
    is_lyndon,
    iter_lyndon_words,
)


logger = logging.getLogger(__name__)

algebras = {
    "scalar-free": LoopAlgebra,
    "chevalley": ChevalleyAlgebra,
}


@dataclass
class FlagLevel:
    """
    The imaginary words SL_1(k delta) > ... > SL_n(k delta) and their flag.

    spans[i] is S_i, the span of the first i directions; spans[0] is zero.
    """

    k: int
    words: list = field(default_factory=list)
    directions: list = field(default_factory=list)
    spans: list = field(default_factory=lambda: [DirectionSpan()])

    def add(self, word: Word, direction: tuple) -> bool:
        span = self.spans[-1].snapshot()
        if not span.try_extend(direction):
            return False
        self.words.append(word)
        self.directions.append(direction)
        self.spans.append(span)
        return True

    def level_of(self, direction: tuple) -> int:
        """
        The index i with direction in S_i but not in S_{i-1}.
        """
        for i, span in enumerate(self.spans):
            if span.contains(direction):
                return i
        raise ValueError(
            f"Direction {direction} is outside the flag at level {self.k}."
        )


class SLTable:
    """
    Affine standard Lyndon words of one system and order, computed by height.

    Real roots get the largest concatenation SL(g1)SL(g2) over splittings with
    nonzero bracket; the slots of k delta get the largest words among
    real/real concatenations whose bracketings are linearly independent.

    Parameters:
        system: The affine root system with its letter order.
        algebra: Name of the bracket model ("scalar-free" or "chevalley").
        factorization: Recursion used by the bracketing ("costandard" or "standard").
        progress: Show a tqdm progress bar while generating.
    """

    def __init__(
        self,
        system: AffineSystem,
        algebra: str = "scalar-free",
        factorization: str = "costandard",
        progress: bool = False,
    ):
        if algebra not in algebras:
            raise ValueError(f"Unknown algebra model '{algebra}'.")
        self.system = system
        self.order = system.order
        self.factorization = factorization
        self.algebra = algebras[algebra](system, factorization=factorization)
        self.progress = progress
        self.words = {}
        self.elements = {}
        self.flags = {}
        self.watermark_k = 0

    def __repr__(self):
        return f"SLTable({self.system.descriptor}, k<={self.watermark_k})"

    # ----- Generation -----

    def generate_up_to(self, max_k: int) -> "SLTable":
        """
        Compute every extended root of height at most max_k |delta|.

        Idempotent; an existing table is only extended.
        """
        if max_k <= self.watermark_k:
            return self
        pending = [
            root for root in self.system.enumerate_ext(max_k) if root not in self.words
        ]
        progress = tqdm(pending, desc=self.system.descriptor, disable=not self.progress)
        for root in progress:
            if root in self.words:
                continue
            if root.is_real:
                self._store(root, self.sl_real(root))
            else:
                k = root.degree[0]
                for i, word in enumerate(self.sl_imaginary(k), start=1):
                    self._store(self.system.slot(k, i), word)
                logger.debug(f"Flag at level {k} complete for {self.system.descriptor}")
        self.watermark_k = max_k
        logger.info(
            f"Generated {len(self.words)} words for {self.system.descriptor} "
            f"up to {max_k}d"
        )
        return self

    def _store(self, root: ExtRoot, word: Word):
        self.words[root] = word
        self.elements[root] = self.algebra.standard_bracketing(word)

    def sl_real(self, root: ExtRoot) -> Word:
        """
        SL of a real root from the already computed lower heights.

        Raises:
            RuntimeError: If no splitting has a nonzero bracket.
        """
        if root.height == 1:
            return Word([root.degree.index(1)], self.order)
        best = None
        for left, right in self.system.decompositions(root):
            u, v = self.words[left], self.words[right]
            if u == v:
                continue
            if v < u:
                left, right, u, v = right, left, v, u
            if best is not None and (u + v) <= best:
                continue
            if self.algebra.is_zero(
                self.algebra.bracket(self.elements[left], self.elements[right])
            ):
                continue
            best = u + v
        if best is None:
            raise RuntimeError(f"No standard Lyndon candidate for {root}.")
        if not is_lyndon(best) or best.degree() != root.degree:
            raise RuntimeError(
                f"Candidate '{best}' for {root} is not a Lyndon word of that degree."
            )
        return best

    def sl_imaginary(self, k: int) -> list:
        """
        SL_1(k delta) > ... > SL_n(k delta) and the flag they span.

        Raises:
            RuntimeError: If fewer than rank candidates are independent.
        """
        level = FlagLevel(k)
        candidates = set()
        for left, right in self.system.decompositions(self.system.slot(k, 1)):
            u, v = self.words[left], self.words[right]
            candidates.add(u + v if u < v else v + u)
        for word in sorted(candidates, key=lambda w: w.key, reverse=True):
            element = self.algebra.standard_bracketing(word)
            if self.algebra.is_zero(element):
                continue
            if not self.algebra.is_cartan(element):
                raise RuntimeError(f"Bracketing of '{word}' is not in the Cartan part.")
            level.add(word, self.algebra.direction(element))
            if len(level.words) == self.system.rank:
                break
        if len(level.words) < self.system.rank:
            raise RuntimeError(
                f"Only {len(level.words)} independent imaginary words at level {k}."
            )
        self.flags[k] = level
        return list(level.words)

    # ----- Queries -----

    def _require(self, root: ExtRoot):
        if root not in self.words:
            raise ValueError(
                f"Root {root} has not been computed (watermark {self.watermark_k}d)."
            )

    def sl(self, root: ExtRoot) -> Word:
        self._require(root)
        return self.words[root]

    def sl_of(self, degree) -> Word:
        """
        SL of a real degree vector.
        """
        return self.sl(ExtRoot(tuple(degree)))

    def slot(self, k: int, i: int) -> Word:
        return self.sl(self.system.slot(k, i))

    def element(self, root: ExtRoot):
        self._require(root)
        return self.elements[root]

    def has(self, root: ExtRoot) -> bool:
        return root in self.words

    def has_degree(self, degree) -> bool:
        return ExtRoot(tuple(degree)) in self.words

    def chain(self, beta) -> list:
        """
        SL(beta + k delta) for k = 0, 1, ... up to the watermark.

        Raises:
            ValueError: If beta is not a real root below delta.
        """
        beta = tuple(beta)
        kind, k = self.system.classify(beta)
        if kind is not RootKind.REAL or k != 0:
            raise ValueError(f"{beta} is not a real root of height below |delta|.")
        words = []
        degree = beta
        while self.has_degree(degree):
            words.append(self.sl_of(degree))
            degree = self.system.shift(degree, 1)
        return words

    def ext_compare(self, a: ExtRoot, b: ExtRoot) -> Ordering:
        return compare(self.sl(a), self.sl(b))

    # ----- Cache -----

    def to_cache(self) -> CacheFile:
        ordered = sorted(self.words, key=ext_order)
        finite = self.system.finite
        return CacheFile(
            system=SystemDescriptor(
                type=finite.type, rank=finite.rank, order=list(self.order.letters)
            ),
            delta=list(self.system.delta),
            watermark_k=self.watermark_k,
            factorization=self.factorization,
            words=[
                CachedWord(
                    degree=list(r.degree), imagslot=r.slot, word=str(self.words[r])
                )
                for r in ordered
            ],
        )

    def save(self, path: str) -> str:
        """
        Write the table as JSON.
        """
        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(path, "w") as file:
            file.write(self.to_cache().model_dump_json(indent=2))
        logger.info(f"Saved {len(self.words)} words to {path}")
        return path

    @classmethod
    def from_cache(cls, cache: CacheFile, algebra: str = "scalar-free") -> "SLTable":
        """
        Rebuild a table from its cache; bracketings and flags are recomputed.

        Raises:
            ValueError: If a cached word has the wrong degree or the flags collapse.
        """
        system = AffineSystem.build(
            cache.system.type, cache.system.rank, AlphabetOrder(cache.system.order)
        )
        table = cls(system, algebra=algebra, factorization=cache.factorization.value)
        for entry in cache.words:
            root = ExtRoot(tuple(entry.degree), entry.imagslot)
            word = Word.parse(entry.word, system.order)
            if word.degree() != root.degree:
                raise ValueError(f"Cached word '{word}' does not have degree {root}.")
            table._store(root, word)
            if not root.is_real:
                k = root.degree[0]
                level = table.flags.setdefault(k, FlagLevel(k))
                direction = table.algebra.direction(table.elements[root])
                if not level.add(word, direction):
                    raise ValueError(f"Cached imaginary word '{word}' is dependent.")
        table.watermark_k = cache.watermark_k
        return table

    @classmethod
    def load(cls, path: str, algebra: str = "scalar-free") -> "SLTable":
        """
        Raises:
            FileNotFoundError: If the cache file does not exist.
        """
        if not os.path.exists(path):
            raise FileNotFoundError(f"Cache file {path} was not found.")
        with open(path) as file:
            cache = CacheFile.model_validate_json(file.read())
        return cls.from_cache(cache, algebra=algebra)


def build_table(
    system: AffineSystem,
    max_k: int,
    algebra: str = "scalar-free",
    factorization: str = "costandard",
    progress: bool = False,
) -> SLTable:
    return SLTable(system, algebra, factorization, progress).generate_up_to(max_k)


def brute_force_table(
    system: AffineSystem, max_k: int, algebra: str = "scalar-free"
) -> dict:
    """
    Re-derive SL words from all Lyndon words of each degree.

    For a real root the word is the largest Lyndon word with nonzero
    bracketing; for k delta the largest words with independent bracketings.

    Returns:
        A map from extended roots to words.
    """
    model = algebras[algebra](system)
    words = {}
    for root in system.enumerate_ext(max_k):
        if root in words:
            continue
        candidates = iter_lyndon_words(root.degree, system.order, descending=True)
        if root.is_real:
            words[root] = next(
                w for w in candidates if not model.is_zero(model.standard_bracketing(w))
            )
            continue
        k = root.degree[0]
        span = DirectionSpan()
        selected = []
        for word in candidates:
            element = model.standard_bracketing(word)
            if model.is_zero(element):
                continue
            if span.try_extend(model.direction(element)):
                selected.append(word)
                if len(selected) == system.rank:
                    break
        for i, word in enumerate(selected, start=1):
            words[system.slot(k, i)] = word
    return words
