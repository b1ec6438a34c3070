from enum import IntEnum
from typing import Iterable, Iterator, Optional, Sequence


class Ordering(IntEnum):
    LT = -1
    EQ = 0
    GT = 1


class AlphabetOrder:
    """
    A total order on the letters 0, 1, ..., n-1.

    The order is given as the list of letters from smallest to largest, so
    AlphabetOrder([1, 2, 0]) means 1 < 2 < 0.
    """

    def __init__(self, letters: Sequence[int]):
        letters = [int(letter) for letter in letters]
        if sorted(letters) != list(range(len(letters))):
            raise ValueError(
                f"Order {letters} is not a permutation of 0..{len(letters) - 1}."
            )
        self.letters = tuple(letters)
        self._rank = [0] * len(letters)
        for position, letter in enumerate(letters):
            self._rank[letter] = position

    @classmethod
    def parse(cls, text: str) -> "AlphabetOrder":
        """
        Parse an order written as a comma list ("1,2,0") or a digit string ("120").
        """
        text = text.strip()
        parts = text.split(",") if "," in text else list(text)
        return cls([int(part) for part in parts])

    @property
    def size(self) -> int:
        return len(self.letters)

    @property
    def smallest(self) -> int:
        return self.letters[0]

    def rank(self, letter: int) -> int:
        return self._rank[letter]

    def key(self, letters: Iterable[int]) -> tuple:
        rank = self._rank
        return tuple(rank[letter] for letter in letters)

    def __eq__(self, other):
        return isinstance(other, AlphabetOrder) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __repr__(self):
        return f"AlphabetOrder({'<'.join(map(str, self.letters))})"

    def __str__(self):
        return ",".join(map(str, self.letters))


class Word:
    """
    An immutable word over an ordered alphabet.

    Words compare lexicographically under their order, with a proper prefix
    smaller than the longer word. Comparison works on rank tuples, for which
    Python's tuple ordering has exactly this prefix rule.
    """

    __slots__ = ("letters", "order", "key")

    def __init__(self, letters: Iterable[int], order: AlphabetOrder):
        self.letters = tuple(letters)
        self.order = order
        self.key = order.key(self.letters)

    @classmethod
    def parse(cls, text: str, order: AlphabetOrder) -> "Word":
        """
        Parse the text form: a digit string, or comma-separated ids.
        """
        text = text.strip()
        parts = text.split(",") if "," in text else list(text)
        letters = [int(part) for part in parts if part != ""]
        for letter in letters:
            if letter >= order.size:
                raise ValueError(
                    f"Letter {letter} is outside the alphabet of {order}."
                )
        return cls(letters, order)

    def __len__(self):
        return len(self.letters)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word(self.letters[item], self.order)
        return self.letters[item]

    def __add__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters, self.order)

    def __mul__(self, times: int) -> "Word":
        return Word(self.letters * times, self.order)

    def __eq__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __lt__(self, other: "Word") -> bool:
        return self.key < other.key

    def __le__(self, other: "Word") -> bool:
        return self.key <= other.key

    def __gt__(self, other: "Word") -> bool:
        return self.key > other.key

    def __ge__(self, other: "Word") -> bool:
        return self.key >= other.key

    def __str__(self):
        if self.order.size <= 10:
            return "".join(map(str, self.letters))
        return ",".join(map(str, self.letters))

    def __repr__(self):
        return f"Word('{self}')"

    def degree(self) -> tuple:
        """
        Multiplicity of every letter of the alphabet, in letter order.
        """
        counts = [0] * self.order.size
        for letter in self.letters:
            counts[letter] += 1
        return tuple(counts)

    def startswith(self, prefix: "Word") -> bool:
        return self.letters[: len(prefix)] == prefix.letters

    def endswith(self, suffix: "Word") -> bool:
        start = len(self) - len(suffix)
        return start >= 0 and self.letters[start:] == suffix.letters

    def rotate(self, offset: int) -> "Word":
        """
        Left rotation: the word starting at position offset, wrapped around.
        """
        offset %= max(len(self), 1)
        return Word(self.letters[offset:] + self.letters[:offset], self.order)


def _require_nonempty(w: Word):
    if len(w) == 0:
        raise ValueError("Word operations require a nonempty word.")


def compare(u: Word, v: Word) -> Ordering:
    """
    Compare two words lexicographically.

    The first differing letter decides; if one word is a proper prefix of the
    other, the shorter one is smaller.

    Parameters:
        u: The first word.
        v: The second word.

    Returns:
        Ordering.LT, Ordering.EQ or Ordering.GT.
    """
    for a, b in zip(u.key, v.key):
        if a != b:
            return Ordering.LT if a < b else Ordering.GT
    if len(u) == len(v):
        return Ordering.EQ
    return Ordering.LT if len(u) < len(v) else Ordering.GT


def is_lyndon(w: Word) -> bool:
    """
    Check whether a word is strictly smaller than all of its proper suffixes.

    Raises:
        ValueError: If the word is empty.
    """
    _require_nonempty(w)
    key = w.key
    return all(key < key[i:] for i in range(1, len(key)))


def is_lyndon_cyclic(w: Word) -> bool:
    """
    Check the rotation criterion: w is smaller than every nontrivial rotation.
    """
    _require_nonempty(w)
    key = w.key
    return all(key < key[i:] + key[:i] for i in range(1, len(key)))


def _duval(key: tuple) -> list:
    # Boundaries of the canonical factorization, as (start, end) pairs
    n = len(key)
    i = 0
    bounds = []
    while i < n:
        j, k = i + 1, i
        while j < n and key[k] <= key[j]:
            k = i if key[k] < key[j] else k + 1
            j += 1
        while i <= k:
            bounds.append((i, i + j - k))
            i += j - k
    return bounds


def canonical_factorization(w: Word) -> list:
    """
    Split a word into its non-increasing sequence of Lyndon factors.

    Parameters:
        w: A nonempty word.

    Returns:
        Lyndon words l_1 >= l_2 >= ... >= l_k whose concatenation is w.
    """
    _require_nonempty(w)
    return [w[start:end] for start, end in _duval(w.key)]


def _require_long_lyndon(w: Word):
    if len(w) < 2:
        raise ValueError(
            f"Factorizations need a Lyndon word of length > 1, got '{w}'."
        )
    if not is_lyndon(w):
        raise ValueError(f"Word '{w}' is not Lyndon.")


def costandard_split(key: tuple) -> int:
    """
    Position of the smallest proper suffix, which starts the costandard factor.
    """
    return min(range(1, len(key)), key=lambda i: key[i:])


def lyndon_prefix_ends(key: tuple) -> list:
    """
    Lengths of all Lyndon prefixes of a word, read off a single Duval scan.
    """
    ends = [1]
    k = 0
    for j in range(1, len(key)):
        if key[k] < key[j]:
            k = 0
            ends.append(j + 1)
        elif key[k] == key[j]:
            k += 1
        else:
            break
    return ends


def standard_split(key: tuple) -> int:
    """
    Length of the longest proper Lyndon prefix.
    """
    return max(end for end in lyndon_prefix_ends(key) if end < len(key))


def costandard_factorization(w: Word) -> tuple:
    """
    Split a Lyndon word at its longest proper Lyndon suffix.

    Parameters:
        w: A Lyndon word of length at least 2.

    Returns:
        The pair (w^l, w^r).

    Raises:
        ValueError: If w is not Lyndon or is a single letter.
    """
    _require_long_lyndon(w)
    cut = costandard_split(w.key)
    return w[:cut], w[cut:]


def standard_factorization(w: Word) -> tuple:
    """
    Split a Lyndon word at its longest proper Lyndon prefix.

    Parameters:
        w: A Lyndon word of length at least 2.

    Returns:
        The pair (w^ls, w^rs).

    Raises:
        ValueError: If w is not Lyndon or is a single letter.
    """
    _require_long_lyndon(w)
    cut = standard_split(w.key)
    return w[:cut], w[cut:]


def lyndon_greater_than_word(lyndon: Word, w: Word) -> bool:
    """
    Decide lyndon > w by comparing against the first canonical factor of w only.
    """
    _require_nonempty(lyndon)
    _require_nonempty(w)
    first_start, first_end = _duval(w.key)[0]
    return lyndon.key > w.key[first_start:first_end]


def lyndon_rotation(w: Word) -> Optional[tuple]:
    """
    Find the Lyndon rotation of a word, if there is one.

    Only cuts between canonical factors can produce a Lyndon rotation, so
    those are the only offsets tried.

    Returns:
        (rotated word, offset) with rotated == w.rotate(offset), or None.
    """
    _require_nonempty(w)
    for start, _end in _duval(w.key):
        rotated = w.rotate(start)
        if is_lyndon(rotated):
            return rotated, start
    return None


def iter_lyndon_words(
    counts: Sequence[int], order: AlphabetOrder, descending: bool = False
) -> Iterator[Word]:
    """
    Enumerate every Lyndon word with the given letter multiplicities.

    Words are grown letter by letter while tracking the period of the prefix
    (Duval's invariant), so any prefix that cannot start a Lyndon word is cut
    immediately. All words have the same length, hence depth-first order in
    rank order is lexicographic order.

    Parameters:
        counts: Multiplicity of every letter.
        order: The alphabet order.
        descending: Yield the largest words first.

    Returns:
        An iterator over the Lyndon words of that content.
    """
    length = sum(counts)
    if length == 0:
        return
    letters = list(reversed(order.letters)) if descending else list(order.letters)
    first = next(letter for letter in order.letters if counts[letter] > 0)
    remaining = list(counts)
    remaining[first] -= 1
    prefix = [first]
    ranks = [order.rank(first)]

    def extend(period: int):
        position = len(prefix)
        if position == length:
            if period == length:
                yield Word(prefix, order)
            return
        reference = ranks[position - period]
        for letter in letters:
            if remaining[letter] == 0:
                continue
            rank = order.rank(letter)
            if rank < reference:
                continue
            remaining[letter] -= 1
            prefix.append(letter)
            ranks.append(rank)
            yield from extend(position + 1 if rank > reference else period)
            ranks.pop()
            prefix.pop()
            remaining[letter] += 1

    yield from extend(1)
