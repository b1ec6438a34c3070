import logging
from dataclasses import dataclass
from typing import Optional

from affine_lyndon.liealg import DirectionSpan
from affine_lyndon.models import VerdictReport, Witness
from affine_lyndon.rootsystem import ExtRoot, RootKind, ext_order
from affine_lyndon.slw import SLTable
from affine_lyndon.words import (
    Word,
    canonical_factorization,
    costandard_factorization,
    standard_factorization,
)


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WPair:
    """
    A pair (u, v) of standard Lyndon words with u < v.

    costandard marks pairs where uv is itself a standard Lyndon word and
    (u, v) is its costandard factorization.
    """

    u: Word
    v: Word
    bracketing: object
    costandard: bool = False

    @property
    def concat(self) -> Word:
        return self.u + self.v

    def __str__(self):
        text = f"({self.u}, {self.v})"
        return text + "*" if self.costandard else text


@dataclass(frozen=True)
class Block:
    """
    One token of the block format: a literal chunk, a run of SL_j(delta)
    ("im") or a run of its rotation by r letters ("rot").
    """

    kind: str
    j: int = 0
    r: int = 0
    n: int = 0
    text: str = ""

    @property
    def shape(self) -> tuple:
        return self.kind, self.j, self.r, self.text

    def __str__(self):
        if self.kind == "im":
            return f"[im,{self.j},{self.n}]"
        if self.kind == "rot":
            return f"[{self.j},{self.r},{self.n}]"
        return self.text


class Analyzer:
    """
    Structural queries over a computed SLTable.

    M_k, m_k and membership in C are cached per reduced root, since every
    check asks for them repeatedly.

    Parameters:
        table: A generated SLTable; nothing here extends it.
    """

    def __init__(self, table: SLTable):
        self.table = table
        self.system = table.system
        self.algebra = table.algebra
        self.rank = table.system.rank
        self.sl_words = {word: root for root, word in table.words.items()}
        self._max = {}
        self._min = {}
        self._in_c = {}

    # ----- Basics -----

    def word(self, root: ExtRoot) -> Word:
        return self.table.sl(root)

    def bound(self, bound: Optional[int]) -> int:
        if bound is None:
            return self.table.watermark_k
        if not 1 <= bound <= self.table.watermark_k:
            raise ValueError(
                f"Bound {bound} outside 1..{self.table.watermark_k} for this table."
            )
        return bound

    def roots(self, bound: int, real_only: bool = False) -> list:
        limit = bound * self.system.delta_height
        roots = [
            root
            for root in self.table.words
            if root.height <= limit and (root.is_real or not real_only)
        ]
        return sorted(roots, key=ext_order)

    def reduce(self, degree) -> tuple:
        """
        The representative of height below |delta| of a real root.

        Raises:
            ValueError: If the degree is not a real root.
        """
        degree = tuple(degree)
        kind, _ = self.system.classify(degree)
        if kind is not RootKind.REAL:
            raise ValueError(f"{degree} is not a real root.")
        return self.system.mod_delta(degree)[0]

    def _flag(self, k: int):
        if k not in self.table.flags:
            raise ValueError(f"Level {k} has not been computed.")
        return self.table.flags[k]

    def slot_word(self, k: int, i: int) -> Word:
        return self.table.slot(k, i)

    def nonzero(self, x, y) -> bool:
        return not self.algebra.is_zero(self.algebra.bracket(x, y))

    # ----- M_k, m_k, C, O -----

    def M(self, degree, k: int) -> int:
        """
        Index of the largest slot at level k bracketing nontrivially with the root.

        Raises:
            RuntimeError: If no slot brackets nontrivially.
        """
        beta = self.reduce(degree)
        if (beta, k) not in self._max:
            self._flag(k)
            element = self.table.element(ExtRoot(beta))
            # from SL_1 down
            for i in range(1, self.rank + 1):
                slot = self.table.element(self.system.slot(k, i))
                if self.nonzero(slot, element):
                    self._max[beta, k] = i
                    break
            else:
                raise RuntimeError(f"No slot at level {k} acts on {beta}.")
        return self._max[beta, k]

    def _coroot_bracket(self, beta: tuple, k: int):
        partner = self.system.sub(self.system.k_delta(k), beta)
        return self.algebra.bracket(
            self.table.element(ExtRoot(beta)), self.table.element(ExtRoot(partner))
        )

    def m(self, degree, k: int) -> int:
        """
        Index of the flag step at which the coroot of the root enters.
        """
        beta = self.reduce(degree)
        if (beta, k) not in self._min:
            value = self._coroot_bracket(beta, k)
            if self.algebra.is_zero(value):
                raise RuntimeError(f"[SL({beta}), SL({k}d-{beta})] vanished.")
            direction = self.algebra.direction(value)
            self._min[beta, k] = self._flag(k).level_of(direction)
        return self._min[beta, k]

    def in_c(self, degree, k: int, i: int) -> bool:
        """
        Direct evaluation of both clauses defining C((k delta, i)).
        """
        beta = self.reduce(degree)
        key = (beta, k, i)
        if key not in self._in_c:
            flag = self._flag(k)
            value = self._coroot_bracket(beta, k)
            if self.algebra.is_zero(value) or flag.spans[i - 1].contains(
                self.algebra.direction(value)
            ):
                self._in_c[key] = False
            else:
                element = self.table.element(ExtRoot(beta))
                self._in_c[key] = any(
                    self.nonzero(self.table.element(self.system.slot(k, j)), element)
                    for j in range(1, i + 1)
                )
        return self._in_c[key]

    def C(self, k: int, i: int, bound: Optional[int] = None) -> list:
        """
        Real roots of C((k delta, i)) with height at most bound |delta|.
        """
        limit = self.bound(bound) * self.system.delta_height
        members = []
        for base in self.system.base_real:
            if not self.in_c(base, k, i):
                continue
            degree = base
            while sum(degree) <= limit:
                members.append(ExtRoot(degree))
                degree = self.system.shift(degree, 1)
        return sorted(members, key=lambda r: (r.height, r.degree))

    def O(self, degree, bound: Optional[int] = None) -> list:
        """
        Slots (k delta, i) with k <= bound whose C-set contains the root.
        """
        bound = self.bound(bound)
        return [
            self.system.slot(k, i)
            for k in range(1, bound + 1)
            for i in range(1, self.rank + 1)
            if self.in_c(degree, k, i)
        ]

    def O_level(self, degree, k: int) -> list:
        return [i for i in range(1, self.rank + 1) if self.in_c(degree, k, i)]

    # ----- L and R -----

    def real_splittings(self, root: ExtRoot) -> list:
        """
        Unordered real/real splittings of a root, each as (smaller, larger).
        """
        pairs = []
        for left, right in self.system.decompositions(root):
            if not (left.is_real and right.is_real):
                continue
            if self.word(right) < self.word(left):
                left, right = right, left
            pairs.append((left, right))
        return pairs

    def LR(self, root: ExtRoot) -> tuple:
        """
        The left and right factor sets of an extended root, sorted by word.
        """
        left, right = [], []
        if root.is_real:
            for smaller, larger in self.real_splittings(root):
                left.append(smaller)
                right.append(larger)
            # alpha = (alpha - k delta) + k delta
            k = 1
            while k * self.system.delta_height < root.height:
                rest = ExtRoot(self.system.shift(root.degree, -k))
                slots = [self.system.slot(k, i) for i in self.O_level(root.degree, k)]
                top = self.slot_word(k, self.M(root.degree, k))
                if top < self.word(rest):
                    left.extend(slots)
                    right.append(rest)
                else:
                    left.append(rest)
                    right.extend(slots)
                k += 1
        else:
            k, i = root.degree[0], root.slot
            for member in self.C(k, i, bound=k):
                if member.height >= root.height:
                    continue
                partner = ExtRoot(self.system.sub(root.degree, member.degree))
                if self.word(member) < self.word(partner):
                    left.append(member)
                    right.append(partner)
        return sorted(left, key=self.word_key), sorted(right, key=self.word_key)

    def word_key(self, root: ExtRoot) -> tuple:
        return self.word(root).key

    # ----- Chains -----

    def chain(self, degree, bound: int) -> list:
        beta = self.reduce(degree)
        words = self.table.chain(beta)
        limit = bound * self.system.delta_height
        return [w for w in words if len(w) <= limit]

    def increasing(self, degree, bound: Optional[int] = None) -> bool:
        """
        Raises:
            ValueError: If fewer than two chain members are computed.
        """
        words = self.chain(degree, self.bound(bound))
        if len(words) < 2:
            raise ValueError(f"The chain of {degree} needs at least two members.")
        return words[0] < words[1]

    # ----- W-sets -----

    def pair(self, u: Word, v: Word) -> WPair:
        value = self.algebra.pseudo_bracketing(u, v)
        concat = u + v
        costandard = concat in self.sl_words and costandard_factorization(concat) == (
            u,
            v,
        )
        return WPair(u, v, value, costandard)

    def w_set(self, degree) -> list:
        """
        All pairs (u, v) of SL words with u < v and total degree `degree`,
        by length, then concatenation descending, then u ascending.
        """
        degree = tuple(degree)
        pairs = []
        for first in self.table.words:
            rest = self.system.sub(degree, first.degree)
            if any(a < 0 for a in rest) or not any(rest):
                continue
            for second in self.system.expand(rest):
                if not self.table.has(second):
                    continue
                u, v = self.word(first), self.word(second)
                if u < v:
                    pairs.append(self.pair(u, v))
        # least significant key first
        pairs.sort(key=lambda p: p.u.key)
        pairs.sort(key=lambda p: p.concat.key, reverse=True)
        pairs.sort(key=lambda p: len(p.concat))
        return pairs

    def w_bar_set(self, root: ExtRoot) -> list:
        """
        Every factorization SL(root) = uv into two SL words, by u ascending.
        """
        word = self.word(root)
        pairs = []
        for cut in range(1, len(word)):
            u, v = word[:cut], word[cut:]
            if u in self.sl_words and v in self.sl_words and u < v:
                pairs.append(self.pair(u, v))
        return sorted(pairs, key=lambda p: p.u.key)

    def target_level(self, k: int, concat: Word) -> int:
        """
        max{i : concat <= SL_i(k delta)}, 0 when concat is above SL_1(k delta).
        """
        return sum(
            1 for i in range(1, self.rank + 1) if concat <= self.slot_word(k, i)
        )

    # ----- Block format -----

    def patterns(self, rotations: bool) -> list:
        exact, rotated = [], []
        for j in range(1, self.rank + 1):
            base = self.slot_word(1, j)
            exact.append(("im", j, 0, base.letters))
            if rotations:
                for r in range(1, len(base)):
                    letters = base.rotate(r).letters
                    if letters != base.letters:
                        rotated.append(("rot", j, r, letters))
        return exact + rotated

    def block_format(self, word: Word, rotations: bool = False) -> list:
        """
        Greedy left-to-right parse into literal chunks and runs of delta words.

        The longest run wins; on ties exact SL_j(delta) beats rotations and
        smaller j beats larger.
        """
        patterns = self.patterns(rotations)
        letters = word.letters
        blocks = []
        start = pos = 0
        while pos < len(letters):
            best = None
            for kind, j, r, pattern in patterns:
                n = _run_length(letters, pos, pattern)
                if n and (best is None or n * len(pattern) > best[0]):
                    best = (n * len(pattern), kind, j, r, n)
            if best is None:
                pos += 1
                continue
            if start < pos:
                blocks.append(Block("lit", text=str(word[start:pos])))
            span, kind, j, r, n = best
            blocks.append(Block(kind, j, r, n))
            pos += span
            start = pos
        if start < pos:
            blocks.append(Block("lit", text=str(word[start:pos])))
        return blocks

    def compact(self, blocks: list) -> str:
        """
        Render blocks with runs written out as "(w)*n".
        """
        parts = []
        for block in blocks:
            if block.kind == "lit":
                parts.append(block.text)
                continue
            base = self.slot_word(1, block.j).rotate(block.r)
            parts.append(f"({base})*{block.n}" if block.n > 1 else str(base))
        return " ".join(parts)

    def periodicity(self, degree, rotations: bool = False) -> int:
        """
        Smallest p with chain block templates repeating every p steps.

        Positions k and k + p must share the block shapes, with run lengths
        growing by the same increments along each residue class. The last
        three periods of the computed chain certify p.

        Raises:
            ValueError: If the chain is too short to certify any period.
        """
        words = self.table.chain(self.reduce(degree))
        parsed = [self.block_format(w, rotations) for w in words]
        shapes = [[b.shape for b in blocks] for blocks in parsed]
        counts = [[b.n for b in blocks] for blocks in parsed]
        last = len(words) - 1
        # first k with |beta + k delta| > 2 |delta|
        first = 2
        p = 1
        while last - 3 * p >= first:
            window = range(last - 3 * p, last - p + 1)
            if all(shapes[k + p] == shapes[k] for k in window):
                steps = {
                    k: [b - a for a, b in zip(counts[k], counts[k + p])]
                    for k in window
                }
                if all(steps[k + p] == steps[k] for k in window if k + p in steps):
                    logger.debug(f"Chain of {degree} has period {p}")
                    return p
            p += 1
        raise ValueError(
            f"Insufficient depth to certify a period for {degree} "
            f"(chain of {len(words)} words)."
        )


def _run_length(letters: tuple, pos: int, pattern: tuple) -> int:
    size = len(pattern)
    n = 0
    while letters[pos + n * size : pos + (n + 1) * size] == pattern:
        n += 1
    return n


def format_blocks(blocks: list) -> str:
    return " ".join(str(block) for block in blocks)


# ----- Operations on a table -----


def M_k(alpha, k: int, table: SLTable) -> int:
    return Analyzer(table).M(alpha, k)


def m_k(alpha, k: int, table: SLTable) -> int:
    return Analyzer(table).m(alpha, k)


def set_C(slot: ExtRoot, table: SLTable, bound: Optional[int] = None) -> list:
    return Analyzer(table).C(slot.degree[0], slot.slot, bound)


def set_O(alpha, table: SLTable, bound: Optional[int] = None) -> list:
    return Analyzer(table).O(alpha, bound)


def sets_LR(alpha: ExtRoot, table: SLTable) -> tuple:
    return Analyzer(table).LR(alpha)


def monotonicity(beta, table: SLTable) -> int:
    """
    +1 if the chain of beta increases, -1 if it decreases.
    """
    return 1 if Analyzer(table).increasing(beta) else -1


def w_set(k: int, table: SLTable) -> list:
    analyzer = Analyzer(table)
    return analyzer.w_set(table.system.k_delta(k))


def w_bar_set(root: ExtRoot, table: SLTable) -> list:
    return Analyzer(table).w_bar_set(root)


def w_set_text(pairs: list) -> str:
    return ", ".join(str(pair) for pair in pairs)


def block_format(word: Word, table: SLTable, rotations: bool = False) -> list:
    return Analyzer(table).block_format(word, rotations)


def periodicity(beta, table: SLTable, rotations: bool = False) -> int:
    return Analyzer(table).periodicity(beta, rotations)


def conjecture_witnesses(table: SLTable, i: int, k: int) -> Optional[list]:
    """
    All (j, r) with SL_i(k delta) = SL_i^ls(delta) w^(k-1) SL_i^rs(delta) and
    w = SL_j(delta) rotated left by r, j <= i.

    Returns:
        The witnesses (possibly empty), or None if SL_i(k delta) does not
        have the shape at all.
    """
    top = table.slot(1, i)
    ls, rs = standard_factorization(top)
    word = table.slot(k, i)
    size = len(top)
    middle = word[len(ls) : len(word) - len(rs)]
    if not (
        word.startswith(ls)
        and word.endswith(rs)
        and len(middle) == (k - 1) * size
        and k > 1
    ):
        return None
    w = middle[:size]
    if middle != w * (k - 1) or standard_factorization(word)[0] != ls + middle:
        return None
    return [
        (j, r)
        for j in range(1, i + 1)
        for r in range(size)
        if table.slot(1, j).rotate(r) == w
    ]


# ----- Checks -----


def _witness(note: str, roots=(), words=()) -> Witness:
    return Witness(
        roots=[str(r) for r in roots], words=[str(w) for w in words], note=note
    )


def _report(
    name: str, table: SLTable, bound: int, witnesses: list, evidence: tuple = ()
) -> VerdictReport:
    witnesses = sorted(witnesses, key=lambda w: (w.note, w.roots, w.words))
    report = VerdictReport(
        check=name,
        system=table.system.descriptor,
        bound=bound,
        passed=not witnesses,
        witnesses=witnesses,
        evidence=list(evidence),
    )
    logger.info(f"{name} on {report.system} up to {bound}d: {len(witnesses)} failures")
    return report


def check_convexity(table: SLTable, bound: Optional[int] = None) -> VerdictReport:
    """
    max(L) < alpha < min(R) for every extended root, in both formulations.

    Also checks that the word of max(L) is the left standard factor of
    SL(alpha), and that m_k and M_k sit on the same side of alpha - k delta.
    """
    an = Analyzer(table)
    bound = an.bound(bound)
    found = []
    for root in an.roots(bound):
        if root.height < 2:
            continue
        word = an.word(root)
        left, right = an.LR(root)
        if left and not an.word(left[-1]) < word:
            found.append(_witness("max L not below", [left[-1], root]))
        if right and not word < an.word(right[0]):
            found.append(_witness("min R not above", [root, right[0]]))
        if not left or an.word(left[-1]) != standard_factorization(word)[0]:
            found.append(_witness("max L is not the left standard factor", [root]))
        if not root.is_real:
            continue
        k = 1
        while k * table.system.delta_height < root.height:
            rest = an.word(ExtRoot(table.system.shift(root.degree, -k)))
            top = an.slot_word(k, an.M(root.degree, k))
            bottom = an.slot_word(k, an.m(root.degree, k))
            if (top < rest) != (bottom < rest):
                found.append(_witness(f"M_{k} and m_{k} disagree", [root]))
            k += 1

    # the four comparisons with sums
    for root in an.roots(bound, real_only=True):
        word = an.word(root)
        for smaller, larger in an.real_splittings(root):
            if not an.word(smaller) < word < an.word(larger):
                found.append(_witness("real sum not between", [smaller, larger]))
        for slot in an.O(root.degree, bound):
            k = slot.degree[0]
            total = ExtRoot(table.system.shift(root.degree, k))
            if total.height > bound * table.system.delta_height:
                continue
            low, high = sorted([word, an.word(slot)], key=lambda w: w.key)
            if not low < an.word(total) < high:
                found.append(_witness("sum with O-slot not between", [root, slot]))
    for k in range(1, bound + 1):
        for smaller, larger in an.real_splittings(table.system.slot(k, 1)):
            for i in an.O_level(smaller.degree, k):
                slot = an.slot_word(k, i)
                if not an.word(smaller) < slot < an.word(larger):
                    found.append(
                        _witness(
                            "O-slot not between",
                            [smaller, larger, table.system.slot(k, i)],
                        )
                    )
    return _report("convexity", table, bound, found)


def check_monotonicity(table: SLTable, bound: Optional[int] = None) -> VerdictReport:
    """
    Every chain is strictly monotone; its direction matches alpha vs M_1(alpha),
    alpha vs O(alpha), the opposite chain of delta - alpha and, when the
    smallest letter occurs once in delta, whether alpha contains it.
    """
    an = Analyzer(table)
    bound = an.bound(bound)
    system = table.system
    smallest = system.smallest_once()
    found = []
    for beta in system.base_real:
        words = an.chain(beta, bound)
        if len(words) < 2:
            continue
        rising = words[0] < words[1]
        steps = [a < b for a, b in zip(words, words[1:])]
        if any(step != rising for step in steps):
            found.append(_witness("chain not monotone", [ExtRoot(beta)], words))
        if rising != (words[0] < an.slot_word(1, an.M(beta, 1))):
            found.append(_witness("direction differs from M_1", [ExtRoot(beta)]))
        slots = an.O(beta, bound)
        if rising and not all(words[0] < an.word(s) for s in slots):
            found.append(_witness("increasing but not below O", [ExtRoot(beta)]))
        if not rising and not all(words[0] > an.word(s) for s in slots):
            found.append(_witness("decreasing but not above O", [ExtRoot(beta)]))
        dual = system.sub(system.delta, beta)
        if len(an.chain(dual, bound)) >= 2 and rising == an.increasing(dual, bound):
            found.append(
                _witness("dual chain has the same direction", [ExtRoot(beta)])
            )
        if smallest is not None and rising != (beta[smallest] > 0):
            found.append(_witness("smallest letter rule broken", [ExtRoot(beta)]))
    return _report("monotonicity", table, bound, found)


def check_flag_shift(table: SLTable, bound: Optional[int] = None) -> VerdictReport:
    """
    S_i^(k+1) = S_i^k t, m_k of left standard factors, k-independence of
    M_k and m_k, and O(alpha) at each level being the slots between M_k and m_k.
    """
    an = Analyzer(table)
    bound = an.bound(bound)
    system = table.system
    found = []
    for k in range(1, bound):
        low, high = table.flags[k], table.flags[k + 1]
        for i in range(system.rank + 1):
            if not low.spans[i].same_span(high.spans[i]):
                found.append(_witness(f"S_{i} differs between {k}d and {k + 1}d"))
    for k in range(1, bound + 1):
        for i in range(1, system.rank + 1):
            slot = system.slot(k, i)
            ls, _ = standard_factorization(an.slot_word(k, i))
            if an.m(ls.degree(), k) != i:
                found.append(_witness("m_k of left standard factor", [slot], [ls]))
            if k == bound:
                continue
            lifted, _ = standard_factorization(an.slot_word(k + 1, i))
            if an.m(lifted.degree(), k) != i:
                found.append(
                    _witness("m_k of next left standard factor", [slot], [lifted])
                )
    for beta in system.base_real:
        root = ExtRoot(beta)
        top, bottom = an.M(beta, 1), an.m(beta, 1)
        for k in range(1, bound + 1):
            if an.M(beta, k) != top or an.m(beta, k) != bottom:
                found.append(_witness(f"M/m at level {k} differ", [root]))
            segment = list(range(an.M(beta, k), an.m(beta, k) + 1))
            if an.O_level(beta, k) != segment:
                found.append(_witness(f"O at level {k} not segmental", [root]))
    return _report("flags", table, bound, found)


def check_imaginary_structure(
    table: SLTable, bound: Optional[int] = None
) -> VerdictReport:
    """
    Statements on the imaginary words SL_i(k delta) and their factors.
    """
    an = Analyzer(table)
    bound = an.bound(bound)
    system = table.system
    imaginary = {w for r, w in table.words.items() if not r.is_real}
    found = []
    for k in range(1, bound + 1):
        for i in range(1, system.rank + 1):
            slot = system.slot(k, i)
            word = an.slot_word(k, i)
            ls, _ = standard_factorization(word)
            if k < bound and not an.slot_word(k + 1, i) < word:
                found.append(_witness("not decreasing in k", [slot]))
            if i < system.rank and not an.slot_word(k, i + 1) < ls:
                found.append(_witness("next slot not below left factor", [slot]))
            if any(word[:cut] in imaginary for cut in range(1, len(word))):
                found.append(_witness("imaginary proper prefix", [slot], [word]))
            for cut in range(1, len(word)):
                if word[:cut] in imaginary and word[cut:] in imaginary:
                    found.append(_witness("imaginary/imaginary split", [slot]))
            if k == 1:
                continue
            previous, _ = standard_factorization(an.slot_word(k - 1, i))
            if not ls.startswith(previous) or len(ls) == len(previous):
                found.append(_witness("left factor does not extend", [slot], [ls]))
                continue
            factors = canonical_factorization(ls[len(previous) :])
            if any(len(f) >= system.delta_height for f in factors[1:]):
                found.append(_witness("long canonical factor", [slot], factors))
            is_delta = factors[0].degree() == system.delta
            if (len(factors) == 1) != is_delta:
                found.append(_witness("single factor iff degree delta", [slot]))
            if len(factors) > 1:
                first = factors[0].degree()
                if (
                    len(factors[0]) >= system.delta_height
                    or an.increasing(first, bound)
                    or an.m(first, k) >= i
                ):
                    found.append(_witness("first factor", [slot], factors[:1]))
    return _report("imaginary", table, bound, found)


def _delta_last_letters(an: Analyzer) -> list:
    """
    SL_i^rs(delta) is a single letter, different for every i.
    """
    system = an.system
    found = []
    lasts = set()
    for i in range(1, system.rank + 1):
        top = an.slot_word(1, i)
        _, rs = standard_factorization(top)
        lasts.add(top[-1])
        if len(rs) != 1:
            found.append(_witness("right factor is not a letter", [system.slot(1, i)]))
    if len(lasts) != system.rank:
        found.append(_witness("delta words share a last letter"))
    return found


def check_conjecture(table: SLTable, bound: Optional[int] = None) -> VerdictReport:
    """
    SL_i(k delta) = SL_i^ls(delta) w^(k-1) SL_i^rs(delta) with w a rotation of
    some SL_j(delta), j <= i; w = SL_1(delta) for i = 1. When the smallest
    letter occurs once in delta, also w = SL(M_1(gamma_i)) and the delta words
    end in distinct single letters.

    Every (j, r) found is kept as evidence on the report.
    """
    an = Analyzer(table)
    bound = an.bound(bound)
    system = table.system
    smallest = system.smallest_once()
    found, evidence = [], []
    for i in range(1, system.rank + 1):
        ls, _ = standard_factorization(an.slot_word(1, i))
        for k in range(2, bound + 1):
            slot = system.slot(k, i)
            witnesses = conjecture_witnesses(table, i, k)
            if not witnesses:
                found.append(_witness("no rotation witness", [slot]))
                continue
            w = an.slot_word(k, i)[len(ls) : len(ls) + system.delta_height]
            evidence += [
                _witness(f"w = SL_{j}(d) rotated by {r}", [slot], [w])
                for j, r in witnesses
            ]
            if i == 1 and w != an.slot_word(1, 1):
                found.append(_witness("w differs from SL_1(d)", [slot], [w]))
            if smallest is not None:
                expected = an.slot_word(1, an.M(ls.degree(), 1))
                if w != expected:
                    found.append(_witness("w differs from SL(M_1)", [slot], [w]))
    if smallest is not None:
        found += _delta_last_letters(an)
    return _report("conjecture", table, bound, found, evidence)


def check_wset(table: SLTable, bound: Optional[int] = None) -> VerdictReport:
    """
    Prefix spans of W_{k delta} reproduce the flag, and pairs above SL_i(k delta)
    bracket into S_(i-1).
    """
    an = Analyzer(table)
    bound = an.bound(bound)
    system = table.system
    algebra = table.algebra
    found = []
    for k in range(1, bound + 1):
        flag = table.flags[k]
        # span of the prefix of W_{k delta} read so far
        span = DirectionSpan()
        for n, pair in enumerate(an.w_set(system.k_delta(k)), start=1):
            value = pair.bracketing
            direction = None
            if not algebra.is_zero(value):
                if not algebra.is_cartan(value):
                    found.append(_witness("non-Cartan pseudo-bracketing", [], [pair]))
                    continue
                direction = algebra.direction(value)
                span.try_extend(direction)
            level = an.target_level(k, pair.concat)
            if not span.same_span(flag.spans[level]):
                found.append(
                    _witness(f"prefix {n} at {k}d spans not S_{level}", [], [pair])
                )
            if direction is not None and level < system.rank:
                if not flag.spans[level].contains(direction):
                    note = f"above SL_{level + 1} but outside S_{level}"
                    found.append(_witness(note, [], [pair]))
    return _report("wset", table, bound, found)


def check_bracketing(table: SLTable, bound: Optional[int] = None) -> VerdictReport:
    """
    Pseudo-bracketings of splittings of SL words into SL words, and no shorter
    SL word w with u < w < uv for the standard factorization uv.
    """
    an = Analyzer(table)
    bound = an.bound(bound)
    system = table.system
    algebra = table.algebra
    found = []
    for root in an.roots(bound):
        word = an.word(root)
        if len(word) < 2:
            continue
        pairs = an.w_bar_set(root)
        if not pairs:
            found.append(_witness("no splitting into SL words", [root]))
            continue
        if (pairs[0].u, pairs[0].v) != costandard_factorization(word):
            found.append(_witness("smallest splitting is not costandard", [root]))
        if (pairs[-1].u, pairs[-1].v) != standard_factorization(word):
            found.append(_witness("largest splitting is not standard", [root]))
        for pair in pairs:
            if algebra.is_zero(pair.bracketing):
                found.append(_witness("zero pseudo-bracketing", [root], [pair]))
                continue
            if not root.is_real:
                k = root.degree[0]
                level = table.flags[k].level_of(algebra.direction(pair.bracketing))
                if level != root.slot:
                    note = "splitting in wrong flag step"
                    found.append(_witness(note, [root], [pair]))
                parts = [
                    p.degree() for p in (pair.u, pair.v) if an.sl_words[p].is_real
                ]
                if any(an.m(part, k) != root.slot for part in parts):
                    found.append(_witness("m_k of splitting factor", [root], [pair]))
            for part in (pair.u, pair.v):
                part_root = an.sl_words[part]
                if part_root.is_real:
                    continue
                k = part_root.degree[0]
                if k > 1:
                    found.append(_witness("factor is SL_i(kd), k>1", [root], [part]))
                if root.is_real and part != an.slot_word(k, an.M(root.degree, k)):
                    found.append(_witness("factor is not SL(M_k)", [root], [part]))
        if not root.is_real:
            continue
        element = table.element(root)
        for k in range(1, bound + 1):
            top = system.slot(k, an.M(root.degree, k))
            for pair in an.w_bar_set(top):
                if not an.nonzero(pair.bracketing, element):
                    found.append(
                        _witness("factor bracketing vanishes", [root, top], [pair])
                    )

    # no shorter SL word falls between u and uv, for uv = SL(alpha) split standard
    shorter = sorted((an.word(r) for r in an.roots(bound)), key=len)
    for root in an.roots(bound):
        word = an.word(root)
        if len(word) < 2:
            continue
        u, _ = standard_factorization(word)
        for other in shorter:
            if len(other) >= len(word):
                break
            if (other > u) != (other > word):
                found.append(_witness("shorter word between u and uv", [root], [other]))
    return _report("bracketing", table, bound, found)


def check_addition_rules(table: SLTable, bound: Optional[int] = None) -> VerdictReport:
    """
    M_k/m_k under root addition, parity bounds on sum chains and the chain sum rule.
    """
    an = Analyzer(table)
    bound = an.bound(bound)
    system = table.system
    base = system.base_real
    found = []
    for index, alpha in enumerate(base):
        for beta in base[index + 1 :]:
            total = system.add(alpha, beta)
            if not system.is_real(total):
                continue
            roots = [ExtRoot(alpha), ExtRoot(beta), ExtRoot(total)]
            for k in range(1, bound + 1):
                big_a, big_b, big_s = (an.M(x, k) for x in (alpha, beta, total))
                if big_a != big_b and big_s != min(big_a, big_b):
                    found.append(_witness(f"max rule at {k}d", roots))
                if big_a == big_b and big_s < big_a:
                    found.append(_witness(f"max rule (equal) at {k}d", roots))
                low_a, low_b, low_s = (an.m(x, k) for x in (alpha, beta, total))
                if low_a != low_b and low_s != max(low_a, low_b):
                    found.append(_witness(f"min rule at {k}d", roots))
                if low_a == low_b and low_s > low_a:
                    found.append(_witness(f"min rule (equal) at {k}d", roots))
            if min(len(an.chain(x, bound)) for x in (alpha, beta, total)) < 2:
                continue
            rising = an.increasing(alpha, bound)
            if rising != an.increasing(beta, bound):
                continue
            if an.increasing(total, bound) != rising:
                found.append(_witness("chain sum rule", roots))
            words = an.chain(total, bound)
            for k in range(1, bound + 1):
                if rising:
                    limit = an.slot_word(k, max(an.m(alpha, k), an.m(beta, k)))
                    if not all(w < limit for w in words):
                        found.append(_witness(f"parity bound below at {k}d", roots))
                else:
                    limit = an.slot_word(k, min(an.M(alpha, k), an.M(beta, k)))
                    if not all(w > limit for w in words):
                        found.append(_witness(f"parity bound above at {k}d", roots))
    return _report("addition", table, bound, found)


def check_lifting(table: SLTable, bound: Optional[int] = None) -> VerdictReport:
    """
    Left standard factors of SL_i(k delta): lifting by delta, their height,
    and the monotonicity of their real splittings.
    """
    an = Analyzer(table)
    bound = an.bound(bound)
    system = table.system
    found = []
    for k in range(1, bound + 1):
        for i in range(1, system.rank + 1):
            slot = system.slot(k, i)
            ls, _ = standard_factorization(an.slot_word(k, i))
            if len(ls) <= (k - 1) * system.delta_height:
                found.append(_witness("left factor too short", [slot], [ls]))
            if k > 1:
                previous, _ = standard_factorization(an.slot_word(k - 1, i))
                lifted = table.sl_of(system.shift(previous.degree(), 1))
                if not lifted <= ls:
                    note = "lifted factor too large"
                    found.append(_witness(note, [slot], [lifted, ls]))
            degree = ls.degree()
            for smaller, larger in an.real_splittings(ExtRoot(degree)):
                parts = (smaller.degree, larger.degree)
                if min(len(an.chain(x, bound)) for x in parts) < 2:
                    continue
                rising = [an.increasing(x, bound) for x in parts]
                if not any(rising):
                    note = "both splitting chains decrease"
                    found.append(_witness(note, [slot, smaller, larger]))
                if all(rising):
                    levels = sorted(an.m(x, k) for x in parts)
                    if levels[1] != i or levels[0] >= i:
                        note = "m_k of splitting"
                        found.append(_witness(note, [slot, smaller, larger]))
    return _report("lifting", table, bound, found)


def check_smallest_once(table: SLTable, bound: Optional[int] = None) -> VerdictReport:
    """
    Closed forms available when the smallest letter occurs once in delta;
    passes vacuously otherwise.
    """
    an = Analyzer(table)
    bound = an.bound(bound)
    system = table.system
    smallest = system.smallest_once()
    found = []
    if smallest is None:
        return _report("smallest", table, bound, found)
    found += _delta_last_letters(an)
    for i in range(1, system.rank + 1):
        ls, rs = standard_factorization(an.slot_word(1, i))
        w = an.slot_word(1, an.M(ls.degree(), 1))
        for k in range(1, bound + 1):
            word = an.slot_word(k, i)
            if word != ls + w * (k - 1) + rs:
                found.append(_witness("closed form", [system.slot(k, i)], [word]))
        # chain of delta - gamma_i
        dual = system.sub(system.delta, ls.degree())
        for p, word in enumerate(an.chain(dual, bound)):
            if word != w * p + table.sl_of(dual):
                found.append(_witness("dual chain form", [ExtRoot(dual)], [word]))
    for letter in range(system.letters):
        if letter == smallest:
            continue
        simple = system.simple(letter)
        w = an.slot_word(1, an.M(simple, 1))
        for k, word in enumerate(an.chain(simple, bound)):
            if word != w * k + Word([letter], table.order):
                found.append(_witness("simple root chain", [ExtRoot(simple)], [word]))
    for beta in system.base_real:
        if len(an.chain(beta, bound)) >= 2:
            if an.increasing(beta, bound) != (beta[smallest] > 0):
                found.append(_witness("increasing iff contains", [ExtRoot(beta)]))
    return _report("smallest", table, bound, found)


checks = {
    "convexity": check_convexity,
    "monotonicity": check_monotonicity,
    "flags": check_flag_shift,
    "imaginary": check_imaginary_structure,
    "conjecture": check_conjecture,
    "wset": check_wset,
    "bracketing": check_bracketing,
    "addition": check_addition_rules,
    "lifting": check_lifting,
    "smallest": check_smallest_once,
}


def run_checks(table: SLTable, names: list, bound: Optional[int] = None) -> list:
    """
    Raises:
        ValueError: If a check name is unknown.
    """
    unknown = [name for name in names if name not in checks]
    if unknown:
        raise ValueError(f"Unknown checks: {', '.join(unknown)}.")
    return [checks[name](table, bound) for name in names]
