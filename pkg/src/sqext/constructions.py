"""Explicit witness words and their verification.

Zimin words with the closed form for their potential, the quaternary
word blocked at its last two slots, the front-blocked homomorphic word,
the five-letter suffix-blocked components, and the 35-letter word whose
internal potential hits the record for its length.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

from . import core
from .core import Word

# 2^24 letters is already a 16M-element tuple; past that Word stops being useful
MAX_ZIMIN_MATERIALIZE = 24

# shortest ternary word with no square-free extension at all (25 letters)
SHORTEST_EXTREMAL_TERNARY = core.parse_word("1231213231232123121323123", 3)


def _zimin_bytes(m: int) -> bytes:
    """Z_m as raw bytes (letter i stored as byte value i)."""
    out = b""
    for i in range(1, m + 1):
        out = out + bytes([i]) + out
    return out


def zimin(m: int) -> Word:
    """The m-th Zimin word: Z_1 = 1, Z_m = Z_{m-1} m Z_{m-1}."""
    if m < 1:
        raise ValueError("depth must be at least 1")
    if m > MAX_ZIMIN_MATERIALIZE:
        raise ValueError("depth %d is too large to materialize (2^%d-1 letters)" % (m, m))
    return core.word_from_bytes(_zimin_bytes(m), m)


def zimin_letter(q: int) -> int:
    """Letter of every Zimin word at 1-based position q.

    The letter depends only on q, not on the depth: it is one more than
    the number of trailing zero bits of q.
    """
    if q < 1:
        raise ValueError("positions are 1-based")
    return (q & -q).bit_length()


def zimin_potential_closed(m: int) -> int:
    """Number of square-free extensions of Z_m over the m-letter alphabet.

    Closed recursion: 0, 0, 2 for m <= 3, then 2^m - 2m plus twice the
    previous value.  Matches brute-force counting (see the tests).
    """
    if m < 1:
        raise ValueError("depth must be at least 1")
    value = 0
    for k in range(3, m + 1):
        value = 2 if k == 3 else 2 ** k - 2 * k + 2 * value
    return value


def zimin_insertion_count(m: int) -> int:
    """How many insertions of the letter m into Z_m stay square-free.

    Formula (2^m - 2) - 2(m - 1): every internal slot works except the
    two flanking each copy of a smaller-index peak letter's center.
    """
    if m < 2:
        raise ValueError("needs depth at least 2")
    return (2 ** m - 2) - 2 * (m - 1)


@dataclass(frozen=True)
class Check:
    """One named verification step; detail carries a witness on failure."""

    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class VerificationReport:
    subject: str
    checks: Tuple[Check, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "ok": self.ok,
            "checks": [
                {"name": c.name, "passed": c.passed, "detail": c.detail}
                for c in self.checks
            ],
        }


def _squared_after_insert(word: Word, position: int, letter: int) -> bool:
    """Does inserting `letter` at `position` leave a squared factor behind?

    Works on any word, square-free or not, so failing candidates can
    still be examined.
    """
    data = word.letters[:position] + (letter,) + word.letters[position:]
    return core.find_square(bytes(data)) is not None


def _blocked_slot_check(word: Word, position: int, letters) -> Check:
    alive = [x for x in letters if not _squared_after_insert(word, position, x)]
    names = {len(word): "final slot", len(word) - 1: "penultimate slot"}
    label = names.get(position, "slot %d" % position)
    if alive:
        detail = "letters %s still give square-free words" % ",".join(map(str, alive))
    else:
        detail = ""
    return Check("every letter at the %s creates a square" % label, not alive, detail)


# ---------------------------------------------------------------------------
# The quaternary word with both of its last two slots blocked.

_SEG_A = "1213121"
_SEG_B = "121312"
# fully spelled-out digit string the word is usually quoted as; one letter
# longer than what the recipe below produces, hence both are kept around
_DISPLAYED_BLOCKED = (
    "4231213124121312143121312412131231423121312412131214312131241213121"
)


def _blocked_recipe_parts() -> Tuple[str, str, str, str]:
    a, b = _SEG_A, _SEG_B
    y = "3" + b + "4"
    z = "41" + y + a + "4" + y + b + "341"
    return a, b, y, z


def proposition_s_words() -> Tuple[Word, Word]:
    """Both candidates for the end-blocked quaternary word.

    The first is assembled from the recipe A = 1213121, B = 121312,
    Y = 3B4, Z = 41YA4YB341, S = ZYA4YA (66 letters).  The second is the
    67-letter digit string the word is usually quoted as.  They cannot
    both be right; verify_proposition_s decides.
    """
    a, _, y, z = _blocked_recipe_parts()
    s = z + y + a + "4" + y + a
    return core.parse_word(s, 4), core.parse_word(_DISPLAYED_BLOCKED, 4)


def verify_proposition_s(word: Word) -> VerificationReport:
    """Check a candidate: square-free, and dead at the last two slots."""
    data = bytes(word.letters)
    hit = core.find_square(data)
    detail = "" if hit is None else "square of period %d at offset %d" % (hit[1], hit[0])
    checks = [
        Check("square-free", hit is None, detail),
        _blocked_slot_check(word, len(word), (1, 2, 3, 4)),
        _blocked_slot_check(word, len(word) - 1, (1, 2, 3, 4)),
    ]
    return VerificationReport("end-blocked candidate (%d letters)" % len(word), tuple(checks))


def proposition_s_identities() -> VerificationReport:
    """String identities that expose the squares killing each insertion.

    Writing S = ZYA4YA: appending 4 doubles the YA4 segment; a 4 at the
    penultimate slot turns the tail into 3(B4)(B4)1; a 3 there makes the
    whole word (41YA4YB3)^2 followed by 1.  Appending any of 1, 2, 3 to
    the segment A alone already produces a square.
    """
    a, b, y, z = _blocked_recipe_parts()
    s = z + y + a + "4" + y + a
    checks = [
        Check(
            "appending 4 doubles the YA4 segment",
            s + "4" == z + (y + a + "4") * 2,
        ),
        Check(
            "penultimate 4 leaves a doubled B4 segment",
            z + y + a + "4" + y + b + "41" == z + y + a + "43" + (b + "4") * 2 + "1",
        ),
        Check(
            "penultimate 3 makes the whole prefix a square",
            z + y + a + "4" + y + b + "31" == ("41" + y + a + "4" + y + b + "3") * 2 + "1",
        ),
    ]
    for x in "123":
        hit = core.find_square(bytes(core.parse_word(a + x, 4).letters))
        checks.append(Check("segment A followed by %s has a square" % x, hit is not None))
    return VerificationReport("end-blocked recipe identities", tuple(checks))


# ---------------------------------------------------------------------------
# Front-blocked words from a uniform substitution into a Zimin word.

def theorem5_word(n: int) -> Tuple[List[Word], Word]:
    """Word over n letters that is non-extendable at its first n-1 inner slots.

    Starts with A = 12...n; the rest substitutes the N = (n-1)(n-2)
    internal square-free extensions of A, in a fixed order, for the
    variables of Z_N.  Image list is slot-major: slot j = 1..n-1
    ascending, inserted letter ascending, skipping the two letters
    adjacent to the slot (those would square immediately).
    """
    if not 4 <= n <= 5:
        raise ValueError("only n = 4 and n = 5 materialize to a sane size")
    base = tuple(range(1, n + 1))
    images = []
    for j in range(1, n):
        for e in range(1, n + 1):
            if e == j or e == j + 1:
                continue
            images.append(Word(base[:j] + (e,) + base[j:], n))
    count = (n - 1) * (n - 2)
    if len(images) != count:
        raise AssertionError("image list out of step with its own rule")
    letters = list(base)
    for q in _zimin_bytes(count):
        letters.extend(images[q - 1].letters)
    return images, Word(tuple(letters), n)


def verify_theorem5(images: List[Word], word: Word, t: int) -> VerificationReport:
    """Check the front-blocked word: square-free, slots 1..t all dead."""
    n = word.alphabet_size
    if not 1 <= t < n:
        raise ValueError("t must be between 1 and n-1")
    count = (n - 1) * (n - 2)
    distinct = len(set(im.letters for im in images)) == len(images) == count
    uniform = all(
        len(im) == n + 1 and core.find_square(bytes(im.letters)) is None
        for im in images
    )
    checks = [
        Check(
            "images distinct, square-free, %d of length %d" % (count, n + 1),
            distinct and uniform,
        )
    ]
    hit = core.find_square(bytes(word.letters))
    detail = "" if hit is None else "square of period %d at offset %d" % (hit[1], hit[0])
    checks.append(Check("word square-free", hit is None, detail))
    alive = [
        (j, x)
        for j in range(1, t + 1)
        for x in range(1, n + 1)
        if not _squared_after_insert(word, j, x)
    ]
    checks.append(
        Check(
            "front slots 1..%d all blocked" % t,
            not alive,
            "" if not alive else "surviving insertions: %s" % alive,
        )
    )
    return VerificationReport("front-blocked word (n=%d)" % n, tuple(checks))


# ---------------------------------------------------------------------------
# Suffix-blocked five-letter components.

class LazyWord:
    """Word given by an index rule, for lengths far beyond memory."""

    def __init__(self, total_length: int, alphabet_size: int, rule: Callable[[int], int]):
        self.total_length = total_length
        self.alphabet_size = alphabet_size
        self._rule = rule

    def letter_at(self, index: int) -> int:
        """Letter at a 0-based index; IndexError outside the word."""
        if index < 0 or index >= self.total_length:
            raise IndexError("index %d outside word of length %d" % (index, self.total_length))
        return self._rule(index)

    def segment(self, start: int, stop: int) -> Word:
        """Materialize [start, stop) as an ordinary Word."""
        if not 0 <= start <= stop <= self.total_length:
            raise IndexError("bad segment [%d, %d)" % (start, stop))
        return Word(tuple(self._rule(i) for i in range(start, stop)), self.alphabet_size)


@dataclass(frozen=True)
class SuffixBlockedComponents:
    """Pieces of the five-letter word blocked at its trailing inner slots."""

    base: Word                  # the extremal ternary core A
    suffix: Word                # 4 A 5, the tail the insertions land in
    blocks: Tuple[Word, ...]    # substitution images, one per Zimin variable
    full: LazyWord              # the whole word: substituted Zimin, then the suffix
    report: VerificationReport


def prop6_components(
    A: Word,
    verify_budget: int = 12,
    suffix_square_budget: int = 15,
) -> SuffixBlockedComponents:
    """Build and check the suffix-blocked construction around a ternary core.

    With t = |A|, the suffix is 4A5 and there are 2t-1 blocks of length
    t+3: every insertion of 4 or 5 at the t-1 inner slots of A (slot-major,
    4 before 5), plus 4A45.  The full word substitutes the blocks into the
    Zimin word of depth 2t-1 and appends the suffix; it only exists as a
    LazyWord, so the global square-freeness check is truncated at depth
    `verify_budget` and the squared-tail identity is checked for block
    indexes up to `suffix_square_budget`.
    """
    letters = A.letters
    if A.alphabet_size != 3 or any(x > 3 for x in letters):
        raise ValueError("core word must be ternary")
    if core.find_square(bytes(letters)) is not None:
        raise ValueError("core word must be square-free")
    t = len(letters)
    if t < 2:
        raise ValueError("core word too short to have inner slots")

    suffix = Word((4,) + letters + (5,), 5)
    blocks: List[Word] = []
    for j in range(1, t):
        for e in (4, 5):
            blocks.append(Word((4,) + letters[:j] + (e,) + letters[j:] + (5,), 5))
    blocks.append(Word((4,) + letters + (4, 5), 5))
    block_tuple = tuple(blocks)

    depth = 2 * t - 1
    block_len = t + 3
    skeleton_len = (2 ** depth - 1) * block_len
    block_bytes = [bytes(b.letters) for b in block_tuple]
    suffix_letters = suffix.letters

    def rule(i: int) -> int:
        if i < skeleton_len:
            q, r = divmod(i, block_len)
            return block_bytes[zimin_letter(q + 1) - 1][r]
        return suffix_letters[i - skeleton_len]

    full = LazyWord(skeleton_len + len(suffix_letters), 5, rule)

    checks: List[Check] = []
    checks.append(Check("core word extremal", core.potential(A).AE_value == 0))

    bad_blocks = [i + 1 for i, b in enumerate(block_bytes) if core.find_square(b) is not None]
    checks.append(
        Check(
            "all %d blocks square-free" % len(block_bytes),
            not bad_blocks,
            "" if not bad_blocks else "blocks with squares: %s" % bad_blocks,
        )
    )

    alive_small = [
        (j, c)
        for j in range(1, t)
        for c in (1, 2, 3)
        if not _squared_after_insert(A, j, c)
    ]
    checks.append(
        Check(
            "small letters at inner core slots always square",
            not alive_small,
            "" if not alive_small else "surviving insertions: %s" % alive_small,
        )
    )

    mismatched = []
    for j in range(1, t):
        for k, e in enumerate((4, 5)):
            grown = (4,) + letters[:j] + (e,) + letters[j:] + (5,)
            if grown != block_tuple[2 * (j - 1) + k].letters:
                mismatched.append((j, e))
    if ((4,) + letters + (4, 5)) != block_tuple[-1].letters:
        mismatched.append((t, 4))
    checks.append(
        Check(
            "large letters reshape the suffix into a block",
            not mismatched,
            "" if not mismatched else "non-block results at: %s" % mismatched,
        )
    )

    last_slot_dead = _squared_after_insert(suffix, t + 1, 5) and all(
        _squared_after_insert(A, t, c) for c in (1, 2, 3)
    )
    checks.append(Check("slot before the closing letter blocked for 1,2,3,5", last_slot_dead))

    m = min(verify_budget, depth)
    truncated = b"".join(block_bytes[q - 1] for q in _zimin_bytes(m))
    hit = core.find_square(truncated)
    checks.append(
        Check(
            "truncated substitution (depth %d) square-free" % m,
            hit is None,
            "" if hit is None else "square of period %d at offset %d" % (hit[1], hit[0]),
        )
    )
    hit = core.find_square(truncated + bytes(suffix_letters))
    checks.append(
        Check(
            "truncated substitution plus suffix square-free",
            hit is None,
            "" if hit is None else "square of period %d at offset %d" % (hit[1], hit[0]),
        )
    )

    mb = min(suffix_square_budget, depth)
    zm = _zimin_bytes(mb)
    bad_tail = []
    for i in range(1, mb + 1):
        tail = _zimin_bytes(i - 1) + bytes([i])
        if not (zm + bytes([i])).endswith(tail + tail):
            bad_tail.append(i)
    checks.append(
        Check(
            "appending variable i leaves a squared tail (i <= %d)" % mb,
            not bad_tail,
            "" if not bad_tail else "failing indexes: %s" % bad_tail,
        )
    )

    report = VerificationReport("suffix-blocked components (t=%d)" % t, tuple(checks))
    return SuffixBlockedComponents(A, suffix, block_tuple, full, report)


# ---------------------------------------------------------------------------
# The 35-letter ternary word with a record internal potential.

_RECORD_INTERNAL_35 = "12131231323123212312131231323123212"
_RECORD_INTERNAL_SLOTS = (1, 4, 7, 10, 13, 16, 19, 22, 25, 28, 31, 34)


def m_word() -> Tuple[Word, Tuple[int, ...]]:
    """The 35-letter ternary word with 12 live internal slots.

    Returns the word and the slot positions at which some insertion
    stays square-free; its internal potential 12 is the largest any
    ternary word of length 35 achieves.
    """
    return core.parse_word(_RECORD_INTERNAL_35, 3), _RECORD_INTERNAL_SLOTS
