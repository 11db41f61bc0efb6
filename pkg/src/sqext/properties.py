"""Avoidance targets beyond plain squares.

Every property here answers two questions about byte-backed words: does a
whole word avoid the forbidden shape, and does an insertion at a known
position create one.  The second form relies on the factor-closedness of
all supported shapes: removing the inserted letter glues the word back
together, so any new forbidden factor must cover the insertion point.
"""

from dataclasses import dataclass
from typing import Optional, Tuple

from . import core


def _run_window_covers(buf, size, anchor, L, window) -> bool:
    """A block of `window` consecutive matches buf[s] == buf[s+L] around anchor.

    Assumes buf[anchor] == buf[anchor+L]; grows the match run forward and
    backward from the anchor and asks whether some window of the given
    length inside the run contains it.
    """
    cap = size - L - anchor
    if cap > window:
        cap = window
    f = 1
    while f < cap and buf[anchor + f] == buf[anchor + L + f]:
        f += 1
    if f >= window:
        return True
    need = window - f
    j = 1
    while j <= need and anchor >= j and buf[anchor - j] == buf[anchor + L - j]:
        j += 1
    return j > need


def _power_through(buf, size, pos, blocks, extra) -> bool:
    """A repetition with `blocks`+1 equal blocks (plus `extra` letters) at pos.

    Covers k-powers (blocks = k-1, extra = 0) and overlaps xUxUx
    (blocks = 1, extra = 1).  A repetition of period L needs a run of
    blocks*L+extra matches at distance L; the inserted letter pairs with an
    equal letter one period away, which yields the candidate periods.
    """
    x = buf[pos]
    span = blocks + 1  # total length of the repetition in periods, roughly
    max_L = (size - extra) // span if span else 0
    lo = pos - max_L
    if lo < 0:
        lo = 0
    q = buf.rfind(x, lo, pos)
    while q != -1:
        L = pos - q
        if _run_window_covers(buf, size, q, L, blocks * L + extra):
            return True
        q = buf.rfind(x, lo, q)
    hi = pos + max_L + 1
    if hi > size:
        hi = size
    q = buf.find(x, pos + 1, hi)
    while q != -1:
        L = q - pos
        if _run_window_covers(buf, size, pos, L, blocks * L + extra):
            return True
        q = buf.find(x, q + 1, hi)
    return False


def _abelian_square_through(buf, size, pos) -> bool:
    """An abelian square (XY with equal letter counts) covering index pos.

    For each half-length L the start slides over the range of positions
    whose factor covers pos, keeping a letter-count difference and the
    number of its nonzero entries up to date, so each slide is O(1).
    """
    for L in range(1, size // 2 + 1):
        lo = pos - 2 * L + 1
        if lo < 0:
            lo = 0
        hi = pos if pos <= size - 2 * L else size - 2 * L
        if lo > hi:
            continue
        diff = {}
        nonzero = 0
        for t in range(lo, lo + L):
            c = buf[t]
            v = diff.get(c, 0) + 1
            diff[c] = v
            nonzero += 1 if v == 1 else (-1 if v == 0 else 0)
        for t in range(lo + L, lo + 2 * L):
            c = buf[t]
            v = diff.get(c, 0) - 1
            diff[c] = v
            nonzero += 1 if v == -1 else (-1 if v == 0 else 0)
        i = lo
        while True:
            if nonzero == 0:
                return True
            if i == hi:
                break
            # slide the factor [i, i+2L) one step right
            for c, d in ((buf[i], -1), (buf[i + L], 2), (buf[i + 2 * L], -1)):
                v = diff.get(c, 0)
                nv = v + d
                diff[c] = nv
                if v == 0 and nv != 0:
                    nonzero += 1
                elif v != 0 and nv == 0:
                    nonzero -= 1
            i += 1
    return False


def realizes_pattern(data, pattern, strict: bool = True) -> bool:
    """Whether `data` splits into factors following `pattern`.

    Pattern symbols are positive variable ids; equal ids must take equal
    factors.  In strict mode distinct ids must also take distinct factors,
    so a word realizes pattern 11 exactly when it is a square.
    """
    n = len(data)
    r = len(pattern)
    if r == 0:
        return n == 0
    failed = set()

    def rec(pos, idx, assign):
        if idx == r:
            return pos == n
        key = (pos, idx, tuple(sorted(assign.items())))
        if key in failed:
            return False
        v = pattern[idx]
        w = assign.get(v)
        if w is not None:
            if data.startswith(w, pos) and rec(pos + len(w), idx + 1, assign):
                return True
            failed.add(key)
            return False
        rest = r - idx - 1  # symbols after this one, each needs a letter
        taken = set(assign.values()) if strict else ()
        for ln in range(1, n - pos - rest + 1):
            w2 = data[pos:pos + ln]
            if strict and w2 in taken:
                continue
            assign[v] = w2
            if rec(pos + ln, idx + 1, assign):
                return True
            del assign[v]
        failed.add(key)
        return False

    return rec(0, 0, {})


def _pattern_through(buf, size, pos, pattern, strict) -> bool:
    data = bytes(buf[:size])
    r = len(pattern)
    for i in range(0, pos + 1):
        for j in range(max(pos + 1, i + r), size + 1):
            if realizes_pattern(data[i:j], pattern, strict):
                return True
    return False


# ---------------------------------------------------------------------------
# property objects


@dataclass(frozen=True)
class AvoidanceProperty:
    """Base for the forbidden-factor families the engines understand."""

    def violation_through(self, buf, size, pos) -> bool:
        raise NotImplementedError

    def clean(self, data) -> bool:
        """Whole-word check by scanning each prefix end; factor-closed only."""
        for j in range(len(data)):
            if self.violation_through(data, j + 1, j):
                return False
        return True


@dataclass(frozen=True)
class SquareFree(AvoidanceProperty):
    name = "square"

    def violation_through(self, buf, size, pos):
        return core.has_square_through(buf, size, pos)

    def clean(self, data):
        return core.find_square(data) is None


@dataclass(frozen=True)
class KPowerFree(AvoidanceProperty):
    k: int

    def __post_init__(self):
        if self.k < 2:
            raise ValueError("power exponent must be at least 2")

    @property
    def name(self):
        return {2: "square", 3: "cube"}.get(self.k, f"power:{self.k}")

    def violation_through(self, buf, size, pos):
        return _power_through(buf, size, pos, self.k - 1, 0)


@dataclass(frozen=True)
class OverlapFree(AvoidanceProperty):
    name = "overlap"

    def violation_through(self, buf, size, pos):
        return _power_through(buf, size, pos, 1, 1)


@dataclass(frozen=True)
class AbelianSquareFree(AvoidanceProperty):
    name = "abelian"

    def violation_through(self, buf, size, pos):
        return _abelian_square_through(buf, size, pos)


@dataclass(frozen=True)
class PatternFree(AvoidanceProperty):
    pattern: Tuple[int, ...]
    strict: bool = True

    def __post_init__(self):
        if not self.pattern or any(v < 1 for v in self.pattern):
            raise ValueError("pattern must be nonempty positive variable ids")

    @property
    def name(self):
        return "pattern:" + ".".join(str(v) for v in self.pattern)

    def violation_through(self, buf, size, pos):
        return _pattern_through(buf, size, pos, self.pattern, self.strict)


SQUARE_FREE = SquareFree()


def parse_property(text: str) -> AvoidanceProperty:
    """Parse 'square', 'cube', 'power:k', 'overlap', 'abelian', 'pattern:121'."""
    text = text.strip().lower()
    if text == "square":
        return SquareFree()
    if text == "cube":
        return KPowerFree(3)
    if text.startswith("power:"):
        return KPowerFree(int(text.split(":", 1)[1]))
    if text == "overlap":
        return OverlapFree()
    if text == "abelian":
        return AbelianSquareFree()
    if text.startswith("pattern:"):
        body = text.split(":", 1)[1]
        parts = body.split(".") if "." in body else list(body)
        return PatternFree(tuple(int(p) for p in parts))
    raise ValueError(f"unknown property {text!r}")


# ---------------------------------------------------------------------------
# word-level wrappers


def contains_k_power(word: core.Word, k: int) -> bool:
    data = bytes(word.letters)
    size = len(data)
    prop = KPowerFree(k)
    for j in range(size):
        if prop.violation_through(data, j + 1, j):
            return True
    return False


def contains_overlap(word: core.Word) -> bool:
    data = bytes(word.letters)
    prop = OverlapFree()
    for j in range(len(data)):
        if prop.violation_through(data, j + 1, j):
            return True
    return False


def contains_abelian_square(word: core.Word) -> bool:
    data = bytes(word.letters)
    for j in range(len(data)):
        if _abelian_square_through(data, j + 1, j):
            return True
    return False


def avoids(word: core.Word, prop: AvoidanceProperty) -> bool:
    return prop.clean(bytes(word.letters))


def property_extensions(word: core.Word, prop: AvoidanceProperty,
                        alphabet_size: Optional[int] = None) -> core.PotentialReport:
    """Like core.potential but for an arbitrary avoidance property."""
    n = alphabet_size if alphabet_size is not None else word.alphabet_size
    data = bytes(word.letters)
    if not prop.clean(data):
        raise ValueError(f"word does not avoid {prop.name}")
    size = len(data)
    exts = []
    cand = bytearray(size + 1)
    for p in range(size + 1):
        cand[:p] = data[:p]
        cand[p + 1:] = data[p:]
        for x in range(1, n + 1):
            cand[p] = x
            if not prop.violation_through(cand, size + 1, p):
                exts.append(core.Extension(p, x))
    return core.PotentialReport(word, tuple(exts))
