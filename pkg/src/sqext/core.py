"""Square-free words and their extension potentials.

Words are sequences of letters 1..n over an ordered alphabet of size n.
An extension of a word W is any W'xW'' with W = W'W''; the interesting
question is which extensions stay square-free.  The module keeps two
independent square detectors: a divide-and-conquer one built on longest
common extensions, and a brute-force oracle used for differential tests.
"""

from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Optional, Tuple

MAX_ALPHABET = 255  # letters are stored in byte buffers internally


class Extension(NamedTuple):
    """An insertion point: letter goes between position-1 and position."""

    position: int
    letter: int


@dataclass(frozen=True)
class Word:
    """An immutable word over the alphabet {1, .., alphabet_size}."""

    letters: Tuple[int, ...]
    alphabet_size: int

    def __post_init__(self):
        if not isinstance(self.letters, tuple):
            object.__setattr__(self, "letters", tuple(self.letters))
        n = self.alphabet_size
        if not 1 <= n <= MAX_ALPHABET:
            raise ValueError(f"alphabet size must be in 1..{MAX_ALPHABET}, got {n}")
        for a in self.letters:
            if not 1 <= a <= n:
                raise ValueError(f"letter {a} outside alphabet of size {n}")

    def __len__(self) -> int:
        return len(self.letters)

    def __getitem__(self, i):
        return self.letters[i]

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __str__(self) -> str:
        return self.text()

    def text(self, force_dots: bool = False) -> str:
        """Render as a digit string, or dot-separated once digits run out."""
        if self.alphabet_size <= 9 and not force_dots:
            return "".join(str(a) for a in self.letters)
        return ".".join(str(a) for a in self.letters)

    def insert(self, position: int, letter: int) -> "Word":
        """The extension W[:position] + letter + W[position:]."""
        if not 0 <= position <= len(self.letters):
            raise ValueError(f"position {position} out of range 0..{len(self.letters)}")
        if not 1 <= letter <= self.alphabet_size:
            raise ValueError(f"letter {letter} outside alphabet of size {self.alphabet_size}")
        return Word(self.letters[:position] + (letter,) + self.letters[position:],
                    self.alphabet_size)

    def factor(self, start: int, stop: int) -> "Word":
        return Word(self.letters[start:stop], self.alphabet_size)


def parse_word(text: str, alphabet_size: int) -> Word:
    """Parse '1213' or dot-separated '10.2.11' into a Word.

    The dot form is required once letters exceed one digit; the plain form
    treats every character as a single letter.
    """
    text = text.strip()
    if not text:
        return Word((), alphabet_size)
    if "." in text:
        parts = text.split(".")
    else:
        parts = list(text)
    try:
        letters = tuple(int(p) for p in parts)
    except ValueError:
        raise ValueError(f"malformed word text: {text!r}") from None
    return Word(letters, alphabet_size)


def word_from_bytes(data, alphabet_size: int) -> Word:
    return Word(tuple(data), alphabet_size)


# ---------------------------------------------------------------------------
# square detection


def _zfunc(s):
    """Z array: z[i] = length of the longest common prefix of s and s[i:]."""
    n = len(s)
    z = [0] * n
    if n == 0:
        return z
    z[0] = n
    l = r = 0
    for i in range(1, n):
        k = min(r - i, z[i - l]) if i < r else 0
        while i + k < n and s[k] == s[i + k]:
            k += 1
        z[i] = k
        if i + k > r:
            l, r = i, i + k
    return z


def _crossing_square(data, anchor):
    """A square covering index `anchor`, as (start, period), or None.

    For each period L a square covering a position needs a run of at least
    L consecutive matches data[s] == data[s+L] whose window contains either
    the anchor (anchor in the left half) or anchor-L (right half).  All the
    required extension lengths come from three Z arrays.
    """
    size = len(data)
    a = anchor
    sep = b"\x00"
    zf = _zfunc(data[a:])                      # lcp(data[a:], data[a+L:])
    rev = data[::-1]
    head = rev[size - a:]
    zb = _zfunc(head + sep + rev)              # lcp with reversed prefix at a-1
    zc = _zfunc(data[a:] + sep + data)         # lcp(data[a:], data[j:])
    off_b = len(head) + 1
    off_c = (size - a) + 1
    for L in range(1, size // 2 + 1):
        # anchor in the left half of the square
        if a + L < size:
            f = min(zf[L], L)
            if f:
                if f == L:
                    return (a, L)
                back = zb[off_b + (size - a - L)]
                if back >= L - f:
                    return (a - (L - f), L)
        # anchor in the right half: same test around anchor-L
        if a - L >= 0:
            f = min(zc[off_c + (a - L)], L)
            if f:
                if f == L:
                    return (a - L, L)
                back = zb[off_b + (size - a + L)] if size - a + L < size else 0
                if back >= L - f:
                    return (a - L - (L - f), L)
    return None


def find_square(data) -> Optional[Tuple[int, int]]:
    """Some square factor of `data` as (start, period), or None.

    Divide and conquer: squares inside a half are found recursively, squares
    covering the middle by the crossing test.  O(k log k) overall.
    """
    size = len(data)
    if size < 2:
        return None
    if size <= 6:
        for L in range(1, size // 2 + 1):
            for i in range(size - 2 * L + 1):
                if data[i:i + L] == data[i + L:i + 2 * L]:
                    return (i, L)
        return None
    h = size // 2
    hit = find_square(data[:h])
    if hit:
        return hit
    hit = find_square(data[h:])
    if hit:
        return (hit[0] + h, hit[1])
    return _crossing_square(data, h - 1)


def find_square_brute(data) -> Optional[Tuple[int, int]]:
    """Brute-force oracle: leftmost, then shortest, square factor."""
    size = len(data)
    for start in range(size - 1):
        for period in range(1, (size - start) // 2 + 1):
            if data[start:start + period] == data[start + period:start + 2 * period]:
                return (start, period)
    return None


def has_square_through(buf, size, pos) -> bool:
    """True if buf[:size] has a square covering index pos.

    Caller guarantees that dropping buf[pos] leaves a square-free word, so
    every square must cover pos and must pair pos with an equal letter one
    period away.  Candidate periods therefore come from the occurrences of
    buf[pos]; each one is settled by growing the match run around the
    anchor, which is expected constant time on square-free-ish input.
    """
    x = buf[pos]
    half = size // 2
    # pos inside the right half: anchor at q = pos - L
    q = buf.rfind(x, pos - half if pos > half else 0, pos)
    while q != -1:
        L = pos - q
        cap = size - L - q
        if cap > L:
            cap = L
        f = 1
        while f < cap and buf[q + f] == buf[q + L + f]:
            f += 1
        if f >= L:
            return True
        need = L - f
        j = 1
        while j <= need and q >= j and buf[q - j] == buf[q + L - j]:
            j += 1
        if j > need:
            return True
        q = buf.rfind(x, pos - half if pos > half else 0, q)
    # pos inside the left half: anchor at pos itself
    stop = pos + half + 1
    if stop > size:
        stop = size
    q = buf.find(x, pos + 1, stop)
    while q != -1:
        L = q - pos
        cap = size - L - pos
        if cap > L:
            cap = L
        f = 1
        while f < cap and buf[pos + f] == buf[pos + L + f]:
            f += 1
        if f >= L:
            return True
        need = L - f
        j = 1
        while j <= need and pos >= j and buf[pos - j] == buf[pos + L - j]:
            j += 1
        if j > need:
            return True
        q = buf.find(x, q + 1, stop)
    return False


def has_suffix_square(buf, size) -> bool:
    """True if buf[:size] ends with a square, assuming buf[:size-1] is clean."""
    pos = size - 1
    x = buf[pos]
    qmin = (size - 1) // 2  # below this the square would start before index 0
    q = buf.rfind(x, qmin, pos)
    while q != -1:
        L = pos - q
        j = 1
        while j < L and buf[q - j] == buf[pos - j]:
            j += 1
        if j == L:
            return True
        q = buf.rfind(x, qmin, q)
    return False


# ---------------------------------------------------------------------------
# public predicates and potentials


def is_square_free(word: Word) -> bool:
    return find_square(bytes(word.letters)) is None


def insertion_is_square_free(word: Word, position: int, letter: int) -> bool:
    """Whether W[:position] + letter + W[position:] is square-free.

    W itself must be square-free; the check then only has to look at squares
    covering the new letter.
    """
    if not 0 <= position <= len(word):
        raise ValueError(f"position {position} out of range 0..{len(word)}")
    if not 1 <= letter <= word.alphabet_size:
        raise ValueError(f"letter {letter} outside alphabet of size {word.alphabet_size}")
    data = bytes(word.letters)
    if find_square(data) is not None:
        raise ValueError("word is not square-free")
    cand = bytearray(data)
    cand.insert(position, letter)
    return not has_square_through(cand, len(cand), position)


def _extensions_on(data, n, lo, hi):
    """Square-free insertions (p, x) with lo <= p <= hi into clean `data`."""
    size = len(data)
    out = []
    cand = bytearray(size + 1)
    for p in range(lo, hi + 1):
        cand[:p] = data[:p]
        cand[p + 1:] = data[p:]
        for x in range(1, n + 1):
            cand[p] = x
            if not has_square_through(cand, size + 1, p):
                out.append(Extension(p, x))
    return out


def square_free_extensions(word: Word) -> list:
    """All square-free extensions of a square-free word, as (position, letter)."""
    data = bytes(word.letters)
    if find_square(data) is not None:
        raise ValueError("word is not square-free")
    return _extensions_on(data, word.alphabet_size, 0, len(data))


@dataclass(frozen=True)
class PotentialReport:
    """Counts of square-free extensions: all of them and the internal ones."""

    word: Word
    extensions: Tuple[Extension, ...]
    ae_value: int = field(init=False)
    AE_value: int = field(init=False)

    def __post_init__(self):
        size = len(self.word)
        internal = sum(1 for e in self.extensions if 0 < e.position < size)
        object.__setattr__(self, "ae_value", internal)
        object.__setattr__(self, "AE_value", len(self.extensions))

    @property
    def is_extremal(self) -> bool:
        return self.AE_value == 0

    @property
    def is_almost_extremal(self) -> bool:
        return self.ae_value == 0

    @property
    def is_maximal(self) -> bool:
        return self.AE_value == self.ae_value

    def internal_extensions(self) -> Tuple[Extension, ...]:
        size = len(self.word)
        return tuple(e for e in self.extensions if 0 < e.position < size)


def potential(word: Word) -> PotentialReport:
    """Every square-free extension of `word`, with the two counts."""
    return PotentialReport(word, tuple(square_free_extensions(word)))


def internal_extension_count(data, n) -> int:
    """ae of a clean byte word: square-free insertions at positions 1..len-1."""
    size = len(data)
    if size < 2:
        return 0
    count = 0
    cand = bytearray(size + 1)
    for p in range(1, size):
        cand[:p] = data[:p]
        cand[p + 1:] = data[p:]
        for x in range(1, n + 1):
            cand[p] = x
            if not has_square_through(cand, size + 1, p):
                count += 1
    return count
