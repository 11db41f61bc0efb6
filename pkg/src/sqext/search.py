"""Exhaustive searches: enumeration, extremal words, and potential maxima.

Everything here walks the tree of property-avoiding words depth-first,
letters in ascending order, so all outputs come back lexicographically
sorted and runs are reproducible byte for byte.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

from . import core, nonchalant, properties
from .core import Word
from .properties import AvoidanceProperty, SQUARE_FREE

GOAL_ENUMERATE = "enumerate"
GOAL_COUNT = "count"
GOAL_MAX_POTENTIALS = "max-potential"
GOAL_FIND_EXTREMAL = "extremal"
GOAL_SHORTEST_EXTREMAL = "shortest-extremal"


class BudgetExhausted(RuntimeError):
    """A search ran out of its node allowance; partial data is attached."""

    def __init__(self, message: str, nodes: int = 0, partial=None):
        super().__init__(message)
        self.nodes = nodes
        self.partial = partial
        # keep all state in args so the exception survives pickling
        self.args = (message, nodes, partial)

    def __str__(self) -> str:
        return self.args[0] if self.args else ""


@dataclass(frozen=True)
class SearchSpec:
    """Record of what a search run was asked to do (for report headers).

    Worker count is deliberately absent: results must not depend on it,
    so it has no place in the output identity.
    """

    alphabet_size: int
    length: int
    property_name: str
    goal: str
    budget: Optional[int] = None

    def to_dict(self) -> dict:
        return {
            "alphabet_size": self.alphabet_size,
            "length": self.length,
            "property": self.property_name,
            "goal": self.goal,
            "budget": self.budget,
        }


def _suffix_violation(prop: AvoidanceProperty, buf) -> bool:
    # appending to a clean word: any new violation must touch the last letter
    size = len(buf)
    if isinstance(prop, properties.SquareFree):
        return core.has_suffix_square(buf, size)
    return prop.violation_through(buf, size, size - 1)


def _iter_avoiding(n: int, k: int, prop: AvoidanceProperty,
                   prefix: bytes = b"", budget: Optional[int] = None):
    """Yield the shared buffer for every avoiding word of length k.

    The yielded bytearray is reused between yields; callers must copy
    what they keep.  Lexicographic order.
    """
    if k < 0:
        raise ValueError("length must be nonnegative")
    if len(prefix) > k:
        return
    if prefix and not prop.clean(prefix):
        return
    buf = bytearray(prefix)
    if len(buf) == k:
        yield buf
        return
    base = len(prefix)
    nodes = 0
    letter = 1
    while True:
        if letter > n:
            if len(buf) == base:
                return
            letter = buf.pop() + 1
            continue
        nodes += 1
        if budget is not None and nodes > budget:
            raise BudgetExhausted("enumeration stopped after %d nodes" % budget,
                                  nodes=budget)
        buf.append(letter)
        if _suffix_violation(prop, buf):
            letter = buf.pop() + 1
        elif len(buf) == k:
            yield buf
            letter = buf.pop() + 1
        else:
            letter = 1


def enumerate_avoiding(n: int, k: int, prop: AvoidanceProperty = SQUARE_FREE,
                       budget: Optional[int] = None) -> Iterator[Word]:
    """All length-k words over n letters avoiding prop, lexicographically."""
    for buf in _iter_avoiding(n, k, prop, budget=budget):
        yield core.word_from_bytes(bytes(buf), n)


def count_avoiding(n: int, k: int, prop: AvoidanceProperty = SQUARE_FREE,
                   budget: Optional[int] = None) -> int:
    """How many length-k words over n letters avoid prop."""
    total = 0
    for _ in _iter_avoiding(n, k, prop, budget=budget):
        total += 1
    return total


def _has_clean_insertion(buf, n: int, prop: AvoidanceProperty) -> bool:
    """Does any single-letter insertion leave the word clean?

    Appends are tried first: almost every word accepts one, so the
    extremality filter usually exits after a check or two.
    """
    size = len(buf)
    fast = isinstance(prop, properties.SquareFree)
    for c in range(1, n + 1):
        buf.append(c)
        bad = core.has_suffix_square(buf, size + 1) if fast \
            else prop.violation_through(buf, size + 1, size)
        buf.pop()
        if not bad:
            return True
    for p in range(size):
        left = buf[:p]
        right = buf[p:]
        for c in range(1, n + 1):
            if c == buf[p] or (p > 0 and c == buf[p - 1]):
                continue  # doubled letter: a square and an abelian square alike
            cand = left + bytes((c,)) + right
            if fast:
                bad = core.has_square_through(cand, size + 1, p)
            else:
                bad = prop.violation_through(cand, size + 1, p)
            if not bad:
                return True
    return False


def _extremal_under(args) -> List[tuple]:
    n, k, prop, prefix, budget = args
    out = []
    for buf in _iter_avoiding(n, k, prop, prefix=prefix, budget=budget):
        if not _has_clean_insertion(buf, n, prop):
            out.append(tuple(buf))
    return out


def find_extremal(n: int, k: int, prop: AvoidanceProperty = SQUARE_FREE,
                  budget: Optional[int] = None, workers: int = 1,
                  split_depth: int = 4) -> List[Word]:
    """All length-k avoiding words with no clean insertion anywhere."""
    if workers <= 1 or k <= split_depth:
        hits = _extremal_under((n, k, prop, b"", budget))
        return [Word(h, n) for h in hits]
    prefixes = [bytes(b) for b in _iter_avoiding(n, split_depth, prop)]
    share = None if budget is None else max(1, budget // max(1, len(prefixes)))
    tasks = [(n, k, prop, p, share) for p in prefixes]
    out: List[Word] = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for hits in pool.map(_extremal_under, tasks):
            out.extend(Word(h, n) for h in hits)
    return out  # prefix order is lexicographic, so the merge already is


def shortest_extremal(n: int, prop: AvoidanceProperty = SQUARE_FREE,
                      k_max: int = 30, budget: Optional[int] = None,
                      workers: int = 1) -> Optional[Tuple[int, List[Word]]]:
    """Smallest length up to k_max with an extremal word, plus all of them."""
    for k in range(1, k_max + 1):
        try:
            hits = find_extremal(n, k, prop, budget=budget, workers=workers)
        except BudgetExhausted as exc:
            raise BudgetExhausted(
                "budget ran out at length %d (none shorter)" % k,
                nodes=exc.nodes, partial=("none below", k)) from exc
        if hits:
            return k, hits
    return None


# ---------------------------------------------------------------------------
# maxima of the two potentials over all square-free words of each length


@dataclass(frozen=True)
class MaxPotentialRow:
    """Largest internal and total extension counts at one length."""

    k: int
    ae_max: int
    AE_max: int
    ae_witness: Word
    AE_witness: Word


def _insertion_alive(buf, p: int, c: int) -> bool:
    cand = buf[:p] + bytes((c,)) + buf[p:]
    return core.find_square(bytes(cand)) is None


def _alive_set(buf, n: int) -> List[Tuple[int, int]]:
    """All (slot, letter) insertions that keep a short clean word clean."""
    out = []
    for p in range(len(buf) + 1):
        for c in range(1, n + 1):
            if _insertion_alive(buf, p, c):
                out.append((p, c))
    return out


def _scan_rows(n: int, k_max: int, prefix: bytes,
               budget: Optional[int]) -> List[Optional[list]]:
    """Depth-first sweep under one prefix, folding maxima per length.

    Carries the set of still-clean insertions down the tree: extending
    the word by one letter can only kill a candidate through a square
    ending at the new last letter, so each inherited candidate costs one
    suffix check instead of a full recount.
    """
    rows: List[Optional[list]] = [None] * (k_max + 1)
    buf = bytearray(prefix)
    if core.find_square(bytes(buf)) is not None:
        return rows
    nodes = 0

    def fold(alive: List[Tuple[int, int]]) -> None:
        k = len(buf)
        internal = 0
        for p, _ in alive:
            if 0 < p < k:
                internal += 1
        total = len(alive)
        row = rows[k]
        if row is None:
            rows[k] = [internal, total, bytes(buf), bytes(buf)]
            return
        if internal > row[0]:
            row[0] = internal
            row[2] = bytes(buf)
        if total > row[1]:
            row[1] = total
            row[3] = bytes(buf)

    def descend(alive: List[Tuple[int, int]]) -> None:
        nonlocal nodes
        nodes += 1
        if budget is not None and nodes > budget:
            raise BudgetExhausted("potential scan stopped after %d nodes" % budget,
                                  nodes=budget, partial=rows)
        fold(alive)
        if len(buf) == k_max:
            return
        last = buf[-1]
        for x in range(1, n + 1):
            if x == last:
                continue
            buf.append(x)
            if not core.has_suffix_square(buf, len(buf)):
                survivors = []
                for p, c in alive:
                    cand = buf[:p] + bytes((c,)) + buf[p:]
                    if not core.has_suffix_square(cand, len(cand)):
                        survivors.append((p, c))
                slot = len(buf)
                tail = buf[-1]
                for c in range(1, n + 1):
                    if c == tail:
                        continue
                    buf.append(c)
                    ok = not core.has_suffix_square(buf, len(buf))
                    buf.pop()
                    if ok:
                        survivors.append((slot, c))
                descend(survivors)
            buf.pop()

    if buf:
        descend(_alive_set(buf, n))
    return rows


def _scan_worker(args) -> List[Optional[list]]:
    n, k_max, prefix, budget = args
    return _scan_rows(n, k_max, prefix, budget)


def _merge_rows(base: List[Optional[list]], extra: List[Optional[list]]) -> None:
    for k, row in enumerate(extra):
        if row is None:
            continue
        mine = base[k]
        if mine is None:
            base[k] = list(row)
            continue
        for value_i, wit_i in ((0, 2), (1, 3)):
            if row[value_i] > mine[value_i] or (
                    row[value_i] == mine[value_i] and row[wit_i] < mine[wit_i]):
                mine[value_i] = row[value_i]
                mine[wit_i] = row[wit_i]


def max_potential_table(n: int, k_max: int, workers: int = 1,
                        budget: Optional[int] = None,
                        split_depth: int = 7) -> List[MaxPotentialRow]:
    """Exact maxima of both potentials for every length 1..k_max.

    Only words starting with letter 1 are walked: relabeling letters
    never changes a potential, and the relabeled witness starting with 1
    is lexicographically smallest.
    """
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    if workers <= 1 or k_max <= split_depth:
        rows = _scan_rows(n, k_max, b"\x01", budget)
    else:
        prefixes = [bytes(b)
                    for b in _iter_avoiding(n, split_depth, SQUARE_FREE, prefix=b"\x01")]
        share = None if budget is None else max(1, budget // max(1, len(prefixes)))
        rows = _scan_rows(n, split_depth, b"\x01", budget)
        rows.extend([None] * (k_max - split_depth))
        tasks = [(n, k_max, p, share) for p in prefixes]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_scan_worker, tasks):
                _merge_rows(rows, part)
    out = []
    for k in range(1, k_max + 1):
        row = rows[k]
        if row is None:
            raise RuntimeError("no square-free words of length %d over %d letters"
                               % (k, n))
        out.append(MaxPotentialRow(k, row[0], row[1],
                                   core.word_from_bytes(row[2], n),
                                   core.word_from_bytes(row[3], n)))
    return out


def max_potentials(n: int, k: int, workers: int = 1,
                   budget: Optional[int] = None) -> MaxPotentialRow:
    """Exact maxima of ae and AE over square-free words of length k."""
    return max_potential_table(n, k, workers=workers, budget=budget)[-1]


def max_potentials_bruteforce(n: int, k: int) -> MaxPotentialRow:
    """Per-word recount of the same maxima; slow, for differential tests."""
    best = None
    for word in enumerate_avoiding(n, k, SQUARE_FREE):
        rep = core.potential(word)
        if best is None:
            best = [rep.ae_value, rep.AE_value, word, word]
            continue
        if rep.ae_value > best[0]:
            best[0] = rep.ae_value
            best[2] = word
        if rep.AE_value > best[1]:
            best[1] = rep.AE_value
            best[3] = word
    if best is None:
        raise RuntimeError("no words of length %d avoid squares" % k)
    return MaxPotentialRow(k, best[0], best[1], best[2], best[3])


def bound_threshold(rows: Sequence[MaxPotentialRow]) -> Optional[int]:
    """Smallest k from which AE_max <= ceil(5k/7) holds through the range."""
    start = None
    for row in sorted(rows, key=lambda r: r.k):
        if row.AE_max <= math.ceil(5 * row.k / 7):
            if start is None:
                start = row.k
        else:
            start = None
    return start


def abelian_nonchalant_halt(n: int, initial: Sequence[int] = (1,),
                            safety_cap: int = 20000) -> Tuple[int, Word]:
    """Run the greedy inserter on the abelian property until it gives up.

    The run is expected to halt on its own at every alphabet size; the
    cap only guards against an infinite loop and hitting it is an error,
    not a result.
    """
    word = Word(tuple(initial), n)
    trace = nonchalant.nonchalant_run(word, safety_cap,
                                      prop=properties.AbelianSquareFree(),
                                      mode=nonchalant.FULL)
    if not trace.halted:
        raise RuntimeError("no halt within %d iterations (length reached %d)"
                           % (safety_cap, len(trace.final)))
    return len(trace.final), trace.final
