"""The nonchalant greedy extension procedure.

Each iteration splits the current word W into W'W'' with the shortest
possible suffix W'' and inserts the earliest possible letter x so that
W'xW'' still avoids the forbidden shape.  Suffix lengths start at 0 in
full mode (appending allowed, prepending s = len(W) included) and at 1 in
internal-only mode (both ends forbidden).  The procedure halts when no
insertion works at all.
"""

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from . import core, properties

FULL = "full"
INTERNAL = "internal"
_MODES = (FULL, INTERNAL)


@dataclass(frozen=True)
class StepResult:
    """One iteration: how far back it went, what it inserted, what came out."""

    back_step: int
    letter: int
    word: core.Word


@dataclass
class NonchalantTrace:
    """A whole run: per-step (back_step, letter, length[, ae]) records."""

    initial: core.Word
    mode: str
    property_name: str
    steps: List[tuple] = field(default_factory=list)
    final: Optional[core.Word] = None
    halted: bool = False
    recorded_ae: bool = False


def _step_on_buffer(buf, n, prop, mode):
    """Find the greedy insertion for buf; returns (back_step, letter) or None.

    Mutates buf in place when the insertion is an append; otherwise returns
    the new buffer through the third tuple slot.
    """
    size = len(buf)
    fast_square = isinstance(prop, properties.SquareFree)
    if mode == FULL:
        buf.append(0)
        for x in range(1, n + 1):
            buf[size] = x
            if fast_square:
                ok = not core.has_suffix_square(buf, size + 1)
            else:
                ok = not prop.violation_through(buf, size + 1, size)
            if ok:
                return (0, x, None)
        buf.pop()
    first = 1
    last = size if mode == FULL else size - 1
    for s in range(first, last + 1):
        p = size - s
        cand = bytearray(size + 1)
        cand[:p] = buf[:p]
        cand[p + 1:] = buf[p:]
        for x in range(1, n + 1):
            cand[p] = x
            if fast_square:
                ok = not core.has_square_through(cand, size + 1, p)
            else:
                ok = not prop.violation_through(cand, size + 1, p)
            if ok:
                return (s, x, cand)
    return None


def _check_setup(word, prop, mode):
    if mode not in _MODES:
        raise ValueError(f"mode must be one of {_MODES}, got {mode!r}")
    data = bytes(word.letters)
    if not prop.clean(data):
        raise ValueError(f"initial word does not avoid {prop.name}")
    if mode == INTERNAL and len(data) < 2:
        raise ValueError("internal-only mode needs a word of length at least 2")
    return data


def nonchalant_step(word: core.Word, prop: properties.AvoidanceProperty = properties.SQUARE_FREE,
                    mode: str = FULL) -> Optional[StepResult]:
    """A single greedy iteration; None when the word admits no insertion."""
    data = _check_setup(word, prop, mode)
    buf = bytearray(data)
    hit = _step_on_buffer(buf, word.alphabet_size, prop, mode)
    if hit is None:
        return None
    s, x, cand = hit
    out = buf if cand is None else cand
    return StepResult(s, x, core.word_from_bytes(out, word.alphabet_size))


def nonchalant_run(initial: core.Word, max_iterations: int,
                   prop: properties.AvoidanceProperty = properties.SQUARE_FREE,
                   mode: str = FULL, record_ae: bool = False) -> NonchalantTrace:
    """Run up to max_iterations greedy insertions from the initial word."""
    data = _check_setup(initial, prop, mode)
    n = initial.alphabet_size
    trace = NonchalantTrace(initial=initial, mode=mode, property_name=prop.name,
                            recorded_ae=record_ae)
    buf = bytearray(data)
    for _ in range(max_iterations):
        hit = _step_on_buffer(buf, n, prop, mode)
        if hit is None:
            trace.halted = True
            break
        s, x, cand = hit
        if cand is not None:
            buf = cand
        if record_ae:
            ae = _internal_count(buf, n, prop)
            trace.steps.append((s, x, len(buf), ae))
        else:
            trace.steps.append((s, x, len(buf)))
    trace.final = core.word_from_bytes(buf, n)
    return trace


def _internal_count(buf, n, prop):
    if isinstance(prop, properties.SquareFree):
        return core.internal_extension_count(bytes(buf), n)
    size = len(buf)
    count = 0
    cand = bytearray(size + 1)
    for p in range(1, size):
        cand[:p] = buf[:p]
        cand[p + 1:] = buf[p:]
        for x in range(1, n + 1):
            cand[p] = x
            if not prop.violation_through(cand, size + 1, p):
                count += 1
    return count


# ---------------------------------------------------------------------------
# trace analysis


def backstep_histogram(trace: NonchalantTrace) -> dict:
    """How many iterations moved back by each distance."""
    hist = {}
    for step in trace.steps:
        s = step[0]
        hist[s] = hist.get(s, 0) + 1
    return hist


def nonzero_backstep_events(trace: NonchalantTrace) -> List[Tuple[int, int]]:
    """(iteration, back_step) for every step that was not a plain append.

    Iterations are numbered from 1: iteration i turns the i-th word of the
    run into the next one.
    """
    return [(i, step[0]) for i, step in enumerate(trace.steps, start=1) if step[0] != 0]


def gap_table(trace: NonchalantTrace, back_step: int,
              include_initial: bool = True) -> dict:
    """Counts of distances between consecutive iterations with a given back step.

    The distance from iteration 0 to the first such event is counted as a
    gap too (include_initial), which is what makes the counts add up to the
    number of events.
    """
    events = [i for i, s in nonzero_backstep_events(trace) if s == back_step]
    prev = 0 if include_initial else None
    table = {}
    for i in events:
        if prev is not None:
            d = i - prev
            table[d] = table.get(d, 0) + 1
        prev = i
    return table


def potential_trace(trace: NonchalantTrace) -> List[Tuple[int, int]]:
    """(word index, ae) for each produced word; needs a record_ae run.

    The word produced by iteration i is the (i+1)-th word of the run, so
    indexes start at 2.
    """
    if not trace.recorded_ae:
        raise ValueError("run was recorded without ae values")
    return [(i + 1, step[3]) for i, step in enumerate(trace.steps, start=1)]


def new_max_indexes(values: List[Tuple[int, int]]) -> List[Tuple[int, int]]:
    """Entries strictly above every earlier value; the first entry counts."""
    out = []
    best = None
    for i, v in values:
        if best is None or v > best:
            out.append((i, v))
            best = v
    return out


def format_trace(trace: NonchalantTrace) -> str:
    """TSV rows: iter, backstep, letter, length, and ae when recorded."""
    lines = []
    for i, step in enumerate(trace.steps, start=1):
        lines.append("\t".join(str(v) for v in (i,) + tuple(step)))
    return "\n".join(lines) + ("\n" if lines else "")
