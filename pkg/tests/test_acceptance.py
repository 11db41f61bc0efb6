"""Acceptance suite: one test per shipped claim, each printing a pass line.

The expensive shared computations (the 10000-iteration ternary runs, the
two 50000-iteration quaternary runs, the recorded-ae run) live in module
fixtures so each is executed once.  Set SQEXT_EXTENDED=1 to widen the
slow sweeps: the maxima table to k=50, the front-blocked construction to
n=5, and the differential battery to quaternary length 12.
"""

import itertools
import os
from collections import Counter

import pytest

import golden
from sqext import constructions, core, nonchalant, properties, search

EXTENDED = os.environ.get("SQEXT_EXTENDED", "") not in ("", "0")


def note(num, text):
    print("ACCEPTANCE %02d PASS: %s" % (num, text))


def nonzero(table):
    return {k: v for k, v in table.items() if v}


@pytest.fixture(scope="module")
def ternary_runs():
    runs = {}
    for init in golden.BACKSTEP_HISTOGRAMS:
        runs[init] = nonchalant.nonchalant_run(core.parse_word(init, 3), 10000)
    return runs


@pytest.fixture(scope="module")
def run_1(ternary_runs):
    return ternary_runs["1"]


@pytest.fixture(scope="module")
def ae_run_1():
    return nonchalant.nonchalant_run(core.parse_word("1", 3), 999, record_ae=True)


@pytest.fixture(scope="module")
def quaternary_full():
    return nonchalant.nonchalant_run(core.parse_word("1", 4), 50000)


@pytest.fixture(scope="module")
def quaternary_internal():
    return nonchalant.nonchalant_run(core.parse_word("12", 4), 50000,
                                     mode=nonchalant.INTERNAL)


def test_01_shortest_ternary_extremal_word():
    h = constructions.SHORTEST_EXTREMAL_TERNARY
    report = core.potential(h)
    assert report.AE_value == 0
    assert report.is_extremal
    for k in range(1, 25):
        assert search.find_extremal(3, k) == [], "unexpected extremal word at %d" % k
    hits = search.find_extremal(3, 25)
    assert h in hits
    note(1, "no ternary extremal word below length 25; the known one is there "
            "(%d at length 25)" % len(hits))


def test_02_bootstrap_sequences():
    w = core.parse_word("1", 3)
    got = [w.text()]
    for _ in range(7):
        w = nonchalant.nonchalant_step(w).word
        got.append(w.text())
    assert got == golden.BOOTSTRAP_TERNARY
    w = core.parse_word("12", 4)
    got = [w.text()]
    for _ in range(7):
        w = nonchalant.nonchalant_step(w, mode=nonchalant.INTERNAL).word
        got.append(w.text())
    assert got == golden.BOOTSTRAP_QUATERNARY_INTERNAL
    note(2, "both 8-word bootstrap sequences reproduced exactly")


def test_03_backstep_histograms(ternary_runs):
    for init, want in golden.BACKSTEP_HISTOGRAMS.items():
        hist = nonchalant.backstep_histogram(ternary_runs[init])
        assert sum(hist.values()) == 10000, \
            "row sum anomaly for initial word %s: %d" % (init, sum(hist.values()))
        assert hist == nonzero(want), "histogram mismatch for initial word %s" % init
    note(3, "all %d reference histogram rows match, every row sums to 10000"
            % len(golden.BACKSTEP_HISTOGRAMS))


def test_04_nonzero_backstep_events(run_1):
    events = nonchalant.nonzero_backstep_events(run_1)
    assert events == list(golden.NONZERO_EVENTS)
    for pair in ((7, 1), (143, 15), (4436, 20), (6628, 20)):
        assert pair in events
    note(4, "all %d nonzero back-step events match" % len(events))


def test_05_gap_counts(run_1):
    gaps = nonchalant.gap_table(run_1, 4)
    want = nonzero(golden.GAP_COUNTS_D4["1"])
    assert gaps[210] == 9
    assert gaps[211] == 4
    assert gaps == want
    note(5, "gap counts at back-step 4 match on all %d distances" % len(want))


def test_06_limit_word_prefix(run_1):
    assert run_1.final.text()[:70] == golden.LIMIT_WORD_3_PREFIX
    note(6, "first 70 letters of the limit word match")


def test_07_quaternary_backsteps(quaternary_full, quaternary_internal):
    full_hist = nonchalant.backstep_histogram(quaternary_full)
    assert max(full_hist) == 1
    assert full_hist[1] == 33
    internal_hist = nonchalant.backstep_histogram(quaternary_internal)
    assert max(internal_hist) == 2
    share = internal_hist[2] / 50000
    assert 0.08 <= share <= 0.12
    note(7, "full mode: max back-step 1 with 33 events; internal mode: "
            "max back-step 2 at %.1f%%" % (share * 100))


def test_08_max_potential_table():
    k_max = 50 if EXTENDED else 35
    rows = search.max_potential_table(3, k_max)
    for row in rows:
        if row.k >= 3:
            assert (row.ae_max, row.AE_max) == golden.MAX_POTENTIALS_3[row.k], \
                "maxima mismatch at length %d" % row.k
    note(8, "ternary potential maxima match for 3 <= k <= %d" % k_max)


def test_09_record_internal_potential_word():
    word, slots = constructions.m_word()
    report = core.potential(word)
    assert report.ae_value == 12
    positions = sorted({e.position for e in report.internal_extensions()})
    assert positions == sorted(slots)
    for k in range(7, 36):
        prefix = word.factor(0, k)
        assert core.potential(prefix).ae_value == golden.MAX_POTENTIALS_3[k][0], \
            "prefix of length %d misses the maximum" % k
    note(9, "ae 12 at exactly the 12 marked slots; "
            "every prefix of length 7..35 attains the maximum")


def test_10_potential_along_the_run(ae_run_1):
    values = nonchalant.potential_trace(ae_run_1)
    head = dict(values)
    for i in range(2, 40):
        assert head[i] == golden.AE_TRACE_2_39[i]
    maxima = nonchalant.new_max_indexes(values)
    assert maxima[:5] == [(2, 1), (3, 2), (8, 3), (26, 4), (32, 5)]
    assert maxima == list(golden.NEW_MAXIMA)
    best = 0
    for _, ae in values:
        best = max(best, ae)
        assert ae >= best - 2
    note(10, "ae trace (i=2..39), all %d new maxima below 1000, and the "
             "max-minus-2 floor all hold" % len(maxima))


def test_11_zimin_potentials():
    for m in range(3, 8):
        brute = core.potential(constructions.zimin(m)).AE_value
        closed = constructions.zimin_potential_closed(m)
        assert brute == closed == golden.ZIMIN_POTENTIALS[m - 1]
    assert constructions.zimin_potential_closed(8) == 1044
    note(11, "closed form equals brute count for depths 3..7 and gives 1044 at 8")


def test_12_end_blocked_word():
    recipe, displayed = constructions.proposition_s_words()
    reports = [constructions.verify_proposition_s(w) for w in (recipe, displayed)]
    assert [r.ok for r in reports].count(True) == 1
    assert reports[1].ok
    assert constructions.proposition_s_identities().ok
    note(12, "exactly one end-blocked candidate passes (the displayed one); "
             "all recipe identities hold")


def test_13_front_blocked_words():
    sizes = (4, 5) if EXTENDED else (4,)
    for n in sizes:
        images, word = constructions.theorem5_word(n)
        for t in range(1, n):
            report = constructions.verify_theorem5(images, word, t)
            assert report.ok, [c.name for c in report.checks if not c.passed]
    note(13, "front-blocked words verified for n in %s, all t < n" % (sizes,))


def test_14_suffix_blocked_components():
    comps = constructions.prop6_components(constructions.SHORTEST_EXTREMAL_TERNARY)
    assert len(comps.blocks) == 49
    failures = [c.name for c in comps.report.checks if not c.passed]
    assert comps.report.ok, failures
    assert len(comps.report.checks) == 8
    note(14, "all 8 component checks pass: 49 square-free blocks, dead small "
             "letters, block-shaped large letters, truncated substitution clean")


def test_15_abelian_results():
    word = core.parse_word("123421324321", 4)
    report = properties.property_extensions(word, properties.AbelianSquareFree())
    assert report.AE_value == 0
    found = search.shortest_extremal(4, properties.AbelianSquareFree(), k_max=12)
    assert found is not None
    k, hits = found
    assert k == 12
    assert word in hits
    length, final = search.abelian_nonchalant_halt(4)
    assert length == 15
    assert core.is_square_free(final)
    note(15, "the known length-12 word is extremal, nothing shorter exists "
             "(%d witnesses at 12), and the greedy run halts at length %d"
             % (len(hits), length))


def brute_has_cube(data):
    size = len(data)
    for i in range(size):
        for L in range(1, (size - i) // 3 + 1):
            block = data[i:i + L]
            if data[i + L:i + 2 * L] == block and data[i + 2 * L:i + 3 * L] == block:
                return True
    return False


def brute_has_overlap(data):
    size = len(data)
    for i in range(size):
        for L in range(1, (size - i - 1) // 2 + 1):
            if data[i:i + L + 1] == data[i + L:i + 2 * L + 1]:
                return True
    return False


def brute_has_abelian_square(data):
    size = len(data)
    for i in range(size):
        for L in range(1, (size - i) // 2 + 1):
            if Counter(data[i:i + L]) == Counter(data[i + L:i + 2 * L]):
                return True
    return False


def battery(n, k, squares_only=False):
    p2 = properties.KPowerFree(2)
    p3 = properties.KPowerFree(3)
    ov = properties.OverlapFree()
    ab = properties.AbelianSquareFree()
    for tup in itertools.product(range(1, n + 1), repeat=k):
        data = bytes(tup)
        fast = core.find_square(data) is None
        assert fast == (core.find_square_brute(data) is None), data
        if squares_only:
            continue
        assert p2.clean(data) == fast, data
        assert p3.clean(data) == (not brute_has_cube(data)), data
        assert ov.clean(data) == (not brute_has_overlap(data)), data
        assert ab.clean(data) == (not brute_has_abelian_square(data)), data


def test_16_property_suites():
    # Phase 1: every predicate against its brute counterpart, word by word.
    for k in range(13):
        battery(3, k)
    quaternary_full_to = 12 if EXTENDED else 9
    for k in range(quaternary_full_to + 1):
        battery(4, k)
    squares_to = 12 if EXTENDED else 10
    for k in range(quaternary_full_to + 1, squares_to + 1):
        battery(4, k, squares_only=True)
    # Phase 2: anchored insertion checks against a full rescan, and the
    # two-sided potential bound, on every enumerated square-free word.
    for n, k_max in ((3, 12), (4, 12 if EXTENDED else 9)):
        for k in range(1, k_max + 1):
            for word in search.enumerate_avoiding(n, k):
                report = core.potential(word)
                assert report.ae_value <= report.AE_value \
                    <= report.ae_value + 2 * (n - 1), word.text()
                for p in range(k + 1):
                    for x in range(1, n + 1):
                        grown = word.insert(p, x)
                        assert core.insertion_is_square_free(word, p, x) == \
                            core.is_square_free(grown), (word.text(), p, x)
    # Phase 3: worker count must never change search results.
    assert search.max_potential_table(3, 16, workers=1) == \
        search.max_potential_table(3, 16, workers=2)
    assert search.find_extremal(3, 25, workers=1) == \
        search.find_extremal(3, 25, workers=2)
    note(16, "differential battery (ternary to 12, quaternary to %d, squares "
             "to %d), insertion equivalence, potential bound, and parallel "
             "determinism all hold" % (quaternary_full_to, squares_to))
