"""Unit tests for the command-line frontend."""

import json

import golden
from sqext import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_check_avoiding_word(capsys):
    code, out = run(capsys, "check", "1213121", "--n", "3")
    assert code == 0
    assert out == "avoids\n"


def test_check_violating_word_reports_shortest_witness(capsys):
    code, out = run(capsys, "check", "1213213", "--n", "3")
    assert code == 1
    assert out == "violates\t213213\t1\n"


def test_check_json_format(capsys):
    code, payload = run_json(capsys, "check", "1212", "--n", "3", "--format", "json")
    assert code == 1
    assert payload == {"verdict": "violates", "property": "square",
                       "witness": "1212", "offset": 0}


def test_check_other_property(capsys):
    code, out = run(capsys, "check", "1221", "--n", "3", "--prop", "abelian")
    assert code == 1
    code, out = run(capsys, "check", "1221", "--n", "3", "--prop", "cube")
    assert code == 0


def test_check_reads_word_from_file(capsys, tmp_path):
    src = tmp_path / "word.txt"
    src.write_text("1213121\n")
    code, out = run(capsys, "check", "--file", str(src), "--n", "3")
    assert code == 0
    assert out == "avoids\n"


def test_bad_input_gives_usage_exit(capsys):
    assert cli.main(["check", "129", "--n", "3"]) == 2
    capsys.readouterr()
    assert cli.main(["check", "--n", "3"]) == 2
    capsys.readouterr()
    assert cli.main(["check", "121", "--n", "3", "--prop", "wat"]) == 2
    capsys.readouterr()
    assert cli.main(["frobnicate"]) == 2
    capsys.readouterr()
    assert cli.main([]) == 2
    capsys.readouterr()


def test_potential_json(capsys):
    code, payload = run_json(capsys, "potential", golden.SHORTEST_EXTREMAL_TERNARY,
                             "--n", "3")
    assert code == 0
    assert payload["AE"] == 0
    assert payload["ae"] == 0
    assert payload["extremal"] is True
    assert payload["maximal"] is True
    assert payload["extensions"] == []
    assert payload["length"] == 25


def test_potential_reports_back_steps(capsys):
    code, payload = run_json(capsys, "potential", "121", "--n", "3")
    assert code == 0
    assert payload["AE"] == 4
    assert payload["extensions"] == [
        {"back_step": 0, "letter": 3},
        {"back_step": 1, "letter": 3},
        {"back_step": 2, "letter": 3},
        {"back_step": 3, "letter": 3},
    ]


def test_potential_tsv(capsys):
    code, out = run(capsys, "potential", "121", "--n", "3", "--format", "tsv")
    assert code == 0
    lines = out.splitlines()
    assert "AE\t4" in lines
    assert "ae\t2" in lines
    assert "extension\t1\t3" in lines


def test_potential_with_abelian_property(capsys):
    code, payload = run_json(capsys, "potential", "123421324321", "--n", "4",
                             "--prop", "abelian")
    assert code == 0
    assert payload["AE"] == 0
    assert payload["extremal"] is True


def test_extend_tsv(capsys):
    code, out = run(capsys, "extend", "121", "--n", "3")
    assert code == 0
    assert out == "back_step\tletter\n0\t3\n1\t3\n2\t3\n3\t3\n"


def test_nonchalant_final_word(capsys):
    code, out = run(capsys, "nonchalant", "--init", "12", "--n", "4",
                    "--mode", "internal", "--iters", "7", "--emit", "final")
    assert code == 0
    assert out == "131413212\n"


def test_nonchalant_trace(capsys):
    code, out = run(capsys, "nonchalant", "--init", "1", "--n", "3",
                    "--iters", "3", "--emit", "trace")
    assert code == 0
    assert out == "1\t0\t2\t2\n2\t0\t1\t3\n3\t0\t3\t4\n"


def test_nonchalant_histogram(capsys):
    code, out = run(capsys, "nonchalant", "--init", "1", "--n", "3",
                    "--iters", "100", "--emit", "histogram")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "back_step\tcount"
    hist = {int(a): int(b) for a, b in (ln.split("\t") for ln in lines[1:])}
    assert sum(hist.values()) == 100
    assert hist[0] == 94


def test_nonchalant_events(capsys):
    code, out = run(capsys, "nonchalant", "--init", "1", "--n", "3",
                    "--iters", "100", "--emit", "events")
    assert code == 0
    rows = [tuple(map(int, ln.split("\t"))) for ln in out.splitlines()[1:]]
    assert rows == [(i, s) for i, s in golden.NONZERO_EVENTS if i <= 100]


def test_nonchalant_gaps(capsys):
    code, out = run(capsys, "nonchalant", "--init", "1", "--n", "3",
                    "--iters", "100", "--emit", "gaps", "--gap-d", "1")
    assert code == 0
    assert out == "gap\tcount\n5\t1\n7\t1\n25\t1\n32\t1\n"


def test_nonchalant_newmax(capsys):
    code, out = run(capsys, "nonchalant", "--init", "1", "--n", "3",
                    "--iters", "40", "--emit", "newmax")
    assert code == 0
    rows = [tuple(map(int, ln.split("\t"))) for ln in out.splitlines()[1:]]
    assert rows == [(i, v) for i, v in golden.NEW_MAXIMA if i <= 41]


def test_search_count(capsys):
    code, payload = run_json(capsys, "search", "count", "--n", "3", "--k", "5")
    assert code == 0
    assert payload["count"] == 30
    assert payload["spec"]["goal"] == "count"
    assert payload["spec"]["alphabet_size"] == 3


def test_search_enumerate(capsys):
    code, out = run(capsys, "search", "enumerate", "--n", "3", "--k", "3")
    assert code == 0
    words = out.splitlines()
    assert len(words) == 12
    assert words[0] == "121"
    assert words == sorted(words)


def test_search_extremal(capsys):
    code, payload = run_json(capsys, "search", "extremal", "--n", "2", "--k", "3")
    assert code == 0
    assert payload["count"] == 2
    assert payload["witnesses"] == ["121", "212"]


def test_search_shortest_extremal(capsys):
    code, payload = run_json(capsys, "search", "shortest-extremal", "--n", "2",
                             "--k-max", "6")
    assert code == 0
    assert payload["found"] is True
    assert payload["k"] == 3


def test_search_max_potential(capsys):
    code, payload = run_json(capsys, "search", "max-potential", "--n", "3", "--k", "8")
    assert code == 0
    assert (payload["row"]["ae"], payload["row"]["AE"]) == golden.MAX_POTENTIALS_3[8]


def test_search_max_potential_rejects_other_properties(capsys):
    assert cli.main(["search", "max-potential", "--n", "3", "--k", "5",
                     "--prop", "abelian"]) == 2
    capsys.readouterr()


def test_search_abelian_halt(capsys):
    code, payload = run_json(capsys, "search", "abelian-halt", "--n", "3")
    assert code == 0
    assert payload["halt_length"] == 7
    assert payload["final"] == "1213121"


def test_search_budget_exit_code(capsys):
    assert cli.main(["search", "count", "--n", "3", "--k", "20",
                     "--budget", "10"]) == 3
    capsys.readouterr()


def test_construct_zimin(capsys):
    code, out = run(capsys, "construct", "zimin", "--m", "4")
    assert code == 0
    assert out == "121312141213121\n"


def test_construct_m_word(capsys):
    code, payload = run_json(capsys, "construct", "m-word")
    assert code == 0
    assert payload["word"] == golden.MAX_AE_WORD_35
    assert payload["ae"] == 12
    assert payload["slots"] == golden.MAX_AE_WORD_35_SLOTS


def test_construct_prop_s_verify(capsys):
    code, payload = run_json(capsys, "construct", "prop-s", "--verify")
    assert code == 0
    assert payload["canonical"] == "displayed"
    assert payload["displayed"]["report"]["ok"] is True
    assert payload["constructed"]["report"]["ok"] is False
    assert payload["identities"]["ok"] is True
    assert payload["displayed"]["word"] == golden.BLOCKED_WORD_PRINTED


def test_construct_theorem5_verify(capsys):
    code, payload = run_json(capsys, "construct", "theorem5", "--n", "4", "--verify")
    assert code == 0
    assert payload["report"]["ok"] is True
    assert len(payload["images"]) == 6
    assert len(payload["word"]) == 319


def test_construct_prop6(capsys):
    code, payload = run_json(capsys, "construct", "prop6",
                             "--verify-budget", "6", "--square-budget", "6")
    assert code == 0
    assert payload["report"]["ok"] is True
    assert len(payload["blocks"]) == 49
    assert payload["block_length"] == 28
    assert payload["total_length"] == (2 ** 49 - 1) * 28 + 27


def test_table_zimin_seq(capsys):
    code, out = run(capsys, "table", "zimin-seq", "--max", "8")
    assert code == 0
    rows = [tuple(map(int, ln.split("\t"))) for ln in out.splitlines()[2:]]
    assert rows == [(m, golden.ZIMIN_POTENTIALS[m - 1]) for m in range(1, 9)]


def test_table_two(capsys):
    code, out = run(capsys, "table", "table2", "--max-k", "10")
    assert code == 0
    rows = [tuple(map(int, ln.split("\t"))) for ln in out.splitlines()[2:]]
    assert rows == [(k,) + golden.MAX_POTENTIALS_3[k] for k in range(3, 11)]


def test_table_three(capsys):
    code, out = run(capsys, "table", "table3", "--max-i", "12")
    assert code == 0
    rows = [tuple(map(int, ln.split("\t"))) for ln in out.splitlines()[2:]]
    assert rows == [(i, golden.AE_TRACE_2_39[i]) for i in range(2, 13)]


def test_table_five_six(capsys):
    code, out = run(capsys, "table", "table5-6", "--init", "1", "--iters", "100")
    assert code == 0
    rows = [tuple(map(int, ln.split("\t"))) for ln in out.splitlines()[2:]]
    assert rows == [(i, s) for i, s in golden.NONZERO_EVENTS if i <= 100]


def test_table_one_single_init(capsys):
    code, out = run(capsys, "table", "table1", "--inits", "1", "--iters", "150")
    assert code == 0
    lines = out.splitlines()
    assert lines[1] == "init\tback_step\tcount"
    counts = [int(ln.split("\t")[2]) for ln in lines[2:]]
    assert sum(counts) == 150


def test_table_seven_single_init(capsys):
    code, out = run(capsys, "table", "table7", "--inits", "1", "--iters", "100",
                    "--d", "1")
    assert code == 0
    rows = [ln.split("\t") for ln in out.splitlines()[2:]]
    assert [(r[0], int(r[1]), int(r[2])) for r in rows] == \
        [("1", 5, 1), ("1", 7, 1), ("1", 25, 1), ("1", 32, 1)]


def test_out_flag_writes_file(capsys, tmp_path):
    target = tmp_path / "result.txt"
    code, out = run(capsys, "construct", "zimin", "--m", "3", "--out", str(target))
    assert code == 0
    assert out == ""
    assert target.read_text() == "1213121\n"


def test_same_invocation_is_byte_stable(capsys, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for path in (a, b):
        assert cli.main(["table", "table2", "--max-k", "12",
                         "--out", str(path)]) == 0
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()


def test_worker_count_does_not_change_output(capsys, tmp_path):
    a, b = tmp_path / "w1", tmp_path / "w2"
    assert cli.main(["table", "table2", "--max-k", "12", "--workers", "1",
                     "--out", str(a)]) == 0
    assert cli.main(["table", "table2", "--max-k", "12", "--workers", "2",
                     "--out", str(b)]) == 0
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()
