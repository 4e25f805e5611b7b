import json
import struct
import subprocess
import sys

import pytest

from slgindex.cli import main
from slgindex.corpora import EXAMPLE_TEXT, example_grammar
from slgindex.grammar import grammar_from_text, save_grammar


@pytest.fixture
def files(tmp_path):
    text = tmp_path / "t.txt"
    text.write_bytes(EXAMPLE_TEXT[:-1])
    slg = tmp_path / "t.slg"
    slg.write_bytes(save_grammar(example_grammar()))
    cdg = tmp_path / "t.cdg"
    assert main(["index", str(slg), "-o", str(cdg)]) == 0
    return tmp_path, text, slg, cdg


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_query_modes(files, capsys):
    _, _, slg, cdg = files
    capsys.readouterr()
    assert run(capsys, "query", slg, cdg, "count", "GC")[:2] == (0, "4\n")
    assert run(capsys, "query", slg, cdg, "locate", "AGAGCG")[:2] == (0, "0\n6\n")
    assert run(capsys, "query", slg, cdg, "exists", "CA")[0] == 1
    assert run(capsys, "query", slg, cdg, "exists", "GAG")[0] == 0


def test_pattern_from_file(files, capsys):
    tmp, _, slg, cdg = files
    pat = tmp / "p"
    pat.write_bytes(b"GCGC")
    assert run(capsys, "query", slg, cdg, "locate", f"@{pat}")[1] == "9\n11\n"


def test_empty_pattern_exit_2(files, capsys):
    _, _, slg, cdg = files
    code, _, err = run(capsys, "query", slg, cdg, "count", "")
    assert code == 2 and "empty" in err


def test_compress_then_stats(files, capsys):
    tmp, text, _, _ = files
    out = tmp / "c.slg"
    assert run(capsys, "compress", text, "-o", out)[0] == 0
    code, stdout, _ = run(capsys, "stats", out, "--json")
    assert code == 0
    assert json.loads(stdout)["n"] == 16


def test_compress_text_format(files, capsys):
    tmp, text, _, _ = files
    out = tmp / "c.txt"
    assert run(capsys, "compress", text, "-o", out, "--format", "text")[0] == 0
    assert out.read_bytes().startswith(b"SLG 1\n")
    assert run(capsys, "stats", out)[0] == 0


def test_compress_rejects_bad_input(tmp_path, capsys):
    empty = tmp_path / "empty"
    empty.write_bytes(b"")
    assert run(capsys, "compress", empty, "-o", tmp_path / "o")[0] == 2
    dollar = tmp_path / "dollar"
    dollar.write_bytes(b"a$b")
    code, _, err = run(capsys, "compress", dollar, "-o", tmp_path / "o")
    assert code == 2 and "$" in err


def test_stats_oracle_verdict(files, capsys):
    _, _, slg, cdg = files
    code, out, _ = run(capsys, "stats", slg, "--oracle", "--json")
    report = json.loads(out)
    assert code == 0
    assert report["verdict"] == "MATCH"
    assert (report["depth"], report["size"], report["start_length"], report["rules"]) == (3, 13, 7, 4)
    assert report["er"] == report["oracle_er"] == 18
    assert report["grammar_smaller"] is True
    code, out, _ = run(capsys, "stats", slg, "--cdawg", cdg)
    assert "Depth(H)" in out and "Size(N)" in out and "cdawg_edges" in out


def test_stats_oracle_scale_cap(tmp_path, capsys):
    big = tmp_path / "big"
    big.write_bytes(b"ab" * 3000)
    slg = tmp_path / "big.slg"
    run(capsys, "compress", big, "-o", slg)
    code, _, err = run(capsys, "stats", slg, "--oracle")
    assert code == 2 and "4096" in err


def test_cache_capacity_zero_same_index(files, capsys):
    tmp, _, slg, cdg = files
    other = tmp / "zero.cdg"
    _, out_default, _ = run(capsys, "index", slg, "-o", tmp / "again.cdg")
    code, out_zero, _ = run(capsys, "index", slg, "-o", other, "--cache-capacity", "0")
    assert code == 0
    assert other.read_bytes() == cdg.read_bytes()

    def calls(out):
        return int(out.split("ra_calls=")[1].split()[0])

    assert calls(out_zero) > calls(out_default)


def test_corrupted_index(files, capsys):
    tmp, _, slg, cdg = files
    bad = tmp / "bad.cdg"
    bad.write_bytes(b"XXXX" + cdg.read_bytes()[4:])
    code, _, err = run(capsys, "query", slg, bad, "count", "G")
    assert code == 2 and "magic" in err


def test_index_grammar_mismatch(files, capsys):
    tmp, _, _, cdg = files
    other = tmp / "o.slg"
    other.write_bytes(save_grammar(grammar_from_text(b"xyz")))
    assert run(capsys, "query", other, cdg, "count", "G")[0] == 2


def test_bench_deterministic(files, capsys):
    _, _, slg, cdg = files
    argv = ["bench", slg, cdg, "--lengths", "1,4,16", "--reps", "50", "--seed", "3", "--json"]
    a = json.loads(run(capsys, *argv)[1])
    b = json.loads(run(capsys, *argv)[1])
    for report in (a, b):
        for row in report["results"]:
            del row["mean_us"], row["mean_sort_us"]
    assert a == b
    assert [r["length"] for r in a["results"]] == [1, 4, 16]
    full = [r for r in a["results"] if r["length"] == 16][0]
    assert full["mean_occ"] == 1.0


def test_bench_table_and_errors(files, capsys):
    _, _, slg, cdg = files
    code, out, _ = run(capsys, "bench", slg, cdg, "--lengths", "2", "--reps", "5")
    assert code == 0 and "ra_calls" in out
    assert run(capsys, "bench", slg, cdg, "--reps", "0")[0] == 2
    code, _, err = run(capsys, "bench", slg, cdg, "--lengths", "17", "--reps", "1")
    assert code == 2 and "17" in err


def test_import_command(tmp_path, capsys):
    r = tmp_path / "x.R"
    c = tmp_path / "x.C"
    r.write_bytes(struct.pack("<i", 2) + b"ab" + struct.pack("<2i", 0, 1))
    c.write_bytes(struct.pack("<3i", 2, 2, 2))
    out = tmp_path / "x.slg"
    assert run(capsys, "import", r, c, "-o", out)[0] == 0
    code, stdout, _ = run(capsys, "stats", out, "--json")
    assert json.loads(stdout)["n"] == 7


def test_corpus_command(tmp_path, capsys):
    out = tmp_path / "fib"
    assert run(capsys, "corpus", "fibonacci", "-o", out)[0] == 0
    assert len(out.read_bytes()) == 75025


def test_missing_file(tmp_path, capsys):
    assert run(capsys, "stats", tmp_path / "nope")[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "slgindex", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "compress" in proc.stdout
