import io
import json

import pytest

from spmodel.cli import run_cli

from conftest import SENTENCE


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_cli(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def empty_kb(tmp_path):
    p = tmp_path / "empty.spk"
    p.write_text("# nothing\n")
    return str(p)


@pytest.fixture
def xabc(tmp_path):
    p = tmp_path / "x.spk"
    p.write_text("P 1 : !X a b c !#X\n")
    return str(p)


def test_align_top3(grammar_path):
    code, out, err = run("align", "--kb", grammar_path, "--new", SENTENCE,
                         "--top", "3")
    assert code == 0
    assert out.count("candidate ") <= 3
    assert "candidate 1: cd=" in out and " p=" in out
    assert "relative to the" in out
    assert err == ""


def test_align_json_schema(grammar_path):
    code, out, _ = run("align", "--kb", grammar_path, "--new", SENTENCE,
                       "--top", "2", "--json")
    assert code == 0
    doc = json.loads(out)
    assert set(doc) == {"params", "candidates"}
    for cand in doc["candidates"]:
        assert set(cand) == {"rows", "columns", "cd", "b_new", "b_code",
                             "probability", "code"}
        assert set(cand["rows"][0]) == {"pattern_id", "symbols"}
        assert set(cand["columns"][0]) == {"entries", "name", "matched"}
    top = doc["candidates"][0]
    assert sorted(r["pattern_id"] for r in top["rows"][1:]) == \
        [f"P{i}" for i in range(1, 9)]
    assert top["code"][0] == "S" and top["code"][-1] == "#S"
    assert abs(sum(c["probability"] for c in doc["candidates"]) - 1) <= 1e-9


def test_align_baseline_only(empty_kb):
    code, out, _ = run("align", "--kb", empty_kb, "--new", "a")
    assert code == 1
    assert "baseline" in out


def test_new_file(tmp_path, xabc):
    nf = tmp_path / "new.spk"
    nf.write_text("NEW : a b c\n")
    code, out, _ = run("encode", "--kb", xabc, "--new-file", str(nf))
    assert code == 0
    assert out.splitlines()[0] == "code: X #X"


def test_encode_decode(xabc):
    code, out, _ = run("encode", "--kb", xabc, "--new", "a b c", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["code"] == ["X", "#X"] and doc["compressed"]
    code, out, _ = run("decode", "--kb", xabc, "--code", "X #X")
    assert code == 0 and out.strip() == "a b c"


def test_encode_no_compression(xabc):
    code, out, _ = run("encode", "--kb", xabc, "--new", "q")
    assert code == 1 and "no compression" in out


def test_decode_nothing(xabc):
    code, out, _ = run("decode", "--kb", xabc, "--code", "Q")
    assert code == 1


def test_recognize_and_complete(tmp_path):
    kb = tmp_path / "long.spk"
    kb.write_text("P 1 : !X a b c d e !#X\n")
    code, out, _ = run("recognize", "--kb", str(kb), "--new", "a b c d e",
                       "--top", "2", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["results"][0]["pattern_ids"] == ["P"]
    code, out, _ = run("complete", "--kb", str(kb), "--new", "a b c d",
                       "--json")
    doc = json.loads(out)
    assert code == 0
    assert doc["results"][0]["inferred"] == ["e"]


def test_msa(dna_path):
    code, out, _ = run("msa", "--file", dna_path)
    assert code == 0
    assert out.startswith("matched-pair score: ")
    assert len(out.splitlines()) == 1 + 9


def test_validate(grammar_path, tmp_path):
    code, out, _ = run("validate", "--kb", grammar_path)
    assert code == 0 and out.startswith("ok: 8 patterns")
    bad = tmp_path / "bad.spk"
    bad.write_text("P1 1 : a\nP1 1 : b\n")
    code, _, err = run("validate", "--kb", str(bad))
    assert code == 1 and "duplicate" in err


def test_validate_alignments(xabc):
    code, out, _ = run("validate", "--kb", xabc, "--new", "a b c")
    assert code == 0 and "all alignments valid" in out


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["align", "--kb", "x", "--bogus"],
    ["align", "--new", "a"],
    ["align", "--kb", "/no/such/file.spk", "--new", "a"],
    ["align", "--kb", "KB", "--new", "a", "--beam", "0"],
    ["align", "--kb", "KB", "--costs", "weird", "--new", "a"],
    ["encode", "--kb", "KB"],
])
def test_usage_errors(argv, xabc):
    argv = [xabc if a == "KB" else a for a in argv]
    code, out, err = run(*argv)
    assert code == 2
    assert out == ""
    assert err


def test_syntax_error_exit(tmp_path):
    bad = tmp_path / "bad.spk"
    bad.write_text("P1 x : a\n")
    code, _, err = run("align", "--kb", str(bad), "--new", "a")
    assert code == 2 and "line 1, column 4" in err


def test_workers_excluded_from_params(xabc):
    outs = {run("align", "--kb", xabc, "--new", "a b c", "--json",
                "--workers", w)[1] for w in ("1", "2")}
    assert len(outs) == 1
    assert "workers" not in json.loads(outs.pop())["params"]
