import json

import pytest

from stringbricks.cli import main
from stringbricks.presets import GAMMA_TEXT, lambda_n_text


@pytest.fixture()
def lambda3_file(tmp_path):
    f = tmp_path / "lambda3.alg"
    f.write_text(lambda_n_text(3))
    return str(f)


@pytest.fixture()
def gamma_file(tmp_path):
    f = tmp_path / "gamma.alg"
    f.write_text(GAMMA_TEXT)
    return str(f)


def run_json(capsys, argv):
    code = main(argv + ["--json"] if "--json" not in argv else argv)
    doc = json.loads(capsys.readouterr().out)
    assert doc["schema"] == "stringbricks/1"
    assert doc["exit_code"] == code
    return code, doc


def test_validate(lambda3_file, gamma_file, capsys):
    code, doc = run_json(capsys, ["validate", lambda3_file])
    assert code == 0 and doc["is_string_algebra"] and doc["is_gentle"]
    code, doc = run_json(capsys, ["validate", gamma_file])
    assert code == 0 and doc["is_string_algebra"] and not doc["is_gentle"]


def test_validate_counterexample(tmp_path, capsys):
    f = tmp_path / "loop.alg"
    f.write_text("vertex v\narrow a v v\n")
    code, doc = run_json(capsys, ["validate", str(f)])
    assert code == 1
    assert any(v["condition"] == "III" for v in doc["violations"])


def test_signs(lambda3_file, capsys):
    code, doc = run_json(capsys, ["signs", lambda3_file])
    assert code == 0
    assert doc["signs"]["a1"] == [1, 1]


def test_signs_rejected(tmp_path, capsys):
    text = lambda_n_text(3) + "".join(
        f"sign {a} +1 +1\n" for a in ("a1", "b1", "a2", "b2"))
    f = tmp_path / "bad.alg"
    f.write_text(text)
    code, doc = run_json(capsys, ["signs", str(f)])
    assert code == 1 and "(a)" in doc["error"]


def test_build_mia(gamma_file, tmp_path, capsys):
    dot = tmp_path / "gamma.dot"
    code, doc = run_json(capsys, ["build-mia", gamma_file, "--dot", str(dot)])
    assert code == 0 and doc["states"] == 28 and doc["transitions"] == 32
    assert dot.read_text().startswith("digraph")
    code, doc = run_json(capsys, ["build-mia", gamma_file, "--parity"])
    assert code == 0 and doc["states"] == 28
    assert " 1 " in doc["mia"]  # binary letters in the emitted format


def test_strings_and_bands(lambda3_file, capsys):
    code, doc = run_json(capsys, ["strings", lambda3_file, "--max-len", "1"])
    assert code == 0 and doc["count"] == 14
    code, doc = run_json(capsys, ["bands", lambda3_file, "--max-len", "2"])
    assert code == 0 and doc["bands"] == ["a1' b1", "a2' b2"]


def test_check_string_brick_all(lambda3_file, capsys):
    code, doc = run_json(capsys, ["check-string-brick", lambda3_file, "b1 a1'",
                                  "--method", "all"])
    assert code == 0
    assert [r["method"] for r in doc["reports"]] == ["direct", "automaton", "endo"]
    assert all(r["verdict"] for r in doc["reports"])


def test_check_string_brick_false(lambda3_file, capsys):
    code, doc = run_json(capsys, ["check-string-brick", lambda3_file,
                                  "b1 a1' a2' b2"])
    assert code == 1 and doc["verdict"] is False


def test_check_string_brick_bad_literal(lambda3_file, capsys):
    code, doc = run_json(capsys, ["check-string-brick", lambda3_file, "b2 a1"])
    assert code == 2 and "relation" in doc["error"]


def test_check_band_brick(lambda3_file, capsys):
    code, doc = run_json(capsys, ["check-band-brick", lambda3_file, "a2' b2",
                                  "--l", "1"])
    assert code == 0
    code, doc = run_json(capsys, ["check-band-brick", lambda3_file, "a2' b2",
                                  "--l", "2"])
    assert code == 1
    assert any(r["reason"] == "l must be 1" for r in doc["reports"])


def test_check_band_brick_not_a_band(lambda3_file, capsys):
    code, doc = run_json(capsys, ["check-band-brick", lambda3_file, "b1 a1'",
                                  "--l", "1"])
    assert code == 2 and "not a band" in doc["error"]


def test_enumerate_bricks(lambda3_file, capsys):
    code, doc = run_json(capsys, ["enumerate-bricks", lambda3_file,
                                  "--max-len", "2"])
    assert code == 0
    assert "b1 a1'" in doc["string_bricks"]
    assert "a2' b2" in doc["band_bricks"]


def test_sturmian_check(capsys):
    code, doc = run_json(capsys, ["sturmian", "--directive", "1,(1)",
                                  "--prefix", "200", "--check"])
    assert code == 0 and doc["violation"] is None


def test_sturmian_bridge(capsys):
    code, doc = run_json(capsys, ["sturmian", "--directive", "1,(1)",
                                  "--prefix", "120", "--check", "--bridge"])
    assert code == 0
    assert doc["bridge_report"]["witness"] is None
    assert doc["bridge_consistent"] is True


def test_sturmian_bad_directive(capsys):
    code, doc = run_json(capsys, ["sturmian", "--directive", "1,(", "--prefix", "10"])
    assert code == 2


def test_recover_roundtrip_cli(lambda3_file, gamma_file, tmp_path, capsys):
    code, doc = run_json(capsys, ["build-mia", lambda3_file, "--parity"])
    miafile = tmp_path / "l3.mia"
    miafile.write_text(doc["mia"])
    code, doc = run_json(capsys, ["recover", str(miafile)])
    assert code == 0 and doc["vertices"] == 3 and doc["arrows"] == 4
    code, doc = run_json(capsys, ["roundtrip", gamma_file])
    assert code == 0 and doc["isomorphic"]
    assert doc["vertex_map"]


def test_unknown_file(capsys):
    code, doc = run_json(capsys, ["validate", "/nonexistent.alg"])
    assert code == 2


def test_human_output(lambda3_file, capsys):
    code = main(["check-string-brick", lambda3_file, "b1 a1'", "--method", "direct"])
    out = capsys.readouterr().out
    assert code == 0 and "direct: brick" in out


def test_cap_exit_code(lambda3_file, capsys, monkeypatch):
    import stringbricks.cli as climod
    from stringbricks.strings import CapExceeded

    def boom(self, max_len, cap=0):
        raise CapExceeded("too many")

    monkeypatch.setattr(climod.Context, "enumerate_strings", boom)
    code = main(["strings", lambda3_file, "--max-len", "9"])
    assert code == 3


@pytest.mark.parametrize("argv,expect_code", [
    (["validate", "{l3}"], 0),
    (["signs", "{l3}"], 0),
    (["strings", "{l3}", "--max-len", "2"], 0),
    (["bands", "{l3}", "--max-len", "2"], 0),
    (["check-string-brick", "{l3}", "b1 a1'"], 0),
    (["check-string-brick", "{l3}", "b1 a1' a2' b2"], 1),
    (["check-band-brick", "{l3}", "a2' b2", "--l", "1"], 0),
    (["check-band-brick", "{l3}", "a2' b2", "--l", "2"], 1),
    (["roundtrip", "{gamma}"], 0),
])
def test_structured_and_human_verdicts_agree(argv, expect_code, lambda3_file,
                                             gamma_file, capsys):
    argv = [a.format(l3=lambda3_file, gamma=gamma_file) for a in argv]
    human_code = main(argv)
    capsys.readouterr()
    json_code, doc = run_json(capsys, argv + ["--json"])
    assert human_code == json_code == expect_code


def test_signs_declared(gamma_file, capsys):
    code, doc = run_json(capsys, ["signs", gamma_file])
    assert code == 0
    assert doc["signs"]["a3"] == [-1, 1]
    assert doc["signs"]["c3"] == [-1, -1]
