"""Smoke test for the Python bindings (run after building _uast_taint)."""
import json
import pathlib
import sys
import tempfile

sys.path.insert(0, sys.argv[1] if len(sys.argv) > 1 else ".")

import _uast_taint as ut  # noqa: E402


def test_to_uast_json_roundtrip():
    doc = ut.to_uast_json("x = 1\n", "minipy", "t.mpy")
    parsed = json.loads(doc)
    assert parsed["version"] == "1"
    assert parsed["root"]["kind"] == "PackageDeclaration"
    assert ut.validate_uast_json(doc) is True


def test_syntax_error_maps_to_python_exception():
    try:
        ut.to_uast_json("def f(:\n", "minipy")
    except ut.UastSyntaxError as e:
        assert "syntax error" in str(e)
    else:
        raise AssertionError("expected UastSyntaxError")


def test_analyze_finds_taint_flow():
    with tempfile.TemporaryDirectory() as d:
        src = pathlib.Path(d) / "app.mpy"
        src.write_text("t = source()\nexec(t)\n")
        findings = ut.analyze(d)
        assert len(findings) == 1
        f = findings[0]
        assert f["ruleId"] == "cmd-exec"
        assert f["sink"]["startLine"] == 2
        assert f["trace"][0]["kind"] == "source"
        assert f["trace"][-1]["kind"] == "sink"

        sarif = json.loads(ut.analyze_sarif(d))
        assert sarif["version"] == "2.1.0"
        assert len(sarif["runs"][0]["results"]) == 1


def test_analyze_clean_and_config_knobs():
    with tempfile.TemporaryDirectory() as d:
        src = pathlib.Path(d) / "app.mpy"
        src.write_text("x = 1\nexec(x)\n")
        assert ut.analyze(d) == []
        assert ut.analyze(d, loop_bound=1, lang_handlers=False) == []


def main():
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_")]
    for t in tests:
        t()
        print(f"ok {t.__name__}")
    print(f"{len(tests)} python binding tests passed")


if __name__ == "__main__":
    main()
