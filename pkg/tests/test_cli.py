import json

import fourcover.cli as cli
from fourcover.cli import build_parser, run, main
from fourcover.errors import InsufficientPrecision

SCHEMA_KEYS = ["input", "normalization", "type", "subroute", "extension",
               "components", "edges", "checks", "ms"]


def invoke(argv):
    args = build_parser().parse_args(argv)
    return run(args)


class TestRun:
    def test_classify_1b(self):
        rep, code = invoke(["classify", "--p", "5", "--beta", "1",
                            "--gamma", "4", "--lambda", "tau^2"])
        assert code == 0
        assert rep["type"] == "1b"
        assert list(rep.keys()) == SCHEMA_KEYS

    def test_model_type3(self):
        rep, code = invoke(["model", "--p", "5", "--beta", "2",
                            "--gamma", "1", "--lambda", "5"])
        assert code == 0
        assert rep["type"] == "3"
        assert [c["genus"] for c in rep["components"]] == [2, 2]
        assert rep["edges"] == [[0, 1, 1]]
        assert all(c["passed"] for c in rep["checks"])

    def test_deuring(self):
        rep, code = invoke(["deuring", "--lambda", "32"])
        assert code == 0
        assert rep["good_reduction"] is False
        rep, code = invoke(["deuring", "--lambda", "2"])
        assert code == 0
        assert rep["good_reduction"] is True

    def test_invalid_lambda_one(self):
        rep, code = invoke(["classify", "--p", "5", "--beta", "1",
                            "--gamma", "4", "--lambda", "1"])
        assert code == 3
        assert "error" in rep

    def test_invalid_token(self):
        rep, code = invoke(["classify", "--p", "5", "--beta", "1",
                            "--gamma", "4", "--lambda", "bogus"])
        assert code == 3

    def test_bad_exponents(self):
        rep, code = invoke(["classify", "--p", "5", "--beta", "5",
                            "--gamma", "1", "--lambda", "3"])
        assert code == 3

    def test_byte_identical(self):
        argv = ["model", "--p", "5", "--beta", "1", "--gamma", "4",
                "--lambda", "5^3"]
        rep1, _ = invoke(argv)
        rep2, _ = invoke(argv)
        assert json.dumps(rep1, sort_keys=True) == json.dumps(rep2, sort_keys=True)
        assert rep1["ms"] is None

    def test_sweep_counts(self):
        rep, code = invoke(["sweep", "--p", "3", "--lambdas", "2,3,27",
                            "--precision", "40"])
        assert code == 0
        assert rep["rows_total"] == 9
        assert rep["rows_failed"] == 0
        assert all(r["genus_conservation"] for r in rep["rows"] if "type" in r)

    def test_sweep_invalid_rows_collected(self):
        rep, code = invoke(["sweep", "--p", "3", "--lambdas", "1,2"])
        assert code == 0
        bad = [r for r in rep["rows"] if "error" in r]
        good = [r for r in rep["rows"] if "type" in r]
        assert len(bad) == 3 and len(good) == 3

    def test_empty_grid(self):
        rep, code = invoke(["sweep", "--p", "3", "--lambdas", " "])
        assert code == 0
        assert rep["rows_total"] == 0

    def test_precision_retry_then_exit_2(self, monkeypatch):
        calls = []

        def flaky(args, precision):
            calls.append(getattr(args, "_boost", 1))
            if len(calls) == 1:
                raise InsufficientPrecision("digits exhausted")
            return {"input": {"command": "classify"}, "ms": None}

        monkeypatch.setitem(cli._RUNNERS, "classify", flaky)
        rep, code = invoke(["classify", "--p", "5", "--beta", "1",
                            "--gamma", "4", "--lambda", "3"])
        assert code == 0
        assert calls == [1, 4]  # second attempt runs at 4x precision

        def hopeless(args, precision):
            raise InsufficientPrecision("never enough")

        monkeypatch.setitem(cli._RUNNERS, "classify", hopeless)
        rep, code = invoke(["classify", "--p", "5", "--beta", "1",
                            "--gamma", "4", "--lambda", "3"])
        assert code == 2
        assert rep["error"] == "InsufficientPrecision"


class TestMain:
    def test_missing_args(self, capsys):
        assert main(["classify", "--p", "5"]) == 3

    def test_json_output(self, capsys):
        rc = main(["classify", "--p", "5", "--beta", "1", "--gamma", "4",
                   "--lambda", "tau^2", "--json"])
        assert rc == 0
        out = json.loads(capsys.readouterr().out)
        assert out["type"] == "1b"

    def test_human_output(self, capsys):
        rc = main(["model", "--p", "5", "--beta", "1", "--gamma", "4",
                   "--lambda", "5^3"])
        assert rc == 0
        text = capsys.readouterr().out
        assert "type 2" in text
        assert "multiplicity 5" in text

    def test_exit_code_3_on_stderr_json(self, capsys):
        rc = main(["classify", "--p", "5", "--beta", "1", "--gamma", "4",
                   "--lambda", "0"])
        assert rc == 3
        err = capsys.readouterr().err
        assert "error" in json.loads(err)
