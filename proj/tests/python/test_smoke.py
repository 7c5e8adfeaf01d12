import os
import random
from pathlib import Path

import pytest

import godelgen

SIG_DIR = Path(os.environ.get("GODELGEN_SIGNATURE_DIR", Path(__file__).resolve().parents[2] / "signatures"))


def sig(name):
    return godelgen.Signature.from_file(str(SIG_DIR / name))


def test_mingle_table_and_inverse():
    assert godelgen.mingle(1, 0) == 2
    assert godelgen.mingle(0, 1) == 1
    assert godelgen.mingle(3, 3) == 15
    rng = random.Random(7)
    for _ in range(200):
        a, b = rng.getrandbits(100), rng.getrandbits(70)
        assert godelgen.unmingle(godelgen.mingle(a, b)) == (a, b)
    xs = [5, 0, 2**80 + 3]
    assert godelgen.unmingle_fold(godelgen.mingle_fold(xs), 3) == xs


def test_negative_rejected():
    with pytest.raises(ValueError):
        godelgen.mingle(-1, 0)


def test_sets():
    assert godelgen.set_to_gaps([4, 11, 96]) == [4, 6, 84]
    assert godelgen.gaps_to_set([4, 6, 84]) == [4, 11, 96]
    assert godelgen.set_to_gaps([5, 5, 0]) == [0, 4]


def test_lambda_codec():
    codec = godelgen.Codec(sig("lambda.sig"))
    assert codec.encode("t", "lam [x] x") == 0
    assert codec.decode("t", 1) == "app (lam [x0] x0) (lam [x0] x0)"
    assert codec.compare("t", "lam [x] x", "lam [y] y") == 0
    assert codec.code_space("t") is None
    for n in range(50):
        assert codec.encode("t", codec.decode("t", n)) == n
    big = 2**200 + 12345
    assert codec.encode("t", codec.decode("t", big)) == big


def test_indexed_family():
    codec = godelgen.Codec(sig("term.sig"))
    assert codec.encode("term", "unit", index=0) == 0
    assert codec.encode("term", "rec [f] f", index=0) == 2
    assert codec.decode("term", 1, index=0) == "app (lam [x0] x0) unit"
    assert codec.enumerate("term", 3, index=2)


def test_rat_and_tag_repair():
    codec = godelgen.Codec(sig("rat.sig"))
    assert [codec.encode("rat", f"whole {n}") for n in range(5)] == [0, 2, 4, 6, 8]
    fixed = godelgen.Codec(sig("rat_fracfirst.sig"))
    assert fixed.tag_order("rat") == ["whole", "frac"]
    trap = godelgen.Codec(sig("rat.sig"), force_tags={"rat": ["frac", "whole"]})
    with pytest.raises(godelgen.FuelExhausted):
        trap.decode("rat", 0, fuel=1000)


def test_finite_classes():
    codec = godelgen.Codec(sig("bool.sig"))
    assert codec.code_space("bool") == 2
    assert codec.enumerate("bool", 5) == ["true", "false"]
    with pytest.raises(godelgen.CodeOutOfRange):
        codec.decode("bool", 2)


def test_errors():
    with pytest.raises(godelgen.ParseError):
        godelgen.Signature("nat : type.\nz : nat\n")
    with pytest.raises(godelgen.ValidationError) as info:
        sig("nonuniform.sig")
    assert any(d[0] == "nonuniform" for d in info.value.diagnostics)
    assert isinstance(info.value, godelgen.Error)
    codec = godelgen.Codec(sig("lambda.sig"))
    with pytest.raises(godelgen.TermError):
        codec.encode("t", "lam [x] y")
    rules = [d[0] for d in godelgen.diagnose((SIG_DIR / "plus.sig").read_text())]
    assert "single-index" in rules


def test_verify_report():
    codec = godelgen.Codec(sig("lambda.sig"))
    report = godelgen.verify(codec, max_size=4, max_code=100, threads=1)
    assert report["passed"] is True
    [cls] = report["classes"]
    assert cls["type"] == "t"
    assert all(cls[p] == "pass" for p in ("total", "unique", "onto", "one_to_one"))
    with pytest.raises(ValueError):
        godelgen.verify(codec, max_code=1)
    bad = godelgen.Codec(sig("rat.sig"), force_tags={"rat": ["frac", "whole"]})
    report = godelgen.verify(bad, max_size=3, max_code=20, threads=1, fuel=1000)
    assert report["passed"] is False
    rat = next(c for c in report["classes"] if c["type"] == "rat")
    assert rat["counterexample"]["onto"]["witness"] == "code 0"


def test_cardinalities():
    table = sig("term.sig").cardinalities()
    assert table["term/z"] == "Infinite"
    assert sig("bool.sig").cardinalities()["bool"] == "Finite(2)"
