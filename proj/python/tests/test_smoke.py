import pytest

import fqxsplit


def test_gen_split_verify():
    algebra, truth = fqxsplit.gen(3, 2, max_deg=1, seed=7)
    assert algebra["dim"] == 4
    assert truth["n"] == 2
    result = fqxsplit.split(algebra, seed=7)
    assert result["verified"]
    assert result["n"] == 2
    assert len(result["images"]) == 4
    assert len(result["left_ideal"]) == 2
    assert fqxsplit.verify(algebra, result)


def test_deterministic():
    algebra, _ = fqxsplit.gen(2, 2, max_deg=2, seed=3, e=2)
    assert fqxsplit.split(algebra, seed=1) == fqxsplit.split(algebra, seed=1)


def test_tampered_images_fail():
    algebra, _ = fqxsplit.gen(5, 2, max_deg=1, seed=2)
    result = fqxsplit.split(algebra, seed=2)
    entry = result["images"][1][0][1]
    entry["num"] = entry["num"] + [[1]] if entry["num"] else [[1]]
    assert not fqxsplit.verify(algebra, result)


def test_maxorder_disc():
    algebra, _ = fqxsplit.gen(2, 2, max_deg=2, seed=5)
    order = fqxsplit.maxorder(algebra, "fx")
    assert order["disc"] == [[1]]
    assert order["m"] == 4
    with pytest.raises(fqxsplit.ValidationError):
        fqxsplit.maxorder(algebra, "zz")


def test_reduce():
    one, zero, x = {"num": [[1]], "den": [[1]]}, {"num": [], "den": [[1]]}, {"num": [[0], [1]], "den": [[1]]}
    out = fqxsplit.reduce({"p": 3, "e": 1, "m": 2, "vectors": [[one, zero], [x, one]]})
    assert out["orthogonality_defect"] == 0


def test_errors():
    with pytest.raises(fqxsplit.NotUnital):
        fqxsplit.split({"p": 3, "dim": 1, "gamma": [[[{"num": [], "den": [[1]]}]]]})
    with pytest.raises(fqxsplit.ValidationError):
        fqxsplit.split("not json")
    assert issubclass(fqxsplit.NotSplit, fqxsplit.FqxError)


def test_non_split_quaternions():
    import pathlib

    data = pathlib.Path(__file__).resolve().parents[2] / "tests" / "data" / "nonsplit_quaternions.json"
    with pytest.raises(fqxsplit.NotSplit):
        fqxsplit.split(data.read_text())
