import os
import random
from fractions import Fraction
from pathlib import Path

import pytest

import nusys

DATA = Path(os.environ.get("NUSYS_DATA", Path(__file__).resolve().parents[2] / "data"))


def test_measures():
    assert nusys.delta("abab") == Fraction(2)
    assert nusys.z("abab") == 3
    assert nusys.gamma_bruteforce("abab") == 2
    assert nusys.b_bruteforce("abab") == 3
    assert nusys.string_complexity("abab", 2) == 2
    assert nusys.complexity_profile("abab") == [2, 2, 2, 1]
    assert nusys.lz76_parse("abab") == [(1, 1, None), (2, 1, None), (3, 2, 1)]
    assert nusys.is_attractor("abab", {2, 3})
    assert not nusys.is_attractor("abab", {1})


def naive_delta(w):
    n = len(w)
    return max(Fraction(len({w[i:i + k] for i in range(n - k + 1)}), k) for k in range(1, n + 1))


def test_delta_matches_naive_on_random_strings():
    rng = random.Random(7)
    for _ in range(200):
        w = "".join(rng.choice("ab") for _ in range(rng.randint(1, 40)))
        assert nusys.delta(w) == naive_delta(w)


def test_decode_and_describe():
    text = (DATA / "ababab.nu").read_text()
    assert nusys.decode(text) == "ababab"
    assert nusys.describe(text) == ("nusystem", 7, 6)
    assert nusys.decode(nusys.delta_sep_system(2)) == "0010011"
    assert nusys.decode(nusys.thue_morse_system(3)) == "01101001"


def test_convert():
    text = (DATA / "fibonacci.bms").read_text()
    macro = nusys.convert(text, "macrosystem", check=True)
    assert nusys.decode(macro) == "abaababaabaab"
    assert nusys.decode(nusys.convert(macro, "bms")) == "abaababaabaab"


def test_errors():
    with pytest.raises(nusys.ParseError):
        nusys.decode("sandwich\n")
    with pytest.raises(nusys.CycleError):
        nusys.decode((DATA / "cycle.macro").read_text())
    with pytest.raises(nusys.ValidityError):
        nusys.decode((DATA / "cycle.macro").read_text())
    with pytest.raises(nusys.LimitError):
        nusys.b_bruteforce("a" * 11)
    with pytest.raises(ValueError):
        nusys.convert((DATA / "ababab.nu").read_text(), "bms")


def test_experiments():
    rows = nusys.delta_vs_ell(1, 3)
    assert [(r["d"], r["n"], r["size"], r["z"]) for r in rows] == [(1, 3, 5, 3), (2, 7, 5, 5), (3, 15, 5, 7)]
    assert all(r["delta"] == Fraction(2) for r in rows)
    tm = nusys.thue_morse_z(1, 4)
    assert [r["z"] for r in tm] == [2, 4, 6, 8]
