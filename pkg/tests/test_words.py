import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import brute_occurrences
from wordcx.errors import AlphabetError, BoundsError, ConfigurationError
from wordcx.words import (
    GOLDEN,
    Alphabet,
    EventuallyPeriodicGenerator,
    PeriodicGenerator,
    QuadraticSurd,
    SturmianGenerator,
    Window,
    concat,
    is_prefix,
    is_suffix,
    occurrences,
    primitive_root,
    smallest_period,
)

binary = st.text(alphabet="01", min_size=1, max_size=60)


def test_concat_and_affixes():
    assert concat("ab", "c") == "abc"
    assert is_prefix("ab", "abc") and not is_prefix("b", "abc")
    assert is_suffix("bc", "abc") and is_suffix("", "abc")


def test_concat_rejects_foreign_symbol():
    with pytest.raises(AlphabetError):
        concat("01", "2", alphabet=Alphabet("01"))


def test_occurrences_overlap():
    # 0-based starts, overlapping matches count
    assert occurrences("aa", "aaaa") == [0, 1, 2]
    assert occurrences("1", "0101") == [1, 3]


def test_occurrences_empty_word():
    with pytest.raises(BoundsError):
        occurrences("", "abc")


@given(st.text(alphabet="01", min_size=1, max_size=4), binary)
def test_occurrences_matches_scan(w, u):
    assert occurrences(w, u) == brute_occurrences(w, u)


@given(binary)
def test_smallest_period_definition(word):
    p = smallest_period(word)
    assert all(word[i] == word[i + p] for i in range(len(word) - p))
    assert not any(all(word[i] == word[i + q] for i in range(len(word) - q)) for q in range(1, p))


def test_primitive_root():
    assert primitive_root("010101") == "01"
    assert primitive_root("0100") == "0100"


def test_window_roundtrip_and_subword():
    w = Window("0011", origin=-2, left_tail="0", meta={"note": 1})
    assert w.at(-2) == "0" and w.at(1) == "1"
    assert w.subword(-1, 0) == "01"
    assert Window.from_json(w.to_json()) == w
    with pytest.raises(BoundsError):
        w.at(5)


def test_window_rejects_bad_tail():
    with pytest.raises(ConfigurationError):
        Window("0101", left_tail="11")


def test_periodic_window():
    assert PeriodicGenerator("12").window(0, 9).content == "1212121212"
    assert PeriodicGenerator("12").window(-1, 2).content == "2121"


def test_eventually_periodic_layout():
    gen = EventuallyPeriodicGenerator("12", "3", "4")
    assert gen.window(-4, 3).content == "12123444"


def test_golden_is_exact():
    # floor(n * (sqrt5 - 1) / 2) against integer-only evaluation
    from math import isqrt

    for n in range(1, 2000):
        assert GOLDEN.floor_affine(n) == (isqrt(5 * n * n) - n) // 2


def test_surd_rejects_square():
    with pytest.raises(ConfigurationError):
        QuadraticSurd(0, 1, 4, 1)


def test_sturmian_balanced():
    content = SturmianGenerator().window(0, 3000).content
    for n in (1, 5, 40):
        weights = {content[i:i + n].count("1") for i in range(len(content) - n + 1)}
        assert max(weights) - min(weights) <= 1


def test_sturmian_rational_refuses_long_window():
    gen = SturmianGenerator(Fraction(3, 5))
    gen.window(0, 3)
    with pytest.raises(ConfigurationError):
        gen.window(0, 10)


def test_generator_meta_records_config():
    w = SturmianGenerator().window(0, 9)
    assert json.loads(json.dumps(w.meta))["generator"]["kind"] == "sturmian"
