import unicodedata
from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from webcorpus.labels import LabelId
from webcorpus.scripts import (
    ScriptRegistry,
    default_registry,
    default_table,
    dominant_script,
    script_consistency,
    script_of,
    script_profile,
    unicode_version,
)

RUS = LabelId("rus", "Cyrl")


def test_profiles():
    assert script_profile("абв") == {"Cyrl": 1.0}
    assert script_profile("abcабв") == {"Cyrl": 0.5, "Latn": 0.5}
    assert script_profile("123 ... !!!") == {}
    assert script_profile("") == {}


def test_combining_marks_and_digits_are_ignored():
    assert script_profile("é 42") == {"Latn": 1.0}


def test_character_scripts():
    assert script_of("a") == "Latn"
    assert script_of("ж") == "Cyrl"
    assert script_of("漢") == "Hani"
    assert script_of("ᦀ") == "Talu"
    assert script_of("1") == "Zyyy"
    assert script_of("́") == "Zinh"
    assert script_of("\U000e0fff") == "Zzzz"


def test_table_version_pinned():
    assert unicode_version() == "17.0.0"
    assert default_table().known("Talu") and not default_table().known("Qqqq")


def test_dominant():
    assert dominant_script("hello") == "Latn"
    assert dominant_script("") is None
    assert dominant_script("漢字漢字漢字abcd") == "Hani"
    assert dominant_script("ab аб") == "Cyrl"  # tie: lexicographic


def test_consistency():
    assert script_consistency("привет мир", RUS) == 0.0
    assert script_consistency("абвгдежзи" + "α", RUS) == pytest.approx(0.1)
    assert script_consistency("123", RUS) == 0.0


def test_own_script_always_admissible():
    reg = ScriptRegistry.from_text("xyz\tLatn\n")
    assert script_consistency("абв", LabelId("xyz", "Cyrl"), reg) == 0.0
    assert script_consistency("абв", LabelId("qqq", "Cyrl"), reg) == 0.0
    assert script_consistency("абв", LabelId("xyz", "Latn"), reg) == 1.0


def test_registry_file_format(tmp_path):
    path = tmp_path / "reg.tsv"
    path.write_text("# comment\nsrp\tCyrl,Latn\njpn\tJpan, Hani,Hira,Kana\n", encoding="utf-8")
    reg = ScriptRegistry.from_file(path)
    assert reg.admissible["srp"] == {"Cyrl", "Latn"}
    assert reg.scripts_for(LabelId("jpn", "Jpan")) == {"Jpan", "Hani", "Hira", "Kana"}
    with pytest.raises(ValueError):
        ScriptRegistry.from_text("srp Cyrl\n")
    with pytest.raises(ValueError):
        ScriptRegistry.from_text("srp\t,\n")


def test_default_registry_nonempty():
    reg = default_registry()
    assert reg.admissible and all(reg.admissible.values())
    assert "Cyrl" in reg.admissible["rus"]


text_st = st.text(alphabet=st.characters(blacklist_categories=("Cs",)), max_size=40)


@given(text_st, st.randoms())
def test_profile_permutation_invariant(text, rnd):
    chars = list(text)
    rnd.shuffle(chars)
    assert script_profile("".join(chars)) == script_profile(text)


@given(text_st)
def test_profile_sums_to_one(text):
    prof = script_profile(text)
    assert prof == {} or abs(sum(prof.values()) - 1) < 1e-9


@given(text_st)
def test_dominant_matches_tally(text):
    counts = Counter(script_of(c) for c in text)
    for k in ("Zyyy", "Zinh", "Zzzz"):
        counts.pop(k, None)
    expected = min(counts, key=lambda c: (-counts[c], c)) if counts else None
    assert dominant_script(text) == expected


@given(text_st)
def test_consistency_zero_when_all_admissible(text):
    reg = ScriptRegistry({"xyz": frozenset(script_profile(text)) or frozenset({"Latn"})})
    assert script_consistency(text, LabelId("xyz", "Latn"), reg) == 0.0


def test_table_agrees_with_unicodedata_on_letters():
    # name prefixes are a coarse but independent check on a few scripts
    for cp in range(0x0400, 0x0460):
        assert script_of(chr(cp)) == "Cyrl", hex(cp)
    for cp in range(0x0391, 0x03A0):
        if unicodedata.name(chr(cp), "").startswith("GREEK"):
            assert script_of(chr(cp)) == "Grek"
