import pytest

from qce.countries import NameOverrides, Unresolved, display_name, fold, normalize_country_name


@pytest.mark.parametrize(
    "raw, code",
    [
        ("Hong Kong", "HKG"),
        ("Korea, Rep", "KOR"),
        ("Korea, Rep.", "KOR"),
        ("KOREA REP", "KOR"),
        ("Hong Kong SAR, China", "HKG"),
        ("Venezuela, RB", "VEN"),
        ("Iran, Islamic Rep", "IRN"),
        ("Russian Federation", "RUS"),
        ("Côte d'Ivoire", "CIV"),
        ("Türkiye", "TUR"),
        ("USA", "USA"),
        ("UK", "GBR"),
        ("Syrian Arab Republic", "SYR"),
        ("dnk", "DNK"),
        ("  Bosnia & Herzegovina ", "BIH"),
    ],
)
def test_known_names(raw, code):
    assert normalize_country_name(raw) == code


def test_unknown_is_a_value_not_a_guess():
    result = normalize_country_name("Atlantis")
    assert result == Unresolved("Atlantis")
    assert not result


def test_overrides_win():
    ov = NameOverrides({"Atlantis": "GRC", "Congo": "COD"})
    assert normalize_country_name("ATLANTIS", ov) == "GRC"
    assert normalize_country_name("Congo", ov) == "COD"
    assert normalize_country_name("Congo") == "COG"


def test_override_code_must_exist():
    with pytest.raises(ValueError):
        NameOverrides({"Atlantis": "ATL"})


def test_covered_country_list_resolves_uniquely(data_dir):
    names = (data_dir / "covered_countries.txt").read_text().splitlines()
    assert len(names) == 135
    codes = [normalize_country_name(n) for n in names]
    assert all(isinstance(c, str) for c in codes), [n for n, c in zip(names, codes) if not c]
    assert len(set(codes)) == 135


def test_fold_and_display():
    assert fold("Gambia,  The") == "gambia the"
    assert display_name("KOR") == "Korea, Rep"
    assert display_name("ZZZ") == "ZZZ"
