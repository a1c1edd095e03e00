import pytest

from coauthnet import DataError, CountryRegistry, builtin_registry, normalize_country
from coauthnet.countries import REGIONS


def test_historic_entities_resolve_to_own_codes(registry):
    ussr = registry.resolve("USSR")
    assert ussr.code == "SUN"
    assert ussr.region == "Europe"
    assert ussr.historic
    assert registry.resolve("Soviet Union").code == "SUN"
    assert registry.resolve("Czechoslovakia").code == "CSK"
    assert registry.resolve("Yugoslavia").code == "YUG"
    # Never remapped to successors.
    assert registry.resolve("Russia").code == "RUS"
    assert registry.resolve("USSR").code != registry.resolve("Russia").code


def test_alias_table_merges_spellings(registry):
    assert registry.resolve("United States").code == "USA"
    assert registry.resolve("USA").code == "USA"
    assert registry.resolve("United States of America").code == "USA"
    assert registry.resolve("UK").code == "GBR"


def test_unknown_name_is_none(registry):
    assert registry.resolve("Atlantis") is None
    assert normalize_country("Atlantis", registry) is None


def test_lookup_trims_and_ignores_case(registry):
    for raw in ("  ukraine ", "UKRAINE", "Ukraine"):
        assert registry.resolve(raw).code == "UKR"


def test_normalization_invariant_over_all_aliases(registry):
    for entry in registry:
        for alias in (entry.code, entry.display_name, *entry.aliases):
            assert registry.resolve(alias) is entry
            assert registry.resolve(alias.lower().strip()) is entry
            assert registry.resolve(f"  {alias.upper()}  ") is entry


def test_every_entry_has_one_known_region(registry):
    for entry in registry:
        assert entry.region in REGIONS


def test_dependent_territories_present(registry):
    fro = registry.resolve("Faroe Islands")
    assert fro.code == "FRO"
    assert fro.region == "Europe"
    assert not fro.historic
    assert registry.resolve("Faeroe Islands").code == "FRO"


def test_regions_include_paper_groupings(registry):
    assert registry.resolve("Japan").region == "Asia"
    assert registry.resolve("Russia").region == "Asia"
    assert registry.resolve("United States").region == "NorthAmerica"
    assert registry.resolve("Brazil").region == "SouthAmerica"
    assert registry.resolve("Egypt").region == "Africa"
    assert registry.resolve("Australia").region == "Oceania"


def test_registry_from_csv(tmp_path):
    path = tmp_path / "registry.csv"
    path.write_text(
        "code,display_name,region,historic,aliases\n"
        "UKR,Ukraine,Europe,false,\n"
        'SUN,USSR,Europe,true,"Soviet Union;CCCP"\n',
        encoding="utf-8",
    )
    reg = CountryRegistry.from_csv(path)
    assert len(reg) == 2
    assert reg.resolve("cccp").code == "SUN"
    assert reg.resolve("ukraine").code == "UKR"


def test_registry_csv_validation(tmp_path):
    bad_header = tmp_path / "h.csv"
    bad_header.write_text("code,name\nUKR,Ukraine\n", encoding="utf-8")
    with pytest.raises(DataError, match="header"):
        CountryRegistry.from_csv(bad_header)

    bad_flag = tmp_path / "f.csv"
    bad_flag.write_text(
        "code,display_name,region,historic,aliases\nUKR,Ukraine,Europe,maybe,\n", encoding="utf-8"
    )
    with pytest.raises(DataError, match="historic"):
        CountryRegistry.from_csv(bad_flag)

    bad_region = tmp_path / "r.csv"
    bad_region.write_text(
        "code,display_name,region,historic,aliases\nUKR,Ukraine,Atlantis,false,\n", encoding="utf-8"
    )
    with pytest.raises(DataError, match="region"):
        CountryRegistry.from_csv(bad_region)


def test_registry_rejects_duplicates_and_collisions():
    from coauthnet.countries import CountryEntry

    with pytest.raises(DataError, match="duplicate"):
        CountryRegistry(
            [
                CountryEntry("UKR", "Ukraine", "Europe"),
                CountryEntry("UKR", "Ukraine again", "Europe"),
            ]
        )
    with pytest.raises(DataError, match="maps to both"):
        CountryRegistry(
            [
                CountryEntry("UKR", "Ukraine", "Europe"),
                CountryEntry("UKX", "Ukraine", "Europe"),
            ]
        )
    with pytest.raises(DataError, match="invalid country code"):
        CountryRegistry([CountryEntry("U1", "Utopia", "Europe")])


def test_builtin_registry_is_cached():
    assert builtin_registry() is builtin_registry()
