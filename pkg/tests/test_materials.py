import pytest
from hypothesis import given, strategies as st

from cslheat import DomainError, Material, MaterialFileError, MaterialRegistry, builtin_registry, dump_materials, load_materials
from cslheat.thermal import PowerLawConductivity


def test_builtins_match_printed_values():
    reg = builtin_registry()
    assert reg.lookup("lead").density_g_cm3 == pytest.approx(11.4, rel=1e-15)
    k = reg.lookup("torlon 4203").conductivity
    assert (k.k0_hat, k.beta) == (6.13e-3, 2.18)
    assert reg.lookup("Torlon 4203").density_g_cm3 == pytest.approx(1.42, rel=1e-15)
    assert reg.lookup("copper").sound_speed == 4000.0


@pytest.mark.parametrize("name", ["Torlon 4203", "torlon4203", "TORLON-4203", "torlon_4203"])
def test_lookup_is_case_and_punctuation_insensitive(name):
    assert builtin_registry()[name].name == "Torlon 4203"


def test_unknown_lookup():
    with pytest.raises(KeyError, match="unobtainium"):
        builtin_registry()["unobtainium"]


def test_empty_source_keeps_builtins():
    assert load_materials("") == builtin_registry()


def test_shadowing():
    reg = load_materials("[Lead]\ndensity_g_cm3 = 11.35\n")
    assert reg["lead"].density_g_cm3 == pytest.approx(11.35)
    assert len(reg) == len(builtin_registry())


def test_full_record(tmp_path):
    text = """
# sapphire-like test record
[Sample A]
density_kg_m3 = 3980
sound_speed_m_s = 11000   ; inline comment
k0_w_m = 0.03
beta = 3
emissivity = 0.1
"""
    path = tmp_path / "m.ini"
    path.write_text(text)
    m = load_materials(path)["sample a"]
    assert m == Material("Sample A", 3980.0, 11000.0, PowerLawConductivity(0.03, 3.0), 0.1)


@pytest.mark.parametrize(
    "text, field, lineno",
    [
        ("[x]\ndensity_g_cm3 = 0\n", "density", 2),
        ("[x]\ndensity_g_cm3 = -3\n", "density", 2),
        ("[x]\ndensity_g_cm3 = 1\nsound_speed_m_s = -1\n", "sound_speed", 3),
        ("[x]\ndensity_g_cm3 = 1\nemissivity = 2\n", "emissivity", 3),
        ("[x]\ndensity_g_cm3 = 1\nk0_w_m = 1\nbeta = -1\n", "beta", 4),
        ("[x]\ndensity_g_cm3 = 1\nk0_w_m = 1\n", "beta", 1),
        ("[x]\ndensity_g_cm3 = 1\ncolour = red\n", "colour", 3),
        ("[x]\ndensity_g_cm3 = heavy\n", "density_g_cm3", 2),
        ("[x]\nsound_speed_m_s = 100\n", "density", 1),
    ],
)
def test_invariant_violations_name_field_and_record(text, field, lineno):
    with pytest.raises(MaterialFileError) as exc:
        load_materials(text)
    assert exc.value.field == field
    assert exc.value.record == "x"
    assert exc.value.lineno == lineno
    assert "'x'" in str(exc.value)


@pytest.mark.parametrize(
    "text, lineno",
    [
        ("density_g_cm3 = 1\n", 1),
        ("[x]\ndensity_g_cm3 = 1\n[x]\ndensity_g_cm3 = 2\n", 3),
        ("[x]\ndensity_g_cm3 = 1\ndensity_g_cm3 = 2\n", 3),
        ("[x]\ndensity_g_cm3 = 1\n  this line is junk\n[y\n", 4),
    ],
)
def test_parse_errors_carry_line_numbers(text, lineno):
    with pytest.raises(MaterialFileError) as exc:
        load_materials(text)
    assert exc.value.lineno == lineno
    assert f"line {lineno}" in str(exc.value)


def test_names_unique_after_normalisation():
    with pytest.raises(MaterialFileError):
        load_materials("[Foo Bar]\ndensity_g_cm3 = 1\n[foobar]\ndensity_g_cm3 = 2\n")
    with pytest.raises(DomainError):
        MaterialRegistry([Material("a", 1.0), Material("A", 2.0)])


_names = st.text(alphabet="abcdefghij XYZ0123", min_size=1, max_size=12).filter(lambda s: s.strip() == s and s)
_record = st.builds(
    Material,
    name=_names,
    density=st.floats(1e-3, 1e5),
    sound_speed=st.one_of(st.none(), st.floats(1.0, 1e5)),
    conductivity=st.one_of(st.none(), st.builds(PowerLawConductivity, st.floats(1e-6, 1e3), st.floats(-0.99, 5))),
    emissivity=st.floats(0, 1),
)


@given(st.lists(_record, max_size=5, unique_by=lambda m: "".join(c for c in m.name.lower() if c.isalnum())))
def test_ingestion_round_trip(records):
    records = [m for m in records if any(c.isalnum() for c in m.name)]
    text = dump_materials(MaterialRegistry(records))
    once = load_materials(text)
    twice = load_materials(dump_materials(once))
    assert once == twice
    for m in records:
        assert once[m.name] == m
