"""Material records and a small file format for user-defined materials.

A material file is INI-style, one section per material; every numeric key
names its unit::

    # comments start with '#' or ';'
    [Torlon 4203]
    density_g_cm3 = 1.42
    k0_w_m = 6.13e-3      # k0_hat * K^(1+beta): k(T) = k0 (T/K)^beta W/(m K)
    beta = 2.18

    [lead]
    density_kg_m3 = 11350
    sound_speed_m_s = 2160
    emissivity = 0.05

Recognised keys: density_g_cm3 or density_kg_m3 (one is required),
sound_speed_m_s, k0_w_m and beta (together), emissivity (default 1).
"""

from __future__ import annotations

import configparser
import io
import math
import re
from collections.abc import Mapping
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .errors import DomainError, MaterialFileError
from .thermal import PowerLawConductivity

_KEYS = {"density_g_cm3", "density_kg_m3", "sound_speed_m_s", "k0_w_m", "beta", "emissivity"}


@dataclass(frozen=True)
class Material:
    name: str
    density: float  # kg/m^3
    sound_speed: Optional[float] = None  # m/s, longitudinal, low temperature
    conductivity: Optional[PowerLawConductivity] = None
    emissivity: float = 1.0

    def __post_init__(self):
        if not self.name.strip():
            raise DomainError("material name must not be empty")
        if not (math.isfinite(self.density) and self.density > 0):
            raise DomainError(f"{self.name}: density must be > 0, got {self.density!r}")
        if self.sound_speed is not None and not (math.isfinite(self.sound_speed) and self.sound_speed > 0):
            raise DomainError(f"{self.name}: sound_speed must be > 0, got {self.sound_speed!r}")
        if not 0 <= self.emissivity <= 1:
            raise DomainError(f"{self.name}: emissivity must be in [0, 1], got {self.emissivity!r}")

    @property
    def density_g_cm3(self) -> float:
        return self.density / 1e3


def normalize_name(name: str) -> str:
    """'Torlon 4203', 'torlon-4203' and 'torlon4203' all map to 'torlon4203'."""
    return re.sub(r"[^0-9a-z]", "", name.lower())


class MaterialRegistry(Mapping):
    """Immutable, case- and punctuation-insensitive mapping of name to Material."""

    def __init__(self, materials=()):
        entries = {}
        for m in materials:
            key = normalize_name(m.name)
            if key in entries:
                raise DomainError(f"duplicate material name {m.name!r}")
            entries[key] = m
        self._entries = entries

    def __getitem__(self, name):
        try:
            return self._entries[normalize_name(name)]
        except KeyError:
            known = ", ".join(m.name for m in self._entries.values())
            raise KeyError(f"unknown material {name!r} (known: {known})") from None

    lookup = __getitem__

    def __iter__(self):
        return (m.name for m in self._entries.values())

    def __len__(self):
        return len(self._entries)

    def __eq__(self, other):
        if not isinstance(other, MaterialRegistry):
            return NotImplemented
        return self._entries == other._entries

    def __repr__(self):
        return f"MaterialRegistry({list(self)!r})"

    def merged(self, other: MaterialRegistry) -> MaterialRegistry:
        """Entries of ``other`` shadow entries of ``self`` with the same name."""
        out = dict(self._entries)
        out.update(other._entries)
        return MaterialRegistry(out.values())


BUILTIN_MATERIALS = (
    Material("lead", density=11.4e3),
    # density is the handbook value; the sound speed is the round
    # low-temperature figure used for phonon-frequency estimates
    Material("copper", density=8.96e3, sound_speed=4000.0),
    Material("Torlon 4203", density=1.42e3, conductivity=PowerLawConductivity(6.13e-3, 2.18)),
)


def builtin_registry() -> MaterialRegistry:
    return MaterialRegistry(BUILTIN_MATERIALS)


def _key_lines(text):
    """Map (section, key) to the 1-based line it is defined on."""
    out = {}
    section = None
    for lineno, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s or s[0] in "#;":
            continue
        m = re.match(r"\[(.*)\]$", s)
        if m:
            section = m.group(1).strip()
            out[(section, None)] = lineno
            continue
        key = re.split(r"[=:]", s, 1)[0].strip().lower()
        out[(section, key)] = lineno
    return out


def _parse(text) -> MaterialRegistry:
    cp = configparser.ConfigParser(
        inline_comment_prefixes=("#", ";"), interpolation=None, default_section="\x00"
    )
    try:
        cp.read_string(text)
    except configparser.MissingSectionHeaderError as exc:
        raise MaterialFileError("key outside a [material] section", lineno=exc.lineno) from None
    except configparser.ParsingError as exc:
        lineno, line = exc.errors[0]
        raise MaterialFileError(f"cannot parse {line!r}", lineno=lineno) from None
    except (configparser.DuplicateSectionError, configparser.DuplicateOptionError) as exc:
        raise MaterialFileError(exc.message, lineno=exc.lineno) from None

    lines = _key_lines(text)
    materials = []
    for name in cp.sections():
        sec = cp[name]

        def num(key):
            raw = sec.get(key)
            if raw is None or raw.strip() == "":
                return None
            try:
                return float(raw)
            except ValueError:
                raise MaterialFileError(
                    f"not a number: {raw!r}", lineno=lines.get((name, key)), record=name, field=key
                ) from None

        for key in sec:
            if key not in _KEYS:
                raise MaterialFileError("unknown key", lineno=lines.get((name, key)), record=name, field=key)

        g_cm3, kg_m3 = num("density_g_cm3"), num("density_kg_m3")
        if (g_cm3 is None) == (kg_m3 is None):
            raise MaterialFileError(
                "give exactly one of density_g_cm3 / density_kg_m3",
                lineno=lines.get((name, None)), record=name, field="density",
            )
        density = kg_m3 if kg_m3 is not None else g_cm3 * 1e3

        k0, beta = num("k0_w_m"), num("beta")
        if (k0 is None) != (beta is None):
            raise MaterialFileError(
                "k0_w_m and beta must be given together",
                lineno=lines.get((name, None)), record=name, field="k0_w_m" if k0 is None else "beta",
            )
        emissivity = num("emissivity")
        try:
            cond = PowerLawConductivity(k0, beta) if k0 is not None else None
        except DomainError as exc:
            field = "beta" if "beta" in str(exc) else "k0_w_m"
            raise MaterialFileError(str(exc), lineno=lines.get((name, field)), record=name, field=field) from None
        sound_speed = num("sound_speed_m_s")
        density_key = "density_g_cm3" if g_cm3 is not None else "density_kg_m3"
        checks = (
            ("density", density_key, density, lambda v: v > 0),
            ("sound_speed", "sound_speed_m_s", sound_speed, lambda v: v > 0),
            ("emissivity", "emissivity", emissivity, lambda v: 0 <= v <= 1),
        )
        for field, key, value, ok in checks:
            if value is not None and not (math.isfinite(value) and ok(value)):
                raise MaterialFileError(
                    f"invalid value {value!r}", lineno=lines.get((name, key)), record=name, field=field
                )
        materials.append(
            Material(
                name,
                density=density,
                sound_speed=sound_speed,
                conductivity=cond,
                emissivity=1.0 if emissivity is None else emissivity,
            )
        )
    try:
        return MaterialRegistry(materials)
    except DomainError as exc:
        raise MaterialFileError(str(exc), field="name") from None


def load_materials(source, base: Optional[MaterialRegistry] = None) -> MaterialRegistry:
    """Parse a material file (path, file object or text) and merge it over ``base``.

    ``base`` defaults to the builtin registry; loaded entries shadow it by name.
    """
    if isinstance(source, Path):
        text = source.read_text()
    elif hasattr(source, "read"):
        text = source.read()
    else:
        text = source
    base = builtin_registry() if base is None else base
    return base.merged(_parse(text))


def dump_materials(registry: MaterialRegistry) -> str:
    """Serialise ``registry`` in the material file format; lossless for floats."""
    buf = io.StringIO()
    for name in registry:
        m = registry[name]
        buf.write(f"[{m.name}]\n")
        buf.write(f"density_kg_m3 = {m.density!r}\n")
        if m.sound_speed is not None:
            buf.write(f"sound_speed_m_s = {m.sound_speed!r}\n")
        if m.conductivity is not None:
            buf.write(f"k0_w_m = {m.conductivity.k0_hat!r}\n")
            buf.write(f"beta = {m.conductivity.beta!r}\n")
        buf.write(f"emissivity = {m.emissivity!r}\n\n")
    return buf.getvalue()
