"""Unit conversions.

Lengths are carried in nanometres and gain coefficients in inverse
centimetres everywhere in the package; every conversion goes through
this module.
"""
import re

NM_PER_MM = 1.0e6
NM_PER_UM = 1.0e3
NM_PER_CM = 1.0e7

_LENGTH_UNITS = {
    "nm": 1.0,
    "um": NM_PER_UM,
    "µm": NM_PER_UM,
    "μm": NM_PER_UM,
    "mm": NM_PER_MM,
    "cm": NM_PER_CM,
}

_LENGTH_RE = re.compile(r"^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*([a-zA-Zµμ]+)\s*$")


def per_cm_to_per_nm(g):
    return g / NM_PER_CM


def per_nm_to_per_cm(g):
    return g * NM_PER_CM


def nm_to_mm(length):
    return length / NM_PER_MM


def parse_length(text):
    """Parse a length such as ``"3.300mm"`` or ``"150um"`` into nanometres.

    Bare numbers are rejected so that a missing unit can never be silently
    read as the wrong scale.
    """
    match = _LENGTH_RE.match(text)
    if match is None:
        raise ValueError(f"length {text!r} must be a number followed by a unit (nm, um, mm, cm)")
    value, unit = match.groups()
    try:
        scale = _LENGTH_UNITS[unit]
    except KeyError:
        raise ValueError(f"unknown length unit {unit!r} in {text!r}") from None
    return float(value) * scale
