"""Line-based ``key = value`` run configuration.

Seven physical keys are required (rho, alpha1, beta, gamma, mu, length,
thickness); numeric options are optional with documented defaults.  Comments
start with ``#``.  Parsing validates everything before any computation and
reports the offending line in every error.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DuplicateKey, MalformedValue, MissingKey, NonPositiveParameter
from .params import BeamParameters

__all__ = ["RunConfig", "parse_config", "load_config"]

PHYSICAL_KEYS = ("rho", "alpha1", "beta", "gamma", "mu", "length", "thickness")
INT_KEYS = ("J", "N", "qmax", "seed")
FLOAT_KEYS = ("T", "k", "cfl", "sample_dt", "tol")

DEFAULTS = {
    "J": 64,
    "N": 2048,
    "T": 10.0,
    "cfl": 0.9,
    "sample_dt": 0.05,
    "qmax": 10_000,
    "tol": 1e-9,
    "seed": 42,
}


@dataclass(frozen=True)
class RunConfig:
    """Validated run configuration: beam parameters plus numeric options."""

    params: BeamParameters
    J: int = DEFAULTS["J"]
    n: int = DEFAULTS["N"]
    T: float = DEFAULTS["T"]
    k: float = 0.5  # replaced by 1/(2*thickness) at parse time unless given
    cfl: float = DEFAULTS["cfl"]
    sample_dt: float = DEFAULTS["sample_dt"]
    qmax: int = DEFAULTS["qmax"]
    tol: float = DEFAULTS["tol"]
    seed: int = DEFAULTS["seed"]


def parse_config(text: str) -> RunConfig:
    """Parse and validate a configuration document.

    Raises :class:`MissingKey`, :class:`DuplicateKey`, :class:`MalformedValue`
    or :class:`NonPositiveParameter`; messages carry the line number.
    """
    entries: dict[str, tuple[int, str]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise MalformedValue(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in PHYSICAL_KEYS + INT_KEYS + FLOAT_KEYS:
            raise MalformedValue(f"line {lineno}: unknown key {key!r}")
        if key in entries:
            raise DuplicateKey(f"line {lineno}: key {key!r} already set on line {entries[key][0]}")
        entries[key] = (lineno, value)

    for key in PHYSICAL_KEYS:
        if key not in entries:
            raise MissingKey(f"missing required key {key!r}")

    def as_float(key: str) -> float:
        lineno, value = entries[key]
        try:
            return float(value)
        except ValueError as exc:
            raise MalformedValue(f"line {lineno}: {key} = {value!r} is not a number") from exc

    def as_int(key: str) -> int:
        lineno, value = entries[key]
        number = as_float(key)
        if number != int(number):
            raise MalformedValue(f"line {lineno}: {key} = {value!r} is not an integer")
        return int(number)

    physical = {}
    for key in PHYSICAL_KEYS:
        lineno = entries[key][0]
        value = as_float(key)
        if not value > 0:
            raise NonPositiveParameter(f"line {lineno}: {key} must be > 0, got {value}")
        physical[key] = value
    params = BeamParameters(**physical)

    options = dict(DEFAULTS)
    for key in INT_KEYS:
        if key in entries:
            options[key] = as_int(key)
    for key in FLOAT_KEYS:
        if key in entries:
            options[key] = as_float(key)
    if "k" not in options:
        options["k"] = 1.0 / (2.0 * params.thickness)
    return RunConfig(
        params=params,
        J=options["J"],
        n=options["N"],
        T=options["T"],
        k=options["k"],
        cfl=options["cfl"],
        sample_dt=options["sample_dt"],
        qmax=options["qmax"],
        tol=options["tol"],
        seed=options["seed"],
    )


def load_config(path: str) -> RunConfig:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_config(handle.read())
