"""Run configuration: ``key = value`` files, angle expressions, CSV formatting."""
from __future__ import annotations

import math
import os
import re
import tempfile
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import InvalidParameters
from .model import InitialState, SystemParams

T_MAX_CAP = 50.0
DEFAULT_T_MAX = 15.0
DEFAULT_SAMPLES = 3000

KEYS = {
    "delta", "chi", "kappa", "gamma", "theta", "phi",
    "t_max", "samples", "out", "seed", "draws", "n", "format",
}


class ConfigError(ValueError):
    def __init__(self, message, line=None, key=None):
        self.line = line
        self.key = key
        where = []
        if line is not None:
            where.append(f"line {line}")
        if key is not None:
            where.append(f"field '{key}'")
        super().__init__(": ".join(where + [message]))


_PI_RE = re.compile(r"^(?P<coef>[^p]*?)\s*\*?\s*pi\s*(?:/\s*(?P<den>[0-9.]+))?$")


def parse_angle(text: str) -> float:
    """Parse an angle in radians.

    Expressions containing ``pi`` are read as rational multiples of pi:
    ``pi``, ``pi/2``, ``3pi/2``, ``1/3 pi``, ``0.25*pi``, ``-pi/4``.  A bare
    number is taken as radians.
    """
    s = text.strip().lower()
    if not s:
        raise ValueError("empty angle")
    if "pi" not in s:
        return float(s)
    m = _PI_RE.match(s)
    if m is None:
        raise ValueError(f"cannot parse angle {text!r}")
    coef = m.group("coef").strip().rstrip("*").strip()
    if coef in ("", "+"):
        factor = Fraction(1)
    elif coef == "-":
        factor = Fraction(-1)
    else:
        factor = Fraction(coef)
    if m.group("den"):
        factor /= Fraction(m.group("den"))
    return float(factor) * math.pi


def read_config_file(path) -> dict:
    """Read ``key = value`` lines ('#' starts a comment). Returns {key: (value, line)}."""
    entries = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"expected 'key = value', got {raw.strip()!r}", line=lineno)
            key, value = (part.strip() for part in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in KEYS:
                raise ConfigError(f"unknown key (valid: {', '.join(sorted(KEYS))})", lineno, key)
            entries[key] = (value, lineno)
    return entries


@dataclass
class RunConfig:
    params: SystemParams = field(default_factory=SystemParams)
    init: InitialState = field(default_factory=InitialState)
    t_max: float = DEFAULT_T_MAX
    samples: Optional[int] = None
    out: Optional[str] = None
    fmt: str = "csv"
    seed: int = 0
    draws: int = 50
    n: Optional[int] = None
    # original angle expressions, echoed in CSV metadata
    theta_text: str = "0"
    phi_text: str = "0"

    def metadata(self) -> list[str]:
        p = self.params
        return [
            f"delta/g={fmt_float(p.delta)} chi/g={fmt_float(p.chi)} "
            f"kappa/g={fmt_float(p.kappa)} gamma/g={fmt_float(p.gamma_a)} g={fmt_float(p.g)}",
            f"theta={self.theta_text} ({fmt_float(self.init.theta)}) "
            f"phi={self.phi_text} ({fmt_float(self.init.phi)})",
        ]


_CONVERTERS = {
    "delta": float, "chi": float, "kappa": float, "gamma": float,
    "t_max": float, "samples": int, "seed": int, "draws": int, "n": int,
    "out": str, "format": str, "theta": parse_angle, "phi": parse_angle,
}


def build_config(entries: dict) -> RunConfig:
    """Build a RunConfig from {key: (text, line_or_None)}; command-line entries use line None."""
    values = {}
    for key, (text, line) in entries.items():
        try:
            values[key] = _CONVERTERS[key](text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"could not parse {text!r} ({exc})", line, key) from None

    def line_of(key):
        return entries.get(key, (None, None))[1]

    try:
        params = SystemParams(
            delta=values.get("delta", 0.0),
            chi=values.get("chi", 0.0),
            kappa=values.get("kappa", 0.0),
            gamma_a=values.get("gamma", 0.0),
        )
    except InvalidParameters as exc:
        raise ConfigError(str(exc)) from None
    init = InitialState(values.get("theta", 0.0), values.get("phi", 0.0))
    t_max = values.get("t_max", DEFAULT_T_MAX)
    if not 0 < t_max <= T_MAX_CAP:
        raise ConfigError(f"t_max must lie in (0, {T_MAX_CAP:g}]", line_of("t_max"), "t_max")
    samples = values.get("samples")
    if samples is not None and samples < 2:
        raise ConfigError("samples must be >= 2", line_of("samples"), "samples")
    draws = values.get("draws", 50)
    if draws < 1:
        raise ConfigError("draws must be >= 1", line_of("draws"), "draws")
    n = values.get("n")
    if n is not None and n < 0:
        raise ConfigError("n must be >= 0", line_of("n"), "n")
    fmt = values.get("format", "csv")
    if fmt != "csv":
        raise ConfigError("only the 'csv' format is supported", line_of("format"), "format")
    return RunConfig(
        params=params,
        init=init,
        t_max=t_max,
        samples=samples,
        out=values.get("out"),
        fmt=fmt,
        seed=values.get("seed", 0),
        draws=draws,
        n=n,
        theta_text=entries.get("theta", ("0", None))[0],
        phi_text=entries.get("phi", ("0", None))[0],
    )


def fmt_float(x) -> str:
    """17 significant digits, locale independent; NaN as 'nan'."""
    x = float(x)
    if math.isnan(x):
        return "nan"
    return format(x, ".17g")


def render_csv(columns, rows, meta=()) -> str:
    lines = [f"# {m}" for m in meta]
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(v if isinstance(v, str) else fmt_float(v) for v in row))
    return "\n".join(lines) + "\n"


def write_atomic(path, text: str):
    """Write via a temporary file in the target directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".csv")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
