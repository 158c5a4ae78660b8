"""Run configuration: defaults, figure presets, key=value files and flags."""
from __future__ import annotations

import argparse
import math
from dataclasses import dataclass, fields, replace

from .thermal import PRODUCTION_TAIL, tail_n_max

__all__ = [
    "ConfigError",
    "RunConfig",
    "parse_config",
    "EXIT_UNKNOWN_KEY",
    "EXIT_BAD_VALUE",
    "EXIT_CONFLICT",
    "EXIT_NOT_CONVERGED",
    "EXIT_INTEGRITY",
]

EXIT_UNKNOWN_KEY = 2
EXIT_BAD_VALUE = 3
EXIT_CONFLICT = 4
EXIT_NOT_CONVERGED = 5
EXIT_INTEGRITY = 6

MODES = ("sweep", "fig2", "fig3", "converge", "dump")
INITIAL_STATES = ("ground", "spread", "custom", "thermal")
PURE_PHASES = ("zero", "random")
N_MAX_CAP = 1024


class ConfigError(Exception):
    """Invalid run configuration; ``exit_code`` tells the CLI how to exit."""

    def __init__(self, message: str, exit_code: int):
        super().__init__(message)
        self.exit_code = exit_code


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved experiment settings.

    ``n_max=None`` means the truncation is found automatically by doubling.
    ``t_ratio`` is only read for thermal curves and the fig3 preset;
    ``pure_phase`` picks the fig3 comparison state (zero phases or a seeded
    random-phase draw).
    """

    mode: str = "sweep"
    theta_points: int = 64
    theta_min: float = 0.0
    theta_max: float = 2 * math.pi
    eta_ld: tuple[float, ...] = (0.1,)
    rabi: float = 100.0
    detuning: float = 0.0
    t_ratio: tuple[float, ...] = (1.0, 3.0, 10.0)
    initial_state: tuple[str, ...] = ("ground",)
    amplitudes: tuple[complex, ...] = ()
    alpha: complex = complex(1 / math.sqrt(2))
    beta: complex = complex(1 / math.sqrt(2))
    n_max: int | None = None
    seed: int = 0
    pure_phase: str = "zero"
    include_h1: bool = True
    output: str = "-"

    def header_lines(self) -> list[str]:
        out = []
        for f in fields(self):
            if f.name == "output":
                continue
            value = getattr(self, f.name)
            if f.name == "n_max" and value is None:
                value = "auto"
            elif isinstance(value, tuple):
                value = ",".join(_fmt(v) for v in value)
            else:
                value = _fmt(value)
            out.append(f"{f.name} = {value}")
        return out


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, complex):
        if v.imag == 0:
            return repr(v.real)
        return f"{v.real!r}{'+' if v.imag >= 0 else ''}{v.imag!r}j"
    return str(v)


PRESETS = {
    "fig2": dict(eta_ld=(0.1, 0.3, 1.0), initial_state=("ground", "spread"), rabi=100.0),
    "fig3": dict(eta_ld=(0.1,), t_ratio=(1.0, 3.0, 10.0), initial_state=("thermal",),
                 rabi=100.0),
}


def _bad(key, raw, what):
    return ConfigError(f"{key}: cannot parse {raw!r} as {what}", EXIT_BAD_VALUE)


def _float(key, raw) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise _bad(key, raw, "a number") from None
    if not math.isfinite(value):
        raise _bad(key, raw, "a finite number")
    return value


def _int(key, raw) -> int:
    try:
        return int(raw)
    except ValueError:
        raise _bad(key, raw, "an integer") from None


def _complex(key, raw) -> complex:
    try:
        value = complex(raw.replace(" ", ""))
    except ValueError:
        raise _bad(key, raw, "a complex number") from None
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise _bad(key, raw, "a finite complex number")
    return value


def _bool(key, raw) -> bool:
    low = raw.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise _bad(key, raw, "a boolean")


def _choice(key, raw, options) -> str:
    raw = raw.strip()
    if raw not in options:
        raise ConfigError(f"{key}: {raw!r} is not one of {', '.join(options)}", EXIT_BAD_VALUE)
    return raw


def _list(key, raw, conv):
    items = [s for s in raw.split(",") if s.strip()]
    if not items:
        raise _bad(key, raw, "a non-empty comma-separated list")
    return tuple(conv(key, s.strip()) for s in items)


_CONVERTERS = {
    "mode": lambda k, r: _choice(k, r, MODES),
    "theta_points": _int,
    "theta_min": _float,
    "theta_max": _float,
    "eta_ld": lambda k, r: _list(k, r, _float),
    "rabi": _float,
    "detuning": _float,
    "t_ratio": lambda k, r: _list(k, r, _float),
    "initial_state": lambda k, r: _list(k, r, lambda kk, s: _choice(kk, s, INITIAL_STATES)),
    "amplitudes": lambda k, r: _list(k, r, _complex),
    "alpha": _complex,
    "beta": _complex,
    "n_max": lambda k, r: None if r.strip() == "auto" else _int(k, r),
    "seed": _int,
    "pure_phase": lambda k, r: _choice(k, r, PURE_PHASES),
    "include_h1": _bool,
    "output": lambda k, r: r.strip(),
}


def read_config_file(path) -> dict[str, str]:
    """Raw ``key = value`` pairs; ``#`` starts a comment."""
    raw = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key = value", EXIT_BAD_VALUE)
            key, value = (s.strip() for s in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in _CONVERTERS and key != "auto_truncation":
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}", EXIT_UNKNOWN_KEY)
            raw[key] = value
    return raw


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message, EXIT_UNKNOWN_KEY)


def build_arg_parser() -> argparse.ArgumentParser:
    p = _Parser(
        prog="motional-qubit",
        description="Rotation fidelity of a trapped-atom qubit with motional effects.",
    )
    p.add_argument("--config", help="key = value configuration file")
    for name in _CONVERTERS:
        p.add_argument("--" + name.replace("_", "-"), dest=name, default=None, metavar="VALUE")
    p.add_argument("--auto-truncation", action="store_true", default=None,
                   help="choose n_max by doubling until fidelities settle")
    return p


def _validate(cfg: RunConfig) -> RunConfig:
    def conflict(msg):
        return ConfigError(msg, EXIT_CONFLICT)

    if cfg.theta_points < 1:
        raise conflict("theta_points must be at least 1")
    if cfg.theta_min < 0 or cfg.theta_max < cfg.theta_min:
        raise conflict("need 0 <= theta_min <= theta_max")
    if any(e < 0 for e in cfg.eta_ld):
        raise conflict("eta_ld values must be nonnegative")
    if cfg.rabi <= 0 and cfg.theta_max > 0:
        raise conflict("rabi must be positive for nonzero pulse areas")
    if any(t <= 0 for t in cfg.t_ratio):
        raise conflict("t_ratio values must be positive")
    norm = abs(cfg.alpha) ** 2 + abs(cfg.beta) ** 2
    if abs(norm - 1) > 1e-9:
        raise conflict(f"|alpha|^2 + |beta|^2 = {norm:.12g}, expected 1")
    # tidy the last bits so the qubit passes the strict normalisation check
    scale = math.sqrt(norm)
    cfg = replace(cfg, alpha=cfg.alpha / scale, beta=cfg.beta / scale)
    if "custom" in cfg.initial_state:
        if not cfg.amplitudes:
            raise conflict("initial_state custom needs amplitudes")
        if sum(abs(a) ** 2 for a in cfg.amplitudes) == 0:
            raise conflict("custom amplitudes are all zero")
    if cfg.n_max is not None:
        if cfg.n_max < 0 or cfg.n_max > N_MAX_CAP:
            raise conflict(f"n_max must lie in [0, {N_MAX_CAP}]")
        if "spread" in cfg.initial_state and cfg.n_max < 2:
            raise conflict("the spread initial state needs n_max >= 2")
        if "custom" in cfg.initial_state and len(cfg.amplitudes) > cfg.n_max + 1:
            raise conflict("custom amplitudes exceed the truncation n_max")
        if cfg.mode == "fig3" or "thermal" in cfg.initial_state:
            need = max(tail_n_max(t) for t in cfg.t_ratio)
            if cfg.n_max < need:
                raise conflict(
                    f"n_max={cfg.n_max} drops more than {PRODUCTION_TAIL:g} of the thermal "
                    f"population at t_ratio={max(cfg.t_ratio):g}; need n_max >= {need}")
    return cfg


def parse_config(argv=None, file=None) -> RunConfig:
    """Resolve defaults < mode preset < config file < command-line flags.

    Args:
        argv: Command-line arguments (without the program name).
        file: Optional config file; ``--config`` in ``argv`` takes precedence.

    Raises:
        ConfigError: with ``exit_code`` set to ``EXIT_UNKNOWN_KEY``,
            ``EXIT_BAD_VALUE`` or ``EXIT_CONFLICT``.
    """
    args = vars(build_arg_parser().parse_args([] if argv is None else list(argv)))
    path = args.pop("config") or file
    file_raw = read_config_file(path) if path else {}
    flag_raw = {k: v for k, v in args.items() if v is not None}

    auto_flags = []
    if "auto_truncation" in file_raw:
        auto_flags.append(_bool("auto_truncation", file_raw.pop("auto_truncation")))
    if flag_raw.pop("auto_truncation", None):
        auto_flags.append(True)
    if any(auto_flags) and ("n_max" in flag_raw or "n_max" in file_raw):
        explicit = flag_raw.get("n_max", file_raw.get("n_max"))
        if explicit.strip() != "auto":
            raise ConfigError("--n-max conflicts with --auto-truncation", EXIT_CONFLICT)

    merged = {**file_raw, **flag_raw}
    values = {}
    mode = _CONVERTERS["mode"]("mode", merged["mode"]) if "mode" in merged else "sweep"
    values.update(PRESETS.get(mode, {}))
    for key, raw in merged.items():
        values[key] = _CONVERTERS[key](key, raw)
    values["mode"] = mode
    return _validate(RunConfig(**values))
