"""
Command-line front end.

    nhfloquet ratio --j1 2.2pi --j2 0.6666666666666666pi --gamma 0.4pi
    nhfloquet ee-scaling --config run.cfg --workers 4 -o scaling.csv

Angles accept plain radians or a ``pi`` multiple (``0.5pi``, ``-pi``,
``2pi/3``). A config file holds ``key = value`` lines named like the long
flags; flags given on the command line win. Every CSV starts with ``#``
lines recording the resolved configuration, and such a file can itself be
passed back as ``--config``.
"""

from __future__ import annotations

import argparse
import dataclasses
import io
import math
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path


from . import __version__
from .bloch import ModelParams, quasienergy
from .dynamics import LatticeSpec
from .entanglement import (
    DEFAULT_PERIODS,
    DEFAULT_SIZES,
    DEFAULT_WINDOW,
    SubsystemSpec,
    classify_entanglement,
    ee_vs_subsystem,
    ee_vs_system_size,
    entanglement_trace,
    fit_subsystem_profile,
    fit_volume_law,
    sweep_entanglement_diagram,
)
from .errors import ConfigError, InvalidArgumentError, NHFloquetError, NumericalError
from .parallel import default_workers
from .spectral import DEFAULT_N_POINTS, PARAM_NAMES, Axis, KGrid, classify_pt, midpoint_nodes, sweep_pt_diagram

COMMANDS = ("spectrum", "ratio", "pt-diagram", "evolve", "ee-scaling", "ee-profile", "ee-diagram")
EXIT_OK, EXIT_CONFIG, EXIT_NUMERICAL, EXIT_IO = 0, 2, 3, 4
PROVENANCE_MARK = "# nhfloquet"

_ANGLE = re.compile(
    r"^(?P<coef>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?|[+-]?)\s*\*?\s*pi(?:\s*/\s*(?P<den>\d+\.?\d*))?$"
)


def parse_angle(text: str, key: str = "value") -> float:
    """'0.5pi' -> pi/2, 'pi' -> pi, '2pi/3' -> 2pi/3, '1.2' -> 1.2."""
    raw = str(text).strip()
    m = _ANGLE.match(raw.replace(" ", ""))
    if m:
        coef = m.group("coef")
        value = float(coef + "1" if coef in ("", "+", "-") else coef) * math.pi
        if m.group("den"):
            value /= float(m.group("den"))
    else:
        try:
            value = float(raw)
        except ValueError:
            raise ConfigError(f"{key}: expected a number or a pi multiple like 0.5pi, got {raw!r}") from None
    if not math.isfinite(value):
        raise ConfigError(f"{key}: value must be finite, got {raw!r}")
    return value


def _parse_int(text: str, key: str) -> int:
    try:
        return int(str(text).strip())
    except ValueError:
        raise ConfigError(f"{key}: expected an integer, got {text!r}") from None


def _parse_int_list(text: str, key: str) -> tuple[int, ...]:
    parts = [p for p in str(text).replace(" ", "").split(",") if p]
    if not parts:
        raise ConfigError(f"{key}: expected a comma-separated list of integers")
    return tuple(_parse_int(p, key) for p in parts)


def _parse_window(text: str, key: str) -> tuple[int, int]:
    vals = _parse_int_list(text, key)
    if len(vals) != 2:
        raise ConfigError(f"{key}: expected 'start,end', got {text!r}")
    return vals


def _parse_axis(text: str, key: str) -> Axis:
    parts = str(text).strip().split(":")
    if len(parts) != 4:
        raise ConfigError(f"{key}: expected 'name:start:stop:steps', got {text!r}")
    name = parts[0].strip()
    if name not in PARAM_NAMES:
        raise ConfigError(f"{key}: axis name must be one of {', '.join(PARAM_NAMES)}, got {name!r}")
    axis = Axis(name, parse_angle(parts[1], key), parse_angle(parts[2], key), _parse_int(parts[3], key))
    return axis


def _format_axis(axis: Axis) -> str:
    return f"{axis.name}:{axis.start!r}:{axis.stop!r}:{axis.steps}"


@dataclass(frozen=True)
class RunConfig:
    command: str
    j1: float | None = None
    j2: float | None = None
    gamma: float | None = None
    n_points: int = DEFAULT_N_POINTS
    L: int | None = None
    l: int | None = None
    sizes: tuple[int, ...] = DEFAULT_SIZES
    periods: int = DEFAULT_PERIODS
    window: tuple[int, int] = DEFAULT_WINDOW
    axis1: Axis | None = None
    axis2: Axis | None = None
    output: str = "-"
    workers: int = field(default=1, compare=False)

    def params(self, **overrides) -> ModelParams:
        values = {"j1": self.j1, "j2": self.j2, "gamma": self.gamma}
        values.update(overrides)
        return ModelParams(**values)

    def to_lines(self) -> list[str]:
        """``key = value`` lines that reproduce this run's numbers.

        Output path and worker count are left out: neither changes the result.
        """
        lines = []
        for f in dataclasses.fields(self):
            value = getattr(self, f.name)
            if value is None or f.name in ("output", "workers"):
                continue
            if isinstance(value, Axis):
                text = _format_axis(value)
            elif isinstance(value, tuple):
                text = ",".join(str(v) for v in value)
            elif isinstance(value, float):
                text = repr(value)
            else:
                text = str(value)
            lines.append(f"{_KEY_OF_FIELD[f.name]} = {text}")
        return lines


# config/flag key -> (RunConfig field, converter)
_KEYS = {
    "command": ("command", lambda v, k: str(v).strip()),
    "j1": ("j1", parse_angle),
    "j2": ("j2", parse_angle),
    "gamma": ("gamma", parse_angle),
    "n-points": ("n_points", _parse_int),
    "L": ("L", _parse_int),
    "l": ("l", _parse_int),
    "sizes": ("sizes", _parse_int_list),
    "periods": ("periods", _parse_int),
    "window": ("window", _parse_window),
    "axis1": ("axis1", _parse_axis),
    "axis2": ("axis2", _parse_axis),
    "output": ("output", lambda v, k: str(v).strip()),
    "workers": ("workers", _parse_int),
}
_KEY_OF_FIELD = {fname: key for key, (fname, _) in _KEYS.items()}


def _normalize_key(key: str) -> str:
    key = key.strip().lstrip("-")
    return key if key in ("L", "l") else key.replace("_", "-").lower()


def read_config_file(path: str | Path) -> dict[str, str]:
    """Raw ``key -> text`` mapping from a config file or a CSV provenance header."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"config: cannot read {path}: {exc}") from None
    lines = text.splitlines()
    provenance = bool(lines) and lines[0].startswith(PROVENANCE_MARK)
    entries = {}
    for lineno, line in enumerate(lines, 1):
        if provenance:
            if lineno == 1:
                continue
            if not line.startswith("#"):
                break
            line = line[1:]
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigError(f"config {path}:{lineno}: expected 'key = value', got {stripped!r}")
        key, value = stripped.split("=", 1)
        key = _normalize_key(key)
        if key not in _KEYS:
            raise ConfigError(f"config {path}:{lineno}: unknown key {key!r}")
        entries[key] = value.strip()
    return entries


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nhfloquet", description=__doc__.split("\n\n")[0].strip())
    p.add_argument("command", nargs="?", choices=COMMANDS)
    p.add_argument("--config", help="key = value file (or a previous output CSV)")
    p.add_argument("--j1", help="intracell hopping J1 (radians or e.g. 0.85pi)")
    p.add_argument("--j2", help="intercell hopping J2")
    p.add_argument("--gamma", help="gain/loss strength, >= 0")
    p.add_argument("--n-points", help=f"k-grid size (default {DEFAULT_N_POINTS})")
    p.add_argument("-L", "--L", dest="L", help="number of unit cells (evolve, ee-profile)")
    p.add_argument("-l", "--l", dest="l", help="subsystem cells for evolve (default L/2)")
    p.add_argument("--sizes", help="comma-separated even system sizes (default 40,80,120,160)")
    p.add_argument("--periods", help=f"driving periods (default {DEFAULT_PERIODS})")
    p.add_argument("--window", help="averaging window start,end (default 800,1000)")
    p.add_argument("--axis1", help="sweep axis name:start:stop:steps, e.g. j1:0:3pi:31")
    p.add_argument("--axis2", help="second sweep axis")
    p.add_argument("-o", "--output", help="output CSV path, '-' for stdout")
    p.add_argument("--workers", help="worker processes for sweeps (default $NHFLOQUET_WORKERS or 1)")
    return p


def parse_config(argv: list[str] | None = None) -> RunConfig:
    """Merge config file and flags into a validated RunConfig."""
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        raise ConfigError("invalid command line (see usage above)") from exc
    raw = read_config_file(ns.config) if ns.config else {}
    for key in _KEYS:
        value = getattr(ns, _KEYS[key][0])
        if value is not None:
            raw[key] = value
    values = {}
    for key, text in raw.items():
        fname, conv = _KEYS[key]
        values[fname] = conv(text, key)
    values.setdefault("workers", default_workers())
    command = values.get("command")
    if command is None:
        raise ConfigError("command: missing (one of " + ", ".join(COMMANDS) + ")")
    if command not in COMMANDS:
        raise ConfigError(f"command: unknown {command!r}, expected one of {', '.join(COMMANDS)}")
    cfg = RunConfig(**values)
    _validate(cfg)
    return cfg


def _validate(cfg: RunConfig) -> None:
    cmd = cfg.command
    swept = set()
    if cmd in ("pt-diagram", "ee-diagram"):
        if cfg.axis1 is None:
            raise ConfigError(f"axis1: required for {cmd} (name:start:stop:steps)")
        swept.add(cfg.axis1.name)
        if cfg.axis2 is not None:
            if cfg.axis2.name == cfg.axis1.name:
                raise ConfigError(f"axis2: must differ from axis1 ({cfg.axis1.name})")
            swept.add(cfg.axis2.name)
    for name in PARAM_NAMES:
        if name not in swept and getattr(cfg, name) is None:
            raise ConfigError(f"{name}: required for {cmd}")
    if cfg.gamma is not None and cfg.gamma < 0:
        raise ConfigError(f"gamma: must be >= 0, got {cfg.gamma!r}")
    if cmd in ("ratio", "pt-diagram") and cfg.n_points < 64:
        raise ConfigError(f"n-points: must be >= 64 for {cmd}, got {cfg.n_points}")
    if cfg.n_points < 1:
        raise ConfigError(f"n-points: must be >= 1, got {cfg.n_points}")
    if cfg.workers < 1:
        raise ConfigError(f"workers: must be >= 1, got {cfg.workers}")
    if cmd in ("evolve", "ee-scaling", "ee-profile", "ee-diagram"):
        if cfg.periods < 1:
            raise ConfigError(f"periods: must be >= 1, got {cfg.periods}")
    if cmd in ("evolve", "ee-profile"):
        if cfg.L is None:
            raise ConfigError(f"L: required for {cmd}")
        if cfg.L < 2 or (cmd == "ee-profile" and cfg.L % 2):
            raise ConfigError(f"L: must be {'an even number ' if cmd == 'ee-profile' else ''}>= 2, got {cfg.L}")
        if cmd == "evolve" and cfg.l is not None and not 1 <= cfg.l <= cfg.L - 1:
            raise ConfigError(f"l: must lie in 1..{cfg.L - 1}, got {cfg.l}")
    if cmd in ("ee-scaling", "ee-profile", "ee-diagram"):
        start, end = cfg.window
        if not 0 <= start < end <= cfg.periods:
            raise ConfigError(f"window: need 0 <= start < end <= periods ({cfg.periods}), got {cfg.window}")
    if cmd in ("ee-scaling", "ee-diagram"):
        if any(L < 2 or L % 2 for L in cfg.sizes):
            raise ConfigError(f"sizes: all sizes must be even and >= 2, got {cfg.sizes}")
        if list(cfg.sizes) != sorted(set(cfg.sizes)):
            raise ConfigError(f"sizes: must be strictly ascending, got {cfg.sizes}")
        if len(cfg.sizes) < 3:
            raise ConfigError("sizes: the volume-law fit needs at least 3 sizes")


def fmt(x) -> str:
    """17 significant digits; negative zero printed as 0."""
    if isinstance(x, (str, int)) and not isinstance(x, bool):
        return str(x)
    x = float(x)
    if x == 0.0:
        x = 0.0
    return format(x, ".17g")


def _row(values) -> str:
    return ",".join(fmt(v.value if hasattr(v, "value") else v) for v in values)


def render(cfg: RunConfig) -> str:
    """Compute the command's table and return the full CSV text."""
    out = io.StringIO()
    out.write(f"{PROVENANCE_MARK} {__version__}\n")
    for line in cfg.to_lines():
        out.write(f"# {line}\n")
    cmd = cfg.command

    if cmd == "spectrum":
        k = midpoint_nodes(cfg.n_points)
        q = quasienergy(cfg.params(), k)
        out.write("k,reE_plus,imE_plus,reE_minus,imE_minus,cosE\n")
        for row in zip(k, q.e_plus.real, q.e_plus.imag, q.e_minus.real, q.e_minus.imag, q.cos_e):
            out.write(_row(row) + "\n")

    elif cmd == "ratio":
        d = classify_pt(cfg.params(), KGrid(cfg.n_points))
        out.write("j1,j2,gamma,R,gap,phase\n")
        out.write(_row((cfg.j1, cfg.j2, cfg.gamma, d.r_ratio, d.dissipation_gap, d.phase)) + "\n")

    elif cmd == "pt-diagram":
        fixed = _fixed_params(cfg)
        cells = sweep_pt_diagram(cfg.axis1, cfg.axis2, fixed, KGrid(cfg.n_points), cfg.workers)
        out.write(",".join(_axis_names(cfg) + ["R", "gap", "phase"]) + "\n")
        for c in cells:
            out.write(_row((*c.values, c.r_ratio, c.dissipation_gap, c.phase)) + "\n")

    elif cmd == "evolve":
        sub = SubsystemSpec(cfg.l if cfg.l is not None else cfg.L // 2)
        trace = entanglement_trace(cfg.params(), LatticeSpec(cfg.L), cfg.periods, sub)
        out.write("period,S\n")
        for p, s in zip(trace.periods, trace.values):
            out.write(_row((int(p), s)) + "\n")

    elif cmd == "ee-scaling":
        points = ee_vs_system_size(cfg.params(), cfg.sizes, cfg.periods, cfg.window, cfg.workers)
        out.write("L,S_mean,S_std\n")
        for p in points:
            out.write(_row(p) + "\n")
        fit = fit_volume_law([(p.l_cells, p.s_mean) for p in points])
        out.write("g,s0,g_stderr,rss,label\n")
        out.write(_row((fit.g, fit.s0, fit.g_stderr, fit.rss, classify_entanglement(fit))) + "\n")

    elif cmd == "ee-profile":
        profile = ee_vs_subsystem(cfg.params(), cfg.L, cfg.periods, cfg.window)
        out.write("l,S_mean\n")
        for row in profile:
            out.write(_row(row) + "\n")
        fit = fit_subsystem_profile(profile, cfg.L)
        out.write("g0,g1,g2,rss\n")
        out.write(_row((fit.g0, fit.g1, fit.g2, fit.rss)) + "\n")

    elif cmd == "ee-diagram":
        fixed = _fixed_params(cfg)
        cells = sweep_entanglement_diagram(
            cfg.axis1, cfg.axis2, fixed, cfg.sizes, cfg.periods, cfg.window, cfg.workers
        )
        out.write(",".join(_axis_names(cfg) + ["g", "label"]) + "\n")
        for c in cells:
            out.write(_row((*c.values, c.g, c.label)) + "\n")
        out.write(f"# rows = {len(cells)}\n")

    return out.getvalue()


def _axis_names(cfg: RunConfig) -> list[str]:
    return [a.name for a in (cfg.axis1, cfg.axis2) if a is not None]


def _fixed_params(cfg: RunConfig) -> ModelParams:
    # swept names get a placeholder that every cell overrides
    return ModelParams(**{n: 0.0 if getattr(cfg, n) is None else getattr(cfg, n) for n in PARAM_NAMES})


def csv_body(text: str) -> str:
    """The non-comment lines of an output file, used for determinism checks."""
    return "".join(line for line in text.splitlines(keepends=True) if not line.startswith("#"))


def run(cfg: RunConfig) -> int:
    """Execute ``cfg`` and write its CSV; returns the process exit status."""
    try:
        text = render(cfg)
    except (ConfigError, InvalidArgumentError) as exc:
        print(f"nhfloquet: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalError as exc:
        print(f"nhfloquet: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except NHFloquetError as exc:
        print(f"nhfloquet: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        if cfg.output == "-":
            sys.stdout.write(text)
        else:
            Path(cfg.output).write_text(text)
    except OSError as exc:
        print(f"nhfloquet: cannot write {cfg.output}: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    try:
        cfg = parse_config(argv)
    except ConfigError as exc:
        print(f"nhfloquet: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
