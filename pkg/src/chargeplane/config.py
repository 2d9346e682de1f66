"""Run configuration: a single YAML file with nested sections.

The file is the archival record of a run: all physics parameters live here,
while command-line flags cover only paths, verbosity and thread count.
Unknown keys are rejected everywhere so a typo cannot silently change a run.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import yaml

from .basis import ChannelConfig
from .errors import ChargePlaneError, ConfigError
from .potential import PotentialModel, parse_potential, potential_to_config
from .resonance import DEFAULT_IM_SCHEDULE
from .trajectory import EnergyGrid


def _check_keys(section: dict, allowed, where: str):
    unknown = set(section) - set(allowed)
    if unknown:
        raise ConfigError(f"unknown keys in {where}: {sorted(unknown)}")


def _complex_pair(entry, where: str) -> complex:
    if not isinstance(entry, dict):
        raise ConfigError(f"{where} must be a mapping with re/im")
    _check_keys(entry, ("re", "im"), where)
    try:
        return complex(float(entry.get("re", 0.0)), float(entry.get("im", 0.0)))
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{where}: {exc}") from exc


@dataclass(frozen=True)
class ScanConfig:
    """Targets and energy ranges for eigs/sweep/find/scan commands."""

    energy: complex | None = None
    grid: EnergyGrid | None = None
    guess: complex | None = None
    z_targets: tuple[float, ...] = ()
    im_schedule: tuple[float, ...] = DEFAULT_IM_SCHEDULE
    window: float = 0.5


@dataclass(frozen=True)
class StabilityConfig:
    """Parameter grids for stability verification."""

    lambda_values: tuple[float, ...] = ()
    theta_values: tuple[float, ...] = ()
    n_values: tuple[int, ...] = ()
    tolerance: float = 1e-8


@dataclass(frozen=True)
class TableConfig:
    """Which built-in reference tables to reproduce and at what tolerance."""

    tables: tuple[str, ...] = ("table1",)
    tolerance: float | None = None


@dataclass(frozen=True)
class RunConfig:
    potential: PotentialModel = field(default_factory=PotentialModel)
    channel: ChannelConfig = None
    scan: ScanConfig = field(default_factory=ScanConfig)
    stability: StabilityConfig = field(default_factory=StabilityConfig)
    table: TableConfig = field(default_factory=TableConfig)


def parse_config(data: dict) -> RunConfig:
    """Validate and build a RunConfig from a parsed YAML mapping."""
    if not isinstance(data, dict):
        raise ConfigError("config root must be a mapping")
    _check_keys(data, ("potential", "channel", "scan", "stability", "table"), "config root")

    model = parse_potential(data.get("potential"))

    ch = data.get("channel")
    if ch is None:
        raise ConfigError("config is missing the channel section")
    _check_keys(ch, ("l", "n_basis", "scale", "theta", "quad_size"), "channel")
    try:
        channel = ChannelConfig(
            l=int(ch.get("l", 0)),
            n_basis=int(ch["n_basis"]),
            scale=float(ch["scale"]),
            theta=float(ch.get("theta", 0.0)),
            quad_size=int(ch["quad_size"]) if "quad_size" in ch else None,
        )
    except KeyError as exc:
        raise ConfigError(f"channel section is missing {exc}") from exc
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"channel: {exc}") from exc

    sc = data.get("scan", {}) or {}
    _check_keys(sc, ("energy", "grid", "guess", "z_targets", "im_schedule", "window"), "scan")
    grid = None
    if "grid" in sc:
        g = sc["grid"]
        _check_keys(g, ("re_start", "re_end", "steps", "im_part"), "scan.grid")
        try:
            grid = EnergyGrid(
                re_start=float(g["re_start"]),
                re_end=float(g["re_end"]),
                steps=int(g["steps"]),
                im_part=float(g.get("im_part", 0.0)),
            )
        except KeyError as exc:
            raise ConfigError(f"scan.grid is missing {exc}") from exc
        except (TypeError, ValueError, ChargePlaneError) as exc:
            raise ConfigError(f"scan.grid: {exc}") from exc
    scan = ScanConfig(
        energy=_complex_pair(sc["energy"], "scan.energy") if "energy" in sc else None,
        grid=grid,
        guess=_complex_pair(sc["guess"], "scan.guess") if "guess" in sc else None,
        z_targets=tuple(float(z) for z in sc.get("z_targets", ())),
        im_schedule=tuple(float(v) for v in sc.get("im_schedule", DEFAULT_IM_SCHEDULE)),
        window=float(sc.get("window", 0.5)),
    )

    st = data.get("stability", {}) or {}
    _check_keys(st, ("lambda_values", "theta_values", "n_values", "tolerance"), "stability")
    stability = StabilityConfig(
        lambda_values=tuple(float(v) for v in st.get("lambda_values", ())),
        theta_values=tuple(float(v) for v in st.get("theta_values", ())),
        n_values=tuple(int(v) for v in st.get("n_values", ())),
        tolerance=float(st.get("tolerance", 1e-8)),
    )

    tb = data.get("table", {}) or {}
    _check_keys(tb, ("tables", "tolerance"), "table")
    table = TableConfig(
        tables=tuple(tb.get("tables", ("table1",))),
        tolerance=float(tb["tolerance"]) if "tolerance" in tb else None,
    )

    return RunConfig(potential=model, channel=channel, scan=scan, stability=stability, table=table)


def load_config(path) -> RunConfig:
    """Parse a YAML config file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = yaml.safe_load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError(f"malformed YAML in {path}: {exc}") from exc
    return parse_config(data)


def config_to_dict(cfg: RunConfig) -> dict:
    """Serialize a RunConfig back to the mapping accepted by parse_config."""
    out: dict = {
        "potential": potential_to_config(cfg.potential),
        "channel": {
            "l": cfg.channel.l,
            "n_basis": cfg.channel.n_basis,
            "scale": cfg.channel.scale,
            "theta": cfg.channel.theta,
            "quad_size": cfg.channel.quad_size,
        },
    }
    scan: dict = {}
    if cfg.scan.energy is not None:
        scan["energy"] = {"re": cfg.scan.energy.real, "im": cfg.scan.energy.imag}
    if cfg.scan.grid is not None:
        g = cfg.scan.grid
        scan["grid"] = {
            "re_start": g.re_start,
            "re_end": g.re_end,
            "steps": g.steps,
            "im_part": g.im_part,
        }
    if cfg.scan.guess is not None:
        scan["guess"] = {"re": cfg.scan.guess.real, "im": cfg.scan.guess.imag}
    scan["z_targets"] = list(cfg.scan.z_targets)
    scan["im_schedule"] = list(cfg.scan.im_schedule)
    scan["window"] = cfg.scan.window
    out["scan"] = scan
    out["stability"] = {
        "lambda_values": list(cfg.stability.lambda_values),
        "theta_values": list(cfg.stability.theta_values),
        "n_values": list(cfg.stability.n_values),
        "tolerance": cfg.stability.tolerance,
    }
    out["table"] = {"tables": list(cfg.table.tables)}
    if cfg.table.tolerance is not None:
        out["table"]["tolerance"] = cfg.table.tolerance
    return out


def dump_config(cfg: RunConfig) -> str:
    return yaml.safe_dump(config_to_dict(cfg), sort_keys=False)
