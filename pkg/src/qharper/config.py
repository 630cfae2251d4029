"""Run configuration: TOML loading, validation, defaults.

One file drives every command so runs share the same lattice and source.
The seed must be present (here or on the command line); no command ever
draws from implicit entropy.
"""

from dataclasses import dataclass, field, asdict

import numpy as np

from .counting import COHERENT, THERMAL, DetectionChannel, SourceModel
from .errors import ConfigError, InvalidParameterError
from .lattice import GOLDEN_MEAN, LatticeParams

try:
    import tomllib as _toml
except ImportError:  # python < 3.11
    import tomli as _toml

KNOWN_COMMANDS = ("bands", "evolve", "correlate", "counts", "disorder", "calibrate")


@dataclass(frozen=True)
class CountingConfig:
    """Flux and duration settings for the counting commands."""

    chip_transmission: float = 2.8e-3
    auto_transmission: float = 0.05
    bulk_sites: tuple = (30, 31, 36, 38)
    duration_s: float = 300.0
    boundary_duration_s: float = 1500.0
    aggregate_threshold: int = 1_000_000_000


@dataclass(frozen=True)
class SweepConfig:
    n_phi: int = 512
    n_z_samples: int = 100


@dataclass(frozen=True)
class DisorderConfig:
    strength: float = 0.1
    ensemble: int = 100


@dataclass(frozen=True)
class CalibrationConfig:
    """Confinement calibration; apply_to lists commands that use the
    calibrated t in place of the configured lattice scale."""

    target: float = 0.946
    t_min: float = 1e-4
    t_max: float = 2.0
    tol: float = 1e-4
    apply_to: tuple = ("correlate", "disorder")


@dataclass(frozen=True)
class RunConfig:
    lattice: LatticeParams
    z: float
    boundary_site: int
    bulk_site: int
    source: SourceModel
    detection: DetectionChannel
    counting: CountingConfig
    sweep: SweepConfig
    disorder: DisorderConfig
    calibration: CalibrationConfig
    seed: int
    out_dir: str = "runs"
    region_size: int = 7  # window for region-restricted renormalization

    def __post_init__(self):
        n = self.lattice.n_sites
        for name, site in (("boundary", self.boundary_site), ("bulk", self.bulk_site)):
            if not 1 <= site <= n:
                raise ConfigError("%s injection site %r outside [1, %d]" % (name, site, n))
        for site in self.counting.bulk_sites:
            if not 1 <= site <= n:
                raise ConfigError("monitored site %r outside [1, %d]" % (site, n))
        if self.seed is None or int(self.seed) < 0:
            raise ConfigError("a nonnegative seed is required; none was given")
        if not self.z >= 0:
            raise ConfigError("z must be nonnegative")
        for cmd in self.calibration.apply_to:
            if cmd not in KNOWN_COMMANDS:
                raise ConfigError("calibration.apply_to lists unknown command %r" % (cmd,))
        if not 1 <= self.region_size <= n:
            raise ConfigError("region_size must lie in [1, n_sites]")

    def echo(self):
        """Plain-dict snapshot of the configuration for the manifest."""
        d = asdict(self)
        d["lattice"] = asdict(self.lattice)
        d["source"] = asdict(self.source)
        d["detection"] = asdict(self.detection)
        return d


def _section(data, name):
    sec = data.get(name, {})
    if not isinstance(sec, dict):
        raise ConfigError("[%s] must be a table" % name)
    return dict(sec)


def _take(sec, key, kind, default=None, required=False, section=""):
    if key not in sec:
        if required:
            raise ConfigError("missing required key %r in [%s]" % (key, section))
        return default
    val = sec.pop(key)
    try:
        if kind is int:
            if isinstance(val, float) and not float(val).is_integer():
                raise ValueError("not an integer")
            return int(val)
        return kind(val)
    except (TypeError, ValueError) as exc:
        raise ConfigError(
            "key %r in [%s] has invalid value %r (%s)" % (key, section, val, exc)
        ) from exc


def _reject_unknown(sec, section):
    if sec:
        raise ConfigError("unknown keys in [%s]: %s" % (section, ", ".join(sorted(sec))))


def load_config(path, seed_override=None, out_override=None) -> RunConfig:
    """Parse and validate a TOML run configuration."""
    try:
        with open(path, "rb") as fh:
            data = _toml.load(fh)
    except FileNotFoundError as exc:
        raise ConfigError("config file not found: %s" % path) from exc
    except _toml.TOMLDecodeError as exc:
        raise ConfigError("config file %s is not valid TOML: %s" % (path, exc)) from exc
    return build_config(data, seed_override=seed_override, out_override=out_override)


def build_config(data, seed_override=None, out_override=None) -> RunConfig:
    known = {"run", "lattice", "injections", "source", "detection", "counting",
             "sweep", "disorder", "calibration", "output"}
    extra = set(data) - known
    if extra:
        raise ConfigError("unknown sections: %s" % ", ".join(sorted(extra)))

    run = _section(data, "run")
    seed = _take(run, "seed", int, section="run")
    out_dir = _take(run, "out_dir", str, default="runs", section="run")
    _reject_unknown(run, "run")
    if seed_override is not None:
        seed = int(seed_override)
    if out_override is not None:
        out_dir = str(out_override)
    if seed is None:
        raise ConfigError("seed is required: set [run].seed or pass --seed")

    lat = _section(data, "lattice")
    phi = _take(lat, "phi", float, section="lattice")
    phi_over_pi = _take(lat, "phi_over_pi", float, section="lattice")
    if phi is not None and phi_over_pi is not None:
        raise ConfigError("give only one of phi and phi_over_pi")
    if phi is None:
        phi = (phi_over_pi if phi_over_pi is not None else 0.2) * np.pi
    try:
        lattice = LatticeParams(
            n_sites=_take(lat, "n_sites", int, default=50, section="lattice"),
            t=_take(lat, "t", float, default=1.0, section="lattice"),
            lam=_take(lat, "lambda", float, default=0.5, section="lattice"),
            b=_take(lat, "b", float, default=GOLDEN_MEAN, section="lattice"),
            phi=phi,
        )
    except InvalidParameterError as exc:
        raise ConfigError("invalid [lattice]: %s" % exc) from exc
    z = _take(lat, "z_mm", float, default=35.0, section="lattice")
    _reject_unknown(lat, "lattice")

    inj = _section(data, "injections")
    boundary_site = _take(inj, "boundary", int, default=1, section="injections")
    bulk_site = _take(inj, "bulk", int, default=26, section="injections")
    _reject_unknown(inj, "injections")

    src = _section(data, "source")
    try:
        source = SourceModel(
            mu=_take(src, "mu", float, default=0.1056, section="source"),
            schmidt_k=_take(src, "schmidt_k", float, default=1.0, section="source"),
            window_ns=_take(src, "window_ns", float, default=2.0, section="source"),
            statistics=_take(src, "statistics", str, default=THERMAL, section="source"),
        )
    except InvalidParameterError as exc:
        raise ConfigError("invalid [source]: %s" % exc) from exc
    _reject_unknown(src, "source")

    det = _section(data, "detection")
    try:
        detection = DetectionChannel(
            transmission=_take(det, "transmission", float, default=0.05,
                               section="detection"),
            dark_prob=_take(det, "dark_prob", float, default=0.0, section="detection"),
        )
    except InvalidParameterError as exc:
        raise ConfigError("invalid [detection]: %s" % exc) from exc
    _reject_unknown(det, "detection")

    cnt = _section(data, "counting")
    counting = CountingConfig(
        chip_transmission=_take(cnt, "chip_transmission", float, default=2.8e-3,
                                section="counting"),
        auto_transmission=_take(cnt, "auto_transmission", float, default=0.05,
                                section="counting"),
        bulk_sites=tuple(
            _take(cnt, "bulk_sites", list, default=[30, 31, 36, 38], section="counting")
        ),
        duration_s=_take(cnt, "duration_s", float, default=300.0, section="counting"),
        boundary_duration_s=_take(cnt, "boundary_duration_s", float, default=1500.0,
                                  section="counting"),
        aggregate_threshold=_take(cnt, "aggregate_threshold", int,
                                  default=1_000_000_000, section="counting"),
    )
    _reject_unknown(cnt, "counting")

    swp = _section(data, "sweep")
    sweep = SweepConfig(
        n_phi=_take(swp, "n_phi", int, default=512, section="sweep"),
        n_z_samples=_take(swp, "z_samples", int, default=100, section="sweep"),
    )
    _reject_unknown(swp, "sweep")

    dis = _section(data, "disorder")
    disorder = DisorderConfig(
        strength=_take(dis, "strength", float, default=0.1, section="disorder"),
        ensemble=_take(dis, "ensemble", int, default=100, section="disorder"),
    )
    _reject_unknown(dis, "disorder")

    cal = _section(data, "calibration")
    calibration = CalibrationConfig(
        target=_take(cal, "target", float, default=0.946, section="calibration"),
        t_min=_take(cal, "t_min", float, default=1e-4, section="calibration"),
        t_max=_take(cal, "t_max", float, default=2.0, section="calibration"),
        tol=_take(cal, "tol", float, default=1e-4, section="calibration"),
        apply_to=tuple(
            _take(cal, "apply_to", list, default=["correlate", "disorder"],
                  section="calibration")
        ),
    )
    _reject_unknown(cal, "calibration")

    out = _section(data, "output")
    region_size = _take(out, "region_size", int, default=7, section="output")
    _reject_unknown(out, "output")

    return RunConfig(
        lattice=lattice, z=z, boundary_site=boundary_site, bulk_site=bulk_site,
        source=source, detection=detection, counting=counting, sweep=sweep,
        disorder=disorder, calibration=calibration, seed=int(seed),
        out_dir=out_dir, region_size=region_size,
    )


DEFAULT_CONFIG_TOML = """\
# Reference experiment configuration.
#
# The lattice scale t sets the counting depth t*z directly; commands listed
# in calibration.apply_to replace t with the calibrated value instead.

[run]
seed = 7
out_dir = "runs"

[lattice]
n_sites = 50
t = 0.6886
lambda = 0.5
phi_over_pi = 0.2
z_mm = 35.0
# b defaults to the golden mean (1 + sqrt(5))/2

[injections]
boundary = 1
bulk = 26

[source]
mu = 0.1056
schmidt_k = 1.0
window_ns = 2.0
statistics = "thermal"

[detection]
transmission = 0.05
dark_prob = 0.0

[counting]
chip_transmission = 2.8e-3
auto_transmission = 0.05
bulk_sites = [30, 31, 36, 38]
duration_s = 300.0
boundary_duration_s = 1500.0
aggregate_threshold = 1000000000

[sweep]
n_phi = 512
z_samples = 100

[disorder]
strength = 0.1
ensemble = 100

[calibration]
target = 0.946
t_min = 1.0e-4
t_max = 2.0
tol = 1.0e-4
apply_to = ["correlate", "disorder"]

[output]
region_size = 7
"""
