"""Config-driven command line for the lattice experiments.

Each subcommand reads one TOML config, writes CSV/SVG artifacts into the
output directory, and records content hashes plus timing in
manifest.json. Outputs are deterministic per (config, seed): identical
reruns produce byte-identical CSV, SVG, and manifest hashes.

Exit codes: 0 success, 2 configuration error, 3 numerical failure,
4 I/O failure. On error, files written by the failing command are
removed so the output directory never holds partial results.
"""

import argparse
import csv
import os
import sys
import time

import numpy as np

from .calibrate import calibrate_coupling
from .config import KNOWN_COMMANDS, load_config
from .counting import (
    IDLER,
    SIGNAL,
    DetectionChannel,
    cauchy_schwarz,
    estimate_g2,
    hbt_auto_g2,
    simulate_counts,
    site_count_record,
    site_seed,
)
from .errors import (
    CalibrationError,
    ConfigError,
    InvalidParameterError,
    NumericalFailureError,
    UndefinedEstimateError,
)
from .evolution import (
    confinement,
    evolution_snapshots,
    propagate,
    single_photon_distribution,
    two_photon_correlation,
)
from .lattice import apply_disorder, build_hamiltonian, coupling_profile
from .manifest import update_manifest
from .spectra import LABEL_LEFT, classify_modes, eigendecompose, phase_sweep
from . import plots

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4

LOCK_NAME = ".qharper.lock"

# salt offsets decorrelating CLI sub-runs that share the top-level seed
_ROW_SALT = 10_000
_DISORDER_SALT = 20_000


def _fmt(x):
    """One CSV cell: '' marks an undefined value, floats use 12 digits."""
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return "%.12g" % float(x)
    return str(x)


class _Sink:
    """Tracks artifacts written by one command for hashing and cleanup."""

    def __init__(self, out_dir):
        self.out_dir = out_dir
        self.written = []

    def path(self, name):
        return os.path.join(self.out_dir, name)

    def csv(self, name, header, rows):
        path = self.path(name)
        with open(path, "w", encoding="utf-8", newline="") as fh:
            w = csv.writer(fh)  # RFC-4180 CRLF line endings
            w.writerow(header)
            for row in rows:
                w.writerow([_fmt(cell) for cell in row])
        self.written.append(path)
        return path

    def figure(self, draw, name, *args, **kwargs):
        path = self.path(name)
        draw(*args, path=path, **kwargs)
        self.written.append(path)
        return path

    def discard_all(self):
        for path in self.written:
            try:
                os.unlink(path)
            except OSError:
                pass
        self.written = []


def _effective_scale(cfg, command):
    """Coupling scale for a command: calibrated when listed in apply_to."""
    cal = cfg.calibration
    if command in cal.apply_to:
        t = calibrate_coupling(cfg.lattice, cfg.z, cal.target,
                               t_min=cal.t_min, t_max=cal.t_max, tol=cal.tol)
        return float(t), True
    return float(cfg.lattice.t), False


def _propagator(cfg, t):
    h = build_hamiltonian(coupling_profile(cfg.lattice.with_t(t)))
    return propagate(h, cfg.z)


def _centered_region(site, size, n):
    half = size // 2
    lo = max(1, min(site - half, n - size + 1))
    return list(range(lo, lo + size))


def cmd_bands(cfg, sink):
    band = phase_sweep(cfg.lattice, cfg.sweep.n_phi)
    rows = []
    for phi, sd, labels in zip(band.phis, band.spectra, band.mode_labels):
        for m in range(sd.n_modes):
            rows.append([
                phi, m, sd.eigenvalues[m], labels[m],
                sd.edge_weight_left[m], sd.edge_weight_right[m], sd.ipr[m],
            ])
    sink.csv("bands.csv",
             ["phi", "mode_index", "eigenvalue", "label",
              "edge_weight_left", "edge_weight_right", "ipr"],
             rows)
    sink.figure(plots.band_plot, "bands.svg", band)


def cmd_evolve(cfg, sink):
    t, _ = _effective_scale(cfg, "evolve")
    h = build_hamiltonian(coupling_profile(cfg.lattice.with_t(t)))
    if cfg.z == 0:
        zs = np.zeros(1)
    else:
        zs = np.linspace(0.0, cfg.z, cfg.sweep.n_z_samples)
    n = h.dimension
    for label, site in (("boundary", cfg.boundary_site), ("bulk", cfg.bulk_site)):
        snaps = evolution_snapshots(h, site, zs)
        rows = [
            [zs[k], s + 1, snaps[k, s]]
            for k in range(zs.size)
            for s in range(n)
        ]
        sink.csv("evolve_%s.csv" % label, ["z_mm", "site", "probability"], rows)
        sink.csv("final_%s.csv" % label, ["site", "probability"],
                 [[s + 1, snaps[-1, s]] for s in range(n)])
        sink.figure(plots.snapshot_heatmap, "evolve_%s.svg" % label,
                    snaps, zs, title="injection at site %d" % site)


def cmd_correlate(cfg, sink):
    t, calibrated = _effective_scale(cfg, "correlate")
    u = _propagator(cfg, t)
    n = u.n_sites
    summary = []
    for label, site in (("boundary", cfg.boundary_site), ("bulk", cfg.bulk_site)):
        corr = two_photon_correlation(u, site, site, indistinguishable=True)
        rows = [
            [q + 1, r + 1, corr.gamma[q, r]]
            for q in range(n)
            for r in range(n)
        ]
        sink.csv("gamma_%s.csv" % label, ["site_q", "site_r", "gamma"], rows)
        sink.figure(plots.gamma_heatmap, "gamma_%s.svg" % label, corr.gamma,
                    title="both photons injected at site %d" % site)
        region = _centered_region(site, cfg.region_size, n)
        sub = corr.region_normalized(region)
        k = region.index(site)
        summary.append([
            label, site, t, calibrated,
            corr.at(site, site), sub[k, k], float(corr.gamma.max()),
        ])
    sink.csv("correlate_summary.csv",
             ["scenario", "input_site", "t_per_mm", "calibrated",
              "gamma_input_pair", "gamma_input_pair_region", "gamma_max"],
             summary)


def _counts_row(label, site, rec, gsi, src, auto_ch, duration, row_seed, threshold):
    gss = hbt_auto_g2(src, SIGNAL, auto_ch, duration, row_seed,
                      aggregate_threshold=threshold)
    gii = hbt_auto_g2(src, IDLER, auto_ch, duration, row_seed,
                      aggregate_threshold=threshold)
    if gsi is None:
        cs = (None, None, None, None)
    else:
        r = cauchy_schwarz(gsi, gss, gii)
        cs = (r.violation, r.sigma_v, r.sds, r.violated)
    return [
        label, site, duration, rec.n_windows,
        rec.singles_s, rec.singles_i, rec.coincidences,
        None if gsi is None else gsi.value,
        None if gsi is None else gsi.sigma,
        gss.value, gss.sigma, gii.value, gii.sigma,
        cs[0], cs[1], cs[2], cs[3],
    ]


def cmd_counts(cfg, sink):
    t, _ = _effective_scale(cfg, "counts")
    u = _propagator(cfg, t)
    src = cfg.source
    cnt = cfg.counting
    threshold = cnt.aggregate_threshold
    auto_ch = DetectionChannel(transmission=cnt.auto_transmission,
                               dark_prob=cfg.detection.dark_prob)
    chip = DetectionChannel(transmission=cnt.chip_transmission,
                            dark_prob=cfg.detection.dark_prob)

    def row_seed(idx):
        return site_seed(cfg.seed, _ROW_SALT + idx)

    rows = []

    # source measured straight into the detectors, no chip in the path
    rec = simulate_counts(src, cfg.detection, cfg.detection,
                          cnt.duration_s, row_seed(0),
                          aggregate_threshold=threshold)
    rows.append(_counts_row("input", None, rec, _try_estimate(rec), src,
                            auto_ch, cnt.duration_s, row_seed(0), threshold))

    # chip rows: (label, injection site, monitored site, duration)
    scan = [("boundary", cfg.boundary_site, cfg.boundary_site,
             cnt.boundary_duration_s)]
    scan += [("bulk", cfg.bulk_site, s, cnt.duration_s) for s in cnt.bulk_sites]
    for idx, (label, inj, site, duration) in enumerate(scan, start=1):
        rec = site_count_record(u, inj, inj, src, chip, site, duration,
                                cfg.seed, aggregate_threshold=threshold)
        rows.append(_counts_row(label, site, rec, _try_estimate(rec), src,
                                auto_ch, duration, row_seed(idx), threshold))

    sink.csv("counts.csv",
             ["label", "site", "duration_s", "n_windows",
              "singles_s", "singles_i", "coincidences",
              "g_si", "sigma_si", "g_ss", "sigma_ss", "g_ii", "sigma_ii",
              "violation", "sigma_v", "sds", "violated"],
             rows)


def _try_estimate(rec):
    try:
        return estimate_g2(rec)
    except UndefinedEstimateError:
        return None


def cmd_disorder(cfg, sink):
    t, _ = _effective_scale(cfg, "disorder")
    base = coupling_profile(cfg.lattice.with_t(t))
    rows = []
    edge_weights = []
    confinements = []
    for r in range(cfg.disorder.ensemble):
        dseed = site_seed(cfg.seed, _DISORDER_SALT + r)
        prof = apply_disorder(base, cfg.disorder.strength, dseed)
        h = build_hamiltonian(prof)
        sd = eigendecompose(h)
        labels = classify_modes(sd)
        left = [m for m, lab in enumerate(labels) if lab == LABEL_LEFT]
        pool = left if left else range(sd.n_modes)
        ew = float(max(sd.edge_weight_left[m] for m in pool))
        p = single_photon_distribution(propagate(h, cfg.z), cfg.boundary_site)
        conf = confinement(p, {cfg.boundary_site})
        rows.append([r, dseed, len(left), ew, conf])
        edge_weights.append(ew)
        confinements.append(conf)
    sink.csv("disorder.csv",
             ["realization", "seed", "n_left_modes", "edge_weight_left",
              "confinement"],
             rows)
    qs = (0.05, 0.25, 0.5, 0.75, 0.95)
    summary = []
    for name, vals in (("edge_weight_left", edge_weights),
                       ("confinement", confinements)):
        arr = np.asarray(vals)
        summary.append([name, *np.quantile(arr, qs),
                        float(np.mean(arr > 0.8))])
    sink.csv("disorder_summary.csv",
             ["metric", "q05", "q25", "median", "q75", "q95",
              "fraction_above_0.8"],
             summary)


def cmd_calibrate(cfg, sink):
    cal = cfg.calibration
    t_star = calibrate_coupling(cfg.lattice, cfg.z, cal.target,
                                t_min=cal.t_min, t_max=cal.t_max, tol=cal.tol)
    u = _propagator(cfg, t_star)
    p = single_photon_distribution(u, cfg.boundary_site)
    p1 = float(p[cfg.boundary_site - 1])
    corr = two_photon_correlation(u, cfg.boundary_site, cfg.boundary_site)
    g11 = corr.at(cfg.boundary_site, cfg.boundary_site)
    sink.csv("calibration.csv",
             ["target", "sqrt_target", "t_per_mm", "depth",
              "confinement", "gamma_input_pair", "residual"],
             [[cal.target, float(np.sqrt(cal.target)), t_star,
               t_star * cfg.z, p1, g11, abs(p1 - float(np.sqrt(cal.target)))]])


_COMMANDS = {
    "bands": cmd_bands,
    "evolve": cmd_evolve,
    "correlate": cmd_correlate,
    "counts": cmd_counts,
    "disorder": cmd_disorder,
    "calibrate": cmd_calibrate,
}

assert set(_COMMANDS) == set(KNOWN_COMMANDS)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="qharper",
        description="Boundary-state and photon-correlation experiments on "
                    "modulated photonic lattices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in KNOWN_COMMANDS:
        p = sub.add_parser(name, help="run the %s experiment" % name)
        p.add_argument("--config", required=True, help="TOML run configuration")
        p.add_argument("--seed", type=int, default=None,
                       help="override [run].seed")
        p.add_argument("--out", default=None,
                       help="override [run].out_dir")
    return parser


def _acquire_lock(out_dir):
    path = os.path.join(out_dir, LOCK_NAME)
    fd = os.open(path, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
    os.write(fd, ("%d\n" % os.getpid()).encode("ascii"))
    os.close(fd)
    return path


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config, seed_override=args.seed,
                          out_override=args.out)
    except ConfigError as exc:
        print("config error: %s" % exc, file=sys.stderr)
        return EXIT_CONFIG

    try:
        os.makedirs(cfg.out_dir, exist_ok=True)
    except OSError as exc:
        print("cannot create output directory: %s" % exc, file=sys.stderr)
        return EXIT_IO

    try:
        lock = _acquire_lock(cfg.out_dir)
    except FileExistsError:
        print("output directory %s is locked by another run (remove %s if "
              "stale)" % (cfg.out_dir, LOCK_NAME), file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print("cannot lock output directory: %s" % exc, file=sys.stderr)
        return EXIT_IO

    sink = _Sink(cfg.out_dir)
    t0 = time.perf_counter()
    try:
        _COMMANDS[args.command](cfg, sink)
        update_manifest(cfg.out_dir, args.command, cfg.echo(), sink.written,
                        time.perf_counter() - t0)
    except (ConfigError, InvalidParameterError) as exc:
        sink.discard_all()
        print("config error: %s" % exc, file=sys.stderr)
        return EXIT_CONFIG
    except (NumericalFailureError, CalibrationError,
            UndefinedEstimateError) as exc:
        sink.discard_all()
        print("numerical failure: %s" % exc, file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        sink.discard_all()
        print("i/o failure: %s" % exc, file=sys.stderr)
        return EXIT_IO
    finally:
        try:
            os.unlink(lock)
        except OSError:
            pass
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
