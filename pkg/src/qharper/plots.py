"""Static SVG figures with byte-stable output.

All figures are written through one saver that pins the SVG id hash salt
and strips the creation date, so identical data yields identical bytes.
"""

import numpy as np
from matplotlib import rc_context
from matplotlib.figure import Figure

from .spectra import LABEL_BULK, LABEL_LEFT, LABEL_RIGHT

_RC = {"svg.hashsalt": "qharper", "svg.fonttype": "path"}
_LABEL_COLORS = {LABEL_BULK: "0.65", LABEL_LEFT: "tab:red", LABEL_RIGHT: "tab:blue"}


def _save(fig, path):
    with rc_context(_RC):
        fig.savefig(path, format="svg", metadata={"Date": None})


def band_plot(band, path):
    """Eigenvalues against phase, colored by mode label."""
    fig = Figure(figsize=(6.4, 4.2))
    ax = fig.add_subplot()
    pts = {label: ([], []) for label in _LABEL_COLORS}
    for phi, sd, labels in zip(band.phis, band.spectra, band.mode_labels):
        for ev, label in zip(sd.eigenvalues, labels):
            xs, ys = pts[label]
            xs.append(phi)
            ys.append(ev)
    for label in (LABEL_BULK, LABEL_LEFT, LABEL_RIGHT):
        xs, ys = pts[label]
        if xs:
            ax.scatter(xs, ys, s=2.0, c=_LABEL_COLORS[label], label=label,
                       linewidths=0, rasterized=False)
    ax.set_xlabel("phi (rad)")
    ax.set_ylabel("eigenvalue (1/mm)")
    ax.set_xlim(0, 2 * np.pi)
    ax.legend(loc="upper right", fontsize=8, markerscale=4)
    fig.tight_layout()
    _save(fig, path)


def snapshot_heatmap(snapshots, z_samples, path, title=""):
    """Propagation image: site (vertical) against depth (horizontal)."""
    arr = np.asarray(snapshots)
    n_sites = arr.shape[1]
    z0, z1 = float(z_samples[0]), float(z_samples[-1])
    if z1 <= z0:
        z1 = z0 + 1.0  # degenerate single-sample grid still renders
    fig = Figure(figsize=(6.4, 4.2))
    ax = fig.add_subplot()
    im = ax.imshow(
        arr.T, aspect="auto", origin="upper", cmap="inferno",
        extent=(z0, z1, n_sites + 0.5, 0.5),
    )
    ax.set_xlabel("z (mm)")
    ax.set_ylabel("site")
    if title:
        ax.set_title(title)
    fig.colorbar(im, ax=ax, label="probability")
    fig.tight_layout()
    _save(fig, path)


def gamma_heatmap(gamma, path, title=""):
    """Two-photon coincidence matrix over output site pairs."""
    g = np.asarray(gamma)
    n = g.shape[0]
    fig = Figure(figsize=(5.4, 4.6))
    ax = fig.add_subplot()
    im = ax.imshow(g, origin="lower", cmap="viridis",
                   extent=(0.5, n + 0.5, 0.5, n + 0.5))
    ax.set_xlabel("site r")
    ax.set_ylabel("site q")
    if title:
        ax.set_title(title)
    fig.colorbar(im, ax=ax, label="coincidence probability")
    fig.tight_layout()
    _save(fig, path)
