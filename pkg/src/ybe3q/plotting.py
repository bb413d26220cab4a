"""Figure rendering for the report paths of the command line tool.

All functions write a PNG next to the delimited data and close the
figure, so batch runs do not accumulate open handles.
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .chain import band_spectrum

DPI = 150

N_K_PLOT = 400


def plot_fig1(rows, path):
    """Moduli of the zero-mode cubic roots against beta."""
    rows = np.asarray(rows)
    fig, ax = plt.subplots(figsize=(6, 4))
    for col, label in ((1, "|x1|"), (2, "|x2|"), (3, "|x3|")):
        ax.plot(rows[:, 0], rows[:, col], label=label)
    ax.axhline(1.0, color="gray", lw=0.8, ls="--")
    ax.set_xlabel("beta")
    ax.set_ylabel("root modulus")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=DPI)
    plt.close(fig)


def plot_band(eta, beta, path):
    """Quasiparticle band of the periodic fermion chain."""
    k = np.linspace(-np.pi, np.pi, N_K_PLOT)
    eps = band_spectrum(eta, beta, k)
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(k, eps, label="+branch")
    ax.plot(k, -eps, label="-branch")
    ax.set_xlabel("k")
    ax.set_ylabel("energy")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=DPI)
    plt.close(fig)


def plot_transfer_surface(rows, path):
    """Concurrence over the (theta, t) sweep grid as a heat map."""
    rows = np.asarray(rows)
    thetas = np.unique(rows[:, 0])
    times = np.unique(rows[:, 1])
    c = rows[:, 2].reshape(thetas.size, times.size)
    fig, ax = plt.subplots(figsize=(6, 4.5))
    mesh = ax.pcolormesh(times, thetas, c, shading="auto")
    fig.colorbar(mesh, ax=ax, label="concurrence")
    ax.set_xlabel("t")
    ax.set_ylabel("theta")
    fig.tight_layout()
    fig.savefig(path, dpi=DPI)
    plt.close(fig)


def plot_concurrence_timeline(times, c_values, path):
    """Transferred concurrence against time at fixed AC phase."""
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(times, c_values)
    ax.set_xlabel("t")
    ax.set_ylabel("concurrence")
    fig.tight_layout()
    fig.savefig(path, dpi=DPI)
    plt.close(fig)
