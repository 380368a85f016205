"""Parameter sets for the published figures.

Each figure is a list of curves; every curve is one ensemble run written to
its own CSV. Run lengths are not given in the source captions and are chosen
so the captioned feature is visible (500 steps, 800 for the damping runs).
"""

import csv
from dataclasses import dataclass
from pathlib import Path

from .config import write_series_csv
from .dynamics import DynamicsConfig, run_ensemble


@dataclass(frozen=True)
class Curve:
    name: str
    marker: str
    config: DynamicsConfig
    note: str = ""


def _cfg(**kw) -> DynamicsConfig:
    kw.setdefault("steps", 500)
    return DynamicsConfig(**kw)


def _ensemble_pair(initial, kind, eps=0.01):
    return [
        Curve(
            f"alpha{alpha:g}",
            marker,
            _cfg(initial=initial, channel=kind, epsilon=eps, alpha=alpha, ensemble_size=100),
        )
        for alpha, marker in ((0.0, "circle"), (0.1, "triangle"))
    ]


def _rho_pair(eps, alpha, h_star, h_cross):
    # star: rho1, noise on its classical side B; cross: rho2 (sides exchanged),
    # noise on B, which carries the quantum subsystem of rho1
    return [
        Curve(
            "rho1",
            "star",
            _cfg(initial="rho1", channel="ref3", epsilon=eps, hamiltonian=h_star, alpha=alpha),
            "noise on the classical subsystem",
        ),
        Curve(
            "rho2",
            "cross",
            _cfg(initial="rho2", channel="ref3", epsilon=eps, hamiltonian=h_cross, alpha=alpha),
            "noise on the quantum subsystem",
        ),
    ]


def _fig4():
    curves = [
        Curve(
            f"state{k}",
            "narrow",
            _cfg(initial="max_entangled_random", channel="ref2", alpha=0.1, seed=42 + k),
            "single trajectory",
        )
        for k in range(5)
    ]
    curves.append(
        Curve(
            "reference",
            "bold",
            _cfg(initial="max_entangled_random", channel="ref2", alpha=0.0),
            "no unitary; independent of the initial state",
        )
    )
    return curves


def _damping(initial, alpha, marker):
    return Curve(
        f"{initial}_alpha{alpha:g}",
        marker,
        _cfg(initial=initial, channel="damping", p=0.05, alpha=alpha, ensemble_size=100, steps=800),
    )


FIGURES = {
    "fig2": lambda: [
        Curve(
            f"eps{eps:g}",
            marker,
            _cfg(initial="pure_random", channel="ref2", epsilon=eps, ensemble_size=100),
        )
        for eps, marker in ((0.01, "circle"), (0.05, "square"))
    ],
    "fig3a": lambda: _ensemble_pair("max_entangled_random", "ref1"),
    "fig3b": lambda: _ensemble_pair("max_entangled_random", "ref2"),
    "fig4": _fig4,
    "fig5a": lambda: _ensemble_pair("separable_random", "ref1"),
    "fig5b": lambda: _ensemble_pair("separable_random", "ref2"),
    "fig6a": lambda: [
        _damping("separable_random", 0.0, "square"),
        _damping("max_entangled_random", 0.0, "diamond"),
    ],
    "fig6b": lambda: [
        _damping("pure_random", 0.0, "circle"),
        _damping("pure_random", 0.1, "triangle"),
    ],
    "fig7": lambda: _rho_pair(0.01, 0.0, "H", "H")
    + [
        Curve(
            "bell",
            "bold",
            _cfg(initial="bell", channel="ref3", epsilon=0.01),
            "maximally entangled reference, same epsilon assumed",
        )
    ],
    "fig8a": lambda: _rho_pair(0.002, 0.06, "H", "Hprime"),
    "fig8b": lambda: _rho_pair(0.002, 0.06, "Hprime", "H"),
    "fig9a": lambda: _rho_pair(0.002, -0.06, "H", "Hprime"),
    "fig9b": lambda: _rho_pair(0.002, -0.06, "Hprime", "H"),
    "fig10a": lambda: _rho_pair(0.01, 0.04, "H", "Hprime"),
    "fig10b": lambda: _rho_pair(0.01, 0.04, "Hprime", "H"),
}

MANIFEST_COLUMNS = (
    "file",
    "curve",
    "marker",
    "initial",
    "channel",
    "epsilon",
    "p",
    "side",
    "hamiltonian",
    "alpha",
    "steps",
    "ensemble_size",
    "seed",
    "note",
)


def figure_curves(figure: str, seed: int | None = None) -> list[Curve]:
    if figure not in FIGURES:
        raise KeyError(f"unknown figure {figure!r}; choose from {', '.join(FIGURES)}")
    curves = FIGURES[figure]()
    if seed is not None:
        # keep the per-curve seed offsets (fig4) relative to the new base
        curves = [
            Curve(c.name, c.marker, c.config.replace(seed=c.config.seed - 42 + seed), c.note)
            for c in curves
        ]
    return curves


def reproduce(figure: str, out_dir, seed: int | None = None, workers: int = 1) -> Path:
    """Run every curve of ``figure``; write ``<figure>_<curve>.csv`` files and
    ``<figure>_manifest.csv`` into ``out_dir``. Returns the manifest path."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    rows = []
    for curve in figure_curves(figure, seed):
        series = run_ensemble(curve.config, workers=workers)
        fname = f"{figure}_{curve.name}.csv"
        with open(out_dir / fname, "w", newline="") as fh:
            write_series_csv(series, fh)
        c = curve.config
        rows.append(
            [fname, curve.name, curve.marker, c.initial, c.channel, c.epsilon, c.p,
             c.side, c.hamiltonian, c.alpha, c.steps, c.ensemble_size, c.seed, curve.note]
        )
    manifest = out_dir / f"{figure}_manifest.csv"
    with open(manifest, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(MANIFEST_COLUMNS)
        writer.writerows(rows)
    return manifest
