"""Regenerate the committed curve fixtures.

Run from the repository root:  python3 tests/fixtures/generate_fixtures.py

The perturbed ellipse is the classification calibration input: smooth
Fourier noise (modes 2..5, both coordinates, fixed seed) scaled to
amplitude 0.1 on top of the (1, 0.5) ellipse. Exact-soliton samples at
N=256 calibrate the passing side of the default tolerance.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from curvediffusion import (
    Circle,
    DiscreteCurve,
    FresnelFamily,
    Lemniscate,
    sample_analytic,
    write_curve_csv,
)

SEED = 20260814
N = 256


def perturbed_ellipse(n: int = N) -> DiscreteCurve:
    rng = np.random.default_rng(SEED)
    u = 2.0 * np.pi * np.arange(n) / n
    base = np.column_stack([np.cos(u), 0.5 * np.sin(u)])
    pert = np.zeros((n, 2))
    for mode in range(2, 6):
        for col in range(2):
            a, b = rng.normal(size=2)
            pert[:, col] += a * np.cos(mode * u) + b * np.sin(mode * u)
    pert *= 0.1 / np.max(np.abs(pert))
    return DiscreteCurve(base + pert, closed=True)


def main() -> None:
    here = Path(__file__).parent
    write_curve_csv(sample_analytic(Circle(radius=1.0), N), here / "circle_256.csv")
    write_curve_csv(sample_analytic(Lemniscate(), N), here / "lemniscate_256.csv")
    write_curve_csv(
        sample_analytic(FresnelFamily(c1=0.0, c2=np.pi / 2.0, s_min=-2.0, s_max=2.0), N),
        here / "clothoid_256.csv",
    )
    write_curve_csv(perturbed_ellipse(), here / "perturbed_ellipse_256.csv")


if __name__ == "__main__":
    main()
