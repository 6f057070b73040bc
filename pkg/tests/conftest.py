"""Shared fixtures and curve builders for the test suite."""
from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

import curvediffusion as cd

FIXTURE_DIR = Path(__file__).parent / "fixtures"


def ellipse_curve(n: int = 256, a: float = 1.0, b: float = 0.5) -> cd.DiscreteCurve:
    u = 2.0 * np.pi * np.arange(n) / n
    nodes = np.column_stack([a * np.cos(u), b * np.sin(u)])
    return cd.DiscreteCurve(nodes, closed=True)


def random_smooth_curve(rng: np.random.Generator, n: int = 256) -> cd.DiscreteCurve:
    """Closed star-shaped curve with a seeded Fourier-perturbed radius."""
    u = 2.0 * np.pi * np.arange(n) / n
    r = np.ones(n)
    for k in range(2, 7):
        a, b = rng.normal(size=2)
        r += 0.03 * (a * np.cos(k * u) + b * np.sin(k * u))
    return cd.DiscreteCurve(np.column_stack([r * np.cos(u), r * np.sin(u)]), closed=True)


def rotation(angle: float) -> np.ndarray:
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, -s], [s, c]])


def moved(curve: cd.DiscreteCurve, angle: float = 0.0, shift=(0.0, 0.0),
          scale: float = 1.0) -> cd.DiscreteCurve:
    nodes = scale * (curve.nodes @ rotation(angle).T) + np.asarray(shift, dtype=float)
    return cd.DiscreteCurve(nodes, closed=curve.closed)


@pytest.fixture(scope="session")
def fixture_dir() -> Path:
    return FIXTURE_DIR


@pytest.fixture(scope="session")
def circle_512() -> cd.DiscreteCurve:
    return cd.sample_analytic(cd.Circle(1.0), 512)


@pytest.fixture(scope="session")
def lemniscate_512() -> cd.DiscreteCurve:
    return cd.sample_analytic(cd.Lemniscate(), 512)


@pytest.fixture(scope="session")
def clothoid_512() -> cd.DiscreteCurve:
    spec = cd.FresnelFamily(c1=0.0, c2=np.pi / 2, s_min=-2.0, s_max=2.0)
    return cd.sample_analytic(spec, 512)


@pytest.fixture(scope="session")
def perturbed_ellipse() -> cd.DiscreteCurve:
    return cd.read_curve_csv(FIXTURE_DIR / "perturbed_ellipse_256.csv")
