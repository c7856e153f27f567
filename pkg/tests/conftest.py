import numpy as np
import pytest

from siegelkit._backend import available_backends


def _sym(g, d):
    G = g.standard_normal((d, d)) + 1j * g.standard_normal((d, d))
    return 0.5 * (G + G.T)


def disk(g, d, cap=0.95):
    G = _sym(g, d)
    return G * (cap * g.uniform() / np.linalg.norm(G, 2))


def upper(g, d):
    X = g.standard_normal((d, d))
    A = g.standard_normal((d, d))
    return 0.5 * (X + X.T) + 1j * (A.T @ A + 0.1 * np.eye(d))


def spd(g, d):
    A = g.standard_normal((d, d))
    return A.T @ A + 0.1 * np.eye(d)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(params=sorted(available_backends()))
def backend(request):
    return available_backends()[request.param]
