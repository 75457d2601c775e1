import os
import random
import subprocess
import sys
from fractions import Fraction as F

import numpy as np
import pytest

from exotic_metrics import kernels
from exotic_metrics.cobweb import CobwebSpace, Vortex, chain_labels_local, cobweb_distance

try:
    kernels.backend("cython")
    BACKENDS = ["cython", "python"]
except ImportError:
    BACKENDS = ["python"]


def points(n, eps, seed=0, grid=2**8):
    space = CobwebSpace(tuple(range(7)), eps, grid=grid)
    rng = random.Random(seed)
    return [space.sample(rng) for _ in range(n)]


@pytest.mark.parametrize("name", BACKENDS)
@pytest.mark.parametrize("eps", [F(1), F(3, 2), F(2)])
def test_pairwise_matches_fractions(name, eps):
    pts = points(80, eps)
    enc = kernels.encode(pts, eps)
    mat = kernels.pairwise(enc, kernels.backend(name))
    for i, p in enumerate(pts):
        for j, q in enumerate(pts):
            assert F(int(mat[i, j]), enc.scale) == cobweb_distance(p, q, eps)


@pytest.mark.parametrize("name", BACKENDS)
def test_batch_matches_fractions(name):
    eps = F(2)
    pts = points(60, eps, seed=1)
    enc = kernels.encode(pts, eps)
    rng = random.Random(2)
    i = [rng.randrange(60) for _ in range(200)]
    j = [rng.randrange(60) for _ in range(200)]
    out = kernels.batch(enc, i, j, kernels.backend(name))
    for k in range(200):
        assert F(int(out[k]), enc.scale) == cobweb_distance(pts[i[k]], pts[j[k]], eps)


@pytest.mark.parametrize("name", BACKENDS)
@pytest.mark.parametrize("thresh", [F(1, 16), F(1, 2), F(1), F(5, 2)])
def test_chain_labels_match_local_and_pairwise(name, thresh):
    eps = F(2)
    pts = points(300, eps, seed=3)
    labels = kernels.chain_labels(kernels.encode(pts, eps), thresh, kernels.backend(name))
    if thresh < eps / 2:
        assert list(labels) == chain_labels_local(pts, eps, thresh)
    mat = kernels.pairwise(kernels.encode(pts, eps))
    lim = kernels.encode(pts, eps).to_units(thresh)
    parent = list(range(len(pts)))

    def find(a):
        while parent[a] != a:
            a = parent[a]
        return a

    for a, b in zip(*np.nonzero(mat <= lim)):
        ra, rb = find(a), find(b)
        parent[max(ra, rb)] = min(ra, rb)
    assert list(labels) == [find(a) for a in range(len(pts))]


def test_backends_agree():
    if len(BACKENDS) < 2:
        pytest.skip("compiled kernels not built")
    eps = F(3, 2)
    enc = kernels.encode(points(200, eps, seed=4), eps)
    c, p = kernels.backend("cython"), kernels.backend("python")
    assert np.array_equal(kernels.pairwise(enc, c), kernels.pairwise(enc, p))
    assert np.array_equal(kernels.chain_labels(enc, F(3, 4), c), kernels.chain_labels(enc, F(3, 4), p))


def test_threshold_between_grid_values_rounds_down():
    eps = F(2)
    space = CobwebSpace((0, 1), eps)
    pts = [Vortex(0), space.validate((0, 1, F(1, 3)))]
    enc = kernels.encode(pts, eps)
    assert list(kernels.chain_labels(enc, F(1, 3), kernels.backend())) == [0, 0]
    assert list(kernels.chain_labels(enc, F(1, 3) - F(1, 10**6), kernels.backend())) == [0, 1]


def test_encode_refuses_overflowing_scales():
    eps = F(2)
    space = CobwebSpace((0, 1), eps)
    primes = [1_000_003, 1_000_033, 1_000_037, 1_000_039]
    pts = [space.validate((0, 1, F(1, p))) for p in primes]
    assert kernels.encode(pts, eps) is None


def test_env_var_forces_fallback():
    env = dict(os.environ, EXOTIC_METRICS_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from exotic_metrics import kernels; print(kernels.BACKEND)"],
                         capture_output=True, text=True, env=env, check=True)
    assert out.stdout.strip() == "python"


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.backend("fortran")


def test_reports_identical_under_both_backends():
    argv = [sys.executable, "-m", "exotic_metrics.cli", "audit", "--space", "cobweb", "--audit", "chain",
            "--set", "eps_chain=3/2", "--set", "n=400"]
    outputs = []
    for pure in ("", "1"):
        env = dict(os.environ, EXOTIC_METRICS_PURE_PYTHON=pure)
        outputs.append(subprocess.run(argv, capture_output=True, text=True, env=env, check=True).stdout)
    assert outputs[0] == outputs[1] and '"method": "kernel"' in outputs[0]
