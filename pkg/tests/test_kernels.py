import numpy as np
import pytest

from wreathwalk import kernels
from wreathwalk.groups import WreathIndex, make_cyclic, make_symmetric
from wreathwalk.walk import build_warp_measure

BACKENDS = kernels.backends()
needs_both = pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled backend not built")


def test_backend_selected():
    assert kernels.BACKEND in BACKENDS


@needs_both
@pytest.mark.parametrize("g,n", [(make_cyclic(2), 4), (make_symmetric(3), 3), (make_cyclic(1), 5)])
def test_right_mul_maps_agree(g, n):
    idx = WreathIndex(n, g)
    m = build_warp_measure(n, g)
    colors = np.array([x.colors for x in m.elements], dtype=np.int64)
    perms = np.array([[p - 1 for p in x.perm] for x in m.elements], dtype=np.int64)
    outs = [b.build_right_mul_maps(n, g.order, g.mul, colors, perms) for b in BACKENDS.values()]
    assert np.array_equal(*outs)
    assert all(sorted(row) == list(range(idx.size)) for row in outs[0])


@needs_both
@pytest.mark.parametrize("g", [make_cyclic(1), make_cyclic(2), make_symmetric(3)], ids=lambda g: g.name)
def test_walk_kernels_agree(g):
    args = (7, g.mul, g.inv, g.identity)
    outs = [b.walk_fixed_points(*args, [0, 3, 10, 40], 200, 11, 5) for b in BACKENDS.values()]
    assert np.array_equal(*outs)
    states = [b.walk_states(*args, 25, 100, 11, 5) for b in BACKENDS.values()]
    assert np.array_equal(states[0][0], states[1][0])
    assert np.array_equal(states[0][1], states[1][1])


@needs_both
def test_coupon_kernels_agree():
    outs = [b.twisted_coupons(13, 500, 3, 17) for b in BACKENDS.values()]
    assert np.array_equal(*outs)


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_trial_offset_is_a_slice(name):
    b = BACKENDS[name]
    g = make_cyclic(3)
    full = b.walk_fixed_points(6, g.mul, g.inv, 0, [5, 9], 30, 2, 0)
    part = b.walk_fixed_points(6, g.mul, g.inv, 0, [5, 9], 10, 2, 20)
    assert np.array_equal(full[20:], part)
    c_full = b.twisted_coupons(9, 30, 4, 0)
    assert np.array_equal(c_full[10:20], b.twisted_coupons(9, 10, 4, 10))


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_fixed_points_match_states(name):
    b = BACKENDS[name]
    g = make_cyclic(2)
    f = b.walk_fixed_points(8, g.mul, g.inv, 0, [30], 50, 9)[:, 0]
    _, perms = b.walk_states(8, g.mul, g.inv, 0, 30, 50, 9)
    assert np.array_equal(f, (perms == np.arange(8)).sum(axis=1))


def test_env_forces_python_backend():
    import os
    import subprocess
    import sys

    env = dict(os.environ, WREATH_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from wreathwalk import kernels, BACKEND; print(kernels.BACKEND, BACKEND)"],
        capture_output=True, text=True, env=env, check=True,
    )
    assert out.stdout.split() == ["python", "python"]
