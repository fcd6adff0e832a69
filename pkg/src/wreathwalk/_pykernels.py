"""Pure-Python reference kernels.

Same signatures and bit-identical outputs as the compiled ``_ckernels`` module.
"""

import itertools
import math

import numpy as np

from ._rng import COUPON, WALK, bounded, trial_stream

_CHUNK = 4096


def build_right_mul_maps(n, order, mul, atom_colors, atom_perms):
    mul = np.asarray(mul, dtype=np.int64)
    nfact = math.factorial(n)
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(nfact, n)
    colors = np.array(list(itertools.product(range(order), repeat=n)), dtype=np.int64).reshape(-1, n)
    pinv = np.argsort(perms, axis=1)
    weights = order ** np.arange(n - 1, -1, -1, dtype=np.int64)
    fact_w = np.array([math.factorial(n - 1 - j) for j in range(n)], dtype=np.int64)
    out = np.empty((len(atom_colors), len(colors) * nfact), dtype=np.int64)
    for a, (h, eta) in enumerate(zip(np.asarray(atom_colors), np.asarray(atom_perms))):
        # colour j of x*s is x_j * h_{pi^-1(j)}; permutation is pi . eta
        new_perm = perms[:, eta]
        new_rank = (_lehmer_digits(new_perm) * fact_w).sum(axis=1)
        hp = h[pinv]  # (nfact, n)
        new_colors = mul[colors[:, None, :], hp[None, :, :]]
        new_code = (new_colors * weights).sum(axis=2)
        out[a] = (new_code * nfact + new_rank[None, :]).reshape(-1)
    return out


def _lehmer_digits(perms):
    n = perms.shape[1]
    digits = np.zeros_like(perms)
    for i in range(n):
        digits[:, i] = (perms[:, i + 1 :] < perms[:, i : i + 1]).sum(axis=1)
    return digits


def _walk(n, mul, inv, perm, colors, draws, steps, fixed):
    last = n - 1
    d = 0
    for _ in range(steps):
        i = bounded(int(draws[d]), n)
        g = bounded(int(draws[d + 1]), len(mul))
        d += 2
        b = perm[last]
        if i == last:
            colors[b] = mul[colors[b]][g]
            continue
        a = perm[i]
        fixed -= (a == i) + (b == last)
        colors[a] = mul[colors[a]][inv[g]]
        colors[b] = mul[colors[b]][g]
        perm[i], perm[last] = b, a
        fixed += (b == i) + (a == last)
    return fixed


def walk_fixed_points(n, mul, inv, identity, checkpoints, trials, seed, trial_offset=0):
    mul = np.asarray(mul).tolist()
    inv = np.asarray(inv).tolist()
    checkpoints = [int(c) for c in checkpoints]
    out = np.zeros((trials, len(checkpoints)), dtype=np.int64)
    total = checkpoints[-1] if checkpoints else 0
    for t in range(trials):
        draws = trial_stream(seed, WALK, trial_offset + t).random_raw(2 * total).tolist()
        perm = list(range(n))
        colors = [identity] * n
        fixed = n
        step = 0
        for c, k in enumerate(checkpoints):
            fixed = _walk(n, mul, inv, perm, colors, draws[2 * step :], k - step, fixed)
            step = k
            out[t, c] = fixed
    return out


def walk_states(n, mul, inv, identity, k, trials, seed, trial_offset=0):
    mul = np.asarray(mul).tolist()
    inv = np.asarray(inv).tolist()
    perms = np.empty((trials, n), dtype=np.int64)
    colors_out = np.empty((trials, n), dtype=np.int64)
    for t in range(trials):
        draws = trial_stream(seed, WALK, trial_offset + t).random_raw(2 * k).tolist()
        perm = list(range(n))
        colors = [identity] * n
        _walk(n, mul, inv, perm, colors, draws, k, n)
        perms[t] = perm
        colors_out[t] = colors
    return colors_out, perms


class _Draws:
    def __init__(self, bitgen):
        self.bitgen = bitgen
        self.buf = []
        self.pos = 0

    def next(self):
        if self.pos == len(self.buf):
            self.buf = self.bitgen.random_raw(_CHUNK).tolist()
            self.pos = 0
        x = self.buf[self.pos]
        self.pos += 1
        return x


def twisted_coupons(n, trials, seed, trial_offset=0):
    out = np.empty((trials, 3), dtype=np.int64)
    for t in range(trials):
        draws = _Draws(trial_stream(seed, COUPON, trial_offset + t))
        seen = [False] * n
        count = 0
        steps = 0
        last = -1
        while count < n:
            x = bounded(draws.next(), n)
            steps += 1
            if not seen[x]:
                seen[x] = True
                count += 1
                last = x
        extra = 0
        if last != n - 1:
            while True:
                extra += 1
                if bounded(draws.next(), n) == n - 1:
                    break
        out[t] = (steps, extra, steps + extra)
    return out
