"""Numpy implementations of the hot loops, used when the extension is absent.

Results are bit-identical to ``_kernels`` for the random streams; the
Fourier sums agree to rounding.
"""
import numpy as np

GAMMA = np.uint64(0x9E3779B97F4A7C15)
MUL1 = np.uint64(0xBF58476D1CE4E5B9)
MUL2 = np.uint64(0x94D049BB133111EB)
TWO_M53 = 1.0 / 9007199254740992.0


def _mix(z):
    z = (z ^ (z >> np.uint64(30))) * MUL1
    z = (z ^ (z >> np.uint64(27))) * MUL2
    return z ^ (z >> np.uint64(31))


def splitmix_uniform(key, start, count):
    counters = np.arange(count, dtype=np.uint64) + np.uint64(start) + np.uint64(1)
    with np.errstate(over="ignore"):
        z = _mix(np.uint64(key) + counters * GAMMA)
    return (z >> np.uint64(11)).astype(np.float64) * TWO_M53


def polar_pairs(key, n_pairs):
    us, vs, ss = [], [], []
    got = 0
    c = 0
    while got < n_pairs:
        # acceptance rate is pi/4; overdraw a little to usually finish in one batch
        batch = int((n_pairs - got) * 1.3) + 64
        uv = splitmix_uniform(key, 2 * c, 2 * batch)
        u = 2.0 * uv[0::2] - 1.0
        v = 2.0 * uv[1::2] - 1.0
        s = u * u + v * v
        ok = (s > 0.0) & (s < 1.0)
        us.append(u[ok])
        vs.append(v[ok])
        ss.append(s[ok])
        got += int(ok.sum())
        c += batch
    return (
        np.concatenate(us)[:n_pairs],
        np.concatenate(vs)[:n_pairs],
        np.concatenate(ss)[:n_pairs],
    )


def dft_direct(x, nmax):
    x = np.ascontiguousarray(x, dtype=np.float64)
    m = x.shape[0]
    ctab = np.cos(2.0 * np.pi * np.arange(m) / m)
    stab = np.sin(2.0 * np.pi * np.arange(m) / m)
    k = np.arange(m)
    csum = np.empty(nmax + 1)
    ssum = np.empty(nmax + 1)
    for n in range(nmax + 1):
        idx = (n * k) % m
        csum[n] = x @ ctab[idx]
        ssum[n] = x @ stab[idx]
    return csum, ssum
