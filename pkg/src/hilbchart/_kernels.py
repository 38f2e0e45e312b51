"""Brute-force F_p kernels for point enumeration.

Assignments are indexed ``0 .. p^nv - 1`` with variable 0 as the most
significant digit, so increasing index is lexicographic order.  Each kernel
returns a boolean mask over ``[start, stop)``.

Two interchangeable backends: numba-compiled loops and chunked numpy.  Set
``HILBCHART_DISABLE_NUMBA=1`` (or run without numba installed) to force the
numpy one.  Both produce identical masks.
"""

from __future__ import annotations

import os

import numpy as np

try:  # pragma: no cover - exercised implicitly by whichever backend is present
    import numba
except ImportError:  # pragma: no cover
    numba = None

CHUNK = 1 << 16


def numba_enabled() -> bool:
    return numba is not None and os.environ.get("HILBCHART_DISABLE_NUMBA", "") not in ("1", "true", "yes")


def _digits(start: int, stop: int, p: int, nv: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((stop - start, nv), dtype=np.int64)
    for v in range(nv - 1, -1, -1):
        out[:, v] = idx % p
        idx //= p
    return out


def power_table(p: int, max_exp: int) -> np.ndarray:
    tab = np.ones((p, max_exp + 1), dtype=np.int64)
    for e in range(1, max_exp + 1):
        tab[:, e] = tab[:, e - 1] * np.arange(p) % p
    return tab


# --------------------------------------------------------------------------
# numpy backend


def symbolic_mask_numpy(p, nv, start, stop, exps, coefs, offsets, powtab):
    """Assignments where every compiled polynomial vanishes."""
    mask = np.ones(stop - start, dtype=np.bool_)
    for lo in range(start, stop, CHUNK):
        hi = min(lo + CHUNK, stop)
        dig = _digits(lo, hi, p, nv)
        ok = np.ones(hi - lo, dtype=np.bool_)
        for q in range(len(offsets) - 1):
            acc = np.zeros(hi - lo, dtype=np.int64)
            for t in range(offsets[q], offsets[q + 1]):
                val = np.full(hi - lo, coefs[t], dtype=np.int64)
                for v in np.nonzero(exps[t])[0]:
                    val = val * powtab[dig[:, v], exps[t, v]] % p
                acc = (acc + val) % p
            ok &= acc == 0
        mask[lo - start:hi - start] = ok
    return mask


def _apply_poly_numpy(p, mats, exps, coefs, lo, hi, vec):
    """``f(M) vec`` batched; monomial ``M_1^a_1 ... M_m^a_m`` applied right to left."""
    acc = np.zeros_like(vec)
    m = mats.shape[1]
    for t in range(lo, hi):
        w = vec.copy()
        for s in range(m - 1, -1, -1):
            for _ in range(exps[t, s]):
                w = np.einsum("cij,cj->ci", mats[:, s], w) % p
        acc = (acc + coefs[t] * w) % p
    return acc


def semantic_mask_numpy(p, m, n, start, stop, rel_exps, rel_coefs, rel_offsets, beta_exps, beta_coefs, beta_offsets):
    """Assignments whose matrices commute, kill every relation, and satisfy ``f_k(M) e_1 = e_k``."""
    nv = m * n * n
    mask = np.ones(stop - start, dtype=np.bool_)
    eye = np.eye(n, dtype=np.int64)
    for lo in range(start, stop, CHUNK):
        hi = min(lo + CHUNK, stop)
        c = hi - lo
        mats = _digits(lo, hi, p, nv).reshape(c, m, n, n)
        ok = np.ones(c, dtype=np.bool_)
        for s in range(m):
            for t in range(s + 1, m):
                ab = np.matmul(mats[:, s], mats[:, t]) % p
                ba = np.matmul(mats[:, t], mats[:, s]) % p
                ok &= np.all(ab == ba, axis=(1, 2))
        for q in range(len(rel_offsets) - 1):
            for j in range(n):
                col = np.broadcast_to(eye[j], (c, n)).copy()
                r = _apply_poly_numpy(p, mats, rel_exps, rel_coefs, rel_offsets[q], rel_offsets[q + 1], col)
                ok &= np.all(r == 0, axis=1)
        e1 = np.broadcast_to(eye[0], (c, n)).copy()
        for k in range(len(beta_offsets) - 1):
            r = _apply_poly_numpy(p, mats, beta_exps, beta_coefs, beta_offsets[k], beta_offsets[k + 1], e1)
            ok &= np.all(r == eye[k], axis=1)
        mask[lo - start:hi - start] = ok
    return mask


# --------------------------------------------------------------------------
# numba backend

if numba is not None:

    @numba.njit(cache=True)
    def _symbolic_nb(p, nv, start, stop, exps, coefs, offsets, powtab):  # pragma: no cover - compiled
        out = np.zeros(stop - start, dtype=np.bool_)
        dig = np.zeros(nv, dtype=np.int64)
        nq = offsets.shape[0] - 1
        for k in range(start, stop):
            idx = k
            for v in range(nv - 1, -1, -1):
                dig[v] = idx % p
                idx //= p
            good = True
            for q in range(nq):
                acc = 0
                for t in range(offsets[q], offsets[q + 1]):
                    val = coefs[t]
                    for v in range(nv):
                        e = exps[t, v]
                        if e:
                            val = val * powtab[dig[v], e] % p
                    acc = (acc + val) % p
                if acc != 0:
                    good = False
                    break
            out[k - start] = good
        return out

    @numba.njit(cache=True)
    def _apply_poly_nb(p, mats, exps, coefs, lo, hi, vec, acc, w, tmp):  # pragma: no cover - compiled
        m = mats.shape[0]
        n = mats.shape[1]
        for i in range(n):
            acc[i] = 0
        for t in range(lo, hi):
            for i in range(n):
                w[i] = vec[i]
            for s in range(m - 1, -1, -1):
                for _ in range(exps[t, s]):
                    for i in range(n):
                        x = 0
                        for j in range(n):
                            x += mats[s, i, j] * w[j]
                        tmp[i] = x % p
                    for i in range(n):
                        w[i] = tmp[i]
            for i in range(n):
                acc[i] = (acc[i] + coefs[t] * w[i]) % p

    @numba.njit(cache=True)
    def _semantic_nb(p, m, n, start, stop, rel_exps, rel_coefs, rel_offsets, beta_exps, beta_coefs, beta_offsets):  # pragma: no cover - compiled
        nv = m * n * n
        out = np.zeros(stop - start, dtype=np.bool_)
        mats = np.zeros((m, n, n), dtype=np.int64)
        vec = np.zeros(n, dtype=np.int64)
        acc = np.zeros(n, dtype=np.int64)
        w = np.zeros(n, dtype=np.int64)
        tmp = np.zeros(n, dtype=np.int64)
        for k in range(start, stop):
            idx = k
            for v in range(nv - 1, -1, -1):
                s = v // (n * n)
                r = v % (n * n)
                mats[s, r // n, r % n] = idx % p
                idx //= p
            good = True
            for s in range(m):
                for t in range(s + 1, m):
                    for i in range(n):
                        for j in range(n):
                            x = 0
                            y = 0
                            for l in range(n):
                                x += mats[s, i, l] * mats[t, l, j]
                                y += mats[t, i, l] * mats[s, l, j]
                            if (x - y) % p != 0:
                                good = False
            if good:
                for q in range(rel_offsets.shape[0] - 1):
                    for j in range(n):
                        for i in range(n):
                            vec[i] = 1 if i == j else 0
                        _apply_poly_nb(p, mats, rel_exps, rel_coefs, rel_offsets[q], rel_offsets[q + 1], vec, acc, w, tmp)
                        for i in range(n):
                            if acc[i] != 0:
                                good = False
            if good:
                for i in range(n):
                    vec[i] = 1 if i == 0 else 0
                for kk in range(beta_offsets.shape[0] - 1):
                    _apply_poly_nb(p, mats, beta_exps, beta_coefs, beta_offsets[kk], beta_offsets[kk + 1], vec, acc, w, tmp)
                    for i in range(n):
                        if acc[i] != (1 if i == kk else 0):
                            good = False
            out[k - start] = good
        return out

    def symbolic_mask_numba(p, nv, start, stop, exps, coefs, offsets, powtab):
        return _symbolic_nb(p, nv, start, stop, exps, coefs, offsets, powtab)

    def semantic_mask_numba(p, m, n, start, stop, rel_exps, rel_coefs, rel_offsets, beta_exps, beta_coefs, beta_offsets):
        return _semantic_nb(p, m, n, start, stop, rel_exps, rel_coefs, rel_offsets, beta_exps, beta_coefs, beta_offsets)

else:  # pragma: no cover
    symbolic_mask_numba = None
    semantic_mask_numba = None


BACKENDS = {
    "numpy": (symbolic_mask_numpy, semantic_mask_numpy),
}
if numba is not None:
    BACKENDS["numba"] = (symbolic_mask_numba, semantic_mask_numba)


def resolve_backend(name: str | None = None) -> str:
    if name is None:
        return "numba" if numba_enabled() else "numpy"
    if name not in BACKENDS:
        raise ValueError(f"unknown backend {name!r}; available: {', '.join(sorted(BACKENDS))}")
    return name
