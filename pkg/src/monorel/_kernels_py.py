"""Pure numpy implementations of the hot kernels (fallback backend)."""

import itertools

import numpy as np


def range_quadratic(C, Qpinv, Nt, Z, atol):
    """Evaluate ``1/4 b^T Q^+ b`` with ``b = C z`` for each row z of Z.

    Rows whose ``b`` leaves the range of Q, i.e. ``||Nt b|| > atol * max(1, ||z||)``,
    evaluate to +inf. Returns ``(values, residuals)``.
    """
    Z = np.atleast_2d(np.asarray(Z, dtype=float))
    B = Z @ C.T
    if Nt.shape[0]:
        res = np.linalg.norm(B @ Nt.T, axis=1)
    else:
        res = np.zeros(Z.shape[0])
    vals = 0.25 * np.einsum("ij,jk,ik->i", B, Qpinv, B)
    bound = atol * np.maximum(1.0, np.linalg.norm(Z, axis=1))
    vals = np.where(res > bound, np.inf, vals)
    return vals, res


def grid_sup(U, V, x, xs, center, radius, npts):
    """Brute-force max of ``<x, Vc> + <Uc, x*> - <Uc, Vc>`` over a cubic grid of c.

    The grid has ``npts`` points per axis on ``[center - radius, center + radius]``.
    Returns ``(best value, best coefficient vector)``.
    """
    k = U.shape[1]
    center = np.asarray(center, dtype=float)
    if k == 0:
        return 0.0, np.zeros(0)
    axis = np.linspace(-radius, radius, npts)
    if k == 1:
        C = (center[0] + axis)[None, :]
    elif k == 2:
        a, b = np.meshgrid(center[0] + axis, center[1] + axis, indexing="ij")
        C = np.vstack([a.ravel(), b.ravel()])
    else:
        C = np.array(list(itertools.product(*[c + axis for c in center]))).T
    Y = U @ C
    Ys = V @ C
    vals = x @ Ys + xs @ Y - np.einsum("ij,ij->j", Y, Ys)
    j = int(np.argmax(vals))
    return float(vals[j]), C[:, j].copy()
