"""Collapse a complex linear form onto at most one coordinate.

Given coefficients alpha_k and points z_k, produce z* with the same form
value sum_k alpha_k z*_k, l1 norm no larger than that of z, and at most
one nonzero coordinate. Coordinates are folded pairwise: the contribution
of the smaller-|alpha| coordinate moves onto the larger one, scaled by
alpha_small / alpha_large whose modulus is at most 1, so the l1 norm
cannot grow while the form value is preserved up to one multiply-add of
rounding per merge. Coordinates with alpha_k = 0 contribute nothing and
are zeroed outright.
"""

from __future__ import annotations

import numpy as np


def collapse(alphas, zs) -> np.ndarray:
    """Return z* with the same linear form value, no larger l1 norm, and
    at most one nonzero coordinate.

    Ties between equal |alpha| keep the lower index, so the result is
    deterministic. Idempotent: collapsing an already collapsed vector
    returns it unchanged.
    """
    a = np.asarray(alphas, dtype=np.complex128).ravel()
    z = np.asarray(zs, dtype=np.complex128).ravel()
    if a.shape != z.shape:
        raise ValueError(f"alphas and zs must have equal length, got {a.size} and {z.size}")
    if not (np.isfinite(a).all() and np.isfinite(z).all()):
        raise ValueError("non-finite entries are not admitted")
    out = z.copy()
    out[a == 0] = 0.0
    active = [k for k in range(out.size) if out[k] != 0]
    if len(active) <= 1:
        return out
    keep = active[0]
    for idx in active[1:]:
        if abs(a[idx]) > abs(a[keep]):
            out[idx] += (a[keep] / a[idx]) * out[keep]
            out[keep] = 0.0
            keep = idx
        else:
            out[keep] += (a[idx] / a[keep]) * out[idx]
            out[idx] = 0.0
    return out
