"""Taylor approximation of the log-permanent on a dominance-certified disk.

For a matrix A with row sums sum_j |a_ij| <= lam < 1, the polynomial
g(z) = per(I + z A) has no zeros in |z| < 1/lam, so f(z) = ln g(z) admits
a continuous branch with f(0) = 0, and the order-m Taylor polynomial of f
at 0 approximates f(1) = ln per(I + A) with certified tail

    |f(1) - T_m(1)| <= n lam^(m+1) / ((m+1)(1 - lam)).

The derivatives of g at 0 are principal-minor sums,

    g^(k)(0) = k! sum_{|I| = k} per A_I,

computed by subset enumeration, and the log-derivatives f^(k)(0) follow by
forward substitution through the triangular convolution that links a
function with its logarithm. The identical scheme covers cubical tensors:
PER(I + z A) also has degree at most n in z, so the same tail bound is
used with the axis-0 slice sums supplying lam.

Cost is quasi-polynomial in n (the order m grows like ln n - ln epsilon),
which is kept honest by explicit work caps instead of silent truncation.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass

import numpy as np

from .core import (
    ApproxConfig,
    InadmissibleInputError,
    NormalizationError,
    SizeCapError,
    as_matrix,
    as_tensor,
    pair,
)
from .dominance import check_dominance_matrix, check_dominance_tensor
from .exact import _ryser_core, _tensor_core
from .summation import ComplexNeumaier, chunked_sum

WORK_CAP = 10**9
BRANCH_STEPS = 64


@dataclass(frozen=True)
class TaylorResult:
    """Derivative data and the evaluated Taylor approximation at z = 1.

    g_derivs[k] and f_derivs[k] are the k-th derivatives at 0 of
    g(z) = per(I + z A) and f = ln g; value is T_m(1) = sum f_k / k!,
    and error_bound certifies |ln per(I + A) - value| on the branch
    continued from f(0) = 0.
    """

    g_derivs: tuple[complex, ...]
    f_derivs: tuple[complex, ...]
    order_m: int
    value: complex
    error_bound: float

    def to_json(self) -> dict:
        return {
            "m": self.order_m,
            "value": pair(self.value),
            "error_bound": self.error_bound,
            "g_derivs": [pair(z) for z in self.g_derivs],
            "f_derivs": [pair(z) for z in self.f_derivs],
        }


@dataclass(frozen=True)
class ZeroScanReport:
    """Modulus of the permanent polynomial over a polar grid."""

    radius: float
    radial: int
    angular: int
    min_modulus: float
    argmin_z: complex
    moduli: np.ndarray

    def to_json(self) -> dict:
        return {
            "radius": self.radius,
            "radial": self.radial,
            "angular": self.angular,
            "min_modulus": self.min_modulus,
            "argmin_z": pair(self.argmin_z),
            "moduli": [[float(v) for v in row] for row in self.moduli],
        }


def taylor_tail_bound(n: int, lam: float, m: int) -> float:
    """Certified bound on |f(1) - T_m(1)| for a degree-n zero-free g."""
    return n * lam ** (m + 1) / ((m + 1) * (1.0 - lam))


def choose_order(n: int, lam: float, epsilon: float) -> int:
    """Minimal Taylor order m whose tail bound is at most epsilon.

    Scans m = 0, 1, 2, ...; the bound tends to 0 for lam < 1, so the scan
    terminates, and m stays small (tens) at any desk scale.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if not 0.0 <= lam < 1.0:
        raise ValueError(f"lam must lie in [0, 1), got {lam}")
    if epsilon <= 0.0:
        raise ValueError("epsilon must be positive")
    m = 0
    while taylor_tail_bound(n, lam, m) > epsilon:
        m += 1
    return m


def _matrix_budget(n: int, m: int) -> int:
    return sum(math.comb(n, k) * k * (1 << k) for k in range(m + 1))


def _tensor_budget(n: int, d: int, m: int) -> int:
    return sum(math.comb(n, k) * math.factorial(k) ** (d - 1) * k for k in range(m + 1))


def _minor_sums_matrix(arr: np.ndarray, m: int, threads: int, work_cap: int) -> list[complex]:
    """c_k = sum over k-subsets I of per A_I, for k = 0..m."""
    n = arr.shape[0]
    budget = _matrix_budget(n, m)
    if budget > work_cap:
        raise SizeCapError(f"matrix subset enumeration needs ~{budget} ops, cap is {work_cap}")
    rows = arr.tolist()

    def per_subset(idx: tuple[int, ...]) -> complex:
        return _ryser_core([[rows[i][j] for j in idx] for i in idx])

    sums = [complex(1.0)]
    for k in range(1, m + 1):
        combos = list(itertools.combinations(range(n), k))
        sums.append(chunked_sum(per_subset, combos, threads))
    return sums


def _minor_sums_tensor(arr: np.ndarray, m: int, threads: int, work_cap: int) -> list[complex]:
    """c_k = sum over k-subsets I of PER A_I, for k = 0..m."""
    d, n = arr.ndim, arr.shape[0]
    budget = _tensor_budget(n, d, m)
    if budget > work_cap:
        raise SizeCapError(f"tensor subset enumeration needs ~{budget} ops, cap is {work_cap}")
    nested = arr.tolist()

    # build the subtensor by nested index selection; small k keeps this cheap
    def extract(node, level: int, idx: tuple[int, ...]):
        if level == d:
            return node
        return [extract(node[i], level + 1, idx) for i in idx]

    def per_subset(idx: tuple[int, ...]) -> complex:
        return _tensor_core(extract(nested, 0, idx), len(idx), d)

    sums = [complex(1.0)]
    for k in range(1, m + 1):
        combos = list(itertools.combinations(range(n), k))
        sums.append(chunked_sum(per_subset, combos, threads))
    return sums


def perm_poly_derivs(a, m: int, threads: int = 1, work_cap: int = WORK_CAP) -> list[complex]:
    """Derivatives g^(k)(0) of g(z) = per(I + z A) for k = 0..m.

    Each is k! times the sum of permanents of the k x k principal
    submatrices; subsets are enumerated in lexicographic order.
    """
    arr = as_matrix(a)
    n = arr.shape[0]
    if m > n:
        raise ValueError(f"order {m} exceeds the polynomial degree {n}")
    sums = _minor_sums_matrix(arr, m, threads, work_cap)
    return [math.factorial(k) * sums[k] for k in range(m + 1)]


def perm_poly_derivs_tensor(a, m: int, threads: int = 1, work_cap: int = WORK_CAP) -> list[complex]:
    """Tensor analogue of perm_poly_derivs, using PER of principal subtensors."""
    arr = as_tensor(a)
    n = arr.shape[0]
    if m > n:
        raise ValueError(f"order {m} exceeds the polynomial degree {n}")
    sums = _minor_sums_tensor(arr, m, threads, work_cap)
    return [math.factorial(k) * sums[k] for k in range(m + 1)]


def log_derivatives(g_derivs) -> list[complex]:
    """Derivatives f^(k)(0) of f = ln g from the derivatives of g.

    Solves the triangular system
        sum_{j=0}^{k-1} C(k-1, j) f^(k-j)(0) g^(j)(0) = g^(k)(0)
    by forward substitution, with exact integer binomial coefficients.
    Requires g_derivs[0] == 1 (so that f(0) = 0).
    """
    g = [complex(v) for v in g_derivs]
    if not g or g[0] != 1:
        raise NormalizationError("g_derivs[0] must equal 1")
    m = len(g) - 1
    f = [complex(0.0)] * (m + 1)
    for k in range(1, m + 1):
        s = g[k]
        for j in range(1, k):
            s -= math.comb(k - 1, j) * f[k - j] * g[j]
        f[k] = s
    return f


def approx_log_permanent(
    a, cfg: ApproxConfig, threads: int = 1, work_cap: int = WORK_CAP
) -> TaylorResult:
    """Approximate ln per(I + A), or ln PER(I + A) for a tensor.

    The returned value approximates the branch continued from
    ln per(I) = 0 along z in [0, 1]. The measured effective lambda must
    not exceed cfg.lam; when it is smaller it replaces cfg.lam in both
    the order selection and the certified bound (tighter at no cost).
    """
    arr = np.asarray(a, dtype=np.complex128)
    if arr.ndim == 2:
        arr = as_matrix(arr)
        report = check_dominance_matrix(arr)
        minor_sums = _minor_sums_matrix
    else:
        arr = as_tensor(arr)
        report = check_dominance_tensor(arr)
        minor_sums = _minor_sums_tensor
    if not report.admissible:
        raise InadmissibleInputError(
            f"input is not admissible (effective lambda {report.effective_lambda:.6g} >= 1)"
        )
    if report.effective_lambda > cfg.lam:
        raise InadmissibleInputError(
            f"measured effective lambda {report.effective_lambda:.6g} exceeds "
            f"configured bound {cfg.lam:.6g}"
        )
    lam = report.effective_lambda
    n = arr.shape[0]
    if cfg.order_override is not None:
        m = cfg.order_override
    else:
        m = choose_order(n, lam, cfg.epsilon)
    # g has degree at most n: derivatives beyond n vanish identically
    m_g = min(m, n)
    sums = minor_sums(arr, m_g, threads, work_cap)
    g = [math.factorial(k) * sums[k] for k in range(m_g + 1)]
    g += [complex(0.0)] * (m - m_g)
    f = log_derivatives(g)
    acc = ComplexNeumaier()
    for k in range(m + 1):
        acc.add(f[k] / math.factorial(k))
    return TaylorResult(
        g_derivs=tuple(g),
        f_derivs=tuple(f),
        order_m=m,
        value=acc.value(),
        error_bound=taylor_tail_bound(n, lam, m),
    )


def exact_log_permanent(a, steps: int = BRANCH_STEPS, product_cap: int = 10**8) -> complex:
    """Branch-tracked exact log-permanent, the test-side reference value.

    Walks z through `steps` uniform increments on [0, 1], evaluating the
    exact permanent of I + z A at each node and accumulating the
    principal-branch log of consecutive ratios. This follows the
    continuous branch anchored at ln per(I) = 0, which a single
    principal-branch log of the endpoint may miss by multiples of 2 pi i.
    """
    arr = np.asarray(a, dtype=np.complex128)
    if arr.ndim == 2:
        arr = as_matrix(arr)
        rows = arr.tolist()
        n = arr.shape[0]

        def value_at(z: complex) -> complex:
            m = [[z * rows[i][j] + (1.0 if i == j else 0.0) for j in range(n)] for i in range(n)]
            return _ryser_core(m)

    else:
        arr = as_tensor(arr)
        d, n = arr.ndim, arr.shape[0]
        if math.factorial(n) ** (d - 1) > product_cap:
            raise SizeCapError("tensor too large for branch tracking")

        def value_at(z: complex) -> complex:
            scaled = z * arr
            idx = tuple(np.arange(n) for _ in range(d))
            scaled[idx] += 1.0
            return _tensor_core(scaled.tolist(), n, d)

    total = complex(0.0)
    prev = complex(1.0)
    for t in range(1, steps + 1):
        cur = value_at(t / steps)
        if cur == 0:
            raise ArithmeticError(f"permanent vanishes at z = {t / steps}")
        total += cmath.log(cur / prev)
        prev = cur
    return total


def zero_scan(
    a,
    radius: float | None = None,
    radial: int = 64,
    angular: int = 64,
    threads: int = 1,
    work_cap: int = WORK_CAP,
) -> ZeroScanReport:
    """Scan |per(I + z A)| over a polar grid of the disk |z| <= radius.

    The polynomial coefficients are the exact principal-minor sums, so each
    grid value is an exact evaluation up to rounding. Default radius is
    0.99 / effective_lambda, just inside the disk that admissibility
    certifies to be zero-free.
    """
    arr = np.asarray(a, dtype=np.complex128)
    if arr.ndim == 2:
        arr = as_matrix(arr)
        report = check_dominance_matrix(arr)
        sums = _minor_sums_matrix(arr, arr.shape[0], threads, work_cap)
    else:
        arr = as_tensor(arr)
        report = check_dominance_tensor(arr)
        sums = _minor_sums_tensor(arr, arr.shape[0], threads, work_cap)
    if radial < 1 or angular < 1:
        raise ValueError("grid resolution must be positive")
    if radius is None:
        lam = report.effective_lambda
        radius = 0.99 / lam if lam > 0 else 1.0
    radii = np.linspace(0.0, radius, radial)
    thetas = np.linspace(0.0, 2.0 * np.pi, angular, endpoint=False)
    z = radii[:, None] * np.exp(1j * thetas)[None, :]
    val = np.full_like(z, sums[-1])
    for c in reversed(sums[:-1]):
        val = val * z + c
    moduli = np.abs(val)
    flat = int(np.argmin(moduli))
    ri, ti = divmod(flat, angular)
    return ZeroScanReport(
        radius=float(radius),
        radial=radial,
        angular=angular,
        min_modulus=float(moduli[ri, ti]),
        argmin_z=complex(z[ri, ti]),
        moduli=moduli,
    )
