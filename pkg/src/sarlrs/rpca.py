"""Low-rank plus sparse decomposition by the inexact augmented Lagrangian method.

Solves  min ||L||_* + eta ||S||_1  s.t.  L + S = D  for real or complex D.
Sparse shrinkage preserves the complex argument of each entry; singular value
thresholding acts on the (real, nonnegative) spectrum.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, SvdFailure

MU_CAP_FACTOR = 1e7          # mu_k capped at MU_CAP_FACTOR * mu_0
NUMERIC_FLOOR = 1e-12        # entries of S below this (times max|D|) count as zero


@dataclass(frozen=True)
class RpcaConfig:
    eta: float | str = "conventional"  # weight of the sparse term, or "conventional"
    mu0: float | None = None           # initial penalty; default 1.2 / ||D||_2
    rho: float = 1.4                   # penalty growth factor
    tol: float = 1e-7                  # relative Frobenius residual
    max_iter: int = 1000

    def __post_init__(self):
        if self.rho <= 1:
            raise ConfigError("rho must exceed 1")
        if self.tol <= 0 or self.max_iter < 1:
            raise ConfigError("bad convergence settings")
        if not isinstance(self.eta, str) and self.eta <= 0:
            raise ConfigError("eta must be positive")

    def resolve_eta(self, shape) -> float:
        if isinstance(self.eta, str):
            if self.eta != "conventional":
                raise ConfigError(f"unknown eta mode '{self.eta}'")
            return 1.0 / np.sqrt(max(shape))
        return float(self.eta)


@dataclass
class Decomposition:
    L: np.ndarray
    S: np.ndarray
    iterations: int
    residual: float          # final ||D - L - S||_F / ||D||_F
    rank: int
    sparse_count: int        # entries of S above the numeric floor
    converged: bool
    window_edges: list = field(default_factory=list)


def soft_threshold(a, eta: float):
    """Magnitude shrinkage that keeps the complex argument.

    For real input this is the usual sign(a) * max(|a| - eta, 0).
    """
    a = np.asarray(a)
    mag = np.abs(a)
    scale = np.maximum(mag - eta, 0.0)
    out = np.where(mag > 0, a, 1.0)  # placeholder phase at exact zeros
    out = out / np.where(mag > 0, mag, 1.0) * scale
    return out if out.ndim else out[()]


def singular_value_threshold(M: np.ndarray, tau: float) -> np.ndarray:
    try:
        U, sig, Vh = np.linalg.svd(M, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise SvdFailure(str(exc)) from exc
    sig = np.maximum(sig - tau, 0.0)
    keep = sig > 0
    return (U[:, keep] * sig[keep]) @ Vh[keep]


def spectral_norm(M: np.ndarray, tol: float = 1e-8, max_iter: int = 500) -> float:
    """Largest singular value by power iteration on M^H M."""
    rng = np.random.default_rng(12345)
    v = rng.standard_normal(M.shape[1])
    v = v / np.linalg.norm(v)
    sigma = 0.0
    for _ in range(max_iter):
        w = M.conj().T @ (M @ v)
        nw = np.linalg.norm(w)
        if nw == 0:
            return 0.0
        v_new = w / nw
        sigma_new = np.sqrt(nw)
        if abs(sigma_new - sigma) <= tol * max(sigma_new, 1.0):
            return float(sigma_new)
        v, sigma = v_new, sigma_new
    return float(sigma)


def decompose(D: np.ndarray, config: RpcaConfig = RpcaConfig()) -> Decomposition:
    D = np.asarray(D)
    if not np.any(D):
        raise ConfigError("input matrix is zero")
    eta = config.resolve_eta(D.shape)
    norm2 = spectral_norm(D)
    norm_f = np.linalg.norm(D)
    mu = config.mu0 if config.mu0 is not None else 1.2 / norm2
    mu_cap = MU_CAP_FACTOR * mu

    # dual ascent seed: Y_0 = D / max(||D||_2, ||D||_inf / eta)
    Y = D / max(norm2, np.max(np.abs(D)) / eta)
    S = np.zeros_like(D)
    L = np.zeros_like(D)
    converged = False
    residual = np.inf
    it = 0
    for it in range(1, config.max_iter + 1):
        L = singular_value_threshold(D - S + Y / mu, 1.0 / mu)
        S = soft_threshold(D - L + Y / mu, eta / mu)
        R = D - L - S
        Y = Y + mu * R
        residual = np.linalg.norm(R) / norm_f
        # require two sweeps: a degenerate first iterate can zero the residual
        # before the thresholded split has settled
        if residual <= config.tol and it >= 2:
            converged = True
            break
        mu = min(config.rho * mu, mu_cap)

    sig = np.linalg.svd(L, compute_uv=False)
    rank = int(np.sum(sig > sig[0] * 1e-9)) if sig.size and sig[0] > 0 else 0
    floor = NUMERIC_FLOOR * np.max(np.abs(D))
    return Decomposition(
        L=L, S=S, iterations=it, residual=float(residual), rank=rank,
        sparse_count=int(np.sum(np.abs(S) > floor)), converged=converged,
    )


def decompose_windowed(D: np.ndarray, windows: int,
                       config: RpcaConfig = RpcaConfig()) -> Decomposition:
    """Split rows into consecutive slow-time blocks and decompose each.

    The conventional eta is recomputed per block (max(n1, n2) changes with
    the block height); an explicit eta is used unchanged.
    """
    D = np.asarray(D)
    if windows < 1 or windows > D.shape[0]:
        raise ConfigError("windows must be in [1, row count]")
    edges = np.linspace(0, D.shape[0], windows + 1).astype(int)
    L = np.zeros_like(D)
    S = np.zeros_like(D)
    iters = 0
    residual = 0.0
    rank = 0
    nnz = 0
    converged = True
    for a, b in zip(edges[:-1], edges[1:]):
        try:
            part = decompose(D[a:b], config)
        except ConfigError:
            continue  # all-zero block separates trivially
        L[a:b] = part.L
        S[a:b] = part.S
        iters = max(iters, part.iterations)
        residual = max(residual, part.residual)
        rank += part.rank
        nnz += part.sparse_count
        converged = converged and part.converged
    return Decomposition(
        L=L, S=S, iterations=iters, residual=residual, rank=rank,
        sparse_count=nnz, converged=converged,
        window_edges=list(edges),
    )
