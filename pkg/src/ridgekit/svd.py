"""Singular value decomposition by cyclic one-sided Jacobi rotations.

The working matrix is orthogonalized column against column: each sweep
visits every column pair once, following a round-robin schedule whose
rounds consist of disjoint pairs so the rotations of a round can be
applied with vectorized numpy updates. Convergence is declared after a
full sweep in which every off-diagonal Gram entry already cleared its
threshold (``GRAM_TOLERANCE`` times the input Frobenius norm, and
``PAIR_TOLERANCE`` relative to the column norms); running out of sweeps
is a hard error because downstream singular-value scaling would
silently produce garbage otherwise.
"""

from dataclasses import dataclass

import numpy as np

from .image import as_plane

GRAM_TOLERANCE = 1e-12   # absolute, times the Frobenius norm of the input
PAIR_TOLERANCE = 1e-12   # relative, per column pair
MAX_SWEEPS = 60


class SvdConvergenceError(RuntimeError):
    """Jacobi sweeps failed to orthogonalize the working columns."""


@dataclass(frozen=True)
class SvdFactors:
    """Factors A = u @ diag(sigma) @ v.T with orthonormal u, v columns."""

    u: np.ndarray       # (m, r)
    sigma: np.ndarray   # (r,), non-negative, non-increasing
    v: np.ndarray       # (n, r)


def _pair_rounds(n):
    # Round-robin tournament schedule: n-1 rounds of disjoint pairs that
    # together cover every unordered column pair exactly once per sweep.
    players = list(range(n)) + ([n] if n % 2 else [])
    m = len(players)
    order = players[:]
    rounds = []
    for _ in range(max(m - 1, 0)):
        ii, jj = [], []
        for k in range(m // 2):
            a, b = order[k], order[m - 1 - k]
            if a < n and b < n:
                ii.append(min(a, b))
                jj.append(max(a, b))
        if ii:
            rounds.append((np.array(ii), np.array(jj)))
        order = [order[0], order[-1]] + order[1:-1]
    return rounds


def _orthogonalize(work, v, tol, fro):
    n = work.shape[1]
    rounds = _pair_rounds(n)
    eps = np.finfo(np.float64).eps
    dead_sq = (eps * fro) ** 2   # columns this small are rank-noise
    for _ in range(MAX_SWEEPS):
        rotated = False
        for ii, jj in rounds:
            col_i = work[:, ii]
            col_j = work[:, jj]
            gram = np.einsum("ij,ij->j", col_i, col_j)
            alpha = np.einsum("ij,ij->j", col_i, col_i)
            beta = np.einsum("ij,ij->j", col_j, col_j)
            # a pair counts as orthogonal only when it clears both the
            # absolute and the pair-relative threshold; the rounding-noise
            # floor keeps huge-norm inputs from demanding the impossible,
            # and pairs touching a numerically dead column face only the
            # absolute threshold (their direction is discarded later)
            scale = np.sqrt(alpha * beta)
            limit = np.maximum(np.minimum(tol, PAIR_TOLERANCE * scale),
                               8.0 * eps * scale)
            limit = np.where((alpha <= dead_sq) | (beta <= dead_sq), tol, limit)
            sel = np.abs(gram) > limit
            if not sel.any():
                continue
            rotated = True
            a_i = col_i[:, sel]
            a_j = col_j[:, sel]
            g = gram[sel]
            tau = (beta[sel] - alpha[sel]) / (2.0 * g)
            # tau == 0 means equal norms: the quadratic degenerates to t = 1;
            # hypot keeps huge tau from overflowing
            t = np.where(tau != 0.0,
                         np.sign(tau) / (np.abs(tau) + np.hypot(1.0, tau)),
                         1.0)
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = c * t
            isel = ii[sel]
            jsel = jj[sel]
            work[:, isel] = c * a_i - s * a_j
            work[:, jsel] = s * a_i + c * a_j
            v_i = v[:, isel]
            v_j = v[:, jsel]
            v[:, isel] = c * v_i - s * v_j
            v[:, jsel] = s * v_i + c * v_j
        if not rotated:
            return
    raise SvdConvergenceError(
        f"one-sided Jacobi did not converge in {MAX_SWEEPS} sweeps")


def _complete_basis(u, filled, k):
    # Replace column k with a unit vector orthogonal to the filled columns;
    # pick the standard basis vector with the largest residual so the
    # completion is deterministic and never degenerate.
    m = u.shape[0]
    row_sq = np.einsum("ij,ij->i", u[:, :filled], u[:, :filled]) if filled else np.zeros(m)
    candidate = int(np.argmax(1.0 - row_sq))
    vec = np.zeros(m)
    vec[candidate] = 1.0
    for _ in range(2):
        if filled:
            vec -= u[:, :filled] @ (u[:, :filled].T @ vec)
    norm = np.sqrt(vec @ vec)
    u[:, k] = vec / norm


def svd(matrix):
    """Factor a real matrix as ``u @ diag(sigma) @ v.T``.

    Singular values come back sorted in non-increasing order; each
    singular vector pair is flipped so the largest-magnitude entry of
    the ``u`` column is positive, making the output deterministic.
    """
    a = as_plane(matrix)
    transposed = a.shape[0] < a.shape[1]
    if transposed:
        a = a.T
    m, n = a.shape

    work = a.copy()
    v = np.eye(n)
    fro = np.sqrt(np.einsum("ij,ij->", a, a))
    _orthogonalize(work, v, GRAM_TOLERANCE * fro, fro)

    norms = np.sqrt(np.einsum("ij,ij->j", work, work))
    order = np.argsort(-norms, kind="stable")
    sigma = norms[order]
    v = v[:, order]

    u = np.empty((m, n))
    zero_tol = max(m, n) * np.finfo(np.float64).eps * (sigma[0] if sigma.size else 0.0)
    for k in range(n):
        if sigma[k] > zero_tol:
            u[:, k] = work[:, order[k]] / sigma[k]
        else:
            sigma[k] = 0.0
            _complete_basis(u, k, k)

    # Deterministic sign convention.
    for k in range(n):
        pivot = int(np.argmax(np.abs(u[:, k])))
        if u[pivot, k] < 0:
            u[:, k] = -u[:, k]
            v[:, k] = -v[:, k]

    if transposed:
        u, v = v, u
    return SvdFactors(u=u, sigma=sigma, v=v)


def max_singular_value(matrix):
    """Largest singular value of a matrix."""
    return float(svd(matrix).sigma[0])


def reconstruct(factors, sigma_override):
    """Rebuild ``u @ diag(sigma_override) @ v.T`` with substituted values."""
    sigma = np.asarray(sigma_override, dtype=np.float64)
    if sigma.shape != factors.sigma.shape:
        raise ValueError(
            f"expected {factors.sigma.shape[0]} singular values, got {sigma.shape}")
    if not np.isfinite(sigma).all() or (sigma < 0).any():
        raise ValueError("singular values must be finite and non-negative")
    return (factors.u * sigma) @ factors.v.T
