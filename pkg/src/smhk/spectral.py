"""Weight-matrix assembly, symmetry blocks, and spectrum utilities.

The network's automorphism group block-diagonalizes any orbit-constant
weight matrix into four kinds of small blocks. Block b1 is the
(m+1) x (m+1) tridiagonal quotient of a single branch line with a
sqrt(L) coupling to the center; b2 and b3 shift its corner entry by the
core coupling, and b4 drops the first row and column. Their spectra,
repeated with the right multiplicities, reproduce the spectrum of the
full matrix, which turns every SLEM computation on a desk-size network
into a handful of tiny eigenproblems.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .topology import NodeId, SmhkParams, build_edges, node_count, node_index

__all__ = [
    "BlockSet",
    "SpectralResult",
    "ChainCheck",
    "InterlacingReport",
    "assemble_full",
    "stratify",
    "eig_symmetric",
    "slem_full",
    "slem_blocks",
    "block_spectrum",
    "check_interlacing",
]

PERRON_GAP_TOL = 1e-10


def _weight_array(weights, m: int) -> np.ndarray:
    """Coerce an OrbitWeights or plain sequence to a validated vector."""
    values = np.asarray(getattr(weights, "values", weights), dtype=float)
    if values.shape != (m + 1,):
        raise ValueError(
            f"expected {m + 1} orbit weights, got shape {values.shape}"
        )
    if not np.all(np.isfinite(values)):
        raise ValueError("orbit weights must be finite")
    return values


@dataclass(frozen=True)
class BlockSet:
    """Stratified diagonal blocks with their spectral multiplicities.

    multiplicities orders as (b1, b2, b3, b4) = (1, n(k-1), n-1, nk(L-1)).
    The counts follow from the character sectors of the core coupling:
    on a (mu, rho) Fourier sector of the set/star indices the coupling
    eigenvalue is w0 * (n*[mu=0] - 1) * (k*[rho=0]), so every rho != 0
    sector lands on the b2 corner and only (mu != 0, rho = 0) on b3.
    They are confirmed by the spectrum-union tests together with the
    dimension identity (m+1)*kn + m*nk(L-1) = nk(mL+1).
    """

    b1: np.ndarray
    b2: np.ndarray
    b3: np.ndarray
    b4: np.ndarray
    multiplicities: tuple[int, int, int, int]


@dataclass(frozen=True)
class SpectralResult:
    """Sorted spectrum summary of a weight matrix.

    slem = max(lambda_2, -lambda_min) is the second largest eigenvalue
    modulus; perron_simple records whether the leading eigenvalue is
    separated from lambda_2 by more than 1e-10, the convergence
    requirement of the averaging iteration.
    """

    eigenvalues: np.ndarray
    slem: float
    lambda2: float
    lambda_min: float
    perron_simple: bool


def assemble_full(params: SmhkParams, weights) -> np.ndarray:
    """Dense symmetric weight matrix in node_index order.

    Off-diagonal entries carry the orbit weights; diagonal entries are
    1 - k(n-1)w0 - L*w1 on centers, 1 - w_q - w_{q+1} on interior path
    nodes and 1 - w_m on leaves, so every row sums to one. The returned
    array is read-only and safe to share.
    """
    w = _weight_array(weights, params.m)
    n, k, m, L = params.n, params.k, params.m, params.L
    total = node_count(params)
    full = np.zeros((total, total))
    for edge in build_edges(params):
        a = node_index(params, edge.u)
        b = node_index(params, edge.v)
        full[a, b] = full[b, a] = w[edge.orbit]
    center_diag = 1.0 - k * (n - 1) * w[0] - L * w[1]
    for i in range(1, n + 1):
        for j in range(1, k + 1):
            full[(c := node_index(params, NodeId(i, j, 0, 0))), c] = center_diag
            for p in range(1, L + 1):
                for q in range(1, m + 1):
                    d = node_index(params, NodeId(i, j, p, q))
                    full[d, d] = 1.0 - w[q] if q == m else 1.0 - w[q] - w[q + 1]
    full.setflags(write=False)
    return full


def stratify(params: SmhkParams, weights) -> BlockSet:
    """Symmetry-adapted diagonal blocks of the weight matrix.

    b1 is tridiagonal with diagonal (1 - L*w1, 1 - w1 - w2, ...,
    1 - w_{m-1} - w_m, 1 - w_m) and off-diagonal (sqrt(L)*w1, w2, ...,
    w_m). b2 = b1 - k(n-1)*w0 * e1 e1^T, b3 = b1 - k*n*w0 * e1 e1^T,
    and b4 is b1 without its first row and column.
    """
    w = _weight_array(weights, params.m)
    n, k, m, L = params.n, params.k, params.m, params.L
    diag = np.empty(m + 1)
    diag[0] = 1.0 - L * w[1]
    for q in range(1, m):
        diag[q] = 1.0 - w[q] - w[q + 1]
    diag[m] = 1.0 - w[m]
    off = np.empty(m)
    off[0] = math.sqrt(L) * w[1]
    for q in range(2, m + 1):
        off[q - 1] = w[q]
    b1 = np.diag(diag) + np.diag(off, 1) + np.diag(off, -1)
    b2 = b1.copy()
    b2[0, 0] -= k * (n - 1) * w[0]
    b3 = b1.copy()
    b3[0, 0] -= k * n * w[0]
    b4 = b1[1:, 1:].copy()
    for block in (b1, b2, b3, b4):
        block.setflags(write=False)
    return BlockSet(
        b1=b1,
        b2=b2,
        b3=b3,
        b4=b4,
        multiplicities=(1, n * (k - 1), n - 1, n * k * (L - 1)),
    )


def eig_symmetric(matrix, *, symmetry_tol: float = 1e-12):
    """Eigendecomposition of a symmetric matrix, eigenvalues descending.

    Returns (eigenvalues, eigenvectors) with orthonormal eigenvector
    columns matching the eigenvalue order, so matrix = Q diag(vals) Q^T.
    Rejects non-square input and asymmetry beyond symmetry_tol.
    """
    a = np.asarray(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"matrix must be square, got shape {a.shape}")
    if a.size and float(np.max(np.abs(a - a.T))) > symmetry_tol:
        raise ValueError("matrix is not symmetric")
    vals, vecs = np.linalg.eigh(a)
    return vals[::-1].copy(), vecs[:, ::-1].copy()


def slem_full(matrix) -> SpectralResult:
    """SLEM of a weight matrix from its dense spectrum."""
    vals, _ = eig_symmetric(matrix)
    if vals.size < 2:
        raise ValueError("matrix must be at least 2 x 2")
    lam2 = float(vals[1])
    lam_min = float(vals[-1])
    vals.setflags(write=False)
    return SpectralResult(
        eigenvalues=vals,
        slem=max(lam2, -lam_min),
        lambda2=lam2,
        lambda_min=lam_min,
        perron_simple=bool(float(vals[0]) - lam2 > PERRON_GAP_TOL),
    )


def block_spectrum(blocks: BlockSet) -> np.ndarray:
    """Full-matrix spectrum reconstructed from the blocks, descending.

    Concatenates each block's eigenvalues repeated by its multiplicity;
    the result is the complete multiset of eigenvalues of the assembled
    matrix.
    """
    parts = []
    for mat, mult in zip(
        (blocks.b1, blocks.b2, blocks.b3, blocks.b4), blocks.multiplicities
    ):
        if mult == 0:
            continue
        vals, _ = eig_symmetric(mat)
        parts.append(np.tile(vals, mult))
    pool = np.concatenate(parts)
    return np.sort(pool)[::-1]


def slem_blocks(blocks: BlockSet) -> float:
    """SLEM computed from the stratified blocks.

    The symmetric sector b1 always carries the averaging eigenvalue 1;
    that single copy is removed and the extreme of everything left is
    the SLEM. Agrees with slem_full on the assembled matrix.
    """
    vals1, _ = eig_symmetric(blocks.b1)
    pool = [vals1[1:]]
    for mat, mult in zip(
        (blocks.b2, blocks.b3, blocks.b4), blocks.multiplicities[1:]
    ):
        if mult == 0:
            continue
        vals, _ = eig_symmetric(mat)
        pool.append(np.tile(vals, mult))
    rest = np.concatenate(pool)
    return float(max(rest.max(), -rest.min()))


@dataclass(frozen=True)
class ChainCheck:
    """One inequality of the interlacing chains, with both sides."""

    name: str
    lhs: float
    rhs: float
    passed: bool


@dataclass(frozen=True)
class InterlacingReport:
    """Outcome of the block-spectrum interlacing checks."""

    checks: tuple[ChainCheck, ...]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)


def check_interlacing(blocks: BlockSet, *, tol: float = 1e-10) -> InterlacingReport:
    """Verify the eigenvalue chains interlacing the block spectra.

    Top chain:    top(b4) <= top(b3) <= top(b2) <= top(b1) = 1.
    Bottom chain: bottom(b3) <= bottom(b2) <= bottom(b1) <= bottom(b4).
    Both hold for any weight vector; each inequality gets tol slack.
    """
    tops = {}
    bottoms = {}
    for name, mat in (
        ("b1", blocks.b1),
        ("b2", blocks.b2),
        ("b3", blocks.b3),
        ("b4", blocks.b4),
    ):
        vals, _ = eig_symmetric(mat)
        tops[name] = float(vals[0])
        bottoms[name] = float(vals[-1])

    checks = []
    ordered = [
        ("top(b4) <= top(b3)", tops["b4"], tops["b3"]),
        ("top(b3) <= top(b2)", tops["b3"], tops["b2"]),
        ("top(b2) <= top(b1)", tops["b2"], tops["b1"]),
        ("bottom(b3) <= bottom(b2)", bottoms["b3"], bottoms["b2"]),
        ("bottom(b2) <= bottom(b1)", bottoms["b2"], bottoms["b1"]),
        ("bottom(b1) <= bottom(b4)", bottoms["b1"], bottoms["b4"]),
    ]
    for name, lhs, rhs in ordered:
        checks.append(ChainCheck(name, lhs, rhs, lhs <= rhs + tol))
    checks.append(
        ChainCheck("top(b1) == 1", tops["b1"], 1.0, abs(tops["b1"] - 1.0) <= tol)
    )
    return InterlacingReport(checks=tuple(checks))
