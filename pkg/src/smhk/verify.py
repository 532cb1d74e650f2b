"""Invariant suite tying the closed forms, blocks, and spectrum together.

Each check is a named pass/fail with a one-line detail, so the CLI can
print one line per check and exit nonzero on the first broken invariant.
When an explicit weight vector is supplied, matrix-level checks run on
it while the spectral comparisons still target the closed-form optimum;
a perturbed vector therefore shows up as a consistency failure rather
than being silently re-certified.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .oracle import OracleConfig, optimize_weights
from .spectral import (
    assemble_full,
    block_spectrum,
    check_interlacing,
    eig_symmetric,
    slem_full,
    stratify,
)
from .topology import SmhkParams, adjacency_matrix
from .weights import InconsistentRootError, NoRootError, solve_theta

__all__ = ["CheckResult", "run_checks"]

ROW_SUM_TOL = 1e-12
SPECTRUM_UNION_TOL = 1e-8
CHAIN_TOL = 1e-10
SLEM_TOL = 1e-8
SLACKNESS_TOL = 1e-8
ORACLE_TOL = 1e-5


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def run_checks(
    params: SmhkParams,
    weights=None,
    *,
    include_oracle: bool = False,
    oracle_config: OracleConfig | None = None,
) -> list[CheckResult]:
    """Run the full invariant suite for one parameter set."""
    try:
        solution = solve_theta(params)
    except (NoRootError, InconsistentRootError) as err:
        return [CheckResult("analytical_solution", False, str(err))]

    active = weights if weights is not None else solution.weights
    full = assemble_full(params, active)
    blocks = stratify(params, active)
    results = []

    row_gap = float(np.max(np.abs(full.sum(axis=1) - 1.0)))
    results.append(
        CheckResult(
            "row_sums",
            row_gap <= ROW_SUM_TOL,
            f"max |row sum - 1| = {row_gap:.3e}",
        )
    )

    symmetric = bool(np.array_equal(full, full.T))
    results.append(
        CheckResult("symmetry", symmetric, "W == W^T exactly" if symmetric else "asymmetric entries found")
    )

    adjacency = adjacency_matrix(params)
    off_diagonal = full.copy()
    np.fill_diagonal(off_diagonal, 0.0)
    stray = int(np.count_nonzero((off_diagonal != 0.0) & ~adjacency))
    results.append(
        CheckResult(
            "sparsity",
            stray == 0,
            "no weight outside the edge set" if stray == 0 else f"{stray} entries off the edge set",
        )
    )

    full_spectrum = slem_full(full)
    union_gap = float(np.max(np.abs(full_spectrum.eigenvalues - block_spectrum(blocks))))
    results.append(
        CheckResult(
            "spectrum_union",
            union_gap <= SPECTRUM_UNION_TOL,
            f"max eigenvalue gap full vs blocks = {union_gap:.3e}",
        )
    )

    interlacing = check_interlacing(blocks, tol=CHAIN_TOL)
    broken = [c.name for c in interlacing.checks if not c.passed]
    results.append(
        CheckResult(
            "eigenvalue_chains",
            interlacing.passed,
            "all chain inequalities hold" if interlacing.passed else f"violated: {', '.join(broken)}",
        )
    )

    slem_gap = abs(full_spectrum.slem - solution.slem)
    results.append(
        CheckResult(
            "slem_cos_theta",
            slem_gap <= SLEM_TOL,
            f"|slem - cos(theta)| = {slem_gap:.3e}",
        )
    )

    top_b2, _ = eig_symmetric(blocks.b2)
    gap_b2 = abs(float(top_b2[0]) - solution.slem)
    results.append(
        CheckResult(
            "block2_top_hits_slem",
            gap_b2 <= SLACKNESS_TOL,
            f"|top(b2) - s| = {gap_b2:.3e}",
        )
    )

    vals_b3, _ = eig_symmetric(blocks.b3)
    gap_b3 = abs(float(vals_b3[-1]) + solution.slem)
    results.append(
        CheckResult(
            "block3_bottom_hits_slem",
            gap_b3 <= SLACKNESS_TOL,
            f"|bottom(b3) + s| = {gap_b3:.3e}",
        )
    )

    if include_oracle:
        oracle = optimize_weights(params, oracle_config)
        oracle_gap = abs(oracle.slem - solution.slem)
        results.append(
            CheckResult(
                "oracle_agreement",
                oracle_gap <= ORACLE_TOL,
                f"|oracle slem - analytical slem| = {oracle_gap:.3e}",
            )
        )

    return results
