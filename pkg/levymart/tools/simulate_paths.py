from typing import Dict, Any, List, Optional

import numpy as np

from levymart.config import resolve_process
from levymart.errors import LevymartError
from levymart.simulate import TimeGrid, sample_paths, tail_diagnostic, write_binary, write_csv
from .report_utils import failure


def simulate_paths(
    process,
    times: List[float],
    n_paths: int,
    seed: int,
    params: Optional[Dict[str, float]] = None,
    output: Optional[str] = None,
    binary: Optional[str] = None,
    epsilon: Optional[float] = None,
    tail_order: Optional[int] = None,
) -> Dict[str, Any]:
    """
    Simulate paths on a time grid and summarize them.

    Args:
        process: Catalog name, inline JSON/dict config or '@path'
        times: Positive grid times (0 is prepended)
        n_paths: Number of paths
        seed: Seed of the counter-based streams
        params: Catalog parameter overrides (optional)
        output: CSV path (header row of times, one row per path) (optional)
        binary: Column-major .npy path (optional)
        epsilon: Small-jump cutoff for composite recipes (optional)
        tail_order: Also run the max-to-sum heavy-tail diagnostic of this order (optional)

    Returns:
        Dict with per-time means and variances, batch digest and written files
    """
    try:
        # Resolve the process, then simulate every path on the grid (0 is added)
        _, spec = resolve_process(process, params)
        batch = sample_paths(spec, TimeGrid.through(*times), n_paths, seed, epsilon=epsilon)
        # Write files only when a path was given
        written = []
        if output:
            write_csv(batch, output)
            written.append(output)
        if binary:
            write_binary(batch, binary)
            written.append(binary)
        # A single path has no sample variance, fall back to ddof=0
        ddof = 1 if batch.n_paths > 1 else 0

        result = {
            'success': True,
            'grid': list(batch.grid.times),
            'n_paths': batch.n_paths,
            'seed': batch.seed,
            'spec_fingerprint': batch.fingerprint,
            'digest': batch.digest(),
            'mean': np.mean(batch.values, axis=0).tolist(),
            'variance': np.var(batch.values, axis=0, ddof=ddof).tolist(),
            'files': written
        }
        if tail_order is not None:
            result['tail_diagnostic'] = tail_diagnostic(batch, tail_order).to_dict()
        return result
    except LevymartError as e:
        return failure(e)
