"""Python access to the hardylab experiments.

Fields are 1-D complex numpy arrays sampled on the periodic grid
x_j = -L + 2L j / N (see grid_coordinates).
"""
import json as _json
import os as _os

from ._hardylab import (
    HardylabError,
    appell_transform,
    carleman_sweep,
    commutator_form,
    divergence_demonstration,
    evolve_gaussian,
    free_flow,
    gaussian,
    grid_coordinates,
    hardy_product,
    heat_boundary,
    hermite_lower_bound_check,
    lemma1_decay_check,
    log_convexity_check,
    parameter_window,
    propagate,
    s_map,
    scaled_weight,
    semigroup_identity_check,
    solve_weight_ode,
    weighted_l2_norm,
)
from ._hardylab import _run_config as _ext_run


def run_config(config, out_dir=None, threads=1, strict_tails=False, seed=None):
    """Run an experiment config (dict, JSON string or path); returns the summary dict.

    Files are written only when out_dir is given.
    """
    if isinstance(config, dict):
        text = _json.dumps(config)
    elif isinstance(config, (str, _os.PathLike)) and _os.path.exists(config):
        with open(config, encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = str(config)
    summary = _ext_run(text, str(out_dir or ""), out_dir is not None, threads, strict_tails, seed)
    return _json.loads(summary)

__all__ = [name for name in dir() if not name.startswith("_")]
