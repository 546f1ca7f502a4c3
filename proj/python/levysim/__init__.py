"""Lévy area and iterated Itô integral simulation (IA and FS algorithms)."""

from ._core import (
    __version__,
    chi2_abs_moment,
    choose_n,
    choose_n_fs,
    choose_n_wik,
    cond_cov_blocks,
    cond_cov_direct,
    cost,
    coupled_fs_error_grid,
    fit_slope,
    gauss_abs_moment,
    l2_error_fs_exact,
    l2_error_ia_bound,
    moment_suite,
    normals,
    pair_to_index,
    run_demo,
    simulate,
    tail_constants,
)

__all__ = [
    "chi2_abs_moment",
    "choose_n",
    "choose_n_fs",
    "choose_n_wik",
    "cond_cov_blocks",
    "cond_cov_direct",
    "cost",
    "coupled_fs_error_grid",
    "fit_slope",
    "gauss_abs_moment",
    "l2_error_fs_exact",
    "l2_error_ia_bound",
    "moment_suite",
    "normals",
    "pair_to_index",
    "run_demo",
    "simulate",
    "tail_constants",
]
