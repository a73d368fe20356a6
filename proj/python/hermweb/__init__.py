"""Chern-Ricci-flat Hermitian metrics on torus models (Python bindings)."""

from ._hermweb import (  # noqa: F401
    ClassReport,
    DomainError,
    Error,
    Expr,
    FlowFailure,
    Grid,
    InputError,
    Metric,
    ParseError,
    PositivityError,
    SolverFailure,
    __version__,
    chern_ricci,
    classify,
    conformal_flatten,
    evaluate,
    flat_volume_descent_check,
    hodge_root_roundtrip,
    hopf_check,
    hopf_sample,
    nakamura_check,
    nakamura_sample,
    parse_expr,
    ricci_norm,
    ricci_potential,
    run_command,
    run_flow,
    solve_ma2,
    solve_ma3,
    yoshihara_check,
)
