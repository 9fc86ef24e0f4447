"""Coherence bounds for line packings and the linear program behind them."""

from linepack.bounds import (
    BoundReport,
    bound_report,
    bukh_cox_bound,
    gerzon_max,
    levenshtein_bound,
    orthoplex_bound,
    welch_bound,
)
from linepack.certify import (
    diagnose_lemma_equality,
    diagnose_theorem3_equality,
    lemma_certificate,
    welch_equality_check,
)
from linepack.frames import (
    GramReport,
    VectorConfiguration,
    concat_copies,
    construct_sic,
    construct_simplex_etf,
    gram_report,
    is_equiangular,
    is_etf,
    is_tight,
    naimark_complement,
    orthogonal_tight_complement,
)
from linepack.ingest import PackingRecord, fetch_packing, packing_coherence, parse_packing
from linepack.lp import (
    gamma_interval,
    gram_one_norm_bound_bc,
    gram_one_norm_bound_welch,
    lemma_coherence_floor,
    minimize_c0,
    q_polys,
    tangency_solve,
    verify_feasible,
)

__version__ = "0.1.0"
