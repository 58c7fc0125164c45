"""Ordinal analysis of variation (ORDANOVA) for interlaboratory studies."""

__version__ = "0.1.0"

from .approx import (
    GaussianCountModel,
    NormalApprox,
    critical_value,
    gaussian_count_model,
    normal_params,
)
from .decide import TestOutcome, mc_pvalue, test_in, test_ip_chi2, test_ip_constant3
from .ingest import (
    ContingencyTable,
    ProbabilityVector,
    TableError,
    lab_cumulative,
    parse_table,
    pooled_probabilities,
    read_table,
)
from .montecarlo import (
    McDistribution,
    SimConfig,
    ecdf_rows,
    sample_multinomial,
    simulate_distribution,
    tail_fraction,
    upper_percentile,
)
from .special import chi2_quantile, std_normal_quantile
from .statistics import (
    CONSISTENT,
    PAPER_LITERAL,
    DofConvention,
    statistic_in,
    statistic_in_null,
    statistic_ip,
)
from .variation import (
    VariationDecomposition,
    between_variation_at,
    decompose,
    total_variation,
    within_lab_variation,
)


def load_example(name: str) -> ContingencyTable:
    """Embedded AIST count table: ``"table3"`` or ``"table4"``."""
    from importlib import resources

    if name not in ("table3", "table4"):
        raise ValueError(f"unknown example {name!r}")
    return parse_table(resources.files(__name__).joinpath(f"data/{name}.csv").read_text("utf-8"))
