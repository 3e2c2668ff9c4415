"""Trial scoring and benchmark aggregation."""

from .aggregate import OracleComparison, compare_to_oracle, failure_distribution, success_rates
from .judging import judge_coding, judge_modeling, judge_policy
from .outcomes import FailureDistribution, SuccessTriplet, TrialOutcome
from .report import (
    distribution_table_csv,
    distribution_table_md,
    triplet_table_csv,
    triplet_table_md,
    write_reports,
)

__all__ = [
    "FailureDistribution",
    "OracleComparison",
    "SuccessTriplet",
    "TrialOutcome",
    "compare_to_oracle",
    "distribution_table_csv",
    "distribution_table_md",
    "failure_distribution",
    "judge_coding",
    "judge_modeling",
    "judge_policy",
    "success_rates",
    "triplet_table_csv",
    "triplet_table_md",
    "write_reports",
]
