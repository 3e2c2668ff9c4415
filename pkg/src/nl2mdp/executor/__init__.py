"""Sandboxed execution of generated code with classification and repair."""

from .extract import CodeArtifact, extract_code
from .protocol import (
    EXIT_CONTRACT,
    EXIT_INTERNAL,
    EXIT_RUNTIME,
    EXIT_SUCCESS,
    EXIT_SYNTAX,
    EXIT_TO_KIND,
    KIND_CONTRACT,
    KIND_RUNTIME,
    KIND_SUCCESS,
    KIND_SYNTAX,
    KIND_TIMEOUT,
    OUTCOME_KINDS,
    RESULTS_RELPATH,
    load_results_file,
    validate_results_doc,
)
from .repair import RepairResult, error_context, repair_loop
from .sandbox import (
    DEFAULT_SHIM_CMD,
    ExecLimits,
    ExecutionOutcome,
    TrainingResults,
    execute,
)

__all__ = [
    "CodeArtifact",
    "DEFAULT_SHIM_CMD",
    "EXIT_CONTRACT",
    "EXIT_INTERNAL",
    "EXIT_RUNTIME",
    "EXIT_SUCCESS",
    "EXIT_SYNTAX",
    "EXIT_TO_KIND",
    "ExecLimits",
    "ExecutionOutcome",
    "KIND_CONTRACT",
    "KIND_RUNTIME",
    "KIND_SUCCESS",
    "KIND_SYNTAX",
    "KIND_TIMEOUT",
    "OUTCOME_KINDS",
    "RESULTS_RELPATH",
    "RepairResult",
    "TrainingResults",
    "error_context",
    "execute",
    "extract_code",
    "load_results_file",
    "repair_loop",
    "validate_results_doc",
]
