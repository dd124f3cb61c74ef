from .document import (
    DEFAULT_THRESHOLD,
    OUTPUT_KEYS,
    REJECTION_CAUSES,
    AnnotatedDocument,
    PipelineConfig,
    Rejection,
    Timings,
    document_seed,
    process_document,
)
from .records import (
    ParseError,
    RawDocument,
    format_timestamp,
    iter_jsonl,
    iter_shard,
    iter_wet,
    parse_timestamp,
    split_payload,
    write_wet,
)
from .run import LabelStats, PartitionWriter, RunReport, run, write_report
from .walltime import WalltimeParams, estimate_walltime

__all__ = [
    "DEFAULT_THRESHOLD",
    "OUTPUT_KEYS",
    "REJECTION_CAUSES",
    "AnnotatedDocument",
    "PipelineConfig",
    "Rejection",
    "Timings",
    "document_seed",
    "process_document",
    "ParseError",
    "RawDocument",
    "format_timestamp",
    "iter_jsonl",
    "iter_shard",
    "iter_wet",
    "parse_timestamp",
    "split_payload",
    "write_wet",
    "LabelStats",
    "PartitionWriter",
    "RunReport",
    "run",
    "write_report",
    "WalltimeParams",
    "estimate_walltime",
]
