"""Back-of-the-envelope wall time for LID over a crawl snapshot."""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class WalltimeParams:
    """Inputs of the estimate.

    ``documents`` to annotate, ``parallel_jobs`` workers, ``sentences_per_doc``
    on average, and measured LID throughput in sentences/s and documents/s.
    """

    documents: float
    parallel_jobs: float
    sentences_per_doc: float
    sentences_per_second: float
    documents_per_second: float

    def __post_init__(self):
        if self.documents < 0:
            raise ValueError("documents must be >= 0")
        for name in ("parallel_jobs", "sentences_per_doc", "sentences_per_second", "documents_per_second"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be > 0, got {getattr(self, name)}")


def estimate_walltime(params: WalltimeParams) -> float:
    """Hours needed when every document is classified whole and line by line."""
    per_doc = params.sentences_per_doc / params.sentences_per_second + 1.0 / params.documents_per_second
    return params.documents / (3600.0 * params.parallel_jobs) * per_doc
