from dataclasses import dataclass

DEFAULT_SUBSET_CHECKS = 10**8
DEFAULT_VERIFY_MAX_VERTICES = 64


@dataclass(frozen=True)
class Limits:
    subset_checks: int = DEFAULT_SUBSET_CHECKS
    verify_max_vertices: int = DEFAULT_VERIFY_MAX_VERTICES
    workers: int = 1
    parity_pruning: bool = False

    def __post_init__(self) -> None:
        if self.subset_checks < 1:
            raise ValueError(f"subset_checks must be positive, got {self.subset_checks}")
        if self.workers < 1:
            raise ValueError(f"workers must be at least 1, got {self.workers}")
