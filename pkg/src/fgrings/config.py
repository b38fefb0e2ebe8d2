"""Resource caps and tunable bounds, bundled as plain dataclasses.

Every potentially-expensive computation takes explicit limits and fails
with a refusal error instead of running unbounded.  A refusal is never a
wrong answer; callers map it to a dedicated exit code.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace


@dataclass(frozen=True)
class GroebnerLimits:
    """Caps for basis completion; exceeding either raises ResourceCapExceeded."""

    max_basis: int = 300
    max_reductions: int = 200_000


@dataclass(frozen=True)
class AnalysisConfig:
    """Bounds used by the spectrum pipeline and the finite-model tools."""

    groebner: GroebnerLimits = field(default_factory=GroebnerLimits)
    # decomposition branching safety net (the branch recursion is provably
    # finite, the cap only guards against pathological fan-out)
    max_decomposition_branches: int = 256
    # number of linear forms tried when certifying a zero-dimensional ideal
    zero_dim_form_attempts: int = 24
    # bounded search window for multiplicative-order certificates
    mult_order_bound: int = 64
    # hard cap on finite-ring enumeration (element count)
    finite_ring_cap: int = 64
    # seed for the deterministic sampling used in self-checks
    sample_seed: int = 2024
    witt_cache_path: str | None = None

    def with_overrides(self, **kwargs) -> "AnalysisConfig":
        gb_keys = {k: v for k, v in kwargs.items() if k in ("max_basis", "max_reductions") and v is not None}
        rest = {k: v for k, v in kwargs.items() if k not in ("max_basis", "max_reductions") and v is not None}
        cfg = replace(self, **rest) if rest else self
        if gb_keys:
            cfg = replace(cfg, groebner=replace(cfg.groebner, **gb_keys))
        return cfg


DEFAULT_CONFIG = AnalysisConfig()
