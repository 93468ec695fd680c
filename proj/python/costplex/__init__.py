"""Cost-based complexity toolkit: classical complexity measures and three
cost-sweep experiments (KDE reconstruction, multi-agent annealing, airport
network budget)."""

from ._core import (
    ConfigError,
    DomainError,
    __version__,
    anneal_sweep,
    box_counting_dimension,
    description_length,
    kde_sweep,
    koch_raster,
    lacunarity,
    logical_depth,
    lyapunov_logistic,
    network_budget,
    run_cli,
    sandpile_avalanches,
    shannon_entropy,
    text_entropy,
)

__all__ = [
    "ConfigError",
    "DomainError",
    "anneal_sweep",
    "box_counting_dimension",
    "description_length",
    "kde_sweep",
    "koch_raster",
    "lacunarity",
    "logical_depth",
    "lyapunov_logistic",
    "network_budget",
    "run_cli",
    "sandpile_avalanches",
    "shannon_entropy",
    "text_entropy",
]
