"""
Runtime configuration for pellsolver.
"""
import json
import logging
import os
from dataclasses import dataclass, field
from math import isqrt
from pathlib import Path
from typing import Any, Dict, Optional

logger = logging.getLogger(__name__)

ENV_OUTPUT_DIR = "PELLSOLVER_OUTPUT_DIR"


def default_output_dir() -> Path:
    """Output root: $PELLSOLVER_OUTPUT_DIR or ~/Documents/PellSolver."""
    override = os.environ.get(ENV_OUTPUT_DIR)
    if override:
        return Path(override)
    return Path.home() / "Documents" / "PellSolver"


@dataclass
class SolverConfig:
    """Budgets, bounds and output settings shared by every command."""
    output_dir: Path = field(default_factory=default_output_dir)
    step_budget_factor: int = 10  # CF steps per unit of sqrt(A)
    step_budget_offset: int = 100
    reduction_budget_factor: int = 8  # form substitutions per unit of sqrt(A) * log2(A)
    reduction_budget_offset: int = 100
    oracle_x_bound: int = 10 ** 7
    minus3_param_bound: int = 64
    workers: int = 1
    block_size: int = 1000
    progress: bool = True
    log_to_file: bool = True

    def step_budget(self, radicand: int) -> int:
        return self.step_budget_factor * isqrt(radicand) + self.step_budget_offset

    def reduction_budget(self, radicand: int) -> int:
        return self.reduction_budget_factor * isqrt(radicand) * radicand.bit_length() + self.reduction_budget_offset

    @property
    def log_dir(self) -> Path:
        return self.output_dir / "logs"

    def to_dict(self) -> Dict[str, Any]:
        """Convert config to dictionary for serialization."""
        return {
            'output_dir': str(self.output_dir),
            'step_budget_factor': self.step_budget_factor,
            'step_budget_offset': self.step_budget_offset,
            'reduction_budget_factor': self.reduction_budget_factor,
            'reduction_budget_offset': self.reduction_budget_offset,
            'oracle_x_bound': self.oracle_x_bound,
            'minus3_param_bound': self.minus3_param_bound,
            'workers': self.workers,
            'block_size': self.block_size,
            'progress': self.progress,
            'log_to_file': self.log_to_file,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'SolverConfig':
        """Create config from dictionary; missing keys keep their defaults."""
        defaults = cls()
        return cls(
            output_dir=Path(data['output_dir']) if data.get('output_dir') else defaults.output_dir,
            step_budget_factor=int(data.get('step_budget_factor', defaults.step_budget_factor)),
            step_budget_offset=int(data.get('step_budget_offset', defaults.step_budget_offset)),
            reduction_budget_factor=int(data.get('reduction_budget_factor', defaults.reduction_budget_factor)),
            reduction_budget_offset=int(data.get('reduction_budget_offset', defaults.reduction_budget_offset)),
            oracle_x_bound=int(data.get('oracle_x_bound', defaults.oracle_x_bound)),
            minus3_param_bound=int(data.get('minus3_param_bound', defaults.minus3_param_bound)),
            workers=int(data.get('workers', defaults.workers)),
            block_size=int(data.get('block_size', defaults.block_size)),
            progress=bool(data.get('progress', defaults.progress)),
            log_to_file=bool(data.get('log_to_file', defaults.log_to_file)),
        )


def load_config(path: Optional[Path] = None) -> SolverConfig:
    """Load configuration.

    Args:
        path: JSON file with any subset of the SolverConfig fields.
              If None, defaults are used.

    Returns:
        Loaded configuration. The environment variable always wins for
        the output directory.
    """
    if path is None:
        config = SolverConfig()
    else:
        path = Path(path)
        if not path.exists():
            raise ValueError(f"Config file not found: {path}")
        with open(path, 'r', encoding='utf-8') as f:
            config = SolverConfig.from_dict(json.load(f))
        logger.info(f"Loaded config from {path}")

    if os.environ.get(ENV_OUTPUT_DIR):
        config.output_dir = Path(os.environ[ENV_OUTPUT_DIR])
    return config


def save_config(config: SolverConfig, path: Path) -> Path:
    """Write configuration as indented JSON."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(config.to_dict(), f, indent=2)
    return path
