import logging
from typing import Any, Dict, List, Optional, Tuple

import attr
import pandas as pd

from ..config import settings
from ..core.models import CliqueFamily

logger = logging.getLogger(__name__)


@attr.s(auto_attribs=True, frozen=True)
class PipelineConfig:
    """Free knobs of the finishing pipeline; defaults come from the settings module."""
    reserve_p: float = attr.ib(factory=lambda: settings.RESERVE_P)
    subset_size: int = attr.ib(factory=lambda: settings.SUBSET_SIZE)
    bite: float = attr.ib(factory=lambda: settings.BITE)
    rounds: int = attr.ib(factory=lambda: settings.NIBBLE_ROUNDS)
    omni_cap: int = attr.ib(factory=lambda: settings.OMNI_EDGE_CAP)
    lp_cap: int = attr.ib(factory=lambda: settings.LP_CAP)
    search_budget: int = attr.ib(factory=lambda: settings.EXACT_COVER_BUDGET)
    low_weight_mode: str = 'enumerate'
    show_progress: bool = False

    def to_dict(self) -> Dict[str, Any]:
        return attr.asdict(self)


@attr.s(auto_attribs=True)
class StageRecord:
    index: int
    name: str
    ok: bool
    details: Dict[str, Any] = attr.ib(factory=dict)
    error: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        return {'index': self.index, 'name': self.name, 'ok': self.ok,
                'details': self.details, 'error': self.error}


@attr.s(auto_attribs=True)
class DecompositionTrace:
    """Everything a pipeline run did, stage by stage, plus the final decomposition."""
    n: int = 0
    q: int = 0
    seed: Optional[int] = None
    config: Dict[str, Any] = attr.ib(factory=dict)
    stages: List[StageRecord] = attr.ib(factory=list)
    decomposition: Optional[CliqueFamily] = None
    absorber_vertices: int = 0
    verified: bool = False

    def record(self, index: int, name: str, ok: bool = True, error: Optional[str] = None,
               **details: Any) -> StageRecord:
        stage = StageRecord(index, name, ok, details, error)
        self.stages.append(stage)
        if ok:
            logger.info(f"Stage {index} ({name}) done: {details}")
        else:
            logger.warning(f"Stage {index} ({name}) failed: {error}")
        return stage

    @property
    def failed_stage(self) -> Optional[StageRecord]:
        return next((s for s in self.stages if not s.ok), None)

    @property
    def success(self) -> bool:
        return bool(self.stages) and self.failed_stage is None and self.verified

    def frame(self) -> pd.DataFrame:
        rows = [{'Stage': s.index, 'Name': s.name, 'Ok': s.ok, 'Error': s.error or '',
                 **{k: v for k, v in s.details.items() if isinstance(v, (int, float, str, bool))}}
                for s in self.stages]
        return pd.DataFrame(rows)

    def export_analysis(self, output_path: str) -> None:
        """Export per-stage figures to CSV."""
        self.frame().to_csv(f"{output_path}_stages.csv", index=False)
        logger.info(f"Pipeline trace exported to {output_path}_stages.csv")

    def to_dict(self) -> Dict[str, Any]:
        return {
            'n': self.n,
            'q': self.q,
            'seed': self.seed,
            'config': self.config,
            'stages': [s.to_dict() for s in self.stages],
            'absorber_vertices': self.absorber_vertices,
            'cliques': len(self.decomposition) if self.decomposition is not None else 0,
            'verified': self.verified,
        }


def _format_value(value: Any) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return f"{value:.4g}"
    return str(value)


def report(trace: DecompositionTrace) -> Tuple[str, Dict[str, Any]]:
    """Text and dict summaries of a trace; an empty trace gives an empty report."""
    if not trace.stages:
        return '', {}
    lines = [f"n: {trace.n}", f"q: {trace.q}", f"seed: {trace.seed}"]
    for stage in trace.stages:
        status = 'ok' if stage.ok else 'FAILED'
        lines.append(f"stage {stage.index} {stage.name}: {status}")
        for key, value in stage.details.items():
            lines.append(f"  {key}: {_format_value(value)}")
        if stage.error:
            lines.append(f"  error: {stage.error}")
    failed = trace.failed_stage
    if failed is not None:
        lines.append(f"failed stage: {failed.index} ({failed.name})")
    lines.append(f"decomposition verified: {_format_value(trace.verified)}")
    return '\n'.join(lines), trace.to_dict()
