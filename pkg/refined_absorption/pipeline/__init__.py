from .pipeline import STAGES, decompose
from .trace import DecompositionTrace, PipelineConfig, StageRecord, report
