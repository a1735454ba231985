from .potential_inspector.tool import PotentialInspector
from .resonance_cartographer.tool import ResonanceCartographer
from .phase_portrait_tool.tool import PhasePortraitTool
from .action_angle_tool.tool import ActionAngleTool
from .twist_analyzer.tool import TwistAnalyzer
from .log_ring_calculator.tool import LogRingCalculator
from .measure_lab.tool import MeasureLab
from .study_runner.tool import StudyRunner

__all__ = [
    "PotentialInspector",
    "ResonanceCartographer",
    "PhasePortraitTool",
    "ActionAngleTool",
    "TwistAnalyzer",
    "LogRingCalculator",
    "MeasureLab",
    "StudyRunner"
]
