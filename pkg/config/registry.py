# registry.py

from nullsteer.selectors import SerialSelector
from stages.intake_stage import IntakeStage
from stages.geometry_stage import GeometryStage
from stages.design_stage import DesignStage
from stages.assemble_stage import AssembleStage
from stages.pattern_stage import PatternStage
from stages.efficiency_stage import EfficiencyStage
from stages.sweep_stage import SweepStage
from stages.report_stage import ReportStage

STAGE_REGISTRY = {
    "intake": IntakeStage,
    "geometry": GeometryStage,
    "design": DesignStage,
    "assemble": AssembleStage,
    "pattern": PatternStage,
    "efficiency": EfficiencyStage,
    "sweep": SweepStage,
    "report": ReportStage,
}

# Switch-state selection strategies; constrained or global optimizers plug in here
SELECTOR_REGISTRY = {
    "serial": SerialSelector,
}
