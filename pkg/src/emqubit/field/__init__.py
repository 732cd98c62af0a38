from .chart import (
    ChartOptions,
    Separatrix,
    TopologicalChart,
    canonical_label,
    charts_equivalent,
    extract_chart,
    sample_field_lines,
)
from .equilibria import EquilibriumKind, EquilibriumOptions, EquilibriumPoint, find_equilibria
from .model import (
    Box,
    Charge,
    FieldModel,
    ResonatorModel,
    coupled_pair,
    eval_field,
    resonator_field,
    scaled,
    superpose_models,
)
from .sweep import Bifurcation, sweep_bifurcations
from .trace import FieldLine, Termination, TraceOptions, trace_field_line
