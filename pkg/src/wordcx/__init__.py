"""Exact word-complexity experiments on finite windows of symbolic sequences."""
from .certificates import Certificate, anchored_family, extract_rays, ray_families, ray_window
from .codes import PeriodicOrbit, SlidingBlockCode, apply_sbc, phi_reduce
from .complexity import (
    ComplexityProfile,
    ComplexityProfiler,
    RightSpecialReport,
    SubwordIndex,
    complexity_gap_stats,
    complexity_profile,
    first_difference_check,
    morse_hedlund_probe,
    right_special,
    schedule_formula_violations,
)
from .config import ExperimentConfig, generator_from_config
from .errors import WordcxError
from .schedule import (
    GapConstruction,
    GapSchedule,
    build_schedule,
    construction_prefix,
    gap,
    growth_function,
    wk_word,
)
from .structure import (
    empirical_frequency,
    frequency_bound_holds,
    recurrence_diagnostics,
    structure_check,
    structure_scan,
    zero_run_flanks,
)
from .words import (
    Alphabet,
    EventuallyPeriodicGenerator,
    PeriodicGenerator,
    QuadraticSurd,
    SturmianGenerator,
    Window,
    occurrences,
    window,
)

__version__ = "0.1.0"
