"""Spectra of oriented, signed and mixed Cayley graphs and their quantum walks."""
from .errors import CayleySpectraError, ComputationError, InputError
from .groups import AbelianGroup, make_group, unit_group
from .permgroups import (
    PermGroup,
    alternating_group,
    c7_rtimes_c3,
    class_power,
    conjugacy_classes,
    group_from_generators,
    symmetric_group,
)
from .number_theory import DeltaSpec, delta_spec, feasible_deltas, h_delta, quadratic_subfield_count
from .gauss_sum import check_identity, master_gauss_sum
from .spectra import (
    MixedCayleySpec,
    SpectrumReport,
    classify_sets,
    delta_partition,
    enumerate_valid_specs,
    make_spec,
    spectrum,
)
from .walk import (
    WalkOperator,
    WalkReport,
    build_walk,
    detect_mst,
    detect_pst,
    detect_uniform_mixing,
    period,
    transition_matrix,
    walk_report,
)

__version__ = "0.1.0"
