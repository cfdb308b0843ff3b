"""Geometric model of inflectional morphology.

Paradigm cells are corners of a hypercube in feature-value space; exponents
are unit vectors there. An exponent realizes a cell when its inner product
with the cell's corner beats every competitor; learning moves the vectors
(delta rule), and related inflection classes are rigid rotations of one
shared configuration.
"""
from .composition import (
    AngleLearnConfig,
    AngleModel,
    CompositionInventory,
    angle_of_sum,
    inventory_from_angles,
    learn_angles,
    select_affix_by_angle,
    select_affix_for_stem,
    select_pair,
)
from .errors import GeomorphError
from .exponence import (
    ActivationMatrix,
    CountArray,
    EvaluationReport,
    ExponentMatrix,
    SelectionTable,
    activations,
    count_features,
    evaluate,
    initial_exponents,
    normalize_columns,
    select_winners,
    selection_from_winners,
)
from .features import (
    CornerMatrix,
    FeatureSystem,
    ParadigmCell,
    all_cells,
    build_corner_matrix,
    build_feature_system,
    corner_vector,
    validate_feature_blocks,
)
from . import fixtures
from .paradigm import ParadigmFile, parse, parse_text
from .rotations import (
    ClassInventory,
    PlaneRotation,
    RotationLearnConfig,
    RotationPlan,
    apply_rotation,
    base_configuration,
    class_of_base,
    deponent_transform,
    gram_matrix,
    learn_all_classes,
    learn_class_rotation,
    sigmoid_gain,
    weighted_counts,
)
from .training import TrainConfig, TrainTrace, delta_step, train

__version__ = "0.1.0"
