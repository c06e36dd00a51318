"""Fat point schemes at general points of the plane: Hilbert functions,
graded Betti numbers, exceptional curves and their splitting types, with
exact verification over prime fields."""

from .errors import ConjectureViolation, DegenerateConfiguration, InfeasibleError, InputError
from .exactla import DEFAULT_PRIME, BinaryForm, FpMatrix, PrimeField, form_divexact, form_gcd, min_syzygy_degree
from .lattice import (
    DivisorClass,
    FatPointScheme,
    binom2,
    canonical_class,
    chi,
    class_of,
    format_class,
    format_mults,
    intersect,
    line_class,
    parse_class,
    parse_mults,
    point_class,
    selfint,
)
from .weyl import (
    IN_CHAMBER,
    NEG_L,
    NEG_LINE,
    ReducedForm,
    WeylWord,
    apply_word,
    enumerate_exceptional,
    format_word,
    is_exceptional,
    line_reduction,
    orbit_of_line,
    parse_word,
    reduce,
)
from .linsys import (
    Decomposition,
    HilbertReport,
    alpha_degree,
    decompose,
    expected_h0,
    expected_h1,
    fixed_part,
    hilbert,
)
from .splitting import (
    DEFAULT_SEED,
    PointConfiguration,
    SplitPrediction,
    SplittingType,
    compute_splitting,
    defect_sum,
    draw_points,
    forced_type,
    predict_report,
    predict_splitting,
    split_bounds,
)
from .cokernel import (
    DEFAULT_COLUMN_CEILING,
    MuVerdict,
    cok_dimension,
    fat_point_matrix,
    h0_mE,
    h1_mE,
    mu_rank_oracle,
    predicted_cokernel,
    splitting_of,
)
from .betti import (
    AlphaOneResult,
    BettiBoundData,
    ResolutionTable,
    assemble_resolution,
    betti_alpha_plus_one,
    bettibound_data,
    check_hilbert_consistency,
    expected_betti,
    regularity,
)

__version__ = "0.1.0"
