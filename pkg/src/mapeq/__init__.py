"""mapeq: equivalence analysis for symbolic-to-numeric sequence mappings.

Encode symbol sequences under vector mappings, compute second-order operator
profiles (lag correlation, magnitude spectrum, weighted operator family),
measure strong/weak consistency between mapping pairs, decide scaled-rotation
relatedness, and work with formal series over the free monoid of an alphabet.
"""

from .errors import (
    AlphabetMismatch,
    DegenerateProfile,
    DimensionTooSmall,
    EmptyReport,
    EmptySequence,
    GridMismatch,
    InvalidDistribution,
    LagOutOfRange,
    LengthOutOfRange,
    MalformedFasta,
    MapeqError,
    MappingFormatError,
    SupportOverflow,
    TooShort,
    UnknownMapping,
    UnknownResidue,
    WeightLengthMismatch,
    ZeroMapping,
)
from .mapping import (
    DNA,
    Alphabet,
    EncodedSequence,
    MappingTable,
    SymbolSequence,
    builtin_mapping,
    builtin_names,
    embed,
    encode,
    mapping_from_json,
    mapping_to_json,
    transform_mapping,
)
from .operators import (
    PairCountTable,
    Profile,
    WeightedOperatorSpec,
    autocorrelation,
    magnitude_spectrum,
    pair_count_decomposition,
    read_profile_csv,
    weighted_correlation,
    write_profile_csv,
)
from .equivalence import (
    ConsistencyReport,
    ReportRow,
    RotationVerdict,
    extrema_preservation,
    pearson_consistency,
    random_orthogonal,
    read_report_csv,
    rotation_relatedness,
    sign_agreement,
    write_report_csv,
)
from .algebra import (
    EPSILON,
    FormalSeries,
    add,
    mul,
    parse_series,
    scalar,
    scalar_equivalent,
    series_text,
)
from .seqio import (
    FastaRecord,
    GeneratorSpec,
    generate,
    generator_id,
    parse_fasta,
    prefix,
    read_fasta,
    write_fasta,
)
from .sweep import (
    SweepConfig,
    consistency_rows,
    default_max_lag,
    resolve_mapping,
    run_profile,
    run_sweep,
)
from .svgplot import emit_plot, render_report_svg
from ._kernels import BACKEND as KERNEL_BACKEND

__version__ = "0.1.0"
