"""Exception hierarchy. Everything raised on purpose derives from MapeqError."""


class MapeqError(Exception):
    """Base class for all mapeq errors."""


class UnknownMapping(MapeqError):
    """Requested built-in mapping name does not exist."""


class MappingFormatError(MapeqError):
    """A mapping JSON document is malformed or inconsistent."""


class AlphabetMismatch(MapeqError):
    """Two objects that must share an alphabet do not."""


class DimensionTooSmall(MapeqError):
    """Embedding target dimension is below the mapping dimension."""


class EmptySequence(MapeqError):
    """Operator applied to a zero-length sequence."""


class LagOutOfRange(MapeqError):
    """max_lag outside [0, N-1]."""


class WeightLengthMismatch(MapeqError):
    """Weighted-operator weight vector length differs from sequence length."""


class GridMismatch(MapeqError):
    """Two profiles do not share the same index grid."""


class DegenerateProfile(MapeqError):
    """Pearson correlation undefined: a retained value list has zero variance."""


class TooShort(MapeqError):
    """Profile too short for the requested comparison."""


class ZeroMapping(MapeqError):
    """All vectors of a mapping are zero; relatedness scale undefined."""


class SupportOverflow(MapeqError):
    """Formal-series product support would exceed the configured bound."""


class MalformedFasta(MapeqError):
    """FASTA input violates the format (e.g. residues before any header)."""


class UnknownResidue(MapeqError):
    """Residue outside the alphabet under the strict parsing policy."""


class InvalidDistribution(MapeqError):
    """Generator probabilities are not a valid distribution."""


class LengthOutOfRange(MapeqError):
    """Prefix length outside [1, sequence length]."""


class EmptyReport(MapeqError):
    """Plotting requires a report with at least two rows."""
