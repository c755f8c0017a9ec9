"""ridgekit: contrast enhancement for low-quality fingerprint-style images.

The pipeline separates an image into wavelet subbands, rescales the
singular values of the approximation band to normalize illumination,
reconstructs, and picks a ridge/valley threshold by minimizing an index
of fuzziness. Classic baselines (Otsu binarization, global and local
histogram equalization) and a comparison harness ship alongside.
"""

from .equalize import apply_mapping, ghe, ghe_mapping, lhe
from .image import (Histogram, ImageMetrics, as_gray, as_plane, from_real,
                    histogram, metrics, round_half_away, to_real)
from .pgm import (PgmDimensionError, PgmError, PgmMagicError, PgmMaxvalError,
                  PgmTruncatedError, read_pgm, write_pgm)
from .pipeline import (CompareConfig, ComparisonRow, EnhanceResult, XiMode,
                       compare, comparison_csv, compute_xi, enhance,
                       generate_corpus, generate_fingerprint_like,
                       standard_normal_plane)
from .svd import (SvdConvergenceError, SvdFactors, max_singular_value,
                  reconstruct, svd)
from .threshold import (FuzzyMembershipParams, NoDichotomyError,
                        ThresholdResult, binarize, fuzzy_threshold, otsu)
from .wavelet import SubbandSet, dwt2, idwt2

__version__ = "0.1.0"

__all__ = [
    "Histogram", "ImageMetrics", "as_gray", "as_plane", "from_real",
    "histogram", "metrics", "round_half_away", "to_real",
    "PgmError", "PgmMagicError", "PgmMaxvalError", "PgmDimensionError",
    "PgmTruncatedError", "read_pgm", "write_pgm",
    "SubbandSet", "dwt2", "idwt2",
    "SvdFactors", "SvdConvergenceError", "svd", "max_singular_value",
    "reconstruct",
    "ghe_mapping", "apply_mapping", "ghe", "lhe",
    "ThresholdResult", "FuzzyMembershipParams", "NoDichotomyError",
    "otsu", "fuzzy_threshold", "binarize",
    "XiMode", "EnhanceResult", "CompareConfig", "ComparisonRow",
    "compute_xi", "enhance", "compare", "comparison_csv",
    "generate_fingerprint_like", "generate_corpus", "standard_normal_plane",
    "__version__",
]
