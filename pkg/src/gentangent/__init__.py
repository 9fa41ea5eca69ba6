"""Fiberwise linear algebra for structures on the generalized fiber V + V*."""

from .core import (
    GENERAL,
    SKEW,
    SYMMETRIC,
    BaseForm,
    BilinearForm,
    BlockOperator,
    GeneralizedVector,
    PolynomialClass,
    Tolerance,
    DEFAULT_TOL,
    apply,
    close,
    dual_map,
    musicals,
    polynomial_class,
    signature,
)
from .canonical import f0, g0, omega0
from .gen_metrics import (
    MetricInducerReport,
    diagonal_inducer,
    endomorphism_from_metric,
    induced_metric,
    metric_from_endomorphism,
    nannicini_metric,
    symplectic_from_endomorphism,
)
from .ae_zoo import (
    FAMILY_IDS,
    TWIN_FORMULA_FAMILIES,
    AeManifoldData,
    FundamentalTensor,
    StructureClass,
    base_fundamental,
    build_diagonal,
    build_family,
    build_mixed,
    build_musical,
    build_triangular,
    check_flat_sharp_identities,
    classify_pair,
    extract_base_complex,
    fundamental_tensor,
    twin_formula_check,
)
from .errors import (
    DegenerateFormError,
    DimensionError,
    GentangentError,
    IncompatiblePairError,
    InvalidKahlerDataError,
    NotAnticommutingError,
    NotComplexError,
    NotInjectiveError,
    NotPolynomialError,
    ProjectionSingularError,
    UnknownFamilyError,
    WrongAlphaError,
)
from .triples import (
    TRIPLE_NAMES,
    KahlerData,
    TripleReport,
    canonical_triple,
    expected_triple_kind,
    classify_triple,
    combine,
    f0_commutation,
    is_almost_kahler,
    kahler_from_data,
    kahler_roundtrip,
    triple_epsilon_product,
)
from .generators import (
    SplitMix64,
    random_ae_pair,
    random_invertible,
    random_kahler_data,
    random_metric,
    random_symplectic,
)

__all__ = [name for name in dir() if not name.startswith("_")]

__version__ = "0.1.0"
