"""Exact verification of tangentially degenerate curves with birational Gauss maps."""

__version__ = "0.1.0"

from .artin_schreier import (  # noqa: E402
    ASElem,
    ASField,
    as_arith,
    as_ddx,
    as_point_enum,
    as_sigma,
    as_v_membership,
    build_main,
)
from .bipoly import BiPoly, gcd_over_ratfield, resultant_u, squarefree_decomposition  # noqa: E402
from .certificate import CheckResult, MainBuildCertificate  # noqa: E402
from .constructors import (  # noqa: E402
    Theorem1Params,
    VerifyConfig,
    esteves_homma,
    theorem1,
    translate_set,
    verify_all,
)
from .curves import (  # noqa: E402
    CurvePoint,
    EmbeddingReport,
    ParamCurve,
    derivative_vector,
    evaluate,
    from_affine,
    injectivity_unramified,
    nondegenerate,
)
from .fields import FieldElem, FieldSpec, arith, frobenius, lift, make_field, roots_of_unity  # noqa: E402
from .gauss import (  # noqa: E402
    GaussData,
    TangencyProfile,
    field_recovery_certificate,
    gauss_degree,
    tangency_profile_symbolic,
    tangency_sampled,
    tangent_line,
)
from .poly import Poly, RatFunc, compose_moebius, derivative, gcd_uni, shift  # noqa: E402
from .projective import PlueckerLine, ProjPoint, on_line, span_line  # noqa: E402
from .vspace import (  # noqa: E402
    Automorphism,
    VMembershipResult,
    invariant_pth_powers,
    nonclassical_check,
    order_of,
    v_membership,
    witness_quadratic,
)
