"""Exact symbolic computation for algebras graded by an abelian group with
a skew-symmetric bicharacter symmetry.

The package is organized bottom-up:

- ``scalars``: exact cyclotomic arithmetic over the rationals.
- ``colors``: abelian groups, bicharacters, braiding scalars.
- ``linalg``: graded bases, vectors, exact row reduction, kernels.
- ``algebras``: structure-constant algebras, identity checkers, the
  alternative nucleus, Grassmann envelopes, and identity transfer.
- ``envelopes``: degree-truncated presented quotients (associative words
  and magma trees), the Hopf structure with its triality symmetries, the
  Moufang image with its star product, and the comparison map between the
  two envelope constructions.
- ``fixtures``: bundled example algebras and TOML definition files.
- ``cli``: batch front end with deterministic reports and exit codes.
"""

__version__ = "0.1.0"

from .errors import (
    BasisMismatch,
    ColorEnvError,
    ColorMismatch,
    DefinitionError,
    DegreeOverflow,
    DimensionMismatch,
    DivisionByZero,
    ElementGroupMismatch,
    GroupTooLarge,
    NotInMH,
    RootOrderMismatch,
    SizeMismatch,
    Truncated,
)
from .scalars import CycScalar, format_scalar, parse_scalar, root_of_unity
from .colors import (
    AbelianGroup,
    Bicharacter,
    Color,
    check_skew,
    chi_eval,
    enumerate_bicharacters,
    parity,
    perm_scalar,
)
from .linalg import (
    GradedBasis,
    GradedMap,
    GradedVector,
    RowSpace,
    braid,
    kernel_basis,
    tensor_basis,
)
from .report import CheckReport
from .algebras import (
    ColorAlgebra,
    GrassmannAlgebra,
    associator,
    bracket_chi,
    cayley_dickson_algebra,
    check_color_alternative,
    check_color_antisymmetry,
    check_color_jacobi,
    check_malcev_color,
    color_nucleus,
    envelope,
    identity_transfer_check,
    m7_algebra,
    minus_algebra,
    octonion_algebra,
    product,
    sedenion_algebra,
    span_subalgebra,
)
from .envelopes import (
    HopfEnvelope,
    MoufangImage,
    TruncatedQuotient,
    build_truncated_quotient,
    build_ULM,
    build_UM,
    bullet,
    check_bracket_table,
    check_hopf_axioms,
    check_hopf_triality,
    check_moufang,
    check_s3,
    check_saturation_stability,
    elem_add,
    elem_scale,
    elem_sub,
    mh_basis,
    phi_map,
    primitives,
    star,
)

__all__ = [name for name in dir() if not name.startswith("_")]
