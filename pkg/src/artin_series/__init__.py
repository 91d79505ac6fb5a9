"""Power series over zero-dimensional rings built from Artinian pieces.

Everything is exact (rationals or prime fields) and every series identity
holds below a stated total-degree truncation.
"""

from .artinian import (
    AlgebraElement,
    ArtinianAlgebra,
    MaximalIdealDesc,
    ProductAlgebra,
    certify_field,
    is_zero_divisor,
    maximal_ideals,
    minimal_polynomial,
    present,
    present_product,
    present_tower,
    residue_field,
)
from .errors import *  # noqa: F401,F403
from .examples import ExampleRingWindow, non_sft_scan, sft_witness, wb_failure_check
from .family import (
    DirectedFamily,
    GeneratorStream,
    SubringHandle,
    builtin_family,
    integrality_witness,
    join,
    non_noetherian_chain,
    subring,
)
from .flatcert import FlatCertificate, RelationInstance, random_relation, solve, survival_check, verify_certificate
from .idealkit import (
    FgIdeal,
    associated_primes_monomial,
    cgrade,
    height_monomial,
    is_regular_sequence,
    prime_chain,
    replace_with_regular,
    truncated_membership,
    verify_unmixed,
)
from .scenario import list_builtins, load_scenario, run_scenario
from .series import (
    ExtIdealDesc,
    SeriesContext,
    SeriesElement,
    ext_membership,
    minimal_primes,
    quotient_presentation,
    residue_map,
)

__version__ = "0.1.0"
