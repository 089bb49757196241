"""Majorana/Ising-anyon Clifford stabilizer codes from classical binary codes.

Layering: gf2 (bit-packed F2 linear algebra) -> qgeometry (the q-form and
isotropic subspaces) -> cliffordrep (exact Pauli/Majorana operator algebra)
-> stabcode (stabilizer codes, detection, distance) and qmetric (graph-metric
filtrations); cli ties everything to file formats and JSON reports.
"""

from .errors import CapacityError, NotIsotropicError, ParseError, PreconditionError
from .gf2 import (
    UNBOUNDED,
    BinaryCode,
    BitVector,
    WeightProfile,
    dual,
    dual_distance_by_columns,
    hamming_dual,
    make_code,
    min_distance,
)
from .qgeometry import (
    ParityClass,
    QSubspace,
    classify,
    even_subcode,
    extend,
    is_q_isotropic,
    isotropy_witness,
    puncture,
    q_complement,
    q_form,
    random_all_even_self_orthogonal,
    search_self_orthogonal,
)
from .cliffordrep import (
    TAU,
    DenseOperator,
    GaussianRational,
    OperatorSum,
    PauliTerm,
    braid_unitary,
    chirality_split,
    commutation_sign,
    gamma_of,
    majorana,
    parity_operator,
    realize,
)
from .stabcode import (
    NO_LOGICAL,
    CheckResult,
    DetectVerdict,
    StabilizerCode,
    build_code,
    build_hamming_subspace,
    clifford_distance,
    code_report,
    dense_verdict,
    detect,
    run_verification,
)
from .qmetric import (
    FiltrationReport,
    GeneratingSet,
    IsometryResult,
    filtration,
    gen_full_clifford,
    gen_quantum_hamming,
    gen_semispinorial,
    gen_spinorial,
    isometry_check,
)
from .codefile import format_code, parse_code, read_code, write_code

__version__ = "0.1.0"
