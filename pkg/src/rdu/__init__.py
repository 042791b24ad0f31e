"""rdu: reverse decomposition of unipotents.

Construct and verify explicit bounded factorizations of elementary
transvections t_kl(a * sigma_ij * b) as products of elementary-group
conjugates of sigma and sigma^-1, over an exact ring catalogue; plus an
exhaustive search certifying the optimal bound over GL_3(F_2) and
GL_3(F_3).
"""

__version__ = "0.1.0"

from .errors import (
    CapabilityError,
    HypothesisError,
    IntegrityError,
    NotUnimodularError,
    NoWitnessError,
    ParseError,
    PreconditionError,
    RduError,
    RingMismatchError,
    UnsupportedSizeError,
)
from .factorizer import (
    ALL_CLASSES,
    Factorization,
    RelationWitness,
    VerifyReport,
    extract_almost_commutative,
    extract_core,
    extract_corollary,
    extract_diag_difference,
    extract_offdiag,
    verify_factorization,
)
from .matgroup import (
    ElemWord,
    GLElement,
    Matrix,
    eval_word,
    invert_matrix,
    perm_word,
    random_invertible,
    route,
    transvection,
    word_inverse,
)
from .reduction import ConjProduct, Pair, expand_conjugates, reduce_chain, reduce_step, split_commutator
from .rings import CentralMultipleWitness, El, Ring, parse_ring

__all__ = [name for name in dir() if not name.startswith("_")]
