"""Group-ring NTRU over dihedral groups and the half-dimension lattice attack.

The toolkit covers exact group-ring arithmetic, the encryption scheme, the
associated NTRU lattices and their dihedral splitting, exact-arithmetic basis
reduction, the two key-recovery attacks, and a reproducible experiment
harness.
"""

from .attack import (
    AttackOutcome,
    is_decryption_key,
    key_norm,
    naive_attack,
    pullback_attack,
)
from .errors import (
    DimensionError,
    GrntruError,
    KeygenExhausted,
    MessageRangeError,
    NotFound,
    NotInLattice,
    NotInvertible,
    ParameterError,
    RankError,
    ReductionError,
    StructureError,
    UnsupportedGroup,
    UnsupportedModulus,
)
from .group_ring import (
    GroupRingElement,
    GroupSpec,
    centered_lift,
    element,
    gr_add,
    gr_mul,
    gr_scalar_mul,
    invert_mod_power_of_two,
    invert_mod_prime,
    one,
    rotate,
    to_matrix,
    zero,
)
from .harness import (
    ExperimentConfig,
    TrialRecord,
    compare_cyclic_baseline,
    derive_cyclic_params,
    derive_params,
    run_experiment,
)
from .lattice import (
    IntegerLattice,
    LatticeVectorPair,
    block_diagonalize,
    build_ntru_lattice,
    build_sublattices,
    enumerate_rotation_orbit,
    full_lattice_sigma,
    gaussian_heuristic,
    membership_check,
    pull_back,
    split_public_key,
    sublattice_sigma,
)
from .ntru import (
    Ciphertext,
    KeyPair,
    NtruParams,
    decrypt,
    encrypt,
    keygen,
    keypair_from_secret,
    sample_ternary,
    validate_params,
)
from .reduction import (
    ReducedBasis,
    ReductionConfig,
    bkz_reduce,
    lll_reduce,
    reduce_basis,
    svp_enumerate,
)

__version__ = "0.1.0"
