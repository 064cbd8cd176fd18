"""Broadcasting of NPT entanglement in two-qutrit states through local
symmetric universal cloning."""
from .qudit_core import (
    PSD_TOL,
    DensityMatrix,
    eigvals_hermitian,
    partial_trace,
    permute_subsystems,
    tensor,
)
from .states import (
    BlochDecomposition,
    IsotropicParams,
    NonPhysicalStateError,
    TpcsParams,
    bloch_decompose,
    bloch_reconstruct,
    gell_mann_basis,
    isotropic,
    max_entangled,
    tpcs,
    validate_density,
)
from .cloning import BroadcastOutputs, CloningIsometry, broadcast, cloning_isometry, nonlocal_bloch
from .separability import AbpptVerdict, PtVerdict, is_abppt, is_npt, partial_transpose
from .analysis import (
    Family,
    FamilyPoint,
    ScanRecord,
    ThresholdResult,
    evaluate_point,
    find_threshold,
    scan_isotropic,
    scan_tpcs,
)

__version__ = "0.1.0"
