//! Sparse tensors with blocked structure: classification of triangular and
//! diagonal blocked patterns, the general tensor product, closed-form
//! determinants and spectra, left and right inverses, M-tensor tests, and
//! reducibility normal forms.
//!
//! Indices are 0-based throughout the library. The JSON formats in [`io`]
//! are 1-based.

pub mod blocked;
pub mod error;
pub mod graph;
pub mod inverse;
pub mod io;
pub mod matrix;
pub mod mtensor;
pub mod product;
pub mod spectra;
pub mod structure;
pub mod tensor;

pub use blocked::{
    blocked_partitions, compositions, diagonal_blocks, is_blocked, BlockKind, Partition,
};
pub use error::{Error, Result};
pub use inverse::{
    has_left_inverse, left_k_inverse, recover_right_form, right_k_inverse, verify_inverse,
    RightFormRecovery, Side,
};
pub use matrix::Matrix;
pub use mtensor::{
    classify_m_tensor, is_m_tensor, is_nonsingular_m_tensor, is_positive_tensor, is_z_tensor,
    z_split, MClassification, ZSplit,
};
pub use product::shao_product;
pub use spectra::{
    blocked_det_formula, det_blocked, det_diagonal, det_dim1, singularity_oracle, spectral_radius,
    spectrum_blocked, Determinant, OracleReport, SpectralResult, SpectrumFactored, SpectrumItem,
    DEFAULT_ORACLE_ITERS, DEFAULT_ORACLE_RESTARTS,
};
pub use structure::{
    exists_first_type_normal_form, find_reducing_set, find_weakly_reducing_set, is_irreducible,
    is_reducing_set, is_weakly_irreducible, is_weakly_reducing_set, normal_form_2nd,
    normal_form_3rd, reducing_to_utb, Hypergraph, NormalForm,
};
pub use tensor::{all_tuples, IndexSet, Permutation, Tensor};
