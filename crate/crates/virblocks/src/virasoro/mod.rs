//! Virasoro Verma modules, first-row quotients, fusion data and the
//! reduction of descendant matrix elements.

pub mod beta;
pub mod reduce;
pub mod selection;
pub mod singular;
pub mod verma;

pub use beta::{beta_coef, BetaCoef, GammaArg, GammaProductJson};
pub use reduce::{matrix_element_reduce, nested_reduce, Chain, Geometry, Nested, Reducer};
pub use selection::{fusion_allowed, fusion_set, selection_polynomial, SelectionPoly};
pub use singular::{bsa_coefficient, compositions, echelon, quotient_dim, quotient_reduce, singular_vector};
pub use verma::{act_l, central_charge, h_weight, hw_pairing, ModuleLabel, Partition, Straightener, VermaVector};
