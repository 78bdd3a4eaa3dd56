//! U_q(sl2) irreps, tensor products, Clebsch–Gordan maps, 6j symbols and
//! conformal-block vectors, exact in Q(q).

pub mod blocks;
pub mod cg;
pub mod sixj;
pub mod vector;

pub use blocks::{admissible_sequences, conformal_block_vector, highest_weight_space, is_admissible};
pub use cg::{cg_embed, cg_project, cg_projector, in_selection, selection_set, LinearMap};
pub use sixj::{sixj, sixj_table, SixJTable};
pub use vector::{act_generator, Gen, QGVector};
