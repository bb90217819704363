//! Presented finite simplicial sets in Eilenberg–Zilber normal form.
//!
//! A simplicial set is presented by its nondegenerate generators per level
//! together with a face table; every simplex is a value `(generator,
//! degeneracy word)` with a strictly decreasing word, and all operator
//! algebra is carried out on these normal forms.

mod join;
mod product;
mod simplex;
mod slice;
mod smap;
mod sset;
mod subset;

pub use join::{cone_right, join, JoinGen, JoinSset};
pub use product::{fiber_product, product, product_truncated, strip_common_degeneracies, PairedSset};
pub use simplex::{
    insert_degeneracy, monotone_is_surjective, GenId, MonotoneMap, Simplex,
};
pub use slice::{slice_over, slice_over_in, Slice};
pub use smap::SimplicialMap;
pub use sset::{
    standard_simplex, subset_name_of, vertex_array, FiniteSimplicialSet, Generator, OverDelta1,
    SsetBuilder,
};
pub use subset::{mask_difference_witness, pushout_check, subset_generated, SubsetMask};
