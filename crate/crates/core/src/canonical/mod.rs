//! Canonical maps between iterated tangent and cotangent bundles, their
//! graded versions on exterior powers, and the diagram checks built on them.

pub mod diagrams;
pub mod fiber;
pub mod maps;
pub mod structures;

pub use diagrams::{Comparison, Containment, Naturality};
pub use fiber::{Bundle, FiberPoint, PointComps};
pub use maps::{
    flip, forms_swap, forms_unswap, graded_flip, graded_flip_dual, graded_forms_unswap, graded_forms_unswap_dual,
    pairing, tangent_pairing,
};
pub use structures::{canonical_poisson, canonical_symplectic, cotangent_chart, liouville_form};
