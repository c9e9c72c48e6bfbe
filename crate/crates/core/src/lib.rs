//! Combinatorial toolkit for toric origami templates and quasitoric characteristic pairs.
//!
//! The crate is organised bottom-up:
//!
//! * [`poset`]: simplicial posets (simplicial cell complexes), links, open stars,
//!   admissibility, sphere recognition in low dimension and poset isomorphism.
//! * [`weighted`]: characteristic functions into `Z^n / ±`, the unimodularity
//!   condition, proper four-colourings and suspension.
//! * [`surgery`]: connected sums along vertices, tree connected sums, slicings,
//!   width and an exhaustive fatness oracle.
//! * [`metric`]: the equilateral metric, isoperimetric constants with certified
//!   interval bounds, subdivided tetrahedra and Lipschitz estimates.
//! * [`delzant`]: exact rational simple polytopes in dimension ≤ 3.
//! * [`template`]: origami templates, orbit-space posets and induced templates.
//! * [`certify`]: the end-to-end non-origami certificate pipeline.

pub mod certify;
pub mod delzant;
pub mod metric;
pub mod poset;
pub mod surgery;
pub mod template;
pub mod weighted;

pub(crate) mod bits;

pub use poset::{PosetBuilder, SimplexId, SimplicialPoset};
pub use weighted::{CharacteristicFunction, SignClass, WeightedSphere};
