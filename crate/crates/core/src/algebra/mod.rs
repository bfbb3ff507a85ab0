//! Finite monoids, recognizing morphisms, the powerset monoid and the
//! stability index.

mod monoid;
mod morphism;
mod subset;

pub use monoid::{idempotent_power, FiniteMonoid};
pub use morphism::{common_morphism, transition_monoid, MonoidMorphism, RecognizedFamily};
pub use subset::ElementSet;
