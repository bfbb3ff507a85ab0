//! Separation and covering deciders with certificate checking.
//!
//! Every positive verdict carries a certificate that was re-checked with
//! automata operations before being returned, and every negative verdict a
//! witness that was re-checked against the inputs.

mod brute;
mod first_order;
mod modular;
mod pointlike;
mod suffix;
mod verdict;

pub use brute::{
    brute_force_refuter, brute_force_separator, cover_mod_bounded, residues_by_product,
    separate_mod_bounded, su_hull_by_enumeration, suffix_set, Stratum,
};
pub use first_order::{
    aperiodicity_oracle, cover_fo, cover_fomod, decide_fo, quasi_aperiodicity_oracle, separate_fo,
    separate_fomod,
};
pub use modular::{cover_mod, residue_language, separate_mod, verify_mod_cover, LengthProfile};
pub use pointlike::{fo_pointlikes, omega_saturation, PointlikeFamily};
pub use suffix::{cover_su, separate_su, su_closure};
pub use verdict::{Certificate, Class, Outcome, Problem, Verdict, Witness};
