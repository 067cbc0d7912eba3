//! Drinfeld associators and the Grothendieck–Teichmüller action on them.

mod assoc;
mod error;
mod interp;
mod twist;

pub use assoc::{
    check_axioms, check_duality, check_duality_taut, check_hexagon, check_pentagon, to_taut3,
    to_taut3_labelled, Associator, AxiomReport, Origin,
};
pub use error::AssocError;
pub use interp::{
    grt_flow, interpolate, interpolate_poly, iterated_integral, pexp_word_coefficient, pin_lambda,
    PinnedLambda, TauFamily,
};
pub use twist::{
    from_taut3, grt_infinitesimal_act, grt_twist_act, grt_twist_act_lie, grt_twist_act_taut,
    nu_embedding, twist_taut3,
};
