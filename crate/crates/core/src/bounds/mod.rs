//! Vanishing orders, monomial-space counts, and an exact evaluator for the
//! dimension-counting inequality chain. Every verdict comes from rational
//! interval arithmetic; irrational roots are enclosed, never approximated.

mod chain;
mod interval;
mod vanishing;
mod volume;

pub use chain::{
    bernoulli_down_exact, bernoulli_up_exact, check_dim_counting, combine_helper_exact, final_bound, prime_powers,
    ratio_sweep, x_max, x_max_ratio, BoundInput, BoundReport, CChoice, Check, DimCountingReport, MpCount, RatioSweep,
    Regime, Step, SweepRow, STEP_NAMES,
};
pub use interval::{default_width, q_frac, q_int, root_enclosure, ser_q, Enclosure, Verdict, Q};
pub use vanishing::{
    vanishes_to_order, vanishing_lemma_instance, LineConstraint, VanishingOrder, VanishingReport, VanishingSetup,
};
pub use volume::{
    codim_cp_bound, codim_cp_enclosure, dim_v, dim_v_relative_error, vol_s, vol_s_expanded, vol_t, CodimBound, VolT,
};

use crate::poly::PolyError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BoundsError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("point is not on the line")]
    NotOnLine,
    #[error("line {0} is horizontal (parallel to x_d = 0)")]
    HorizontalLine(usize),
    #[error("linear system would have {entries} entries, above the cap of {cap}")]
    MatrixCap { entries: u64, cap: u64 },
    #[error(transparent)]
    Poly(#[from] PolyError),
}
