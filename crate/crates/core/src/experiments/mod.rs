//! CHSH-versus-exponent sweep on the Bell state, and the search for
//! order-independent observables on general entangled states.

mod plot;
mod search;
mod sweep;

pub use plot::{emit_sweep_csv, emit_sweep_svg, sweep_csv, sweep_svg};
pub use search::{nco_observable_search, ObservableSearch, FEASIBLE_RESIDUAL};
pub use sweep::{bell_chsh_box, chsh_sweep, closed_form_chsh, SweepRow};
