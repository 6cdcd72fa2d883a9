//! Finite quandles and biquandles, colorings of oriented link diagrams, the
//! explicit bijection between biquandle colorings and colorings by the derived
//! quandle, and biquandle / shadow quandle cocycle state sums.
//!
//! The pieces, bottom-up:
//!
//! - [`algebra`]: operation tables, axiom checks, the derived quandle `Q(X)`,
//!   the kink map, the census of small biquandles and functional (infinite
//!   carrier) biquandles checked by sampling.
//! - [`diagram`]: PD-style crossing codes, arcs, faces and specified regions,
//!   plus packaged Reidemeister move fixtures.
//! - [`coloring`]: backtracking enumeration, a brute-force oracle, and region /
//!   shadow colorings represented through action states.
//! - [`correspondence`]: the maps `Psi` and `Phi` and their word-level lifts.
//! - [`cocycle`]: cocycle conditions, coboundaries, enumeration of 2-cocycles
//!   and the two state-sum invariants.
//! - [`catalog`], [`io`], [`verify`]: named instances, JSON formats and the
//!   verification suites used by the CLI and the acceptance tests.

pub mod algebra;
pub mod catalog;
pub mod cocycle;
pub mod coloring;
pub mod correspondence;
pub mod diagram;
mod error;
pub mod io;
pub mod verify;

pub use error::{Error, Result};
