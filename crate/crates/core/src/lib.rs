//! Exact counting of classical cusp forms with prescribed inertial types.
//!
//! The library computes, in exact arithmetic, the number of cuspidal newforms
//! over Q whose weight and whose inertial type at every prime are prescribed.
//! The pipeline is:
//!
//! * [`exactnum`] — arbitrary-precision rationals and cyclotomic field elements
//!   (all character values live here; there is no floating-point path),
//! * [`modgroup`] — the finite groups GL(2, Z/M) and SL(2, Z/M), their standard
//!   subgroups, projective-line actions and conjugacy classes,
//! * [`localtypes`] — the catalog of local inertial types of GL(2, Z_p) at
//!   bounded conductor, with exact character values via Mackey's formula and,
//!   for the wild 2-adic and 3-adic families, brute-force character theory,
//! * [`cohomology`] — the class of parabolic cohomology of Gamma(N) in the
//!   Grothendieck group of SL(2, Z/N), kept symbolic as a combination of
//!   inductions from the four standard subgroups,
//! * [`counting`] — global type assembly, multiplicities, inclusion-exclusion
//!   over special places, and the search for types with no attached newform,
//! * [`oracle`] — independent verification paths (classical dimension formulas
//!   and brute-force class-function decompositions) used by tests and the
//!   `selftest` command, never by the fast path.

pub mod cohomology;
pub mod counting;
pub mod exactnum;
pub mod localtypes;
pub mod modgroup;
pub mod oracle;

pub use exactnum::{Cyclotomic, Rational};

pub use counting::{CountReport, GlobalTypeSpec};
pub use localtypes::{LocalTypeChar, TypeKind};
pub use modgroup::{Mat2Mod, ProjPoint, SubgroupData};

