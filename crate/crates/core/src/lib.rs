//! Exact construction of the coend semibialgebra `End∨U` of a split
//! semigroupal functor on a finite presentation, its endomorphism `S`, and
//! checks of the VN-core axioms and the side conditions on the input.

pub mod coend;
pub mod exactla;
pub mod fincat;
pub mod format;
pub mod instances;
pub mod report;
pub mod vncore;

pub use coend::{compute_endv, CoendSpace};
pub use exactla::{Field, Matrix, Scalar};
pub use fincat::Instance;
pub use report::{Report, Status};
pub use vncore::VnCore;
