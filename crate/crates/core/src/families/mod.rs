//! Closed forms for the worked families, the sum rule for pole sets and
//! membership in the known pole sets.

pub mod poleset;
pub mod sum_squares;
pub mod x2ayl;
pub mod xyzi;

pub use poleset::{combine_sum_poles, theorem_membership, PoleSet};
pub use sum_squares::{zeta_sum_squares, SumSquares};
pub use x2ayl::{is_square_qp, zeta_x2_ayl, X2Ayl};
pub use xyzi::zeta_xy_zi;
