//! Named weight matrices used throughout the tests and documentation.

use crate::field::WeightMatrix;

/// Diagonal field of Gr(3,6): apexes on a slope-2 line, line 1 rightmost.
pub fn mdiag6() -> WeightMatrix {
    WeightMatrix::from_ints(&[0; 6], &[6, 5, 4, 3, 2, 1], &[11, 9, 7, 5, 3, 1]).unwrap()
}

/// Three lines with apexes (0,0), (1,2), (2,4).
pub fn fig2() -> WeightMatrix {
    WeightMatrix::from_ints(&[0; 3], &[0, 1, 2], &[0, 2, 4]).unwrap()
}

/// Five lines; the pair (3, 4) satisfies every clause of the swap condition
/// with red = {1}, purple = {2}, yellow = {5}.
pub fn f5() -> WeightMatrix {
    WeightMatrix::from_ints(&[0; 5], &[-2, -3, 0, 2, 4], &[-12, 2, 0, 4, 8]).unwrap()
}

/// `f5` without line 5: the pair (3, 4) has no green or yellow line.
pub fn f5_one_sided() -> WeightMatrix {
    WeightMatrix::from_ints(&[0; 4], &[-2, -3, 0, 2], &[-12, 2, 0, 4]).unwrap()
}

/// `f5` with line 1 moved to (-2, -3): moving line 3 past line 4 crosses
/// the diagonal ray of line 1 for every admissible offset.
pub fn f5_unswappable() -> WeightMatrix {
    WeightMatrix::from_ints(&[0; 5], &[-2, -3, 0, 2, 4], &[-3, 2, 0, 4, 8]).unwrap()
}
