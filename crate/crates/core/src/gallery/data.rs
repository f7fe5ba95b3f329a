//! Printed integer matrices, one string per linear form.

pub type Rows = &'static [&'static [&'static str]];

pub const SEGRE: Rows = &[&["x0", "x3"], &["x1", "x4"], &["x2", "x5"]];

pub const SEGRE_B: Rows = &[&["x0", "x1", "x2", "0", "0", "0"], &["0", "0", "0", "x0", "x1", "x2"]];

pub const TODD_ROOM: Rows = &[
    &["-2x1+x0", "-2x2+x0", "2x0", "-x1-x4"],
    &["x3+x0", "-x1+x2", "x1-2x3", "2x2-x3"],
    &["-x1-x3", "-x3+2x4", "-2x4+x0", "x1-x0"],
    &["-2x1+x4", "-x2-x0", "x2+x3", "x2+x4"],
    &["x3", "x4", "x3", "x4"],
];

/// Columns ordered x1, x2, x3, x4, x0.
pub const TODD_ROOM_B: Rows = &[
    &["-2x0-x2-2x3", "0", "x1-x2+x4", "x3", "x0+x1"],
    &["-x1", "-2x0+x1-x3", "-x2", "2x2+x4", "x0-x3"],
    &["x1", "x3", "-2x1+x3+x4", "-2x2", "2x0+x2"],
    &["-x0+x2", "2x1+x3", "-x1", "-x0+x3+x4", "-x2"],
];

const QUINTO_TOP: [&[&str]; 5] = [
    &["-2x1-2x4", "-2x1+x5-x0", "-x2+x5-x0", "x3-2x4+2x0", "-2x2+2x4"],
    &["2x2+x0", "2x2-2x0", "x2-x3-x4", "-x1+x2", "-2x3+2x4"],
    &["x4+x5", "-x4+x5+x0", "x1+2x0", "-x2-2x5+x0", "x1+x5"],
    &["-x3-x0", "-2x1+x3", "-2x1+x4", "-x2+x4", "-x1-x3-2x5"],
    &["x1+x3-2x5", "x3-2x5", "-2x3+2x5", "x1+2x5", "x2-x0"],
];

pub const QUINTO_PLANE: Rows =
    &[QUINTO_TOP[0], QUINTO_TOP[1], QUINTO_TOP[2], QUINTO_TOP[3], QUINTO_TOP[4], &["x4", "x5", "x4", "x5", "x4"]];

pub const QUINTO_SOLID: Rows =
    &[QUINTO_TOP[0], QUINTO_TOP[1], QUINTO_TOP[2], QUINTO_TOP[3], QUINTO_TOP[4], &["x4", "x5", "x3", "x5", "x4"]];

pub const CONIC_GENERAL: Rows = &[
    &["x1+x4", "x1+x5-x0", "-x2+x5-x0", "x3+x4-x0"],
    &["-x2+x0", "-x2+x0", "x2-x3-x4", "-x1+x2"],
    &["x4+x5", "-x4+x5+x0", "x1-x0", "-x2+x5+x0"],
    &["-x3-x0", "x1+x3", "x1+x4", "-x2+x4"],
    &["x1+x3+x5", "x3+x5", "x3-x5", "x1-x5"],
];

pub const CONIC_GENERAL_B: Rows = &[
    &["x0+x4", "-x1", "-x3+x4", "x0+x2", "x2+x4", "x1-x3"],
    &["x0+x3", "-x1", "x3+x4", "-x2", "x0+x2+x4", "-x0+x1+x2"],
    &["x2+x3", "-x0+x1", "-x1+x4", "-x1+x3", "x0-x4", "-x0-x2"],
    &["-x1+x4", "x1-x2-x3", "x0", "x0+x3", "x2-x4", "-x0+x2"],
];

pub const CONIC_SPECIAL: Rows = &[
    &["x1+x2+x4+x5", "x1-x5-x0", "-x2+x5-x0", "x3+x4-x0"],
    &["-x2+x0", "-x2+x3+x0", "x2-x3-x4", "-x1+x2-x5"],
    &["x1+x3+x4+x5", "-x4+x5+x0", "x1+x3-x0", "x1-x2+x5+x0"],
    &["-x3-x0", "x1+x3", "x1+x4-x5", "-x2+x4"],
    &["x4", "x5", "x4", "x5"],
];
