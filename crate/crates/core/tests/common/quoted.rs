//! Values quoted in the source material for the `p = 3` Fibonacci ring.
//! Index `i` stands for `F_i`; `None` stands for `0`.

/// `F_0 .. F_7` as `(a, b, c, d)` for `a + b i + c j + d k`.
pub const QUATERNIONS: [[u32; 4]; 8] = [
    [0, 1, 1, 2],
    [1, 1, 2, 0],
    [1, 2, 0, 2],
    [2, 0, 2, 2],
    [0, 2, 2, 1],
    [2, 2, 1, 0],
    [2, 1, 0, 1],
    [1, 0, 1, 1],
];

/// The 32 explicitly listed products `F_a F_b`.
pub const PRODUCTS: [(usize, usize, Option<usize>); 32] = [
    (1, 0, Some(4)),
    (1, 1, Some(5)),
    (1, 2, Some(6)),
    (1, 3, Some(7)),
    (1, 4, Some(0)),
    (1, 5, Some(1)),
    (1, 6, Some(2)),
    (1, 7, Some(3)),
    (2, 0, Some(4)),
    (2, 1, Some(5)),
    (2, 2, Some(6)),
    (2, 3, Some(7)),
    (2, 4, Some(0)),
    (2, 5, Some(1)),
    (2, 6, Some(2)),
    (2, 7, Some(3)),
    (3, 0, Some(0)),
    (3, 1, Some(1)),
    (3, 2, Some(2)),
    (3, 3, Some(3)),
    (3, 4, Some(4)),
    (3, 5, Some(5)),
    (3, 6, Some(6)),
    (3, 7, Some(7)),
    (7, 0, Some(4)),
    (7, 1, Some(5)),
    (7, 2, Some(6)),
    (7, 3, Some(7)),
    (7, 4, Some(0)),
    (7, 5, Some(1)),
    (7, 6, Some(2)),
    (7, 7, Some(3)),
];

/// Rows given by a rule: `F_0 F_i = F_4 F_i = 0`, `F_5 F_i = F_6 F_i = F_i`.
pub const ZERO_ROWS: [usize; 2] = [0, 4];
pub const IDENTITY_ROWS: [usize; 2] = [5, 6];

/// The 36 listed sums `F_a + F_b` (with `a == b` for `2 F_a`), in the order
/// they are printed.
pub const SUMS: [(usize, usize, Option<usize>); 36] = [
    (0, 0, Some(4)),
    (0, 1, Some(2)),
    (0, 2, Some(7)),
    (0, 3, Some(6)),
    (0, 4, None),
    (0, 5, Some(3)),
    (0, 6, Some(5)),
    (0, 7, Some(1)),
    (1, 1, Some(5)),
    (1, 2, Some(3)),
    (1, 3, Some(0)),
    (1, 4, Some(7)),
    (1, 5, None),
    (1, 6, Some(4)),
    (1, 7, Some(6)),
    (2, 2, Some(6)),
    (2, 3, Some(4)),
    (2, 4, Some(1)),
    (2, 5, Some(0)),
    (2, 6, None),
    (2, 7, Some(5)),
    (3, 3, Some(7)),
    (3, 4, Some(5)),
    (3, 5, Some(2)),
    (3, 6, Some(1)),
    (3, 7, None),
    (4, 4, Some(0)),
    (4, 5, Some(6)),
    (4, 6, Some(0)),
    (4, 7, Some(2)),
    (5, 5, Some(1)),
    (5, 6, Some(7)),
    (5, 7, Some(4)),
    (6, 6, Some(2)),
    (6, 7, Some(0)),
    (7, 7, Some(3)),
];

/// The quoted sum that contradicts coordinatewise addition:
/// `F_4 + F_6 = (2,3,2,2) = (2,0,2,2) = F_3`, printed as `F_0`.
pub const INCONSISTENT_SUM: (usize, usize, Option<usize>) = (4, 6, Some(0));

pub const NILPOTENT: [usize; 2] = [0, 4];
pub const IDEMPOTENT: [usize; 3] = [3, 5, 6];
pub const TRIPOTENT: [usize; 3] = [1, 2, 7];
