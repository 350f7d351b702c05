//! Small named bitrades used by tests, the verifier and the FFI.

use crate::bitrade::{validate_bitrade, Bitrade, Triple};

/// `(row, [(col, sym)])` rows of a partial array.
type Rows<'a> = &'a [(u32, &'a [(u32, u32)])];

fn from_rows(star: Rows<'_>, delta: Rows<'_>) -> Bitrade {
    let expand = |rows: Rows<'_>| -> Vec<Triple> {
        rows.iter()
            .flat_map(|&(r, cells)| cells.iter().map(move |&(c, s)| Triple::new(r, c, s)))
            .collect()
    };
    validate_bitrade(expand(star), expand(delta)).expect("catalog bitrade is valid")
}

/// The smallest bitrade: a 2×2 intercalate.
pub fn intercalate() -> Bitrade {
    from_rows(
        &[(0, &[(0, 0), (1, 1)]), (1, &[(0, 1), (1, 0)])],
        &[(0, &[(0, 1), (1, 0)]), (1, &[(0, 0), (1, 1)])],
    )
}

/// A 4×5 spherical bitrade of size 12 whose τ cycles are known in closed form.
pub fn spherical_example() -> Bitrade {
    from_rows(
        &[
            (0, &[(0, 0), (2, 2), (4, 4)]),
            (1, &[(3, 4), (4, 2)]),
            (2, &[(0, 1), (1, 3), (2, 0), (3, 2)]),
            (3, &[(0, 4), (1, 1), (3, 3)]),
        ],
        &[
            (0, &[(0, 4), (2, 0), (4, 2)]),
            (1, &[(3, 2), (4, 4)]),
            (2, &[(0, 0), (1, 1), (2, 2), (3, 3)]),
            (3, &[(0, 1), (1, 3), (3, 4)]),
        ],
    )
}

/// A 4×5 spherical bitrade of size 12 whose pointed solution at
/// `(r0, c0, s4)` is a separated 12-triangle dissection.
pub fn example_two() -> Bitrade {
    from_rows(
        &[
            (0, &[(0, 4), (2, 0), (4, 2)]),
            (1, &[(3, 2), (4, 4)]),
            (2, &[(0, 0), (1, 1), (2, 2), (3, 3)]),
            (3, &[(0, 1), (1, 3), (3, 4)]),
        ],
        &[
            (0, &[(0, 0), (2, 2), (4, 4)]),
            (1, &[(3, 4), (4, 2)]),
            (2, &[(0, 1), (1, 3), (2, 0), (3, 2)]),
            (3, &[(0, 4), (1, 1), (3, 3)]),
        ],
    )
}

/// Anchor used with [`example_two`].
pub const EXAMPLE_TWO_ANCHOR: Triple = Triple::new(0, 0, 4);

/// Separated bitrade recovered from the nine-triangle grid dissection by
/// giving fresh labels to the column and symbol segments below its
/// degree-6 vertex.
pub fn degree_six_recovered() -> Bitrade {
    from_rows(
        &[
            (0, &[(0, 2), (2, 3), (3, 0)]),
            (1, &[(0, 0), (1, 1), (2, 2), (3, 3)]),
            (2, &[(0, 1), (1, 2)]),
        ],
        &[
            (0, &[(0, 0), (2, 2), (3, 3)]),
            (1, &[(0, 1), (1, 2), (2, 3), (3, 0)]),
            (2, &[(0, 2), (1, 1)]),
        ],
    )
}

/// `T* = {(i, j, i+j)}`, `T△ = {(i, j, i+j+1)}` over Z3: a toroidal bitrade.
pub fn cyclic_z3() -> Bitrade {
    let star = (0..3).flat_map(|i| (0..3).map(move |j| Triple::new(i, j, (i + j) % 3)));
    let delta = (0..3).flat_map(|i| (0..3).map(move |j| Triple::new(i, j, (i + j + 1) % 3)));
    validate_bitrade(star, delta).expect("cyclic bitrade is valid")
}
