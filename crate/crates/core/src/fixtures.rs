//! Worked fillings used throughout the tests, the CLI examples and the
//! Python smoke test. Rows are given bottom-up.

use crate::filling::Filling;

/// Builds a filling from positive rows listed bottom-up. Panics on invalid input.
pub fn filling(rows_bottom_up: &[&[u32]]) -> Filling {
    Filling::from_rows(rows_bottom_up.iter().map(|r| r.to_vec()).collect())
        .expect("fixture rows form a filling")
}

/// Filling of shape (7,7,5,5,5,2) with `(maj, inv, quinv) = (33, 40, 32)`.
pub fn mixed_shape_sigma() -> Filling {
    filling(&[
        &[9, 3, 6, 5, 2, 10, 1],
        &[5, 8, 4, 6, 4, 8, 7],
        &[3, 9, 7, 3, 5],
        &[2, 5, 9, 4, 8],
        &[9, 3, 6, 1, 3],
        &[5, 4],
    ])
}

/// Image of [`mixed_shape_sigma`] under `gamma`.
pub fn mixed_shape_gamma() -> Filling {
    filling(&[
        &[1, 10, 2, 5, 6, 3, 9],
        &[7, 8, 4, 6, 4, 8, 5],
        &[3, 3, 5, 7, 9],
        &[4, 8, 9, 2, 5],
        &[3, 6, 1, 9, 3],
        &[4, 5],
    ])
}

/// Image of [`mixed_shape_sigma`] under `varphi`.
pub fn mixed_shape_varphi() -> Filling {
    filling(&[
        &[10, 1, 6, 2, 5, 9, 3],
        &[7, 8, 4, 4, 6, 8, 5],
        &[3, 3, 5, 7, 9],
        &[8, 4, 5, 9, 2],
        &[6, 3, 1, 3, 9],
        &[4, 5],
    ])
}

/// Two-column filling of height 6 on which `rho_1` flips rows 3 through 5.
pub fn flip_example() -> Filling {
    filling(&[&[9, 3], &[5, 8], &[3, 9], &[2, 5], &[9, 3], &[3, 3]])
}

/// Result of `rho_1` on [`flip_example`].
pub fn flip_example_image() -> Filling {
    filling(&[&[9, 3], &[5, 8], &[9, 3], &[5, 2], &[3, 9], &[3, 3]])
}

/// Two-column filling of height 3 with non-descent vector (1, 2).
pub fn involution_example() -> Filling {
    filling(&[&[3, 7], &[5, 4], &[1, 2]])
}

/// Image of [`involution_example`] under `phi_1`.
pub fn involution_example_image() -> Filling {
    filling(&[&[7, 3], &[5, 4], &[1, 2]])
}

/// Representative of a row class of shape (3,3,1) on which the triple
/// `(inv, quinv, maj)` is not symmetric.
pub fn asymmetric_class_rep() -> Filling {
    filling(&[&[3, 3, 3], &[4, 1, 2], &[3]])
}

/// Middle rows of the six members of [`asymmetric_class_rep`]'s class with
/// their `(maj, inv, quinv)`.
pub const ASYMMETRIC_CLASS_TABLE: [([u32; 3], (usize, usize, usize)); 6] = [
    ([4, 1, 2], (2, 0, 3)),
    ([4, 2, 1], (2, 1, 2)),
    ([1, 2, 4], (2, 2, 2)),
    ([1, 4, 2], (2, 1, 1)),
    ([2, 4, 1], (2, 2, 0)),
    ([2, 1, 4], (2, 3, 1)),
];
