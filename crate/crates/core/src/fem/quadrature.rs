//! Symmetric 6-point rule on triangles, exact for polynomials of degree 4.

const A1: f64 = 0.445_948_490_915_964_9;
const W1: f64 = 0.223_381_589_678_011_47;
const A2: f64 = 0.091_576_213_509_770_74;
const W2: f64 = 0.109_951_743_655_321_87;

/// Barycentric coordinates and weights relative to the triangle area.
pub const POINTS: [([f64; 3], f64); 6] = [
    ([A1, A1, 1.0 - 2.0 * A1], W1),
    ([A1, 1.0 - 2.0 * A1, A1], W1),
    ([1.0 - 2.0 * A1, A1, A1], W1),
    ([A2, A2, 1.0 - 2.0 * A2], W2),
    ([A2, 1.0 - 2.0 * A2, A2], W2),
    ([1.0 - 2.0 * A2, A2, A2], W2),
];

/// Physical coordinates of barycentric point `l` in the triangle `p`.
#[inline]
pub fn map(p: &[[f64; 2]; 3], l: &[f64; 3]) -> [f64; 2] {
    [
        l[0] * p[0][0] + l[1] * p[1][0] + l[2] * p[2][0],
        l[0] * p[0][1] + l[1] * p[1][1] + l[2] * p[2][1],
    ]
}
