//! Graded pieces of the coordinate ring `S = k[x1,x2,x3]/(f)` and
//! Hom/Ext dimensions between line bundles.

use crate::lgroup::LElement;

/// `dim S_x`. A monomial basis is given by `x1^a x2^b x3^e` with `e < p3`,
/// and counting them gives `max(0, l + 1)` for the normal form `(..;l)`.
pub fn dim_s(x: LElement) -> i64 {
    (x.c_part() + 1).max(0)
}

/// `dim Hom(O(x), O(y)) = dim S_{y-x}`.
pub fn hom_dim_line(x: LElement, y: LElement) -> i64 {
    dim_s(y - x)
}

/// `dim Ext^1(O(x), O(y)) = dim Hom(O(y), O(x+w))` by Serre duality.
pub fn ext1_dim_line(x: LElement, y: LElement) -> i64 {
    dim_s(x + x.weights().omega() - y)
}
