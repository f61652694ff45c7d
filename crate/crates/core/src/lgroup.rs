//! The rank-one abelian grading group `L` of a weight triple.
//!
//! `L` is generated by `x1, x2, x3` subject to `p1*x1 = p2*x2 = p3*x3 = c`.
//! Every element has a unique normal form `l1*x1 + l2*x2 + l3*x3 + l*c`
//! with `0 <= li < pi`, and [`LElement`] only ever stores that form.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A point of the projective line carrying a weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BranchPoint {
    Infinity,
    Finite(i64),
}

/// Weights `(p1, p2, p3)` of a weighted projective line with three
/// exceptional points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightTriple {
    p: [i64; 3],
    lcm: i64,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

impl WeightTriple {
    pub fn new(p1: i64, p2: i64, p3: i64) -> Result<Self> {
        let p = [p1, p2, p3];
        if p.iter().any(|&w| w < 2) {
            return Err(Error::InvalidWeight(p.to_vec()));
        }
        let lcm = p.iter().fold(1, |acc, &w| acc / gcd(acc, w) * w);
        Ok(WeightTriple { p, lcm })
    }

    /// Builds a triple from an arbitrary weight sequence; anything but
    /// three weights is rejected.
    pub fn from_slice(weights: &[i64]) -> Result<Self> {
        match weights {
            [a, b, c] => Self::new(*a, *b, *c),
            _ => Err(Error::WrongArity(weights.len())),
        }
    }

    pub fn weights(&self) -> [i64; 3] {
        self.p
    }

    /// Weight `p_i` for a branch index `i` in `0..3`.
    pub fn p(&self, i: usize) -> i64 {
        self.p[i]
    }

    pub fn lcm(&self) -> i64 {
        self.lcm
    }

    /// Canonical branch points `(inf, 0, 1)`. Nothing downstream reads them.
    pub fn branch_points(&self) -> [BranchPoint; 3] {
        [BranchPoint::Infinity, BranchPoint::Finite(0), BranchPoint::Finite(1)]
    }

    /// True for the tubular types `{2,4,4}`, `{2,3,6}`, `{3,3,3}` in any order.
    pub fn is_genus_one(&self) -> bool {
        let mut s = self.p;
        s.sort_unstable();
        matches!(s, [2, 4, 4] | [2, 3, 6] | [3, 3, 3])
    }

    pub fn zero(&self) -> LElement {
        LElement { w: *self, l: [0; 3], c: 0 }
    }

    /// Unique normal form of `a[0]*x1 + a[1]*x2 + a[2]*x3 + a_c*c`.
    pub fn normalize(&self, a: [i64; 3], a_c: i64) -> LElement {
        let mut l = [0; 3];
        let mut c = a_c;
        for i in 0..3 {
            l[i] = a[i].rem_euclid(self.p[i]);
            c += a[i].div_euclid(self.p[i]);
        }
        LElement { w: *self, l, c }
    }

    /// Generator `x_i`, with `i` in `0..3`.
    pub fn x(&self, i: usize) -> LElement {
        let mut a = [0; 3];
        a[i] = 1;
        self.normalize(a, 0)
    }

    pub fn c(&self) -> LElement {
        self.normalize([0; 3], 1)
    }

    /// Dualizing element `w = c - x1 - x2 - x3`.
    pub fn omega(&self) -> LElement {
        self.normalize([-1, -1, -1], 1)
    }

    /// `xbar_i = x_i + w`.
    pub fn xbar(&self, i: usize) -> LElement {
        self.x(i) + self.omega()
    }

    /// `2w + c`, the top corner of the tilting cuboid.
    pub fn cuboid_top(&self) -> LElement {
        self.omega() * 2 + self.c()
    }

    /// All `x` with `lo <= x <= hi`, provided `hi - lo` is a non-negative
    /// combination of the `x_i` without a `c` part. Lexicographic in the
    /// normal-form coefficients of `x - lo`.
    pub fn box_points(&self, lo: LElement, hi: LElement) -> Result<Vec<LElement>> {
        let d = hi - lo;
        if d.c != 0 {
            return Err(Error::NotABox { lo: lo.to_string(), hi: hi.to_string() });
        }
        let mut out = Vec::new();
        for a in 0..=d.l[0] {
            for b in 0..=d.l[1] {
                for e in 0..=d.l[2] {
                    out.push(lo + self.normalize([a, b, e], 0));
                }
            }
        }
        Ok(out)
    }

    /// `{x : 0 <= x <= 2w+c}`, the index set of the tilting cuboid.
    pub fn cuboid(&self) -> Vec<LElement> {
        self.box_points(self.zero(), self.cuboid_top())
            .expect("2w+c has no c part")
    }

    /// Every element with `|l| <= radius`, ordered by `(l, l1, l2, l3)`.
    pub fn window(&self, radius: i64) -> Vec<LElement> {
        let mut out = Vec::new();
        for c in -radius..=radius {
            for a in 0..self.p[0] {
                for b in 0..self.p[1] {
                    for e in 0..self.p[2] {
                        out.push(LElement { w: *self, l: [a, b, e], c });
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for WeightTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.p[0], self.p[1], self.p[2])
    }
}

impl Serialize for WeightTriple {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.p.serialize(s)
    }
}

/// An element of `L` in normal form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LElement {
    w: WeightTriple,
    l: [i64; 3],
    c: i64,
}

impl LElement {
    pub fn weights(&self) -> WeightTriple {
        self.w
    }

    /// Coefficients `(l1, l2, l3)` of the normal form.
    pub fn coefficients(&self) -> [i64; 3] {
        self.l
    }

    /// Coefficient of `c` in the normal form.
    pub fn c_part(&self) -> i64 {
        self.c
    }

    pub fn is_zero(&self) -> bool {
        self.l == [0; 3] && self.c == 0
    }

    pub fn is_effective(&self) -> bool {
        self.c >= 0
    }

    /// `self <= other` in the partial order whose positive cone is the
    /// effective elements.
    pub fn leq(&self, other: &LElement) -> bool {
        (*other - *self).is_effective()
    }

    /// Degree homomorphism with `delta(x_i) = p / p_i`, `delta(c) = p`.
    pub fn delta(&self) -> i64 {
        let p = self.w.lcm;
        (0..3).map(|i| self.l[i] * (p / self.w.p[i])).sum::<i64>() + self.c * p
    }

    /// True when the element is a sum of `x_i` lying in the tilting cuboid.
    pub fn in_cuboid(&self) -> bool {
        self.c == 0 && (0..3).all(|i| self.l[i] <= self.w.p[i] - 2)
    }

    /// Text form such as `x1+2*x3-c`, parseable back by [`crate::syntax`].
    pub fn expr(&self) -> String {
        let mut s = String::new();
        let mut push = |coef: i64, atom: &str| {
            if coef == 0 {
                return;
            }
            if coef < 0 {
                s.push('-');
            } else if !s.is_empty() {
                s.push('+');
            }
            if coef.abs() != 1 {
                s.push_str(&format!("{}*", coef.abs()));
            }
            s.push_str(atom);
        };
        push(self.l[0], "x1");
        push(self.l[1], "x2");
        push(self.l[2], "x3");
        push(self.c, "c");
        if s.is_empty() {
            s.push('0');
        }
        s
    }

    fn check(&self, other: &LElement) {
        assert_eq!(self.w, other.w, "mixing elements of different weight triples");
    }
}

impl fmt::Display for LElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{};{})", self.l[0], self.l[1], self.l[2], self.c)
    }
}

impl Serialize for LElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Add for LElement {
    type Output = LElement;
    fn add(self, rhs: LElement) -> LElement {
        self.check(&rhs);
        self.w.normalize(
            [self.l[0] + rhs.l[0], self.l[1] + rhs.l[1], self.l[2] + rhs.l[2]],
            self.c + rhs.c,
        )
    }
}

impl Neg for LElement {
    type Output = LElement;
    fn neg(self) -> LElement {
        self.w.normalize([-self.l[0], -self.l[1], -self.l[2]], -self.c)
    }
}

impl Sub for LElement {
    type Output = LElement;
    fn sub(self, rhs: LElement) -> LElement {
        self + (-rhs)
    }
}

impl Mul<i64> for LElement {
    type Output = LElement;
    fn mul(self, k: i64) -> LElement {
        self.w.normalize([self.l[0] * k, self.l[1] * k, self.l[2] * k], self.c * k)
    }
}

impl AddAssign for LElement {
    fn add_assign(&mut self, rhs: LElement) {
        *self = *self + rhs;
    }
}

impl SubAssign for LElement {
    fn sub_assign(&mut self, rhs: LElement) {
        *self = *self - rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(a: i64, b: i64, c: i64) -> WeightTriple {
        WeightTriple::new(a, b, c).unwrap()
    }

    #[test]
    fn rejects_bad_weights() {
        assert!(WeightTriple::new(1, 3, 4).is_err());
        assert_eq!(WeightTriple::from_slice(&[2, 2, 2, 2]), Err(Error::WrongArity(4)));
        assert!(WeightTriple::from_slice(&[2, 3, 6]).is_ok());
    }

    #[test]
    fn genus_one_flag() {
        assert!(w(2, 4, 4).is_genus_one());
        assert!(w(6, 2, 3).is_genus_one());
        assert!(w(3, 3, 3).is_genus_one());
        assert!(!w(2, 3, 7).is_genus_one());
        assert!(!w(2, 2, 5).is_genus_one());
    }

    #[test]
    fn normal_form_examples() {
        let t = w(2, 3, 6);
        assert_eq!(t.normalize([2, 0, 0], 0).to_string(), "(0,0,0;1)");
        assert_eq!(t.omega().to_string(), "(1,2,5;-2)");
        let t333 = w(3, 3, 3);
        assert_eq!(t333.normalize([0, -1, 0], 0).to_string(), "(0,2,0;-1)");
        assert_eq!((t333.omega() + t333.omega()).to_string(), "(1,1,1;-1)");
        assert_eq!((-t.c()).to_string(), "(0,0,0;-1)");
        assert_eq!(t.cuboid_top().to_string(), "(0,1,4;0)");
    }

    #[test]
    fn order_examples() {
        for t in [w(2, 4, 4), w(2, 3, 6), w(3, 3, 3)] {
            assert!(t.zero().leq(&t.c()));
            assert!(!t.zero().leq(&t.omega()));
        }
        let t = w(3, 3, 3);
        let s = t.x(0) + t.x(1) + t.x(2);
        assert!(!s.leq(&t.c()));
    }

    #[test]
    fn delta_examples() {
        let t = w(2, 3, 6);
        assert_eq!(t.zero().delta(), 0);
        assert_eq!(t.omega().delta(), 0);
        assert_eq!(t.c().delta(), 6);
        assert_eq!(t.x(0).delta(), 3);
    }

    #[test]
    fn cuboid_sizes_and_order() {
        assert_eq!(w(2, 4, 4).cuboid().len(), 9);
        assert_eq!(w(2, 3, 6).cuboid().len(), 10);
        assert_eq!(w(3, 3, 3).cuboid().len(), 8);
        let pts = w(2, 3, 6).cuboid();
        let coords: Vec<_> = pts.iter().map(|x| x.coefficients()).collect();
        let mut sorted = coords.clone();
        sorted.sort();
        assert_eq!(coords, sorted);
        assert!(pts.iter().all(|x| x.in_cuboid()));
    }

    #[test]
    fn box_points_rejects_non_box() {
        let t = w(2, 4, 4);
        assert!(matches!(t.box_points(t.zero(), t.c()), Err(Error::NotABox { .. })));
        assert!(t.box_points(t.c(), t.zero()).is_err());
        let pts = t.box_points(t.x(1), t.x(1) * 2 + t.x(2)).unwrap();
        assert_eq!(pts.len(), 4);
    }

    #[test]
    fn twice_xbar_identity() {
        // 2*xbar_i = (p_j - 2) x_j + (p_k - 2) x_k, exhaustively over small triples
        for a in 2..=7 {
            for b in 2..=7 {
                for c in 2..=7 {
                    let t = w(a, b, c);
                    for i in 0..3 {
                        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
                        let rhs = t.x(j) * (t.p(j) - 2) + t.x(k) * (t.p(k) - 2);
                        assert_eq!(t.xbar(i) * 2, rhs, "{t} i={i}");
                    }
                }
            }
        }
        let t = w(3, 3, 3);
        assert_eq!(t.xbar(0) * 2, t.x(1) + t.x(2));
    }

    #[test]
    fn expr_rendering() {
        let t = w(2, 3, 6);
        assert_eq!(t.zero().expr(), "0");
        assert_eq!(t.omega().expr(), "x1+2*x2+5*x3-2*c");
        assert_eq!((t.x(2) - t.c()).expr(), "x3-c");
    }

    fn triple() -> impl Strategy<Value = WeightTriple> {
        prop_oneof![
            Just(w(2, 4, 4)),
            Just(w(2, 3, 6)),
            Just(w(3, 3, 3)),
            Just(w(2, 3, 7)),
            (2i64..8, 2i64..8, 2i64..8).prop_map(|(a, b, c)| w(a, b, c)),
        ]
    }

    proptest! {
        #[test]
        fn relations_do_not_change_normal_form(
            t in triple(),
            a in prop::array::uniform3(-20i64..20),
            ac in -5i64..5,
            shift in prop::array::uniform3(-3i64..3),
        ) {
            // add sum_i shift_i * (p_i x_i - c)
            let mut b = a;
            let mut bc = ac;
            for i in 0..3 {
                b[i] += shift[i] * t.p(i);
                bc -= shift[i];
            }
            prop_assert_eq!(t.normalize(a, ac), t.normalize(b, bc));
            let x = t.normalize(a, ac);
            prop_assert_eq!(t.normalize(x.coefficients(), x.c_part()), x);
        }

        #[test]
        fn group_laws_and_order(
            t in triple(),
            a in prop::array::uniform3(-9i64..9), ac in -3i64..3,
            b in prop::array::uniform3(-9i64..9), bc in -3i64..3,
            d in prop::array::uniform3(-9i64..9), dc in -3i64..3,
        ) {
            let (x, y, z) = (t.normalize(a, ac), t.normalize(b, bc), t.normalize(d, dc));
            prop_assert_eq!(x + t.zero(), x);
            prop_assert!((x + (-x)).is_zero());
            prop_assert_eq!((x + y) + z, x + (y + z));
            prop_assert_eq!(x + y, y + x);
            prop_assert_eq!((x + y).delta(), x.delta() + y.delta());
            prop_assert!(x.leq(&x));
            if x.leq(&y) && y.leq(&x) { prop_assert_eq!(x, y); }
            if x.leq(&y) && y.leq(&z) { prop_assert!(x.leq(&z)); }
            if x.leq(&y) { prop_assert!((x + z).leq(&(y + z))); }
        }
    }
}
