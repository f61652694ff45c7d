//! Grothendieck group `K0` as integer vectors over the line-bundle basis
//! `{[O(x)] : 0 <= x <= c}`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_rational::Rational64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graded::{ext1_dim_line, hom_dim_line};
use crate::lgroup::{LElement, WeightTriple};

/// Basis size `2 + sum (p_i - 1)`.
pub fn basis_len(w: WeightTriple) -> usize {
    2 + (0..3).map(|i| (w.p(i) - 1) as usize).sum::<usize>()
}

/// Basis in storage order: `O`, then `O(l x_i)` for `l = 1..p_i-1` and
/// `i = 1,2,3`, then `O(c)`.
pub fn basis(w: WeightTriple) -> Vec<LElement> {
    let mut out = vec![w.zero()];
    for i in 0..3 {
        for l in 1..w.p(i) {
            out.push(w.x(i) * l);
        }
    }
    out.push(w.c());
    out
}

fn index_of_x(w: WeightTriple, i: usize, l: i64) -> usize {
    if l == 0 {
        return 0;
    }
    1 + (0..i).map(|t| (w.p(t) - 1) as usize).sum::<usize>() + (l - 1) as usize
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct K0Class {
    w: WeightTriple,
    coeffs: Vec<i64>,
}

impl K0Class {
    pub fn zero(w: WeightTriple) -> Self {
        K0Class { w, coeffs: vec![0; basis_len(w)] }
    }

    pub fn from_coefficients(w: WeightTriple, coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() != basis_len(w) {
            return Err(Error::Precondition(format!(
                "class vector has length {}, basis has {}",
                coeffs.len(),
                basis_len(w)
            )));
        }
        Ok(K0Class { w, coeffs })
    }

    #[cfg(test)]
    fn unit(w: WeightTriple, idx: usize) -> Self {
        let mut k = Self::zero(w);
        k.coeffs[idx] = 1;
        k
    }

    pub fn weights(&self) -> WeightTriple {
        self.w
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&n| n == 0)
    }

    fn terms(&self) -> impl Iterator<Item = (i64, LElement)> + '_ {
        self.coeffs
            .iter()
            .zip(basis(self.w))
            .filter(|(n, _)| **n != 0)
            .map(|(n, b)| (*n, b))
    }

    pub fn rank(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn det(&self) -> LElement {
        self.terms().fold(self.w.zero(), |acc, (n, b)| acc + b * n)
    }

    pub fn degree(&self) -> i64 {
        self.det().delta()
    }

    pub fn slope(&self) -> Result<Rational64> {
        match self.rank() {
            0 => Err(Error::ZeroRank),
            r => Ok(Rational64::new(self.degree(), r)),
        }
    }

    /// Class of the same combination of line bundles with every twist
    /// shifted by `z`.
    pub fn twist(&self, z: LElement) -> K0Class {
        self.terms()
            .fold(K0Class::zero(self.w), |acc, (n, b)| acc + reduce_line(b + z) * n)
    }
}

/// `[O(y)] = sum_i [O(l_i x_i)] - 2[O] + l([O(c)] - [O])` for `y = (l1,l2,l3;l)`.
pub fn reduce_line(y: LElement) -> K0Class {
    let w = y.weights();
    let n = basis_len(w);
    let mut k = K0Class::zero(w);
    let l = y.coefficients();
    for (i, &li) in l.iter().enumerate() {
        k.coeffs[index_of_x(w, i, li)] += 1;
    }
    k.coeffs[0] -= 2 + y.c_part();
    k.coeffs[n - 1] += y.c_part();
    k
}

/// Sum of line-bundle classes over a multiset of twists.
pub fn reduce_lines<'a>(w: WeightTriple, ys: impl IntoIterator<Item = &'a LElement>) -> K0Class {
    ys.into_iter().fold(K0Class::zero(w), |acc, y| acc + reduce_line(*y))
}

/// Euler form, bilinear from `<[O(x)],[O(y)]> = hom - ext1`.
pub fn euler_form(a: &K0Class, b: &K0Class) -> i64 {
    assert_eq!(a.w, b.w, "mixing classes of different weight triples");
    let mut s = 0;
    for (m, x) in a.terms() {
        for (n, y) in b.terms() {
            s += m * n * (hom_dim_line(x, y) - ext1_dim_line(x, y));
        }
    }
    s
}

/// Class of the uniserial torsion sheaf at the `i`-th exceptional point
/// with top `S_{i,j}` and length `len`. The simple `S_{i,j}` is the cokernel
/// of `O((j-1)x_i) -> O(j x_i)`, so that `Hom(O(j x_i), S_{i,j}) != 0`.
pub fn torsion_class(w: WeightTriple, i: usize, j: i64, len: i64) -> Result<K0Class> {
    if len <= 0 {
        return Err(Error::TorsionLength(len));
    }
    let x = w.x(i);
    Ok(reduce_line(x * j) - reduce_line(x * (j - len)))
}

impl fmt::Display for K0Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, b) in self.terms() {
            let sign = if n < 0 { "-" } else if first { "" } else { "+" };
            let mag = if n.abs() == 1 { String::new() } else { format!("{}*", n.abs()) };
            write!(f, "{sign}{mag}[O({})]", b.expr())?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for K0Class {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("K0Class", 4)?;
        st.serialize_field("coefficients", &self.coeffs)?;
        st.serialize_field("text", &self.to_string())?;
        st.serialize_field("rank", &self.rank())?;
        st.serialize_field("det", &self.det())?;
        st.end()
    }
}

impl Add for K0Class {
    type Output = K0Class;
    fn add(mut self, rhs: K0Class) -> K0Class {
        self += rhs;
        self
    }
}

impl AddAssign for K0Class {
    fn add_assign(&mut self, rhs: K0Class) {
        assert_eq!(self.w, rhs.w, "mixing classes of different weight triples");
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs) {
            *a += b;
        }
    }
}

impl Neg for K0Class {
    type Output = K0Class;
    fn neg(mut self) -> K0Class {
        self.coeffs.iter_mut().for_each(|a| *a = -*a);
        self
    }
}

impl Sub for K0Class {
    type Output = K0Class;
    fn sub(self, rhs: K0Class) -> K0Class {
        self + (-rhs)
    }
}

impl SubAssign for K0Class {
    fn sub_assign(&mut self, rhs: K0Class) {
        *self += -rhs;
    }
}

impl Mul<i64> for K0Class {
    type Output = K0Class;
    fn mul(mut self, k: i64) -> K0Class {
        self.coeffs.iter_mut().for_each(|a| *a *= k);
        self
    }
}
