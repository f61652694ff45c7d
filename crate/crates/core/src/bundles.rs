//! Extension bundles `E<x>(z)`, their presentations, hulls and shifts, and
//! the tagged stable objects built from them.

use std::fmt;

use num_rational::Rational64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::k0::{reduce_line, reduce_lines, K0Class};
use crate::lgroup::{LElement, WeightTriple};

/// `E<x>(z)`: the middle term of the non-split extension of `O(z+x)` by
/// `O(z+w)`, for `0 <= x <= 2w+c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtBundle {
    x: LElement,
    z: LElement,
}

impl ExtBundle {
    pub fn new(x: LElement, z: LElement) -> Result<Self> {
        if x.weights() != z.weights() {
            return Err(Error::WeightMismatch);
        }
        if !x.in_cuboid() {
            return Err(Error::NotInBox(x.to_string()));
        }
        Ok(ExtBundle { x, z })
    }

    /// `E<l1 x1 + l2 x2 + l3 x3>(z)`.
    pub fn from_coefficients(l: [i64; 3], z: LElement) -> Result<Self> {
        Self::new(z.weights().normalize(l, 0), z)
    }

    /// The Auslander bundle `E = E<0>`.
    pub fn auslander(w: WeightTriple) -> Self {
        ExtBundle { x: w.zero(), z: w.zero() }
    }

    pub fn weights(&self) -> WeightTriple {
        self.x.weights()
    }

    pub fn x(&self) -> LElement {
        self.x
    }

    pub fn z(&self) -> LElement {
        self.z
    }

    pub fn rank(&self) -> i64 {
        2
    }

    pub fn det(&self) -> LElement {
        self.z * 2 + self.x + self.weights().omega()
    }

    pub fn class(&self) -> K0Class {
        reduce_line(self.z + self.weights().omega()) + reduce_line(self.z + self.x)
    }

    pub fn slope(&self) -> Rational64 {
        Rational64::new(self.det().delta(), 2)
    }

    /// `E<x>(z + t)`.
    pub fn twist(&self, t: LElement) -> Self {
        ExtBundle { x: self.x, z: self.z + t }
    }

    pub fn tau(&self) -> Self {
        self.twist(self.weights().omega())
    }

    pub fn tau_inv(&self) -> Self {
        self.twist(-self.weights().omega())
    }

    /// Every presentation of the same bundle: the identity plus one
    /// alternative per branch index `j`, where
    /// `E<x> = E<l_j x_j + sum_{i!=j} (p_i-2-l_i) x_i>(sum_{i!=j} (l_i+1) x_i - c)`.
    pub fn presentations(&self) -> Vec<ExtBundle> {
        let w = self.weights();
        let l = self.x.coefficients();
        let mut out = vec![*self];
        for j in 0..3 {
            let mut y = [0; 3];
            let mut d = -w.c();
            for i in 0..3 {
                if i == j {
                    y[i] = l[i];
                } else {
                    y[i] = w.p(i) - 2 - l[i];
                    d += w.x(i) * (l[i] + 1);
                }
            }
            let alt = ExtBundle { x: w.normalize(y, 0), z: self.z + d };
            if !out.contains(&alt) {
                out.push(alt);
            }
        }
        out
    }

    /// Lexicographically least presentation in `(x, z)` normal-form order.
    pub fn canonical_form(&self) -> ExtBundle {
        *self.presentations().iter().min().expect("orbit is non-empty")
    }

    /// Equality of bundles decided by the presentation rule alone.
    pub fn eq_ext(&self, other: &ExtBundle) -> bool {
        self.weights() == other.weights() && self.presentations().contains(other)
    }

    /// Twists of the injective hull: `z+x` and `z+w+(l_i+1)x_i`.
    pub fn injective_hull(&self) -> Vec<LElement> {
        let w = self.weights();
        let l = self.x.coefficients();
        let mut out = vec![self.z + self.x];
        out.extend((0..3).map(|i| self.z + w.omega() + w.x(i) * (l[i] + 1)));
        out
    }

    /// Twists of the projective cover: `z+w` and `z+x-(l_i+1)x_i`.
    pub fn projective_cover(&self) -> Vec<LElement> {
        let w = self.weights();
        let l = self.x.coefficients();
        let mut out = vec![self.z + w.omega()];
        out.extend((0..3).map(|i| self.z + self.x - w.x(i) * (l[i] + 1)));
        out
    }

    /// `E[1]`, found as the unique extension bundle whose class is the
    /// hull class minus the class of `E`.
    pub fn suspend(&self) -> Result<ExtBundle> {
        let target = reduce_lines(self.weights(), &self.injective_hull()) - self.class();
        match_class(&target, self.z, SEARCH_RADIUS)
    }

    /// `E[-1]`, via the projective cover.
    pub fn desuspend(&self) -> Result<ExtBundle> {
        let target = reduce_lines(self.weights(), &self.projective_cover()) - self.class();
        match_class(&target, self.z, SEARCH_RADIUS)
    }

    /// `E[n]` for any integer `n`.
    pub fn shift(&self, n: i64) -> Result<ExtBundle> {
        let mut b = *self;
        for _ in 0..n.abs() {
            b = if n > 0 { b.suspend()? } else { b.desuspend()? };
        }
        Ok(b)
    }
}

const SEARCH_RADIUS: i64 = 4;

/// The unique extension bundle, up to presentation, with the given class.
/// Twists are searched in `center + {|l| <= radius}`.
pub fn match_class(class: &K0Class, center: LElement, radius: i64) -> Result<ExtBundle> {
    let w = class.weights();
    if class.rank() != 2 {
        return Err(Error::NoMatchingBundle(class.to_string()));
    }
    let det = class.det();
    let mut hits: Vec<ExtBundle> = Vec::new();
    for y in w.cuboid() {
        for t in w.window(radius) {
            let b = ExtBundle { x: y, z: center + t };
            if b.det() != det || b.class() != *class {
                continue;
            }
            let canon = b.canonical_form();
            if !hits.contains(&canon) {
                hits.push(canon);
            }
        }
    }
    match hits.len() {
        0 => Err(Error::NoMatchingBundle(class.to_string())),
        1 => Ok(hits[0]),
        _ => Err(Error::AmbiguousBundle {
            class: class.to_string(),
            hits: hits.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(", "),
        }),
    }
}

impl fmt::Display for ExtBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.x.coefficients();
        write!(f, "E<{a},{b},{c}>({})", self.z.expr())
    }
}

impl Serialize for ExtBundle {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ExtBundle", 3)?;
        st.serialize_field("text", &self.to_string())?;
        st.serialize_field("x", &self.x.coefficients())?;
        st.serialize_field("z", &self.z)?;
        st.end()
    }
}

/// One term of a short exact sequence, tracked by class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub name: String,
    pub class: K0Class,
}

impl Term {
    pub fn new(name: impl Into<String>, class: K0Class) -> Self {
        Term { name: name.into(), class }
    }

    pub fn line(y: LElement) -> Self {
        Term::new(format!("O({})", y.expr()), reduce_line(y))
    }

    pub fn ext(b: &ExtBundle) -> Self {
        Term::new(b.to_string(), b.class())
    }
}

impl Serialize for Term {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Term", 2)?;
        st.serialize_field("name", &self.name)?;
        st.serialize_field("class", &self.class.to_string())?;
        st.end()
    }
}

/// `0 -> sub -> middle -> quotient -> 0`, each side a direct sum of terms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SequenceRecord {
    pub description: String,
    pub sub: Vec<Term>,
    pub middle: Vec<Term>,
    pub quotient: Vec<Term>,
}

impl SequenceRecord {
    pub fn new(
        description: impl Into<String>,
        sub: Vec<Term>,
        middle: Vec<Term>,
        quotient: Vec<Term>,
    ) -> Self {
        SequenceRecord { description: description.into(), sub, middle, quotient }
    }

    fn sum(w: WeightTriple, ts: &[Term]) -> K0Class {
        ts.iter().fold(K0Class::zero(w), |acc, t| acc + t.class.clone())
    }

    fn weights(&self) -> Option<WeightTriple> {
        self.sub.iter().chain(&self.middle).chain(&self.quotient).map(|t| t.class.weights()).next()
    }

    /// `[middle] = [sub] + [quotient]`.
    pub fn is_additive(&self) -> bool {
        match self.weights() {
            None => true,
            Some(w) => {
                Self::sum(w, &self.middle) == Self::sum(w, &self.sub) + Self::sum(w, &self.quotient)
            }
        }
    }
}

/// An indecomposable object known only through its class and the
/// sequences that define it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Formal {
    pub name: String,
    class: K0Class,
    rank: i64,
    twist: LElement,
    shift: i64,
    /// Shift at which `class` is known.
    known: i64,
    pub provenance: Vec<SequenceRecord>,
}

impl Formal {
    pub fn new(name: impl Into<String>, class: K0Class, provenance: Vec<SequenceRecord>) -> Self {
        let twist = class.weights().zero();
        Formal { name: name.into(), rank: class.rank(), class, twist, shift: 0, known: 0, provenance }
    }

    /// An object `X` named `name` for which only the class of `X[n]` is known.
    pub fn known_at_shift(
        name: impl Into<String>,
        class: K0Class,
        n: i64,
        provenance: Vec<SequenceRecord>,
    ) -> Self {
        Formal { known: n, ..Formal::new(name, class, provenance) }
    }

    /// Rank at the shift where the class is known.
    pub fn rank(&self) -> i64 {
        self.rank
    }

    /// Class of the object, available only when no formal shift is pending.
    pub fn class(&self) -> Result<K0Class> {
        if self.shift != self.known {
            return Err(Error::FormalShift(self.label()));
        }
        Ok(self.class.twist(self.twist))
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    /// The class at the known shift, and the offset from there to the
    /// current shift.
    pub fn known_class(&self) -> (K0Class, i64) {
        (self.class.twist(self.twist), self.shift - self.known)
    }

    /// Records a shift without computing it; the class becomes unavailable.
    pub fn with_shift(&self, n: i64) -> Formal {
        Formal { shift: self.shift + n, ..self.clone() }
    }

    pub fn with_twist(&self, t: LElement) -> Formal {
        Formal { twist: self.twist + t, ..self.clone() }
    }

    pub fn label(&self) -> String {
        let w = self.twist.weights();
        let mut s = if self.twist.is_zero() {
            self.name.clone()
        } else if self.twist == w.omega() {
            format!("τ{}", self.name)
        } else if self.twist == -w.omega() {
            format!("τ⁻¹{}", self.name)
        } else {
            format!("{}({})", self.name, self.twist.expr())
        };
        if self.shift != 0 {
            s.push_str(&format!("[{}]", self.shift));
        }
        s
    }
}

/// Objects of the stable category that the engine can name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StableObject {
    Zero(WeightTriple),
    Ext(ExtBundle),
    Formal(Formal),
}

impl StableObject {
    /// Tags a bundle class: zero class gives `Zero`, a rank-two class that
    /// matches an extension bundle gives `Ext`, anything else is `Formal`.
    pub fn classify(name: &str, class: K0Class, provenance: Vec<SequenceRecord>) -> StableObject {
        let w = class.weights();
        if class.is_zero() {
            return StableObject::Zero(w);
        }
        if class.rank() == 2 {
            let center = w.normalize([0; 3], class.det().c_part().div_euclid(2));
            if let Ok(b) = match_class(&class, center, SEARCH_RADIUS) {
                return StableObject::Ext(b);
            }
        }
        StableObject::Formal(Formal::new(name, class, provenance))
    }

    pub fn weights(&self) -> WeightTriple {
        match self {
            StableObject::Zero(w) => *w,
            StableObject::Ext(b) => b.weights(),
            StableObject::Formal(f) => f.class.weights(),
        }
    }

    pub fn rank(&self) -> i64 {
        match self {
            StableObject::Zero(_) => 0,
            StableObject::Ext(b) => b.rank(),
            StableObject::Formal(f) => f.rank(),
        }
    }

    pub fn class(&self) -> Result<K0Class> {
        match self {
            StableObject::Zero(w) => Ok(K0Class::zero(*w)),
            StableObject::Ext(b) => Ok(b.class()),
            StableObject::Formal(f) => f.class(),
        }
    }

    pub fn slope(&self) -> Result<Rational64> {
        if self.rank() == 0 {
            return Err(Error::ZeroRank);
        }
        self.class()?.slope()
    }

    pub fn twist(&self, t: LElement) -> StableObject {
        match self {
            StableObject::Zero(w) => StableObject::Zero(*w),
            StableObject::Ext(b) => StableObject::Ext(b.twist(t)),
            StableObject::Formal(f) => StableObject::Formal(f.with_twist(t)),
        }
    }

    pub fn tau(&self) -> StableObject {
        self.twist(self.weights().omega())
    }

    pub fn tau_inv(&self) -> StableObject {
        self.twist(-self.weights().omega())
    }

    pub fn label(&self) -> String {
        match self {
            StableObject::Zero(_) => "0".into(),
            StableObject::Ext(b) => b.to_string(),
            StableObject::Formal(f) => f.label(),
        }
    }
}

impl fmt::Display for StableObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl Serialize for StableObject {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("StableObject", 4)?;
        let kind = match self {
            StableObject::Zero(_) => "zero",
            StableObject::Ext(_) => "ext",
            StableObject::Formal(_) => "formal",
        };
        st.serialize_field("kind", kind)?;
        st.serialize_field("label", &self.label())?;
        st.serialize_field("rank", &self.rank())?;
        st.serialize_field("class", &self.class().ok().map(|c| c.to_string()))?;
        st.end()
    }
}
