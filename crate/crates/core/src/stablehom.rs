//! Hom vanishing in the stable category, limited to the rules that can be
//! justified exactly: the Hom criterion between twists of the Auslander
//! bundle, Serre duality, `[2] = (c)`, and slope-window vanishing.
//!
//! Every answer is three-valued. Nothing outside those rules is decided.

use std::cmp::Ordering;
use std::fmt;

use num_rational::Rational64;
use serde::{Serialize, Serializer};

use crate::bundles::ExtBundle;
use crate::error::{Error, Result};
use crate::lgroup::{LElement, WeightTriple};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum HomVerdict {
    Vanishes,
    Nonzero { dim: Option<i64> },
    Unknown,
}

/// `D(E, E(x))`: nonzero iff `x` is `0` or some `xbar_i`, and then
/// one-dimensional at `xbar_i`.
pub fn hom_ee(x: LElement) -> HomVerdict {
    let w = x.weights();
    if x.is_zero() {
        HomVerdict::Nonzero { dim: None }
    } else if (0..3).any(|i| w.xbar(i) == x) {
        HomVerdict::Nonzero { dim: Some(1) }
    } else {
        HomVerdict::Vanishes
    }
}

pub fn hom_ee_nonzero(x: LElement) -> bool {
    matches!(hom_ee(x), HomVerdict::Nonzero { .. })
}

/// For `F = E(u)` of the same slope as `E(v)[1]`: whether
/// `F ⊕ τ⁻¹E(v)[1]` is extension-free, i.e. `D(F, E(v + c - w)) = 0`.
pub fn tau_shift_exchange_free(u: LElement, v: LElement) -> bool {
    let w = u.weights();
    !hom_ee_nonzero(v + w.c() - w.omega() - u)
}

/// Hom vanishing between objects whose slopes lie in a common window
/// `(a, α(a)]`: `D(X, Y[n]) = 0` for `n ∉ {0, 1}`.
pub fn window_vanishing(n: i64) -> HomVerdict {
    if n == 0 || n == 1 {
        HomVerdict::Unknown
    } else {
        HomVerdict::Vanishes
    }
}

/// An extension bundle with a pending shift.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Shifted {
    pub bundle: ExtBundle,
    pub shift: i64,
}

impl Shifted {
    pub fn new(bundle: ExtBundle, shift: i64) -> Self {
        Shifted { bundle, shift }
    }

    fn twist(&self, t: LElement) -> Self {
        Shifted { bundle: self.bundle.twist(t), shift: self.shift }
    }
}

/// Short label: `E(z)` for twists of the Auslander bundle, the full
/// presentation otherwise.
pub fn short_label(b: &ExtBundle) -> String {
    if b.x().is_zero() {
        if b.z().is_zero() {
            "E".into()
        } else {
            format!("E({})", b.z().expr())
        }
    } else {
        b.to_string()
    }
}

impl fmt::Display for Shifted {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&short_label(&self.bundle))?;
        if self.shift != 0 {
            write!(f, "[{}]", self.shift)?;
        }
        Ok(())
    }
}

/// `D(source, target)`, or its vector-space dual when `dual` is set.
/// Duals only matter for bookkeeping; dimensions agree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HomQuery {
    pub dual: bool,
    pub source: Shifted,
    pub target: Shifted,
}

impl HomQuery {
    pub fn new(source: Shifted, target: Shifted) -> Self {
        HomQuery { dual: false, source, target }
    }
}

impl fmt::Display for HomQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = if self.dual { "DD" } else { "D" };
        write!(f, "{d}({}, {})", self.source, self.target)
    }
}

impl Serialize for HomQuery {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `D(X[s], Y[t]) = D D(Y[t-1], X[s](w))`.
pub fn serre_rewrite(q: &HomQuery) -> HomQuery {
    let w = q.source.bundle.weights();
    HomQuery {
        dual: !q.dual,
        source: Shifted::new(q.target.bundle, q.target.shift - 1),
        target: q.source.twist(w.omega()),
    }
}

/// Writes `b` as `E(z)[n]` with `n ∈ {-1, 0, 1}` when possible.
fn auslander_form(b: &ExtBundle) -> Option<(LElement, i64)> {
    let find = |c: &ExtBundle| c.presentations().into_iter().find(|p| p.x().is_zero()).map(|p| p.z());
    if let Some(z) = find(b) {
        return Some((z, 0));
    }
    if let Ok(d) = b.desuspend() {
        if let Some(z) = find(&d) {
            return Some((z, 1));
        }
    }
    if let Ok(u) = b.suspend() {
        if let Some(z) = find(&u) {
            return Some((z, -1));
        }
    }
    None
}

/// Result of evaluating a Hom query, with every rewrite step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomEvaluation {
    pub verdict: HomVerdict,
    pub chain: Vec<HomQuery>,
    /// `x` with the last query equal to `D(E, E(x))`, when reached.
    pub reduced_twist: Option<LElement>,
}

/// Evaluates `q` by rewriting both sides to shifted twists of `E`,
/// equalizing shifts with Serre duality and `[2] = (c)`, and applying
/// [`hom_ee`]. Queries that do not reduce this way are `Unknown`.
pub fn evaluate(q: &HomQuery) -> HomEvaluation {
    let w = q.source.bundle.weights();
    let mut chain = vec![*q];
    let unknown = |chain| HomEvaluation { verdict: HomVerdict::Unknown, chain, reduced_twist: None };
    let (Some((u, su)), Some((v, sv))) =
        (auslander_form(&q.source.bundle), auslander_form(&q.target.bundle))
    else {
        return unknown(chain);
    };
    let e = ExtBundle::auslander(w);
    let mut cur = HomQuery {
        dual: q.dual,
        source: Shifted::new(e.twist(u), q.source.shift + su),
        target: Shifted::new(e.twist(v), q.target.shift + sv),
    };
    if cur != *q {
        chain.push(cur);
    }
    let d = cur.target.shift - cur.source.shift;
    // move the target to shift 1 (odd difference) or 0 (even difference)
    let k = d.rem_euclid(2) - cur.target.shift;
    if k != 0 {
        cur.source.shift += k;
        cur.target.shift += k;
        chain.push(cur);
    }
    // the source shift is now even; trade it for a twist by a multiple of c
    if cur.source.shift != 0 {
        let m = cur.source.shift / 2;
        cur.source = Shifted::new(cur.source.bundle.twist(w.c() * m), 0);
        chain.push(cur);
    }
    if cur.target.shift == 1 {
        cur = serre_rewrite(&cur);
        chain.push(cur);
    }
    debug_assert!(cur.source.shift == 0 && cur.target.shift == 0);
    let x = cur.target.bundle.z() - cur.source.bundle.z();
    let last = HomQuery {
        dual: cur.dual,
        source: Shifted::new(e, 0),
        target: Shifted::new(e.twist(x), 0),
    };
    if last != cur {
        chain.push(last);
    }
    HomEvaluation { verdict: hom_ee(x), chain, reduced_twist: Some(x) }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TiltingVerdict {
    Tilting,
    NotTilting,
    Undecided,
}

/// Outcome of replacing the minimal-slope summand `E` of the tilting
/// cuboid by `τ⁻¹E[1]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CuboidShiftVerdict {
    pub weights: WeightTriple,
    pub verdict: TiltingVerdict,
    pub min_summand: String,
    pub max_summand: String,
    pub min_slope: String,
    pub max_slope: String,
    pub evaluation: HomEvaluation,
}

/// Decides whether `τ⁻¹E[1] ⊕ (⊕_{0<x<=2w+c} E<x>)` is tilting, by the
/// criterion `D(T_max, T_min(c - w)) = 0` on the unique extreme-slope
/// summands of the cuboid.
pub fn shifted_cuboid_verdict(w: WeightTriple) -> Result<CuboidShiftVerdict> {
    if !w.is_genus_one() {
        return Err(Error::NotGenusOne(w.to_string()));
    }
    let summands: Vec<ExtBundle> =
        w.cuboid().into_iter().map(|x| ExtBundle::new(x, w.zero()).expect("box point")).collect();
    let extreme = |pick_max: bool| -> Result<ExtBundle> {
        let best = summands
            .iter()
            .map(|b| b.slope())
            .reduce(|a, b| if (b > a) == pick_max { b } else { a })
            .expect("cuboid is non-empty");
        let hits: Vec<_> = summands.iter().filter(|b| b.slope() == best).collect();
        if hits.len() != 1 {
            return Err(Error::Precondition(format!("{} summands of extreme slope {best}", hits.len())));
        }
        Ok(*hits[0])
    };
    let lo = extreme(false)?;
    let hi = extreme(true)?;
    if lo != ExtBundle::auslander(w) || hi.x() != w.cuboid_top() {
        return Err(Error::Precondition("extreme summands are not E and E<2w+c>".into()));
    }
    if hi.slope() != Rational64::new(w.c().delta(), 2) {
        return Err(Error::Precondition("maximal slope differs from δ(c)/2".into()));
    }
    let q = HomQuery::new(Shifted::new(hi, 0), Shifted::new(lo.twist(w.c() - w.omega()), 0));
    let evaluation = evaluate(&q);
    let verdict = match evaluation.verdict {
        HomVerdict::Vanishes => TiltingVerdict::Tilting,
        HomVerdict::Nonzero { .. } => TiltingVerdict::NotTilting,
        HomVerdict::Unknown => TiltingVerdict::Undecided,
    };
    Ok(CuboidShiftVerdict {
        weights: w,
        verdict,
        min_summand: short_label(&lo),
        max_summand: hi.to_string(),
        min_slope: lo.slope().to_string(),
        max_slope: hi.slope().to_string(),
        evaluation,
    })
}

/// `α⁻¹(0)` for the tubular weight types.
pub fn alpha_inverse_of_zero(w: WeightTriple) -> Result<Rational64> {
    let mut s = w.weights();
    s.sort_unstable();
    match s {
        [3, 3, 3] => Ok(Rational64::new(-3, 2)),
        [2, 4, 4] => Ok(Rational64::from(-2)),
        [2, 3, 6] => Ok(Rational64::from(-3)),
        _ => Err(Error::NotGenusOne(w.to_string())),
    }
}

/// Known values of the slope map `α` with `μ(X[1]) = α(μ X)`.
///
/// Points come from `μ(E<x>[1])` over the cuboid, closed under
/// `α(α(q)) = q + δ(c)` and twisting, `α(q + δ(z)) = α(q) + δ(z)`.
/// Other values are bracketed by monotonicity and `α(q) > q`.
#[derive(Debug, Clone)]
pub struct AlphaTable {
    weights: WeightTriple,
    period: i64,
    /// sorted `(q, α(q))` with `q` in `[0, period)`
    points: Vec<(Rational64, Rational64)>,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

impl AlphaTable {
    pub fn new(w: WeightTriple) -> Result<Self> {
        let p = w.lcm();
        let period = (0..3).fold(0, |g, i| gcd(g, p / w.p(i)));
        let dc = Rational64::from(w.c().delta());
        let per = Rational64::from(period);
        let mut raw = Vec::new();
        for x in w.cuboid() {
            let b = ExtBundle::new(x, w.zero())?;
            let q = b.slope();
            let a = b.suspend()?.slope();
            raw.push((q, a));
            raw.push((a, q + dc));
        }
        let mut points: Vec<(Rational64, Rational64)> = Vec::new();
        for (q, a) in raw {
            let k = (q / per).floor() * per;
            let pt = (q - k, a - k);
            match points.iter().find(|(r, _)| *r == pt.0) {
                Some(&(_, prev)) if prev != pt.1 => {
                    return Err(Error::Precondition(format!(
                        "inconsistent slope shift at {}: {} vs {}",
                        pt.0, prev, pt.1
                    )))
                }
                Some(_) => {}
                None => points.push(pt),
            }
        }
        points.sort();
        Ok(AlphaTable { weights: w, period, points })
    }

    pub fn weights(&self) -> WeightTriple {
        self.weights
    }

    pub fn points(&self) -> &[(Rational64, Rational64)] {
        &self.points
    }

    /// `α(q)` when it is pinned by the table.
    pub fn exact(&self, q: Rational64) -> Option<Rational64> {
        let per = Rational64::from(self.period);
        let k = (q / per).floor() * per;
        self.points.iter().find(|(r, _)| *r == q - k).map(|(_, a)| *a + k)
    }

    /// Largest known point `<= q` and smallest known point `>= q`.
    fn bracket(&self, q: Rational64) -> (Rational64, Rational64, Rational64, Rational64) {
        let per = Rational64::from(self.period);
        let k = (q / per).floor() * per;
        let f = q - k;
        let (lo, alo) = *self.points.iter().rev().find(|(r, _)| *r <= f).expect("0 is a point");
        let (hi, ahi) = self
            .points
            .iter()
            .find(|(r, _)| *r >= f)
            .map(|&(r, a)| (r, a))
            .unwrap_or((self.points[0].0 + per, self.points[0].1 + per));
        (lo + k, alo + k, hi + k, ahi + k)
    }

    /// Three-valued comparison of `α(q)` with `s`.
    pub fn cmp_alpha(&self, q: Rational64, s: Rational64) -> Option<Ordering> {
        if let Some(a) = self.exact(q) {
            return Some(a.cmp(&s));
        }
        if s <= q {
            return Some(Ordering::Greater);
        }
        let (_, alo, _, ahi) = self.bracket(q);
        if s <= alo {
            Some(Ordering::Greater)
        } else if s >= ahi {
            Some(Ordering::Less)
        } else {
            None
        }
    }

    /// Three-valued comparison of `α⁻¹(q)` with `s`, via
    /// `α⁻¹(q) = α(q) - δ(c)`.
    pub fn cmp_alpha_inv(&self, q: Rational64, s: Rational64) -> Option<Ordering> {
        self.cmp_alpha(q, s + Rational64::from(self.weights.c().delta()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Membership {
    In,
    Out,
    Unknown,
}

fn both(a: Option<bool>, b: Option<bool>) -> Membership {
    match (a, b) {
        (Some(false), _) | (_, Some(false)) => Membership::Out,
        (Some(true), Some(true)) => Membership::In,
        _ => Membership::Unknown,
    }
}

/// A half-open slope window `(a, α(a)]`, given by either endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlopeWindow {
    /// `(a, α(a)]`
    Lower(Rational64),
    /// `(α⁻¹(b), b]`
    Upper(Rational64),
}

impl fmt::Display for SlopeWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SlopeWindow::Lower(a) => write!(f, "({a}, α({a})]"),
            SlopeWindow::Upper(b) => write!(f, "(α⁻¹({b}), {b}]"),
        }
    }
}

impl Serialize for SlopeWindow {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl SlopeWindow {
    /// Whether `α^n(q)` lies in the window, for `n ∈ {-1, 0, 1}`: the
    /// slope of `X[n]` when `μ X = q`.
    pub fn contains(&self, t: &AlphaTable, q: Rational64, n: i64) -> Result<Membership> {
        let dc = Rational64::from(t.weights.c().delta());
        let gt = |o: Option<Ordering>| o.map(|o| o == Ordering::Greater);
        let le = |o: Option<Ordering>| o.map(|o| o != Ordering::Greater);
        let m = match (*self, n) {
            // a < q <= α(a)  <=>  a < q and α(q) - δ(c) <= a
            (SlopeWindow::Lower(a), 0) => both(Some(q > a), le(t.cmp_alpha(q, a + dc))),
            // a < α(q) <= α(a)  <=>  α(q) > a and q <= a
            (SlopeWindow::Lower(a), 1) => both(gt(t.cmp_alpha(q, a)), Some(q <= a)),
            // a < α⁻¹(q) <= α(a)  <=>  α(a) < q and q <= a + δ(c)
            (SlopeWindow::Lower(a), -1) => {
                both(t.cmp_alpha(a, q).map(|o| o == Ordering::Less), Some(q <= a + dc))
            }
            // α⁻¹(b) < q <= b  <=>  q <= b and α(q) > b
            (SlopeWindow::Upper(b), 0) => both(Some(q <= b), gt(t.cmp_alpha(q, b))),
            // α⁻¹(b) < α(q) <= b  <=>  α(q) <= b and q + δ(c) > b
            (SlopeWindow::Upper(b), 1) => both(le(t.cmp_alpha(q, b)), Some(q + dc > b)),
            // α⁻¹(b) < α⁻¹(q) <= b  <=>  b < q and α⁻¹(q) <= b
            (SlopeWindow::Upper(b), -1) => both(Some(b < q), le(t.cmp_alpha_inv(q, b))),
            _ => return Err(Error::Precondition(format!("shift {n} outside -1..=1"))),
        };
        Ok(m)
    }
}
