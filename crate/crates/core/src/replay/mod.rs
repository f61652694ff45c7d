//! Class-level verification pipelines: the cones over `E -> E(x̄_i)`, the
//! pullback and pushout cones over extension bundles, and the three
//! mutation replays that build tubular tilting objects.
//!
//! Objects are tracked by class and the sequences that define them. Every
//! identity the construction relies on is recorded as a [`Check`].

mod cones;
mod tubular;

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Rational64;
use serde::Serialize;

use crate::bundles::{ExtBundle, SequenceRecord, StableObject};
use crate::error::{Error, Result};
use crate::lgroup::{LElement, WeightTriple};
use crate::quiver::{fixture, is_isomorphic, Isomorphism, Quiver};
use crate::stablehom::{AlphaTable, Membership, SlopeWindow};
use crate::syntax::parse_bundle;

pub use cones::{auslander_cone_check, pullback_cone, pushout_cone, ConeReport};
pub use tubular::{replay, replay_236, replay_244, replay_333, REPLAY_KINDS};

/// One verified (or failed) identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    /// The identity, written out.
    pub anchor: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Check {
    pub fn equal(
        name: impl Into<String>,
        anchor: impl Into<String>,
        lhs: impl fmt::Display,
        rhs: impl fmt::Display,
    ) -> Check {
        let (l, r) = (lhs.to_string(), rhs.to_string());
        Check {
            name: name.into(),
            anchor: anchor.into(),
            passed: l == r,
            lhs: Some(l),
            rhs: Some(r),
            detail: String::new(),
        }
    }

    pub fn holds(
        name: impl Into<String>,
        anchor: impl Into<String>,
        ok: bool,
        detail: impl Into<String>,
    ) -> Check {
        Check { name: name.into(), anchor: anchor.into(), passed: ok, lhs: None, rhs: None, detail: detail.into() }
    }

    /// A check whose evaluation may itself fail; errors count as failures.
    pub fn attempt(name: impl Into<String>, anchor: impl Into<String>, r: Result<Check>) -> Check {
        let (name, anchor) = (name.into(), anchor.into());
        match r {
            Ok(c) => Check { name, anchor, ..c },
            Err(e) => Check::holds(name, anchor, false, e.to_string()),
        }
    }

    fn consistent(&self) -> bool {
        match (&self.lhs, &self.rhs) {
            (Some(l), Some(r)) => self.passed == (l == r),
            _ => true,
        }
    }
}

/// Additivity of a recorded sequence as a check.
pub fn additivity(seq: &SequenceRecord) -> Check {
    Check::holds(
        format!("additive: {}", seq.description),
        "[middle] = [sub] + [quotient]",
        seq.is_additive(),
        "",
    )
}

/// A quiver vertex and the object placed on it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Binding {
    pub vertex: i64,
    pub name: String,
    pub object: StableObject,
}

impl Binding {
    pub fn new(vertex: i64, name: impl Into<String>, object: StableObject) -> Self {
        Binding { vertex, name: name.into(), object }
    }
}

/// One mutation together with the exchange it stands for.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExchangeStep {
    pub vertex: i64,
    pub outgoing: Option<Binding>,
    pub incoming: Option<Binding>,
    pub sequences: Vec<SequenceRecord>,
    pub checks: Vec<Check>,
    /// Quiver after the mutation.
    pub quiver: Quiver,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SlopeEntry {
    pub vertex: i64,
    pub name: String,
    /// `μ X` for the summand written `X[shift]`.
    pub slope: String,
    pub shift: i64,
    pub membership: Membership,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SlopeReport {
    pub window: SlopeWindow,
    pub entries: Vec<SlopeEntry>,
}

impl SlopeReport {
    pub fn any_out(&self) -> bool {
        self.entries.iter().any(|e| e.membership == Membership::Out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReplayReport {
    pub kind: String,
    pub weights: WeightTriple,
    pub initial: Vec<Binding>,
    pub initial_quiver: Quiver,
    pub sequence: Vec<i64>,
    pub steps: Vec<ExchangeStep>,
    /// Sequences not tied to a single step.
    pub sequences: Vec<SequenceRecord>,
    pub checks: Vec<Check>,
    pub final_objects: Vec<Binding>,
    pub final_quiver: Quiver,
    pub target: String,
    pub witness: Option<Isomorphism>,
    pub window: SlopeReport,
    pub limitations: Vec<String>,
    pub pass: bool,
}

impl ReplayReport {
    fn all_checks(&self) -> impl Iterator<Item = &Check> {
        self.steps.iter().flat_map(|s| s.checks.iter()).chain(self.checks.iter())
    }

    fn all_sequences(&self) -> impl Iterator<Item = &SequenceRecord> {
        self.steps.iter().flat_map(|s| s.sequences.iter()).chain(self.sequences.iter())
    }

    fn verdict(&self) -> bool {
        self.all_checks().all(|c| c.passed)
            && self.all_sequences().all(|s| s.is_additive())
            && self.witness.is_some()
            && !self.window.any_out()
    }

    /// Failed checks, in report order.
    pub fn failures(&self) -> Vec<&Check> {
        self.all_checks().filter(|c| !c.passed).collect()
    }

    pub fn check_count(&self) -> usize {
        self.all_checks().count()
    }

    /// Re-evaluates everything that can be recomputed from the report
    /// alone: recorded comparisons, sequence additivity, the quiver path
    /// and the overall verdict.
    pub fn reverify(&self) -> bool {
        let path = self
            .initial_quiver
            .apply(&self.sequence)
            .map(|q| q.arrow_set() == self.final_quiver.arrow_set())
            .unwrap_or(false);
        let steps = self.steps.len() == self.sequence.len()
            && self.steps.iter().zip(&self.sequence).all(|(s, v)| s.vertex == *v);
        let witness = match (&self.witness, fixture(&self.target)) {
            (Some(_), Ok(t)) => is_isomorphic(&self.final_quiver, &t.quiver).is_some(),
            (None, _) => true,
            (Some(_), Err(_)) => false,
        };
        self.all_checks().all(Check::consistent) && path && steps && witness && self.pass == self.verdict()
    }

    /// Human-readable summary: one line per check.
    pub fn render(&self) -> String {
        let mut out = format!("replay {} on weights {}\n", self.kind, self.weights);
        let seq: Vec<String> = self.sequence.iter().map(|v| v.to_string()).collect();
        out.push_str(&format!("sequence: {}\n", seq.join(",")));
        for s in &self.steps {
            let name = |b: &Option<Binding>| b.as_ref().map_or("?".to_string(), |b| b.name.clone());
            out.push_str(&format!("mutate {}: {} -> {}\n", s.vertex, name(&s.outgoing), name(&s.incoming)));
            for c in &s.checks {
                out.push_str(&render_check(c));
            }
        }
        for c in &self.checks {
            out.push_str(&render_check(c));
        }
        out.push_str(&format!("slope window {}\n", self.window.window));
        for e in &self.window.entries {
            out.push_str(&format!(
                "  {:>3} {:<22} slope {:>6} shift {:>2}  {:?}\n",
                e.vertex, e.name, e.slope, e.shift, e.membership
            ));
        }
        for l in &self.limitations {
            out.push_str(&format!("limitation: {l}\n"));
        }
        out.push_str(&format!(
            "target {}: {}\n",
            self.target,
            if self.witness.is_some() { "isomorphic" } else { "NOT isomorphic" }
        ));
        out.push_str(&format!("{}\n", if self.pass { "PASS" } else { "FAIL" }));
        out
    }
}

fn render_check(c: &Check) -> String {
    let mut s = format!("  [{}] {}: {}", if c.passed { "ok" } else { "FAIL" }, c.name, c.anchor);
    if !c.passed {
        if let (Some(l), Some(r)) = (&c.lhs, &c.rhs) {
            s.push_str(&format!(" ({l} vs {r})"));
        }
        if !c.detail.is_empty() {
            s.push_str(&format!(" ({})", c.detail));
        }
    }
    s.push('\n');
    s
}

/// `{a, b, ...}` in sorted order.
pub(crate) fn multiset(ys: &[LElement]) -> String {
    let mut v = ys.to_vec();
    v.sort();
    let parts: Vec<String> = v.iter().map(|y| y.expr()).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Removes one copy of each element of `drop`; `None` if one is missing.
pub(crate) fn remove_each(ys: &[LElement], drop: &[LElement]) -> Option<Vec<LElement>> {
    let mut v = ys.to_vec();
    for d in drop {
        let pos = v.iter().position(|y| y == d)?;
        v.remove(pos);
    }
    Some(v)
}

/// `(μ X, n)` for a summand `X[n]` whose class is known at shift 0 after
/// moving `n` out.
fn slope_point(obj: &StableObject) -> Result<(Rational64, i64)> {
    match obj {
        StableObject::Zero(_) => Err(Error::ZeroRank),
        StableObject::Ext(b) => Ok((b.slope(), 0)),
        StableObject::Formal(f) => {
            let (k, n) = f.known_class();
            if k.rank() == 0 {
                return Err(Error::ZeroRank);
            }
            Ok((Rational64::new(k.degree(), k.rank()), n))
        }
    }
}

pub(crate) fn slope_report(w: WeightTriple, window: SlopeWindow, objs: &[Binding]) -> Result<SlopeReport> {
    let table = AlphaTable::new(w)?;
    let mut entries = Vec::new();
    for b in objs {
        let (q, n) = slope_point(&b.object)?;
        entries.push(SlopeEntry {
            vertex: b.vertex,
            name: b.name.clone(),
            slope: q.to_string(),
            shift: n,
            membership: window.contains(&table, q, n)?,
        });
    }
    Ok(SlopeReport { window, entries })
}

/// Splits `τ⁻¹X[1]`, `τX[-1]` and plain `X` names into `(twist sign, X, shift)`.
fn split_name(name: &str) -> (i64, &str, i64) {
    let (t, rest) = if let Some(r) = name.strip_prefix("τ⁻¹") {
        (-1, r)
    } else if let Some(r) = name.strip_prefix('τ') {
        (1, r)
    } else {
        (0, name)
    };
    for (suffix, n) in [("[1]", 1), ("[-1]", -1)] {
        if let Some(r) = rest.strip_suffix(suffix) {
            return (t, r, n);
        }
    }
    (t, rest, 0)
}

/// When the binding's name is a bundle expression, checks that it
/// denotes the bound extension bundle.
pub(crate) fn name_check(w: WeightTriple, b: &Binding) -> Option<Check> {
    let (t, body, n) = split_name(&b.name);
    let parsed = parse_bundle(w, body).ok()?;
    let expected = parsed.twist(w.omega() * t).shift(n);
    let name = format!("vertex {} carries {}", b.vertex, b.name);
    let anchor = format!("{} denotes the bound bundle", b.name);
    Some(match (expected, &b.object) {
        (Ok(e), StableObject::Ext(o)) => Check::holds(name, anchor, e.eq_ext(o), format!("{e} vs {o}")),
        (Ok(e), other) => Check::holds(name, anchor, false, format!("{e} vs {}", other.label())),
        (Err(e), _) => Check::holds(name, anchor, false, e.to_string()),
    })
}

/// Checks the exchange middle term against the arrows at `v`, which must
/// be the arrows out of `v` or the arrows into `v`.
pub(crate) fn middle_check(q: &Quiver, v: i64, expected: &[i64]) -> Result<Check> {
    let mut out = Vec::new();
    let mut inn = Vec::new();
    for u in q.ids() {
        for _ in 0..q.mult(v, u)? {
            out.push(u);
        }
        for _ in 0..q.mult(u, v)? {
            inn.push(u);
        }
    }
    let mut exp = expected.to_vec();
    exp.sort_unstable();
    out.sort_unstable();
    inn.sort_unstable();
    Ok(Check::holds(
        format!("exchange middle term at {v}"),
        format!("middle term is the sum over vertices {exp:?}"),
        exp == out || exp == inn,
        format!("out {out:?}, in {inn:?}"),
    ))
}

/// Mutable state of a replay in progress.
pub(crate) struct Run {
    pub w: WeightTriple,
    pub quiver: Quiver,
    pub bindings: BTreeMap<i64, Option<Binding>>,
    pub steps: Vec<ExchangeStep>,
    initial: Vec<Binding>,
    initial_quiver: Quiver,
}

pub(crate) struct Step {
    pub vertex: i64,
    pub incoming: Option<Binding>,
    pub middle: Option<Vec<i64>>,
    pub sequences: Vec<SequenceRecord>,
    pub checks: Vec<Check>,
}

impl Run {
    /// Binds every vertex of the fixture to the bundle named by its label.
    pub fn from_fixture(name: &str, extra: &[Binding]) -> Result<Run> {
        let f = fixture(name)?;
        let w = WeightTriple::from_slice(&f.weights)?;
        let mut bindings = BTreeMap::new();
        for v in f.quiver.vertices() {
            let b = match extra.iter().find(|b| b.vertex == v.id) {
                Some(b) => b.clone(),
                None => Binding::new(v.id, v.label.clone(), StableObject::Ext(parse_bundle(w, &v.label)?)),
            };
            bindings.insert(v.id, Some(b));
        }
        let initial: Vec<Binding> = bindings.values().flatten().cloned().collect();
        Ok(Run { w, quiver: f.quiver.clone(), initial_quiver: f.quiver, bindings, steps: vec![], initial })
    }

    pub fn current(&self, v: i64) -> Result<Option<&Binding>> {
        self.bindings.get(&v).map(|b| b.as_ref()).ok_or(Error::UnknownVertex(v))
    }

    pub fn step(&mut self, s: Step) -> Result<()> {
        let mut checks = Vec::new();
        if let Some(m) = &s.middle {
            checks.push(middle_check(&self.quiver, s.vertex, m)?);
        }
        checks.extend(s.sequences.iter().map(additivity));
        checks.extend(s.checks);
        if let Some(b) = &s.incoming {
            checks.extend(name_check(self.w, b));
        }
        self.quiver = self.quiver.mutate(s.vertex)?;
        let outgoing = self.bindings.insert(s.vertex, s.incoming.clone()).ok_or(Error::UnknownVertex(s.vertex))?;
        self.steps.push(ExchangeStep {
            vertex: s.vertex,
            outgoing,
            incoming: s.incoming,
            sequences: s.sequences,
            checks,
            quiver: self.quiver.clone(),
        });
        Ok(())
    }

    #[allow(clippy::too_many_arguments)]
    pub fn finish(
        self,
        kind: &str,
        final_objects: Vec<Binding>,
        target: &str,
        window: SlopeWindow,
        sequences: Vec<SequenceRecord>,
        mut checks: Vec<Check>,
        mut limitations: Vec<String>,
    ) -> Result<ReplayReport> {
        let w = self.w;
        let t = fixture(target)?;
        let sequence: Vec<i64> = self.steps.iter().map(|s| s.vertex).collect();
        checks.extend(sequences.iter().map(additivity));
        for b in &final_objects {
            checks.extend(name_check(w, b));
            let label = t.quiver.vertex(b.vertex).map(|v| v.label.clone()).unwrap_or_default();
            checks.push(Check::equal(
                format!("target label at {}", b.vertex),
                "replayed summand matches the target vertex",
                &b.name,
                label,
            ));
        }
        let mut ids: Vec<i64> = final_objects.iter().map(|b| b.vertex).collect();
        ids.sort_unstable();
        checks.push(Check::equal(
            "summands cover the quiver",
            "one final summand per vertex",
            format!("{ids:?}"),
            format!("{:?}", self.quiver.ids()),
        ));
        checks.push(Check::holds(
            "final quiver equals target",
            format!("applying {sequence:?} reproduces {target} arrow for arrow"),
            self.quiver.arrow_set() == t.quiver.arrow_set(),
            "",
        ));
        let witness = is_isomorphic(&self.quiver, &t.quiver);
        let window = slope_report(w, window, &final_objects)?;
        let unknown: Vec<String> = window
            .entries
            .iter()
            .filter(|e| e.membership == Membership::Unknown)
            .map(|e| e.name.clone())
            .collect();
        if !unknown.is_empty() {
            limitations.push(format!(
                "slope-window membership undecided from tabulated slope-map values: {}",
                unknown.join(", ")
            ));
        }
        let final_quiver = self.quiver.with_labels(&final_objects.iter().map(|b| (b.vertex, b.name.clone())).collect());
        let mut report = ReplayReport {
            kind: kind.to_string(),
            weights: w,
            initial: self.initial,
            initial_quiver: self.initial_quiver,
            sequence,
            steps: self.steps,
            sequences,
            checks,
            final_objects,
            final_quiver,
            target: target.to_string(),
            witness,
            window,
            limitations,
            pass: false,
        };
        report.pass = report.verdict();
        Ok(report)
    }
}

/// `E<x>` with zero twist; `x` must be a box point.
pub(crate) fn ebox(x: LElement) -> ExtBundle {
    ExtBundle::new(x, x.weights().zero()).expect("box point")
}
