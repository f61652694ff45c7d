//! Quivers without loops or 2-cycles, and their mutation.

mod canon;
mod fixtures;
mod iso;
mod search;

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use canon::{canonical_form, CanonicalForm};
pub use fixtures::{fixture, fixture_names, fixtures, Fixture};
pub use iso::{is_isomorphic, Isomorphism};
pub use search::{search, search_with, SearchOptions, SearchResult};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub id: i64,
    pub label: String,
    /// Layout hint `(row, col)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub row: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub col: Option<i64>,
    /// Overlay mark from a numbered figure, e.g. `"u1"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mark: Option<String>,
}

impl Vertex {
    pub fn new(id: i64, label: impl Into<String>) -> Self {
        Vertex { id, label: label.into(), row: None, col: None, mark: None }
    }

    pub fn at(mut self, row: i64, col: i64) -> Self {
        self.row = Some(row);
        self.col = Some(col);
        self
    }

    pub fn marked(mut self, mark: impl Into<String>) -> Self {
        self.mark = Some(mark.into());
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Arrow {
    pub from: i64,
    pub to: i64,
    pub mult: u32,
}

/// Wire format: `{"vertices": [...], "arrows": [...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverJson {
    pub vertices: Vec<Vertex>,
    pub arrows: Vec<Arrow>,
}

/// A finite quiver with integer arrow multiplicities, no loops and no
/// oriented 2-cycles.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<Vertex>,
    m: Vec<Vec<u32>>,
}

impl Quiver {
    /// Builds a quiver; repeated arrows add up. Unknown ids and zero
    /// multiplicities are malformed input, loops and 2-cycles are
    /// invariant violations.
    pub fn new(vertices: Vec<Vertex>, arrows: &[Arrow]) -> Result<Self> {
        let mut index = BTreeMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.id, i).is_some() {
                return Err(Error::MalformedQuiver(format!("duplicate vertex id {}", v.id)));
            }
        }
        let n = vertices.len();
        let mut m = vec![vec![0u32; n]; n];
        for a in arrows {
            let (Some(&i), Some(&j)) = (index.get(&a.from), index.get(&a.to)) else {
                return Err(Error::MalformedQuiver(format!(
                    "arrow {} -> {} uses an unknown vertex",
                    a.from, a.to
                )));
            };
            if a.mult == 0 {
                return Err(Error::MalformedQuiver(format!(
                    "arrow {} -> {} has multiplicity 0",
                    a.from, a.to
                )));
            }
            m[i][j] += a.mult;
        }
        let q = Quiver { vertices, m };
        q.validate()?;
        Ok(q)
    }

    pub fn from_json(j: QuiverJson) -> Result<Self> {
        Self::new(j.vertices, &j.arrows)
    }

    pub fn to_json(&self) -> QuiverJson {
        QuiverJson { vertices: self.vertices.clone(), arrows: self.arrows() }
    }

    fn validate(&self) -> Result<()> {
        let n = self.len();
        for i in 0..n {
            if self.m[i][i] != 0 {
                return Err(Error::InvalidQuiver(format!("loop at vertex {}", self.vertices[i].id)));
            }
            for j in i + 1..n {
                if self.m[i][j] > 0 && self.m[j][i] > 0 {
                    return Err(Error::InvalidQuiver(format!(
                        "2-cycle between {} and {}",
                        self.vertices[i].id, self.vertices[j].id
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertices_mut(&mut self) -> &mut [Vertex] {
        &mut self.vertices
    }

    pub fn ids(&self) -> Vec<i64> {
        self.vertices.iter().map(|v| v.id).collect()
    }

    pub fn index_of(&self, id: i64) -> Result<usize> {
        self.vertices.iter().position(|v| v.id == id).ok_or(Error::UnknownVertex(id))
    }

    pub fn vertex(&self, id: i64) -> Result<&Vertex> {
        Ok(&self.vertices[self.index_of(id)?])
    }

    /// Multiplicity matrix in vertex order.
    pub fn matrix(&self) -> &[Vec<u32>] {
        &self.m
    }

    pub fn mult(&self, from: i64, to: i64) -> Result<u32> {
        Ok(self.m[self.index_of(from)?][self.index_of(to)?])
    }

    /// Arrows in vertex order.
    pub fn arrows(&self) -> Vec<Arrow> {
        let mut out = Vec::new();
        for (i, row) in self.m.iter().enumerate() {
            for (j, &k) in row.iter().enumerate() {
                if k > 0 {
                    out.push(Arrow { from: self.vertices[i].id, to: self.vertices[j].id, mult: k });
                }
            }
        }
        out
    }

    pub fn arrow_count(&self) -> u32 {
        self.m.iter().flatten().sum()
    }

    /// Arrows keyed by vertex id, ignoring vertex order and labels.
    pub fn arrow_set(&self) -> HashSet<Arrow> {
        self.arrows().into_iter().collect()
    }

    /// Skew-symmetric exchange matrix `b_ij = m_ij - m_ji`.
    pub fn exchange_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.len();
        let mut b = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                b[i][j] = self.m[i][j] as i64 - self.m[j][i] as i64;
            }
        }
        b
    }

    fn from_exchange(vertices: Vec<Vertex>, b: &[Vec<i64>]) -> Self {
        let m = b.iter().map(|row| row.iter().map(|&x| x.max(0) as u32).collect()).collect();
        Quiver { vertices, m }
    }

    /// Mutation at vertex `id`:
    /// `b'_ij = -b_ij` if `k ∈ {i, j}`, else `b_ij + (|b_ik| b_kj + b_ik |b_kj|) / 2`.
    pub fn mutate(&self, id: i64) -> Result<Quiver> {
        let k = self.index_of(id)?;
        let b = self.exchange_matrix();
        let n = self.len();
        let mut nb = b.clone();
        for i in 0..n {
            for j in 0..n {
                nb[i][j] = if i == k || j == k {
                    -b[i][j]
                } else {
                    b[i][j] + (b[i][k].abs() * b[k][j] + b[i][k] * b[k][j].abs()) / 2
                };
            }
        }
        Ok(Quiver::from_exchange(self.vertices.clone(), &nb))
    }

    /// Mutation by graph rewriting: add `j -> l` for every path
    /// `j -> k -> l`, reverse the arrows at `k`, then cancel 2-cycles.
    pub fn mutate_by_rewriting(&self, id: i64) -> Result<Quiver> {
        let k = self.index_of(id)?;
        let n = self.len();
        let mut arrows: Vec<(usize, usize)> = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for _ in 0..self.m[i][j] {
                    arrows.push((i, j));
                }
            }
        }
        let into: Vec<usize> = arrows.iter().filter(|a| a.1 == k).map(|a| a.0).collect();
        let out: Vec<usize> = arrows.iter().filter(|a| a.0 == k).map(|a| a.1).collect();
        for &j in &into {
            for &l in &out {
                arrows.push((j, l));
            }
        }
        for a in arrows.iter_mut() {
            if a.0 == k || a.1 == k {
                *a = (a.1, a.0);
            }
        }
        loop {
            let pos = arrows.iter().enumerate().find_map(|(p, &(i, j))| {
                arrows.iter().position(|&(a, b)| a == j && b == i).map(|q| (p, q))
            });
            match pos {
                Some((p, q)) => {
                    let (hi, lo) = if p > q { (p, q) } else { (q, p) };
                    arrows.swap_remove(hi);
                    arrows.swap_remove(lo);
                }
                None => break,
            }
        }
        let mut m = vec![vec![0u32; n]; n];
        for (i, j) in arrows {
            m[i][j] += 1;
        }
        Ok(Quiver { vertices: self.vertices.clone(), m })
    }

    /// Mutates left to right along `seq`.
    pub fn apply(&self, seq: &[i64]) -> Result<Quiver> {
        seq.iter().try_fold(self.clone(), |q, &v| q.mutate(v))
    }

    /// Same arrows, relabelled vertices.
    pub fn with_labels(&self, labels: &BTreeMap<i64, String>) -> Quiver {
        let mut q = self.clone();
        for v in q.vertices.iter_mut() {
            if let Some(l) = labels.get(&v.id) {
                v.label = l.clone();
            }
        }
        q
    }

    /// Same quiver with vertices listed in a different order.
    pub fn permuted(&self, order: &[usize]) -> Quiver {
        let vertices = order.iter().map(|&i| self.vertices[i].clone()).collect();
        let m = order.iter().map(|&i| order.iter().map(|&j| self.m[i][j]).collect()).collect();
        Quiver { vertices, m }
    }

    /// Induced subquiver without the given vertex.
    pub fn without(&self, id: i64) -> Result<Quiver> {
        let k = self.index_of(id)?;
        let keep: Vec<usize> = (0..self.len()).filter(|&i| i != k).collect();
        Ok(self.permuted(&keep))
    }
}

impl Serialize for Quiver {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Quiver {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Quiver::from_json(QuiverJson::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// Parses a sequence such as `"1,2,3"` or `"1 2 3"`.
pub fn parse_sequence(s: &str) -> Result<Vec<i64>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad vertex id {t:?}"))))
        .collect()
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    pub fn random_quiver(rng: &mut StdRng, n: usize, max_mult: u32) -> Quiver {
        let vertices = (0..n).map(|i| Vertex::new(i as i64 + 1, format!("v{}", i + 1))).collect();
        let mut arrows = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let k = rng.gen_range(0..=max_mult);
                if k == 0 {
                    continue;
                }
                let (a, b) = if rng.gen_bool(0.5) { (i, j) } else { (j, i) };
                arrows.push(Arrow { from: a as i64 + 1, to: b as i64 + 1, mult: k });
            }
        }
        Quiver::new(vertices, &arrows).unwrap()
    }

    fn line(n: i64) -> Quiver {
        let vs = (1..=n).map(|i| Vertex::new(i, "")).collect();
        let arrows: Vec<_> = (1..n).map(|i| Arrow { from: i, to: i + 1, mult: 1 }).collect();
        Quiver::new(vs, &arrows).unwrap()
    }

    #[test]
    fn sink_reflection() {
        let q = line(2);
        let r = q.mutate(2).unwrap();
        assert_eq!(r.arrows(), vec![Arrow { from: 2, to: 1, mult: 1 }]);
    }

    #[test]
    fn composite_arrow_and_cancellation() {
        let q = line(3);
        let r = q.mutate(2).unwrap();
        let mut got = r.arrows();
        got.sort();
        assert_eq!(
            got,
            vec![
                Arrow { from: 1, to: 3, mult: 1 },
                Arrow { from: 2, to: 1, mult: 1 },
                Arrow { from: 3, to: 2, mult: 1 },
            ]
        );
        // a 3-cycle mutated at a vertex loses its diagonal
        let back = r.mutate(1).unwrap();
        assert!(back.mult(3, 2).unwrap() + back.mult(2, 3).unwrap() == 0);
    }

    #[test]
    fn rejects_bad_input() {
        let vs = vec![Vertex::new(1, "a"), Vertex::new(2, "b")];
        let loop_ = Quiver::new(vs.clone(), &[Arrow { from: 1, to: 1, mult: 1 }]);
        assert!(matches!(loop_, Err(Error::InvalidQuiver(_))));
        let two = Quiver::new(
            vs.clone(),
            &[Arrow { from: 1, to: 2, mult: 1 }, Arrow { from: 2, to: 1, mult: 1 }],
        );
        assert!(matches!(two, Err(Error::InvalidQuiver(_))));
        let unknown = Quiver::new(vs.clone(), &[Arrow { from: 1, to: 3, mult: 1 }]);
        assert!(matches!(unknown, Err(Error::MalformedQuiver(_))));
        let dup = Quiver::new(vec![Vertex::new(1, "a"), Vertex::new(1, "b")], &[]);
        assert!(matches!(dup, Err(Error::MalformedQuiver(_))));
        assert_eq!(line(2).mutate(7), Err(Error::UnknownVertex(7)));
    }

    #[test]
    fn json_round_trip() {
        let q = line(4).mutate(2).unwrap();
        let s = serde_json::to_string(&q).unwrap();
        let back: Quiver = serde_json::from_str(&s).unwrap();
        assert_eq!(back, q);
        let bad = r#"{"vertices":[{"id":1,"label":"a"}],"arrows":[{"from":1,"to":1,"mult":1}]}"#;
        assert!(serde_json::from_str::<Quiver>(bad).is_err());
    }

    #[test]
    fn sequences() {
        assert_eq!(parse_sequence("1,2, 3").unwrap(), vec![1, 2, 3]);
        assert_eq!(parse_sequence("").unwrap(), Vec::<i64>::new());
        assert!(parse_sequence("1,x").is_err());
        let q = line(5);
        assert_eq!(q.apply(&[]).unwrap(), q);
        let s = [2, 4, 3, 2, 5, 1];
        let mut rev = s.to_vec();
        rev.reverse();
        assert_eq!(q.apply(&s).unwrap().apply(&rev).unwrap(), q);
    }

    #[test]
    fn two_mutation_implementations_agree() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..1000 {
            let n = rng.gen_range(1..=6);
            let q = random_quiver(&mut rng, n, 2);
            for id in q.ids() {
                let a = q.mutate(id).unwrap();
                let b = q.mutate_by_rewriting(id).unwrap();
                assert_eq!(a, b);
                a.validate().unwrap();
                assert_eq!(a.mutate(id).unwrap(), q);
                let e = a.exchange_matrix();
                for i in 0..n {
                    for j in 0..n {
                        assert_eq!(e[i][j], -e[j][i]);
                    }
                }
            }
        }
    }
}
