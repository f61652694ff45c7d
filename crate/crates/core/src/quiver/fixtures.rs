//! Named quivers: cuboid cluster quivers with their numbering overlays,
//! the starting quiver for
//! `(3,3,3)`, and the tubular targets both with the extra cluster arrow
//! (`target_*`) and as endomorphism-algebra quivers (`algebra_*`).

use serde::Serialize;

use super::{Arrow, Quiver, Vertex};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fixture {
    pub name: &'static str,
    pub description: &'static str,
    pub weights: [i64; 3],
    pub quiver: Quiver,
    /// Mutation sequence that reaches `target` from this quiver.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sequence: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<&'static str>,
}

fn a(from: i64, to: i64) -> Arrow {
    Arrow { from, to, mult: 1 }
}

fn build(vertices: Vec<Vertex>, arrows: &[Arrow]) -> Quiver {
    Quiver::new(vertices, arrows).expect("fixture is well formed")
}

/// `E<l2 x2 + l3 x3>` label.
fn box_label(l2: i64, l3: i64) -> String {
    let term = |k: i64, x: &str| match k {
        0 => String::new(),
        1 => x.to_string(),
        k => format!("{k}{x}"),
    };
    let parts: Vec<String> = [term(l2, "x2"), term(l3, "x3")].into_iter().filter(|s| !s.is_empty()).collect();
    if parts.is_empty() {
        "E".into()
    } else {
        format!("E<{}>", parts.join("+"))
    }
}

/// Grid quiver with arrows right, down, and from `(r, c)` to `(r-1, c-1)`.
fn grid(ids: &[Vec<i64>], labels: impl Fn(usize, usize) -> String, marks: &[Vec<&str>]) -> Quiver {
    let rows = ids.len();
    let cols = ids[0].len();
    let mut vertices = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let mut v = Vertex::new(ids[r][c], labels(r, c)).at(r as i64, c as i64);
            if !marks[r][c].is_empty() {
                v = v.marked(marks[r][c]);
            }
            vertices.push(v);
        }
    }
    vertices.sort_by_key(|v| v.id);
    let mut arrows = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                arrows.push(a(ids[r][c], ids[r][c + 1]));
            }
            if r + 1 < rows {
                arrows.push(a(ids[r][c], ids[r + 1][c]));
            }
            if r > 0 && c > 0 {
                arrows.push(a(ids[r][c], ids[r - 1][c - 1]));
            }
        }
    }
    build(vertices, &arrows)
}

fn cuboid_cluster_244() -> Quiver {
    // rows: coefficient of x3, columns: coefficient of x2
    let ids = vec![vec![3, 6, 1], vec![7, 5, 8], vec![2, 9, 4]];
    let marks = vec![vec!["3", "", "1"], vec!["", "5", ""], vec!["2", "", "4"]];
    grid(&ids, |r, c| box_label(c as i64, r as i64), &marks)
}

fn tubular_244(with_cluster_arrow: bool) -> Quiver {
    let v = |id, label: &str, r, c| Vertex::new(id, label).at(r, c);
    let vertices = vec![
        v(1, "E(x1-x2+x3)", 0, 2).marked("1"),
        v(2, "E(x1+x2-x3)", 2, 0).marked("2"),
        v(3, "τ⁻¹E*[1]", 0, 0).marked("3"),
        v(4, "E<2x2+2x3>*", 2, 2).marked("4"),
        v(5, "τ⁻¹E(-w)[1]", 1, 1).marked("5"),
        v(6, "τ⁻¹E<x2>[1]", 0, 1),
        v(7, "τ⁻¹E<x3>[1]", 1, 0),
        v(8, "E<2x2+x3>", 1, 2),
        v(9, "E<x2+2x3>", 2, 1),
    ];
    let mut arrows = vec![
        a(6, 3),
        a(1, 6),
        a(7, 3),
        a(5, 3),
        a(8, 1),
        a(2, 7),
        a(9, 2),
        a(4, 5),
        a(4, 9),
        a(4, 8),
    ];
    if with_cluster_arrow {
        arrows.push(a(3, 4));
    }
    build(vertices, &arrows)
}

fn cuboid_cluster_236() -> Quiver {
    // rows: coefficient of x2, columns: coefficient of x3
    let ids = vec![vec![7, 8, 5, 9, 1], vec![3, 10, 4, 6, 2]];
    let marks = vec![vec!["a", "b", "5", "c", "1"], vec!["3", "d", "4", "6", "2"]];
    grid(&ids, |r, c| box_label(r as i64, c as i64), &marks)
}

fn tubular_236(with_cluster_arrow: bool) -> Quiver {
    let v = |id, label: &str, r, c, m: &str| Vertex::new(id, label).at(r, c).marked(m);
    let vertices = vec![
        v(1, "E<4x3>**", 2, 1, "1"),
        v(2, "E(2x2-2x3)", 1, 3, "2"),
        v(3, "E<x2>(x3)", 2, 3, "3"),
        v(4, "τ⁻¹E<x2+2x3>*[1]", 1, 6, "4"),
        v(5, "E(3x3)", 0, 5, "5"),
        v(6, "τH[-1]", 1, 0, "6"),
        v(7, "τ⁻¹E[1]", 2, 4, "a"),
        v(8, "τ⁻¹E<x3>[1]", 2, 5, "b"),
        v(9, "E<3x3>", 0, 1, "c"),
        v(10, "E<x2+x3>", 2, 2, "d"),
    ];
    let mut arrows = vec![
        a(6, 9),
        a(6, 1),
        a(6, 2),
        a(9, 5),
        a(5, 4),
        a(2, 4),
        a(1, 10),
        a(10, 3),
        a(3, 7),
        a(7, 8),
        a(8, 4),
    ];
    if with_cluster_arrow {
        arrows.push(a(4, 6));
    }
    build(vertices, &arrows)
}

fn tbar_333(cluster: bool) -> Quiver {
    let v = |id, label: &str, r, c| Vertex::new(id, label).at(r, c);
    let vertices = vec![
        v(1, "E<x2+x3>", 0, 3).marked("1"),
        v(2, "E<x1+x3>", 1, 3).marked("2"),
        v(3, "E<x1+x2>", 2, 3).marked("3"),
        v(4, "E", 1, 0),
        v(5, "E<x1>", 0, 1),
        v(6, "E<x2>", 1, 1),
        v(7, "E<x3>", 2, 1),
        v(8, "G", 1, 2),
    ];
    let mut arrows = vec![a(4, 5), a(4, 6), a(4, 7), a(5, 8), a(6, 8), a(7, 8), a(8, 1), a(8, 2), a(8, 3)];
    if cluster {
        arrows.extend([a(8, 4), a(1, 5), a(2, 6), a(3, 7)]);
    }
    build(vertices, &arrows)
}

fn tubular_333(with_cluster_arrow: bool) -> Quiver {
    let v = |id, label: &str, r, c| Vertex::new(id, label).at(r, c);
    let vertices = vec![
        v(1, "F1[-1]", 0, 2).marked("1"),
        v(2, "F2[-1]", 1, 2).marked("2"),
        v(3, "F3[-1]", 2, 2).marked("3"),
        v(4, "E", 1, 0),
        v(5, "E<x1>", 0, 1),
        v(6, "E<x2>", 1, 1),
        v(7, "E<x3>", 2, 1),
        v(8, "G", 1, 3),
    ];
    let mut arrows = vec![a(4, 5), a(4, 6), a(4, 7), a(5, 1), a(6, 2), a(7, 3), a(1, 8), a(2, 8), a(3, 8)];
    if with_cluster_arrow {
        arrows.push(a(8, 4));
    }
    build(vertices, &arrows)
}

/// Every fixture, in catalog order.
pub fn fixtures() -> Vec<Fixture> {
    vec![
        Fixture {
            name: "cuboid_cluster_244",
            description: "cluster quiver of the tilting cuboid, weights (2,4,4), numbered overlay",
            weights: [2, 4, 4],
            quiver: cuboid_cluster_244(),
            sequence: Some(vec![1, 2, 3, 4, 5]),
            target: Some("target_tubular_244"),
        },
        Fixture {
            name: "target_tubular_244",
            description: "cluster quiver of the tubular tilting object, weights (2,4,4)",
            weights: [2, 4, 4],
            quiver: tubular_244(true),
            sequence: None,
            target: None,
        },
        Fixture {
            name: "algebra_tubular_244",
            description: "quiver of the tubular endomorphism algebra, weights (2,4,4)",
            weights: [2, 4, 4],
            quiver: tubular_244(false),
            sequence: None,
            target: None,
        },
        Fixture {
            name: "cuboid_cluster_236",
            description: "cluster quiver of the tilting cuboid, weights (2,3,6), lettered overlay a,b,c,d = 7,8,9,10",
            weights: [2, 3, 6],
            quiver: cuboid_cluster_236(),
            sequence: Some(vec![1, 2, 3, 4, 5, 6, 1]),
            target: Some("target_tubular_236"),
        },
        Fixture {
            name: "target_tubular_236",
            description: "cluster quiver of the tubular tilting object, weights (2,3,6)",
            weights: [2, 3, 6],
            quiver: tubular_236(true),
            sequence: None,
            target: None,
        },
        Fixture {
            name: "algebra_tubular_236",
            description: "quiver of the tubular endomorphism algebra, weights (2,3,6)",
            weights: [2, 3, 6],
            quiver: tubular_236(false),
            sequence: None,
            target: None,
        },
        Fixture {
            name: "tbar_cluster_333",
            description: "cluster quiver of the cuboid with E<x1+x2+x3> replaced by G, weights (3,3,3)",
            weights: [3, 3, 3],
            quiver: tbar_333(true),
            sequence: Some(vec![1, 2, 3]),
            target: Some("target_tubular_333"),
        },
        Fixture {
            name: "tbar_stable_333",
            description: "solid arrows of the endomorphism quiver of the same object in the stable category, weights (3,3,3)",
            weights: [3, 3, 3],
            quiver: tbar_333(false),
            sequence: None,
            target: None,
        },
        Fixture {
            name: "target_tubular_333",
            description: "cluster quiver of the tubular tilting object, weights (3,3,3)",
            weights: [3, 3, 3],
            quiver: tubular_333(true),
            sequence: None,
            target: None,
        },
        Fixture {
            name: "algebra_tubular_333",
            description: "quiver of the tubular endomorphism algebra, weights (3,3,3)",
            weights: [3, 3, 3],
            quiver: tubular_333(false),
            sequence: None,
            target: None,
        },
    ]
}

pub fn fixture_names() -> Vec<&'static str> {
    fixtures().into_iter().map(|f| f.name).collect()
}

pub fn fixture(name: &str) -> Result<Fixture> {
    fixtures().into_iter().find(|f| f.name == name).ok_or_else(|| Error::UnknownFixture(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::super::is_isomorphic;
    use super::*;

    #[test]
    fn sizes() {
        assert!(fixtures().len() >= 7);
        assert_eq!(fixture("cuboid_cluster_244").unwrap().quiver.len(), 9);
        assert_eq!(fixture("cuboid_cluster_236").unwrap().quiver.len(), 10);
        assert_eq!(fixture("target_tubular_333").unwrap().quiver.len(), 8);
        assert_eq!(fixture("cuboid_cluster_244").unwrap().quiver.arrow_count(), 16);
        assert_eq!(fixture("cuboid_cluster_236").unwrap().quiver.arrow_count(), 17);
        assert_eq!(fixture("tbar_cluster_333").unwrap().quiver.arrow_count(), 13);
        assert!(matches!(fixture("nope"), Err(Error::UnknownFixture(_))));
    }

    #[test]
    fn cuboid_labels_follow_the_grid() {
        let q = fixture("cuboid_cluster_244").unwrap().quiver;
        assert_eq!(q.vertex(3).unwrap().label, "E");
        assert_eq!(q.vertex(1).unwrap().label, "E<2x2>");
        assert_eq!(q.vertex(2).unwrap().label, "E<2x3>");
        assert_eq!(q.vertex(4).unwrap().label, "E<2x2+2x3>");
        assert_eq!(q.vertex(5).unwrap().label, "E<x2+x3>");
        assert_eq!(q.mult(5, 3).unwrap(), 1);
        let q = fixture("cuboid_cluster_236").unwrap().quiver;
        assert_eq!(q.vertex(7).unwrap().label, "E");
        assert_eq!(q.vertex(1).unwrap().label, "E<4x3>");
        assert_eq!(q.vertex(2).unwrap().label, "E<x2+4x3>");
        assert_eq!(q.vertex(10).unwrap().label, "E<x2+x3>");
        assert_eq!(q.mult(10, 7).unwrap(), 1);
    }

    #[test]
    fn cluster_targets_add_one_arrow() {
        for t in ["244", "236", "333"] {
            let c = fixture(&format!("target_tubular_{t}")).unwrap().quiver;
            let d = fixture(&format!("algebra_tubular_{t}")).unwrap().quiver;
            let extra: Vec<_> = c.arrow_set().difference(&d.arrow_set()).cloned().collect();
            assert_eq!(extra.len(), 1, "{t}");
            assert!(d.arrow_set().is_subset(&c.arrow_set()));
        }
        let c = fixture("tbar_cluster_333").unwrap().quiver;
        let s = fixture("tbar_stable_333").unwrap().quiver;
        assert!(s.arrow_set().is_subset(&c.arrow_set()));
    }

    #[test]
    fn recorded_sequences_reach_targets_exactly() {
        for f in fixtures() {
            let (Some(seq), Some(t)) = (&f.sequence, f.target) else { continue };
            let target = fixture(t).unwrap().quiver;
            let got = f.quiver.apply(seq).unwrap();
            assert_eq!(got.arrow_set(), target.arrow_set(), "{}", f.name);
            assert!(is_isomorphic(&got, &target).is_some());
        }
    }

    #[test]
    fn double_mutation_is_identity_on_fixtures() {
        for f in fixtures() {
            for id in f.quiver.ids() {
                let q = f.quiver.mutate(id).unwrap();
                assert_eq!(q.mutate(id).unwrap(), f.quiver);
                assert_eq!(q, f.quiver.mutate_by_rewriting(id).unwrap());
            }
        }
    }
}
