use serde::Serialize;

use super::Quiver;

/// A vertex bijection `q1 -> q2` preserving all multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Isomorphism {
    /// `(id in q1, id in q2)`, in `q1` vertex order.
    pub pairs: Vec<(i64, i64)>,
    /// `(label in q1, label in q2)`, same order.
    pub labels: Vec<(String, String)>,
}

fn degrees(q: &Quiver) -> Vec<(u32, u32, usize)> {
    let m = q.matrix();
    let n = q.len();
    (0..n)
        .map(|i| {
            let out: u32 = m[i].iter().sum();
            let inn: u32 = (0..n).map(|j| m[j][i]).sum();
            let nbrs = (0..n).filter(|&j| m[i][j] + m[j][i] > 0).count();
            (out, inn, nbrs)
        })
        .collect()
}

/// Exact multigraph isomorphism, ignoring labels. Backtracking over
/// vertex assignments, pruned by degree and by adjacency to the vertices
/// already placed.
pub fn is_isomorphic(q1: &Quiver, q2: &Quiver) -> Option<Isomorphism> {
    let n = q1.len();
    if n != q2.len() || q1.arrow_count() != q2.arrow_count() {
        return None;
    }
    let d1 = degrees(q1);
    let d2 = degrees(q2);
    let mut s1 = d1.clone();
    let mut s2 = d2.clone();
    s1.sort_unstable();
    s2.sort_unstable();
    if s1 != s2 {
        return None;
    }
    // place the most constrained vertices first
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (d2.iter().filter(|d| **d == d1[i]).count(), std::cmp::Reverse(d1[i].2)));
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(q1, q2, &d1, &d2, &order, 0, &mut map, &mut used) {
        let pairs = (0..n).map(|i| (q1.vertices()[i].id, q2.vertices()[map[i]].id)).collect();
        let labels = (0..n)
            .map(|i| (q1.vertices()[i].label.clone(), q2.vertices()[map[i]].label.clone()))
            .collect();
        Some(Isomorphism { pairs, labels })
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    q1: &Quiver,
    q2: &Quiver,
    d1: &[(u32, u32, usize)],
    d2: &[(u32, u32, usize)],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let (m1, m2) = (q1.matrix(), q2.matrix());
    let v = order[depth];
    for cand in 0..q2.len() {
        if used[cand] || d1[v] != d2[cand] {
            continue;
        }
        let ok = order[..depth].iter().all(|&u| {
            let w = map[u];
            m1[v][u] == m2[cand][w] && m1[u][v] == m2[w][cand]
        });
        if !ok {
            continue;
        }
        map[v] = cand;
        used[cand] = true;
        if extend(q1, q2, d1, d2, order, depth + 1, map, used) {
            return true;
        }
        used[cand] = false;
        map[v] = usize::MAX;
    }
    false
}
