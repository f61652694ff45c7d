use proptest::prelude::*;
use proptest::sample::{select, Index};

use tubular_core::bundles::ExtBundle;
use tubular_core::quiver::{canonical_form, is_isomorphic, Arrow, Quiver, Vertex};
use tubular_core::WeightTriple;

fn triple() -> impl Strategy<Value = WeightTriple> {
    select(vec![[2, 4, 4], [2, 3, 6], [3, 3, 3], [2, 3, 7], [2, 2, 5]])
        .prop_map(|p| WeightTriple::new(p[0], p[1], p[2]).unwrap())
}

fn bundle(w: WeightTriple, x: Index, z: Index) -> ExtBundle {
    let boxed = w.cuboid();
    let window = w.window(2);
    ExtBundle::new(boxed[x.index(boxed.len())], window[z.index(window.len())]).unwrap()
}

fn quiver() -> impl Strategy<Value = Quiver> {
    (2usize..9).prop_flat_map(|n| {
        proptest::collection::vec((0u32..3, any::<bool>()), n * (n - 1) / 2).prop_map(move |cells| {
            let vertices = (1..=n as i64).map(|i| Vertex::new(i, format!("v{i}"))).collect();
            let mut arrows = Vec::new();
            let mut k = 0;
            for i in 1..=n as i64 {
                for j in i + 1..=n as i64 {
                    let (mult, forward) = cells[k];
                    k += 1;
                    if mult > 0 {
                        let (from, to) = if forward { (i, j) } else { (j, i) };
                        arrows.push(Arrow { from, to, mult });
                    }
                }
            }
            Quiver::new(vertices, &arrows).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn stable_isomorphism_is_class_equality(w in triple(), a in any::<(Index, Index)>(), b in any::<(Index, Index)>()) {
        let (e, f) = (bundle(w, a.0, a.1), bundle(w, b.0, b.1));
        prop_assert_eq!(e.eq_ext(&f), e.class() == f.class());
    }

    #[test]
    fn twisting_preserves_stable_isomorphism(w in triple(), a in any::<(Index, Index)>(), b in any::<(Index, Index)>(), t in any::<Index>()) {
        let (e, f) = (bundle(w, a.0, a.1), bundle(w, b.0, b.1));
        let window = w.window(1);
        let t = window[t.index(window.len())];
        prop_assert_eq!(e.eq_ext(&f), e.twist(t).eq_ext(&f.twist(t)));
        prop_assert_eq!(e.tau().tau_inv(), e);
    }

    #[test]
    fn shifts_compose(w in triple(), a in any::<(Index, Index)>(), n in -3i64..=3, m in -3i64..=3) {
        let e = bundle(w, a.0, a.1);
        let one = e.shift(n).and_then(|s| s.shift(m)).unwrap();
        prop_assert!(one.eq_ext(&e.shift(n + m).unwrap()));
        prop_assert!(e.shift(n).and_then(|s| s.shift(-n)).unwrap().eq_ext(&e));
        prop_assert_eq!(e.suspend().unwrap().rank(), 2);
    }

    #[test]
    fn mutation_is_an_involution(q in quiver(), pick in any::<Index>()) {
        let ids = q.ids();
        let v = ids[pick.index(ids.len())];
        let once = q.mutate(v).unwrap();
        prop_assert_eq!(&once, &q.mutate_by_rewriting(v).unwrap());
        prop_assert_eq!(once.mutate(v).unwrap(), q);
    }

    #[test]
    fn reversed_sequence_undoes(q in quiver(), picks in proptest::collection::vec(any::<Index>(), 0..6)) {
        let ids = q.ids();
        let seq: Vec<i64> = picks.iter().map(|p| ids[p.index(ids.len())]).collect();
        let there = q.apply(&seq).unwrap();
        let back: Vec<i64> = seq.iter().rev().copied().collect();
        prop_assert_eq!(there.apply(&back).unwrap(), q);
    }

    #[test]
    fn isomorphism_ignores_vertex_order(q in quiver(), seed in any::<u64>()) {
        let mut order: Vec<usize> = (0..q.len()).collect();
        let mut s = seed;
        for i in (1..order.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (s >> 33) as usize % (i + 1));
        }
        let p = q.permuted(&order);
        prop_assert_eq!(canonical_form(&p), canonical_form(&q));
        let wit = is_isomorphic(&q, &p).expect("a permutation is an isomorphism");
        for (a, b) in &wit.pairs {
            for (c, d) in &wit.pairs {
                prop_assert_eq!(q.mult(*a, *c).unwrap(), p.mult(*b, *d).unwrap());
            }
        }
    }
}
