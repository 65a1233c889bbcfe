//! Acceptance suite: the closed forms against the brute-force oracle and
//! the degree/closure identities, over the full desk-scale grids. Every
//! comparison is exact; one pass line prints per criterion.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use treepaths::exactcount::{
    bridge_path_count, dejong_binary, pair_total, rooted_count_prop, rooted_count_theorem,
    type_path_count, unrooted_count_prop, unrooted_count_theorem, unrooted_leaf_count, vr, vu,
    Count, PathLength, RootedShape, UnrootedShape,
};
use treepaths::oracle::{
    build_rooted, build_unrooted, cross_half_histogram, degree_formula_counts,
    distance_histogram, type_histogram_full, ExplicitTree, DEFAULT_VERTEX_BUDGET,
};

/// (m, max depth) pairs keeping the BFS-heavy builds at a few thousand
/// vertices.
const ROOTED_GRID: [(u64, u32); 4] = [(2, 10), (3, 7), (4, 6), (5, 5)];
const UNROOTED_GRID: [(u64, u32); 4] = [(2, 20), (3, 14), (4, 12), (5, 10)];

fn len(t: u32) -> PathLength {
    PathLength::new(t).unwrap()
}

fn rooted_shapes() -> impl Iterator<Item = (u64, u32)> {
    ROOTED_GRID
        .iter()
        .flat_map(|&(m, max)| (1..=max).map(move |r| (m, r)))
}

fn unrooted_shapes() -> impl Iterator<Item = (u64, u32)> {
    UNROOTED_GRID
        .iter()
        .flat_map(|&(m, max)| (1..=max).map(move |d| (m, d)))
}

#[test]
fn criterion_01_master_equivalence_rooted() {
    let zero = Count::zero();
    for (m, r) in rooted_shapes() {
        let shape = RootedShape::new(m, r).unwrap();
        let tree = build_rooted(m, r, DEFAULT_VERTEX_BUDGET).unwrap();
        let hist = distance_histogram(&tree);
        for t in 1..=2 * r {
            let formula = rooted_count_prop(&shape, len(t));
            let oracle = hist.counts.get(&t).unwrap_or(&zero);
            assert_eq!(
                &formula, oracle,
                "rooted m={m} r={r} t={t}: formula {formula} vs oracle {oracle}"
            );
        }
        assert!(hist.counts.keys().all(|&t| t <= 2 * r));
    }
    println!("criterion 1 (master equivalence, rooted): PASS");
}

#[test]
fn criterion_02_master_equivalence_unrooted() {
    let zero = Count::zero();
    for (m, d) in unrooted_shapes() {
        let shape = UnrootedShape::new(m, d).unwrap();
        let tree = build_unrooted(m, d, DEFAULT_VERTEX_BUDGET).unwrap();
        let hist = distance_histogram(&tree);
        for t in 1..=d {
            let formula = unrooted_count_prop(&shape, len(t));
            let oracle = hist.counts.get(&t).unwrap_or(&zero);
            assert_eq!(
                &formula, oracle,
                "unrooted m={m} D={d} t={t}: formula {formula} vs oracle {oracle}"
            );
        }
        assert!(hist.counts.keys().all(|&t| t <= d));
    }
    println!("criterion 2 (master equivalence, unrooted): PASS");
}

#[test]
fn criterion_03_theorem_proposition_identity() {
    for (m, r) in rooted_shapes() {
        let shape = RootedShape::new(m, r).unwrap();
        for t in 1..=2 * r {
            assert_eq!(
                rooted_count_theorem(&shape, len(t)).unwrap(),
                rooted_count_prop(&shape, len(t)),
                "rooted m={m} r={r} t={t}"
            );
        }
    }
    for (m, d) in unrooted_shapes() {
        let shape = UnrootedShape::new(m, d).unwrap();
        for t in 1..=d {
            assert_eq!(
                unrooted_count_theorem(&shape, len(t)).unwrap(),
                unrooted_count_prop(&shape, len(t)),
                "unrooted m={m} D={d} t={t}"
            );
        }
    }
    // both sides of each piecewise seam for every parity case
    for m in 2u64..=5 {
        for k in 1u32..=6 {
            for r in [2 * k - 2, 2 * k - 1, 2 * k, 2 * k + 1] {
                let shape = RootedShape::new(m, r).unwrap();
                for t in [2 * k - 1, 2 * k] {
                    if t <= 2 * r {
                        assert_eq!(
                            rooted_count_theorem(&shape, len(t)).unwrap(),
                            rooted_count_prop(&shape, len(t))
                        );
                    }
                }
            }
        }
    }
    println!("criterion 3 (theorem/proposition identity): PASS");
}

#[test]
fn criterion_04_closure_identity() {
    for (m, r) in rooted_shapes() {
        let shape = RootedShape::new(m, r).unwrap();
        let expected = pair_total(&shape.vertex_count());
        let formula_sum: Count = (1..=2 * r)
            .map(|t| rooted_count_prop(&shape, len(t)))
            .sum();
        assert_eq!(formula_sum, expected, "rooted m={m} r={r}");
        let hist = distance_histogram(&build_rooted(m, r, DEFAULT_VERTEX_BUDGET).unwrap());
        assert_eq!(hist.total(), expected, "rooted histogram m={m} r={r}");
    }
    for (m, d) in unrooted_shapes() {
        let shape = UnrootedShape::new(m, d).unwrap();
        let expected = pair_total(&shape.vertex_count());
        let formula_sum: Count = (1..=d)
            .map(|t| unrooted_count_prop(&shape, len(t)))
            .sum();
        assert_eq!(formula_sum, expected, "unrooted m={m} D={d}");
        let hist = distance_histogram(&build_unrooted(m, d, DEFAULT_VERTEX_BUDGET).unwrap());
        assert_eq!(hist.total(), expected, "unrooted histogram m={m} D={d}");
    }
    println!("criterion 4 (closure identity): PASS");
}

#[test]
fn criterion_05_bridge_decomposition() {
    let zero = Count::zero();
    for (m, d) in unrooted_shapes() {
        let shape = UnrootedShape::new(m, d).unwrap();
        let (first, second) = shape.half_shapes();
        let tree = build_unrooted(m, d, DEFAULT_VERTEX_BUDGET).unwrap();
        let cross = cross_half_histogram(&tree).unwrap();
        for t in 1..=d {
            let bridge = bridge_path_count(&shape, len(t)).unwrap();
            let recomposed = rooted_count_prop(&first, len(t))
                + rooted_count_prop(&second, len(t))
                + &bridge;
            assert_eq!(
                recomposed,
                unrooted_count_prop(&shape, len(t)),
                "decomposition m={m} D={d} t={t}"
            );
            let observed = cross.get(&t).unwrap_or(&zero);
            assert_eq!(&bridge, observed, "cross-half m={m} D={d} t={t}");
        }
    }
    println!("criterion 5 (bridge decomposition): PASS");
}

#[test]
fn criterion_06_lemma_type_histograms() {
    let zero = Count::zero();
    let empty = BTreeMap::new();
    for (m, r) in rooted_shapes() {
        let tree = build_rooted(m, r, DEFAULT_VERTEX_BUDGET).unwrap();
        let full = type_histogram_full(&tree).unwrap();
        for t in 1..=2 * r {
            let by_s = full.get(&t).unwrap_or(&empty);
            for s in 0..=t / 2 {
                // each depth-d vertex roots a perfect subtree of depth r-d
                let mut expected = Count::zero();
                for d in 0..=r {
                    let sub = RootedShape::new(m, r - d).unwrap();
                    expected += BigUint::from(m).pow(d)
                        * type_path_count(&sub, s, len(t)).unwrap();
                }
                let observed = by_s.get(&s).unwrap_or(&zero);
                assert_eq!(
                    &expected, observed,
                    "lemma m={m} r={r} t={t} s={s}"
                );
            }
        }
    }
    println!("criterion 6 (lemma type histograms): PASS");
}

#[test]
fn criterion_07_dejong_special_case() {
    for d in 3u32..=14 {
        let shape = UnrootedShape::new(2, d).unwrap();
        let n = unrooted_leaf_count(&shape).unwrap();
        for t in 3..=d {
            assert_eq!(
                dejong_binary(&n, len(t), d).unwrap(),
                unrooted_count_theorem(&shape, len(t)).unwrap(),
                "m=2 D={d} t={t}"
            );
        }
    }
    // spot value: diameter 3, 4 leaves, t=3
    assert_eq!(
        dejong_binary(&Count::from(4u32), len(3), 3).unwrap(),
        Count::from(4u32)
    );
    println!("criterion 7 (De Jong special case): PASS");
}

fn random_tree(rng: &mut ChaCha8Rng, n: usize) -> ExplicitTree {
    let mut adjacency: Vec<Vec<u32>> = vec![Vec::new(); n];
    for v in 1..n {
        let parent = rng.gen_range(0..v);
        adjacency[parent].push(v as u32);
        adjacency[v].push(parent as u32);
    }
    ExplicitTree::from_adjacency(adjacency)
}

#[test]
fn criterion_08_degree_formulas() {
    let zero = Count::zero();
    let check = |tree: &ExplicitTree, label: &str| {
        let hist = distance_histogram(tree);
        let (p1, p2, p3) = degree_formula_counts(tree);
        for (t, value) in [(1u32, p1), (2, p2), (3, p3)] {
            let observed = hist.counts.get(&t).unwrap_or(&zero);
            assert_eq!(&value, observed, "{label} t={t}");
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0x7E3E5);
    for i in 0..50 {
        let n = rng.gen_range(2..=2000);
        check(&random_tree(&mut rng, n), &format!("random tree {i} (n={n})"));
    }
    for (m, r) in rooted_shapes() {
        check(
            &build_rooted(m, r, DEFAULT_VERTEX_BUDGET).unwrap(),
            &format!("rooted m={m} r={r}"),
        );
    }
    for (m, d) in unrooted_shapes() {
        check(
            &build_unrooted(m, d, DEFAULT_VERTEX_BUDGET).unwrap(),
            &format!("unrooted m={m} D={d}"),
        );
    }
    println!("criterion 8 (degree formulas): PASS");
}

#[test]
fn criterion_09_big_integer_cli() {
    let output = std::process::Command::new(env!("CARGO_BIN_EXE_treepaths"))
        .args(["count", "unrooted", "--m", "5", "--diameter", "40", "--t", "39"])
        .output()
        .expect("run treepaths binary");
    assert!(output.status.success());
    let printed = String::from_utf8(output.stdout).unwrap();
    let value: BigUint = printed.trim().parse().expect("decimal string");
    assert!(value > BigUint::from(u64::MAX), "must exceed 2^64");
    assert!(!printed.contains('e') && !printed.contains('.'));

    // Theorem 1 identity recomputed from scratch: t=39 odd, so the count is
    // m^19 (V(40) - V(38)) with V(d) = ((m+1)m^{d/2} - 2)/(m-1) for even d.
    let m = BigUint::from(5u32);
    let v = |d: u32| (BigUint::from(6u32) * m.pow(d / 2) - 2u32) / BigUint::from(4u32);
    let expected = m.pow(19) * (v(40) - v(38));
    assert_eq!(value, expected);
    assert_eq!(vu(5, 40).unwrap(), v(40));
    assert_eq!(vu(5, 38).unwrap(), v(38));
    println!("criterion 9 (big-integer CLI output): PASS");
}

#[test]
fn criterion_10_divisibility_fuzz() {
    // symbolic sweep; any inexact division panics inside the formulas
    for m in 2u64..=50 {
        for t in 1u32..=60 {
            let tl = len(t);
            for r in 0u32..=40 {
                let shape = RootedShape::new(m, r).unwrap();
                let prop = rooted_count_prop(&shape, tl);
                if t <= 2 * r {
                    let thm = rooted_count_theorem(&shape, tl).unwrap();
                    assert_eq!(prop, thm);
                }
            }
            // the halved lemma case depends only on (m, t, s)
            let deep = RootedShape::new(m, 60).unwrap();
            for s in 0..=t / 2 {
                type_path_count(&deep, s, tl).unwrap();
            }
            for d in 0u32..=40 {
                let shape = UnrootedShape::new(m, d).unwrap();
                let prop = unrooted_count_prop(&shape, tl);
                if t <= d {
                    let thm = unrooted_count_theorem(&shape, tl).unwrap();
                    assert_eq!(prop, thm);
                }
                if d >= 1 {
                    bridge_path_count(&shape, tl).unwrap();
                    unrooted_leaf_count(&shape).unwrap();
                }
            }
        }
        for d in 0u32..=40 {
            vr(m, d).unwrap();
            vu(m, d).unwrap();
        }
    }
    println!("criterion 10 (divisibility fuzz): PASS");
}
