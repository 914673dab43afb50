//! Oracle equivalence for the partial-fraction reduction: the brute-force
//! standard-denominator engine, the matching expansion, and the symmetric
//! reduction theorem must agree exactly, and the closed forms of the
//! canonical matchings must match their stated shapes.

use ctkit::exact::{double_factorial, rat, BigInt, BigRat};
use ctkit::laurent::MultiLaurent;
use ctkit::reduction::{
    bbar, bfun, ct_via_pf, ct_via_standard, enumerate_matchings, q_matching, reduce_theorem,
    seeded_symmetric_poly, Block, Gratifying, PartialMatching,
};

/// The canonical matching {{1, k+1}, .., {k, 2k}} (plus the odd singleton).
fn canonical_matching(n: usize) -> PartialMatching {
    let k = n / 2;
    let mut blocks: Vec<Block> = (0..k).map(|i| Block::Pair(i, k + i)).collect();
    if n % 2 == 1 {
        blocks.push(Block::Singleton(n - 1));
    }
    PartialMatching::from_blocks(blocks)
}

#[test]
fn oracle_equivalence_on_seeded_symmetric_polynomials() {
    for n in 1..=4 {
        for seed in 0..6 {
            let p = seeded_symmetric_poly(n, seed);
            let standard = ct_via_standard(&p);
            let pf = ct_via_pf(&Gratifying::new(&p));
            let theorem = reduce_theorem(&p, n);
            assert_eq!(standard, pf, "standard vs matching sum at n={n} seed={seed}");
            assert_eq!(standard, theorem, "standard vs theorem at n={n} seed={seed}");
        }
    }
}

#[test]
fn matching_counts_are_double_factorials() {
    for n in 1..=11usize {
        let count = enumerate_matchings(n).len();
        let expected = if n % 2 == 0 {
            double_factorial(n as i64 - 1)
        } else {
            double_factorial(n as i64)
        };
        assert_eq!(BigInt::from(count), expected, "n = {n}");
        // every matching is full with at most one singleton
        for m in enumerate_matchings(n) {
            assert!(m.is_full(n));
            assert!(m.singleton_count() <= 1);
        }
    }
}

#[test]
fn canonical_matching_closed_forms() {
    for k in 1..=3usize {
        // even case: Q_{M0} = Bbar_k(x_{k+1..2k})^2 * x_{k+1} .. x_{2k}
        let n = 2 * k;
        let g = Gratifying::new(&MultiLaurent::one(n));
        let q = q_matching(&g, &canonical_matching(n));
        let embed: Vec<usize> = (k..2 * k).collect();
        let bb = bbar(k).embed(n, &embed);
        let mut spectators = vec![0; n];
        for e in spectators.iter_mut().skip(k) {
            *e = 1;
        }
        let xs = MultiLaurent::monomial(n, &spectators, rat(1));
        assert_eq!(q, &bb.pow(2) * &xs, "even closed form, k = {k}");
        // alternative expression Bbar_k(x) * Bbar_k(1/x)
        let mut bb_inv = bb.clone();
        for v in k..2 * k {
            bb_inv = bb_inv.invert_var(v);
        }
        assert_eq!(q, &bb * &bb_inv, "even alternative form, k = {k}");

        // odd case: Q_{M1} = (-1)^k B_k(x_{k+1..2k})^2
        let n = 2 * k + 1;
        let g = Gratifying::new(&MultiLaurent::one(n));
        let q = q_matching(&g, &canonical_matching(n));
        let embed: Vec<usize> = (k..2 * k).collect();
        let b = bfun(k).embed(n, &embed);
        let mut expected = b.pow(2);
        if k % 2 == 1 {
            expected = -&expected;
        }
        assert_eq!(q, expected, "odd closed form, k = {k}");
        // alternative expression B_k(x) * B_k(1/x)
        let mut b_inv = b.clone();
        for v in k..2 * k {
            b_inv = b_inv.invert_var(v);
        }
        assert_eq!(q, &b * &b_inv, "odd alternative form, k = {k}");
    }
}

#[test]
fn b_forms_product_determinant_duality() {
    // the constructors assert product == determinant internally
    for k in 0..=4 {
        let _ = bbar(k);
        let _ = bfun(k);
    }
}

#[test]
fn symmetric_shortcut_collapses_the_matching_sum() {
    // For symmetric P and even n, every Q_M has the same constant term:
    // CT Q = (n-1)!! CT Q_{M0}.
    for k in 1..=3usize {
        let n = 2 * k;
        for seed in [1, 5] {
            let p = seeded_symmetric_poly(n, seed);
            let g = Gratifying::new(&p);
            let total = ct_via_pf(&g);
            let m0 = q_matching(&g, &canonical_matching(n)).ct();
            let dfact = BigRat::from_integer(double_factorial(n as i64 - 1));
            assert_eq!(total, dfact * m0, "n = {n}, seed = {seed}");
        }
    }
}

#[test]
fn gratifying_states_stay_proper() {
    // Numerator degree in the smallest active variable stays strictly below
    // the denominator degree |S| along every reduction path.
    fn walk(g: &Gratifying, depth: usize) {
        let Some(&i) = g.active().first() else { return };
        let numerator = g.to_standard().numerator;
        if !numerator.is_zero() {
            let (_, hi) = numerator.degree_range(i).unwrap();
            assert!(
                (hi as i64) < g.active().len() as i64,
                "improper numerator at depth {depth}"
            );
        }
        for (_, branch) in g.pf_step(i) {
            walk(&branch, depth + 1);
        }
    }
    for n in 1..=4 {
        for seed in 0..3 {
            let p = seeded_symmetric_poly(n, seed);
            walk(&Gratifying::new(&p), 0);
        }
    }
}

#[test]
fn unpruned_second_singletons_vanish() {
    // The pruning is justified branch by branch: any second singleton
    // branch carries an identically zero numerator.
    fn walk(g: &Gratifying, depth: usize) {
        let Some(&i) = g.active().first() else { return };
        for (block, branch) in g.pf_step_unpruned(i) {
            if matches!(block, Block::Singleton(_)) && g.matching().singleton_count() == 1 {
                assert!(branch.numer().is_zero(), "depth {depth}");
                continue;
            }
            walk(&branch, depth + 1);
        }
    }
    for n in 2..=4 {
        let p = seeded_symmetric_poly(n, 3);
        walk(&Gratifying::new(&p), 0);
    }
}

#[test]
fn reduction_handles_asymmetric_numerators_in_pf_routes() {
    // The matching expansion needs no symmetry; only reduce_theorem does.
    let n = 3;
    let p = &MultiLaurent::one(n) + &MultiLaurent::monomial(n, &[2, 1, 0], rat(3));
    assert_eq!(ct_via_standard(&p), ct_via_pf(&Gratifying::new(&p)));
}
