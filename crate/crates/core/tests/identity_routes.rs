//! Route agreement for the named identity families at moderate scale; the
//! acceptance suite pushes the same pairings to the full desk-scale ranges.

use ctkit::ctcore::ct_product;
use ctkit::exact::{factorial, rat, BigRat};
use ctkit::identities::*;
use ctkit::laurent::MultiLaurent;

#[test]
fn identity1_routes_agree() {
    for n in 1..=4 {
        let r = verify_identity1(n);
        assert!(r.equal, "identity1 n={n}: {:?}", r.routes);
        assert_eq!(r.value(), Some(&a_n(n)));
    }
}

#[test]
fn identity2_routes_agree() {
    for n in 1..=4usize {
        for m in 0..=2u64 {
            let r = verify_identity2(n, m);
            assert!(r.equal, "identity2 n={n} m={m}: {:?}", r.routes);
            assert_eq!(r.value(), Some(&identity2_rhs(n, m)));
        }
    }
}

#[test]
fn conjecture_routes_agree() {
    for n in 1..=4usize {
        for m in 0..=2u64 {
            let r = verify_conjecture(n, m);
            assert!(r.equal, "conjecture n={n} m={m}: {:?}", r.routes);
        }
    }
    assert_eq!(conjecture_rhs(2, 1), rat(7));
    assert_eq!(conjecture_rhs(3, 0), rat(7));
    // m = 0 reduces to the plane-partition count
    for n in 1..=5 {
        assert_eq!(conjecture_rhs(n, 0), a_n(n), "n={n}");
    }
}

#[test]
fn morris_grid_agrees() {
    for a in 0..=2 {
        for b in 0..=2 {
            for k in 0..=2 {
                for n in 1..=3 {
                    let r = verify_morris(a, b, k, n);
                    assert!(r.equal, "morris a={a} b={b} k={k} n={n}: {:?}", r.routes);
                }
            }
        }
    }
}

/// The product form exactly as displayed for nonnegative integer
/// parameters: `prod_l (a+b+kl)! (k(l+1))! / ((a+kl)! (b+kl)! k!)`.
fn morris_factorial_form(a: u64, b: u64, k: u64, n: usize) -> BigRat {
    let mut acc = rat(1);
    for l in 0..n as u64 {
        acc *= BigRat::from_integer(factorial(a + b + k * l) * factorial(k * (l + 1)));
        acc /= BigRat::from_integer(factorial(a + k * l) * factorial(b + k * l) * factorial(k));
    }
    acc
}

#[test]
fn morris_rising_form_matches_factorials_for_integers() {
    for a in 0..=3u64 {
        for b in 0..=3u64 {
            for k in 0..=3u64 {
                for n in 1..=4usize {
                    assert_eq!(
                        morris_rhs(&rat(a as i64), b, k, n),
                        morris_factorial_form(a, b, k, n),
                        "a={a} b={b} k={k} n={n}"
                    );
                }
            }
        }
    }
}

#[test]
fn macdonald_grid_agrees() {
    for n in 1..=2usize {
        for a in 0..=2 {
            for b in 0..=2 {
                for c in 0..=2 {
                    let r = verify_macdonald(n, a, b, c);
                    assert!(r.equal, "macdonald n={n} a={a} b={b} c={c}: {:?}", r.routes);
                }
            }
        }
    }
    for a in 0..=1 {
        for b in 0..=1 {
            for c in 0..=1 {
                let r = verify_macdonald(3, a, b, c);
                assert!(r.equal, "macdonald n=3 a={a} b={b} c={c}: {:?}", r.routes);
            }
        }
    }
}

#[test]
fn macdonald_type_d_specialization() {
    // a = b = 0 leaves only the cross factors; build that integrand from
    // scratch and compare.
    for n in 2..=3usize {
        for c in 1..=if n == 3 { 1 } else { 2 } {
            let mut factors = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    let mut up = vec![0; n];
                    up[i] = 1;
                    up[j] = -1;
                    let r1 = &MultiLaurent::one(n) - &MultiLaurent::monomial(n, &up, rat(1));
                    let dn: Vec<i32> = up.iter().map(|x| -x).collect();
                    let r2 = &MultiLaurent::one(n) - &MultiLaurent::monomial(n, &dn, rat(1));
                    let mut both = vec![0; n];
                    both[i] = 1;
                    both[j] = 1;
                    let p1 = &MultiLaurent::one(n) - &MultiLaurent::monomial(n, &both, rat(1));
                    let nboth: Vec<i32> = both.iter().map(|x| -x).collect();
                    let p2 = &MultiLaurent::one(n) - &MultiLaurent::monomial(n, &nboth, rat(1));
                    for _ in 0..c {
                        factors.extend([r1.clone(), r2.clone(), p1.clone(), p2.clone()]);
                    }
                }
            }
            assert_eq!(
                ct_product(&factors),
                macdonald_direct(n, 0, 0, c as u32),
                "n={n} c={c}"
            );
        }
    }
}

#[test]
fn macdonald_route_for_identity2_small() {
    for n in 1..=5usize {
        for m in 0..=3u64 {
            assert_eq!(
                identity2_via_macdonald(n, m),
                identity2_rhs(n, m),
                "n={n} m={m}"
            );
        }
    }
}
