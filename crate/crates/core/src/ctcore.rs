//! Exact constant-term engines.
//!
//! [`ct_standard`] evaluates the constant term of `N / D` where `D` is the
//! standard denominator `prod_{i in S} (1 - x_i) * prod_{i<j in S} (1 - x_i x_j)`
//! and every factor expands as a geometric series with nonnegative
//! exponents. Since all expansion coefficients are `1`, the constant term
//! is a weighted count of solutions of a small linear system, which
//! [`count_denominator_solutions`] enumerates exactly.
//!
//! [`ct_product`] handles plain products of Laurent polynomials (the Morris
//! and Macdonald integrands) with reachability pruning.

use crate::exact::{BigInt, BigRat};
use crate::laurent::{ExpVec, MultiLaurent};
use num_traits::Zero;
use rayon::prelude::*;
use smallvec::SmallVec;

/// A constant-term problem over the standard denominator.
///
/// The denominator factors exist only over the `active` variables;
/// all other variables are spectators and carry no denominator factor, so
/// only numerator terms with exponent zero in every spectator contribute.
#[derive(Clone, Debug)]
pub struct StandardCTProblem {
    pub numerator: MultiLaurent,
    /// Strictly increasing list of active variable indices.
    pub active: Vec<usize>,
    pub scale: BigRat,
}

impl StandardCTProblem {
    pub fn new(numerator: MultiLaurent, active: Vec<usize>, scale: BigRat) -> Self {
        let mut sorted = active.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted, active, "active set must be sorted and unique");
        if let Some(&last) = active.last() {
            assert!(last < numerator.nvars(), "active index out of range");
        }
        Self {
            numerator,
            active,
            scale,
        }
    }
}

/// Number of solutions `{a_i >= 0, b_ij >= 0}` of
/// `a_i + sum_{j != i} b_ij = v_i` for every `i`.
///
/// This is the coefficient of `x^v` in the expanded standard denominator.
/// Enumeration is depth-first over the pair variables `b_ij`, each bounded
/// by the remaining budget `min(v_i, v_j)`; the `a_i` absorb the slack.
///
/// Panics on a negative component.
pub fn count_denominator_solutions(v: &[i32]) -> BigInt {
    assert!(
        v.iter().all(|&x| x >= 0),
        "count_denominator_solutions: negative component"
    );
    let mut rem: SmallVec<[i32; 8]> = SmallVec::from_slice(v);
    let pairs: Vec<(usize, usize)> = (0..v.len())
        .flat_map(|i| ((i + 1)..v.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| v[i] > 0 && v[j] > 0)
        .collect();
    BigInt::from(count_rec(&pairs, &mut rem))
}

fn count_rec(pairs: &[(usize, usize)], rem: &mut [i32]) -> u128 {
    let Some((&(i, j), rest)) = pairs.split_first() else {
        return 1;
    };
    let cap = rem[i].min(rem[j]);
    let mut total = count_rec(rest, rem);
    for _ in 0..cap {
        rem[i] -= 1;
        rem[j] -= 1;
        total = total
            .checked_add(count_rec(rest, rem))
            .expect("solution count overflow");
    }
    rem[i] += cap;
    rem[j] += cap;
    total
}

/// The same depth-first enumeration as [`count_denominator_solutions`], but
/// with subtree counts memoized. After the pairs incident to one variable
/// are fixed, the subproblem is again a complete-graph count over the other
/// variables' remaining budgets; it depends only on the multiset of those
/// budgets, so states are normalized by sorting before lookup. The cache is
/// shared across all the terms of one numerator.
struct CountCache {
    memo: std::collections::HashMap<SmallVec<[i32; 8]>, u128>,
}

impl CountCache {
    fn new() -> Self {
        Self {
            memo: std::collections::HashMap::new(),
        }
    }

    fn count(&mut self, rem: &[i32]) -> u128 {
        if rem.len() <= 1 {
            // one variable left: a_i absorbs the whole budget
            return 1;
        }
        let mut key: SmallVec<[i32; 8]> = SmallVec::from_slice(rem);
        key.sort_unstable();
        if let Some(&c) = self.memo.get(&key) {
            return c;
        }
        let budget = key[key.len() - 1];
        let mut rest: SmallVec<[i32; 8]> = SmallVec::from_slice(&key[..key.len() - 1]);
        let total = self.tuple_rec(budget, 0, &mut rest);
        self.memo.insert(key, total);
        total
    }

    /// Enumerate the pair values joining the current variable to each
    /// remaining partner depth-first, bounded by `min(budget, rem_j)`, then
    /// recurse into the reduced complete-graph problem.
    fn tuple_rec(&mut self, budget: i32, idx: usize, rest: &mut SmallVec<[i32; 8]>) -> u128 {
        if idx == rest.len() {
            let rest = rest.clone();
            return self.count(&rest);
        }
        let cap = budget.min(rest[idx]);
        let mut total = self.tuple_rec(budget, idx + 1, rest);
        for b in 1..=cap {
            rest[idx] -= b;
            total = total
                .checked_add(self.tuple_rec(budget - b, idx + 1, rest))
                .expect("solution count overflow");
            rest[idx] += b;
        }
        total
    }
}

/// Constant term of `numerator / D` in the iterated-Laurent expansion where
/// every denominator factor expands with nonnegative exponents:
///
/// `scale * sum over terms e with e <= 0 on the active set and e = 0 on the
/// spectators of coeff(e) * count_denominator_solutions(-e)`.
pub fn ct_standard(prob: &StandardCTProblem) -> BigRat {
    let nvars = prob.numerator.nvars();
    let mut is_active = vec![false; nvars];
    for &i in &prob.active {
        is_active[i] = true;
    }
    let terms: Vec<(&ExpVec, &BigRat)> = prob.numerator.terms().collect();
    let sum = terms
        .par_iter()
        .with_min_len(1024)
        .fold(
            || (CountCache::new(), BigRat::zero()),
            |(mut cache, acc), (e, c)| {
                let mut v: SmallVec<[i32; 8]> = SmallVec::new();
                for (idx, &exp) in e.iter().enumerate() {
                    if is_active[idx] {
                        if exp > 0 {
                            return (cache, acc);
                        }
                        v.push(-exp);
                    } else if exp != 0 {
                        return (cache, acc);
                    }
                }
                let count = cache.count(&v);
                (cache, acc + *c * BigRat::from_integer(count.into()))
            },
        )
        .map(|(_, acc)| acc)
        .reduce(BigRat::zero, |a, b| a + b);
    sum * &prob.scale
}

/// Per-variable requirement on the exponent of a surviving monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExponentGoal {
    /// The final exponent must be exactly zero (plain CT, spectators).
    Zero,
    /// The final exponent must be nonpositive (active variables, whose
    /// deficit the denominator expansion absorbs).
    NonPositive,
}

type TermVec = Vec<(ExpVec, BigRat)>;

/// Multiply a sorted term list by a (small) factor as a k-way merge: each
/// factor monomial shifts the whole list by a constant exponent vector,
/// which preserves lexicographic order, so the k shifted streams merge in
/// one pass with like terms combined on the fly.
fn merge_mul(acc: &TermVec, factor: &TermVec) -> TermVec {
    use crate::laurent::add_exp;
    let k = factor.len();
    let mut pos = vec![0usize; k];
    let mut heads: Vec<Option<ExpVec>> = (0..k)
        .map(|s| acc.first().map(|(e, _)| add_exp(e, &factor[s].0)))
        .collect();
    let mut out: TermVec = Vec::with_capacity(acc.len() + acc.len() / 2);
    loop {
        let mut best: Option<usize> = None;
        for s in 0..k {
            if let Some(key) = &heads[s] {
                match best {
                    None => best = Some(s),
                    Some(b) => {
                        if *key < *heads[b].as_ref().unwrap() {
                            best = Some(s);
                        }
                    }
                }
            }
        }
        let Some(s) = best else { break };
        let key = heads[s].take().unwrap();
        let coeff = &acc[pos[s]].1 * &factor[s].1;
        pos[s] += 1;
        heads[s] = acc.get(pos[s]).map(|(e, _)| add_exp(e, &factor[s].0));
        match out.last_mut() {
            Some(last) if last.0 == key => {
                last.1 += coeff;
                if last.1.is_zero() {
                    out.pop();
                }
            }
            _ => out.push((key, coeff)),
        }
    }
    out
}

/// Multiply the factors while discarding monomials that no completion by
/// the remaining factors can bring back to the goal region. The dropped
/// monomials contribute nothing to any constant term that respects the
/// goals, so the result is interchangeable with the full product there.
pub fn product_for_ct(factors: &[MultiLaurent], goals: &[ExponentGoal]) -> MultiLaurent {
    if factors.is_empty() {
        return MultiLaurent::one(goals.len());
    }
    let nvars = factors[0].nvars();
    assert_eq!(goals.len(), nvars, "one goal per variable");
    assert!(
        factors.iter().all(|f| f.nvars() == nvars),
        "variable count mismatch"
    );
    if factors.iter().any(|f| f.is_zero()) {
        return MultiLaurent::zero(nvars);
    }

    // suffix_lo[p][v] / suffix_hi[p][v]: extreme exponent sums of variable v
    // over factors p..end.
    let m = factors.len();
    let mut suffix_lo = vec![vec![0i64; nvars]; m + 1];
    let mut suffix_hi = vec![vec![0i64; nvars]; m + 1];
    for p in (0..m).rev() {
        for v in 0..nvars {
            let (lo, hi) = factors[p].degree_range(v).unwrap();
            suffix_lo[p][v] = suffix_lo[p + 1][v] + lo as i64;
            suffix_hi[p][v] = suffix_hi[p + 1][v] + hi as i64;
        }
    }

    let mut acc: TermVec = vec![(ExpVec::from_elem(0, nvars), BigRat::from_integer(1.into()))];
    for p in 0..m {
        let fv: TermVec = factors[p]
            .terms()
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        acc = merge_mul(&acc, &fv);
        let lo = &suffix_lo[p + 1];
        let hi = &suffix_hi[p + 1];
        acc.retain(|(e, _)| {
            e.iter().enumerate().all(|(v, &exp)| match goals[v] {
                ExponentGoal::Zero => {
                    exp as i64 + lo[v] <= 0 && exp as i64 + hi[v] >= 0
                }
                ExponentGoal::NonPositive => exp as i64 + lo[v] <= 0,
            })
        });
        if acc.is_empty() {
            return MultiLaurent::zero(nvars);
        }
    }
    MultiLaurent::from_sorted_terms(nvars, acc)
}

/// Constant term of a finite product of Laurent polynomials.
pub fn ct_product(factors: &[MultiLaurent]) -> BigRat {
    if factors.is_empty() {
        return BigRat::from_integer(1.into());
    }
    let nvars = factors[0].nvars();
    product_for_ct(factors, &vec![ExponentGoal::Zero; nvars]).ct()
}
