//! Sparse multivariate Laurent polynomials over `BigRat`, and univariate
//! truncated Laurent series.
//!
//! A [`MultiLaurent`] is a canonical sparse map from exponent vectors to
//! nonzero rational coefficients. Two polynomials are equal iff their term
//! maps are identical, so identity checks throughout the crate are plain
//! `==` comparisons.
//!
//! Exponents are machine integers, not bignums; every arithmetic step uses
//! checked addition and panics on overflow. All values reached by the
//! verification suites stay far below `i32::MAX`.

mod series;

pub use series::{TruncLaurent, Undecidable};

use crate::exact::BigRat;
use num_traits::{One, Zero};
use smallvec::SmallVec;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Exponent vector of a monomial; length equals the variable count.
pub type ExpVec = SmallVec<[i32; 8]>;

/// Substitution target for a single variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subst {
    /// `x_i <- 1`
    One,
    /// `x_i <- x_j`, `j != i`
    Var(usize),
    /// `x_i <- 1/x_j`, `j != i`
    Inv(usize),
}

/// Sparse multivariate Laurent polynomial in `nvars` variables.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiLaurent {
    nvars: usize,
    terms: BTreeMap<ExpVec, BigRat>,
}

pub(crate) fn add_exp(a: &ExpVec, b: &ExpVec) -> ExpVec {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| x.checked_add(*y).expect("exponent overflow"))
        .collect()
}

impl MultiLaurent {
    /// The zero polynomial.
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    /// The constant polynomial `1`.
    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRat::one())
    }

    /// A constant polynomial.
    pub fn constant(nvars: usize, c: BigRat) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(ExpVec::from_elem(0, nvars), c);
        }
        p
    }

    /// A single monomial `c * prod x_v^{exps[v]}`.
    pub fn monomial(nvars: usize, exps: &[i32], c: BigRat) -> Self {
        assert_eq!(exps.len(), nvars, "exponent vector length mismatch");
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(ExpVec::from_slice(exps), c);
        }
        p
    }

    /// The variable `x_i` (0-indexed).
    pub fn var(nvars: usize, i: usize) -> Self {
        Self::var_pow(nvars, i, 1)
    }

    /// `x_i^e`.
    pub fn var_pow(nvars: usize, i: usize, e: i32) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut exps = vec![0; nvars];
        exps[i] = e;
        Self::monomial(nvars, &exps, BigRat::one())
    }

    /// Build from a list of `(exponents, coefficient)` pairs, collecting
    /// like terms.
    pub fn from_terms<I>(nvars: usize, it: I) -> Self
    where
        I: IntoIterator<Item = (Vec<i32>, BigRat)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in it {
            assert_eq!(e.len(), nvars, "exponent vector length mismatch");
            p.add_term(ExpVec::from_slice(&e), c);
        }
        p
    }

    /// Adopt an already-sorted, duplicate-free, zero-free term list.
    pub(crate) fn from_sorted_terms(nvars: usize, terms: Vec<(ExpVec, BigRat)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0), "terms not sorted");
        debug_assert!(terms.iter().all(|(e, c)| e.len() == nvars && !c.is_zero()));
        Self {
            nvars,
            terms: terms.into_iter().collect(),
        }
    }

    fn add_term(&mut self, e: ExpVec, c: BigRat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterate terms in canonical (lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExpVec, &BigRat)> {
        self.terms.iter()
    }

    /// Coefficient of the given exponent vector (zero if absent).
    pub fn coeff(&self, exps: &[i32]) -> BigRat {
        assert_eq!(exps.len(), self.nvars);
        self.terms
            .get(exps as &[i32])
            .cloned()
            .unwrap_or_else(BigRat::zero)
    }

    /// Constant term: the coefficient of the all-zero exponent vector.
    pub fn ct(&self) -> BigRat {
        let zero_key = ExpVec::from_elem(0, self.nvars);
        self.terms
            .get(&zero_key)
            .cloned()
            .unwrap_or_else(BigRat::zero)
    }

    /// Smallest and largest exponent of variable `v` over all terms, or
    /// `None` for the zero polynomial.
    pub fn degree_range(&self, v: usize) -> Option<(i32, i32)> {
        assert!(v < self.nvars);
        let mut it = self.terms.keys();
        let first = it.next()?;
        let mut lo = first[v];
        let mut hi = first[v];
        for e in it {
            lo = lo.min(e[v]);
            hi = hi.max(e[v]);
        }
        Some((lo, hi))
    }

    /// Multiply by a scalar.
    pub fn scale(&self, c: &BigRat) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), v * c))
                .collect(),
        }
    }

    /// Integer power by repeated multiplication.
    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitute variable `i` by `1`, by `x_j`, or by `1/x_j` (`j != i`),
    /// recombining like terms.
    pub fn substitute(&self, i: usize, target: Subst) -> Self {
        assert!(i < self.nvars, "substitute: variable index out of range");
        if let Subst::Var(j) | Subst::Inv(j) = target {
            assert!(j < self.nvars, "substitute: target index out of range");
            assert!(j != i, "substitute: target variable must differ");
        }
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            let ei = ne[i];
            ne[i] = 0;
            match target {
                Subst::One => {}
                Subst::Var(j) => {
                    ne[j] = ne[j].checked_add(ei).expect("exponent overflow");
                }
                Subst::Inv(j) => {
                    ne[j] = ne[j].checked_sub(ei).expect("exponent overflow");
                }
            }
            out.add_term(ne, c.clone());
        }
        out
    }

    /// Replace `x_i` by `1/x_i`.
    pub fn invert_var(&self, i: usize) -> Self {
        assert!(i < self.nvars);
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            ne[i] = ne[i].checked_neg().expect("exponent overflow");
            out.terms.insert(ne, c.clone());
        }
        out
    }

    /// Replace every `x_i` by `1/x_i`.
    pub fn invert_all(&self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let ne: ExpVec = e
                .iter()
                .map(|x| x.checked_neg().expect("exponent overflow"))
                .collect();
            out.terms.insert(ne, c.clone());
        }
        out
    }

    /// Apply a variable permutation: `pi f(x_1,..,x_n) = f(x_{pi_1},..,x_{pi_n})`,
    /// i.e. the exponent of slot `i` moves to variable `perm[i]`.
    pub fn perm_apply(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.nvars, "permutation length mismatch");
        let mut seen = vec![false; self.nvars];
        for &p in perm {
            assert!(p < self.nvars && !seen[p], "not a permutation");
            seen[p] = true;
        }
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut ne = ExpVec::from_elem(0, self.nvars);
            for (i, &p) in perm.iter().enumerate() {
                ne[p] = e[i];
            }
            out.terms.insert(ne, c.clone());
        }
        out
    }

    /// Re-index variables into a larger ring: variable `i` of `self` becomes
    /// variable `map[i]` of the result.
    pub fn embed(&self, new_nvars: usize, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.nvars);
        assert!(map.iter().all(|&m| m < new_nvars));
        let mut out = Self::zero(new_nvars);
        for (e, c) in &self.terms {
            let mut ne = ExpVec::from_elem(0, new_nvars);
            for (i, &m) in map.iter().enumerate() {
                ne[m] = ne[m].checked_add(e[i]).expect("exponent overflow");
            }
            out.add_term(ne, c.clone());
        }
        out
    }

    /// Evaluate at a rational point. Coordinates hit by negative exponents
    /// must be nonzero.
    pub fn eval(&self, point: &[BigRat]) -> BigRat {
        assert_eq!(point.len(), self.nvars);
        let mut acc = BigRat::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (v, &exp) in e.iter().enumerate() {
                if exp == 0 {
                    continue;
                }
                let base = if exp > 0 {
                    point[v].clone()
                } else {
                    assert!(!point[v].is_zero(), "evaluation at a pole");
                    point[v].clone().recip()
                };
                for _ in 0..exp.unsigned_abs() {
                    term *= &base;
                }
            }
            acc += term;
        }
        acc
    }
}

impl Add for &MultiLaurent {
    type Output = MultiLaurent;
    fn add(self, rhs: &MultiLaurent) -> MultiLaurent {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiLaurent {
    type Output = MultiLaurent;
    fn sub(self, rhs: &MultiLaurent) -> MultiLaurent {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &MultiLaurent {
    type Output = MultiLaurent;
    fn neg(self) -> MultiLaurent {
        MultiLaurent {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Mul for &MultiLaurent {
    type Output = MultiLaurent;
    fn mul(self, rhs: &MultiLaurent) -> MultiLaurent {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = MultiLaurent::zero(self.nvars);
        // Iterate the smaller operand on the outside.
        let (small, big) = if self.terms.len() <= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        for (ea, ca) in &small.terms {
            for (eb, cb) in &big.terms {
                out.add_term(add_exp(ea, eb), ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for MultiLaurent {
    /// Debug text form: terms in lexicographic exponent order, coefficients
    /// as `p/q`, monomials as `x1^a1*...*xn^an` (zero exponents omitted).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}/{}", c.numer(), c.denom())?;
            for (v, &exp) in e.iter().enumerate() {
                if exp != 0 {
                    write!(f, "*x{}^{}", v + 1, exp)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiLaurent[{}]({})", self.nvars, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};

    fn x(n: usize, i: usize) -> MultiLaurent {
        MultiLaurent::var(n, i)
    }

    fn inv(n: usize, i: usize) -> MultiLaurent {
        MultiLaurent::var_pow(n, i, -1)
    }

    #[test]
    fn ring_ops_examples() {
        // (1 + 1/x)(1 + x) = 1/x + 2 + x
        let one = MultiLaurent::one(1);
        let p = &(&one + &inv(1, 0)) * &(&one + &x(1, 0));
        let expected = MultiLaurent::from_terms(
            1,
            vec![
                (vec![-1], rat(1)),
                (vec![0], rat(2)),
                (vec![1], rat(1)),
            ],
        );
        assert_eq!(p, expected);

        // p + (-p) = 0 with an empty term set
        let q = &p + &(-&p);
        assert!(q.is_zero());
        assert_eq!(q.nterms(), 0);

        // (1 - x1/x2)(1 - x2/x1) = 2 - x1/x2 - x2/x1
        let one2 = MultiLaurent::one(2);
        let a = &one2 - &MultiLaurent::monomial(2, &[1, -1], rat(1));
        let b = &one2 - &MultiLaurent::monomial(2, &[-1, 1], rat(1));
        let prod = &a * &b;
        let expected = MultiLaurent::from_terms(
            2,
            vec![
                (vec![0, 0], rat(2)),
                (vec![1, -1], rat(-1)),
                (vec![-1, 1], rat(-1)),
            ],
        );
        assert_eq!(prod, expected);
    }

    #[test]
    #[should_panic(expected = "variable count mismatch")]
    fn ring_ops_reject_mismatched_nvars() {
        let _ = &MultiLaurent::one(2) * &MultiLaurent::one(3);
    }

    #[test]
    fn substitute_examples() {
        // (1 - x1/x2) with x1 <- 1/x2 gives 1 - 1/x2^2
        let p = &MultiLaurent::one(2) - &MultiLaurent::monomial(2, &[1, -1], rat(1));
        let q = p.substitute(0, Subst::Inv(1));
        let expected =
            &MultiLaurent::one(2) - &MultiLaurent::monomial(2, &[0, -2], rat(1));
        assert_eq!(q, expected);

        // (1 - x1) with x1 <- 1 vanishes
        let p = &MultiLaurent::one(1) - &x(1, 0);
        assert!(p.substitute(0, Subst::One).is_zero());

        // (1 + 1/x1)^2 with x1 <- 1 gives 4
        let p = (&MultiLaurent::one(1) + &inv(1, 0)).pow(2);
        assert_eq!(p.substitute(0, Subst::One), MultiLaurent::constant(1, rat(4)));
    }

    #[test]
    #[should_panic(expected = "out of range")]
    fn substitute_rejects_bad_index() {
        MultiLaurent::one(2).substitute(5, Subst::One);
    }

    #[test]
    fn ct_examples() {
        let p = MultiLaurent::from_terms(
            1,
            vec![(vec![-1], rat(1)), (vec![0], rat(2)), (vec![1], rat(1))],
        );
        assert_eq!(p.ct(), rat(2));

        // (1+x)^4 / x^2 as a Laurent polynomial has constant term C(4,2) = 6
        let p = (&MultiLaurent::one(1) + &x(1, 0)).pow(4);
        let p = &p * &MultiLaurent::var_pow(1, 0, -2);
        assert_eq!(p.ct(), rat(6));

        assert_eq!(MultiLaurent::zero(3).ct(), rat(0));
    }

    #[test]
    fn perm_apply_examples() {
        // x1 * x2^2 under the transposition (1 2) becomes x2 * x1^2
        let p = MultiLaurent::monomial(2, &[1, 2], rat(1));
        assert_eq!(
            p.perm_apply(&[1, 0]),
            MultiLaurent::monomial(2, &[2, 1], rat(1))
        );

        // a symmetric polynomial is fixed by any permutation
        let sym = MultiLaurent::from_terms(
            3,
            vec![
                (vec![1, 0, 0], rat(1)),
                (vec![0, 1, 0], rat(1)),
                (vec![0, 0, 1], rat(1)),
            ],
        );
        assert_eq!(sym.perm_apply(&[2, 0, 1]), sym);

        // x1 under the 3-cycle sending slot 1 to x2 becomes x2
        let p = x(3, 0);
        assert_eq!(p.perm_apply(&[1, 2, 0]), x(3, 1));
    }

    #[test]
    #[should_panic(expected = "not a permutation")]
    fn perm_apply_rejects_invalid() {
        MultiLaurent::one(2).perm_apply(&[0, 0]);
    }

    #[test]
    fn display_form() {
        let p = MultiLaurent::from_terms(
            2,
            vec![(vec![-1, 2], ratio(-3, 4)), (vec![0, 0], rat(1))],
        );
        assert_eq!(p.to_string(), "-3/4*x1^-1*x2^2 + 1/1");
        assert_eq!(MultiLaurent::zero(2).to_string(), "0");
    }

    #[test]
    fn eval_with_negative_exponents() {
        // (1 - x1/x2) at (1, 2) = 1/2
        let p = &MultiLaurent::one(2) - &MultiLaurent::monomial(2, &[1, -1], rat(1));
        assert_eq!(p.eval(&[rat(1), rat(2)]), ratio(1, 2));
    }

    #[test]
    fn zero_variable_ring() {
        let c = MultiLaurent::constant(0, rat(5));
        assert_eq!(c.ct(), rat(5));
        assert_eq!((&c * &c).ct(), rat(25));
    }
}
