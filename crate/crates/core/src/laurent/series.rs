//! Univariate truncated Laurent series with a finite principal part.
//!
//! A [`TruncLaurent`] knows its coefficients for exponents `low..=order` and
//! guarantees that nothing lives below `low`; coefficients above `order` are
//! unknown, not zero. Every operation computes the largest order at which
//! the result is still fully determined, so a missing coefficient can never
//! be silently read as zero. Reading past the tracked order is an explicit
//! [`Undecidable`] error.

use crate::exact::BigRat;
use num_traits::{One, Zero};
use std::fmt;

/// A coefficient was requested beyond the tracked truncation order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Undecidable {
    pub var: &'static str,
    pub exponent: i32,
    pub order: i32,
}

impl fmt::Display for Undecidable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "coefficient of {}^{} is beyond the tracked order {}",
            self.var, self.exponent, self.order
        )
    }
}

impl std::error::Error for Undecidable {}

/// Truncated univariate Laurent series: coefficients for `low..=order`,
/// exactly zero below `low`, unknown above `order`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncLaurent {
    var: &'static str,
    low: i32,
    order: i32,
    /// Coefficients of `var^low ..= var^order`; empty when `order < low`.
    coeffs: Vec<BigRat>,
}

impl TruncLaurent {
    /// Series with the given coefficients starting at exponent `low`, known
    /// exactly up to `order`; missing positions are zero-padded.
    pub fn new(var: &'static str, low: i32, coeffs: Vec<BigRat>, order: i32) -> Self {
        let needed = if order >= low {
            (order - low + 1) as usize
        } else {
            0
        };
        assert!(
            coeffs.len() <= needed,
            "more coefficients than the requested order admits"
        );
        let mut coeffs = coeffs;
        coeffs.resize(needed, BigRat::zero());
        Self {
            var,
            low,
            order,
            coeffs,
        }
        .trimmed()
    }

    /// The zero series, known through `order`.
    pub fn zero_to(var: &'static str, order: i32) -> Self {
        Self {
            var,
            low: order + 1,
            order,
            coeffs: Vec::new(),
        }
    }

    /// The constant `1`, known through `order`.
    pub fn one(var: &'static str, order: i32) -> Self {
        Self::monomial(var, 0, order)
    }

    /// `var^k`, known through `order`.
    pub fn monomial(var: &'static str, k: i32, order: i32) -> Self {
        assert!(order >= k, "monomial exponent beyond requested order");
        Self::new(var, k, vec![BigRat::one()], order)
    }

    /// Drop leading stored zeros so `low` is tight.
    fn trimmed(mut self) -> Self {
        while let Some(c) = self.coeffs.first() {
            if c.is_zero() {
                self.coeffs.remove(0);
                self.low += 1;
            } else {
                break;
            }
        }
        if self.coeffs.is_empty() {
            self.low = self.order + 1;
        }
        self
    }

    pub fn var(&self) -> &'static str {
        self.var
    }

    /// Largest exponent with a known coefficient.
    pub fn order(&self) -> i32 {
        self.order
    }

    /// No coefficients exist below this exponent.
    pub fn low(&self) -> i32 {
        self.low
    }

    /// Coefficient of `var^k`, or an error if `k` is beyond the order.
    pub fn coeff(&self, k: i32) -> Result<BigRat, Undecidable> {
        if k < self.low {
            return Ok(BigRat::zero());
        }
        if k > self.order {
            return Err(Undecidable {
                var: self.var,
                exponent: k,
                order: self.order,
            });
        }
        Ok(self.coeffs[(k - self.low) as usize].clone())
    }

    /// Constant term (coefficient of `var^0`).
    pub fn ct(&self) -> Result<BigRat, Undecidable> {
        self.coeff(0)
    }

    /// Exponent of the first known nonzero coefficient; `None` when every
    /// known coefficient vanishes (the series may be zero or may have
    /// valuation beyond the order — the two are indistinguishable here).
    pub fn valuation(&self) -> Option<i32> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|p| self.low + p as i32)
    }

    /// Restrict knowledge to `order`.
    pub fn truncate(&self, order: i32) -> Self {
        if order >= self.order {
            return self.clone();
        }
        let keep = if order >= self.low {
            (order - self.low + 1) as usize
        } else {
            0
        };
        Self {
            var: self.var,
            low: self.low,
            order,
            coeffs: self.coeffs[..keep].to_vec(),
        }
        .trimmed()
    }

    pub fn scale(&self, c: &BigRat) -> Self {
        if c.is_zero() {
            return Self::zero_to(self.var, self.order);
        }
        Self {
            var: self.var,
            low: self.low,
            order: self.order,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiply by `var^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            var: self.var,
            low: self.low + k,
            order: self.order + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Add a constant without affecting the tracked order.
    pub fn add_scalar(&self, c: &BigRat) -> Self {
        let order = self.order;
        let known = Self::new(self.var, 0, vec![c.clone()], order.max(0));
        self.add(&known.truncate(order))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.var, rhs.var, "series variable mismatch");
        let order = self.order.min(rhs.order);
        let low = self.low.min(rhs.low);
        let mut coeffs = Vec::new();
        if order >= low {
            coeffs.reserve((order - low + 1) as usize);
            for k in low..=order {
                // both coefficients are known here because k <= order
                let a = self.coeff(k).unwrap();
                let b = rhs.coeff(k).unwrap();
                coeffs.push(a + b);
            }
        }
        Self {
            var: self.var,
            low,
            order,
            coeffs,
        }
        .trimmed()
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigRat::one())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.var, rhs.var, "series variable mismatch");
        let low = self
            .low
            .checked_add(rhs.low)
            .expect("series exponent overflow");
        // The product coefficient at k is determined only while every
        // unknown tail of one factor pairs with a vanishing range of the
        // other.
        let order = (self.order + rhs.low).min(rhs.order + self.low);
        let mut coeffs = Vec::new();
        if order >= low {
            coeffs = vec![BigRat::zero(); (order - low + 1) as usize];
            for (ia, a) in self.coeffs.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let ea = self.low + ia as i32;
                for (ib, b) in rhs.coeffs.iter().enumerate() {
                    let e = ea + rhs.low + ib as i32;
                    if e > order {
                        break;
                    }
                    coeffs[(e - low) as usize] += a * b;
                }
            }
        }
        Self {
            var: self.var,
            low,
            order,
            coeffs,
        }
        .trimmed()
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            let k = self.low + i as i32;
            coeffs.push(c * BigRat::from_integer(k.into()));
        }
        Self {
            var: self.var,
            low: self.low - 1,
            order: self.order - 1,
            coeffs,
        }
        .trimmed()
    }

    /// Multiplicative inverse. Panics when no known coefficient is nonzero
    /// (the valuation would be undeterminable).
    pub fn inverse(&self) -> Self {
        let v = self
            .valuation()
            .expect("cannot invert a series with no known nonzero coefficient");
        let lead = self.coeff(v).unwrap();
        let order = self.order - 2 * v;
        let low = -v;
        let n = (order - low + 1) as usize;
        let mut out = vec![BigRat::zero(); n];
        out[0] = lead.clone().recip();
        for t in 1..n {
            // g_{-v+t} = -(1/lead) * sum_{s=1..=t} f_{v+s} g_{-v+t-s}
            let mut acc = BigRat::zero();
            for s in 1..=t {
                let f = self.coeff(v + s as i32).unwrap();
                if f.is_zero() {
                    continue;
                }
                acc += f * &out[t - s];
            }
            out[t] = -acc / &lead;
        }
        Self {
            var: self.var,
            low,
            order,
            coeffs: out,
        }
        .trimmed()
    }

    /// Integer power; negative exponents go through [`inverse`](Self::inverse).
    pub fn pow(&self, e: i32) -> Self {
        if e == 0 {
            return Self::one(self.var, self.order);
        }
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut acc = base.clone();
        for _ in 1..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// Composition `self(inner)`, where `self` is a series in its own
    /// variable and `inner` (valuation >= 1) substitutes for it. The result
    /// is a series in `inner`'s variable.
    pub fn compose(&self, inner: &Self) -> Self {
        let v = inner
            .valuation()
            .expect("composition target has no known nonzero coefficient");
        assert!(
            v >= 1,
            "composition requires inner valuation >= 1, got {v}"
        );
        // Terms of self beyond its order would contribute starting at
        // exponent (order+1) * v; nothing above that cap is determined.
        let cap = (self.order + 1)
            .checked_mul(v)
            .expect("series exponent overflow")
            - 1;
        let mut acc = Self::zero_to(inner.var, cap);
        if self.low > self.order {
            return acc;
        }
        let mut pw = inner.pow(self.low);
        for k in self.low..=self.order {
            let c = self.coeff(k).unwrap();
            if !c.is_zero() {
                acc = acc.add(&pw.scale(&c).truncate(cap));
            }
            if k < self.order {
                pw = pw.mul(inner);
            }
        }
        acc.truncate(cap)
    }

    /// Square root of a series with constant coefficient `1`.
    pub fn sqrt(&self) -> Self {
        assert!(
            self.valuation() == Some(0) && self.coeff(0).unwrap().is_one(),
            "sqrt requires constant coefficient 1"
        );
        let order = self.order;
        let n = (order + 1) as usize;
        let mut out = vec![BigRat::zero(); n];
        out[0] = BigRat::one();
        let two = BigRat::from_integer(2.into());
        for k in 1..n {
            // f_k = sum_{j=0..=k} s_j s_{k-j}  =>  solve for s_k
            let mut acc = BigRat::zero();
            for j in 1..k {
                acc += &out[j] * &out[k - j];
            }
            out[k] = (self.coeff(k as i32).unwrap() - acc) / &two;
        }
        Self {
            var: self.var,
            low: 0,
            order,
            coeffs: out,
        }
        .trimmed()
    }
}

impl fmt::Display for TruncLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}/{}*{}^{}", c.numer(), c.denom(), self.var, self.low + i as i32)?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O({}^{})", self.var, self.order + 1)
    }
}

impl fmt::Debug for TruncLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncLaurent({})", self)
    }
}
