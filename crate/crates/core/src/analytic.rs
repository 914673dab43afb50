//! Residue calculus for the Catalan change of variable, and the exact
//! Laurent identities used to justify the determinant and Macdonald
//! reductions.
//!
//! The change of variable `y = x (1+x)^{-2}` has valuation 1, inverse
//! `x(y) = (1 - 2y - sqrt(1-4y))/(2y)` (the Catalan generating function
//! minus one) and logarithmic derivative `(x/y) dy/dx = (1-x)/(1+x) =
//! sqrt(1-4y)`. Jacobi's formula `CT_x G(f(x)) (x/f) df/dx = b CT_y G(y)`
//! is implemented as a checkable transform: both sides are computed on
//! truncated series, and when the truncation order cannot decide the
//! comparison the check reports [`Undecidable`] instead of passing.

use crate::exact::{rat, BigRat};
use crate::laurent::{MultiLaurent, TruncLaurent, Undecidable};
use num_traits::One;

/// A change of variable `y = f(x)` packaged with its compositional inverse
/// and logarithmic derivative. Consistency of the three series is asserted
/// at construction.
#[derive(Clone, Debug)]
pub struct ChangeOfVariable {
    /// `y` as a series in `x`.
    pub forward: TruncLaurent,
    /// `x` as a series in `y`.
    pub inverse: TruncLaurent,
    /// `(x/f) df/dx` as a series in `x`.
    pub jacobian: TruncLaurent,
}

impl ChangeOfVariable {
    fn validate(self) -> Self {
        let b = self.valuation();
        assert!(b >= 1, "change of variable must have positive valuation");
        // forward(inverse(y)) = y up to the tracked order
        let roundtrip = self.forward.compose(&self.inverse);
        let upto = roundtrip.order();
        for k in roundtrip.low().min(0)..=upto {
            let expect = if k == 1 { BigRat::one() } else { rat(0) };
            assert_eq!(
                roundtrip.coeff(k).unwrap(),
                expect,
                "inverse fails to invert at order {k}"
            );
        }
        // jacobian = x f'(x) / f(x), exactly, by series differentiation
        let x = TruncLaurent::monomial(self.forward.var(), 1, self.forward.order());
        let direct = x
            .mul(&self.forward.derivative())
            .mul(&self.forward.inverse());
        let upto = direct.order().min(self.jacobian.order());
        for k in direct.low().min(self.jacobian.low())..=upto {
            assert_eq!(
                direct.coeff(k).unwrap(),
                self.jacobian.coeff(k).unwrap(),
                "jacobian inconsistent with forward series at order {k}"
            );
        }
        self
    }

    /// The integer `b` with `f(x)/x^b` a unit power series.
    pub fn valuation(&self) -> i32 {
        self.forward
            .valuation()
            .expect("forward series has no known nonzero coefficient")
    }
}

/// The Catalan change of variable `y = x (1+x)^{-2}` carried to the given
/// truncation order (at least 2). The inverse series has the Catalan
/// numbers `1, 2, 5, 14, ...` as coefficients.
pub fn catalan_change_of_variable(order: i32) -> ChangeOfVariable {
    assert!(order >= 2, "catalan change of variable needs order >= 2");
    let pad = order + 4;
    let one_plus_x = TruncLaurent::new("x", 0, vec![rat(1), rat(1)], pad);
    let forward = TruncLaurent::monomial("x", 1, pad)
        .mul(&one_plus_x.pow(-2))
        .truncate(order);

    // x(y) = (1 - 2y - sqrt(1-4y)) / (2y)
    let sqrt = one_minus_4y(pad).sqrt();
    let numer = TruncLaurent::new("y", 0, vec![rat(1), rat(-2)], pad).sub(&sqrt);
    let inverse = numer.shift(-1).scale(&ratio_half()).truncate(order);

    let jacobian = TruncLaurent::new("x", 0, vec![rat(1), rat(-1)], pad)
        .mul(&one_plus_x.pow(-1))
        .truncate(order);

    ChangeOfVariable {
        forward,
        inverse,
        jacobian,
    }
    .validate()
}

fn ratio_half() -> BigRat {
    BigRat::new(1.into(), 2.into())
}

fn one_minus_4y(order: i32) -> TruncLaurent {
    TruncLaurent::new("y", 0, vec![rat(1), rat(-4)], order)
}

/// Both sides of Jacobi's change-of-variable formula
/// `CT_x G(f(x)) (x/f) df/dx = b CT_y G(y)` for a series `G` in `y` with
/// finite principal part, at the given truncation order.
///
/// Returns `Err` when the truncation cannot decide either side.
pub fn jacobi_sides(
    g: &TruncLaurent,
    cov: &ChangeOfVariable,
    order: i32,
) -> Result<(BigRat, BigRat), Undecidable> {
    let g = g.truncate(order);
    let forward = cov.forward.truncate(order);
    let lhs = g
        .compose(&forward)
        .mul(&cov.jacobian.truncate(order))
        .ct()?;
    let b = BigRat::from_integer(cov.valuation().into());
    let rhs = b * g.ct()?;
    Ok((lhs, rhs))
}

/// Check Jacobi's formula; see [`jacobi_sides`].
pub fn jacobi_check(
    g: &TruncLaurent,
    cov: &ChangeOfVariable,
    order: i32,
) -> Result<bool, Undecidable> {
    jacobi_sides(g, cov, order).map(|(l, r)| l == r)
}

/// Both sides of the Catalan specialization of Jacobi's formula
/// `CT_x G(y(x)) = CT_y G(y)/sqrt(1-4y)`.
pub fn crucial_jacobi_sides(
    g: &TruncLaurent,
    order: i32,
) -> Result<(BigRat, BigRat), Undecidable> {
    let cov = catalan_change_of_variable(order);
    let lhs = g.truncate(order).compose(&cov.forward).ct()?;
    let inv_sqrt = one_minus_4y(order).sqrt().inverse();
    let rhs = g.truncate(order).mul(&inv_sqrt).ct()?;
    Ok((lhs, rhs))
}

/// Check the Catalan specialization; see [`crucial_jacobi_sides`].
pub fn crucial_jacobi_check(g: &TruncLaurent, order: i32) -> Result<bool, Undecidable> {
    crucial_jacobi_sides(g, order).map(|(l, r)| l == r)
}

fn z_poly(n: usize, i: usize) -> MultiLaurent {
    // z = x + 2 + 1/x
    &(&MultiLaurent::var(n, i) + &MultiLaurent::constant(n, rat(2)))
        + &MultiLaurent::var_pow(n, i, -1)
}

/// Exact two-variable Laurent identity behind the Macdonald reduction:
/// with `y = x (1+x)^{-2}`,
/// `(y_i - y_j)^2 / (y_i y_j)^2 =
///  (1 - x_i/x_j)(1 - x_j/x_i)(1 - x_i x_j)(1 - 1/(x_i x_j))`.
///
/// Cleared of denominators, the left side is
/// `(x_i (1+x_j)^2 - x_j (1+x_i)^2)^2 (x_i x_j)^{-2}`; both sides are
/// compared as canonical Laurent polynomials.
pub fn observation_check() -> bool {
    let n = 2;
    let xi = MultiLaurent::var(n, 0);
    let xj = MultiLaurent::var(n, 1);
    let one = MultiLaurent::one(n);
    let sq = |p: &MultiLaurent| p.pow(2);

    let diff = &(&xi * &sq(&(&one + &xj))) - &(&xj * &sq(&(&one + &xi)));
    let lhs = &sq(&diff) * &MultiLaurent::monomial(n, &[-2, -2], BigRat::one());

    let ratio_ij = MultiLaurent::monomial(n, &[1, -1], BigRat::one());
    let ratio_ji = MultiLaurent::monomial(n, &[-1, 1], BigRat::one());
    let prod_up = MultiLaurent::monomial(n, &[1, 1], BigRat::one());
    let prod_dn = MultiLaurent::monomial(n, &[-1, -1], BigRat::one());
    let rhs = &(&(&one - &ratio_ij) * &(&one - &ratio_ji))
        * &(&(&one - &prod_up) * &(&one - &prod_dn));

    lhs == rhs
}

/// Rational spot evaluation of both sides of [`observation_check`].
pub fn observation_spot(xi: &BigRat, xj: &BigRat) -> (BigRat, BigRat) {
    let y = |x: &BigRat| {
        let onepx = BigRat::one() + x;
        x / (&onepx * &onepx)
    };
    let (yi, yj) = (y(xi), y(xj));
    let d = &yi - &yj;
    let lhs = &d * &d / (&yi * &yi * &yj * &yj);
    let rhs = (BigRat::one() - xi / xj)
        * (BigRat::one() - xj / xi)
        * (BigRat::one() - xi * xj)
        * (BigRat::one() - BigRat::one() / (xi * xj));
    (lhs, rhs)
}

/// Exact Laurent identities for the cross factor
/// `U_{i,j} = (g(1/x_i) - g(1/x_j)) (g(x_i) - g(x_j)) (g(1/x_i) - g(x_j))
/// (g(x_i) - g(1/x_j))` with `g(x) = x + x^2`, in terms of
/// `z_r = x_r + 2 + 1/x_r`:
///
/// 1. `U = (1 - 3 z_i z_j + z_i z_j^2 + z_i^2 z_j)(z_i - z_j)^2`
/// 2. `U = (z_j (z_i - 1)^3 - z_i (z_j - 1)^3)(z_i - z_j)`
///    (the display `z_i z_j (z_i^{-1}(z_i-1)^3 - z_j^{-1}(z_j-1)^3)(z_i-z_j)`
///    with the `z`-monomials cleared),
///
/// plus invariance of `U` under `x_i -> 1/x_i`. Verified for every pair
/// `i < j < kmax` inside a `kmax`-variable ring.
pub fn uij_check(kmax: usize) -> bool {
    assert!(kmax >= 2, "uij_check needs at least two variables");
    let n = kmax;
    let g_at = |i: usize, inv: bool| -> MultiLaurent {
        // g(x) = x + x^2 at x_i or 1/x_i
        let s = if inv { -1 } else { 1 };
        &MultiLaurent::var_pow(n, i, s) + &MultiLaurent::var_pow(n, i, 2 * s)
    };
    for i in 0..n {
        for j in i + 1..n {
            let u = {
                let f1 = &g_at(i, true) - &g_at(j, true);
                let f2 = &g_at(i, false) - &g_at(j, false);
                let f3 = &g_at(i, true) - &g_at(j, false);
                let f4 = &g_at(i, false) - &g_at(j, true);
                &(&f1 * &f2) * &(&f3 * &f4)
            };
            let zi = z_poly(n, i);
            let zj = z_poly(n, j);
            let zdiff = &zi - &zj;
            let one = MultiLaurent::one(n);
            let three = MultiLaurent::constant(n, rat(3));

            let head = &(&one - &(&three * &(&zi * &zj)))
                + &(&(&zi * &zj.pow(2)) + &(&zi.pow(2) * &zj));
            let form1 = &head * &zdiff.pow(2);
            if u != form1 {
                return false;
            }

            let cube = |z: &MultiLaurent| (z - &one).pow(3);
            let head2 = &(&zj * &cube(&zi)) - &(&zi * &cube(&zj));
            let form2 = &head2 * &zdiff;
            if u != form2 {
                return false;
            }

            if u.invert_var(i) != u || u.invert_var(j) != u {
                return false;
            }
        }
    }
    true
}

/// Exact univariate identity fixing the sign of the odd extra factor:
/// `(x + x^2 - 2)(1/x + 1/x^2 - 2) = -(2z + 1)(z - 4)` with
/// `z = x + 2 + 1/x`.
pub fn extra_factor_sign_check() -> bool {
    let n = 1;
    let x = MultiLaurent::var(n, 0);
    let two = MultiLaurent::constant(n, rat(2));
    let up = &(&x + &x.pow(2)) - &two;
    let lhs = &up * &up.invert_all();

    let z = z_poly(n, 0);
    let one = MultiLaurent::one(n);
    let four = MultiLaurent::constant(n, rat(4));
    let rhs = -&(&(&(&two * &z) + &one) * &(&z - &four));

    lhs == rhs
}
