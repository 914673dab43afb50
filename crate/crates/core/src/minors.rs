//! Exact matrices, determinants, and sums of full-rank minors, together
//! with the matrix constructions that turn constant terms into minor sums
//! and single determinants.

use crate::ctcore::{ct_standard, product_for_ct, ExponentGoal, StandardCTProblem};
use crate::exact::{binomial, factorial, fraction_string, neg_one_pow, pow2, BigRat};
use crate::laurent::MultiLaurent;
use itertools::Itertools;
use num_traits::{One, Zero};

/// Dense matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRat>,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigRat>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count mismatch");
        Self { rows, cols, data }
    }

    pub fn from_fn<F>(rows: usize, cols: usize, mut f: F) -> Self
    where
        F: FnMut(usize, usize) -> BigRat,
    {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRat {
        &self.data[i * self.cols + j]
    }

    /// The submatrix using all rows and the given columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Self::from_fn(self.rows, cols.len(), |i, j| self.get(i, cols[j]).clone())
    }

    /// Render as integer entries when possible, for failure reports.
    pub fn to_text(&self) -> String {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| fraction_string(self.get(i, j)))
                    .join(" ")
            })
            .join("\n")
    }
}

/// Determinant by fraction-free (Bareiss) elimination with exact division.
/// Intermediate entries stay integral whenever the input is integral.
///
/// Panics on a non-square matrix.
pub fn det(m: &ExactMatrix) -> BigRat {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    let n = m.rows;
    if n == 0 {
        return BigRat::one();
    }
    let mut a = m.data.clone();
    let at = |a: &Vec<BigRat>, i: usize, j: usize| a[i * n + j].clone();
    let mut negate = false;
    let mut prev = BigRat::one();
    for k in 0..n - 1 {
        if at(&a, k, k).is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !at(&a, i, k).is_zero()) else {
                return BigRat::zero();
            };
            for j in 0..n {
                a.swap(k * n + j, swap * n + j);
            }
            negate = !negate;
        }
        let pivot = at(&a, k, k);
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &pivot * at(&a, i, j) - at(&a, i, k) * at(&a, k, j);
                a[i * n + j] = num / &prev;
            }
        }
        prev = pivot;
    }
    let d = at(&a, n - 1, n - 1);
    if negate {
        -d
    } else {
        d
    }
}

/// Determinant by first-row cofactor expansion; independent cross-check for
/// the elimination route.
pub fn det_by_cofactor(m: &ExactMatrix) -> BigRat {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    let n = m.rows;
    if n == 0 {
        return BigRat::one();
    }
    if n == 1 {
        return m.get(0, 0).clone();
    }
    let mut acc = BigRat::zero();
    for j in 0..n {
        if m.get(0, j).is_zero() {
            continue;
        }
        let minor = ExactMatrix::from_fn(n - 1, n - 1, |r, c| {
            m.get(r + 1, if c < j { c } else { c + 1 }).clone()
        });
        let term = m.get(0, j) * det_by_cofactor(&minor);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Sum of the determinants of all `rows x rows` column-subset submatrices,
/// columns taken in increasing order.
///
/// Panics when `rows > cols`.
pub fn minor_sum(m: &ExactMatrix) -> BigRat {
    assert!(
        m.rows <= m.cols,
        "minor_sum requires at least as many columns as rows"
    );
    let mut acc = BigRat::zero();
    for subset in (0..m.cols).combinations(m.rows) {
        acc += det(&m.select_columns(&subset));
    }
    acc
}

fn poly_mul(a: &[BigRat], b: &[BigRat]) -> Vec<BigRat> {
    let mut out = vec![BigRat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_degree(p: &[BigRat]) -> usize {
    p.iter().rposition(|c| !c.is_zero()).expect("zero polynomial")
}

/// The `n x (deg f + (n-1) deg g + 1)` matrix with entries
/// `M_{i,j} = CT_x f(x) g(x)^{i-1} / x^{j-1}`, i.e. row `i` lists the
/// coefficients of `f g^{i-1}`.
///
/// `f` and `g` are coefficient lists in ascending degree and must be nonzero.
pub fn zeilberger_matrix(f: &[BigRat], g: &[BigRat], n: usize) -> ExactMatrix {
    let df = poly_degree(f);
    let dg = poly_degree(g);
    let cols = df + (n - 1) * dg + 1;
    let mut row: Vec<BigRat> = f.to_vec();
    let mut data = Vec::with_capacity(n * cols);
    for i in 0..n {
        if i > 0 {
            row = poly_mul(&row, g);
        }
        for j in 0..cols {
            data.push(row.get(j).cloned().unwrap_or_else(BigRat::zero));
        }
    }
    ExactMatrix::new(n, cols, data)
}

/// Doran's matrix: entries `C(i-1, j-i)`, size `n x (2n-1)`. Its maximal
/// minors sum to the order-`n` TSSCPP count.
pub fn doran_matrix(n: usize) -> ExactMatrix {
    conjecture_matrix(n, 0)
}

/// The matrix with entries `C(m+i-1, j-i)`, size `n x (2n+m-1)`; the `m = 0`
/// case is [`doran_matrix`].
pub fn conjecture_matrix(n: usize, m: u64) -> ExactMatrix {
    ExactMatrix::from_fn(n, 2 * n + m as usize - 1, |i, j| {
        BigRat::from_integer(binomial(m + i as u64, j as i64 - i as i64))
    })
}

/// Embed the univariate polynomial `p` (ascending coefficients) as a Laurent
/// polynomial in `1/x_i` inside an `nvars`-variable ring.
fn poly_at_inverse(p: &[BigRat], nvars: usize, i: usize) -> MultiLaurent {
    let mut exps = vec![0; nvars];
    let mut acc = MultiLaurent::zero(nvars);
    for (t, c) in p.iter().enumerate() {
        exps[i] = -(t as i32);
        acc = &acc + &MultiLaurent::monomial(nvars, &exps, c.clone());
    }
    acc
}

/// The master constant term equal to the sum of all maximal minors of
/// [`zeilberger_matrix`]:
///
/// `(1/n!) CT prod_i f(1/x_i) prod_{i<j} (x_i - x_j)(g(1/x_i) - g(1/x_j))`
/// over the standard denominator.
pub fn ct_fg(f: &[BigRat], g: &[BigRat], n: usize) -> BigRat {
    let mut factors = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            factors.push(&MultiLaurent::var(n, i) - &MultiLaurent::var(n, j));
            let gi = poly_at_inverse(g, n, i);
            let gj = poly_at_inverse(g, n, j);
            factors.push(&gi - &gj);
        }
    }
    for i in 0..n {
        factors.push(poly_at_inverse(f, n, i));
    }
    let numerator = product_for_ct(&factors, &vec![ExponentGoal::NonPositive; n]);
    let scale = BigRat::one() / BigRat::from_integer(factorial(n as u64));
    ct_standard(&StandardCTProblem::new(numerator, (0..n).collect(), scale))
}

fn autocorrelation(f: &[BigRat], s: i64) -> BigRat {
    // CT x^s f(x) f(1/x) = sum_u f_u f_{u+s}
    let mut acc = BigRat::zero();
    for (u, c) in f.iter().enumerate() {
        let t = u as i64 + s;
        if t < 0 || t as usize >= f.len() {
            continue;
        }
        acc += c * &f[t as usize];
    }
    acc
}

/// The single determinant equal to the sum of all maximal minors of
/// [`zeilberger_matrix`] with `g = 1 + x`:
///
/// - `n = 2k`:  `det( CT (x^{i+j-1} + x^{i-j}) f(x) f(1/x) )_{1<=i,j<=k}`
/// - `n = 2k+1`: `f(1) det( CT (x^{i-j} - x^{i+j}) f(x) f(1/x) )_{1<=i,j<=k}`
///
/// Entries are computed from coefficient autocorrelations of `f`, with no
/// Laurent arithmetic, so this route is independent of the CT engines.
pub fn reduced_det_thm(f: &[BigRat], n: usize) -> BigRat {
    let k = n / 2;
    if n % 2 == 0 {
        let m = ExactMatrix::from_fn(k, k, |i, j| {
            let (i, j) = (i as i64 + 1, j as i64 + 1);
            autocorrelation(f, i + j - 1) + autocorrelation(f, i - j)
        });
        det(&m)
    } else {
        let f1: BigRat = f.iter().sum();
        let m = ExactMatrix::from_fn(k, k, |i, j| {
            let (i, j) = (i as i64 + 1, j as i64 + 1);
            autocorrelation(f, i - j) - autocorrelation(f, i + j)
        });
        f1 * det(&m)
    }
}

/// The binomial determinant specialization of [`reduced_det_thm`] at
/// `f = (1+x)^m`:
///
/// - `n = 2k`:  `det( C(2m, m+1-i-j) + C(2m, m-i+j) )`
/// - `n = 2k+1`: `2^m det( C(2m, m-i+j) - C(2m, m-i-j) )`
pub fn binom_det(m: u64, n: usize) -> BigRat {
    let k = n / 2;
    let b = |k: i64| BigRat::from_integer(binomial(2 * m, k));
    let mi = m as i64;
    if n % 2 == 0 {
        let mat = ExactMatrix::from_fn(k, k, |i, j| {
            let (i, j) = (i as i64 + 1, j as i64 + 1);
            b(mi + 1 - i - j) + b(mi - i + j)
        });
        det(&mat)
    } else {
        let mat = ExactMatrix::from_fn(k, k, |i, j| {
            let (i, j) = (i as i64 + 1, j as i64 + 1);
            b(mi - i + j) - b(mi - i - j)
        });
        pow2(mi) * det(&mat)
    }
}

/// Univariate constant term of `z^a (z-1)^b (2z+1)^c (z-4)^c` with
/// `z = x + 2 + 1/x`.
fn zpoly_ct(a: u32, b: u32, with_extra: bool) -> BigRat {
    let z = MultiLaurent::from_terms(
        1,
        vec![
            (vec![-1], BigRat::one()),
            (vec![0], BigRat::from_integer(2.into())),
            (vec![1], BigRat::one()),
        ],
    );
    let one = MultiLaurent::one(1);
    let z_minus_1 = &z - &one;
    let mut p = &z.pow(a) * &z_minus_1.pow(b);
    if with_extra {
        let two = MultiLaurent::constant(1, BigRat::from_integer(2.into()));
        let four = MultiLaurent::constant(1, BigRat::from_integer(4.into()));
        let extra = &(&(&two * &z) + &one) * &(&z - &four);
        p = &p * &extra;
    }
    p.ct()
}

/// Determinant form of the minor sum of [`conjecture_matrix`], with entries
/// that are univariate constant terms in `z = x + 2 + 1/x`:
///
/// - `n = 2k`:  `(1/2^k) det( CT z^{m+k+j-i} (z-1)^{3i-2} )`
/// - `n = 2k+1`: `(2^m/2^k) (-1)^k det( CT z^{m+k+j-i} (z-1)^{3i-2} (2z+1)(z-4) )`
///
/// The odd case carries an explicit `(-1)^k`: per variable, the extra factor
/// satisfies `(x + x^2 - 2)(1/x + 1/x^2 - 2) = -(2z+1)(z-4)` (an exact
/// Laurent identity, see `analytic::extra_factor_sign_check`), so each of
/// the `k` variables contributes one sign.
pub fn andrews_det(m: u64, n: usize) -> BigRat {
    let k = n / 2;
    let odd = n % 2 == 1;
    let mat = ExactMatrix::from_fn(k, k, |i, j| {
        let (i, j) = (i as u32 + 1, j as u32 + 1);
        zpoly_ct(m as u32 + k as u32 + j - i, 3 * i - 2, odd)
    });
    let d = det(&mat);
    if odd {
        pow2(m as i64 - k as i64) * neg_one_pow(k as u64) * d
    } else {
        pow2(-(k as i64)) * d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn mat(rows: usize, cols: usize, vals: &[i64]) -> ExactMatrix {
        ExactMatrix::new(rows, cols, vals.iter().map(|&v| rat(v)).collect())
    }

    /// Ascending coefficients of (1+x)^m.
    fn binom_poly(m: u64) -> Vec<BigRat> {
        (0..=m as i64)
            .map(|k| BigRat::from_integer(binomial(m, k)))
            .collect()
    }

    #[test]
    fn det_examples() {
        let id3 = ExactMatrix::from_fn(3, 3, |i, j| rat((i == j) as i64));
        assert_eq!(det(&id3), rat(1));
        assert_eq!(det(&mat(2, 2, &[1, 1, 1, 2])), rat(1));
        assert_eq!(det(&mat(2, 2, &[0, 0, 2, 1])), rat(0));
        assert_eq!(det(&mat(0, 0, &[])), rat(1));
    }

    #[test]
    #[should_panic(expected = "non-square")]
    fn det_rejects_non_square() {
        det(&mat(1, 2, &[1, 2]));
    }

    #[test]
    fn minor_sum_examples() {
        assert_eq!(minor_sum(&mat(1, 2, &[1, 1])), rat(2));
        // Doran matrix for n = 2
        assert_eq!(minor_sum(&mat(2, 3, &[1, 0, 0, 0, 1, 1])), rat(2));
        // Conjecture matrix n = 2, m = 1: minors 1,2,1,2,1,0
        assert_eq!(minor_sum(&mat(2, 4, &[1, 1, 0, 0, 0, 1, 2, 1])), rat(7));
    }

    #[test]
    #[should_panic(expected = "columns")]
    fn minor_sum_rejects_tall() {
        minor_sum(&mat(2, 1, &[1, 1]));
    }

    #[test]
    fn zeilberger_matrix_examples() {
        let f = binom_poly(1);
        let m = zeilberger_matrix(&f, &f, 2);
        assert_eq!(m, mat(2, 3, &[1, 1, 0, 1, 2, 1]));

        // f = (1+x)^m, g = x(1+x) gives entries C(m+i-1, j-i)
        let g = vec![rat(0), rat(1), rat(1)];
        for mm in 0..=3u64 {
            for n in 1..=4usize {
                let built = zeilberger_matrix(&binom_poly(mm), &g, n);
                assert_eq!(built, conjecture_matrix(n, mm));
            }
        }

        assert_eq!(zeilberger_matrix(&[rat(1)], &g, 2), doran_matrix(2));
    }

    #[test]
    fn ct_fg_examples() {
        let onepx = binom_poly(1);
        let g = vec![rat(0), rat(1), rat(1)];
        assert_eq!(ct_fg(&onepx, &onepx, 2), rat(3));
        assert_eq!(ct_fg(&[rat(1)], &g, 2), rat(2));
        assert_eq!(ct_fg(&onepx, &onepx, 1), rat(2));
    }

    #[test]
    fn ct_fg_matches_minor_sum_small() {
        let f = vec![rat(1), rat(2)];
        let g = vec![rat(1), rat(0), rat(1)];
        for n in 1..=3 {
            assert_eq!(
                ct_fg(&f, &g, n),
                minor_sum(&zeilberger_matrix(&f, &g, n)),
                "n = {n}"
            );
        }
    }

    #[test]
    fn reduced_det_examples() {
        assert_eq!(reduced_det_thm(&binom_poly(1), 2), rat(3));
        assert_eq!(reduced_det_thm(&[rat(1)], 2), rat(1));
        assert_eq!(reduced_det_thm(&binom_poly(1), 3), rat(4));
    }

    #[test]
    fn binom_det_examples() {
        assert_eq!(binom_det(1, 2), rat(3));
        assert_eq!(binom_det(0, 2), rat(1));
        assert_eq!(binom_det(1, 3), rat(4));
    }

    #[test]
    fn andrews_det_examples() {
        assert_eq!(andrews_det(0, 2), rat(2));
        assert_eq!(andrews_det(1, 2), rat(7));
        assert_eq!(andrews_det(0, 3), rat(7));
    }

    #[test]
    fn det_routes_agree() {
        let m = mat(4, 4, &[2, 0, 1, 3, 1, 1, 4, 1, 0, 5, 2, 2, 3, 1, 1, 0]);
        assert_eq!(det(&m), det_by_cofactor(&m));
    }
}
