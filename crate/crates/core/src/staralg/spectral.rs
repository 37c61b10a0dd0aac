use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::{Matrix, Span};
use super::scalar::GaussRat;

/// Coefficients of the largest integer whose divisors we are willing to enumerate.
const DIVISOR_SEARCH_LIMIT: u64 = 1_000_000_000_000;

/// Solves `Σ x_j columns[j] = target`, if possible.
fn solve(columns: &[Vec<GaussRat>], target: &[GaussRat]) -> Option<Vec<GaussRat>> {
    let m = columns.len();
    let rows = target.len();
    let mut a: Vec<Vec<GaussRat>> =
        (0..rows).map(|r| columns.iter().map(|c| c[r].clone()).chain([target[r].clone()]).collect()).collect();
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..m {
        let Some(p) = (row..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].inv().expect("nonzero pivot");
        for x in a[row].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..rows {
            if r != row && !a[r][col].is_zero() {
                let c = a[r][col].clone();
                let pivot_row = a[row].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&c * y);
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
    }
    if a[row..].iter().any(|r| !r[m].is_zero()) {
        return None;
    }
    let mut x = vec![GaussRat::zero(); m];
    for (r, &c) in pivot_cols.iter().enumerate() {
        x[c] = a[r][m].clone();
    }
    Some(x)
}

/// Monic minimal polynomial of `h`, coefficients from the constant term upwards.
pub fn minimal_polynomial(h: &Matrix) -> Vec<GaussRat> {
    let n = h.dim();
    let mut powers: Vec<Matrix> = vec![Matrix::identity(n)];
    let mut span = Span::new(n * n);
    span.insert(powers[0].entries());
    loop {
        let next = powers.last().expect("nonempty").mul(h);
        if span.contains(next.entries()) {
            let cols: Vec<Vec<GaussRat>> = powers.iter().map(|p| p.entries().to_vec()).collect();
            let c = solve(&cols, next.entries()).expect("dependent power");
            // h^m = Σ c_j h^j, so μ(x) = x^m − Σ c_j x^j.
            let mut poly: Vec<GaussRat> = c.into_iter().map(|z| -z).collect();
            poly.push(GaussRat::one());
            return poly;
        }
        span.insert(next.entries());
        powers.push(next);
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out
}

fn eval(poly: &[BigInt], x: &BigRational) -> BigRational {
    poly.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
}

/// All rational roots of a rational polynomial (constant term first), if it
/// splits into distinct rational linear factors; `None` otherwise.
pub fn rational_roots(poly: &[BigRational]) -> Option<Vec<BigRational>> {
    let degree = poly.len().checked_sub(1)?;
    let lcm = poly.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let mut ints: Vec<BigInt> = poly.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let mut roots = Vec::new();
    while ints.len() > 1 && ints[0].is_zero() {
        if !roots.is_empty() {
            return None;
        }
        roots.push(BigRational::zero());
        ints.remove(0);
    }
    let lead = ints.last()?.abs().to_u64().filter(|&v| v <= DIVISOR_SEARCH_LIMIT)?;
    let constant = ints[0].abs().to_u64().filter(|&v| v <= DIVISOR_SEARCH_LIMIT)?;
    for p in divisors(constant) {
        for q in divisors(lead) {
            for sign in [1i64, -1] {
                let x = BigRational::new(BigInt::from(p) * sign, BigInt::from(q));
                if !roots.contains(&x) && eval(&ints, &x).is_zero() {
                    roots.push(x);
                }
            }
        }
    }
    roots.sort();
    (roots.len() == degree).then_some(roots)
}

/// Spectral decomposition `h = Σ λ P_λ` of a self-adjoint matrix with rational
/// eigenvalues; the error names the obstruction otherwise.
pub fn spectral_projections(h: &Matrix) -> Result<Vec<(BigRational, Matrix)>, String> {
    if !h.is_self_adjoint() {
        return Err("matrix is not self-adjoint".into());
    }
    let mu = minimal_polynomial(h);
    if mu.iter().any(|c| !c.is_real()) {
        return Err("minimal polynomial has non-real coefficients".into());
    }
    let real: Vec<BigRational> = mu.iter().map(|c| c.re.clone()).collect();
    let roots = rational_roots(&real).ok_or_else(|| "spectrum is not rational".to_string())?;
    let n = h.dim();
    let id = Matrix::identity(n);
    let mut out = Vec::with_capacity(roots.len());
    for (i, lambda) in roots.iter().enumerate() {
        // Lagrange interpolation: Π_{μ ≠ λ} (h − μ) / (λ − μ).
        let mut p = id.clone();
        for (j, other) in roots.iter().enumerate() {
            if i != j {
                let shifted = h.sub(&id.scale(&GaussRat::real(other.clone())));
                let scale = GaussRat::real((lambda - other).recip());
                p = p.mul(&shifted).scale(&scale);
            }
        }
        out.push((lambda.clone(), p));
    }
    Ok(out)
}
