use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::scalar::GaussRat;
use super::StarAlgError;

/// Square matrix over the Gaussian rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    n: usize,
    entries: Vec<GaussRat>,
}

impl Matrix {
    pub fn zero(n: usize) -> Matrix {
        Matrix { n, entries: vec![GaussRat::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zero(n);
        for i in 0..n {
            m.entries[i * n + i] = GaussRat::one();
        }
        m
    }

    /// Matrix unit `E_ij` (0-based).
    pub fn unit(n: usize, i: usize, j: usize) -> Matrix {
        let mut m = Matrix::zero(n);
        m.entries[i * n + j] = GaussRat::one();
        m
    }

    pub fn diag(values: &[GaussRat]) -> Matrix {
        let n = values.len();
        let mut m = Matrix::zero(n);
        for (i, v) in values.iter().enumerate() {
            m.entries[i * n + i] = v.clone();
        }
        m
    }

    pub fn diag_ints(values: &[i64]) -> Matrix {
        Matrix::diag(&values.iter().map(|&v| GaussRat::from_int(v)).collect::<Vec<_>>())
    }

    pub fn from_rows(rows: Vec<Vec<GaussRat>>) -> Result<Matrix, StarAlgError> {
        let n = rows.len();
        if n == 0 {
            return Err(StarAlgError::Parse("matrix has no rows".into()));
        }
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(StarAlgError::Parse(format!("row {i} has {} entries, expected {n}", r.len())));
        }
        Ok(Matrix { n, entries: rows.into_iter().flatten().collect() })
    }

    pub(crate) fn from_flat(n: usize, entries: Vec<GaussRat>) -> Matrix {
        debug_assert_eq!(entries.len(), n * n);
        Matrix { n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &GaussRat {
        &self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[GaussRat] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<GaussRat>> {
        self.entries.chunks(self.n).map(<[GaussRat]>::to_vec).collect()
    }

    pub fn diagonal(&self) -> Vec<GaussRat> {
        (0..self.n).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let n = self.n;
        let mut out = Matrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.entries[k * n + j];
                    if !b.is_zero() {
                        out.entries[i * n + j] = &out.entries[i * n + j] + &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Matrix { n: self.n, entries }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        Matrix { n: self.n, entries }
    }

    pub fn scale(&self, c: &GaussRat) -> Matrix {
        Matrix { n: self.n, entries: self.entries.iter().map(|a| a * c).collect() }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Matrix {
        let n = self.n;
        let mut out = Matrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                out.entries[j * n + i] = self.entries[i * n + j].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> GaussRat {
        (0..self.n).fold(GaussRat::zero(), |acc, i| &acc + self.get(i, i))
    }

    pub fn is_self_adjoint(&self) -> bool {
        *self == self.adjoint()
    }

    /// `p² = p = p*`.
    pub fn is_projection(&self) -> bool {
        self.is_self_adjoint() && self.mul(self) == *self
    }

    pub fn commutes_with(&self, other: &Matrix) -> bool {
        self.mul(other) == other.mul(self)
    }

    /// Compact label: `diag(1,0,1)` for diagonal matrices, row lists otherwise.
    pub fn short_label(&self) -> String {
        if self.is_diagonal() {
            let d: Vec<String> = self.diagonal().iter().map(ToString::to_string).collect();
            format!("diag({})", d.join(","))
        } else {
            let rows: Vec<String> = self
                .rows()
                .iter()
                .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
                .collect();
            format!("[{}]", rows.join(";"))
        }
    }

    /// `Σ c_i m_i` for matrices of equal size.
    pub fn combination(n: usize, terms: &[(GaussRat, &Matrix)]) -> Matrix {
        terms.iter().fold(Matrix::zero(n), |acc, (c, m)| acc.add(&m.scale(c)))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.short_label())
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> =
            self.rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let rows: Vec<Vec<String>> = Vec::deserialize(d)?;
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| s.parse::<GaussRat>()).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        Matrix::from_rows(parsed).map_err(D::Error::custom)
    }
}

/// Subspace of `Q(i)^len` kept as a reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Span {
    len: usize,
    /// Rows sorted by pivot; each pivot entry is 1 and its column is zero elsewhere.
    rows: Vec<Vec<GaussRat>>,
    pivots: Vec<usize>,
}

impl Span {
    pub fn new(len: usize) -> Span {
        Span { len, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<GaussRat>] {
        &self.rows
    }

    fn reduce(&self, v: &[GaussRat]) -> Vec<GaussRat> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            for (x, r) in v.iter_mut().zip(row).skip(p) {
                if !r.is_zero() {
                    *x = &*x - &(&c * r);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[GaussRat]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[GaussRat]) -> bool {
        assert_eq!(v.len(), self.len, "vector length mismatch");
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv().expect("nonzero pivot");
        for x in r.iter_mut().skip(p) {
            *x = &*x * &inv;
        }
        for row in &mut self.rows {
            if row[p].is_zero() {
                continue;
            }
            let c = row[p].clone();
            for (x, y) in row.iter_mut().zip(&r).skip(p) {
                if !y.is_zero() {
                    *x = &*x - &(&c * y);
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(at, r);
        self.pivots.insert(at, p);
        true
    }

    pub fn is_subspace_of(&self, other: &Span) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussRat {
        s.parse().unwrap()
    }

    #[test]
    fn products_and_adjoints() {
        let e12 = Matrix::unit(2, 0, 1);
        let e21 = Matrix::unit(2, 1, 0);
        assert_eq!(e12.mul(&e21), Matrix::unit(2, 0, 0));
        assert_eq!(e12.adjoint(), e21);
        assert!(!e12.commutes_with(&e21));
        let m = Matrix::from_rows(vec![vec![g("1"), g("i")], vec![g("2"), g("1/2-1 i")]]).unwrap();
        assert_eq!(m.adjoint().adjoint(), m);
        assert_eq!(m.mul(&e12).adjoint(), e12.adjoint().mul(&m.adjoint()));
        assert_eq!(m.trace(), g("3/2-1 i"));
    }

    #[test]
    fn projections() {
        assert!(Matrix::diag_ints(&[1, 0, 1]).is_projection());
        assert!(!Matrix::diag_ints(&[2, 0]).is_projection());
        let half = g("1/2");
        let p = Matrix::from_rows(vec![vec![half.clone(), half.clone()], vec![half.clone(), half]]).unwrap();
        assert!(p.is_projection());
        assert!(!Matrix::unit(2, 0, 1).is_projection());
    }

    #[test]
    fn json_uses_strings() {
        let m = Matrix::from_rows(vec![vec![g("1"), g("1/2 i")], vec![g("0"), g("-1")]]).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"[["1","1/2 i"],["0","-1"]]"#);
        assert_eq!(serde_json::from_str::<Matrix>(&s).unwrap(), m);
        assert!(serde_json::from_str::<Matrix>(r#"[["1","0"]]"#).is_err());
    }

    #[test]
    fn span_is_canonical() {
        let v = |xs: &[&str]| xs.iter().map(|s| g(s)).collect::<Vec<_>>();
        let mut a = Span::new(3);
        assert!(a.insert(&v(&["1", "1", "0"])));
        assert!(a.insert(&v(&["0", "i", "1"])));
        assert!(!a.insert(&v(&["1", "1+1 i", "1"])));
        let mut b = Span::new(3);
        b.insert(&v(&["2", "1", "i"]));
        b.insert(&v(&["1", "1", "0"]));
        assert_eq!(a.dim(), 2);
        // same subspace iff same echelon form
        assert_eq!(a.contains(&v(&["2", "1", "i"])), a == b);
        assert!(a.contains(&v(&["0", "0", "0"])));
        assert!(!a.contains(&v(&["0", "0", "1"])));
    }
}
