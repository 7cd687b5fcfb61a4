use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A symmetric integer matrix, read as the linking matrix of a framed link.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct LinkingMatrix {
    entries: Vec<Vec<i64>>,
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    matrix: Vec<Vec<i64>>,
}

impl TryFrom<MatrixJson> for LinkingMatrix {
    type Error = Error;

    fn try_from(j: MatrixJson) -> Result<Self> {
        Self::new(j.matrix)
    }
}

impl From<LinkingMatrix> for MatrixJson {
    fn from(m: LinkingMatrix) -> Self {
        MatrixJson { matrix: m.entries }
    }
}

impl LinkingMatrix {
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self> {
        let n = entries.len();
        if let Some(row) = entries.iter().position(|r| r.len() != n) {
            return Err(Error::InvalidMatrix(format!("row {row} does not have {n} entries")));
        }
        for i in 0..n {
            for j in 0..i {
                if entries[i][j] != entries[j][i] {
                    return Err(Error::InvalidMatrix(format!(
                        "entries ({i},{j}) and ({j},{i}) differ"
                    )));
                }
            }
        }
        Ok(Self { entries })
    }

    pub fn diagonal(d: &[i64]) -> Self {
        let n = d.len();
        let mut entries = vec![vec![0; n]; n];
        for (i, &x) in d.iter().enumerate() {
            entries[i][i] = x;
        }
        Self { entries }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("matrix serializes")
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn neg(&self) -> Self {
        Self {
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(|x| -x).collect())
                .collect(),
        }
    }

    /// Block diagonal sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (a, b) = (self.dim(), other.dim());
        let mut entries = vec![vec![0; a + b]; a + b];
        for i in 0..a {
            entries[i][..a].copy_from_slice(&self.entries[i]);
        }
        for i in 0..b {
            entries[a + i][a..].copy_from_slice(&other.entries[i]);
        }
        Self { entries }
    }

    /// `Eᵀ B E`.
    pub fn congruent(&self, e: &[Vec<i64>]) -> Result<Self> {
        let n = self.dim();
        if e.len() != n || e.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidMatrix(format!("change of basis must be {n}x{n}")));
        }
        let mut be = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                be[i][j] = (0..n).map(|k| self.entries[i][k] * e[k][j]).sum();
            }
        }
        let mut out = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                out[i][j] = (0..n).map(|k| e[k][i] * be[k][j]).sum();
            }
        }
        Self::new(out)
    }

    /// Coefficients `c_0, ..., c_n` of `det(x I - B)`, lowest degree first.
    pub fn characteristic_polynomial(&self) -> Vec<BigInt> {
        let n = self.dim();
        let b: Vec<Vec<BigInt>> = self
            .entries
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        // Faddeev-LeVerrier: M_k = B M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(B M_k)/k.
        let mut c = vec![BigInt::zero(); n + 1];
        c[n] = BigInt::from(1);
        let mut m = vec![vec![BigInt::zero(); n]; n];
        for k in 1..=n {
            for (i, row) in m.iter_mut().enumerate() {
                row[i] += &c[n - k + 1];
            }
            let bm = mat_mul(&b, &m);
            let tr: BigInt = (0..n).map(|i| &bm[i][i]).sum();
            c[n - k] = -tr / BigInt::from(k);
            m = bm;
        }
        c
    }

    pub fn determinant(&self) -> BigInt {
        let c = self.characteristic_polynomial();
        if self.dim() % 2 == 0 {
            c[0].clone()
        } else {
            -c[0].clone()
        }
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.determinant().is_zero()
    }

    pub fn signature_counts(&self) -> SigTriple {
        signature_counts(self)
    }
}

fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    out
}

/// Numbers of positive, negative and zero eigenvalues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SigTriple {
    pub sigma_plus: usize,
    pub sigma_minus: usize,
    pub nullity: usize,
}

impl SigTriple {
    pub fn signature(&self) -> i64 {
        self.sigma_plus as i64 - self.sigma_minus as i64
    }
}

fn sign_changes<'a>(coeffs: impl Iterator<Item = (usize, &'a BigInt)>) -> usize {
    let mut last: Option<bool> = None;
    let mut count = 0;
    for (i, c) in coeffs {
        if c.is_zero() {
            continue;
        }
        let positive = c.is_positive() ^ (i % 2 == 1);
        if last.is_some_and(|l| l != positive) {
            count += 1;
        }
        last = Some(positive);
    }
    count
}

/// Exact eigenvalue sign counts from the characteristic polynomial. All roots
/// are real, so Descartes' rule of signs is exact.
pub fn signature_counts(m: &LinkingMatrix) -> SigTriple {
    let c = m.characteristic_polynomial();
    let nullity = c.iter().take_while(|x| x.is_zero()).count();
    let q = &c[nullity..];
    let sigma_plus = sign_changes(q.iter().enumerate().map(|(_, x)| (0, x)));
    let sigma_minus = sign_changes(q.iter().enumerate());
    SigTriple {
        sigma_plus,
        sigma_minus,
        nullity,
    }
}
