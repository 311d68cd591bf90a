//! Dense matrices over [`Scalar`] and the Yang-Baxter check.
//!
//! Tensor-square indices are flattened as `(i, k) -> i * n + k`.

use std::fmt;

use crate::error::{Error, Result};
use crate::report::CheckReport;
use crate::scalars::{Parity, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct SMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Flat index bookkeeping for `n ⊗ n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TensorIndex {
    pub n: usize,
}

impl TensorIndex {
    pub fn flat(&self, i: usize, k: usize) -> usize {
        i * self.n + k
    }

    pub fn pair(&self, f: usize) -> (usize, usize) {
        (f / self.n, f % self.n)
    }

    /// Base dimension `n` with `n * n == dim`.
    pub fn of_square(dim: usize) -> Result<Self> {
        let n = (dim as f64).sqrt().round() as usize;
        if n * n != dim || n == 0 {
            return Err(Error::NonSquareTensorDim(dim));
        }
        Ok(TensorIndex { n })
    }
}

impl SMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SMatrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = SMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn diag(entries: &[Scalar]) -> Self {
        let mut m = SMatrix::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 {
            return Err(Error::DimensionMismatch("empty matrix".into()));
        }
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("rows of unequal length".into()));
        }
        Ok(SMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Positions of nonzero entries in row-major order.
    pub fn nonzero_positions(&self) -> Vec<(usize, usize)> {
        (0..self.rows)
            .flat_map(|i| (0..self.cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !self.get(i, j).is_zero())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    fn check_same_shape(&self, o: &SMatrix) -> Result<()> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::DimensionMismatch(format!("{}x{} vs {}x{}", self.rows, self.cols, o.rows, o.cols)));
        }
        Ok(())
    }

    pub fn add(&self, o: &SMatrix) -> Result<SMatrix> {
        self.check_same_shape(o)?;
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect();
        Ok(SMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, o: &SMatrix) -> Result<SMatrix> {
        self.check_same_shape(o)?;
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect();
        Ok(SMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, c: &Scalar) -> SMatrix {
        SMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| c.mul(a)).collect() }
    }

    pub fn mul(&self, o: &SMatrix) -> Result<SMatrix> {
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = SMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).add(&a.mul(b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> SMatrix {
        let mut out = SMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn map<F: Fn(&Scalar) -> Result<Scalar>>(&self, f: F) -> Result<SMatrix> {
        let data = self.data.iter().map(f).collect::<Result<_>>()?;
        Ok(SMatrix { rows: self.rows, cols: self.cols, data })
    }

    /// Determinant by cofactor expansion along the sparsest row.
    pub fn determinant(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        let idx: Vec<usize> = (0..self.rows).collect();
        Ok(self.minor_det(&idx, &idx))
    }

    fn minor_det(&self, rows: &[usize], cols: &[usize]) -> Scalar {
        match rows.len() {
            0 => return Scalar::one(),
            1 => return self.get(rows[0], cols[0]).clone(),
            _ => {}
        }
        let (pick, _) = rows
            .iter()
            .enumerate()
            .map(|(p, &r)| (p, cols.iter().filter(|&&c| !self.get(r, c).is_zero()).count()))
            .min_by_key(|&(_, nz)| nz)
            .unwrap();
        let r = rows[pick];
        let rest_rows: Vec<usize> = rows.iter().copied().filter(|&x| x != r).collect();
        let mut acc = Scalar::zero();
        for (cpos, &c) in cols.iter().enumerate() {
            let a = self.get(r, c);
            if a.is_zero() {
                continue;
            }
            let rest_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = a.mul(&self.minor_det(&rest_rows, &rest_cols));
            if (pick + cpos) % 2 == 0 {
                acc = acc.add(&term);
            } else {
                acc = acc.sub(&term);
            }
        }
        acc
    }

    /// Gauss-Jordan inverse; pivots must be units.
    pub fn inverse(&self) -> Result<SMatrix> {
        if !self.is_square() {
            return Err(Error::SingularTransform);
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = SMatrix::identity(n);
        for col in 0..n {
            let piv = (col..n).find(|&r| a.get(r, col).is_unit()).ok_or(Error::SingularTransform)?;
            if piv != col {
                a.swap_rows(piv, col);
                inv.swap_rows(piv, col);
            }
            let p_inv = a.get(col, col).inv().map_err(|_| Error::SingularTransform)?;
            a.scale_row(col, &p_inv);
            inv.scale_row(col, &p_inv);
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                a.axpy_row(r, col, &f);
                inv.axpy_row(r, col, &f);
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, c: &Scalar) {
        for j in 0..self.cols {
            let v = c.mul(self.get(r, j));
            self.set(r, j, v);
        }
    }

    /// row[r] -= f * row[src]
    fn axpy_row(&mut self, r: usize, src: usize, f: &Scalar) {
        for j in 0..self.cols {
            let s = self.get(src, j);
            if !s.is_zero() {
                let v = self.get(r, j).sub(&f.mul(s));
                self.set(r, j, v);
            }
        }
    }
}

impl fmt::Display for SMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|s| s.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

pub fn kron(a: &SMatrix, b: &SMatrix) -> SMatrix {
    let mut out = SMatrix::zeros(a.rows * b.rows, a.cols * b.cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            for k in 0..b.rows {
                for l in 0..b.cols {
                    let y = b.get(k, l);
                    if !y.is_zero() {
                        out.set(i * b.rows + k, j * b.cols + l, x.mul(y));
                    }
                }
            }
        }
    }
    out
}

/// The flip `u ⊗ v -> v ⊗ u`.
pub fn permutation_matrix(n: usize) -> SMatrix {
    graded_permutation_matrix(&vec![Parity::Even; n])
}

/// The super flip `u ⊗ v -> (-1)^{p(u)p(v)} v ⊗ u`.
pub fn graded_permutation_matrix(parities: &[Parity]) -> SMatrix {
    let n = parities.len();
    let ix = TensorIndex { n };
    let mut p = SMatrix::zeros(n * n, n * n);
    for i in 0..n {
        for k in 0..n {
            let s = if parities[i].is_odd() && parities[k].is_odd() { -1 } else { 1 };
            p.set(ix.flat(i, k), ix.flat(k, i), Scalar::int(s));
        }
    }
    p
}

pub fn rhat(r: &SMatrix) -> Result<SMatrix> {
    let ix = TensorIndex::of_square(r.rows)?;
    permutation_matrix(ix.n).mul(r)
}

fn ybe_with_flip(r: &SMatrix, flip: &SMatrix, ix: TensorIndex) -> Result<SMatrix> {
    let id = SMatrix::identity(ix.n);
    let r12 = kron(r, &id);
    let r23 = kron(&id, r);
    let pi = kron(flip, &id);
    let r13 = pi.mul(&r23)?.mul(&pi)?;
    let lhs = r12.mul(&r13)?.mul(&r23)?;
    let rhs = r23.mul(&r13)?.mul(&r12)?;
    lhs.sub(&rhs)
}

fn ybe_report(name: &str, residual: &SMatrix, n: usize) -> CheckReport {
    let mut rep = CheckReport::new("ybe", &[name]);
    for (i, j) in residual.nonzero_positions() {
        let (a, b, c) = (i / (n * n), (i / n) % n, i % n);
        let (d, e, f) = (j / (n * n), (j / n) % n, j % n);
        rep.residual(format!("({a}{b}{c},{d}{e}{f})"), residual.get(i, j));
    }
    rep
}

/// `R12 R13 R23 = R23 R13 R12` as printed, with `R13` obtained from `R23`
/// by conjugating with the flip on the first two factors.
pub fn verify_ybe(r: &SMatrix) -> Result<CheckReport> {
    verify_ybe_named("R", r)
}

pub fn verify_ybe_named(name: &str, r: &SMatrix) -> Result<CheckReport> {
    if !r.is_square() {
        return Err(Error::NonSquareTensorDim(r.rows));
    }
    let ix = TensorIndex::of_square(r.rows)?;
    let res = ybe_with_flip(r, &permutation_matrix(ix.n), ix)?;
    Ok(ybe_report(name, &res, ix.n))
}

/// Graded variant: the flip carries the Koszul sign.
pub fn verify_graded_ybe(name: &str, r: &SMatrix, parities: &[Parity]) -> Result<CheckReport> {
    let ix = TensorIndex::of_square(r.rows)?;
    if parities.len() != ix.n {
        return Err(Error::DimensionMismatch(format!("{} parities for base dimension {}", parities.len(), ix.n)));
    }
    let res = ybe_with_flip(r, &graded_permutation_matrix(parities), ix)?;
    let mut rep = ybe_report(name, &res, ix.n);
    rep.check = "graded-ybe".into();
    Ok(rep)
}

/// `(d ⊗ d)^{-1} r (d ⊗ d)`.
pub fn conjugate_r(r: &SMatrix, d: &SMatrix) -> Result<SMatrix> {
    let ix = TensorIndex::of_square(r.rows)?;
    if d.rows != ix.n || !d.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "transform is {}x{}, R has base dimension {}",
            d.rows, d.cols, ix.n
        )));
    }
    let di = d.inverse()?;
    kron(&di, &di).mul(r)?.mul(&kron(d, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Scalar {
        Scalar::param("q")
    }

    fn r5(zeta: Scalar) -> SMatrix {
        let lam = q().sub(&q().inv().unwrap());
        let z = Scalar::zero;
        SMatrix::from_rows(vec![
            vec![q(), z(), z(), z()],
            vec![z(), Scalar::one(), z(), z()],
            vec![z(), lam, Scalar::one(), z()],
            vec![z(), z(), z(), zeta],
        ])
        .unwrap()
    }

    #[test]
    fn kron_blocks() {
        assert_eq!(kron(&SMatrix::identity(2), &SMatrix::identity(2)), SMatrix::identity(4));
        let d = SMatrix::diag(&[q(), Scalar::one()]);
        assert_eq!(kron(&d, &SMatrix::identity(2)), SMatrix::diag(&[q(), q(), Scalar::one(), Scalar::one()]));
    }

    #[test]
    fn permutation_basics() {
        assert_eq!(permutation_matrix(1), SMatrix::identity(1));
        let p = permutation_matrix(2);
        assert!(p.get(1, 2).is_one() && p.get(2, 1).is_one());
        assert!(p.get(0, 0).is_one() && p.get(3, 3).is_one());
        let p3 = permutation_matrix(3);
        assert_eq!(p3.mul(&p3).unwrap(), SMatrix::identity(9));
    }

    #[test]
    fn ybe_standard_and_identity() {
        assert!(verify_ybe(&r5(q())).unwrap().passed());
        assert!(verify_ybe(&SMatrix::identity(9)).unwrap().passed());
        let mut bad = r5(q());
        bad.set(2, 2, Scalar::int(2));
        assert!(!verify_ybe(&bad).unwrap().passed());
    }

    #[test]
    fn non_square_dimension() {
        assert!(matches!(verify_ybe(&SMatrix::identity(3)), Err(Error::NonSquareTensorDim(3))));
    }

    #[test]
    fn rhat_entries() {
        assert_eq!(rhat(&SMatrix::identity(4)).unwrap(), permutation_matrix(2));
        assert_eq!(rhat(&r5(q())).unwrap().get(3, 3), &q());
    }

    #[test]
    fn inverse_and_determinant() {
        let i = Scalar::imag_unit();
        let d = SMatrix::from_rows(vec![vec![Scalar::one(), i.neg()], vec![Scalar::one(), i.clone()]]).unwrap();
        assert_eq!(d.determinant().unwrap(), i.add(&i));
        assert_eq!(d.mul(&d.inverse().unwrap()).unwrap(), SMatrix::identity(2));
        let sing = SMatrix::from_rows(vec![vec![q(), q()], vec![q(), q()]]).unwrap();
        assert_eq!(sing.inverse(), Err(Error::SingularTransform));
    }

    #[test]
    fn conjugation_by_scalars() {
        let r = r5(q());
        assert_eq!(conjugate_r(&r, &SMatrix::identity(2)).unwrap(), r);
        let c = SMatrix::identity(2).scale(&Scalar::int(3));
        assert_eq!(conjugate_r(&r, &c).unwrap(), r);
    }
}
