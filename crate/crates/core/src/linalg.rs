//! Exact row reduction over `Q(ζ_m)` and a floating-point rank fallback.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::cyclotomic::CycNum;

/// Incremental row echelon form over `Q(ζ_m)`.
///
/// Rows are reduced against the stored pivots in insertion order, so every
/// stored row vanishes at the pivot columns of the rows stored before it.
/// Stored entries are kept in canonical coordinates, so an entry is zero
/// exactly when it has no terms.
#[derive(Clone, Debug)]
pub struct Echelon {
    cols: usize,
    order: u32,
    rows: Vec<(usize, Vec<CycNum>)>,
}

impl Echelon {
    pub fn new(cols: usize, order: u32) -> Self {
        Echelon { cols, order, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Adds a sparse row; returns whether the rank went up.
    pub fn insert_sparse(&mut self, row: &[(usize, CycNum)]) -> bool {
        let mut dense = vec![CycNum::zero(self.order); self.cols];
        for (k, x) in row {
            dense[*k] = &dense[*k] + x;
        }
        self.insert(dense)
    }

    /// Adds a dense row whose entries lie in `Q(ζ_order)`; returns whether
    /// the rank went up.
    pub fn insert(&mut self, row: Vec<CycNum>) -> bool {
        if self.rank() == self.cols {
            return false;
        }
        let mut row: Vec<CycNum> = row.into_iter().map(|x| x.promote(self.order)).collect();
        for (p, prow) in &self.rows {
            let c = row[*p].reduced();
            if c.num_terms() == 0 {
                continue;
            }
            for (k, x) in prow.iter().enumerate() {
                if x.num_terms() > 0 {
                    row[k] = (&row[k] - &(&c * x)).reduced();
                }
            }
        }
        let row: Vec<CycNum> = row.iter().map(CycNum::reduced).collect();
        let Some(p) = row.iter().position(|x| x.num_terms() > 0) else {
            return false;
        };
        let inv = row[p].inverse().expect("nonzero pivot");
        let row: Vec<CycNum> = row
            .iter()
            .map(|x| if x.num_terms() == 0 { CycNum::zero(self.order) } else { (x * &inv).reduced() })
            .collect();
        self.rows.push((p, row));
        true
    }

    /// Basis of the kernel `{v : row·v = 0 for every stored row}`.
    pub fn nullspace(&self) -> Vec<Vec<CycNum>> {
        // Back-substitute to reduced row echelon form.
        let mut rows = self.rows.clone();
        for i in (0..rows.len()).rev() {
            let (p, pivot_row) = rows[i].clone();
            for (j, (_, other)) in rows.iter_mut().enumerate() {
                if j == i {
                    continue;
                }
                let c = other[p].reduced();
                if c.num_terms() == 0 {
                    continue;
                }
                for (k, x) in pivot_row.iter().enumerate() {
                    if x.num_terms() > 0 {
                        other[k] = (&other[k] - &(&c * x)).reduced();
                    }
                }
            }
        }
        let pivots: Vec<usize> = rows.iter().map(|(p, _)| *p).collect();
        (0..self.cols)
            .filter(|f| !pivots.contains(f))
            .map(|f| {
                let mut v = vec![CycNum::zero(self.order); self.cols];
                v[f] = CycNum::one(self.order);
                for (p, row) in &rows {
                    v[*p] = -&row[f];
                }
                v
            })
            .collect()
    }
}

pub struct NumericKernel {
    pub dim: usize,
    pub basis: Vec<Vec<Complex64>>,
    /// Smallest relative Gram eigenvalue outside the kernel.
    pub gap: f64,
}

/// Numerical kernel of a sparse complex system via the Hermitian Gram matrix
/// `AᴴA`. Gram eigenvalues below `tol · λ_max` count as kernel directions.
pub fn numeric_kernel(rows: &[Vec<(usize, Complex64)>], cols: usize, tol: f64) -> NumericKernel {
    let mut gram = DMatrix::<Complex64>::zeros(cols, cols);
    for row in rows {
        for (i, a) in row {
            for (j, b) in row {
                gram[(*i, *j)] += a.conj() * b;
            }
        }
    }
    let eig = SymmetricEigen::new(gram);
    let max = eig.eigenvalues.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let scale = if max > 0.0 { max } else { 1.0 };
    let mut basis = Vec::new();
    let mut gap = f64::INFINITY;
    for (k, lam) in eig.eigenvalues.iter().enumerate() {
        let rel = lam.abs() / scale;
        if rel < tol {
            basis.push(eig.eigenvectors.column(k).iter().copied().collect());
        } else {
            gap = gap.min(rel);
        }
    }
    NumericKernel { dim: basis.len(), basis, gap }
}
