use std::collections::HashMap;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::linalg::{numeric_kernel, Echelon};
use crate::matrix::CycMatrix;
use crate::rep::RepPair;

use super::LiftedRep;

/// Environment variable overriding the exact-mode bound on `dim²`.
pub const MAX_EXACT_DIM_ENV: &str = "MODREP_MAX_EXACT_DIM";
pub const DEFAULT_MAX_EXACT_SIZE: usize = 4096;
/// Relative tolerance for every floating-point rank or eigenvalue decision.
pub const NUMERIC_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CommutantOptions {
    /// Exact mode is refused when `dim²` exceeds this.
    pub max_exact_size: usize,
    pub force_exact: bool,
    /// Fall back to floating point instead of refusing.
    pub allow_numeric: bool,
}

impl Default for CommutantOptions {
    fn default() -> Self {
        CommutantOptions {
            max_exact_size: DEFAULT_MAX_EXACT_SIZE,
            force_exact: false,
            allow_numeric: false,
        }
    }
}

impl CommutantOptions {
    /// Defaults with the bound read from `MODREP_MAX_EXACT_DIM` when set.
    pub fn from_env() -> Self {
        let max_exact_size = std::env::var(MAX_EXACT_DIM_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_MAX_EXACT_SIZE);
        CommutantOptions {
            max_exact_size,
            ..Default::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CommutantMethod {
    Exact,
    Numeric { tol: f64, gap: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CommutantResult {
    pub dim: usize,
    pub method: CommutantMethod,
    /// Number of unknown entries after the `T`-block reduction.
    pub unknowns: usize,
}

/// The linear system `XS = SX`, `XT = TX` in the entries of `X`.
///
/// When `T` is diagonal, `XT = TX` just forces `X_ij = 0` unless
/// `T_ii = T_jj`, so only those entries become unknowns.
struct System {
    n: usize,
    vars: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
    equations: Vec<&'static str>,
}

impl System {
    fn new(s: &CycMatrix, t: &CycMatrix) -> Self {
        let n = s.dim();
        let mut vars = Vec::new();
        let diagonal = t.is_diagonal();
        let d = t.diag();
        for i in 0..n {
            for j in 0..n {
                if !diagonal || d[i] == d[j] {
                    vars.push((i, j));
                }
            }
        }
        let index = vars.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let equations = if diagonal { vec!["s"] } else { vec!["s", "t"] };
        System { n, vars, index, equations }
    }

    /// Row `(XA - AX)_{ik}` as sparse coefficients on the unknowns.
    fn row(&self, a: &CycMatrix, i: usize, k: usize) -> Vec<(usize, CycNum)> {
        let mut acc: HashMap<usize, CycNum> = HashMap::new();
        for j in 0..self.n {
            if let Some(&v) = self.index.get(&(i, j)) {
                let x = a.get(j, k);
                if !x.is_zero() {
                    let e = acc.entry(v).or_insert_with(|| CycNum::zero(a.order()));
                    *e = &*e + x;
                }
            }
            if let Some(&v) = self.index.get(&(j, k)) {
                let x = a.get(i, j);
                if !x.is_zero() {
                    let e = acc.entry(v).or_insert_with(|| CycNum::zero(a.order()));
                    *e = &*e - x;
                }
            }
        }
        let mut row: Vec<(usize, CycNum)> = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        row.sort_by_key(|(v, _)| *v);
        row
    }

    fn rows<'a>(&'a self, s: &'a CycMatrix, t: &'a CycMatrix) -> impl Iterator<Item = Vec<(usize, CycNum)>> + 'a {
        self.equations.iter().flat_map(move |which| {
            let a = if *which == "s" { s } else { t };
            (0..self.n).flat_map(move |i| (0..self.n).map(move |k| self.row(a, i, k)))
        })
    }
}

/// Commutant dimension of a lifted representation, exact, with the bound
/// taken from the environment. Rescaling `S` and `T` by nonzero scalars
/// does not change the commutant, so the base matrices are used.
pub fn commutant_dim(rep: &LiftedRep) -> Result<usize> {
    Ok(commutant_dim_with(&rep.base, CommutantOptions::from_env())?.dim)
}

pub fn commutant_dim_with(rep: &RepPair, opts: CommutantOptions) -> Result<CommutantResult> {
    let n = rep.dim();
    if n == 0 {
        return Ok(CommutantResult { dim: 0, method: CommutantMethod::Exact, unknowns: 0 });
    }
    let size = n * n;
    let sys = System::new(&rep.s, &rep.t);
    if size > opts.max_exact_size && !opts.force_exact {
        if !opts.allow_numeric {
            return Err(Error::ResourceGuard { size, bound: opts.max_exact_size });
        }
        let rows: Vec<Vec<(usize, Complex64)>> = sys
            .rows(&rep.s, &rep.t)
            .map(|row| row.into_iter().map(|(v, x)| (v, x.embed_c64())).collect())
            .collect();
        let k = numeric_kernel(&rows, sys.vars.len(), NUMERIC_TOL);
        return Ok(CommutantResult {
            dim: k.dim,
            method: CommutantMethod::Numeric { tol: NUMERIC_TOL, gap: k.gap },
            unknowns: sys.vars.len(),
        });
    }
    let unknowns = sys.vars.len();
    let mut ech = Echelon::new(unknowns, rep.field_order());
    for row in sys.rows(&rep.s, &rep.t) {
        // The identity always commutes, so the rank never exceeds unknowns - 1.
        if ech.rank() + 1 >= unknowns {
            break;
        }
        if !row.is_empty() {
            ech.insert_sparse(&row);
        }
    }
    Ok(CommutantResult {
        dim: unknowns - ech.rank(),
        method: CommutantMethod::Exact,
        unknowns,
    })
}

/// Largest entry of `|M Mᴴ - I|` in double precision.
pub fn unitarity_defect(m: &CycMatrix) -> f64 {
    let n = m.dim();
    let a = DMatrix::from_row_slice(n, n, &m.to_c64());
    let prod = &a * a.adjoint();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let want = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((prod[(i, j)] - Complex64::new(want, 0.0)).norm());
        }
    }
    worst
}

/// One eigenspace of a random self-adjoint commutant element.
#[derive(Clone, Debug)]
pub struct InvariantSubspace {
    pub eigenvalue: f64,
    /// Orthonormal columns.
    pub basis: Vec<Vec<Complex64>>,
    /// Largest `|(I - P) A v|` over basis vectors `v` and `A ∈ {S, T}`.
    pub residual: f64,
}

/// Splits a unitary representation into the eigenspaces of a random
/// self-adjoint element of its (numerically computed) commutant. Eigenvalues
/// closer than `NUMERIC_TOL` relative to the spread are merged.
pub fn invariant_subspaces(rep: &RepPair, seed: u64) -> Vec<InvariantSubspace> {
    let n = rep.dim();
    if n == 0 {
        return Vec::new();
    }
    let sys = System::new(&rep.s, &rep.t);
    let rows: Vec<Vec<(usize, Complex64)>> = sys
        .rows(&rep.s, &rep.t)
        .map(|row| row.into_iter().map(|(v, x)| (v, x.embed_c64())).collect())
        .collect();
    let kernel = numeric_kernel(&rows, sys.vars.len(), NUMERIC_TOL);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut h = DMatrix::<Complex64>::zeros(n, n);
    for v in &kernel.basis {
        let c: f64 = rng.gen_range(-1.0..1.0);
        for (k, &(i, j)) in sys.vars.iter().enumerate() {
            h[(i, j)] += v[k] * c;
            h[(j, i)] += v[k].conj() * c;
        }
    }
    let eig = SymmetricEigen::new(h);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let spread = eig.eigenvalues.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(1.0);
    let s = DMatrix::from_row_slice(n, n, &rep.s.to_c64());
    let t = DMatrix::from_row_slice(n, n, &rep.t.to_c64());

    let mut groups: Vec<(f64, Vec<usize>)> = Vec::new();
    for k in order {
        let lam = eig.eigenvalues[k];
        match groups.last_mut() {
            Some((first, members)) if (lam - *first).abs() <= NUMERIC_TOL * spread => members.push(k),
            _ => groups.push((lam, vec![k])),
        }
    }
    groups
        .into_iter()
        .map(|(eigenvalue, members)| {
            let cols: Vec<_> = members.iter().map(|&k| eig.eigenvectors.column(k).into_owned()).collect();
            let p = DMatrix::from_columns(&cols);
            let proj = &p * p.adjoint();
            let mut residual = 0.0f64;
            for a in [&s, &t] {
                let image = a * &p;
                let leak = &image - &proj * &image;
                residual = residual.max(leak.iter().fold(0.0f64, |m, x| m.max(x.norm())));
            }
            InvariantSubspace {
                eigenvalue,
                basis: cols.iter().map(|c| c.iter().copied().collect()).collect(),
                residual,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::psu2::build_psu2;
    use crate::repcheck::lift;
    use crate::weil::{build_restricted, build_unfolded};

    #[test]
    fn trivial_is_one() {
        let l = lift(&RepPair::trivial()).unwrap();
        assert_eq!(commutant_dim(&l).unwrap(), 1);
    }

    #[test]
    fn psu2_r5_irreducible() {
        let l = lift(&build_psu2(5).unwrap()).unwrap();
        assert_eq!(commutant_dim(&l).unwrap(), 1);
    }

    #[test]
    fn restricted_r5_exact() {
        let l = lift(&build_restricted(5).unwrap()).unwrap();
        assert_eq!(commutant_dim(&l).unwrap(), 1);
    }

    #[test]
    fn direct_sum_has_two() {
        // PSU(2) at r = 5 (irreducible) plus the one-dimensional S = T = 1.
        let a = build_psu2(5).unwrap();
        let m = a.field_order();
        let blk = |x: &CycMatrix| {
            CycMatrix::from_fn(3, m, |i, j| match (i < 2, j < 2) {
                (true, true) => x.get(i, j).clone(),
                (false, false) => CycNum::one(m),
                _ => CycNum::zero(m),
            })
        };
        let labels = (0..3).map(|i| i.to_string()).collect();
        let sum = RepPair::new(5, crate::rep::RepLabel::Other, blk(&a.s), blk(&a.t), labels).unwrap();
        let res = commutant_dim_with(&sum, CommutantOptions::default()).unwrap();
        assert_eq!(res.dim, 2);
    }

    #[test]
    fn guard_and_numeric_fallback() {
        let rep = build_unfolded(5).unwrap();
        let small = CommutantOptions { max_exact_size: 100, ..Default::default() };
        assert!(matches!(
            commutant_dim_with(&rep, small),
            Err(Error::ResourceGuard { size: 625, bound: 100 })
        ));
        let numeric = commutant_dim_with(&rep, CommutantOptions { allow_numeric: true, ..small }).unwrap();
        let exact = commutant_dim_with(&rep, CommutantOptions::default()).unwrap();
        assert_eq!(exact.method, CommutantMethod::Exact);
        assert_eq!(numeric.dim, exact.dim);
        assert!(exact.dim >= 2);
    }

    #[test]
    fn unitarity_after_lift() {
        for rep in [build_psu2(5).unwrap(), build_restricted(11).unwrap()] {
            let l = lift(&rep).unwrap();
            assert!(unitarity_defect(&l.s()) < NUMERIC_TOL);
        }
    }

    #[test]
    fn subspaces_of_a_direct_sum() {
        let rep = build_unfolded(5).unwrap();
        let l = lift(&rep).unwrap();
        let lifted = RepPair::new(5, rep.label, l.s(), l.t(), rep.basis_labels.clone()).unwrap();
        let parts = invariant_subspaces(&lifted, 7);
        assert!(parts.len() >= 2);
        assert_eq!(parts.iter().map(|p| p.basis.len()).sum::<usize>(), 25);
        assert!(parts.iter().all(|p| p.residual < 1e-6));
    }
}
