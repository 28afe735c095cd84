//! Monomial bases `T_k` and their wronskians under a derivation on `R`.
//!
//! For a constant invertible `g`, `X -> X g` commutes with `D` and maps the
//! span of `T_k` to itself, so the wronskian matrix satisfies
//! `Wm(X g) = Wm(X) rho(g)` and `W(X g) = det(rho(g)) W(X)`. A polynomial
//! character of `GL_n` is a power of `det`, hence `W(g) = W(I) det(g)^s`
//! for all invertible `g` and, by density, `W(X) = W(I) det[X]^s` with
//! `s` the total X-degree of `T_k` over `n`. Determinants of `T_k`
//! wronskians are therefore taken after evaluating the entries at `X = I`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;

use crate::det::{bareiss_det, cofactor_det_bounded, DetRing};
use crate::diffring::DiffPoly;
use crate::error::{AlgebraError, Result};
use crate::linalg::Matrix;
use crate::matring::{det_x, DerivationSpec, RPoly, XMonomial};
use crate::scalar::{FieldConfig, Scalar};
use crate::tpoly::{TMonomial, TPoly};
use crate::zpoly::ZPoly;

/// The monomials in `t_1..t_m` and `X_ij` of total degree `1..=k`.
///
/// Ordered by degree, then descending degrevlex with
/// `t_1 > ... > t_m > X_11 > ... > X_nn`; constant `1` is not included.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialBasis {
    k: u32,
    n: usize,
    m: usize,
    elements: Vec<RPoly>,
    stable: bool,
}

impl MonomialBasis {
    pub fn new(k: u32, n: usize, cfg: &FieldConfig) -> Result<Self> {
        if k == 0 {
            return Err(AlgebraError::Precondition("k must be at least 1".into()));
        }
        let m = cfg.m();
        let nvars = m + n * n;
        let mut exps: Vec<Vec<u32>> = Vec::new();
        for d in 1..=k {
            let mut level = Vec::new();
            compositions(nvars, d, &mut vec![0; nvars], 0, &mut level);
            level.sort_by(|a, b| degrevlex(b, a));
            exps.extend(level);
        }
        let elements = exps
            .into_iter()
            .map(|e| {
                let t = TPoly::monomial(TMonomial::new(e[..m].to_vec()), BigRational::one());
                let x = XMonomial::new(n, e[m..].to_vec()).expect("n^2 exponents");
                RPoly::term(x, DiffPoly::constant(Scalar::from_poly(t)))
            })
            .collect();
        Ok(MonomialBasis {
            k,
            n,
            m,
            elements,
            stable: true,
        })
    }

    /// An explicit list, e.g. a reordering of another basis. Its wronskian
    /// is always expanded in full.
    pub fn from_elements(k: u32, n: usize, m: usize, elements: Vec<RPoly>) -> Self {
        MonomialBasis {
            k,
            n,
            m,
            elements,
            stable: false,
        }
    }

    /// Whether the span is mapped to itself by `X -> X g`.
    pub fn is_gl_stable(&self) -> bool {
        self.stable
    }

    fn x_degree(&self) -> u32 {
        self.elements.iter().map(RPoly::total_degree).sum()
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn elements(&self) -> &[RPoly] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

fn compositions(nvars: usize, left: u32, cur: &mut Vec<u32>, slot: usize, out: &mut Vec<Vec<u32>>) {
    if slot + 1 == nvars {
        cur[slot] = left;
        out.push(cur.clone());
        return;
    }
    for v in (0..=left).rev() {
        cur[slot] = v;
        compositions(nvars, left - v, cur, slot + 1, out);
    }
}

/// Same-degree degrevlex: the larger exponent in the last differing
/// variable makes the monomial smaller.
fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DetMethod {
    Cofactor,
    Bareiss,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WronskianReport {
    pub k: u32,
    pub basis_size: usize,
    pub determinant: RPoly,
    pub is_zero: bool,
}

/// Row `r` holds the `r`-th derivatives of the basis, columns in basis order.
pub fn wronskian_matrix(
    basis: &MonomialBasis,
    spec: &DerivationSpec,
    cfg: &FieldConfig,
) -> Result<Matrix<RPoly>> {
    if spec.n() != basis.n() {
        return Err(AlgebraError::DimensionMismatch {
            expected: spec.n(),
            found: basis.n(),
        });
    }
    let size = basis.len();
    let columns: Vec<Vec<RPoly>> = basis
        .elements()
        .par_iter()
        .map(|e| {
            let mut col = Vec::with_capacity(size);
            let mut cur = e.clone();
            for r in 0..size {
                if r > 0 {
                    cur = spec.derive(&cur, cfg);
                }
                col.push(cur.clone());
            }
            col
        })
        .collect();
    Ok(Matrix::from_fn(size, size, |r, c| columns[c][r].clone()))
}

/// Work limit for cofactor expansion of a wronskian, in the units of
/// [`DetRing::UNIT_COST`].
pub const COFACTOR_BUDGET: usize = 2_000_000_000;

pub fn wronskian_det(
    basis: &MonomialBasis,
    spec: &DerivationSpec,
    cfg: &FieldConfig,
    method: DetMethod,
) -> Result<WronskianReport> {
    if basis.is_empty() {
        return Err(AlgebraError::Precondition("empty basis".into()));
    }
    let w = wronskian_matrix(basis, spec, cfg)?;
    let determinant = determinant(&w, basis, method)?;
    Ok(WronskianReport {
        k: basis.k(),
        basis_size: basis.len(),
        is_zero: determinant.is_zero(),
        determinant,
    })
}

fn determinant(w: &Matrix<RPoly>, basis: &MonomialBasis, method: DetMethod) -> Result<RPoly> {
    if !basis.is_gl_stable() {
        return full_determinant(w, basis.m(), method);
    }
    let n = basis.n();
    let at_one = Matrix::from_fn(w.rows(), w.cols(), |r, c| at_identity(&w[(r, c)]));
    let c = coefficient_determinant(&at_one, method)?;
    if c.is_zero() {
        return Ok(RPoly::zero(n));
    }
    let d = basis.x_degree();
    if !d.is_multiple_of(n as u32) {
        return Err(AlgebraError::MethodDisagreement(format!(
            "non-zero W(I) but X-degree {d} is not a multiple of {n}"
        )));
    }
    Ok(det_x(n).pow(d / n as u32).scale(&c))
}

/// `p` at `X_ii = 1`, `X_ij = 0` for `i != j`.
fn at_identity(p: &RPoly) -> DiffPoly {
    let n = p.n();
    let mut acc = DiffPoly::zero();
    for (m, c) in p.terms() {
        if (1..=n).all(|i| (1..=n).all(|j| i == j || m.exp(i, j) == 0)) {
            acc.add_assign(c);
        }
    }
    acc
}

/// The determinant of a matrix over `F{Y}`, in the smallest ring that holds
/// the entries: integer polynomials in `t1` after clearing row
/// denominators, `Q[t]`, `F` or `F{Y}`.
fn coefficient_determinant(a: &Matrix<DiffPoly>, method: DetMethod) -> Result<DiffPoly> {
    let entries = a.to_rows();
    let scalars: Option<Vec<Vec<Scalar>>> = entries
        .iter()
        .map(|r| r.iter().map(DiffPoly::as_scalar).collect())
        .collect();
    let Some(scalars) = scalars else {
        return run(a, method);
    };
    let polys: Option<Vec<Vec<TPoly>>> = scalars
        .iter()
        .map(|r| {
            r.iter()
                .map(|s| s.is_polynomial().then(|| s.numerator().clone()))
                .collect()
        })
        .collect();
    let Some(polys) = polys else {
        let m = Matrix::from_rows(scalars);
        return Ok(DiffPoly::constant(run(&m, method)?));
    };
    let mut scale = BigInt::one();
    let mut rows = Vec::with_capacity(polys.len());
    for r in &polys {
        let l = r
            .iter()
            .flat_map(|p| p.terms().map(|(_, c)| c.denom().clone()))
            .fold(BigInt::one(), |acc, d| acc.lcm(&d));
        let k = BigRational::from_integer(l.clone());
        scale *= l;
        let z: Option<Vec<ZPoly>> = r.iter().map(|p| ZPoly::from_tpoly(&p.scale(&k))).collect();
        match z {
            Some(z) => rows.push(z),
            None => {
                let m = Matrix::from_rows(polys);
                return Ok(DiffPoly::constant(Scalar::from_poly(run(&m, method)?)));
            }
        }
    }
    let d = run(&Matrix::from_rows(rows), method)?.to_tpoly();
    let d = d.scale(&BigRational::new(BigInt::one(), scale));
    Ok(DiffPoly::constant(Scalar::from_poly(d)))
}

/// Y-free matrices with polynomial entries are handled in the flat ring
/// `Q[t, X]`, which avoids rational-function normalization.
fn full_determinant(w: &Matrix<RPoly>, m: usize, method: DetMethod) -> Result<RPoly> {
    let n = w[(0, 0)].n();
    let flat: Option<Vec<TPoly>> = w
        .to_rows()
        .into_iter()
        .flatten()
        .map(|e| e.to_flat(m))
        .collect();
    match flat {
        Some(entries) => {
            let size = w.rows();
            let fm = Matrix::from_fn(size, size, |r, c| entries[r * size + c].clone());
            Ok(RPoly::from_flat(n, m, &run(&fm, method)?))
        }
        None => run(w, method),
    }
}

fn run<T: DetRing>(w: &Matrix<T>, method: DetMethod) -> Result<T> {
    match method {
        DetMethod::Cofactor => cofactor_det_bounded(w, COFACTOR_BUDGET),
        DetMethod::Bareiss => bareiss_det(w),
    }
}

/// Both determinant routes on the same wronskian; they must agree.
/// Cofactor expansion runs first since it is the one that can hit its
/// budget.
pub fn wronskian_det_checked(
    basis: &MonomialBasis,
    spec: &DerivationSpec,
    cfg: &FieldConfig,
) -> Result<WronskianReport> {
    if basis.is_empty() {
        return Err(AlgebraError::Precondition("empty basis".into()));
    }
    let w = wronskian_matrix(basis, spec, cfg)?;
    let a = determinant(&w, basis, DetMethod::Cofactor)?;
    let b = determinant(&w, basis, DetMethod::Bareiss)?;
    if a != b {
        return Err(AlgebraError::MethodDisagreement(format!(
            "wronskian of size {}: cofactor and Bareiss differ",
            basis.len()
        )));
    }
    Ok(WronskianReport {
        k: basis.k(),
        basis_size: basis.len(),
        is_zero: a.is_zero(),
        determinant: a,
    })
}

/// Reports for `k = 1..=k_max` under `D(X) = f X`, each cross-checked by
/// both determinant routes.
///
/// `T_k` is contained in `T_{k+1}`, so a dependence found at level `k`
/// persists; the list stops at the first vanishing wronskian.
pub fn check_specialization(
    f: &Matrix<Scalar>,
    k_max: u32,
    cfg: &FieldConfig,
) -> Result<Vec<WronskianReport>> {
    if k_max == 0 {
        return Err(AlgebraError::Precondition(
            "k_max must be at least 1".into(),
        ));
    }
    let spec = DerivationSpec::specialized(f.clone())?;
    let mut out = Vec::new();
    for k in 1..=k_max {
        let basis = MonomialBasis::new(k, spec.n(), cfg)?;
        let report = wronskian_det_checked(&basis, &spec, cfg)?;
        let stop = report.is_zero;
        out.push(report);
        if stop {
            break;
        }
    }
    Ok(out)
}

/// Whether every report is non-zero.
pub fn passes(reports: &[WronskianReport]) -> bool {
    !reports.is_empty() && reports.iter().all(|r| !r.is_zero)
}
