//! Darboux polynomials: detection, classification against `l * det[X]^a`,
//! a brute-force eigenvector oracle over `Q`, and constant detection.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::diffring::{DiffMonomial, DiffPoly, DiffVar};
use crate::error::{AlgebraError, Result};
use crate::linalg::{charpoly, infinity_norm, integer_roots, span_basis, Matrix};
use crate::matring::{det_x, DerivationSpec, RPoly, XMonomial};
use crate::scalar::{FieldConfig, Scalar};

/// The cofactor `q` with `D(p) = q p`, if `p` is Darboux.
///
/// `D` preserves X-degree, so `q` has X-degree 0 and is fixed by the
/// leading coefficients; the candidate is then checked on every term.
pub fn darboux_cofactor(
    p: &RPoly,
    spec: &DerivationSpec,
    cfg: &FieldConfig,
) -> Result<Option<DiffPoly>> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let dp = spec.derive(p, cfg);
    let (lm, lc) = p.terms().next_back().expect("non-zero");
    let Some(q) = dp.coefficient(lm).exact_divide(lc)? else {
        return Ok(None);
    };
    Ok((p.scale(&q) == dp).then_some(q))
}

/// For a Darboux `p` under a generic derivation, finds `(l, a)` with
/// `p = l * det[X]^a` and checks the cofactor is `l'/l + a * tr(A)`.
///
/// A Darboux `p` of any other shape is reported as
/// [`AlgebraError::DarbouxInconsistency`].
pub fn classify_darboux(
    p: &RPoly,
    spec: &DerivationSpec,
    cfg: &FieldConfig,
) -> Result<Option<(Scalar, u32)>> {
    if !spec.is_generic() {
        return Err(AlgebraError::Precondition(
            "classification needs a generic derivation".into(),
        ));
    }
    let Some(q) = darboux_cofactor(p, spec, cfg)? else {
        return Ok(None);
    };
    match_det_power(p, &q, spec, cfg).map(Some)
}

/// Checks that a Darboux `p` with cofactor `q` has the form `l * det[X]^a`.
fn match_det_power(
    p: &RPoly,
    q: &DiffPoly,
    spec: &DerivationSpec,
    cfg: &FieldConfig,
) -> Result<(Scalar, u32)> {
    let n = spec.n();
    let inconsistent = |why: &str| AlgebraError::DarbouxInconsistency(format!("{p}: {why}"));
    let deg = match p.homogeneous_degree() {
        Some(d) => d,
        None => return Err(inconsistent("Darboux but not homogeneous")),
    };
    if deg % n as u32 != 0 {
        return Err(inconsistent("degree is not a multiple of n"));
    }
    let a = deg / n as u32;
    let power = det_x(n).pow(a);
    let (_, lc) = p.terms().next_back().expect("non-zero");
    let (_, dlc) = power.terms().next_back().expect("non-zero");
    let ell = match (lc.as_scalar(), dlc.as_scalar()) {
        (Some(c), Some(dc)) => c.div(&dc)?,
        _ => return Err(inconsistent("leading coefficient involves Y")),
    };
    if power.scale_scalar(&ell) != *p {
        return Err(inconsistent("not a multiple of a power of det[X]"));
    }
    let expected = DiffPoly::constant(ell.derive(cfg).div(&ell)?)
        .add(&spec.trace().scale(&Scalar::from_int(i64::from(a))));
    if expected != *q {
        return Err(inconsistent("cofactor differs from l'/l + a*tr(A)"));
    }
    Ok((ell, a))
}

/// A basis of the Darboux polynomials in `Q[X]` of degree at most `d` under
/// the generic derivation with the elementary basis.
pub fn enumerate_darboux_generic(n: usize, d: u32) -> Result<Vec<RPoly>> {
    enumerate_darboux(&DerivationSpec::generic(n), d)
}

/// Same oracle for any generic derivation whose basis matrices are rational.
///
/// Writing `D(p) = sum_st Y_st L_st(p)`, `p` is Darboux iff it is a common
/// eigenvector of every `L_st`. Each joint eigenspace contributes its own
/// basis, so every returned element is Darboux; together they span all
/// Darboux polynomials of degree `<= d`. Sorted by degree, then leading
/// power product.
pub fn enumerate_darboux(spec: &DerivationSpec, d: u32) -> Result<Vec<RPoly>> {
    if !spec.is_generic() {
        return Err(AlgebraError::Precondition(
            "the oracle runs under a generic derivation".into(),
        ));
    }
    let per_degree: Vec<Result<Vec<RPoly>>> = (0..=d)
        .into_par_iter()
        .map(|e| darboux_of_degree(spec, e))
        .collect();
    let mut out = Vec::new();
    for part in per_degree {
        out.extend(part?);
    }
    out.sort_by(|a, b| {
        let la = a.terms().next_back().map(|(m, _)| m.clone());
        let lb = b.terms().next_back().map(|(m, _)| m.clone());
        la.cmp(&lb)
    });
    Ok(out)
}

fn darboux_of_degree(spec: &DerivationSpec, e: u32) -> Result<Vec<RPoly>> {
    let n = spec.n();
    let monos = XMonomial::all_of_degree(n, e);
    let dim = monos.len();
    let ops = operator_matrices(spec, &monos)?;
    let roots: Vec<Vec<BigInt>> = ops
        .iter()
        .map(|l| {
            let bound = infinity_norm(l).ceil().to_integer();
            integer_roots(&charpoly(l), &bound)
        })
        .collect();
    let identity: Vec<Vec<BigRational>> = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| if i == j { one() } else { zero() })
                .collect()
        })
        .collect();
    let mut spaces = Vec::new();
    joint_eigenspaces(&ops, &roots, 0, identity, &mut spaces);
    let mut out = Vec::new();
    for space in spaces {
        for v in span_basis(&space, dim) {
            out.push(RPoly::from_terms(
                n,
                monos
                    .iter()
                    .zip(&v)
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(m, c)| {
                        (
                            m.clone(),
                            DiffPoly::constant(Scalar::from_rational(c.clone())),
                        )
                    }),
            ));
        }
    }
    Ok(out)
}

fn zero() -> BigRational {
    <BigRational as Zero>::zero()
}

fn one() -> BigRational {
    <BigRational as One>::one()
}

/// `L_st` on the monomial basis, each scaled to integer entries (which keeps
/// eigenvectors and makes rational eigenvalues integral).
fn operator_matrices(
    spec: &DerivationSpec,
    monos: &[XMonomial],
) -> Result<Vec<Matrix<BigRational>>> {
    let n = spec.n();
    let dim = monos.len();
    let index: HashMap<&XMonomial, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut ops = vec![Matrix::from_fn(dim, dim, |_, _| zero()); n * n];
    for (col, alpha) in monos.iter().enumerate() {
        for (beta, c) in spec.derive_monomial(alpha).terms() {
            let row = index[beta];
            for (dm, s) in c.terms() {
                let v = linear_y(dm).ok_or_else(|| {
                    AlgebraError::Precondition("derivation is not linear in Y".into())
                })?;
                let s = s.as_rational().ok_or_else(|| {
                    AlgebraError::Precondition("the oracle needs rational basis entries".into())
                })?;
                let st = (v.i as usize - 1) * n + (v.j as usize - 1);
                ops[st][(row, col)] += s;
            }
        }
    }
    for op in &mut ops {
        let mut l = BigInt::one();
        for r in 0..dim {
            for c in 0..dim {
                l = l.lcm(op[(r, c)].denom());
            }
        }
        if !l.is_one() {
            let scale = BigRational::from_integer(l);
            *op = op.map(|v| v * &scale);
        }
    }
    Ok(ops)
}

fn linear_y(m: &DiffMonomial) -> Option<DiffVar> {
    match m.powers() {
        [(v, 1)] if v.k == 0 => Some(*v),
        _ => None,
    }
}

/// Depth-first over eigenvalue tuples: at each step restrict the current
/// common eigenspace `basis` to `ker(L - lambda)`.
fn joint_eigenspaces(
    ops: &[Matrix<BigRational>],
    roots: &[Vec<BigInt>],
    idx: usize,
    basis: Vec<Vec<BigRational>>,
    out: &mut Vec<Vec<Vec<BigRational>>>,
) {
    if basis.is_empty() {
        return;
    }
    if idx == ops.len() {
        out.push(basis);
        return;
    }
    let l = &ops[idx];
    let dim = l.rows();
    let images: Vec<Vec<BigRational>> = basis
        .iter()
        .map(|v| {
            (0..dim)
                .map(|r| {
                    let mut acc = zero();
                    for (c, x) in v.iter().enumerate() {
                        if !x.is_zero() && !l[(r, c)].is_zero() {
                            acc += &l[(r, c)] * x;
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    for lambda in &roots[idx] {
        let lam = BigRational::from_integer(lambda.clone());
        // columns: (L - lambda) v_k
        let m = Matrix::from_fn(dim, basis.len(), |r, k| &images[k][r] - &lam * &basis[k][r]);
        let kernel = m.nullspace();
        if kernel.is_empty() {
            continue;
        }
        let restricted: Vec<Vec<BigRational>> = kernel
            .iter()
            .map(|c| {
                (0..dim)
                    .map(|r| {
                        let mut acc = zero();
                        for (k, ck) in c.iter().enumerate() {
                            if !ck.is_zero() {
                                acc += ck * &basis[k][r];
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        joint_eigenspaces(ops, roots, idx + 1, restricted, out);
    }
}

/// Exhaustive search over `F{Y}`: every non-zero polynomial in
/// `Y_{ij,k}` (`k <= max_order`) of degree `<= max_degree` with coefficients
/// from `coeffs` that divides its own derivative. A finite search, not a
/// proof.
pub fn fuzz_darboux_diffring(
    n: usize,
    max_order: usize,
    max_degree: u32,
    coeffs: &[Scalar],
    cfg: &FieldConfig,
) -> Result<Vec<DiffPoly>> {
    const LIMIT: u128 = 20_000_000;
    let mut vars = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            for k in 0..=max_order {
                vars.push(DiffVar::new(i, j, k));
            }
        }
    }
    let monos = monomials_up_to(&vars, max_degree);
    let base = coeffs.len() as u128;
    let total = (0..monos.len()).try_fold(1u128, |acc, _| {
        acc.checked_mul(base).filter(|&t| t <= LIMIT)
    });
    let Some(total) = total else {
        return Err(AlgebraError::Unsupported(format!(
            "{} coefficient choices over {} monomials exceed the search limit",
            coeffs.len(),
            monos.len()
        )));
    };
    let hits: Vec<DiffPoly> = (0..total as u64)
        .into_par_iter()
        .filter_map(|mut code| {
            let p = DiffPoly::from_terms(monos.iter().map(|m| {
                let c = coeffs[(code % base as u64) as usize].clone();
                code /= base as u64;
                (m.clone(), c)
            }));
            if p.is_zero() {
                return None;
            }
            match p.derive(cfg).exact_divide(&p) {
                Ok(Some(_)) => Some(p),
                _ => None,
            }
        })
        .collect();
    let mut out: Vec<DiffPoly> = Vec::with_capacity(hits.len());
    for p in hits {
        if !out.contains(&p) {
            out.push(p);
        }
    }
    Ok(out)
}

fn monomials_up_to(vars: &[DiffVar], max_degree: u32) -> Vec<DiffMonomial> {
    let mut out = vec![DiffMonomial::one()];
    let mut frontier = vec![(DiffMonomial::one(), 0usize)];
    for _ in 0..max_degree {
        let mut next = Vec::new();
        for (m, start) in &frontier {
            for (idx, v) in vars.iter().enumerate().skip(*start) {
                let grown = m.mul(&DiffMonomial::var(*v));
                out.push(grown.clone());
                next.push((grown, idx));
            }
        }
        frontier = next;
    }
    out
}

/// Whether `num/den` is a constant: `D(num) den - num D(den) = 0`.
pub fn is_constant(
    num: &RPoly,
    den: &RPoly,
    spec: &DerivationSpec,
    cfg: &FieldConfig,
) -> Result<bool> {
    if den.is_zero() {
        return Err(AlgebraError::DivisionByZero);
    }
    let lhs = spec.derive(num, cfg).mul(den);
    let rhs = num.mul(&spec.derive(den, cfg));
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;

    fn y(i: usize, j: usize) -> DiffPoly {
        DiffPoly::y(i, j)
    }

    #[test]
    fn cofactor_examples() {
        let cfg = FieldConfig::rational();
        let g = DerivationSpec::generic(2);
        let q = darboux_cofactor(&det_x(2), &g, &cfg).unwrap();
        assert_eq!(q, Some(y(1, 1).add(&y(2, 2))));
        assert_eq!(
            darboux_cofactor(&RPoly::x(2, 1, 1), &g, &cfg).unwrap(),
            None
        );
        assert_eq!(
            darboux_cofactor(&RPoly::zero(2), &g, &cfg),
            Err(AlgebraError::ZeroPolynomial)
        );

        let cfg = FieldConfig::with_unit_derivatives(1);
        let ell = RPoly::scalar(2, Scalar::generator(0));
        let q = darboux_cofactor(&ell, &g, &cfg).unwrap().unwrap();
        assert_eq!(q, DiffPoly::constant(Scalar::generator(0).recip().unwrap()));
    }

    #[test]
    fn classification_examples() {
        let cfg = FieldConfig::rational();
        let g = DerivationSpec::generic(2);
        let p = det_x(2).pow(2).scale_scalar(&Scalar::from_int(3));
        assert_eq!(
            classify_darboux(&p, &g, &cfg).unwrap(),
            Some((Scalar::from_int(3), 2))
        );
        let p = RPoly::x(2, 1, 2).add(&RPoly::x(2, 2, 2));
        assert_eq!(classify_darboux(&p, &g, &cfg).unwrap(), None);
        let five = RPoly::scalar(2, Scalar::from_int(5));
        assert_eq!(
            classify_darboux(&five, &g, &cfg).unwrap(),
            Some((Scalar::from_int(5), 0))
        );
    }

    #[test]
    fn outliers_surface_as_inconsistency() {
        // X_12 + X_22 is Darboux with cofactor 2 when f is all ones; fed to
        // the shape check it must be rejected loudly.
        let cfg = FieldConfig::rational();
        let ones =
            DerivationSpec::specialized(Matrix::from_fn(2, 2, |_, _| Scalar::one())).unwrap();
        let p = RPoly::x(2, 1, 2).add(&RPoly::x(2, 2, 2));
        let q = darboux_cofactor(&p, &ones, &cfg).unwrap().unwrap();
        assert_eq!(q, DiffPoly::constant(Scalar::from_int(2)));
        let g = DerivationSpec::generic(2);
        assert!(matches!(
            match_det_power(&p, &q, &g, &cfg),
            Err(AlgebraError::DarbouxInconsistency(_))
        ));
        assert!(matches!(
            classify_darboux(&p, &ones, &cfg),
            Err(AlgebraError::Precondition(_))
        ));
    }

    #[test]
    fn small_oracle_runs() {
        let basis = enumerate_darboux_generic(2, 2).unwrap();
        assert_eq!(basis, vec![RPoly::one(2), det_x(2)]);
        let basis = enumerate_darboux_generic(2, 3).unwrap();
        assert_eq!(basis, vec![RPoly::one(2), det_x(2)]);
        let basis = enumerate_darboux_generic(1, 2).unwrap();
        assert_eq!(
            basis,
            vec![RPoly::one(1), RPoly::x(1, 1, 1), RPoly::x(1, 1, 1).pow(2)]
        );
    }

    #[test]
    fn fuzz_trivial_cases() {
        let cfg = FieldConfig::rational();
        let coeffs = [Scalar::from_int(-1), Scalar::zero(), Scalar::from_int(1)];
        let hits = fuzz_darboux_diffring(1, 0, 1, &coeffs, &cfg).unwrap();
        assert!(hits.iter().all(DiffPoly::is_constant));
        assert_eq!(hits.len(), 2);
        let y11 = y(1, 1);
        assert_eq!(y11.derive(&cfg).exact_divide(&y11).unwrap(), None);
    }

    #[test]
    fn constant_examples() {
        let cfg = FieldConfig::rational();
        let g = DerivationSpec::generic(2);
        let d = det_x(2);
        assert!(is_constant(&d, &d, &g, &cfg).unwrap());
        let num = RPoly::x(2, 1, 2).add(&RPoly::x(2, 2, 2));
        assert!(!is_constant(&num, &d, &g, &cfg).unwrap());
        let ones =
            DerivationSpec::specialized(Matrix::from_fn(2, 2, |_, _| Scalar::one())).unwrap();
        assert!(is_constant(&num, &d, &ones, &cfg).unwrap());
        assert_eq!(
            is_constant(&num, &RPoly::zero(2), &g, &cfg),
            Err(AlgebraError::DivisionByZero)
        );
    }
}
