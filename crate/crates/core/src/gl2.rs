//! The 2x2 computation: the second and third derivative coefficients A..H,
//! the determinant M, the factorization `W_1 = M det[X]^2`, linear Darboux
//! polynomials and the new constant theta.

use std::fmt;

use crate::darboux::{darboux_cofactor, is_constant};
use crate::det::{cofactor_det, dodgson_det};
use crate::diffring::DiffPoly;
use crate::error::{AlgebraError, Result};
use crate::linalg::Matrix;
use crate::matring::{det_x, DerivationSpec, RPoly};
use crate::scalar::{FieldConfig, Scalar};
use crate::wronskian::{wronskian_det_checked, wronskian_matrix, MonomialBasis};

/// `A..H` with `X_11'' = A X_11 + B X_21`, `X_21'' = E X_11 + F X_21`,
/// `X_11''' = C X_11 + D X_21`, `X_21''' = G X_11 + H X_21` (and the same
/// with the second column).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Abcdefgh<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
    pub e: T,
    pub f: T,
    pub g: T,
    pub h: T,
}

impl<T> Abcdefgh<T> {
    pub fn named(&self) -> [(char, &T); 8] {
        [
            ('A', &self.a),
            ('B', &self.b),
            ('C', &self.c),
            ('D', &self.d),
            ('E', &self.e),
            ('F', &self.f),
            ('G', &self.g),
            ('H', &self.h),
        ]
    }
}

type Entries = [[DiffPoly; 2]; 2];

fn entries_of(f: &Matrix<Scalar>) -> Result<Entries> {
    if f.rows() != 2 || f.cols() != 2 {
        return Err(AlgebraError::DimensionMismatch {
            expected: 2,
            found: f.rows().max(f.cols()),
        });
    }
    let e = |i, j| DiffPoly::constant(f[(i, j)].clone());
    Ok([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
}

fn entries_of_spec(spec: &DerivationSpec) -> Result<Entries> {
    if spec.n() != 2 {
        return Err(AlgebraError::DimensionMismatch {
            expected: 2,
            found: spec.n(),
        });
    }
    let e = |i, j| spec.action(i, j).clone();
    Ok([[e(1, 1), e(1, 2)], [e(2, 1), e(2, 2)]])
}

fn scalar_of(p: &DiffPoly) -> Scalar {
    p.as_scalar().expect("Y-free")
}

/// From the recursions `C = f11 A + f21 B + A'`, `D = f12 A + f22 B + B'`,
/// `G = f11 E + f21 F + E'`, `H = f22 F + f12 E + F'`.
fn abcdefgh_poly(f: &Entries, cfg: &FieldConfig) -> Abcdefgh<DiffPoly> {
    let [[f11, f12], [f21, f22]] = f;
    let d = |p: &DiffPoly| p.derive(cfg);
    let a = d(f11).add(&f11.mul(f11)).add(&f12.mul(f21));
    let b = d(f12).add(&f11.mul(f12)).add(&f12.mul(f22));
    let e = d(f21).add(&f21.mul(f11)).add(&f22.mul(f21));
    let ff = d(f22).add(&f12.mul(f21)).add(&f22.mul(f22));
    let c = f11.mul(&a).add(&f21.mul(&b)).add(&d(&a));
    let dd = f12.mul(&a).add(&f22.mul(&b)).add(&d(&b));
    let g = f11.mul(&e).add(&f21.mul(&ff)).add(&d(&e));
    let h = f22.mul(&ff).add(&f12.mul(&e)).add(&d(&ff));
    Abcdefgh {
        a,
        b,
        c,
        d: dd,
        e,
        f: ff,
        g,
        h,
    }
}

pub fn abcdefgh(f: &Matrix<Scalar>, cfg: &FieldConfig) -> Result<Abcdefgh<Scalar>> {
    let p = abcdefgh_poly(&entries_of(f)?, cfg);
    Ok(Abcdefgh {
        a: scalar_of(&p.a),
        b: scalar_of(&p.b),
        c: scalar_of(&p.c),
        d: scalar_of(&p.d),
        e: scalar_of(&p.e),
        f: scalar_of(&p.f),
        g: scalar_of(&p.g),
        h: scalar_of(&p.h),
    })
}

/// The fully expanded formulas for A..H, transcribed term by term.
pub fn abcdefgh_expanded(f: &Matrix<Scalar>, cfg: &FieldConfig) -> Result<Abcdefgh<Scalar>> {
    entries_of(f)?;
    let v = |i, j| f[(i, j)].clone();
    let (f11, f12, f21, f22) = (v(0, 0), v(0, 1), v(1, 0), v(1, 1));
    let d1 = |s: &Scalar| s.derive(cfg);
    let d2 = |s: &Scalar| s.derive_n(2, cfg);
    let (f11p, f12p, f21p, f22p) = (d1(&f11), d1(&f12), d1(&f21), d1(&f22));
    let (f11pp, f12pp, f21pp, f22pp) = (d2(&f11), d2(&f12), d2(&f21), d2(&f22));
    let k = Scalar::from_int;
    let prod = |xs: &[&Scalar]| xs.iter().fold(Scalar::one(), |acc, x| acc.mul(x));
    let sum = |xs: Vec<Scalar>| xs.into_iter().fold(Scalar::zero(), |acc, x| acc.add(&x));

    let a = sum(vec![f11p.clone(), prod(&[&f11, &f11]), prod(&[&f12, &f21])]);
    let b = sum(vec![f12p.clone(), prod(&[&f11, &f12]), prod(&[&f12, &f22])]);
    let c = sum(vec![
        prod(&[&k(3), &f11, &f11p]),
        prod(&[&k(2), &f11, &f12, &f21]),
        prod(&[&k(2), &f12p, &f21]),
        f11pp.clone(),
        prod(&[&f12, &f21p]),
        prod(&[&f11, &f11, &f11]),
    ]);
    let d = sum(vec![
        prod(&[&k(2), &f11p, &f12]),
        prod(&[&f11, &f11, &f12]),
        prod(&[&f12, &f12, &f21]),
        prod(&[&f21, &f22, &f22]),
        prod(&[&k(2), &f12p, &f22]),
        prod(&[&f11, &f12p]),
        prod(&[&f12, &f22p]),
        f12pp.clone(),
        prod(&[&f11, &f12, &f22]),
    ]);
    let e = sum(vec![f21p.clone(), prod(&[&f21, &f11]), prod(&[&f22, &f21])]);
    let ff = sum(vec![f22p.clone(), prod(&[&f12, &f21]), prod(&[&f22, &f22])]);
    let g = sum(vec![
        prod(&[&k(2), &f21p, &f11]),
        prod(&[&f21, &f11, &f11]),
        prod(&[&f22, &f21, &f11]),
        prod(&[&k(2), &f22p, &f21]),
        prod(&[&f12, &f21, &f21]),
        prod(&[&f22, &f22, &f21]),
        f21pp.clone(),
        prod(&[&f21, &f11p]),
        prod(&[&f22, &f21p]),
    ]);
    let h = sum(vec![
        prod(&[&f21, &f11, &f12]),
        prod(&[&k(2), &f22, &f21, &f12]),
        prod(&[&k(3), &f22, &f22p]),
        prod(&[&k(2), &f12, &f21p]),
        prod(&[&f12p, &f21]),
        prod(&[&f22, &f22, &f22]),
        f22pp.clone(),
    ]);
    Ok(Abcdefgh {
        a,
        b,
        c,
        d,
        e,
        f: ff,
        g,
        h,
    })
}

/// A coefficient whose expanded formula disagrees with its recursion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    pub name: char,
    pub expanded: Scalar,
    pub recursive: Scalar,
}

impl fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: expanded {} but recursion gives {}",
            self.name, self.expanded, self.recursive
        )
    }
}

pub fn expansion_discrepancies(f: &Matrix<Scalar>, cfg: &FieldConfig) -> Result<Vec<Discrepancy>> {
    let rec = abcdefgh(f, cfg)?;
    let exp = abcdefgh_expanded(f, cfg)?;
    Ok(rec
        .named()
        .into_iter()
        .zip(exp.named())
        .filter(|((_, r), (_, e))| r != e)
        .map(|((name, r), (_, e))| Discrepancy {
            name,
            expanded: e.clone(),
            recursive: r.clone(),
        })
        .collect())
}

fn m_matrix(f: &Entries, ah: &Abcdefgh<DiffPoly>) -> Matrix<DiffPoly> {
    let [[f11, f12], [f21, f22]] = f;
    Matrix::from_rows(vec![
        vec![
            DiffPoly::one(),
            DiffPoly::zero(),
            DiffPoly::zero(),
            DiffPoly::one(),
        ],
        vec![f11.clone(), f12.clone(), f21.clone(), f22.clone()],
        vec![ah.a.clone(), ah.b.clone(), ah.e.clone(), ah.f.clone()],
        vec![ah.c.clone(), ah.d.clone(), ah.g.clone(), ah.h.clone()],
    ])
}

/// `M` by cofactor expansion and by condensation; they must agree.
fn m_det_poly(f: &Entries, cfg: &FieldConfig) -> Result<DiffPoly> {
    let m = m_matrix(f, &abcdefgh_poly(f, cfg));
    let (lap, cond) = rayon::join(|| cofactor_det(&m), || dodgson_det(&m));
    let (lap, cond) = (lap?, cond?);
    if lap != cond.value {
        return Err(AlgebraError::MethodDisagreement(format!(
            "M: cofactor expansion gives {lap}, condensation gives {}",
            cond.value
        )));
    }
    Ok(lap)
}

pub fn m_det(f: &Matrix<Scalar>, cfg: &FieldConfig) -> Result<Scalar> {
    Ok(scalar_of(&m_det_poly(&entries_of(f)?, cfg)?))
}

/// `M` for the action matrix of a derivation; symbolic in `Y` when generic.
pub fn m_det_spec(spec: &DerivationSpec, cfg: &FieldConfig) -> Result<DiffPoly> {
    m_det_poly(&entries_of_spec(spec)?, cfg)
}

fn det_f(f: &Matrix<Scalar>) -> Scalar {
    f[(0, 0)].mul(&f[(1, 1)]).sub(&f[(0, 1)].mul(&f[(1, 0)]))
}

fn closed_form(f: &Matrix<Scalar>, cfg: &FieldConfig, squared: bool) -> Result<Scalar> {
    entries_of(f)?;
    if !det_f(f).is_zero() {
        return Err(AlgebraError::Precondition("det f must vanish".into()));
    }
    let v = |i, j| f[(i, j)].clone();
    let (f11, f12, f21, f22) = (v(0, 0), v(0, 1), v(1, 0), v(1, 1));
    let d1 = |s: &Scalar| s.derive(cfg);
    let d2 = |s: &Scalar| s.derive_n(2, cfg);
    let (f11p, f12p, f21p, f22p) = (d1(&f11), d1(&f12), d1(&f21), d1(&f22));
    let (f11pp, f12pp, f21pp, f22pp) = (d2(&f11), d2(&f12), d2(&f21), d2(&f22));

    let diff_p = f11p.sub(&f22p);
    let t1 = f22.sub(&f11).mul(&f12p.mul(&f21pp).sub(&f21p.mul(&f12pp)));
    let t2 = f22p.sub(&f11p).mul(&f12pp.mul(&f21).sub(&f12.mul(&f21pp)));
    let t3 = f12p.mul(&f21p).mul(&f11.sub(&f22).pow(2));
    let t4 = f12
        .mul(&f21)
        .mul(&if squared { diff_p.pow(2) } else { diff_p });
    let common = f11
        .mul(&f11p)
        .add(&f22.mul(&f22p))
        .sub(&f11p.mul(&f22))
        .sub(&f11.mul(&f22p));
    let cross = f12.mul(&f21p).sub(&f12p.mul(&f21));
    let t5 = f12
        .mul(&f21p)
        .mul(&common.add(&f22pp).sub(&f11pp).add(&cross));
    let t6 = f12p
        .mul(&f21)
        .mul(&common.add(&f11pp).sub(&f22pp).sub(&cross));
    Ok(t1.add(&t2).sub(&t3).sub(&t4).add(&t5).add(&t6))
}

/// The simplified expression for `M` valid when `det f = 0`, with the
/// `f12 f21 (f11' - f22')` term squared.
pub fn m_closed_form(f: &Matrix<Scalar>, cfg: &FieldConfig) -> Result<Scalar> {
    closed_form(f, cfg, true)
}

/// The same expression with that term left unsquared; it does not match
/// `M` in general and is kept to document the difference.
pub fn m_closed_form_unsquared(f: &Matrix<Scalar>, cfg: &FieldConfig) -> Result<Scalar> {
    closed_form(f, cfg, false)
}

fn x_basis(m: usize) -> MonomialBasis {
    let xs = [(1, 1), (1, 2), (2, 1), (2, 2)]
        .iter()
        .map(|&(i, j)| RPoly::x(2, i, j))
        .collect();
    MonomialBasis::from_elements(1, 2, m, xs)
}

/// `M` recovered as `W_1 / det[X]^2` from the wronskian of the four `X_ij`;
/// uses neither A..H nor the 4x4 determinant.
pub fn m_from_wronskian(f: &Matrix<Scalar>, cfg: &FieldConfig) -> Result<Scalar> {
    let spec = DerivationSpec::specialized(f.clone())?;
    let w = wronskian_det_checked(&x_basis(cfg.m()), &spec, cfg)?.determinant;
    let q = w
        .exact_div(&det_x(2).pow(2))
        .ok_or_else(|| AlgebraError::DarbouxInconsistency("det[X]^2 does not divide W_1".into()))?;
    q.as_scalar()
        .ok_or_else(|| AlgebraError::DarbouxInconsistency("W_1 / det[X]^2 involves X".into()))
}

/// Whether the wronskian matrix of `(X_11, X_12, X_21, X_22)` equals the
/// product of the `(1, f, ABEF, CDGH)` matrix with the block matrix
/// `diag([[X_11, X_12], [X_21, X_22]], [[X_11, X_12], [X_21, X_22]])`.
pub fn ah_consistency(spec: &DerivationSpec, cfg: &FieldConfig) -> Result<bool> {
    let f = entries_of_spec(spec)?;
    let coeffs = m_matrix(&f, &abcdefgh_poly(&f, cfg));
    let w = wronskian_matrix(&x_basis(cfg.m()), spec, cfg)?;
    let x = |i, j| RPoly::x(2, i, j);
    let z = || RPoly::zero(2);
    let block = [
        [x(1, 1), x(1, 2), z(), z()],
        [x(2, 1), x(2, 2), z(), z()],
        [z(), z(), x(1, 1), x(1, 2)],
        [z(), z(), x(2, 1), x(2, 2)],
    ];
    for r in 0..4 {
        for c in 0..4 {
            let mut e = RPoly::zero(2);
            for l in 0..4 {
                e = e.add(&block[l][c].scale(&coeffs[(r, l)]));
            }
            if e != w[(r, c)] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Outcome of the `W_1 = eps M det[X]^2` check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct W1Factorization {
    pub holds: bool,
    /// `+1` or `-1`; `None` when both sides vanish or the identity fails.
    pub sign: Option<i8>,
    pub m: DiffPoly,
    pub w1: RPoly,
}

pub fn w1_factorization_check(spec: &DerivationSpec, cfg: &FieldConfig) -> Result<W1Factorization> {
    let m = m_det_spec(spec, cfg)?;
    let w1 = wronskian_det_checked(&x_basis(cfg.m()), spec, cfg)?.determinant;
    let rhs = det_x(2).pow(2).scale(&m);
    let (holds, sign) = if w1.is_zero() && rhs.is_zero() {
        (true, None)
    } else if w1 == rhs {
        (true, Some(1))
    } else if w1 == rhs.neg() {
        (true, Some(-1))
    } else {
        (false, None)
    };
    Ok(W1Factorization { holds, sign, m, w1 })
}

/// A linear Darboux polynomial `a X_12 + b X_21 + c X_22` and its cofactor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearDarboux {
    pub p: RPoly,
    pub q: Scalar,
    pub coefficients: [Scalar; 3],
}

/// Solves for `p = a X_12 + b X_21 + c X_22` with `D(p) = q p`.
///
/// Candidates are `q = f11 + f22` and `q = 0`, plus `q = f22 + f21 b12` when
/// `beta = Some((b12, b22))` is supplied. Without `beta` the `X_ij` are
/// independent and the system compares coefficients of all four; with it,
/// `X_11 = b12 X_12 + b21 X_21 + b22 X_22` is substituted first. Every
/// returned solution is confirmed by [`darboux_cofactor`].
pub fn find_linear_darboux(
    f: &Matrix<Scalar>,
    beta: Option<(Scalar, Scalar)>,
    cfg: &FieldConfig,
) -> Result<Vec<LinearDarboux>> {
    entries_of(f)?;
    if !det_f(f).is_zero() {
        return Err(AlgebraError::Precondition("det f must vanish".into()));
    }
    let v = |i, j| f[(i, j)].clone();
    let (f11, f12, f21, f22) = (v(0, 0), v(0, 1), v(1, 0), v(1, 1));
    let trace = f11.add(&f22);
    let mut candidates = vec![trace.clone()];
    if !trace.is_zero() {
        candidates.push(Scalar::zero());
    }
    if let Some((b12, _)) = &beta {
        let q5 = f22.add(&f21.mul(b12));
        if !candidates.contains(&q5) {
            candidates.push(q5);
        }
    }
    let spec = DerivationSpec::specialized(f.clone())?;
    let z = Scalar::zero;
    let mut out = Vec::new();
    for q in candidates {
        let system = match &beta {
            None => Matrix::from_rows(vec![
                vec![z(), f21.clone(), z()],
                vec![f11.sub(&q), z(), f21.clone()],
                vec![z(), f22.sub(&q), z()],
                vec![f12.clone(), z(), f22.sub(&q)],
            ]),
            Some((b12, b22)) => Matrix::from_rows(vec![
                vec![f11.sub(&q), f21.mul(b12), f21.clone()],
                vec![z(), f22.add(&f21.mul(b12)).sub(&q), z()],
                vec![f12.clone(), f21.mul(b22), f22.sub(&q)],
            ]),
        };
        for sol in system.nullspace() {
            let p = RPoly::x(2, 1, 2)
                .scale_scalar(&sol[0])
                .add(&RPoly::x(2, 2, 1).scale_scalar(&sol[1]))
                .add(&RPoly::x(2, 2, 2).scale_scalar(&sol[2]));
            let confirmed = darboux_cofactor(&p, &spec, cfg)?;
            if confirmed == Some(DiffPoly::constant(q.clone())) {
                out.push(LinearDarboux {
                    p,
                    q: q.clone(),
                    coefficients: [sol[0].clone(), sol[1].clone(), sol[2].clone()],
                });
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThetaRejection {
    NonZeroDeterminant,
    ZeroF22,
    NonConstantEntries,
    NotConstant,
}

impl fmt::Display for ThetaRejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ThetaRejection::NonZeroDeterminant => "det f is not zero",
            ThetaRejection::ZeroF22 => "f22 is zero",
            ThetaRejection::NonConstantEntries => "f has non-constant entries",
            ThetaRejection::NotConstant => "D(theta) is not zero",
        })
    }
}

/// `theta = numerator / denominator`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theta {
    pub numerator: RPoly,
    pub denominator: RPoly,
}

/// `theta = (f21/f22 X_12 + X_22) / det[X]`, checked to be a constant of
/// `D(X) = f X`.
pub fn theta_constant(
    f: &Matrix<Scalar>,
    cfg: &FieldConfig,
) -> Result<std::result::Result<Theta, ThetaRejection>> {
    entries_of(f)?;
    if !det_f(f).is_zero() {
        return Ok(Err(ThetaRejection::NonZeroDeterminant));
    }
    let f22 = &f[(1, 1)];
    if f22.is_zero() {
        return Ok(Err(ThetaRejection::ZeroF22));
    }
    if (0..2).any(|i| (0..2).any(|j| !f[(i, j)].derive(cfg).is_zero())) {
        return Ok(Err(ThetaRejection::NonConstantEntries));
    }
    let numerator = RPoly::x(2, 1, 2)
        .scale_scalar(&f[(1, 0)].div(f22)?)
        .add(&RPoly::x(2, 2, 2));
    let denominator = det_x(2);
    let spec = DerivationSpec::specialized(f.clone())?;
    if !is_constant(&numerator, &denominator, &spec, cfg)? {
        return Ok(Err(ThetaRejection::NotConstant));
    }
    Ok(Ok(Theta {
        numerator,
        denominator,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: [[Scalar; 2]; 2]) -> Matrix<Scalar> {
        Matrix::from_rows(rows.into_iter().map(|r| r.to_vec()).collect())
    }

    fn k(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn t() -> Scalar {
        Scalar::generator(0)
    }

    #[test]
    fn abcdefgh_examples() {
        let cfg = FieldConfig::rational();
        let zero = abcdefgh(&mat([[k(0), k(0)], [k(0), k(0)]]), &cfg).unwrap();
        assert!(zero.named().iter().all(|(_, v)| v.is_zero()));
        let ones = abcdefgh(&mat([[k(1), k(1)], [k(1), k(1)]]), &cfg).unwrap();
        assert_eq!(ones.a, k(2));
        assert_eq!(ones.f, k(2));
    }

    #[test]
    fn a_is_the_second_derivative_coefficient() {
        let cfg = FieldConfig::with_unit_derivatives(1);
        let f = mat([[t(), k(2)], [t().pow(2), k(-1)]]);
        let spec = DerivationSpec::specialized(f.clone()).unwrap();
        let ah = abcdefgh(&f, &cfg).unwrap();
        let x11pp = spec.derive_n(&RPoly::x(2, 1, 1), 2, &cfg);
        assert_eq!(
            x11pp.coefficient(&crate::matring::XMonomial::var(2, 1, 1)),
            DiffPoly::constant(ah.a)
        );
        assert_eq!(
            x11pp.coefficient(&crate::matring::XMonomial::var(2, 2, 1)),
            DiffPoly::constant(ah.b)
        );
    }

    #[test]
    fn m_examples() {
        let cfg = FieldConfig::with_unit_derivatives(1);
        for f in [
            mat([[k(0), k(0)], [k(0), k(0)]]),
            mat([[k(1), k(1)], [k(1), k(1)]]),
            mat([[k(3), k(-2)], [k(5), k(7)]]),
            mat([[k(1), k(2)], [k(0), k(0)]]),
        ] {
            assert!(m_det(&f, &cfg).unwrap().is_zero());
        }
        let f = mat([[t(), t()], [t().pow(2), t().pow(2)]]);
        assert_eq!(m_det(&f, &cfg).unwrap(), m_closed_form(&f, &cfg).unwrap());
        assert!(m_closed_form(&mat([[k(1), k(2)], [k(0), k(0)]]), &cfg)
            .unwrap()
            .is_zero());
        assert!(matches!(
            m_closed_form(&mat([[k(1), k(0)], [k(0), k(1)]]), &cfg),
            Err(AlgebraError::Precondition(_))
        ));
    }

    #[test]
    fn theta_examples() {
        let cfg = FieldConfig::rational();
        let th = theta_constant(&mat([[k(1), k(1)], [k(1), k(1)]]), &cfg)
            .unwrap()
            .unwrap();
        assert_eq!(th.numerator, RPoly::x(2, 1, 2).add(&RPoly::x(2, 2, 2)));
        assert_eq!(th.denominator, det_x(2));
        assert_eq!(
            theta_constant(&mat([[k(1), k(2)], [k(0), k(0)]]), &cfg).unwrap(),
            Err(ThetaRejection::ZeroF22)
        );
        assert_eq!(
            theta_constant(&mat([[k(1), k(0)], [k(0), k(1)]]), &cfg).unwrap(),
            Err(ThetaRejection::NonZeroDeterminant)
        );
    }

    #[test]
    fn linear_darboux_examples() {
        let cfg = FieldConfig::rational();
        let sols = find_linear_darboux(&mat([[k(1), k(1)], [k(1), k(1)]]), None, &cfg).unwrap();
        let two: Vec<_> = sols.iter().filter(|s| s.q == k(2)).collect();
        assert_eq!(two.len(), 1);
        let [a, b, c] = &two[0].coefficients;
        assert!(b.is_zero());
        assert_eq!(a.div(c).unwrap(), k(1));
        let zero = find_linear_darboux(&mat([[k(0), k(0)], [k(0), k(0)]]), None, &cfg).unwrap();
        assert_eq!(zero.len(), 3);
        assert!(zero.iter().all(|s| s.q.is_zero()));
    }
}
