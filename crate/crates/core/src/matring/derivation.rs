//! Matrix derivations `D(X) = A X` on `R`, generic or specialized.

use std::collections::HashMap;

use super::{RPoly, XMonomial};
use crate::diffring::{DiffPoly, DiffVar};
use crate::error::{AlgebraError, Result};
use crate::linalg::Matrix;
use crate::scalar::{FieldConfig, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DerivationKind {
    /// `A = sum_st Y_st M_st` with symbolic `Y`.
    Generic,
    /// `A = f` with entries in the base field.
    Specialized,
}

/// A derivation on `R` given by `D(X_ij) = sum_l A_il X_lj`.
///
/// For the generic derivation `A_il = sum_st Y_st (M_st)_il`, where the
/// `M_st` form a basis of `n x n` matrices (the elementary basis by
/// default, giving `A_il = Y_il`). A specialized derivation has `A = f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationSpec {
    n: usize,
    kind: DerivationKind,
    basis: Option<Vec<Matrix<Scalar>>>,
    f: Option<Matrix<Scalar>>,
    action: Vec<DiffPoly>,
}

impl DerivationSpec {
    /// The generic derivation `D(X_ij) = sum_l Y_il X_lj`.
    pub fn generic(n: usize) -> Self {
        let mut action = Vec::with_capacity(n * n);
        for i in 1..=n {
            for l in 1..=n {
                action.push(DiffPoly::y(i, l));
            }
        }
        DerivationSpec {
            n,
            kind: DerivationKind::Generic,
            basis: None,
            f: None,
            action,
        }
    }

    /// `D(X_ij) = sum_l f_il X_lj`.
    pub fn specialized(f: Matrix<Scalar>) -> Result<Self> {
        if !f.is_square() {
            return Err(AlgebraError::DimensionMismatch {
                expected: f.rows(),
                found: f.cols(),
            });
        }
        let n = f.rows();
        let action = (0..n * n)
            .map(|idx| DiffPoly::constant(f[(idx / n, idx % n)].clone()))
            .collect();
        Ok(DerivationSpec {
            n,
            kind: DerivationKind::Specialized,
            basis: None,
            f: Some(f),
            action,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> DerivationKind {
        self.kind
    }

    pub fn is_generic(&self) -> bool {
        self.kind == DerivationKind::Generic
    }

    /// Generic with the elementary basis.
    pub fn is_elementary(&self) -> bool {
        self.is_generic() && self.basis.is_none()
    }

    pub fn basis(&self) -> Option<&[Matrix<Scalar>]> {
        self.basis.as_deref()
    }

    pub fn f(&self) -> Option<&Matrix<Scalar>> {
        self.f.as_ref()
    }

    /// `A_il` (1-based).
    pub fn action(&self, i: usize, l: usize) -> &DiffPoly {
        &self.action[(i - 1) * self.n + (l - 1)]
    }

    /// Sum of the diagonal of `A`: the cofactor of `det[X]`, up to the
    /// base-field part.
    pub fn trace(&self) -> DiffPoly {
        let mut t = DiffPoly::zero();
        for i in 1..=self.n {
            t.add_assign(self.action(i, i));
        }
        t
    }

    fn check(&self, n: usize) {
        assert_eq!(self.n, n, "derivation and polynomial dimensions differ");
    }

    /// Derivative of a power product:
    /// `(sum_ij a_ij A_ii) X^a + sum_ij sum_{l != i} a_ij A_il X^a X_lj / X_ij`.
    pub fn derive_monomial(&self, alpha: &XMonomial) -> RPoly {
        self.check(alpha.n());
        let n = self.n;
        let mut out = RPoly::zero(n);
        let mut diag = DiffPoly::zero();
        for i in 1..=n {
            for j in 1..=n {
                let a = alpha.exp(i, j);
                if a == 0 {
                    continue;
                }
                let scale = Scalar::from_int(i64::from(a));
                diag.add_assign(&self.action(i, i).scale(&scale));
                for l in (1..=n).filter(|&l| l != i) {
                    let coef = self.action(i, l);
                    if coef.is_zero() {
                        continue;
                    }
                    let m = alpha
                        .shifted(i, j, -1)
                        .and_then(|m| m.shifted(l, j, 1))
                        .expect("exponent of X_ij is positive");
                    out.add_term(m, coef.scale(&scale));
                }
            }
        }
        out.add_term(alpha.clone(), diag);
        out
    }

    /// Leibniz extension: coefficients through `F{Y}`, monomials through
    /// [`derive_monomial`](Self::derive_monomial). Preserves X-degree.
    pub fn derive(&self, p: &RPoly, cfg: &FieldConfig) -> RPoly {
        self.check(p.n());
        let mut out = RPoly::zero(self.n);
        for (m, c) in p.terms() {
            out.add_term(m.clone(), c.derive(cfg));
            if m.is_one() {
                continue;
            }
            for (dm, dc) in self.derive_monomial(m).terms() {
                out.add_term(dm.clone(), dc.mul(c));
            }
        }
        out
    }

    /// k-th derivative.
    pub fn derive_n(&self, p: &RPoly, k: usize, cfg: &FieldConfig) -> RPoly {
        let mut r = p.clone();
        for _ in 0..k {
            r = self.derive(&r, cfg);
        }
        r
    }

    /// Linear substitution rewriting a polynomial in this spec's `Y` labels
    /// into the elementary labels `Z_il = A_il` (constant bases only):
    /// `Y_{st,k} -> sum_il (C^-1)_{(il),(st)} Z_{il,k}`.
    pub fn relabel_to_elementary(&self, q: &DiffPoly) -> Result<DiffPoly> {
        let Some(basis) = &self.basis else {
            return Ok(q.clone());
        };
        let n = self.n;
        let nn = n * n;
        // row (st) of C holds the flattened M_st, so A_il = sum_st C[st][il] Y_st
        let c = Matrix::from_fn(nn, nn, |st, il| basis[st][(il / n, il % n)].clone());
        if c.rows() > 0 && !(0..nn).all(|r| (0..nn).all(|col| c[(r, col)].is_rational())) {
            return Err(AlgebraError::Precondition(
                "relabeling needs a basis with constant entries".into(),
            ));
        }
        let inv = c.inverse().ok_or(AlgebraError::DependentBasis {
            rank: c.rank(),
            expected: nn,
        })?;
        Ok(q.substitute(|v| {
            let st = (v.i as usize - 1) * n + (v.j as usize - 1);
            let mut acc = DiffPoly::zero();
            for il in 0..nn {
                let coef = &inv[(il, st)];
                if !coef.is_zero() {
                    let z = DiffVar::new(il / n + 1, il % n + 1, v.k as usize);
                    acc.add_assign(&DiffPoly::var(z).scale(coef));
                }
            }
            acc
        }))
    }
}

/// A generic derivation `D(X) = sum_st Y_st M_st X` from `n^2` basis
/// matrices, listed in the order `(1,1), (1,2), ..., (n,n)` of their labels.
pub fn derivation_from_basis(matrices: Vec<Matrix<Scalar>>) -> Result<DerivationSpec> {
    let count = matrices.len();
    let n = (count as f64).sqrt().round() as usize;
    if n == 0 || n * n != count {
        return Err(AlgebraError::Precondition(format!(
            "a basis needs n^2 matrices, got {}",
            count
        )));
    }
    for m in &matrices {
        if m.rows() != n || m.cols() != n {
            return Err(AlgebraError::DimensionMismatch {
                expected: n,
                found: m.rows().max(m.cols()),
            });
        }
    }
    let nn = n * n;
    let flat = Matrix::from_fn(nn, nn, |st, il| matrices[st][(il / n, il % n)].clone());
    let rank = flat.rank();
    if rank < nn {
        return Err(AlgebraError::DependentBasis { rank, expected: nn });
    }
    let mut action = vec![DiffPoly::zero(); nn];
    for (st, m) in matrices.iter().enumerate() {
        let y = DiffPoly::y(st / n + 1, st % n + 1);
        for (il, slot) in action.iter_mut().enumerate() {
            let c = &m[(il / n, il % n)];
            if !c.is_zero() {
                slot.add_assign(&y.scale(c));
            }
        }
    }
    let elementary = (0..nn).all(|st| {
        (0..nn).all(|il| {
            let c = &matrices[st][(il / n, il % n)];
            if st == il {
                c.is_one()
            } else {
                c.is_zero()
            }
        })
    });
    Ok(DerivationSpec {
        n,
        kind: DerivationKind::Generic,
        basis: if elementary { None } else { Some(matrices) },
        f: None,
        action,
    })
}

/// Coefficient of `X^alpha` in `D(p)` from the closed form
/// `p'_a + p_a sum_ij a_ij A_ii + sum_ij (a_ij + 1) sum_{l != i} p_{a + e_ij - e_lj} A_il`,
/// without differentiating `p`.
pub fn coeff_in_derivative(
    p: &RPoly,
    alpha: &XMonomial,
    spec: &DerivationSpec,
    cfg: &FieldConfig,
) -> DiffPoly {
    spec.check(p.n());
    let n = spec.n;
    let p_alpha = p.coefficient(alpha);
    let mut out = p_alpha.derive(cfg);
    if !p_alpha.is_zero() {
        let mut diag = DiffPoly::zero();
        for i in 1..=n {
            for j in 1..=n {
                let a = alpha.exp(i, j);
                if a > 0 {
                    diag.add_assign(&spec.action(i, i).scale(&Scalar::from_int(i64::from(a))));
                }
            }
        }
        out.add_assign(&p_alpha.mul(&diag));
    }
    for i in 1..=n {
        for j in 1..=n {
            let weight = Scalar::from_int(i64::from(alpha.exp(i, j)) + 1);
            for l in (1..=n).filter(|&l| l != i) {
                let Some(beta) = alpha.shifted(l, j, -1).and_then(|m| m.shifted(i, j, 1)) else {
                    continue;
                };
                let pb = p.coefficient(&beta);
                if pb.is_zero() || spec.action(i, l).is_zero() {
                    continue;
                }
                out.add_assign(&pb.mul(spec.action(i, l)).scale(&weight));
            }
        }
    }
    out
}

/// Substitutes `Y_{ij,k} -> f_ij^(k)`; the result is Y-free.
pub fn specialize(p: &RPoly, f: &Matrix<Scalar>, cfg: &FieldConfig) -> RPoly {
    let mut towers: HashMap<(u16, u16), Vec<Scalar>> = HashMap::new();
    let mut value = |v: DiffVar| {
        let tower = towers
            .entry((v.i, v.j))
            .or_insert_with(|| vec![f[(v.i as usize - 1, v.j as usize - 1)].clone()]);
        while tower.len() <= v.k as usize {
            let next = tower.last().unwrap().derive(cfg);
            tower.push(next);
        }
        tower[v.k as usize].clone()
    };
    let mut out = RPoly::zero(p.n());
    for (m, c) in p.terms() {
        let s = c.evaluate(&mut value);
        out.add_term(m.clone(), DiffPoly::constant(s));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matring::det_x;

    fn x(i: usize, j: usize) -> RPoly {
        RPoly::x(2, i, j)
    }

    fn ones() -> Matrix<Scalar> {
        Matrix::from_fn(2, 2, |_, _| Scalar::one())
    }

    fn ycoef(i: usize, j: usize) -> RPoly {
        RPoly::constant(2, DiffPoly::y(i, j))
    }

    /// D(X_ij) straight from the defining rule.
    fn rule(spec: &DerivationSpec, i: usize, j: usize) -> RPoly {
        let mut r = RPoly::zero(2);
        for l in 1..=2 {
            r = r.add(&x(l, j).scale(spec.action(i, l)));
        }
        r
    }

    #[test]
    fn monomial_derivative_examples() {
        let g = DerivationSpec::generic(2);
        let d = g.derive_monomial(&XMonomial::var(2, 2, 1));
        assert_eq!(d, ycoef(2, 1).mul(&x(1, 1)).add(&ycoef(2, 2).mul(&x(2, 1))));
        assert!(g.derive_monomial(&XMonomial::one(2)).is_zero());
        let s = DerivationSpec::specialized(ones()).unwrap();
        assert_eq!(
            s.derive_monomial(&XMonomial::var(2, 1, 2)),
            x(1, 2).add(&x(2, 2))
        );
    }

    #[test]
    fn monomial_derivative_matches_leibniz_oracle() {
        let g = DerivationSpec::generic(2);
        let cfg = FieldConfig::rational();
        // X11^2 X12 X22: Leibniz over the factors using the defining rule
        let alpha = XMonomial::new(2, vec![2, 1, 0, 1]).unwrap();
        let factors = [(1, 1), (1, 1), (1, 2), (2, 2)];
        let mut expected = RPoly::zero(2);
        for skip in 0..factors.len() {
            let mut term = rule(&g, factors[skip].0, factors[skip].1);
            for (k, &(i, j)) in factors.iter().enumerate() {
                if k != skip {
                    term = term.mul(&x(i, j));
                }
            }
            expected = expected.add(&term);
        }
        assert_eq!(g.derive_monomial(&alpha), expected);
        assert_eq!(
            g.derive(&RPoly::term(alpha, DiffPoly::one()), &cfg),
            expected
        );
    }

    #[test]
    fn determinant_derivative() {
        let g = DerivationSpec::generic(2);
        let cfg = FieldConfig::rational();
        let d = det_x(2);
        let trace = RPoly::constant(2, DiffPoly::y(1, 1).add(&DiffPoly::y(2, 2)));
        assert_eq!(g.derive(&d, &cfg), trace.mul(&d));
        assert!(g.derive(&RPoly::one(2), &cfg).is_zero());
        let s = DerivationSpec::specialized(ones()).unwrap();
        assert!(s.derive(&x(1, 1).sub(&x(2, 1)), &cfg).is_zero());
    }

    #[test]
    fn closed_form_coefficient_examples() {
        let g = DerivationSpec::generic(2);
        let cfg = FieldConfig::rational();
        let c = coeff_in_derivative(&x(1, 1), &XMonomial::var(2, 1, 1), &g, &cfg);
        assert_eq!(c, DiffPoly::y(1, 1));
        let a = XMonomial::new(2, vec![1, 0, 0, 1]).unwrap();
        let c = coeff_in_derivative(&det_x(2), &a, &g, &cfg);
        assert_eq!(c, DiffPoly::y(1, 1).add(&DiffPoly::y(2, 2)));
        assert!(coeff_in_derivative(&RPoly::zero(2), &a, &g, &cfg).is_zero());
    }

    #[test]
    fn specialization_examples() {
        let cfg = FieldConfig::with_unit_derivatives(1);
        let t1 = Scalar::generator(0);
        let f = Matrix::from_rows(vec![
            vec![t1.clone(), Scalar::zero()],
            vec![Scalar::zero(), Scalar::zero()],
        ]);
        let p = ycoef(1, 1).mul(&x(1, 1));
        assert_eq!(specialize(&p, &f, &cfg), x(1, 1).scale_scalar(&t1));
        let p = RPoly::constant(2, DiffPoly::var(DiffVar::new(1, 1, 1))).mul(&x(1, 1));
        assert_eq!(specialize(&p, &f, &cfg), x(1, 1));
        assert_eq!(specialize(&det_x(2), &f, &cfg), det_x(2));
    }

    fn mat(rows: [[i64; 2]; 2]) -> Matrix<Scalar> {
        Matrix::from_fn(2, 2, |r, c| Scalar::from_int(rows[r][c]))
    }

    #[test]
    fn basis_derivations() {
        let elementary: Vec<Matrix<Scalar>> = (0..4)
            .map(|st| Matrix::from_fn(2, 2, |r, c| Scalar::from_int((r * 2 + c == st) as i64)))
            .collect();
        assert_eq!(
            derivation_from_basis(elementary).unwrap(),
            DerivationSpec::generic(2)
        );

        let basis = vec![
            mat([[1, 0], [0, 1]]),
            mat([[1, 0], [0, -1]]),
            mat([[0, 1], [0, 0]]),
            mat([[0, 0], [1, 0]]),
        ];
        let spec = derivation_from_basis(basis).unwrap();
        let cfg = FieldConfig::rational();
        // labels Y1..Y4 are Y11, Y12, Y21, Y22
        let expected = ycoef(1, 1)
            .add(&ycoef(1, 2))
            .mul(&x(1, 1))
            .add(&ycoef(2, 1).mul(&x(2, 1)));
        assert_eq!(spec.derive(&x(1, 1), &cfg), expected);

        let dup = vec![
            mat([[1, 0], [0, 0]]),
            mat([[1, 0], [0, 0]]),
            mat([[0, 1], [0, 0]]),
            mat([[0, 0], [1, 0]]),
        ];
        assert!(matches!(
            derivation_from_basis(dup),
            Err(AlgebraError::DependentBasis {
                rank: 3,
                expected: 4
            })
        ));
    }

    #[test]
    fn relabeling_recovers_elementary_cofactor() {
        let basis = vec![
            mat([[1, 0], [0, 1]]),
            mat([[1, 0], [0, -1]]),
            mat([[0, 1], [0, 0]]),
            mat([[0, 0], [1, 0]]),
        ];
        let spec = derivation_from_basis(basis).unwrap();
        // cofactor of det under this basis: trace(A) = 2 Y11
        assert_eq!(spec.trace(), DiffPoly::y(1, 1).scale(&Scalar::from_int(2)));
        let relabeled = spec.relabel_to_elementary(&spec.trace()).unwrap();
        assert_eq!(relabeled, DiffPoly::y(1, 1).add(&DiffPoly::y(2, 2)));
    }
}
