use super::{RPoly, XMonomial};
use crate::diffring::DiffPoly;
use crate::error::{AlgebraError, Result};

/// The maximal power product under the term order, with its coefficient.
pub fn leading_power_product(p: &RPoly) -> Result<(XMonomial, DiffPoly)> {
    p.terms()
        .next_back()
        .map(|(m, c)| (m.clone(), c.clone()))
        .ok_or(AlgebraError::ZeroPolynomial)
}

/// Multivariable division of `p` by a single divisor `g` in `F[X]`.
///
/// Returns `(q, r)` with `p = q g + r` where no term of `r` is divisible by
/// `lp(g)`.
pub fn divide_reduce(p: &RPoly, g: &RPoly) -> Result<(RPoly, RPoly)> {
    if g.is_zero() {
        return Err(AlgebraError::DivisionByZero);
    }
    if p.n() != g.n() {
        return Err(AlgebraError::DimensionMismatch {
            expected: g.n(),
            found: p.n(),
        });
    }
    if !p.is_y_free() || !g.is_y_free() {
        return Err(AlgebraError::Precondition(
            "division is defined on Y-free polynomials".into(),
        ));
    }
    let (lg, lcg) = leading_power_product(g)?;
    let lcg_inv = lcg.as_scalar().expect("Y-free coefficient").recip()?;
    let n = p.n();
    let mut rest = p.clone();
    let mut quot = RPoly::zero(n);
    let mut rem = RPoly::zero(n);
    loop {
        let Some((lm, lc)) = rest
            .terms()
            .next_back()
            .map(|(m, c)| (m.clone(), c.clone()))
        else {
            break;
        };
        match lm.checked_div(&lg) {
            Some(shift) => {
                let c = lc.scale(&lcg_inv);
                rest = rest.sub(&g.mul_monomial(&shift, &c));
                quot.add_term(shift, c);
            }
            None => {
                rest = rest.sub(&RPoly::term(lm.clone(), lc.clone()));
                rem.add_term(lm, lc);
            }
        }
    }
    Ok((quot, rem))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matring::det_x;
    use crate::scalar::Scalar;

    #[test]
    fn leading_power_products() {
        let (m, c) = leading_power_product(&det_x(2)).unwrap();
        assert_eq!(m, XMonomial::new(2, vec![0, 1, 1, 0]).unwrap());
        assert_eq!(c, DiffPoly::constant(Scalar::from_int(-1)));
        let p = RPoly::x(2, 1, 1).add(&RPoly::x(2, 2, 2));
        assert_eq!(
            leading_power_product(&p).unwrap().0,
            XMonomial::var(2, 1, 1)
        );
        let five = RPoly::scalar(2, Scalar::from_int(5));
        assert_eq!(
            leading_power_product(&five).unwrap(),
            (XMonomial::one(2), DiffPoly::constant(Scalar::from_int(5)))
        );
        assert_eq!(
            leading_power_product(&RPoly::zero(2)),
            Err(AlgebraError::ZeroPolynomial)
        );
    }

    #[test]
    fn division_examples() {
        let d = det_x(2);
        let x11 = RPoly::x(2, 1, 1);
        let p = d.mul(&d).add(&x11);
        assert_eq!(divide_reduce(&p, &d).unwrap(), (d.clone(), x11.clone()));
        assert_eq!(
            divide_reduce(&d, &d).unwrap(),
            (RPoly::one(2), RPoly::zero(2))
        );
        assert_eq!(
            divide_reduce(&x11, &d).unwrap(),
            (RPoly::zero(2), x11.clone())
        );
        assert_eq!(
            divide_reduce(&x11, &RPoly::zero(2)),
            Err(AlgebraError::DivisionByZero)
        );
        let y = RPoly::constant(2, DiffPoly::y(1, 1));
        assert!(matches!(
            divide_reduce(&y, &d),
            Err(AlgebraError::Precondition(_))
        ));
    }
}
