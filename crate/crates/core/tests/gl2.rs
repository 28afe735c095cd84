use std::time::Instant;

use darboux_core::{
    abcdefgh, ah_consistency, det_x, expansion_discrepancies, find_linear_darboux, is_constant,
    m_closed_form, m_closed_form_unsquared, m_det, m_from_wronskian, theta_constant,
    w1_factorization_check, DerivationSpec, DiffPoly, FieldConfig, Matrix, RPoly, Scalar,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn k(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn t() -> Scalar {
    Scalar::generator(0)
}

fn mat(rows: [[Scalar; 2]; 2]) -> Matrix<Scalar> {
    Matrix::from_rows(rows.into_iter().map(|r| r.to_vec()).collect())
}

fn small_poly(rng: &mut ChaCha8Rng) -> Scalar {
    let mut p = Scalar::zero();
    for e in 0..=rng.gen_range(0..=2u32) {
        p = p.add(&t().pow(e).scale_int(rng.gen_range(-3..=3)));
    }
    if p.is_zero() {
        Scalar::one()
    } else {
        p
    }
}

fn rank_one(rng: &mut ChaCha8Rng) -> Matrix<Scalar> {
    let (g, w, h1, h2) = (
        small_poly(rng),
        small_poly(rng),
        small_poly(rng),
        small_poly(rng),
    );
    mat([[g.mul(&h1), g.mul(&h2)], [w.mul(&h1), w.mul(&h2)]])
}

#[test]
fn generic_factorization_has_nonzero_m() {
    let cfg = FieldConfig::rational();
    let start = Instant::now();
    let r = w1_factorization_check(&DerivationSpec::generic(2), &cfg).unwrap();
    assert!(r.holds);
    assert!(r.sign.is_some());
    assert!(!r.m.is_zero());
    assert!(start.elapsed().as_secs() < 60);
}

#[test]
fn specialized_factorizations() {
    let cfg = FieldConfig::with_unit_derivatives(1);
    let ones = mat([[k(1), k(1)], [k(1), k(1)]]);
    let r = w1_factorization_check(&DerivationSpec::specialized(ones).unwrap(), &cfg).unwrap();
    assert!(r.holds && r.w1.is_zero() && r.m.is_zero());

    let f = mat([[t(), t()], [t().pow(2), t().pow(2)]]);
    let r = w1_factorization_check(&DerivationSpec::specialized(f.clone()).unwrap(), &cfg).unwrap();
    assert!(r.holds && r.w1.is_zero() && m_det(&f, &cfg).unwrap().is_zero());

    let f = mat([[t(), k(1)], [t().pow(2), t()]]);
    let r = w1_factorization_check(&DerivationSpec::specialized(f.clone()).unwrap(), &cfg).unwrap();
    assert!(r.holds && !r.w1.is_zero());
    assert_eq!(r.m, DiffPoly::constant(m_det(&f, &cfg).unwrap()));
}

#[test]
fn ah_matches_the_wronskian_matrix() {
    let cfg = FieldConfig::with_unit_derivatives(1);
    assert!(ah_consistency(&DerivationSpec::generic(2), &FieldConfig::rational()).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..5 {
        let f = Matrix::from_fn(2, 2, |_, _| small_poly(&mut rng));
        assert!(ah_consistency(&DerivationSpec::specialized(f).unwrap(), &cfg).unwrap());
    }
}

#[test]
fn closed_form_matches_determinant_on_rank_one_families() {
    let cfg = FieldConfig::with_unit_derivatives(1);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let f = rank_one(&mut rng);
        let m = m_det(&f, &cfg).unwrap();
        assert_eq!(m_closed_form(&f, &cfg).unwrap(), m, "f = {f:?}");
        assert_eq!(m_from_wronskian(&f, &cfg).unwrap(), m);
    }
}

#[test]
fn unsquared_closed_form_is_off() {
    let cfg = FieldConfig::with_unit_derivatives(1);
    let f = mat([[t(), t()], [t().pow(2), t().pow(2)]]);
    assert_ne!(
        m_closed_form_unsquared(&f, &cfg).unwrap(),
        m_det(&f, &cfg).unwrap()
    );
}

#[test]
fn expanded_c_and_d_disagree_with_their_recursions() {
    let cfg = FieldConfig::with_unit_derivatives(1);
    let f = mat([[t(), k(2)], [t().pow(2), k(-1)]]);
    let names: Vec<char> = expansion_discrepancies(&f, &cfg)
        .unwrap()
        .iter()
        .map(|d| d.name)
        .collect();
    assert_eq!(names, vec!['C', 'D']);
    let ah = abcdefgh(&f, &cfg).unwrap();
    let spec = DerivationSpec::specialized(f).unwrap();
    let x11ppp = spec.derive_n(&RPoly::x(2, 1, 1), 3, &cfg);
    let c = x11ppp.coefficient(&darboux_core::XMonomial::var(2, 1, 1));
    assert_eq!(c, DiffPoly::constant(ah.c));
}

#[test]
fn constant_rank_one_matrices_have_zero_m() {
    let cfg = FieldConfig::rational();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..10 {
        let v: Vec<Scalar> = (0..4).map(|_| k(rng.gen_range(-4..=4))).collect();
        let f = mat([
            [v[0].mul(&v[2]), v[0].mul(&v[3])],
            [v[1].mul(&v[2]), v[1].mul(&v[3])],
        ]);
        assert!(m_det(&f, &cfg).unwrap().is_zero());
        assert!(m_closed_form(&f, &cfg).unwrap().is_zero());
    }
}

#[test]
fn linear_darboux_solutions_are_verified() {
    let cfg = FieldConfig::rational();
    for f in [
        mat([[k(1), k(1)], [k(1), k(1)]]),
        mat([[k(2), k(-4)], [k(1), k(-2)]]),
        mat([[k(3), k(6)], [k(1), k(2)]]),
    ] {
        let spec = DerivationSpec::specialized(f.clone()).unwrap();
        for s in find_linear_darboux(&f, None, &cfg).unwrap() {
            assert_eq!(spec.derive(&s.p, &cfg), s.p.scale_scalar(&s.q));
        }
    }
}

#[test]
fn theta_is_a_constant_but_not_a_det_power() {
    let cfg = FieldConfig::rational();
    let f = mat([[k(1), k(1)], [k(1), k(1)]]);
    let th = theta_constant(&f, &cfg).unwrap().unwrap();
    let spec = DerivationSpec::specialized(f).unwrap();
    assert!(is_constant(&th.numerator, &th.denominator, &spec, &cfg).unwrap());
    assert!(!is_constant(
        &th.numerator,
        &th.denominator,
        &DerivationSpec::generic(2),
        &cfg
    )
    .unwrap());
    assert_eq!(th.numerator.homogeneous_degree(), Some(1));
    assert!(th.numerator.exact_div(&det_x(2)).is_none());
}
