//! Inputs shared by the benchmarks.

use darboux_core::{Matrix, Scalar};

/// `[[0, 1], [t1, 0]]`, the running specialization.
pub fn companion() -> Matrix<Scalar> {
    Matrix::from_rows(vec![
        vec![Scalar::zero(), Scalar::one()],
        vec![Scalar::generator(0), Scalar::zero()],
    ])
}

/// A dense `n x n` matrix of low-degree polynomials in `t1`.
pub fn dense(n: usize) -> Matrix<Scalar> {
    let t = Scalar::generator(0);
    Matrix::from_fn(n, n, |r, c| {
        let k = (3 * r + 5 * c + 1) % 7;
        Scalar::from_int(k as i64 - 3).add(&t.pow(((r + c) % 3) as u32))
    })
}

/// A rank-one matrix `u v^T` with polynomial entries.
pub fn rank_one() -> Matrix<Scalar> {
    let t = Scalar::generator(0);
    let u = [Scalar::one(), t.clone()];
    let v = [t.clone(), t.pow(2).add(&Scalar::one())];
    Matrix::from_fn(2, 2, |r, c| u[r].mul(&v[c]))
}
