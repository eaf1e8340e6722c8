//! Fixed inputs shared by the benchmarks in `benches/`.

use tateres::random::{cube_element, exponent_matrix, prng};
use tateres::{CubeElement, LatticeOperator, LaurentPoly, Q};

/// Monomials `t^{c_i}` with a balanced random exponent matrix.
pub fn monomial_tuple(n: usize, seed: u64) -> Vec<LaurentPoly> {
    let c = exponent_matrix(&mut prng(seed), n, 4, true);
    c.into_iter().map(|r| LaurentPoly::monomial(r, Q::from_integer(1.into()))).collect()
}

pub fn operator_tuple(n: usize, seed: u64) -> Vec<LatticeOperator> {
    monomial_tuple(n, seed).iter().map(LatticeOperator::mul_scalar).collect()
}

pub fn cube_fixture(n: usize, degree: usize, seed: u64) -> CubeElement {
    cube_element(&mut prng(seed), n, 1, degree)
}
