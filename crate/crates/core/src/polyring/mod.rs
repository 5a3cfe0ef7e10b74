//! Exact rationals, sparse polynomials in `a_l`, `b_l`, and truncated
//! power series over those polynomials.

mod poly;
pub mod rational;
mod series;

pub use poly::{CoefJson, Monomial, Poly, PolyJson, TermJson, VarId, VarKind};
pub use rational::Rational;
pub use series::{egf_coefficient, rational_coeffs, Series};

/// `p + q`, `p * q`, or `c * p`.
#[derive(Debug, Clone)]
pub enum PolyOp {
    Add,
    Mul,
    Scale(Rational),
}

pub fn poly_arith(p: &Poly, q: &Poly, op: PolyOp) -> Poly {
    match op {
        PolyOp::Add => p + q,
        PolyOp::Mul => p * q,
        PolyOp::Scale(c) => p.scale(&c),
    }
}
