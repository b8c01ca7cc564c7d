//! Ideal matrices over Z: for a monic phi(x) = x^n - a_{n-1}x^{n-1} - ...
//! - a_0 with a_0 != 0 and companion matrix H, the ideal matrix of a
//! vector f is H*(f) = [f, Hf, ..., H^{n-1}f] = f_0 I + f_1 H + ... +
//! f_{n-1}H^{n-1}. These generalize circulant matrices and implement the
//! star product f*g = coefficients of f(x)g(x) mod phi(x).

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::ZMat;
use crate::poly::ZPoly;

/// The integer ring Z[x]/<phi>: defining vector a, phi itself, and the
/// companion matrix H with characteristic polynomial phi.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPhiContext {
    n: usize,
    a: Vec<BigInt>,
    phi: ZPoly,
    h: ZMat,
}

impl IntPhiContext {
    pub fn new(a: Vec<BigInt>) -> Result<IntPhiContext> {
        let n = a.len();
        if n == 0 {
            return Err(Error::InvalidArgument("defining vector must be nonempty".into()));
        }
        if a[0].is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let mut phi_coeffs: Vec<BigInt> = a.iter().map(|x| -x).collect();
        phi_coeffs.push(BigInt::one());
        let phi = ZPoly::from_coeffs(phi_coeffs);

        let mut h = ZMat::zero(n, n);
        for i in 1..n {
            *h.entry_mut(i, i - 1) = BigInt::one();
        }
        for i in 0..n {
            *h.entry_mut(i, n - 1) = a[i].clone();
        }

        let ctx = IntPhiContext { n, a, phi, h };
        debug_assert!(ctx.cayley_hamilton_holds());
        Ok(ctx)
    }

    pub fn from_i64(a: &[i64]) -> Result<IntPhiContext> {
        IntPhiContext::new(a.iter().map(|&v| BigInt::from(v)).collect())
    }

    /// H^n = a_0 I + a_1 H + ... + a_{n-1}H^{n-1}, exactly.
    fn cayley_hamilton_holds(&self) -> bool {
        let mut lhs = ZMat::identity(self.n);
        for _ in 0..self.n {
            lhs = lhs.mul(&self.h).unwrap();
        }
        let mut rhs = ZMat::zero(self.n, self.n);
        let mut power = ZMat::identity(self.n);
        for coef in &self.a {
            rhs = rhs.add(&power.scale(coef)).unwrap();
            power = power.mul(&self.h).unwrap();
        }
        lhs == rhs
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> &[BigInt] {
        &self.a
    }

    pub fn phi(&self) -> &ZPoly {
        &self.phi
    }

    pub fn companion(&self) -> &ZMat {
        &self.h
    }

    /// The ideal matrix H*(f), constructed both as iterated columns
    /// [f, Hf, ..., H^{n-1}f] and as the power sum sum f_i H^i; the two
    /// must agree entrywise.
    pub fn ideal_matrix(&self, f: &[BigInt]) -> Result<IdealMatrix> {
        if f.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: f.len() });
        }
        let mut by_columns = ZMat::zero(self.n, self.n);
        let mut col = f.to_vec();
        for j in 0..self.n {
            for i in 0..self.n {
                *by_columns.entry_mut(i, j) = col[i].clone();
            }
            if j + 1 < self.n {
                col = self.h.mul_vec(&col)?;
            }
        }

        let mut by_powers = ZMat::zero(self.n, self.n);
        let mut power = ZMat::identity(self.n);
        for coef in f {
            by_powers = by_powers.add(&power.scale(coef))?;
            power = power.mul(&self.h)?;
        }

        if by_columns != by_powers {
            return Err(Error::InternalMismatch(
                "column and power-sum constructions disagree".into(),
            ));
        }
        Ok(IdealMatrix { ctx: self.clone(), f: f.to_vec(), m: by_columns })
    }

    /// Star product f*g = H*(f)·g, the coefficient vector of
    /// f(x)g(x) mod phi(x).
    pub fn star(&self, f: &[BigInt], g: &[BigInt]) -> Result<Vec<BigInt>> {
        if g.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: g.len() });
        }
        self.ideal_matrix(f)?.matrix().mul_vec(g)
    }

    /// det H*(f); equals the resultant of phi and f.
    pub fn ideal_det(&self, f: &[BigInt]) -> Result<BigInt> {
        self.ideal_matrix(f)?.matrix().det()
    }

    /// Inverse of H*(f) modulo q (q may be composite; the determinant must
    /// be a unit mod q).
    pub fn ideal_inverse_mod(&self, f: &[BigInt], q: u64) -> Result<ZMat> {
        self.ideal_matrix(f)?.matrix().inverse_mod(q)
    }

    /// Vector of length n as a polynomial.
    pub fn poly_of(&self, f: &[BigInt]) -> Result<ZPoly> {
        if f.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: f.len() });
        }
        Ok(ZPoly::from_coeffs(f.to_vec()))
    }

    /// Polynomial of degree < n as a vector of length n.
    pub fn vector_of(&self, p: &ZPoly) -> Result<Vec<BigInt>> {
        let mut v = p.coeffs().to_vec();
        if v.len() > self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: v.len() });
        }
        v.resize(self.n, BigInt::zero());
        Ok(v)
    }

    /// f(x)·g(x) mod phi(x) computed purely by polynomial arithmetic;
    /// independent of the matrix route, for cross-checking the star
    /// product.
    pub fn poly_mulmod(&self, f: &[BigInt], g: &[BigInt]) -> Result<Vec<BigInt>> {
        let product = self.poly_of(f)?.mul(&self.poly_of(g)?);
        let (_, rem) = product.divmod(&self.phi)?;
        self.vector_of(&rem)
    }
}

/// H*(f) together with its generating vector and context.
#[derive(Clone, Debug)]
pub struct IdealMatrix {
    ctx: IntPhiContext,
    f: Vec<BigInt>,
    m: ZMat,
}

impl IdealMatrix {
    pub fn context(&self) -> &IntPhiContext {
        &self.ctx
    }

    pub fn vector(&self) -> &[BigInt] {
        &self.f
    }

    pub fn matrix(&self) -> &ZMat {
        &self.m
    }

    pub fn det(&self) -> Result<BigInt> {
        self.m.det()
    }

    pub fn inverse_mod(&self, q: u64) -> Result<ZMat> {
        self.m.inverse_mod(q)
    }
}
