//! Generalized cyclic codes over F_q: linear codes closed under the shift
//! map tau defined by a vector a with a_0 != 0. Codes correspond to monic
//! divisors g of phi(x) = x^n - a_{n-1}x^{n-1} - ... - a_0; the ordinary
//! cyclic codes are the case a = (1, 0, ..., 0).

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::matrix::FMat;
use crate::poly::FPoly;

/// The ambient ring F_q[x]/<phi>: field, defining vector a, the polynomial
/// phi, and the matrix T implementing multiplication by x on coefficient
/// vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiContext {
    field: Field,
    n: usize,
    a: Vec<FieldElement>,
    phi: FPoly,
    t: FMat,
}

impl PhiContext {
    pub fn new(field: &Field, a: Vec<FieldElement>) -> Result<PhiContext> {
        let n = a.len();
        if n == 0 {
            return Err(Error::InvalidArgument("defining vector must be nonempty".into()));
        }
        if a.iter().any(|x| x.field() != field) {
            return Err(Error::FieldMismatch);
        }
        if a[0].is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        // phi = x^n - a_{n-1}x^{n-1} - ... - a_0
        let mut phi_coeffs: Vec<FieldElement> = a.iter().map(|x| x.neg()).collect();
        phi_coeffs.push(field.one());
        let phi = FPoly::from_coeffs(field, phi_coeffs);

        // T: subdiagonal identity, last column a
        let mut rows = vec![vec![field.zero(); n]; n];
        for i in 1..n {
            rows[i][i - 1] = field.one();
        }
        for i in 0..n {
            rows[i][n - 1] = a[i].clone();
        }
        let t = FMat::new(field, n, rows)?;

        Ok(PhiContext { field: field.clone(), n, a, phi, t })
    }

    pub fn from_u64(field: &Field, a: &[u64]) -> Result<PhiContext> {
        PhiContext::new(field, a.iter().map(|&v| field.from_u64(v)).collect())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> &[FieldElement] {
        &self.a
    }

    pub fn phi(&self) -> &FPoly {
        &self.phi
    }

    pub fn t_matrix(&self) -> &FMat {
        &self.t
    }

    /// The shift map: (c_0,...,c_{n-1}) -> (a_0 c_{n-1}, c_0 + a_1 c_{n-1},
    /// ..., c_{n-2} + a_{n-1} c_{n-1}). Agrees with T·c.
    pub fn tau_apply(&self, c: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if c.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: c.len() });
        }
        let last = &c[c.len() - 1];
        let mut out = Vec::with_capacity(self.n);
        out.push(self.a[0].mul(last)?);
        for i in 1..self.n {
            out.push(c[i - 1].add(&self.a[i].mul(last)?)?);
        }
        debug_assert_eq!(out, self.t.mul_vec(c).unwrap());
        Ok(out)
    }

    /// Product of two polynomials reduced mod phi.
    pub fn mulmod(&self, u: &FPoly, v: &FPoly) -> Result<FPoly> {
        u.mul(v).rem(&self.phi)
    }

    /// Vector of length n holding the coefficients of p (deg p < n).
    pub fn vector_of(&self, p: &FPoly) -> Result<Vec<FieldElement>> {
        p.padded_coeffs(self.n)
    }

    /// Polynomial c_0 + c_1 x + ... + c_{n-1}x^{n-1} from a vector.
    pub fn poly_of(&self, c: &[FieldElement]) -> Result<FPoly> {
        if c.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: c.len() });
        }
        Ok(FPoly::from_coeffs(&self.field, c.to_vec()))
    }

    /// One code per monic divisor of phi, trivial ideals included.
    pub fn enumerate_codes(&self) -> Result<Vec<PhiCyclicCode>> {
        self.phi
            .monic_divisors()?
            .into_iter()
            .map(|g| PhiCyclicCode::new(self, &g))
            .collect()
    }

    /// True iff the constant-vector code {(b,...,b)} is closed under tau,
    /// equivalently 1 + x + ... + x^{n-1} divides phi. Decided by the
    /// closed-form coefficient condition and cross-checked by divisibility.
    pub fn constant_code_is_closed(&self) -> bool {
        let by_condition = if self.n == 1 {
            true
        } else {
            let b = &self.a[1];
            self.a[1..].iter().all(|x| x == b)
                && self.a[0] == self.field.one().add(b).unwrap()
        };
        let ones = FPoly::from_coeffs(&self.field, vec![self.field.one(); self.n]);
        let by_division = ones.divides(&self.phi).unwrap();
        debug_assert_eq!(by_condition, by_division);
        by_condition
    }

    /// Parity matrix of Frobenius-conjugate rows (1, b_i, b_i^2, ...,
    /// b_i^{n-1}) with b_i = theta^{q^{i-1}} running over the roots of an
    /// irreducible divisor g in F_q[y]/<g>. A vector is a codeword of the
    /// code generated by g iff this matrix annihilates it.
    pub fn vandermonde_parity(&self, g: &FPoly) -> Result<FMat> {
        if !g.divides(&self.phi)? {
            return Err(Error::NotDivisor);
        }
        if !g.is_irreducible()? {
            return Err(Error::NotIrreducible);
        }
        let m = g.degree().unwrap();
        let ext = Field::extension(&self.field, g)?;
        let theta = ext.generator()?;
        let q = self.field.order();
        let mut rows = Vec::with_capacity(m);
        let mut beta = theta;
        for _ in 0..m {
            let mut row = Vec::with_capacity(self.n);
            let mut power = ext.one();
            for _ in 0..self.n {
                row.push(power.clone());
                power = power.mul(&beta)?;
            }
            rows.push(row);
            beta = beta.pow(q);
        }
        FMat::new(&ext, self.n, rows)
    }
}

/// Which parity-check construction the stored H came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParitySource {
    /// Shift iterates of the reversed cofactor vector; kept only when the
    /// orthogonality and rank checks pass.
    CofactorShifts,
    /// Exact right-kernel basis of G, used when the shift construction
    /// fails to be a parity check.
    KernelBasis,
}

/// A code C = {c : g(x) | c(x)} for a monic divisor g of phi, with its
/// generator and parity-check matrices.
#[derive(Clone, Debug)]
pub struct PhiCyclicCode {
    ctx: PhiContext,
    g: FPoly,
    h: FPoly,
    k: usize,
    gen: FMat,
    parity: FMat,
    parity_source: ParitySource,
}

impl PhiCyclicCode {
    pub fn new(ctx: &PhiContext, g: &FPoly) -> Result<PhiCyclicCode> {
        if g.field() != ctx.field() {
            return Err(Error::FieldMismatch);
        }
        if !g.is_monic() {
            return Err(Error::NotMonic);
        }
        let (h, r) = ctx.phi.divmod(g)?;
        if !r.is_zero() {
            return Err(Error::NotDivisor);
        }
        let n = ctx.n;
        let k = n - g.degree().unwrap();

        let mut gen_rows = Vec::with_capacity(k);
        if k > 0 {
            let mut row = g.padded_coeffs(n)?;
            for _ in 0..k {
                gen_rows.push(row.clone());
                row = ctx.tau_apply(&row)?;
            }
        }
        let gen = FMat::new(ctx.field(), n, gen_rows)?;

        let mut parity_rows = Vec::with_capacity(n - k);
        if n - k > 0 {
            let mut row = h.padded_coeffs(n)?;
            row.reverse();
            for _ in 0..n - k {
                parity_rows.push(row.clone());
                row = ctx.tau_apply(&row)?;
            }
        }
        let parity = FMat::new(ctx.field(), n, parity_rows)?;

        let orthogonal = gen.mul(&parity.transpose())?.is_zero();
        let full_rank = parity.rank() == n - k;
        let (parity, parity_source) = if orthogonal && full_rank {
            (parity, ParitySource::CofactorShifts)
        } else {
            let kernel = gen.right_kernel();
            debug_assert_eq!(kernel.len(), n - k);
            (FMat::new(ctx.field(), n, kernel)?, ParitySource::KernelBasis)
        };

        Ok(PhiCyclicCode { ctx: ctx.clone(), g: g.clone(), h, k, gen, parity, parity_source })
    }

    pub fn context(&self) -> &PhiContext {
        &self.ctx
    }

    pub fn generator_poly(&self) -> &FPoly {
        &self.g
    }

    /// Cofactor h with g·h = phi.
    pub fn cofactor_poly(&self) -> &FPoly {
        &self.h
    }

    pub fn dimension(&self) -> usize {
        self.k
    }

    pub fn length(&self) -> usize {
        self.ctx.n
    }

    pub fn generator_matrix(&self) -> &FMat {
        &self.gen
    }

    pub fn parity_matrix(&self) -> &FMat {
        &self.parity
    }

    pub fn parity_source(&self) -> ParitySource {
        self.parity_source
    }

    /// q^k, or None if it does not fit in u128.
    pub fn codeword_count(&self) -> Option<u128> {
        let mut count: u128 = 1;
        for _ in 0..self.k {
            count = count.checked_mul(self.ctx.field().order())?;
        }
        Some(count)
    }

    /// m·G for a message of length k.
    pub fn encode(&self, m: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if m.len() != self.k {
            return Err(Error::DimensionMismatch { expected: self.k, got: m.len() });
        }
        let field = self.ctx.field();
        let mut out = vec![field.zero(); self.ctx.n];
        for (mi, row) in m.iter().zip(self.gen.row_vectors()) {
            if mi.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(row) {
                *o = o.add(&mi.mul(r)?)?;
            }
        }
        Ok(out)
    }

    /// Membership by polynomial divisibility: g(x) | c(x).
    pub fn is_codeword(&self, c: &[FieldElement]) -> Result<bool> {
        let cp = self.ctx.poly_of(c)?;
        Ok(cp.rem(&self.g)?.is_zero())
    }

    /// H·c; zero exactly on codewords.
    pub fn syndrome(&self, c: &[FieldElement]) -> Result<Vec<FieldElement>> {
        self.parity.mul_vec(c)
    }

    /// All q^k codewords, message-indexed; guarded by the given cap.
    pub fn codewords_bounded(&self, bound: u128) -> Result<Vec<Vec<FieldElement>>> {
        let count = self
            .codeword_count()
            .filter(|&c| c <= bound)
            .ok_or_else(|| Error::TooLarge(format!("q^{} codewords", self.k)))?;
        let field = self.ctx.field();
        let q = field.order();
        let mut out = Vec::with_capacity(count as usize);
        for idx in 0..count {
            let mut rest = idx;
            let mut m = Vec::with_capacity(self.k);
            for _ in 0..self.k {
                m.push(field.from_index(rest % q).unwrap());
                rest /= q;
            }
            out.push(self.encode(&m)?);
        }
        Ok(out)
    }

    pub const DEFAULT_SCAN_BOUND: u128 = 1_000_000;

    /// Minimum Hamming weight over all nonzero codewords, by exhaustive
    /// scan. Refuses rather than approximates beyond the bound.
    pub fn min_distance(&self) -> Result<usize> {
        self.min_distance_bounded(Self::DEFAULT_SCAN_BOUND)
    }

    pub fn min_distance_bounded(&self, bound: u128) -> Result<usize> {
        if self.k == 0 {
            return Err(Error::TrivialCode);
        }
        let mut best = None;
        for c in self.codewords_bounded(bound)?.iter().skip(1) {
            let w = c.iter().filter(|x| !x.is_zero()).count();
            if best.map_or(true, |b| w < b) {
                best = Some(w);
            }
        }
        Ok(best.unwrap())
    }

    /// The codeword polynomial d with d*c = c (product mod phi) for every
    /// codeword c. Exists when phi is separable and the code is nontrivial.
    pub fn idempotent(&self) -> Result<FPoly> {
        if self.k == 0 || self.k == self.ctx.n {
            return Err(Error::TrivialCode);
        }
        if !self.ctx.phi.is_separable()? {
            return Err(Error::NotSeparable);
        }
        let (d, a, _) = FPoly::xgcd(&self.g, &self.h)?;
        debug_assert!(d.is_one(), "separable phi forces gcd(g, h) = 1");
        self.ctx.mulmod(&a, &self.g)
    }

    /// Membership by evaluation at the canonical root of g in F_q[y]/<g>;
    /// only defined when g is irreducible (the code is a maximal ideal).
    pub fn maximal_membership(&self, c: &[FieldElement]) -> Result<bool> {
        if !self.g.is_irreducible()? {
            return Err(Error::NotIrreducible);
        }
        let cp = self.ctx.poly_of(c)?;
        let ext = Field::extension(self.ctx.field(), &self.g)?;
        let theta = ext.generator()?;
        Ok(cp.eval(&theta)?.is_zero())
    }
}
