//! Dense univariate polynomials over a finite field, over Z, and over Z_q.
//!
//! Coefficient index i holds the coefficient of x^i. Canonical form has no
//! trailing zeros; the zero polynomial is the empty coefficient vector.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::matrix::ZMat;

/// Polynomial over a finite field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FPoly {
    field: Field,
    coeffs: Vec<FieldElement>,
}

impl FPoly {
    /// Trailing zeros are trimmed. Panics if a coefficient belongs to a
    /// different field; that is a programming error, not a data error.
    pub fn from_coeffs(field: &Field, mut coeffs: Vec<FieldElement>) -> FPoly {
        assert!(
            coeffs.iter().all(|c| c.field() == field),
            "coefficient from a different field"
        );
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        FPoly { field: field.clone(), coeffs }
    }

    pub fn from_u64_coeffs(field: &Field, coeffs: &[u64]) -> FPoly {
        FPoly::from_coeffs(field, coeffs.iter().map(|&v| field.from_u64(v)).collect())
    }

    pub fn zero(field: &Field) -> FPoly {
        FPoly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> FPoly {
        FPoly::from_coeffs(field, vec![field.one()])
    }

    pub fn constant(c: FieldElement) -> FPoly {
        let field = c.field().clone();
        FPoly::from_coeffs(&field, vec![c])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Coefficient of x^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn leading_coeff(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().map_or(false, |c| c.is_one())
    }

    /// Coefficient vector padded with zeros to length n; errors when the
    /// degree does not fit.
    pub fn padded_coeffs(&self, n: usize) -> Result<Vec<FieldElement>> {
        if self.coeffs.len() > n {
            return Err(Error::DimensionMismatch { expected: n, got: self.coeffs.len() });
        }
        let mut v = self.coeffs.clone();
        v.resize(n, self.field.zero());
        Ok(v)
    }

    fn assert_same_field(&self, rhs: &FPoly) {
        assert!(self.field == rhs.field, "polynomials over different fields");
    }

    pub fn add(&self, rhs: &FPoly) -> FPoly {
        self.assert_same_field(rhs);
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i).add(&rhs.coeff(i)).unwrap()).collect();
        FPoly::from_coeffs(&self.field, coeffs)
    }

    pub fn neg(&self) -> FPoly {
        FPoly { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }

    pub fn sub(&self, rhs: &FPoly) -> FPoly {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, c: &FieldElement) -> FPoly {
        assert!(c.field() == &self.field, "scalar from a different field");
        FPoly::from_coeffs(
            &self.field,
            self.coeffs.iter().map(|x| x.mul(c).unwrap()).collect(),
        )
    }

    pub fn mul(&self, rhs: &FPoly) -> FPoly {
        self.assert_same_field(rhs);
        if self.is_zero() || rhs.is_zero() {
            return FPoly::zero(&self.field);
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b).unwrap()).unwrap();
            }
        }
        FPoly::from_coeffs(&self.field, coeffs)
    }

    /// Multiply by x^k.
    pub fn mul_xpow(&self, k: usize) -> FPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        FPoly { field: self.field.clone(), coeffs }
    }

    /// Division with remainder: self = q·g + r with deg r < deg g.
    pub fn divmod(&self, g: &FPoly) -> Result<(FPoly, FPoly)> {
        if self.field != g.field {
            return Err(Error::FieldMismatch);
        }
        let Some(dg) = g.degree() else {
            return Err(Error::DivisionByZero);
        };
        let lc_inv = g.leading_coeff().unwrap().inv()?;
        let mut r = self.clone();
        let mut q = FPoly::zero(&self.field);
        while let Some(dr) = r.degree() {
            if dr < dg {
                break;
            }
            let c = r.leading_coeff().unwrap().mul(&lc_inv).unwrap();
            let t = FPoly::constant(c).mul_xpow(dr - dg);
            q = q.add(&t);
            r = r.sub(&t.mul(g));
        }
        Ok((q, r))
    }

    pub fn rem(&self, g: &FPoly) -> Result<FPoly> {
        Ok(self.divmod(g)?.1)
    }

    /// True when self divides f evenly.
    pub fn divides(&self, f: &FPoly) -> Result<bool> {
        Ok(f.rem(self)?.is_zero())
    }

    /// Monic gcd. Errors when both inputs are zero.
    pub fn gcd(&self, other: &FPoly) -> Result<FPoly> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.is_zero() && other.is_zero() {
            return Err(Error::BothZero);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        let lc_inv = a.leading_coeff().unwrap().inv()?;
        Ok(a.scale(&lc_inv))
    }

    /// Extended gcd: returns (d, a, b) with a·self + b·other = d, d monic.
    pub fn xgcd(f: &FPoly, g: &FPoly) -> Result<(FPoly, FPoly, FPoly)> {
        if f.field != g.field {
            return Err(Error::FieldMismatch);
        }
        if f.is_zero() && g.is_zero() {
            return Err(Error::BothZero);
        }
        let field = f.field.clone();
        let (mut r0, mut r1) = (f.clone(), g.clone());
        let (mut s0, mut s1) = (FPoly::one(&field), FPoly::zero(&field));
        let (mut t0, mut t1) = (FPoly::zero(&field), FPoly::one(&field));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1)?;
            (r0, r1) = (r1, r);
            (s0, s1) = (s1.clone(), s0.sub(&q.mul(&s1)));
            (t0, t1) = (t1.clone(), t0.sub(&q.mul(&t1)));
        }
        let lc_inv = r0.leading_coeff().unwrap().inv()?;
        Ok((r0.scale(&lc_inv), s0.scale(&lc_inv), t0.scale(&lc_inv)))
    }

    pub fn derivative(&self) -> FPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| self.field.from_u64(i as u64).mul(c).unwrap())
            .collect();
        FPoly::from_coeffs(&self.field, coeffs)
    }

    /// Horner evaluation at a point of this field or of any extension
    /// containing it (coefficients are embedded canonically).
    pub fn eval(&self, x: &FieldElement) -> Result<FieldElement> {
        let target = x.field();
        let mut acc = target.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x)?.add(&target.embed(c)?)?;
        }
        Ok(acc)
    }

    /// True iff the polynomial has no repeated roots in a splitting field,
    /// i.e. gcd with its derivative is constant.
    pub fn is_separable(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.degree() == Some(0) {
            return Ok(true);
        }
        let d = self.derivative();
        if d.is_zero() {
            return Ok(false);
        }
        Ok(self.gcd(&d)?.degree() == Some(0))
    }

    /// Exhaustive trial division by every monic polynomial of degree up to
    /// deg/2. The candidate count q^(deg/2) must stay at or below 2^16.
    pub fn is_irreducible(&self) -> Result<bool> {
        let deg = match self.degree() {
            None | Some(0) => return Ok(false),
            Some(1) => return Ok(true),
            Some(d) => d,
        };
        let half = deg / 2;
        let mut count: u128 = 1;
        for _ in 0..half {
            count = count
                .checked_mul(self.field.order())
                .filter(|&c| c <= 1 << 16)
                .ok_or_else(|| {
                    Error::TooLarge(format!("q^{half} candidate divisors for irreducibility"))
                })?;
        }
        for d in 1..=half {
            for candidate in monic_polys_of_degree(&self.field, d) {
                if candidate.divides(self)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Default cap on q^n for divisor enumeration.
    pub const DEFAULT_DIVISOR_BOUND: u128 = 1 << 16;

    /// All monic divisors (1 and self included), sorted by degree and then
    /// lexicographically on the coefficient integers, constant term first.
    pub fn monic_divisors(&self) -> Result<Vec<FPoly>> {
        self.monic_divisors_bounded(Self::DEFAULT_DIVISOR_BOUND)
    }

    pub fn monic_divisors_bounded(&self, bound: u128) -> Result<Vec<FPoly>> {
        if !self.is_monic() {
            return Err(Error::NotMonic);
        }
        let n = self.degree().unwrap();
        let mut space: u128 = 1;
        for _ in 0..n {
            space = space
                .checked_mul(self.field.order())
                .filter(|&c| c <= bound)
                .ok_or_else(|| Error::TooLarge(format!("q^{n} exceeds divisor bound {bound}")))?;
        }
        let mut divisors = vec![FPoly::one(&self.field)];
        for d in 1..=n {
            for candidate in monic_polys_of_degree(&self.field, d) {
                if candidate.divides(self)? {
                    divisors.push(candidate);
                }
            }
        }
        divisors.sort_by_key(|g| {
            (g.degree().unwrap(), g.coeffs.iter().map(|c| c.canonical_index()).collect::<Vec<_>>())
        });
        Ok(divisors)
    }
}

/// The first irreducible monic polynomial of the degree when candidates
/// are ordered by their coefficient vectors read as base-q integers,
/// constant digit least significant. Deterministic, so a caller building
/// an extension field of a given degree always lands on the same modulus.
pub fn smallest_irreducible(field: &Field, degree: usize) -> Result<FPoly> {
    if degree == 0 {
        return Err(Error::InvalidArgument("degree must be positive".into()));
    }
    for candidate in monic_polys_of_degree(field, degree) {
        if candidate.is_irreducible()? {
            return Ok(candidate);
        }
    }
    unreachable!("every degree over a finite field has an irreducible polynomial")
}

/// All monic polynomials of the given degree, in canonical coefficient
/// order (constant coefficient cycles fastest).
pub(crate) fn monic_polys_of_degree(field: &Field, degree: usize) -> Vec<FPoly> {
    let q = field.order();
    let mut total: u128 = 1;
    for _ in 0..degree {
        total *= q;
    }
    let mut out = Vec::with_capacity(total as usize);
    for idx in 0..total {
        let mut coeffs = Vec::with_capacity(degree + 1);
        let mut rest = idx;
        for _ in 0..degree {
            coeffs.push(field.from_index(rest % q).unwrap());
            rest /= q;
        }
        coeffs.push(field.one());
        out.push(FPoly::from_coeffs(field, coeffs));
    }
    out
}

impl std::fmt::Display for FPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                _ => {
                    if !c.is_one() {
                        write!(f, "{c}")?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

fn mobius(n: u32) -> i64 {
    let mut n = n;
    let mut factors = 0;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            factors += 1;
        }
        p += 1;
    }
    if n > 1 {
        factors += 1;
    }
    if factors % 2 == 0 {
        1
    } else {
        -1
    }
}

fn is_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= q {
        if q % p == 0 {
            let mut m = q;
            while m % p == 0 {
                m /= p;
            }
            return m == 1;
        }
        p += 1;
    }
    true
}

/// Number of monic irreducible polynomials of degree m over F_q:
/// (1/m) Σ_{d|m} μ(d) q^{m/d}.
pub fn count_irreducible(q: u64, m: u32) -> Result<BigInt> {
    if m < 1 {
        return Err(Error::InvalidArgument("degree m must be at least 1".into()));
    }
    if !is_prime_power(q) {
        return Err(Error::InvalidArgument(format!("{q} is not a prime power")));
    }
    let qi = BigInt::from(q);
    let mut sum = BigInt::zero();
    for d in 1..=m {
        if m % d != 0 {
            continue;
        }
        sum += BigInt::from(mobius(d)) * qi.pow(m / d);
    }
    let (quot, rem) = sum.div_rem(&BigInt::from(m));
    debug_assert!(rem.is_zero(), "Mobius sum is always divisible by m");
    Ok(quot)
}

/// Polynomial with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> ZPoly {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> ZPoly {
        ZPoly::from_coeffs(coeffs.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn zero() -> ZPoly {
        ZPoly { coeffs: Vec::new() }
    }

    pub fn one() -> ZPoly {
        ZPoly { coeffs: vec![BigInt::one()] }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn add(&self, rhs: &ZPoly) -> ZPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        ZPoly::from_coeffs((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }

    pub fn neg(&self) -> ZPoly {
        ZPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, rhs: &ZPoly) -> ZPoly {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, c: &BigInt) -> ZPoly {
        ZPoly::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, rhs: &ZPoly) -> ZPoly {
        if self.is_zero() || rhs.is_zero() {
            return ZPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        ZPoly::from_coeffs(coeffs)
    }

    pub fn mul_xpow(&self, k: usize) -> ZPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        ZPoly { coeffs }
    }

    /// Exact division with remainder; the divisor's leading coefficient
    /// must be ±1 so the quotient stays integral.
    pub fn divmod(&self, g: &ZPoly) -> Result<(ZPoly, ZPoly)> {
        let Some(dg) = g.degree() else {
            return Err(Error::DivisionByZero);
        };
        let lc = g.leading_coeff().unwrap();
        if !lc.is_one() && *lc != BigInt::from(-1) {
            return Err(Error::LeadingCoefficientNotUnit);
        }
        let mut r = self.clone();
        let mut q = ZPoly::zero();
        while let Some(dr) = r.degree() {
            if dr < dg {
                break;
            }
            let c = r.leading_coeff().unwrap() / lc;
            let t = ZPoly::from_coeffs(vec![c]).mul_xpow(dr - dg);
            q = q.add(&t);
            r = r.sub(&t.mul(g));
        }
        Ok((q, r))
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> ZPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
        ZPoly::from_coeffs(coeffs)
    }

    /// Gcd of the coefficients, non-negative; 0 for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// self divided by its content; the zero polynomial stays zero.
    pub fn primitive_part(&self) -> ZPoly {
        let c = self.content();
        if c.is_zero() {
            return ZPoly::zero();
        }
        ZPoly { coeffs: self.coeffs.iter().map(|x| x / &c).collect() }
    }

    /// Pseudo-remainder: lc(g)^(deg f - deg g + 1)·f = q·g + r. Requires
    /// deg f ≥ deg g and g ≠ 0.
    fn pseudo_rem(&self, g: &ZPoly) -> ZPoly {
        let df = self.degree().expect("pseudo_rem of zero dividend");
        let dg = g.degree().expect("pseudo_rem by zero");
        debug_assert!(df >= dg);
        let lcg = g.leading_coeff().unwrap().clone();
        let mut r = self.clone();
        let mut e = (df - dg + 1) as u32;
        while let Some(dr) = r.degree() {
            if dr < dg {
                break;
            }
            let lead = r.leading_coeff().unwrap().clone();
            r = r.scale(&lcg).sub(&g.scale(&lead).mul_xpow(dr - dg));
            e -= 1;
        }
        r.scale(&lcg.pow(e))
    }

    /// Integer polynomial gcd via the primitive polynomial remainder
    /// sequence; result has positive leading coefficient. gcd(0,0) = 0.
    pub fn gcd(&self, other: &ZPoly) -> ZPoly {
        if self.is_zero() && other.is_zero() {
            return ZPoly::zero();
        }
        let c = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        let g = a.scale(&c);
        if g.leading_coeff().map_or(false, |lc| lc.is_negative()) {
            g.neg()
        } else {
            g
        }
    }

    /// True iff gcd with the derivative is constant (no repeated roots).
    pub fn is_separable(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.degree() == Some(0) {
            return Ok(true);
        }
        Ok(self.gcd(&self.derivative()).degree() == Some(0))
    }

    /// Resultant as the determinant of the Sylvester matrix, exact.
    pub fn resultant(&self, g: &ZPoly) -> Result<BigInt> {
        let (Some(df), Some(dg)) = (self.degree(), g.degree()) else {
            return Err(Error::ZeroPolynomial);
        };
        let size = df + dg;
        let mut m = ZMat::zero(size, size);
        for i in 0..dg {
            for (k, c) in self.coeffs.iter().enumerate() {
                // row i carries f's coefficients, descending, shifted by i
                *m.entry_mut(i, i + df - k) = c.clone();
            }
        }
        for i in 0..df {
            for (k, c) in g.coeffs.iter().enumerate() {
                *m.entry_mut(dg + i, i + dg - k) = c.clone();
            }
        }
        m.det()
    }
}

impl std::fmt::Display for ZPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}")?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Polynomial over Z_q for arbitrary modulus q ≥ 2; coefficients are kept
/// reduced in [0, q).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZqPoly {
    q: u64,
    coeffs: Vec<u64>,
}

impl ZqPoly {
    pub fn from_coeffs(q: u64, coeffs: &[u64]) -> ZqPoly {
        assert!(q >= 2, "modulus must be at least 2");
        let mut coeffs: Vec<u64> = coeffs.iter().map(|&c| c % q).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        ZqPoly { q, coeffs }
    }

    pub fn from_i64(q: u64, coeffs: &[i64]) -> ZqPoly {
        let reduced: Vec<u64> =
            coeffs.iter().map(|&c| c.rem_euclid(q as i64) as u64).collect();
        ZqPoly::from_coeffs(q, &reduced)
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn assert_same_modulus(&self, rhs: &ZqPoly) {
        assert_eq!(self.q, rhs.q, "polynomials over different moduli");
    }

    pub fn add(&self, rhs: &ZqPoly) -> ZqPoly {
        self.assert_same_modulus(rhs);
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs: Vec<u64> =
            (0..len).map(|i| ((self.coeff(i) as u128 + rhs.coeff(i) as u128) % self.q as u128) as u64).collect();
        ZqPoly::from_coeffs(self.q, &coeffs)
    }

    pub fn neg(&self) -> ZqPoly {
        let coeffs: Vec<u64> =
            self.coeffs.iter().map(|&c| if c == 0 { 0 } else { self.q - c }).collect();
        ZqPoly::from_coeffs(self.q, &coeffs)
    }

    pub fn sub(&self, rhs: &ZqPoly) -> ZqPoly {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &ZqPoly) -> ZqPoly {
        self.assert_same_modulus(rhs);
        if self.is_zero() || rhs.is_zero() {
            return ZqPoly { q: self.q, coeffs: Vec::new() };
        }
        let mut coeffs = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] =
                    ((coeffs[i + j] as u128 + a as u128 * b as u128) % self.q as u128) as u64;
            }
        }
        ZqPoly::from_coeffs(self.q, &coeffs)
    }

    /// Division with remainder; the divisor's leading coefficient must be
    /// a unit mod q.
    pub fn divmod(&self, g: &ZqPoly) -> Result<(ZqPoly, ZqPoly)> {
        self.assert_same_modulus(g);
        let Some(dg) = g.degree() else {
            return Err(Error::DivisionByZero);
        };
        let lc = BigInt::from(*g.coeffs.last().unwrap());
        let lc_inv = match crate::matrix::modinv(&lc, self.q) {
            Some(v) => u64::try_from(v).unwrap(),
            None => return Err(Error::LeadingCoefficientNotUnit),
        };
        let mut r = self.clone();
        let mut q_acc = vec![0u64; self.coeffs.len().saturating_sub(dg)];
        while let Some(dr) = r.degree() {
            if dr < dg {
                break;
            }
            let c = ((*r.coeffs.last().unwrap() as u128 * lc_inv as u128) % self.q as u128) as u64;
            q_acc[dr - dg] = c;
            let mut t = vec![0u64; dr - dg];
            t.push(c);
            let t = ZqPoly::from_coeffs(self.q, &t);
            r = r.sub(&t.mul(g));
        }
        Ok((ZqPoly::from_coeffs(self.q, &q_acc), r))
    }
}
