//! Exact arithmetic in finite fields: prime fields F_p and extensions
//! F_{q^m} = F_q[y]/<g(y)> built over any already-constructed field.
//!
//! Fields are immutable and cheap to clone (shared handle). Elements carry
//! their field, are always kept fully reduced, and mixing elements of
//! different fields is a hard error, never a coercion.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::FPoly;

#[derive(Debug)]
enum FieldKind {
    Prime { p: u64 },
    Extension { base: Field, modulus: FPoly },
}

#[derive(Debug)]
struct FieldRepr {
    kind: FieldKind,
    characteristic: u64,
    order: u128,
}

/// Handle to a finite field. Clones share the same underlying description.
#[derive(Clone, Debug)]
pub struct Field(Arc<FieldRepr>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        match (&self.0.kind, &other.0.kind) {
            (FieldKind::Prime { p: a }, FieldKind::Prime { p: b }) => a == b,
            (
                FieldKind::Extension { base: b1, modulus: m1 },
                FieldKind::Extension { base: b2, modulus: m2 },
            ) => b1 == b2 && m1.coeffs() == m2.coeffs(),
            _ => false,
        }
    }
}

impl Eq for Field {}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    if n % 3 == 0 {
        return n == 3;
    }
    let mut d = 5u64;
    while d.checked_mul(d).map_or(false, |sq| sq <= n) {
        if n % d == 0 || n % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

impl Field {
    /// The prime field F_p.
    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field(Arc::new(FieldRepr {
            kind: FieldKind::Prime { p },
            characteristic: p,
            order: p as u128,
        })))
    }

    /// The extension field base[y]/<g(y)> for a monic irreducible g.
    ///
    /// The canonical generator [`Field::generator`] is the residue class
    /// of y, so it is a root of g by construction.
    pub fn extension(base: &Field, modulus: &FPoly) -> Result<Field> {
        if modulus.field() != base {
            return Err(Error::FieldMismatch);
        }
        let m = match modulus.degree() {
            Some(m) if m >= 1 => m,
            _ => return Err(Error::InvalidArgument("modulus must have degree >= 1".into())),
        };
        if !modulus.is_monic() {
            return Err(Error::NotMonic);
        }
        if !modulus.is_irreducible()? {
            return Err(Error::Reducible);
        }
        let mut order: u128 = 1;
        for _ in 0..m {
            order = order
                .checked_mul(base.order())
                .ok_or_else(|| Error::TooLarge("field order exceeds u128".into()))?;
        }
        Ok(Field(Arc::new(FieldRepr {
            kind: FieldKind::Extension { base: base.clone(), modulus: modulus.clone() },
            characteristic: base.characteristic(),
            order,
        })))
    }

    pub fn characteristic(&self) -> u64 {
        self.0.characteristic
    }

    pub fn order(&self) -> u128 {
        self.0.order
    }

    pub fn is_prime_field(&self) -> bool {
        matches!(self.0.kind, FieldKind::Prime { .. })
    }

    /// Base field of an extension; `None` for a prime field.
    pub fn base(&self) -> Option<&Field> {
        match &self.0.kind {
            FieldKind::Prime { .. } => None,
            FieldKind::Extension { base, .. } => Some(base),
        }
    }

    /// Modulus polynomial of an extension; `None` for a prime field.
    pub fn modulus(&self) -> Option<&FPoly> {
        match &self.0.kind {
            FieldKind::Prime { .. } => None,
            FieldKind::Extension { modulus, .. } => Some(modulus),
        }
    }

    /// Extension degree over the base field (1 for a prime field).
    pub fn degree_over_base(&self) -> usize {
        match &self.0.kind {
            FieldKind::Prime { .. } => 1,
            FieldKind::Extension { modulus, .. } => modulus.degree().unwrap(),
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.from_index(0).unwrap()
    }

    pub fn one(&self) -> FieldElement {
        match &self.0.kind {
            FieldKind::Prime { .. } => {
                FieldElement { field: self.clone(), repr: Repr::Prime(1 % self.characteristic()) }
            }
            FieldKind::Extension { base, .. } => {
                let mut coeffs = vec![base.zero(); self.degree_over_base()];
                coeffs[0] = base.one();
                FieldElement { field: self.clone(), repr: Repr::Ext(coeffs) }
            }
        }
    }

    /// Image of an integer under the canonical map Z -> F (reduction
    /// mod the characteristic, embedded through the base chain).
    pub fn from_u64(&self, v: u64) -> FieldElement {
        match &self.0.kind {
            FieldKind::Prime { p } => FieldElement { field: self.clone(), repr: Repr::Prime(v % p) },
            FieldKind::Extension { base, .. } => self.embed(&base.from_u64(v)).unwrap(),
        }
    }

    /// Same as [`Field::from_u64`] for signed input.
    pub fn from_i64(&self, v: i64) -> FieldElement {
        let p = self.characteristic() as i64;
        self.from_u64(v.rem_euclid(p) as u64)
    }

    /// Element with the given index in the canonical enumeration
    /// (prime fields: the representative itself; extensions: base-order
    /// digits, least significant digit = constant coefficient).
    pub fn from_index(&self, index: u128) -> Result<FieldElement> {
        if index >= self.order() {
            return Err(Error::InvalidArgument(format!(
                "index {index} out of range for field of order {}",
                self.order()
            )));
        }
        match &self.0.kind {
            FieldKind::Prime { .. } => {
                Ok(FieldElement { field: self.clone(), repr: Repr::Prime(index as u64) })
            }
            FieldKind::Extension { base, .. } => {
                let m = self.degree_over_base();
                let b = base.order();
                let mut rest = index;
                let mut coeffs = Vec::with_capacity(m);
                for _ in 0..m {
                    coeffs.push(base.from_index(rest % b)?);
                    rest /= b;
                }
                Ok(FieldElement { field: self.clone(), repr: Repr::Ext(coeffs) })
            }
        }
    }

    /// All field elements in canonical enumeration order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order()).map(move |i| self.from_index(i).unwrap())
    }

    /// The residue class of y in an extension field.
    pub fn generator(&self) -> Result<FieldElement> {
        match &self.0.kind {
            FieldKind::Prime { .. } => {
                Err(Error::InvalidArgument("prime fields have no canonical generator".into()))
            }
            FieldKind::Extension { base, .. } => {
                let m = self.degree_over_base();
                if m == 1 {
                    // y = root of the linear modulus: y = -c where modulus = y + c
                    let c = self.modulus().unwrap().coeff(0);
                    Ok(self.embed(&c.neg())?)
                } else {
                    let mut coeffs = vec![base.zero(); m];
                    coeffs[1] = base.one();
                    Ok(FieldElement { field: self.clone(), repr: Repr::Ext(coeffs) })
                }
            }
        }
    }

    /// Build an extension element from base-field coefficients
    /// (constant term first; shorter vectors are zero-padded).
    pub fn element_from_coeffs(&self, coeffs: &[FieldElement]) -> Result<FieldElement> {
        match &self.0.kind {
            FieldKind::Prime { .. } => {
                Err(Error::InvalidArgument("not an extension field".into()))
            }
            FieldKind::Extension { base, .. } => {
                let m = self.degree_over_base();
                if coeffs.len() > m {
                    return Err(Error::DimensionMismatch { expected: m, got: coeffs.len() });
                }
                let mut v = Vec::with_capacity(m);
                for c in coeffs {
                    if c.field() != base {
                        return Err(Error::FieldMismatch);
                    }
                    v.push(c.clone());
                }
                v.resize(m, base.zero());
                Ok(FieldElement { field: self.clone(), repr: Repr::Ext(v) })
            }
        }
    }

    /// Canonical embedding of an element of this field, its base field,
    /// or any field further down the base chain.
    pub fn embed(&self, x: &FieldElement) -> Result<FieldElement> {
        if x.field() == self {
            return Ok(x.clone());
        }
        match &self.0.kind {
            FieldKind::Prime { .. } => Err(Error::FieldMismatch),
            FieldKind::Extension { base, .. } => {
                let in_base = base.embed(x)?;
                let mut coeffs = vec![base.zero(); self.degree_over_base()];
                coeffs[0] = in_base;
                Ok(FieldElement { field: self.clone(), repr: Repr::Ext(coeffs) })
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Prime(u64),
    Ext(Vec<FieldElement>),
}

/// Element of a [`Field`]; always fully reduced.
#[derive(Clone)]
pub struct FieldElement {
    field: Field,
    repr: Repr,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.repr == other.repr
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.order().hash(state);
        self.repr.hash(state);
    }
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Prime(v) => *v == 0,
            Repr::Ext(coeffs) => coeffs.iter().all(|c| c.is_zero()),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.field.one()
    }

    /// Representative in [0, p) for prime-field elements.
    pub fn prime_value(&self) -> Option<u64> {
        match &self.repr {
            Repr::Prime(v) => Some(*v),
            Repr::Ext(_) => None,
        }
    }

    /// Coefficients over the base field for extension elements.
    pub fn ext_coeffs(&self) -> Option<&[FieldElement]> {
        match &self.repr {
            Repr::Prime(_) => None,
            Repr::Ext(coeffs) => Some(coeffs),
        }
    }

    /// Index of this element in the canonical enumeration of its field.
    pub fn canonical_index(&self) -> u128 {
        match &self.repr {
            Repr::Prime(v) => *v as u128,
            Repr::Ext(coeffs) => {
                let b = self.field.base().unwrap().order();
                coeffs.iter().rev().fold(0u128, |acc, c| acc * b + c.canonical_index())
            }
        }
    }

    fn require_same_field(&self, rhs: &FieldElement) -> Result<()> {
        if self.field == rhs.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.require_same_field(rhs)?;
        let repr = match (&self.repr, &rhs.repr) {
            (Repr::Prime(a), Repr::Prime(b)) => {
                let p = self.field.characteristic() as u128;
                Repr::Prime(((*a as u128 + *b as u128) % p) as u64)
            }
            (Repr::Ext(a), Repr::Ext(b)) => Repr::Ext(
                a.iter().zip(b).map(|(x, y)| x.add(y)).collect::<Result<Vec<_>>>()?,
            ),
            _ => unreachable!("same field implies same representation"),
        };
        Ok(FieldElement { field: self.field.clone(), repr })
    }

    pub fn neg(&self) -> FieldElement {
        let repr = match &self.repr {
            Repr::Prime(a) => {
                let p = self.field.characteristic();
                Repr::Prime(if *a == 0 { 0 } else { p - a })
            }
            Repr::Ext(a) => Repr::Ext(a.iter().map(|x| x.neg()).collect()),
        };
        FieldElement { field: self.field.clone(), repr }
    }

    pub fn sub(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.require_same_field(rhs)?;
        match (&self.repr, &rhs.repr) {
            (Repr::Prime(a), Repr::Prime(b)) => {
                let p = self.field.characteristic() as u128;
                Ok(FieldElement {
                    field: self.field.clone(),
                    repr: Repr::Prime(((*a as u128 * *b as u128) % p) as u64),
                })
            }
            (Repr::Ext(_), Repr::Ext(_)) => {
                let modulus = self.field.modulus().unwrap().clone();
                let product = self.as_base_poly().mul(&rhs.as_base_poly());
                let (_, rem) = product.divmod(&modulus)?;
                Ok(self.field.element_from_base_poly(&rem))
            }
            _ => unreachable!("same field implies same representation"),
        }
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match &self.repr {
            Repr::Prime(a) => {
                let p = self.field.characteristic();
                // extended Euclid on (a, p)
                let (mut r0, mut r1) = (*a as i128, p as i128);
                let (mut s0, mut s1) = (1i128, 0i128);
                while r1 != 0 {
                    let q = r0 / r1;
                    (r0, r1) = (r1, r0 - q * r1);
                    (s0, s1) = (s1, s0 - q * s1);
                }
                debug_assert_eq!(r0, 1);
                let v = s0.rem_euclid(p as i128) as u64;
                Ok(FieldElement { field: self.field.clone(), repr: Repr::Prime(v) })
            }
            Repr::Ext(_) => {
                let modulus = self.field.modulus().unwrap();
                let (d, a, _) = FPoly::xgcd(&self.as_base_poly(), modulus)?;
                debug_assert!(d.is_one(), "modulus irreducible, nonzero element is a unit");
                let (_, rem) = a.divmod(modulus)?;
                Ok(self.field.element_from_base_poly(&rem))
            }
        }
    }

    pub fn div(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.mul(&rhs.inv()?)
    }

    /// Exponentiation by square-and-multiply; `x^0 = 1` including for x = 0.
    pub fn pow(&self, mut e: u128) -> FieldElement {
        let mut result = self.field.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).unwrap();
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).unwrap();
            }
        }
        result
    }

    /// Extension element viewed as a polynomial over the base field.
    fn as_base_poly(&self) -> FPoly {
        match &self.repr {
            Repr::Prime(_) => unreachable!("prime elements have no base polynomial"),
            Repr::Ext(coeffs) => {
                FPoly::from_coeffs(self.field.base().unwrap(), coeffs.to_vec())
            }
        }
    }
}

impl Field {
    fn element_from_base_poly(&self, poly: &FPoly) -> FieldElement {
        let m = self.degree_over_base();
        let mut coeffs = poly.coeffs().to_vec();
        debug_assert!(coeffs.len() <= m);
        coeffs.resize(m, self.base().unwrap().zero());
        FieldElement { field: self.clone(), repr: Repr::Ext(coeffs) }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Prime(v) => write!(f, "{v}"),
            Repr::Ext(coeffs) => {
                write!(f, "[")?;
                for (i, c) in coeffs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c:?}")?;
                }
                write!(f, "]")
            }
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
