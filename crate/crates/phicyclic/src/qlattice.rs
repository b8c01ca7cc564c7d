//! The q-ary lattice in Z^{2n} generated by a pair of ideal matrices:
//! members are the y with y ≡ [H*(f); H*(g)]·x (mod q) for some integer
//! x. Closed under the blockwise companion map sigma, and carrying a
//! public block-triangular basis when H*(f) is a unit mod q.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::idealmat::IntPhiContext;
use crate::matrix::ZMat;

/// Default cap on q^n for brute-force membership fallback.
pub const MEMBER_BRUTE_BOUND: u128 = 1_000_000;

#[derive(Clone, Debug)]
pub struct ConvLattice {
    ctx: IntPhiContext,
    f: Vec<BigInt>,
    g: Vec<BigInt>,
    q: u64,
    hf: ZMat,
    hg: ZMat,
    /// Adjugate-based inverse, built on first membership query; h alone
    /// comes from the cheaper Cramer solve at construction time.
    hf_inv: std::sync::OnceLock<ZMat>,
    /// Public vector h ≡ H*(f)^{-1} g (mod q), entries in [0, q).
    /// Present iff H*(f) is invertible mod q.
    h: Option<Vec<BigInt>>,
}

impl ConvLattice {
    pub fn new(ctx: &IntPhiContext, f: &[BigInt], g: &[BigInt], q: u64) -> Result<ConvLattice> {
        let n = ctx.n();
        if f.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: f.len() });
        }
        if g.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: g.len() });
        }
        if q < 2 {
            return Err(Error::InvalidArgument("modulus must be at least 2".into()));
        }
        let hf = ctx.ideal_matrix(f)?.matrix().clone();
        let hg = ctx.ideal_matrix(g)?.matrix().clone();
        let h = match hf.solve_mod(g, q) {
            Ok(h) => Some(h),
            Err(Error::NotInvertibleModQ(_)) => None,
            Err(e) => return Err(e),
        };
        Ok(ConvLattice {
            ctx: ctx.clone(),
            f: f.to_vec(),
            g: g.to_vec(),
            q,
            hf,
            hg,
            hf_inv: std::sync::OnceLock::new(),
            h,
        })
    }

    pub fn context(&self) -> &IntPhiContext {
        &self.ctx
    }

    pub fn n(&self) -> usize {
        self.ctx.n()
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn f(&self) -> &[BigInt] {
        &self.f
    }

    pub fn g(&self) -> &[BigInt] {
        &self.g
    }

    pub fn hf(&self) -> &ZMat {
        &self.hf
    }

    pub fn hg(&self) -> &ZMat {
        &self.hg
    }

    /// h ≡ H*(f)^{-1} g (mod q); None when H*(f) is not a unit mod q.
    pub fn public_vector(&self) -> Option<&[BigInt]> {
        self.h.as_deref()
    }

    pub fn has_public_basis(&self) -> bool {
        self.h.is_some()
    }

    /// The 2n×n generator stack [H*(f); H*(g)].
    pub fn a_prime(&self) -> ZMat {
        let n = self.n();
        let mut m = ZMat::zero(2 * n, n);
        for i in 0..n {
            for j in 0..n {
                *m.entry_mut(i, j) = self.hf.entry(i, j).clone();
                *m.entry_mut(n + i, j) = self.hg.entry(i, j).clone();
            }
        }
        m
    }

    /// The n×2n arrangement [H*(f)^T  H*(g)^T], the transpose of a_prime.
    pub fn a_matrix(&self) -> ZMat {
        self.a_prime().transpose()
    }

    fn split(&self, y: &[BigInt]) -> Result<(Vec<BigInt>, Vec<BigInt>)> {
        let n = self.n();
        if y.len() != 2 * n {
            return Err(Error::DimensionMismatch { expected: 2 * n, got: y.len() });
        }
        Ok((y[..n].to_vec(), y[n..].to_vec()))
    }

    /// Membership: does some integer x satisfy y ≡ [H*(f); H*(g)]x mod q?
    /// Primary path inverts H*(f) mod q; when that inverse does not exist
    /// the whole residue space is scanned, provided q^n stays within
    /// [`MEMBER_BRUTE_BOUND`].
    pub fn member(&self, y: &[BigInt]) -> Result<bool> {
        let (top, bottom) = self.split(y)?;
        let q = BigInt::from(self.q);
        if self.h.is_none() {
            return self.member_bruteforce_internal(&top, &bottom);
        }
        let inv = self.hf_inv.get_or_init(|| {
            self.hf
                .inverse_mod(self.q)
                .expect("h present implies H*(f) invertible")
        });
        let x = inv.mul_vec(&top)?;
        let image = self.hg.mul_vec(&x)?;
        Ok(image
            .iter()
            .zip(&bottom)
            .all(|(a, b)| (a - b).mod_floor(&q).is_zero()))
    }

    fn member_bruteforce_internal(&self, top: &[BigInt], bottom: &[BigInt]) -> Result<bool> {
        let n = self.n();
        let mut space: u128 = 1;
        for _ in 0..n {
            space = space
                .checked_mul(self.q as u128)
                .filter(|&s| s <= MEMBER_BRUTE_BOUND)
                .ok_or(Error::Undecidable)?;
        }
        let q = BigInt::from(self.q);
        for idx in 0..space {
            let mut rest = idx;
            let mut x = Vec::with_capacity(n);
            for _ in 0..n {
                x.push(BigInt::from((rest % self.q as u128) as u64));
                rest /= self.q as u128;
            }
            let t = self.hf.mul_vec(&x)?;
            let b = self.hg.mul_vec(&x)?;
            let ok = t.iter().zip(top).all(|(a, c)| (a - c).mod_floor(&q).is_zero())
                && b.iter().zip(bottom).all(|(a, c)| (a - c).mod_floor(&q).is_zero());
            if ok {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Blockwise companion map: (alpha; beta) -> (H alpha; H beta).
    pub fn sigma_apply(&self, y: &[BigInt]) -> Result<Vec<BigInt>> {
        let (top, bottom) = self.split(y)?;
        let mut out = self.ctx.companion().mul_vec(&top)?;
        out.extend(self.ctx.companion().mul_vec(&bottom)?);
        Ok(out)
    }

    /// The public basis in block form [[I, H*(h)], [0, qI]]. The basis
    /// vectors themselves are read off by [`ConvLattice::basis_vectors`];
    /// see that method for the orientation convention.
    pub fn hnf_basis(&self) -> Result<ZMat> {
        let h = self.h.as_ref().ok_or(Error::NotInvertibleModQ(self.q))?;
        let n = self.n();
        let hh = self.ctx.ideal_matrix(h)?.matrix().clone();
        let mut m = ZMat::zero(2 * n, 2 * n);
        for i in 0..n {
            *m.entry_mut(i, i) = BigInt::one();
            *m.entry_mut(n + i, n + i) = BigInt::from(self.q);
            for j in 0..n {
                *m.entry_mut(i, n + j) = hh.entry(i, j).clone();
            }
        }
        Ok(m)
    }

    /// The 2n basis vectors encoded by the block matrix N: vector j < n is
    /// (e_j; H*(h)e_j) and vector n+j is (0; q e_j). In block terms these
    /// are the columns of N with the off-diagonal blocks swapped; reading
    /// plain columns of N would make the first n of them (e_j; 0), which
    /// are not lattice members whenever h is nonzero mod q.
    pub fn basis_vectors(&self) -> Result<Vec<Vec<BigInt>>> {
        let n_mat = self.hnf_basis()?;
        Ok(Self::basis_vectors_of(&n_mat))
    }

    fn basis_vectors_of(n_mat: &ZMat) -> Vec<Vec<BigInt>> {
        let n = n_mat.rows() / 2;
        let mut out = Vec::with_capacity(2 * n);
        for j in 0..n {
            let mut v = Vec::with_capacity(2 * n);
            for i in 0..n {
                v.push(n_mat.entry(i, j).clone());
            }
            for i in 0..n {
                v.push(n_mat.entry(i, n + j).clone());
            }
            out.push(v);
        }
        for j in 0..n {
            let mut v = Vec::with_capacity(2 * n);
            for i in 0..n {
                v.push(n_mat.entry(n + i, j).clone());
            }
            for i in 0..n {
                v.push(n_mat.entry(n + i, n + j).clone());
            }
            out.push(v);
        }
        out
    }

    /// Verify the stored public basis; see [`ConvLattice::verify_basis_matrix`].
    pub fn verify_basis(&self) -> Result<BasisReport> {
        let n_mat = self.hnf_basis()?;
        self.verify_basis_matrix(&n_mat)
    }

    /// Check a candidate basis matrix against the lattice:
    /// (a) every basis vector it encodes is a lattice member;
    /// (b) every generator column of [H*(f); H*(g)], reduced mod q, is an
    ///     integer combination of the basis (block back-substitution,
    ///     which requires the I/0/qI frame blocks to be exact);
    /// (c) |det| = q^n.
    pub fn verify_basis_matrix(&self, candidate: &ZMat) -> Result<BasisReport> {
        let n = self.n();
        if candidate.rows() != 2 * n || candidate.cols() != 2 * n {
            return Err(Error::BadShape(format!(
                "expected a {s}x{s} matrix",
                s = 2 * n
            )));
        }

        // (a) encoded basis vectors are members
        let vectors = Self::basis_vectors_of(candidate);
        for (i, v) in vectors.iter().enumerate() {
            if !self.member(v)? {
                return Err(Error::VerificationFailed(format!(
                    "clause (a): basis vector {i} is not a lattice member"
                )));
            }
        }

        // (b) generators are integer combinations, by back-substitution
        let q = BigInt::from(self.q);
        for i in 0..n {
            for j in 0..n {
                let tl_ok = candidate.entry(i, j)
                    == &(if i == j { BigInt::one() } else { BigInt::zero() });
                let bl_ok = candidate.entry(n + i, j).is_zero();
                let br_ok = candidate.entry(n + i, n + j)
                    == &(if i == j { q.clone() } else { BigInt::zero() });
                if !(tl_ok && bl_ok && br_ok) {
                    return Err(Error::VerificationFailed(
                        "clause (b): frame blocks are not I / 0 / qI".into(),
                    ));
                }
            }
        }
        for col in 0..n {
            let alpha: Vec<BigInt> =
                (0..n).map(|i| self.hf.entry(i, col).mod_floor(&q)).collect();
            let beta: Vec<BigInt> =
                (0..n).map(|i| self.hg.entry(i, col).mod_floor(&q)).collect();
            // coefficient on basis vector j is alpha_j; the residue
            // beta - H*(h)·alpha must then be exactly divisible by q
            let mut image = vec![BigInt::zero(); n];
            for j in 0..n {
                if alpha[j].is_zero() {
                    continue;
                }
                for i in 0..n {
                    image[i] += candidate.entry(i, n + j) * &alpha[j];
                }
            }
            for i in 0..n {
                let residue = &beta[i] - &image[i];
                if !residue.mod_floor(&q).is_zero() {
                    return Err(Error::VerificationFailed(format!(
                        "clause (b): generator column {col} is not in the basis span"
                    )));
                }
            }
        }

        // (c) |det| = q^n
        let det = candidate.det()?;
        let expected = BigInt::from(self.q).pow(n as u32);
        if det.abs() != expected {
            return Err(Error::VerificationFailed(format!(
                "clause (c): |det| = {} but q^n = {expected}",
                det.abs()
            )));
        }

        Ok(BasisReport {
            basis_vectors_checked: vectors.len(),
            generators_checked: n,
            det_abs: det.abs(),
        })
    }
}

/// Successful basis verification: all three clauses held.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisReport {
    pub basis_vectors_checked: usize,
    pub generators_checked: usize,
    pub det_abs: BigInt,
}

/// Membership decided from public data alone: y = (alpha; beta) is a
/// member iff beta ≡ H*(h)·alpha (mod q). Valid whenever h came from an
/// invertible H*(f).
pub fn member_via_public(
    ctx: &IntPhiContext,
    h: &[BigInt],
    q: u64,
    y: &[BigInt],
) -> Result<bool> {
    let n = ctx.n();
    if y.len() != 2 * n {
        return Err(Error::DimensionMismatch { expected: 2 * n, got: y.len() });
    }
    let hh = ctx.ideal_matrix(h)?;
    let image = hh.matrix().mul_vec(&y[..n])?;
    let qq = BigInt::from(q);
    Ok(image
        .iter()
        .zip(&y[n..])
        .all(|(a, b)| (a - b).mod_floor(&qq).is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn worked_lattice() -> ConvLattice {
        let ctx = IntPhiContext::from_i64(&[1, 0]).unwrap();
        ConvLattice::new(&ctx, &bv(&[1, 3]), &bv(&[3, 0]), 29).unwrap()
    }

    #[test]
    fn public_vector_worked_example() {
        let lat = worked_lattice();
        assert_eq!(lat.public_vector().unwrap(), &bv(&[25, 12])[..]);
        assert!(lat.has_public_basis());
    }

    #[test]
    fn unit_f_gives_h_equal_g() {
        let ctx = IntPhiContext::from_i64(&[2, 1, 1]).unwrap();
        let g = bv(&[5, -2, 7]);
        let lat = ConvLattice::new(&ctx, &bv(&[1, 0, 0]), &g, 11).unwrap();
        let expect: Vec<BigInt> =
            g.iter().map(|v| v.mod_floor(&BigInt::from(11))).collect();
        assert_eq!(lat.public_vector().unwrap(), &expect[..]);
    }

    #[test]
    fn no_basis_when_not_invertible() {
        let ctx = IntPhiContext::from_i64(&[1, 0]).unwrap();
        let lat = ConvLattice::new(&ctx, &bv(&[1, 1]), &bv(&[2, 0]), 5).unwrap();
        assert!(!lat.has_public_basis());
        assert_eq!(lat.hnf_basis().unwrap_err(), Error::NotInvertibleModQ(5));
        // membership still decidable by brute force at this size
        assert!(lat.member(&bv(&[1, 1, 2, 0])).unwrap());
        assert!(lat.member(&bv(&[5, 0, 0, 0])).unwrap());
    }

    #[test]
    fn membership_examples() {
        let lat = worked_lattice();
        // (f; g) via x = e_1
        assert!(lat.member(&bv(&[1, 3, 3, 0])).unwrap());
        // q·e_i for every i
        for i in 0..4 {
            let mut y = vec![BigInt::zero(); 4];
            y[i] = BigInt::from(29);
            assert!(lat.member(&y).unwrap());
        }
        // (1,0,0,0): forced x = H*(f)^{-1}(1,0) = (18,4), but H*(g)x =
        // 3·(18,4) = (54,12) which is not ≡ (0,0)
        assert!(!lat.member(&bv(&[1, 0, 0, 0])).unwrap());
        assert_eq!(
            lat.member(&bv(&[1, 0])).unwrap_err(),
            Error::DimensionMismatch { expected: 4, got: 2 }
        );
    }

    #[test]
    fn sigma_examples() {
        let lat = worked_lattice();
        assert_eq!(lat.sigma_apply(&bv(&[1, 2, 3, 4])).unwrap(), bv(&[2, 1, 4, 3]));
        assert_eq!(lat.sigma_apply(&bv(&[0, 0, 0, 0])).unwrap(), bv(&[0, 0, 0, 0]));
        // sigma of members stays a member
        let members = [bv(&[1, 3, 3, 0]), bv(&[29, 0, 0, 0]), bv(&[2, 6, 6, 0])];
        for y in &members {
            assert!(lat.member(y).unwrap());
            assert!(lat.member(&lat.sigma_apply(y).unwrap()).unwrap());
        }
    }

    #[test]
    fn hnf_worked_example() {
        let lat = worked_lattice();
        let n = lat.hnf_basis().unwrap();
        let expect = ZMat::from_i64(&[
            &[1, 0, 25, 12],
            &[0, 1, 12, 25],
            &[0, 0, 29, 0],
            &[0, 0, 0, 29],
        ]);
        assert_eq!(n, expect);
        assert_eq!(n.det().unwrap(), BigInt::from(841));
        for v in lat.basis_vectors().unwrap() {
            assert!(lat.member(&v).unwrap());
        }
    }

    #[test]
    fn hnf_zero_g() {
        let ctx = IntPhiContext::from_i64(&[1, 0]).unwrap();
        let lat = ConvLattice::new(&ctx, &bv(&[1, 0]), &bv(&[0, 0]), 7).unwrap();
        let n = lat.hnf_basis().unwrap();
        let expect = ZMat::from_i64(&[
            &[1, 0, 0, 0],
            &[0, 1, 0, 0],
            &[0, 0, 7, 0],
            &[0, 0, 0, 7],
        ]);
        assert_eq!(n, expect);
        lat.verify_basis().unwrap();
    }

    #[test]
    fn verify_basis_passes_and_detects_tampering() {
        let lat = worked_lattice();
        let report = lat.verify_basis().unwrap();
        assert_eq!(report.basis_vectors_checked, 4);
        assert_eq!(report.generators_checked, 2);
        assert_eq!(report.det_abs, BigInt::from(841));

        let n = lat.hnf_basis().unwrap();
        for i in 0..4 {
            for j in 0..4 {
                for delta in [1i64, -1] {
                    let mut tampered = n.clone();
                    *tampered.entry_mut(i, j) += BigInt::from(delta);
                    assert!(
                        matches!(
                            lat.verify_basis_matrix(&tampered),
                            Err(Error::VerificationFailed(_))
                        ),
                        "tamper at ({i},{j}) by {delta} not detected"
                    );
                }
            }
        }
    }

    #[test]
    fn primary_membership_matches_bruteforce_small() {
        // q = 3, n = 2: exhaust all y in {-1,0,1}^4
        let ctx = IntPhiContext::from_i64(&[2, 1]).unwrap();
        let lat = ConvLattice::new(&ctx, &bv(&[2, 1]), &bv(&[0, 2]), 3).unwrap();
        assert!(lat.has_public_basis());
        let vals = [-1i64, 0, 1];
        for a in vals {
            for b in vals {
                for c in vals {
                    for d in vals {
                        let y = bv(&[a, b, c, d]);
                        let primary = lat.member(&y).unwrap();
                        let brute = lat
                            .member_bruteforce_internal(&y[..2].to_vec(), &y[2..].to_vec())
                            .unwrap();
                        assert_eq!(primary, brute, "y = ({a},{b},{c},{d})");
                    }
                }
            }
        }
    }

    #[test]
    fn member_via_public_agrees() {
        let lat = worked_lattice();
        let h = lat.public_vector().unwrap().to_vec();
        let cases = [
            bv(&[1, 3, 3, 0]),
            bv(&[1, 0, 0, 0]),
            bv(&[29, 0, 0, 0]),
            bv(&[4, -1, 17, 2]),
        ];
        for y in &cases {
            assert_eq!(
                member_via_public(lat.context(), &h, 29, y).unwrap(),
                lat.member(y).unwrap()
            );
        }
    }
}
