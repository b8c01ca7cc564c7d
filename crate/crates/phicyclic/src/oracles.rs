//! Brute-force reference implementations for tests and acceptance runs.
//! Each oracle recomputes its answer by the most naive route available
//! (exhaustive scans, cofactor expansion, float root finding) and shares
//! no nontrivial logic with the code it cross-checks, so agreement is
//! evidence rather than tautology. Everything here is capped by explicit
//! size bounds and unusable at production scale by design.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::idealmat::IntPhiContext;
use crate::matrix::ZMat;
use crate::phicode::{PhiContext, PhiCyclicCode};
use crate::poly::{monic_polys_of_degree, FPoly};
use crate::qlattice::ConvLattice;

/// One oracle comparison; the flag restates expected == actual and
/// nothing else.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub case: String,
    pub expected: String,
    pub actual: String,
    pub agrees: bool,
}

impl OracleReport {
    pub fn compare(case: impl Into<String>, expected: impl ToString, actual: impl ToString) -> OracleReport {
        let expected = expected.to_string();
        let actual = actual.to_string();
        let agrees = expected == actual;
        OracleReport {
            case: case.into(),
            expected,
            actual,
            agrees,
        }
    }
}

/// A code as a plain set: the sorted list of its codewords, each stored
/// as canonical element indices. Comparable across implementations.
pub type CodeSet = Vec<Vec<u128>>;

pub const DEFAULT_IDEAL_SCAN_BOUND: u128 = 81;

/// All subspaces of F_q^n closed under the context's transform, found by
/// enumerating every reduced-row-echelon generator matrix (each subspace
/// appears for exactly one), spanning it, and testing closure directly
/// on the defining recurrence. Sorted and deduplicated.
pub fn enumerate_ideals_bruteforce(ctx: &PhiContext) -> Result<Vec<CodeSet>> {
    enumerate_ideals_bruteforce_bounded(ctx, DEFAULT_IDEAL_SCAN_BOUND)
}

pub fn enumerate_ideals_bruteforce_bounded(ctx: &PhiContext, bound: u128) -> Result<Vec<CodeSet>> {
    let n = ctx.n();
    let field = ctx.field();
    let order = field.order();
    let mut space = 1u128;
    for _ in 0..n {
        space = space
            .checked_mul(order)
            .filter(|&s| s <= bound)
            .ok_or_else(|| Error::TooLarge(format!("q^n exceeds the scan bound {bound}")))?;
    }
    let elements: Vec<FieldElement> = field.elements().collect();

    let mut family: BTreeSet<CodeSet> = BTreeSet::new();
    for mask in 0u32..(1 << n) {
        let pivots: Vec<usize> = (0..n).filter(|&j| mask & (1 << j) != 0).collect();
        let k = pivots.len();
        // free slots of the echelon form: row i may hold anything at
        // non-pivot columns right of its pivot
        let mut slots: Vec<(usize, usize)> = Vec::new();
        for (i, &p) in pivots.iter().enumerate() {
            for j in (p + 1)..n {
                if !pivots.contains(&j) {
                    slots.push((i, j));
                }
            }
        }
        let mut fill = vec![0usize; slots.len()];
        loop {
            let mut rows = vec![vec![field.zero(); n]; k];
            for (i, &p) in pivots.iter().enumerate() {
                rows[i][p] = field.one();
            }
            for (s, &(i, j)) in slots.iter().enumerate() {
                rows[i][j] = elements[fill[s]].clone();
            }
            let span = span_of(field, &elements, &rows, n)?;
            if is_tau_closed(ctx, &span)? {
                family.insert(span.into_iter().collect());
            }

            // odometer over the free slots
            let mut carry = true;
            for digit in fill.iter_mut() {
                *digit += 1;
                if *digit < elements.len() {
                    carry = false;
                    break;
                }
                *digit = 0;
            }
            if carry {
                break;
            }
        }
    }
    Ok(family.into_iter().collect())
}

/// Every linear combination of the rows, as canonical index vectors.
fn span_of(
    field: &Field,
    elements: &[FieldElement],
    rows: &[Vec<FieldElement>],
    n: usize,
) -> Result<BTreeSet<Vec<u128>>> {
    let k = rows.len();
    let mut out = BTreeSet::new();
    let mut message = vec![0usize; k];
    loop {
        let mut word = vec![field.zero(); n];
        for (i, row) in rows.iter().enumerate() {
            if message[i] == 0 {
                continue;
            }
            let scalar = &elements[message[i]];
            for (w, r) in word.iter_mut().zip(row) {
                *w = w.add(&scalar.mul(r)?)?;
            }
        }
        out.insert(word.iter().map(|e| e.canonical_index()).collect());
        let mut carry = true;
        for digit in message.iter_mut() {
            *digit += 1;
            if *digit < elements.len() {
                carry = false;
                break;
            }
            *digit = 0;
        }
        if carry {
            break;
        }
    }
    Ok(out)
}

/// Closure test straight from the recurrence: the image of c is
/// (a_0 c_{n-1}, c_0 + a_1 c_{n-1}, ..., c_{n-2} + a_{n-1} c_{n-1}).
fn is_tau_closed(ctx: &PhiContext, span: &BTreeSet<Vec<u128>>) -> Result<bool> {
    let field = ctx.field();
    let n = ctx.n();
    let a = ctx.a();
    for word in span {
        let c: Vec<FieldElement> = word
            .iter()
            .map(|&idx| field.from_index(idx))
            .collect::<Result<_>>()?;
        let last = &c[n - 1];
        let mut image = Vec::with_capacity(n);
        image.push(a[0].mul(last)?);
        for i in 1..n {
            image.push(c[i - 1].add(&a[i].mul(last)?)?);
        }
        let image_idx: Vec<u128> = image.iter().map(|e| e.canonical_index()).collect();
        if !span.contains(&image_idx) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub const DEFAULT_MESSAGE_SCAN_BOUND: u128 = 1_000_000;

/// Minimum weight by scanning every nonzero message polynomial b and
/// weighing the product b * g directly; no matrix in sight.
pub fn min_distance_oracle(code: &PhiCyclicCode) -> Result<usize> {
    min_distance_oracle_bounded(code, DEFAULT_MESSAGE_SCAN_BOUND)
}

pub fn min_distance_oracle_bounded(code: &PhiCyclicCode, bound: u128) -> Result<usize> {
    let k = code.dimension();
    if k == 0 {
        return Err(Error::TrivialCode);
    }
    let field = code.context().field();
    let order = field.order();
    let mut count = 1u128;
    for _ in 0..k {
        count = count
            .checked_mul(order)
            .filter(|&c| c <= bound)
            .ok_or_else(|| Error::TooLarge(format!("q^k exceeds the scan bound {bound}")))?;
    }
    let g = code.generator_poly();
    let mut best = usize::MAX;
    for idx in 1..count {
        let mut rest = idx;
        let mut coeffs = Vec::with_capacity(k);
        for _ in 0..k {
            coeffs.push(field.from_index(rest % order)?);
            rest /= order;
        }
        let b = FPoly::from_coeffs(field, coeffs);
        let weight = b.mul(g).coeffs().iter().filter(|c| !c.is_zero()).count();
        best = best.min(weight);
    }
    Ok(best)
}

pub const DEFAULT_LATTICE_SCAN_BOUND: u128 = 1_000_000;

/// Membership by trying every x in Z_q^n against both generator blocks.
pub fn lattice_member_bruteforce(lat: &ConvLattice, y: &[BigInt]) -> Result<bool> {
    let n = lat.n();
    let q = lat.q();
    if y.len() != 2 * n {
        return Err(Error::DimensionMismatch { expected: 2 * n, got: y.len() });
    }
    let mut space = 1u128;
    for _ in 0..n {
        space = space
            .checked_mul(q as u128)
            .filter(|&s| s <= DEFAULT_LATTICE_SCAN_BOUND)
            .ok_or_else(|| {
                Error::TooLarge(format!(
                    "q^n exceeds the scan bound {DEFAULT_LATTICE_SCAN_BOUND}"
                ))
            })?;
    }
    let qq = BigInt::from(q);
    for idx in 0..space {
        let mut rest = idx;
        let mut x = Vec::with_capacity(n);
        for _ in 0..n {
            x.push(BigInt::from((rest % q as u128) as u64));
            rest /= q as u128;
        }
        let top = lat.hf().mul_vec(&x)?;
        let bottom = lat.hg().mul_vec(&x)?;
        let hit = top
            .iter()
            .chain(&bottom)
            .zip(y)
            .all(|(lhs, rhs)| (lhs - rhs).mod_floor(&qq).is_zero());
        if hit {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Determinant by first-row cofactor expansion, exact and exponential.
pub fn det_oracle(m: &ZMat) -> Result<BigInt> {
    if m.rows() != m.cols() {
        return Err(Error::BadShape("determinant of a non-square matrix".into()));
    }
    Ok(det_cofactor(m, &(0..m.rows()).collect::<Vec<_>>()))
}

fn det_cofactor(m: &ZMat, cols: &[usize]) -> BigInt {
    let row = m.rows() - cols.len();
    if cols.is_empty() {
        return BigInt::from(1);
    }
    let mut acc = BigInt::zero();
    for (i, &c) in cols.iter().enumerate() {
        let entry = m.entry(row, c);
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols
            .iter()
            .copied()
            .filter(|&other| other != c)
            .collect();
        let term = entry * det_cofactor(m, &rest);
        if i % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Pinned Durand-Kerner settings; changing any of these changes which
/// cases count as well conditioned, so they are constants, not knobs.
pub const ROOT_ITER_LIMIT: usize = 500;
pub const ROOT_CONVERGENCE: f64 = 1e-10;
pub const MIN_ROOT_SEPARATION: f64 = 1e-3;

#[derive(Clone, Debug)]
pub struct RootProductReport {
    pub roots: Vec<Complex64>,
    /// Product of f evaluated at every float root of phi.
    pub product: Complex64,
    /// Exact determinant of the ideal matrix of f, the value the float
    /// product approximates when phi is separable.
    pub reference: BigInt,
    pub relative_error: f64,
    pub converged: bool,
    /// Roots pairwise separated by at least [`MIN_ROOT_SEPARATION`];
    /// agreement is only meaningful on well-conditioned cases.
    pub well_conditioned: bool,
    pub agrees: bool,
}

/// Numerically checks the diagonalization identity: the float product
/// of f over the roots of phi against the exact integer determinant.
pub fn root_product_check(
    ctx: &IntPhiContext,
    f: &[BigInt],
    tolerance: f64,
) -> Result<RootProductReport> {
    let reference = ctx.ideal_matrix(f)?.det()?;
    let phi: Vec<f64> = ctx
        .phi()
        .coeffs()
        .iter()
        .map(|c| c.to_f64().ok_or_else(|| Error::TooLarge("coefficient exceeds f64".into())))
        .collect::<Result<_>>()?;
    let (roots, converged) = durand_kerner(&phi);

    let mut separation = f64::INFINITY;
    for i in 0..roots.len() {
        for j in (i + 1)..roots.len() {
            separation = separation.min((roots[i] - roots[j]).norm());
        }
    }
    let well_conditioned = converged && separation >= MIN_ROOT_SEPARATION;

    let mut product = Complex64::new(1.0, 0.0);
    for w in &roots {
        let mut value = Complex64::new(0.0, 0.0);
        for c in f.iter().rev() {
            value = value * w + Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
        }
        product *= value;
    }

    let ref_f64 = reference.to_f64().unwrap_or(f64::NAN);
    let relative_error = (product.re - ref_f64).hypot(product.im).abs() / ref_f64.abs().max(1.0);
    let agrees = converged && relative_error <= tolerance;
    Ok(RootProductReport {
        roots,
        product,
        reference,
        relative_error,
        converged,
        well_conditioned,
        agrees,
    })
}

/// All complex roots of a monic real polynomial given by its full
/// coefficient vector (constant first, leading 1 last).
fn durand_kerner(coeffs: &[f64]) -> (Vec<Complex64>, bool) {
    let n = coeffs.len() - 1;
    if n == 0 {
        return (Vec::new(), true);
    }
    let eval = |z: Complex64| {
        let mut v = Complex64::new(0.0, 0.0);
        for &c in coeffs.iter().rev() {
            v = v * z + c;
        }
        v
    };
    let radius = 1.0
        + coeffs[..n]
            .iter()
            .fold(0.0f64, |acc, &c| acc.max(c.abs()));
    let direction = Complex64::new(0.4, 0.9) / Complex64::new(0.4, 0.9).norm();
    let mut roots: Vec<Complex64> = (0..n)
        .map(|k| direction.powu(k as u32 + 1) * radius)
        .collect();
    for _ in 0..ROOT_ITER_LIMIT {
        let mut max_step = 0.0f64;
        for k in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if j != k {
                    denom *= roots[k] - roots[j];
                }
            }
            if denom.norm() == 0.0 {
                continue;
            }
            let step = eval(roots[k]) / denom;
            roots[k] -= step;
            max_step = max_step.max(step.norm());
        }
        if max_step < ROOT_CONVERGENCE {
            return (roots, true);
        }
    }
    (roots, false)
}

/// Irreducible count by scanning every monic polynomial of the degree
/// and trial-dividing by every lower-degree monic candidate.
pub fn count_irreducible_bruteforce(field: &Field, degree: usize) -> Result<BigInt> {
    if degree == 0 {
        return Err(Error::InvalidArgument("degree must be positive".into()));
    }
    let mut divisor_pool: Vec<FPoly> = Vec::new();
    for d in 1..=degree / 2 {
        divisor_pool.extend(monic_polys_of_degree(field, d));
    }
    let mut count = 0u64;
    'candidates: for p in monic_polys_of_degree(field, degree) {
        for d in &divisor_pool {
            let (_, r) = p.divmod(d)?;
            if r.is_zero() {
                continue 'candidates;
            }
        }
        count += 1;
    }
    Ok(BigInt::from(count))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::count_irreducible;
    use num_traits::One;

    fn bv(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn report_flag_restates_equality() {
        let r = OracleReport::compare("case", 4, 4);
        assert!(r.agrees);
        let r = OracleReport::compare("case", 4, 5);
        assert!(!r.agrees);
    }

    #[test]
    fn ideal_scan_f3_circulant() {
        let field = Field::prime(3).unwrap();
        let ctx = PhiContext::from_u64(&field, &[1, 0]).unwrap();
        let family = enumerate_ideals_bruteforce(&ctx).unwrap();
        assert_eq!(family.len(), 4);
        // {0} and the full space are always present
        let zero: CodeSet = vec![vec![0, 0]];
        assert!(family.contains(&zero));
        assert!(family.iter().any(|set| set.len() == 9));
    }

    #[test]
    fn ideal_scan_f2_irreducible_phi() {
        let field = Field::prime(2).unwrap();
        let ctx = PhiContext::from_u64(&field, &[1, 1]).unwrap();
        let family = enumerate_ideals_bruteforce(&ctx).unwrap();
        assert_eq!(family.len(), 2);
    }

    #[test]
    fn ideal_scan_matches_divisor_enumeration() {
        let field = Field::prime(2).unwrap();
        for a in [[1u64, 0, 0], [1, 1, 0], [1, 0, 1], [1, 1, 1]] {
            let ctx = PhiContext::from_u64(&field, &a).unwrap();
            let scanned = enumerate_ideals_bruteforce(&ctx).unwrap();
            let enumerated = ctx.enumerate_codes().unwrap();
            assert_eq!(scanned.len(), enumerated.len(), "a = {a:?}");
            // same sets, not just same count
            let mut from_codes: Vec<CodeSet> = Vec::new();
            for code in &enumerated {
                let mut set: CodeSet = code
                    .codewords_bounded(1 << 16)
                    .unwrap()
                    .iter()
                    .map(|w| w.iter().map(|e| e.canonical_index()).collect())
                    .collect();
                set.sort();
                from_codes.push(set);
            }
            from_codes.sort();
            assert_eq!(scanned, from_codes, "a = {a:?}");
        }
    }

    #[test]
    fn ideal_scan_bound() {
        let field = Field::prime(3).unwrap();
        let ctx = PhiContext::from_u64(&field, &[1, 0, 0, 0, 0]).unwrap();
        assert!(matches!(
            enumerate_ideals_bruteforce(&ctx),
            Err(Error::TooLarge(_))
        ));
    }

    #[test]
    fn min_distance_oracle_examples() {
        let field = Field::prime(3).unwrap();
        let ctx = PhiContext::from_u64(&field, &[1, 0]).unwrap();
        // constant code: g = x + 1 has cofactor x + 2, dim 1
        let g = FPoly::from_u64_coeffs(&field, &[1, 1]);
        let code = PhiCyclicCode::new(&ctx, &g).unwrap();
        assert_eq!(min_distance_oracle(&code).unwrap(), 2);
        // full space
        let one = FPoly::one(&field);
        let full = PhiCyclicCode::new(&ctx, &one).unwrap();
        assert_eq!(min_distance_oracle(&full).unwrap(), 1);
        // zero-dimensional
        let trivial = PhiCyclicCode::new(&ctx, ctx.phi()).unwrap();
        assert!(matches!(
            min_distance_oracle(&trivial),
            Err(Error::TrivialCode)
        ));
    }

    #[test]
    fn min_distance_oracle_agrees_with_primary() {
        let field = Field::prime(3).unwrap();
        let ctx = PhiContext::from_u64(&field, &[2, 1, 1]).unwrap();
        for g in ctx.phi().monic_divisors().unwrap() {
            if g.degree() == Some(ctx.n()) {
                continue;
            }
            let code = PhiCyclicCode::new(&ctx, &g).unwrap();
            assert_eq!(
                min_distance_oracle(&code).unwrap(),
                code.min_distance().unwrap(),
                "g = {g}"
            );
        }
    }

    #[test]
    fn lattice_scan_examples() {
        let ctx = IntPhiContext::from_i64(&[1, 0]).unwrap();
        let lat = ConvLattice::new(&ctx, &bv(&[1, 3]), &bv(&[3, 0]), 29).unwrap();
        assert!(lattice_member_bruteforce(&lat, &bv(&[1, 3, 3, 0])).unwrap());
        assert!(lattice_member_bruteforce(&lat, &bv(&[29, 0, 0, 0])).unwrap());
        assert!(!lattice_member_bruteforce(&lat, &bv(&[1, 0, 0, 0])).unwrap());
    }

    #[test]
    fn lattice_scan_agrees_with_primary() {
        let ctx = IntPhiContext::from_i64(&[2, 1]).unwrap();
        let lat = ConvLattice::new(&ctx, &bv(&[2, 1]), &bv(&[0, 2]), 3).unwrap();
        let vals = [-1i64, 0, 1];
        for a in vals {
            for b in vals {
                for c in vals {
                    for d in vals {
                        let y = bv(&[a, b, c, d]);
                        assert_eq!(
                            lattice_member_bruteforce(&lat, &y).unwrap(),
                            lat.member(&y).unwrap(),
                            "y = ({a},{b},{c},{d})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn lattice_scan_bound() {
        let ctx = IntPhiContext::from_i64(&[1, 0, 0, 0, 0, 0, 0]).unwrap();
        let f = bv(&[1, 0, 0, 0, 0, 0, 0]);
        let lat = ConvLattice::new(&ctx, &f, &f, 29).unwrap();
        let y = bv(&[0; 14]);
        assert!(matches!(
            lattice_member_bruteforce(&lat, &y),
            Err(Error::TooLarge(_))
        ));
    }

    #[test]
    fn det_oracle_examples() {
        assert_eq!(det_oracle(&ZMat::identity(3)).unwrap(), BigInt::one());
        let m = ZMat::from_i64(&[&[1, 3], &[3, 1]]);
        assert_eq!(det_oracle(&m).unwrap(), BigInt::from(-8));
        let singular = ZMat::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(det_oracle(&singular).unwrap(), BigInt::zero());
        let empty = ZMat::zero(0, 0);
        assert_eq!(det_oracle(&empty).unwrap(), BigInt::one());
        let rect = ZMat::zero(2, 3);
        assert!(matches!(det_oracle(&rect), Err(Error::BadShape(_))));
    }

    #[test]
    fn det_oracle_agrees_with_bareiss() {
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) as i64 % 19) - 9
        };
        for n in 1..=5usize {
            for _ in 0..20 {
                let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| next()).collect()).collect();
                let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
                let m = ZMat::from_i64(&refs);
                assert_eq!(det_oracle(&m).unwrap(), m.det().unwrap());
            }
        }
    }

    #[test]
    fn root_product_pinned_examples() {
        let ctx = IntPhiContext::from_i64(&[1, 0]).unwrap();
        let r = root_product_check(&ctx, &bv(&[3, 1]), 1e-6).unwrap();
        assert!(r.converged && r.well_conditioned);
        assert_eq!(r.reference, BigInt::from(8));
        assert!((r.product.re - 8.0).abs() < 1e-6, "product = {}", r.product);
        assert!(r.agrees);

        let identity = root_product_check(&ctx, &bv(&[1, 0]), 1e-6).unwrap();
        assert_eq!(identity.reference, BigInt::one());
        assert!((identity.product.re - 1.0).abs() < 1e-6);

        let zero = root_product_check(&ctx, &bv(&[0, 0]), 1e-6).unwrap();
        assert_eq!(zero.reference, BigInt::zero());
        assert!(zero.product.norm() < 1e-6);
    }

    #[test]
    fn root_product_flags_repeated_roots() {
        // phi = (x - 1)^2: roots collide, case is not well conditioned
        let ctx = IntPhiContext::from_i64(&[-1, 2]).unwrap();
        let r = root_product_check(&ctx, &bv(&[3, 1]), 1e-6).unwrap();
        assert!(!r.well_conditioned);
    }

    #[test]
    fn root_product_degree_one() {
        let ctx = IntPhiContext::from_i64(&[5]).unwrap();
        let r = root_product_check(&ctx, &bv(&[2]), 1e-6).unwrap();
        assert!(r.well_conditioned);
        assert_eq!(r.reference, BigInt::from(2));
        assert!(r.agrees);
    }

    #[test]
    fn irreducible_scan_matches_formula() {
        for q in [2u64, 3] {
            let field = Field::prime(q).unwrap();
            for m in 1..=4usize {
                let scanned = count_irreducible_bruteforce(&field, m).unwrap();
                let formula = count_irreducible(q, m as u32).unwrap();
                assert_eq!(scanned, formula, "q = {q}, m = {m}");
            }
        }
        assert_eq!(
            count_irreducible_bruteforce(&Field::prime(2).unwrap(), 3).unwrap(),
            BigInt::from(2)
        );
    }

    #[test]
    fn sylvester_and_cofactor_routes_agree() {
        use crate::poly::ZPoly;
        let cases: [(&[i64], &[i64]); 3] =
            [(&[-1, 0, 1], &[3, 1]), (&[2, -1, 3], &[5, 4, 1]), (&[1, 1, 1, 1], &[-2, 7])];
        for (pa, pb) in cases {
            let a = ZPoly::from_i64(pa);
            let b = ZPoly::from_i64(pb);
            let res = a.resultant(&b).unwrap();
            let n = pa.len() - 1;
            let m = pb.len() - 1;
            let mut syl = ZMat::zero(n + m, n + m);
            for i in 0..m {
                for (j, c) in a.coeffs().iter().enumerate() {
                    *syl.entry_mut(i, i + n - j) += c;
                }
            }
            for i in 0..n {
                for (j, c) in b.coeffs().iter().enumerate() {
                    *syl.entry_mut(m + i, i + m - j) += c;
                }
            }
            assert_eq!(det_oracle(&syl).unwrap(), res, "a = {a}, b = {b}");
        }
    }
}
