//! Implementation of the phicyclic command-line interface: JSON file
//! formats for keys and ciphertexts, flag parsing helpers, and one
//! function per subcommand. Every function returns the JSON document
//! the binary prints to stdout; file writes happen inside.
//!
//! Wire format rules: a single JSON document with "version": 1, every
//! integer serialized as a decimal JSON number while it fits in
//! [-(2^53 - 1), 2^53 - 1] and as a decimal string beyond that, vectors
//! as arrays ordered by coefficient index 0..n-1.

use std::fmt;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use phicyclic::field::Field;
use phicyclic::idealmat::IntPhiContext;
use phicyclic::ntru::{
    decrypt, encrypt, keygen, Ciphertext, NtruKeyPair, NtruParams, PlainVector,
};
use phicyclic::phicode::{ParitySource, PhiContext};
use phicyclic::poly::smallest_irreducible;
use phicyclic::qlattice::member_via_public;
use phicyclic::rng::SeedRng;
use phicyclic::Error as LibError;

/// Largest integer serialized as a bare JSON number. Anything bigger
/// goes out as a decimal string so consumers with double-precision
/// parsers never round.
pub const MAX_JSON_SAFE: i64 = (1 << 53) - 1;

/// Current file format version, written into and required of every file.
pub const FORMAT_VERSION: u32 = 1;

/// Arbitrary-precision integer with the number-or-string JSON encoding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WireInt(pub BigInt);

impl Serialize for WireInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if let Some(v) = self.0.to_i64() {
            if (-MAX_JSON_SAFE..=MAX_JSON_SAFE).contains(&v) {
                return s.serialize_i64(v);
            }
        }
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for WireInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct WireIntVisitor;
        impl<'de> Visitor<'de> for WireIntVisitor {
            type Value = WireInt;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "an integer or a decimal-string integer")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<WireInt, E> {
                Ok(WireInt(BigInt::from(v)))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<WireInt, E> {
                Ok(WireInt(BigInt::from(v)))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<WireInt, E> {
                v.parse::<BigInt>()
                    .map(WireInt)
                    .map_err(|_| E::custom(format!("not a decimal integer: {v:?}")))
            }
        }
        d.deserialize_any(WireIntVisitor)
    }
}

impl WireInt {
    pub fn from_i64(v: i64) -> WireInt {
        WireInt(BigInt::from(v))
    }

    pub fn to_u64(&self, what: &str) -> Result<u64> {
        self.0
            .to_u64()
            .ok_or_else(|| anyhow!("{what} = {} does not fit an unsigned 64-bit integer", self.0))
    }

    pub fn to_usize(&self, what: &str) -> Result<usize> {
        self.0
            .to_usize()
            .ok_or_else(|| anyhow!("{what} = {} is not a valid size", self.0))
    }
}

fn wire_vec(v: &[BigInt]) -> Vec<WireInt> {
    v.iter().map(|x| WireInt(x.clone())).collect()
}

fn bigint_vec(v: &[WireInt]) -> Vec<BigInt> {
    v.iter().map(|x| x.0.clone()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsBlock {
    pub n: WireInt,
    pub q: WireInt,
    pub p: WireInt,
    pub d_f: WireInt,
    pub a: Vec<WireInt>,
}

impl ParamsBlock {
    pub fn from_params(params: &NtruParams) -> ParamsBlock {
        ParamsBlock {
            n: WireInt(BigInt::from(params.n())),
            q: WireInt(BigInt::from(params.q())),
            p: WireInt(BigInt::from(params.p())),
            d_f: WireInt(BigInt::from(params.d_f())),
            a: wire_vec(params.a()),
        }
    }

    /// Revalidates from scratch, so a hand-edited file cannot smuggle in
    /// an inconsistent parameter set.
    pub fn to_params(&self) -> Result<NtruParams> {
        let n = self.n.to_usize("n")?;
        let q = self.q.to_u64("q")?;
        let p = self.p.to_u64("p")?;
        let d_f = self.d_f.to_usize("d_f")?;
        NtruParams::new(n, q, p, d_f, &bigint_vec(&self.a)).context("invalid params block")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PublicBlock {
    pub h: Vec<WireInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrivateBlock {
    pub f: Vec<WireInt>,
    pub g: Vec<WireInt>,
}

/// Key file. The public basis is fully determined by h and q, so only h
/// is stored; the private block appears only in private key files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KeyFile {
    pub version: u32,
    pub params: ParamsBlock,
    pub public: PublicBlock,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub private: Option<PrivateBlock>,
}

impl KeyFile {
    pub fn from_keypair(kp: &NtruKeyPair, include_private: bool) -> KeyFile {
        KeyFile {
            version: FORMAT_VERSION,
            params: ParamsBlock::from_params(kp.params()),
            public: PublicBlock {
                h: wire_vec(kp.public_h()),
            },
            private: include_private.then(|| PrivateBlock {
                f: wire_vec(kp.f()),
                g: wire_vec(kp.g()),
            }),
        }
    }

    pub fn params(&self) -> Result<NtruParams> {
        self.params.to_params()
    }

    pub fn public_h(&self) -> Vec<BigInt> {
        bigint_vec(&self.public.h)
    }

    /// Rebuilds the full keypair; requires the private block.
    pub fn keypair(&self) -> Result<NtruKeyPair> {
        let private = self
            .private
            .as_ref()
            .ok_or_else(|| anyhow!("key file has no private block"))?;
        let params = self.params()?;
        let kp = NtruKeyPair::from_parts(&params, bigint_vec(&private.f), bigint_vec(&private.g))
            .context("private block is not a valid key")?;
        if kp.public_h() != self.public_h().as_slice() {
            bail!("stored h does not match the private key");
        }
        Ok(kp)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CiphertextFile {
    pub version: u32,
    pub n: WireInt,
    pub q: WireInt,
    pub c: Vec<WireInt>,
}

impl CiphertextFile {
    pub fn from_ciphertext(ct: &Ciphertext) -> CiphertextFile {
        CiphertextFile {
            version: FORMAT_VERSION,
            n: WireInt(BigInt::from(ct.n())),
            q: WireInt(BigInt::from(ct.q())),
            c: wire_vec(ct.entries()),
        }
    }

    /// Validates the in-range invariant: every entry must lie in [0, q).
    pub fn to_ciphertext(&self) -> Result<Ciphertext> {
        let n = self.n.to_usize("n")?;
        let q = self.q.to_u64("q")?;
        let qq = BigInt::from(q);
        let c = bigint_vec(&self.c);
        for (i, entry) in c.iter().enumerate() {
            if entry.is_negative() || *entry >= qq {
                bail!("c[{i}] = {entry} is out of range [0, {q})");
            }
        }
        Ok(Ciphertext::from_raw(n, q, c)?)
    }
}

/// Pretty-printed JSON with keys in sorted order and a trailing
/// newline; the byte-exact content of every file the CLI writes, and of
/// every document it prints. Canonicalizing through [`Value`] keeps the
/// two routes identical.
pub fn to_json_bytes<T: Serialize>(value: &T) -> Result<Vec<u8>> {
    let canonical = serde_json::to_value(value)?;
    let mut bytes = serde_json::to_vec_pretty(&canonical)?;
    bytes.push(b'\n');
    Ok(bytes)
}

pub fn write_json_file<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    std::fs::write(path, to_json_bytes(value)?)
        .with_context(|| format!("cannot write {}", path.display()))
}

fn read_json_file<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let bytes =
        std::fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_slice(&bytes).with_context(|| format!("cannot parse {}", path.display()))
}

fn check_version(version: u32, path: &Path) -> Result<()> {
    if version != FORMAT_VERSION {
        bail!(
            "{} has format version {version}, this build reads version {FORMAT_VERSION}",
            path.display()
        );
    }
    Ok(())
}

pub fn read_key_file(path: &Path) -> Result<KeyFile> {
    let file: KeyFile = read_json_file(path)?;
    check_version(file.version, path)?;
    Ok(file)
}

pub fn read_ciphertext_file(path: &Path) -> Result<CiphertextFile> {
    let file: CiphertextFile = read_json_file(path)?;
    check_version(file.version, path)?;
    Ok(file)
}

/// Comma-separated signed integers, e.g. "1,0,-3".
pub fn parse_csv_i64(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<i64>()
                .with_context(|| format!("not an integer: {:?}", part.trim()))
        })
        .collect()
}

/// Comma-separated unsigned integers, used for field-element indices.
pub fn parse_csv_u128(s: &str) -> Result<Vec<u128>> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<u128>()
                .with_context(|| format!("not an unsigned integer: {:?}", part.trim()))
        })
        .collect()
}

/// JSON array of integers (numbers, or decimal strings for big values).
pub fn parse_json_int_array(s: &str) -> Result<Vec<BigInt>> {
    let v: Vec<WireInt> =
        serde_json::from_str(s).with_context(|| format!("not a JSON integer array: {s:?}"))?;
    Ok(bigint_vec(&v))
}

fn parse_json_i64_array(s: &str) -> Result<Vec<i64>> {
    parse_json_int_array(s)?
        .iter()
        .map(|v| {
            v.to_i64()
                .ok_or_else(|| anyhow!("entry {v} does not fit a signed 64-bit integer"))
        })
        .collect()
}

/// Factors q as p^e for prime p, the only orders finite fields have.
fn prime_power_split(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        bail!("field order must be at least 2, got {q}");
    }
    let mut p = q;
    for d in 2..=q {
        if d.saturating_mul(d) > q {
            break;
        }
        if q % d == 0 {
            p = d;
            break;
        }
    }
    let mut rest = q;
    let mut e = 0u32;
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    if rest != 1 {
        bail!("field order {q} is not a prime power");
    }
    Ok((p, e))
}

/// The field with q elements: F_p for prime q, otherwise the extension
/// of F_p by the smallest irreducible polynomial of the right degree
/// (see [`smallest_irreducible`] for the ordering), so every run picks
/// the same model of F_q.
pub fn field_for_order(q: u64) -> Result<Field> {
    let (p, e) = prime_power_split(q)?;
    let base = Field::prime(p)?;
    if e == 1 {
        return Ok(base);
    }
    let modulus = smallest_irreducible(&base, e as usize)?;
    Ok(Field::extension(&base, &modulus)?)
}

fn parity_source_name(source: ParitySource) -> &'static str {
    match source {
        ParitySource::CofactorShifts => "cofactor_shifts",
        ParitySource::KernelBasis => "kernel_basis",
    }
}

/// Lists every code of the ambient ring: one per monic divisor of phi,
/// with dimension, the parity-check construction that was kept, and the
/// minimum distance when the codeword scan is feasible.
pub fn cmd_code_analyze(q: u64, a_csv: &str) -> Result<Value> {
    let field = field_for_order(q)?;
    let indices = parse_csv_u128(a_csv)?;
    if indices.first().map_or(true, |&i| i == 0) {
        bail!("a_0 must be nonzero");
    }
    let a = indices
        .iter()
        .map(|&i| Ok(field.from_index(i)?))
        .collect::<Result<Vec<_>>>()
        .context("a entries are canonical field-element indices")?;
    let ctx = PhiContext::new(&field, a)?;
    let codes = ctx.enumerate_codes()?;
    let mut reports = Vec::with_capacity(codes.len());
    for code in &codes {
        let min_distance = match code.min_distance() {
            Ok(d) => Some(d),
            Err(LibError::TooLarge(_)) | Err(LibError::TrivialCode) => None,
            Err(e) => return Err(e.into()),
        };
        reports.push(json!({
            "generator": code.generator_poly().to_string(),
            "dimension": code.dimension(),
            "parity_source": parity_source_name(code.parity_source()),
            "min_distance": min_distance,
        }));
    }
    Ok(json!({
        "field_order": WireInt(BigInt::from(q)),
        "n": ctx.n(),
        "phi": ctx.phi().to_string(),
        "code_count": codes.len(),
        "codes": reports,
    }))
}

/// Deterministic seeded keygen; writes the private and public key files
/// and reports h.
pub fn cmd_keygen(
    n: usize,
    q: u64,
    p: u64,
    d_f: usize,
    a_csv: &str,
    seed: u64,
    out_priv: &Path,
    out_pub: &Path,
) -> Result<Value> {
    let a = parse_csv_i64(a_csv)?;
    let params = NtruParams::from_i64(n, q, p, d_f, &a)?;
    let mut rng = SeedRng::new(seed);
    let kp = keygen(&params, &mut rng)?;
    write_json_file(out_priv, &KeyFile::from_keypair(&kp, true))?;
    write_json_file(out_pub, &KeyFile::from_keypair(&kp, false))?;
    Ok(json!({
        "h": wire_vec(kp.public_h()),
        "private_file": out_priv.display().to_string(),
        "public_file": out_pub.display().to_string(),
    }))
}

/// Encrypts m under the key file's public data. r comes from --r or is
/// drawn from --seed, exactly one of which must be given. The returned
/// document is byte-identical to the file --out writes.
pub fn cmd_encrypt(
    pub_path: &Path,
    m_json: &str,
    r_json: Option<&str>,
    seed: Option<u64>,
    out: Option<&Path>,
) -> Result<Value> {
    let key = read_key_file(pub_path)?;
    let params = key.params()?;
    let m = PlainVector::new(&params, &parse_json_i64_array(m_json)?)?;
    let r = match (r_json, seed) {
        (Some(r), None) => PlainVector::new(&params, &parse_json_i64_array(r)?)?,
        (None, Some(seed)) => PlainVector::sample(&params, &mut SeedRng::new(seed))?,
        _ => bail!("give exactly one of --r and --seed"),
    };
    let ct = encrypt(&params, &key.public_h(), &m, &r)?;
    let file = CiphertextFile::from_ciphertext(&ct);
    if let Some(path) = out {
        write_json_file(path, &file)?;
    }
    Ok(serde_json::to_value(&file)?)
}

/// Decrypts and reports the observed margin: the centered vector
/// H*(f) c mod q, its largest absolute entry, and the wrap bound q/2.
/// A decrypted vector that fails the ternary support check flips
/// support_ok and warns on stderr; that is a diagnostic, not an error.
pub fn cmd_decrypt(priv_path: &Path, ct_path: &Path) -> Result<Value> {
    let key = read_key_file(priv_path)?;
    let kp = key.keypair()?;
    let params = kp.params();
    let file = read_ciphertext_file(ct_path)?;
    let ct = file.to_ciphertext()?;
    if ct.n() != params.n() || ct.q() != params.q() {
        bail!(
            "ciphertext is for (n, q) = ({}, {}), key has ({}, {})",
            ct.n(),
            ct.q(),
            params.n(),
            params.q()
        );
    }
    let m = decrypt(&kp, &ct)?;
    let support_ok = PlainVector::new(params, &m).is_ok();
    if !support_ok {
        eprintln!(
            "warning: decrypted vector fails the support check; wrong key or corrupted ciphertext"
        );
    }
    let centered: Vec<BigInt> = kp
        .lattice()
        .hf()
        .mul_vec(ct.entries())?
        .iter()
        .map(|v| phicyclic::matrix::center_mod(v, params.q()))
        .collect();
    let max_abs = centered
        .iter()
        .map(|v| v.abs())
        .max()
        .unwrap_or_else(BigInt::zero);
    Ok(json!({
        "m": m,
        "support_ok": support_ok,
        "margin": {
            "centered": wire_vec(&centered),
            "max_abs": WireInt(max_abs),
            "bound": params.q() as f64 / 2.0,
        },
    }))
}

/// Membership of a 2n-vector in the key's q-ary lattice. A private key
/// decides through the secret block; a public key decides through h.
pub fn cmd_lattice_check(key_path: &Path, vector_json: &str) -> Result<Value> {
    let key = read_key_file(key_path)?;
    let y = parse_json_int_array(vector_json)?;
    let (member, mode) = if key.private.is_some() {
        let kp = key.keypair()?;
        (kp.lattice().member(&y)?, "private")
    } else {
        let params = key.params()?;
        (
            member_via_public(params.context(), &key.public_h(), params.q(), &y)?,
            "public",
        )
    };
    Ok(json!({ "member": member, "mode": mode }))
}

/// Prints H*(f) with its determinant, and invertibility mod q when a
/// modulus is given.
pub fn cmd_idealmat(a_csv: &str, f_csv: &str, q: Option<u64>) -> Result<Value> {
    let a: Vec<BigInt> = parse_csv_i64(a_csv)?.iter().map(|&v| BigInt::from(v)).collect();
    let f: Vec<BigInt> = parse_csv_i64(f_csv)?.iter().map(|&v| BigInt::from(v)).collect();
    let ctx = IntPhiContext::new(a)?;
    let mat = ctx.ideal_matrix(&f)?;
    let det = mat.det()?;
    let rows: Vec<Vec<WireInt>> = (0..mat.matrix().rows())
        .map(|i| wire_vec(mat.matrix().row(i)))
        .collect();
    let mut out = json!({
        "n": ctx.n(),
        "matrix": rows,
        "det": WireInt(det),
    });
    if let Some(q) = q {
        let invertible = match mat.inverse_mod(q) {
            Ok(_) => true,
            Err(LibError::NotInvertibleModQ(_)) => false,
            Err(e) => return Err(e.into()),
        };
        out["q"] = json!(q);
        out["invertible"] = json!(invertible);
    }
    Ok(out)
}
