//! Table-backed arithmetic in GF(p^m) for p^m <= 2^20.
//!
//! Elements are stored in coefficient form: the integer `sum c_i p^i` for the
//! residue `sum c_i x^i` modulo the field modulus. Multiplication goes through
//! discrete-log tables relative to a primitive generator; addition is XOR in
//! characteristic 2 and a Zech-logarithm lookup otherwise.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::params::is_prime;

/// Largest supported field size.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

/// Environment variable naming an alternative modulus data file.
pub const MODULI_ENV: &str = "DLCURVE_MODULI";

const BUNDLED_MODULI: &str = include_str!("../data/moduli.txt");

const ZECH_ZERO: u32 = u32::MAX;

/// A field element in coefficient encoding. Only meaningful together with the
/// [`Field`] that produced it.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Fe(pub u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fe({})", self.0)
    }
}

/// GF(p^m) with its multiplicative tables. Immutable once built.
pub struct Field {
    p: u32,
    m: u32,
    size: u32,
    modulus: Vec<u32>,
    generator: Fe,
    // exp has length 2 * (size - 1) so products of logs need no reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .field("generator", &self.generator)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for Field {}

impl Field {
    /// Returns the shared instance of GF(p^m) built from the modulus table.
    ///
    /// The table is the bundled one unless [`MODULI_ENV`] points elsewhere.
    pub fn get(p: u32, m: u32) -> Result<Arc<Field>> {
        type Cache = Mutex<HashMap<(u32, u32), Arc<Field>>>;
        static CACHE: OnceLock<Cache> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(f) = cache.lock().expect("field cache poisoned").get(&(p, m)) {
            return Ok(f.clone());
        }
        let modulus = ModulusTable::active()?.lookup(p, m)?;
        let field = Arc::new(Field::with_modulus(p, &modulus)?);
        cache.lock().expect("field cache poisoned").entry((p, m)).or_insert_with(|| field.clone());
        Ok(field)
    }

    /// Builds GF(p^m) from an explicit modulus, coefficients low-to-high.
    /// The modulus is made monic; it must be irreducible.
    pub fn with_modulus(p: u32, modulus: &[u32]) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p));
        }
        let mut modulus: Vec<u32> = modulus.iter().map(|c| c % p).collect();
        while modulus.last() == Some(&0) {
            modulus.pop();
        }
        if modulus.len() < 2 {
            return Err(Error::ReducibleModulus(modulus));
        }
        let m = (modulus.len() - 1) as u32;
        let size = (p as u64).checked_pow(m).filter(|&s| s <= MAX_FIELD_SIZE);
        let size = size.ok_or(Error::FieldTooLarge { p, m })? as u32;
        let lead_inv = inv_mod(*modulus.last().unwrap(), p);
        for c in modulus.iter_mut() {
            *c = (*c * lead_inv) % p;
        }
        if !poly::is_irreducible(&modulus, p) {
            return Err(Error::ReducibleModulus(modulus));
        }

        let arith = poly::Arith::new(p, &modulus);
        let order = size - 1;
        let mut exp = Vec::with_capacity(2 * order as usize);
        let x = if m == 1 { arith.encode(&[modulus[0] * (p - 1) % p]) } else { p };
        let mut generator = None;
        // x is primitive for every bundled modulus; other moduli fall back to a search.
        for candidate in std::iter::once(x).chain(2..size) {
            if candidate == 0 {
                continue;
            }
            exp.clear();
            let mut acc = 1u32;
            loop {
                exp.push(acc);
                acc = arith.mul(acc, candidate);
                if acc == 1 || exp.len() > order as usize {
                    break;
                }
            }
            if exp.len() == order as usize {
                generator = Some(Fe(candidate));
                break;
            }
        }
        let generator = generator.expect("a finite field always has a primitive element");
        let mut log = vec![0u32; size as usize];
        for (k, &e) in exp.iter().enumerate() {
            log[e as usize] = k as u32;
        }
        exp.extend_from_within(..);

        let mut field = Field { p, m, size, modulus, generator, exp, log, zech: Vec::new() };
        field.zech = (0..order)
            .map(|n| {
                let s = arith.add(field.exp[n as usize], 1);
                if s == 0 {
                    ZECH_ZERO
                } else {
                    field.log[s as usize]
                }
            })
            .collect();
        Ok(field)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> Fe {
        self.generator
    }

    /// Multiplicative order `p^m - 1`.
    pub fn order(&self) -> u32 {
        self.size - 1
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> + '_ {
        (0..self.size).map(Fe)
    }

    /// The image of an integer in the prime field.
    pub fn from_int(&self, k: i64) -> Fe {
        Fe(k.rem_euclid(self.p as i64) as u32)
    }

    /// Discrete log relative to [`Field::generator`]; `None` for zero.
    pub fn log(&self, a: Fe) -> Option<u32> {
        (!a.is_zero()).then(|| self.log[a.0 as usize])
    }

    /// `generator^k`.
    pub fn exp(&self, k: u64) -> Fe {
        Fe(self.exp[(k % self.order() as u64) as usize])
    }

    /// Zech logarithm: `Z(n)` with `g^Z(n) = 1 + g^n`, `None` when `1 + g^n = 0`.
    pub fn zech_log(&self, n: u32) -> Option<u32> {
        let z = self.zech[(n % self.order()) as usize];
        (z != ZECH_ZERO).then_some(z)
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.p == 2 {
            return Fe(a.0 ^ b.0);
        }
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        let (la, lb) = (self.log[a.0 as usize], self.log[b.0 as usize]);
        let diff = (lb + self.order() - la) % self.order();
        match self.zech[diff as usize] {
            ZECH_ZERO => Fe::ZERO,
            z => Fe(self.exp[(la + z) as usize]),
        }
    }

    pub fn neg(&self, a: Fe) -> Fe {
        if self.p == 2 || a.is_zero() {
            return a;
        }
        Fe(self.exp[(self.log[a.0 as usize] + self.order() / 2) as usize])
    }

    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.is_zero() || b.is_zero() {
            return Fe::ZERO;
        }
        Fe(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Fe) -> Option<Fe> {
        let l = self.log(a)?;
        Some(Fe(self.exp[((self.order() - l) % self.order()) as usize]))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Option<Fe> {
        Some(self.mul(a, self.inv(b)?))
    }

    /// `a^e` with `0^0 = 1`.
    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if e == 0 {
            return Fe::ONE;
        }
        match self.log(a) {
            None => Fe::ZERO,
            Some(l) => {
                let k = (l as u64 * (e % self.order() as u64)) % self.order() as u64;
                Fe(self.exp[k as usize])
            }
        }
    }

    /// Applies `a -> a^p` `k` times. `k` may exceed `m`; only `k mod m` matters.
    pub fn frobenius(&self, a: Fe, k: u32) -> Fe {
        let order = self.order() as u64;
        let mut e = 1u64;
        for _ in 0..(k % self.m) {
            e = e * self.p as u64 % order;
        }
        if self.order() == 1 {
            return a;
        }
        self.pow(a, e)
    }

    /// Inverse of [`Field::frobenius`].
    pub fn frobenius_inv(&self, a: Fe, k: u32) -> Fe {
        self.frobenius(a, self.m - k % self.m)
    }

    /// True iff `a` lies in the subfield GF(p^d) (requires `d | m`).
    pub fn in_subfield(&self, a: Fe, d: u32) -> bool {
        self.frobenius(a, d) == a
    }

    /// Base-p digits of an element, low-to-high, length `m`.
    pub fn coefficients(&self, a: Fe) -> Vec<u32> {
        let mut v = a.0;
        (0..self.m)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    /// Builds the subfield embedding `sub -> self`.
    pub fn embedding_from(&self, sub: &Field) -> Result<Embedding> {
        Embedding::new(sub, self)
    }
}

/// Ring embedding GF(p^a) -> GF(p^b) for `a | b`.
///
/// The image of the class of `x` in the subfield is the least power
/// `h^j` of `h = g^((p^b-1)/(p^a-1))` that is a root of the subfield modulus
/// (with `j` coprime to `p^a - 1`). Nonzero elements are then mapped by
/// exponent scaling: `g_sub^k -> g_ext^(k * scale)`.
#[derive(Debug, Clone)]
pub struct Embedding {
    sub_order: u64,
    ext_order: u64,
    scale: u64,
    sub_log: Vec<u32>,
    ext_exp: Vec<u32>,
    root: Fe,
}

impl Embedding {
    fn new(sub: &Field, ext: &Field) -> Result<Embedding> {
        if sub.p != ext.p {
            return Err(Error::CharacteristicMismatch { sub: sub.p, ext: ext.p });
        }
        if !ext.m.is_multiple_of(sub.m) {
            return Err(Error::DegreeMismatch { sub: sub.m, ext: ext.m });
        }
        let (so, eo) = (sub.order() as u64, ext.order() as u64);
        let h = ext.exp(eo / so.max(1));
        let is_root = |beta: Fe| {
            let mut acc = Fe::ZERO;
            for &c in sub.modulus.iter().rev() {
                acc = ext.add(ext.mul(acc, beta), Fe(c));
            }
            acc.is_zero()
        };
        let root = (1..=so.max(1))
            .filter(|&j| num_integer::gcd(j, so.max(1)) == 1)
            .map(|j| ext.pow(h, j))
            .find(|&b| is_root(b))
            .expect("an irreducible polynomial of degree a splits in GF(p^b) when a | b");
        let image_of_generator = Self::by_coefficients_with(sub, ext, root, sub.generator);
        let scale = ext.log(image_of_generator).expect("nonzero image") as u64;
        Ok(Embedding {
            sub_order: so,
            ext_order: eo,
            scale,
            sub_log: sub.log.clone(),
            ext_exp: ext.exp[..ext.order() as usize].to_vec(),
            root,
        })
    }

    fn by_coefficients_with(sub: &Field, ext: &Field, root: Fe, a: Fe) -> Fe {
        let mut acc = Fe::ZERO;
        for c in sub.coefficients(a).into_iter().rev() {
            acc = ext.add(ext.mul(acc, root), Fe(c));
        }
        acc
    }

    /// Image of `a` by exponent scaling.
    pub fn apply(&self, a: Fe) -> Fe {
        if a.is_zero() {
            return Fe::ZERO;
        }
        if self.sub_order <= 1 {
            return Fe::ONE;
        }
        let k = self.sub_log[a.0 as usize] as u64;
        Fe(self.ext_exp[(k * self.scale % self.ext_order) as usize])
    }

    /// Image of `a` by evaluating its coefficient polynomial at the root.
    pub fn apply_by_coefficients(&self, sub: &Field, ext: &Field, a: Fe) -> Fe {
        Self::by_coefficients_with(sub, ext, self.root, a)
    }

    /// Image of the class of `x`.
    pub fn root(&self) -> Fe {
        self.root
    }

    pub fn scale(&self) -> u64 {
        self.scale
    }
}

/// Parsed modulus data: `p m c0 c1 ... cm` per line, `#` comments allowed.
#[derive(Debug, Clone, Default)]
pub struct ModulusTable {
    entries: HashMap<(u32, u32), Vec<u32>>,
}

impl ModulusTable {
    pub fn parse(text: &str) -> Result<ModulusTable> {
        let mut entries = HashMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |reason: &str| Error::ModulusData { line: idx + 1, reason: reason.into() };
            let nums = line
                .split_whitespace()
                .map(|t| t.parse::<u32>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| bad(&e.to_string()))?;
            if nums.len() < 3 {
                return Err(bad("expected p, m and coefficients"));
            }
            let (p, m, coeffs) = (nums[0], nums[1], nums[2..].to_vec());
            if coeffs.len() != m as usize + 1 {
                return Err(bad("coefficient count must be m + 1"));
            }
            entries.insert((p, m), coeffs);
        }
        Ok(ModulusTable { entries })
    }

    pub fn bundled() -> ModulusTable {
        ModulusTable::parse(BUNDLED_MODULI).expect("bundled modulus data is well formed")
    }

    /// The table named by [`MODULI_ENV`], or the bundled one.
    pub fn active() -> Result<ModulusTable> {
        match std::env::var(MODULI_ENV) {
            Ok(path) if !path.is_empty() => {
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| Error::ModulusFile { path: path.clone(), reason: e.to_string() })?;
                ModulusTable::parse(&text)
            }
            _ => Ok(ModulusTable::bundled()),
        }
    }

    pub fn lookup(&self, p: u32, m: u32) -> Result<Vec<u32>> {
        if (p as u64).checked_pow(m).is_none_or(|s| s > MAX_FIELD_SIZE) {
            return Err(Error::FieldTooLarge { p, m });
        }
        self.entries.get(&(p, m)).cloned().ok_or(Error::NoModulus { p, m })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn keys(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.entries.keys().copied()
    }
}

fn inv_mod(a: u32, p: u32) -> u32 {
    (1..p).find(|&b| (a as u64 * b as u64) % p as u64 == 1).unwrap_or(0)
}

/// Dense polynomial arithmetic over GF(p), used only while building tables.
mod poly {
    use super::inv_mod;

    fn trim(mut v: Vec<u32>) -> Vec<u32> {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    /// Remainder of `a` modulo monic-or-not `b` over GF(p).
    pub fn rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut r = trim(a.to_vec());
        let b = trim(b.to_vec());
        let lead_inv = inv_mod(*b.last().unwrap(), p) as u64;
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let factor = (*r.last().unwrap() as u64 * lead_inv) % p as u64;
            for (i, &c) in b.iter().enumerate() {
                let sub = (factor * c as u64) % p as u64;
                r[shift + i] = ((r[shift + i] as u64 + p as u64 - sub) % p as u64) as u32;
            }
            r = trim(r);
        }
        r
    }

    /// Trial division by every monic polynomial of degree 1..=deg/2.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let n = f.len() - 1;
        for d in 1..=n / 2 {
            let count = (p as u64).pow(d as u32);
            for idx in 0..count {
                let mut g: Vec<u32> = (0..d).map(|k| ((idx / (p as u64).pow(k as u32)) % p as u64) as u32).collect();
                g.push(1);
                if rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    pub struct Arith {
        p: u32,
        m: usize,
        modulus: Vec<u32>,
    }

    impl Arith {
        pub fn new(p: u32, modulus: &[u32]) -> Arith {
            Arith { p, m: modulus.len() - 1, modulus: modulus.to_vec() }
        }

        pub fn decode(&self, mut v: u32) -> Vec<u32> {
            (0..self.m)
                .map(|_| {
                    let d = v % self.p;
                    v /= self.p;
                    d
                })
                .collect()
        }

        pub fn encode(&self, digits: &[u32]) -> u32 {
            digits.iter().rev().fold(0, |acc, &d| acc * self.p + d)
        }

        pub fn add(&self, a: u32, b: u32) -> u32 {
            let (da, db) = (self.decode(a), self.decode(b));
            let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
            self.encode(&s)
        }

        pub fn mul(&self, a: u32, b: u32) -> u32 {
            if self.p == 2 {
                let mut acc = 0u64;
                for i in 0..self.m {
                    if (b >> i) & 1 == 1 {
                        acc ^= (a as u64) << i;
                    }
                }
                let modulus = self.encode(&self.modulus[..self.m]) as u64 | (1u64 << self.m);
                for i in (self.m..2 * self.m).rev() {
                    if (acc >> i) & 1 == 1 {
                        acc ^= modulus << (i - self.m);
                    }
                }
                return acc as u32;
            }
            let (da, db) = (self.decode(a), self.decode(b));
            let mut prod = vec![0u32; 2 * self.m];
            for (i, &x) in da.iter().enumerate() {
                for (j, &y) in db.iter().enumerate() {
                    prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % self.p as u64) as u32;
                }
            }
            let mut r = rem(&prod, &self.modulus, self.p);
            r.resize(self.m, 0);
            self.encode(&r)
        }
    }
}
