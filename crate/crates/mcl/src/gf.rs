//! Arithmetic over GF(q) for prime powers q = p^k up to 2^16.
//!
//! Elements are stored as canonical indices in `0..q`. For a prime field the
//! index is the residue itself; for an extension field it packs the coefficient
//! vector of the residue polynomial in base p (digit i = coefficient of x^i).
//! Multiplication, division and inversion run through log/antilog tables built
//! once per [`Field`], so the Monte Carlo inner loops pay O(1) per operation.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("field order {0} is not a prime power p^k with 2 <= p^k <= 65536")]
    InvalidOrder(u64),
    #[error("division or inversion by zero in GF({0})")]
    DivisionByZero(u32),
    #[error("element index {index} out of range for GF({q})")]
    ElementOutOfRange { index: u64, q: u32 },
}

/// An element of GF(q), as its canonical index. Only meaningful together with
/// the [`Field`] it came from; all arithmetic goes through `Field` methods.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fe(pub u16);

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub const ZERO: Fe = Fe(0);
pub const ONE: Fe = Fe(1);

/// Shared handle to a field; matrices and channels clone this freely.
pub type FieldRef = Arc<Field>;

/// A concrete GF(q) with its reduction modulus and log/antilog tables.
pub struct Field {
    p: u32,
    k: u32,
    q: u32,
    /// Modulus polynomial coefficients, ascending degree, length k+1, monic.
    /// Empty for prime fields (k = 1), where reduction is plain `mod p`.
    modulus: Vec<u32>,
    /// exp[i] = g^i for the chosen generator g, doubled to length 2(q-1) so
    /// `exp[log a + log b]` never needs a modulo.
    exp: Vec<u16>,
    /// log[e] for e in 1..q; log[0] is a sentinel and never read.
    log: Vec<u16>,
    generator: u16,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.q)
    }
}

/// Factor q as p^k when it is a prime power in range; used by field
/// construction and by parameter validation elsewhere.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if !(2..=65536).contains(&q) {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q {
        if q % p == 0 {
            break;
        }
        p += 1;
    }
    if p * p > q {
        p = q; // q itself is prime
    }
    let mut k = 0u32;
    let mut rest = q;
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    if rest == 1 {
        Some((p as u32, k))
    } else {
        None
    }
}

/// Default modulus polynomials for common (p, k), ascending coefficients.
/// Every entry is re-verified irreducible at construction time; pairs not
/// listed here use the lexicographically smallest monic irreducible instead.
const MODULUS_TABLE: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 0, 0, 0, 1]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
    (2, 9, &[1, 0, 0, 0, 1, 0, 0, 0, 0, 1]),
    (2, 10, &[1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1]),
    (2, 11, &[1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 12, &[1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1]),
    (2, 13, &[1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 14, &[1, 1, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1]),
    (2, 15, &[1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 16, &[1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (5, 2, &[2, 1, 1]),
    (7, 2, &[3, 1, 1]),
];

impl Field {
    /// Build GF(q). Fails unless q is a prime power with 2 <= q <= 2^16.
    pub fn new(q: u64) -> Result<FieldRef, GfError> {
        let (p, k) = prime_power(q).ok_or(GfError::InvalidOrder(q))?;
        let q = q as u32;
        let modulus = if k == 1 {
            Vec::new()
        } else {
            let m = lookup_modulus(p, k);
            // Construction-time guarantee regardless of where the modulus came from.
            assert!(
                poly_is_irreducible(&m, p),
                "modulus for GF({p}^{k}) failed irreducibility check"
            );
            m
        };

        let mut field = Field {
            p,
            k,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            generator: 0,
        };
        field.build_tables();
        Ok(Arc::new(field))
    }

    fn build_tables(&mut self) {
        let q = self.q as usize;
        let factors = prime_factors((self.q - 1) as u64);
        // Smallest element of multiplicative order q-1. For k > 1 the scan can
        // start at index p (= the polynomial "x"): constants live in the prime
        // subfield and can never generate the full group.
        let start = if self.k == 1 { 2.min(q as u32 - 1) } else { self.p };
        let mut generator = 1u16; // correct for q = 2, where the group is trivial
        if self.q > 2 {
            let mut found = None;
            for cand in start..self.q {
                if self.slow_order_is_full(cand as u16, &factors) {
                    found = Some(cand as u16);
                    break;
                }
            }
            generator = found.expect("GF(q)* is cyclic; a generator must exist");
        }

        let period = q - 1;
        let mut exp = vec![0u16; 2 * period];
        let mut log = vec![0u16; q];
        let mut acc = ONE;
        for (i, slot) in exp.iter_mut().enumerate().take(period) {
            *slot = acc.0;
            log[acc.0 as usize] = i as u16;
            acc = self.slow_mul(acc, Fe(generator));
        }
        debug_assert_eq!(acc, ONE, "generator order must be exactly q-1");
        for i in period..2 * period {
            exp[i] = exp[i - period];
        }
        self.exp = exp;
        self.log = log;
        self.generator = generator;
    }

    fn slow_order_is_full(&self, cand: u16, factors: &[u64]) -> bool {
        let group = (self.q - 1) as u64;
        factors
            .iter()
            .all(|&f| self.slow_pow(Fe(cand), group / f) != ONE)
    }

    /// Polynomial-representation multiply; only used while building tables.
    fn slow_mul(&self, a: Fe, b: Fe) -> Fe {
        if self.k == 1 {
            return Fe(((a.0 as u64 * b.0 as u64) % self.p as u64) as u16);
        }
        let pa = self.unpack(a);
        let pb = self.unpack(b);
        let prod = poly_mul_mod(&pa, &pb, &self.modulus, self.p);
        self.pack(&prod)
    }

    fn slow_pow(&self, base: Fe, mut e: u64) -> Fe {
        let mut acc = ONE;
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(acc, b);
            }
            b = self.slow_mul(b, b);
            e >>= 1;
        }
        acc
    }

    fn unpack(&self, a: Fe) -> Vec<u32> {
        let mut v = vec![0u32; self.k as usize];
        let mut x = a.0 as u32;
        for d in v.iter_mut() {
            *d = x % self.p;
            x /= self.p;
        }
        v
    }

    fn pack(&self, coeffs: &[u32]) -> Fe {
        let mut x = 0u32;
        for &c in coeffs.iter().rev() {
            x = x * self.p + c;
        }
        Fe(x as u16)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> Fe {
        Fe(self.generator)
    }

    /// Two `Field` values describe the same field (same p, k, and modulus).
    pub fn same(&self, other: &Field) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }

    /// Validated element from an index.
    pub fn fe(&self, index: u64) -> Result<Fe, GfError> {
        if index < self.q as u64 {
            Ok(Fe(index as u16))
        } else {
            Err(GfError::ElementOutOfRange { index, q: self.q })
        }
    }

    /// All q elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.q as u16).map(Fe)
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.k == 1 {
            let s = a.0 as u32 + b.0 as u32;
            Fe(if s >= self.q { (s - self.q) as u16 } else { s as u16 })
        } else if self.p == 2 {
            Fe(a.0 ^ b.0)
        } else {
            // Digit-wise addition base p; rare path (odd-characteristic extensions).
            let mut out = 0u32;
            let mut mult = 1u32;
            let (mut x, mut y) = (a.0 as u32, b.0 as u32);
            for _ in 0..self.k {
                let d = (x % self.p + y % self.p) % self.p;
                out += d * mult;
                mult *= self.p;
                x /= self.p;
                y /= self.p;
            }
            Fe(out as u16)
        }
    }

    pub fn neg(&self, a: Fe) -> Fe {
        if self.k == 1 {
            Fe(if a.0 == 0 { 0 } else { (self.q - a.0 as u32) as u16 })
        } else if self.p == 2 {
            a
        } else {
            let mut out = 0u32;
            let mut mult = 1u32;
            let mut x = a.0 as u32;
            for _ in 0..self.k {
                let d = (self.p - x % self.p) % self.p;
                out += d * mult;
                mult *= self.p;
                x /= self.p;
            }
            Fe(out as u16)
        }
    }

    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a == ZERO || b == ZERO {
            return ZERO;
        }
        let la = self.log[a.0 as usize] as usize;
        let lb = self.log[b.0 as usize] as usize;
        Fe(self.exp[la + lb])
    }

    pub fn inv(&self, a: Fe) -> Result<Fe, GfError> {
        if a == ZERO {
            return Err(GfError::DivisionByZero(self.q));
        }
        let period = (self.q - 1) as usize;
        let la = self.log[a.0 as usize] as usize;
        Ok(Fe(self.exp[(period - la) % period]))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }
}

fn prime_factors(mut x: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= x {
        if x % d == 0 {
            out.push(d);
            while x % d == 0 {
                x /= d;
            }
        }
        d += 1;
    }
    if x > 1 {
        out.push(x);
    }
    out
}

fn lookup_modulus(p: u32, k: u32) -> Vec<u32> {
    for &(tp, tk, coeffs) in MODULUS_TABLE {
        if tp == p && tk == k {
            return coeffs.to_vec();
        }
    }
    smallest_irreducible(p, k)
}

/// Lexicographically smallest monic irreducible of degree k over GF(p),
/// ordering the low-order coefficient vector as a base-p integer.
fn smallest_irreducible(p: u32, k: u32) -> Vec<u32> {
    let total = (p as u64).pow(k);
    for code in 0..total {
        let mut coeffs = vec![0u32; k as usize + 1];
        let mut x = code;
        for c in coeffs.iter_mut().take(k as usize) {
            *c = (x % p as u64) as u32;
            x /= p as u64;
        }
        coeffs[k as usize] = 1;
        if poly_is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials of every degree exist over GF(p)")
}

fn poly_degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai * bj) % p;
        }
    }
    out
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let md = poly_degree(m).expect("modulus must be nonzero");
    let lead_inv = mod_inv(m[md], p);
    let mut r = a.to_vec();
    loop {
        let rd = match poly_degree(&r) {
            Some(d) if d >= md => d,
            _ => break,
        };
        let factor = (r[rd] * lead_inv) % p;
        for i in 0..=md {
            let idx = rd - md + i;
            r[idx] = (r[idx] + p * p - (factor * m[i]) % p) % p;
        }
    }
    r.truncate(md);
    r.resize(md, 0);
    r
}

fn poly_mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    poly_rem(&poly_mul(a, b, p), m, p)
}

fn mod_inv(a: u32, p: u32) -> u32 {
    // p is a small prime; Fermat is plenty.
    let mut acc = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

/// Exhaustive trial division by every monic polynomial of degree at most
/// deg/2. Fine for the table sizes here (worst case p=2, k=16: 2^9 divisors).
fn poly_is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = match poly_degree(f) {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    if deg == 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut g = vec![0u32; d + 1];
            let mut x = code;
            for c in g.iter_mut().take(d) {
                *c = (x % p as u64) as u32;
                x /= p as u64;
            }
            g[d] = 1;
            let r = poly_rem(f, &g, p);
            if poly_degree(&r).is_none() {
                return false;
            }
        }
    }
    true
}
