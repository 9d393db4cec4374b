//! Polynomials over the prime field `F_p` in integer encoding.
//!
//! A polynomial `c_0 + c_1 x + ... + c_k x^k` with `0 <= c_i < p` is encoded
//! as the integer `sum c_i p^i` (little-endian digits, constant term is the
//! lowest digit). A monic modulus of degree `m` is encoded with its leading
//! term included, so it lies in `[p^m, 2 p^m)`.

/// Base-`p` digits of `enc`, lowest first, padded to `len`.
pub fn digits(mut enc: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0u32; len];
    let mut i = 0;
    while enc > 0 {
        assert!(i < len, "encoding has more than {len} digits");
        out[i] = (enc % p as u64) as u32;
        enc /= p as u64;
        i += 1;
    }
    out
}

/// Inverse of [`digits`].
pub fn encode(digits: &[u32], p: u32) -> u64 {
    let mut enc = 0u64;
    for &d in digits.iter().rev() {
        enc = enc * p as u64 + d as u64;
    }
    enc
}

pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// `base^exp` checked against u64 overflow.
pub fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// `base^exp mod m` for u64 operands (m < 2^32 is enough for every table
/// in this crate, but the routine is generic via u128 intermediates).
pub fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    assert!(m > 0);
    let mut acc: u64 = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % m as u128) as u64;
        }
        base = ((base as u128 * base as u128) % m as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Prime factorization by trial division; adequate for the table sizes
/// this crate ever builds (group orders below 2^40).
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factor(n) == vec![(n, 1)]
}

/// Dense degree-`< m` polynomial arithmetic modulo a monic degree-`m` modulus.
struct PolyMod {
    p: u64,
    m: usize,
    /// Digits of the modulus without the leading coefficient.
    low: Vec<u64>,
}

impl PolyMod {
    fn new(p: u32, m: usize, modulus_enc: u64) -> Self {
        let all = digits(modulus_enc, p, m + 1);
        assert_eq!(all[m], 1, "modulus must be monic");
        PolyMod {
            p: p as u64,
            m,
            low: all[..m].iter().map(|&d| d as u64).collect(),
        }
    }

    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut prod = vec![0u64; 2 * self.m - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ai * bj) % self.p;
            }
        }
        // reduce x^d = x^{d-m} * (-low) for d from high to m
        for d in (self.m..prod.len()).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for (j, &lj) in self.low.iter().enumerate() {
                if lj != 0 {
                    let sub = (c * lj) % self.p;
                    prod[d - self.m + j] = (prod[d - self.m + j] + self.p - sub) % self.p;
                }
            }
        }
        prod.truncate(self.m);
        prod
    }

    /// `x^exp` modulo the modulus.
    fn pow_x(&self, exp: u64) -> Vec<u64> {
        let mut acc = vec![0u64; self.m];
        acc[0] = 1;
        if self.m == 1 {
            // degree-1 modulus: x = -low[0]
            let x = (self.p - self.low[0] % self.p) % self.p;
            acc[0] = mod_pow(x, exp, self.p);
            return acc;
        }
        let mut base = vec![0u64; self.m];
        base[1] = 1;
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

fn is_one(v: &[u64]) -> bool {
    v[0] == 1 && v[1..].iter().all(|&c| c == 0)
}

/// True iff `modulus_enc` is a monic degree-`m` polynomial over `F_p` whose
/// root generates the full multiplicative group of order `p^m - 1`.
///
/// Since the unit group of `F_p[x]/(f)` is strictly smaller than `p^m - 1`
/// for every reducible `f`, a full-order root certifies irreducibility and
/// primitivity at once.
pub fn is_primitive_modulus(p: u32, m: u32, modulus_enc: u64) -> bool {
    let pm = match checked_pow(p as u64, m) {
        Some(v) => v,
        None => return false,
    };
    if modulus_enc < pm || modulus_enc >= 2 * pm {
        return false; // not monic of degree m
    }
    if modulus_enc.is_multiple_of(p as u64) {
        return false; // x divides f, root is not a unit
    }
    let order = pm - 1;
    if order == 1 {
        return true; // F_2 base case: x + 1
    }
    let pm_mod = PolyMod::new(p, m as usize, modulus_enc);
    if !is_one(&pm_mod.pow_x(order)) {
        return false;
    }
    for (r, _) in factor(order) {
        if is_one(&pm_mod.pow_x(order / r)) {
            return false;
        }
    }
    true
}

/// The canonical modulus: the first monic degree-`m` primitive polynomial in
/// increasing order of the integer encoding of its non-leading coefficients
/// (equivalently, lexicographic on `(c_{m-1}, ..., c_1, c_0)`).
pub fn canonical_primitive_modulus(p: u32, m: u32) -> u64 {
    let pm = checked_pow(p as u64, m).expect("field order fits u64");
    for low in 0..pm {
        let enc = pm + low;
        if is_primitive_modulus(p, m, enc) {
            return enc;
        }
    }
    unreachable!("a primitive polynomial of every degree exists over F_p")
}

/// Render an encoded monic polynomial as a human-readable string, e.g.
/// `x^4 + x + 1`.
pub fn pretty(modulus_enc: u64, p: u32, m: u32) -> String {
    let ds = digits(modulus_enc, p, m as usize + 1);
    let mut terms = Vec::new();
    for (i, &c) in ds.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let t = match (i, c) {
            (0, c) => format!("{c}"),
            (1, 1) => "x".to_string(),
            (1, c) => format!("{c}x"),
            (i, 1) => format!("x^{i}"),
            (i, c) => format!("{c}x^{i}"),
        };
        terms.push(t);
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}
