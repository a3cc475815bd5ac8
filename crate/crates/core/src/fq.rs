//! Finite fields GF(p^e) with a deterministic modulus choice.
//!
//! Elements are coefficient vectors of length e over the prime field,
//! reduced modulo a fixed monic irreducible of degree e. The modulus is the
//! lexicographically smallest monic irreducible (smallest key Σ cᵢ·pⁱ), so
//! representations are reproducible across runs without external tables.
//! Supported parameters: p ∈ {2,3,5}, e ≤ 4 — every element count stays ≤ 625
//! so exhaustive checks are practical.

use crate::error::{Error, Result};
use crate::ring::{Field, Ring, SigmaRing};

pub type FqElem = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Fq {
    pub p: u32,
    pub e: usize,
    /// Monic modulus, coefficients low-to-high, length e+1, last = 1.
    pub modulus: Vec<u32>,
}

pub const SUPPORTED_P: [u32; 3] = [2, 3, 5];
pub const MAX_E: usize = 4;

// -- tiny polynomial helpers over the prime field, used only for the modulus
//    search (the general Poly type lives on top of Fq and cannot be used here)

fn pf_trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn pf_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    pf_trim(&mut out);
    out
}

fn pf_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    pf_trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = mod_inv(m[dm], p);
    while r.len() > dm {
        let k = r.len() - 1 - dm;
        let c = (r[r.len() - 1] * lead_inv) % p;
        for i in 0..=dm {
            let idx = k + i;
            r[idx] = (r[idx] + p - (c * m[i]) % p) % p;
        }
        pf_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn pf_gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    pf_trim(&mut a);
    pf_trim(&mut b);
    while !b.is_empty() {
        let r = pf_rem(&a, &b, p);
        a = b;
        b = r;
    }
    // normalize monic
    if let Some(&l) = a.last() {
        let li = mod_inv(l, p);
        for c in a.iter_mut() {
            *c = (*c * li) % p;
        }
    }
    a
}

fn mod_inv(a: u32, p: u32) -> u32 {
    // p is prime and tiny; Fermat
    let mut r = 1u32;
    let mut base = a % p;
    let mut n = p - 2;
    while n > 0 {
        if n & 1 == 1 {
            r = (r * base) % p;
        }
        base = (base * base) % p;
        n >>= 1;
    }
    r
}

/// x^(p^i) mod m, by repeated p-th powering of x modulo m.
fn pf_xq_pow(m: &[u32], p: u32, i: usize) -> Vec<u32> {
    let mut x = vec![0, 1]; // x
    for _ in 0..i {
        // raise to p-th power
        let mut acc = vec![1];
        for _ in 0..p {
            acc = pf_rem(&pf_mul(&acc, &x, p), m, p);
        }
        x = acc;
    }
    x
}

/// Irreducibility over the prime field: gcd(f, x^{p^i} − x) = 1 for all
/// i ≤ deg f / 2.
fn pf_irreducible(f: &[u32], p: u32) -> bool {
    let d = f.len() - 1;
    if d == 0 {
        return false;
    }
    for i in 1..=d / 2 {
        let xq = pf_xq_pow(f, p, i);
        // x^{p^i} - x
        let mut g = xq;
        if g.len() < 2 {
            g.resize(2, 0);
        }
        g[1] = (g[1] + p - 1) % p;
        pf_trim(&mut g);
        let gc = pf_gcd(f, &g, p);
        if gc.len() != 1 {
            return false;
        }
    }
    true
}

impl Fq {
    pub fn new(p: u32, e: usize) -> Result<Fq> {
        if !SUPPORTED_P.contains(&p) {
            return Err(Error::domain(format!("unsupported characteristic p={p}")));
        }
        if e == 0 || e > MAX_E {
            return Err(Error::domain(format!("unsupported extension degree e={e}")));
        }
        // smallest-key monic irreducible of degree e
        let mut modulus = None;
        'outer: for key in 0..p.pow(e as u32) {
            let mut f = Vec::with_capacity(e + 1);
            let mut k = key;
            for _ in 0..e {
                f.push(k % p);
                k /= p;
            }
            f.push(1);
            if pf_irreducible(&f, p) {
                modulus = Some(f);
                break 'outer;
            }
        }
        Ok(Fq {
            p,
            e,
            modulus: modulus.expect("an irreducible of every degree exists"),
        })
    }

    /// Field with q elements, q = p^e a supported prime power.
    pub fn of_order(q: u64) -> Result<Fq> {
        for &p in &SUPPORTED_P {
            let mut e = 0usize;
            let mut x = q;
            while x % p as u64 == 0 {
                x /= p as u64;
                e += 1;
            }
            if x == 1 && e >= 1 {
                return Fq::new(p, e);
            }
        }
        Err(Error::domain(format!("unsupported field order q={q}")))
    }

    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.e as u32)
    }

    /// The generator u of the representation (a root of the modulus).
    pub fn gen(&self) -> FqElem {
        let mut v = vec![0; self.e];
        if self.e > 1 {
            v[1] = 1;
        } else {
            // degree-1 modulus x + c: the "generator" is its root -c
            v[0] = (self.p - self.modulus[0] % self.p) % self.p;
        }
        v
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        (0..self.order()).map(move |i| self.from_index(i))
    }

    pub fn from_index(&self, mut i: u64) -> FqElem {
        let mut v = vec![0; self.e];
        for c in v.iter_mut() {
            *c = (i % self.p as u64) as u32;
            i /= self.p as u64;
        }
        v
    }

    pub fn to_index(&self, a: &FqElem) -> u64 {
        let mut i = 0u64;
        for &c in a.iter().rev() {
            i = i * self.p as u64 + c as u64;
        }
        i
    }

    fn reduce(&self, raw: &[u32]) -> FqElem {
        let mut r = pf_rem(raw, &self.modulus, self.p);
        r.resize(self.e, 0);
        r
    }

    /// Unique b with b^q = a, for q = p^j dividing the field order's
    /// exponent tower: b = a^(p^(e·k − j)) normalized. Works because the
    /// Frobenius orbit has length dividing e.
    pub fn frobenius_inverse(&self, a: &FqElem, q: u64) -> Result<FqElem> {
        let j = q_log_p(self.p, q)
            .ok_or_else(|| Error::domain(format!("q={q} is not a power of p={}", self.p)))?;
        let jr = j % self.e; // a^(p^e) = a
        Ok(self.pow(a, (self.p as u64).pow((self.e - jr) as u32 % self.e as u32).max(1)))
    }
}

/// log_p(q) if q is a power of p.
pub fn q_log_p(p: u32, q: u64) -> Option<usize> {
    let mut x = q;
    let mut j = 0;
    while x % p as u64 == 0 {
        x /= p as u64;
        j += 1;
    }
    if x == 1 && j >= 1 {
        Some(j)
    } else {
        None
    }
}

impl Ring for Fq {
    type Elem = FqElem;

    fn zero(&self) -> FqElem {
        vec![0; self.e]
    }
    fn one(&self) -> FqElem {
        let mut v = vec![0; self.e];
        v[0] = 1;
        v
    }
    fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        a.iter().zip(b).map(|(&x, &y)| (x + y) % self.p).collect()
    }
    fn neg(&self, a: &FqElem) -> FqElem {
        a.iter().map(|&x| (self.p - x % self.p) % self.p).collect()
    }
    fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        self.reduce(&pf_mul(a, b, self.p))
    }
    fn from_int(&self, n: i64) -> FqElem {
        let m = n.rem_euclid(self.p as i64) as u32;
        let mut v = vec![0; self.e];
        v[0] = m;
        v
    }
    fn is_zero(&self, a: &FqElem) -> bool {
        a.iter().all(|&x| x == 0)
    }
    fn display(&self, a: &FqElem) -> String {
        if self.e == 1 {
            return format!("{}", a[0]);
        }
        let mut parts = vec![];
        for (i, &c) in a.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let term = match i {
                0 => format!("{c}"),
                1 if c == 1 => "u".to_string(),
                1 => format!("{c}*u"),
                _ if c == 1 => format!("u^{i}"),
                _ => format!("{c}*u^{i}"),
            };
            parts.push(term);
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }
}

impl Field for Fq {
    fn inv(&self, a: &FqElem) -> Result<FqElem> {
        if self.is_zero(a) {
            return Err(Error::non_unit("inverse of 0 in GF(p^e)"));
        }
        Ok(self.pow(a, self.order() - 2))
    }
}

/// A finite field together with a designated Frobenius σ: x ↦ x^q.
/// This is the coefficient field K = GF(q^m) of local/global difference
/// rings; σ generates Gal(K / F_q).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FrobField {
    pub fq: Fq,
    /// σ exponent: q = p^j. Must satisfy j ≤ e.
    pub q: u64,
}

impl FrobField {
    pub fn new(fq: Fq, q: u64) -> Result<FrobField> {
        let j = q_log_p(fq.p, q)
            .ok_or_else(|| Error::domain(format!("σ exponent q={q} not a power of p={}", fq.p)))?;
        if fq.e % j != 0 {
            return Err(Error::domain(format!(
                "GF({}) is not an extension of GF({q})",
                fq.order()
            )));
        }
        Ok(FrobField { fq, q })
    }

    /// Degree m with |K| = q^m.
    pub fn degree_over_base(&self) -> u32 {
        let j = q_log_p(self.fq.p, self.q).unwrap();
        (self.fq.e / j) as u32
    }
}

impl Ring for FrobField {
    type Elem = FqElem;
    fn zero(&self) -> FqElem {
        self.fq.zero()
    }
    fn one(&self) -> FqElem {
        self.fq.one()
    }
    fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        self.fq.add(a, b)
    }
    fn neg(&self, a: &FqElem) -> FqElem {
        self.fq.neg(a)
    }
    fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        self.fq.mul(a, b)
    }
    fn from_int(&self, n: i64) -> FqElem {
        self.fq.from_int(n)
    }
    fn is_zero(&self, a: &FqElem) -> bool {
        self.fq.is_zero(a)
    }
    fn display(&self, a: &FqElem) -> String {
        self.fq.display(a)
    }
}

impl Field for FrobField {
    fn inv(&self, a: &FqElem) -> Result<FqElem> {
        self.fq.inv(a)
    }
}

impl SigmaRing for FrobField {
    fn sigma(&self, a: &FqElem) -> FqElem {
        self.fq.pow(a, self.q)
    }
    fn sigma_inv(&self, a: &FqElem) -> Option<FqElem> {
        self.fq.frobenius_inverse(a, self.q).ok()
    }
}

/// Explicit embedding GF(q) ↪ GF(q^m) between our fixed representations,
/// with a membership-tested inverse. Built by exhaustive root search — every
/// supported field has ≤ 625 elements, and maps are built once per task.
#[derive(Clone, Debug)]
pub struct SubfieldMap {
    pub small: Fq,
    pub big: Fq,
    /// image of the small generator's representation root in the big field
    root_image: FqElem,
}

impl SubfieldMap {
    pub fn new(small: Fq, big: Fq) -> Result<SubfieldMap> {
        if small.p != big.p || big.e % small.e != 0 {
            return Err(Error::domain("not a subfield pair".to_string()));
        }
        // find a root of small.modulus in big
        let root_image = big
            .elements()
            .find(|x| {
                let mut acc = big.zero();
                for &c in small.modulus.iter().rev() {
                    acc = big.mul(&acc, x);
                    acc = big.add(&acc, &big.from_int(c as i64));
                }
                big.is_zero(&acc)
            })
            .ok_or_else(|| Error::domain("modulus has no root in extension".to_string()))?;
        Ok(SubfieldMap {
            small,
            big,
            root_image,
        })
    }

    pub fn up(&self, a: &FqElem) -> FqElem {
        let mut acc = self.big.zero();
        for &c in a.iter().rev() {
            acc = self.big.mul(&acc, &self.root_image);
            acc = self.big.add(&acc, &self.big.from_int(c as i64));
        }
        acc
    }

    /// Preimage if the element lies in the subfield. Exhaustive over the
    /// small field (≤ 625 candidates).
    pub fn down(&self, y: &FqElem) -> Option<FqElem> {
        self.small.elements().find(|a| self.up(a) == *y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modulus_is_smallest_irreducible() {
        // GF(9): x², x²+x, x²+2x are reducible; x²+1 is the first irreducible.
        let f9 = Fq::new(3, 2).unwrap();
        assert_eq!(f9.modulus, vec![1, 0, 1]);
        // GF(4): x²+x+1 is the only irreducible quadratic over F_2.
        let f4 = Fq::new(2, 2).unwrap();
        assert_eq!(f4.modulus, vec![1, 1, 1]);
    }

    #[test]
    fn field_axioms_exhaustive() {
        for (p, e) in [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1), (2, 4), (3, 3)] {
            let f = Fq::new(p, e).unwrap();
            let q = f.order();
            for a in f.elements() {
                // a^(p^e) = a
                assert_eq!(f.pow(&a, q), a, "p={p} e={e}");
                if !f.is_zero(&a) {
                    let inv = f.inv(&a).unwrap();
                    assert!(f.is_one(&f.mul(&a, &inv)));
                }
            }
        }
    }

    #[test]
    fn frobenius_inverse_fixes_zero_and_one() {
        let f9 = Fq::new(3, 2).unwrap();
        assert_eq!(f9.frobenius_inverse(&f9.zero(), 3).unwrap(), f9.zero());
        assert_eq!(f9.frobenius_inverse(&f9.one(), 3).unwrap(), f9.one());
    }

    #[test]
    fn frobenius_inverse_gf9_generator() {
        // Oracle: exhaustive search over the 9 elements for b with b^3 = g.
        let f9 = Fq::new(3, 2).unwrap();
        let g = f9.gen();
        let brute = f9.elements().find(|b| f9.pow(b, 3) == g).unwrap();
        assert_eq!(f9.frobenius_inverse(&g, 3).unwrap(), brute);
        // and it is g^3, since (g^3)^3 = g^9 = g
        assert_eq!(brute, f9.pow(&g, 3));
    }

    #[test]
    fn frobenius_inverse_roundtrip_exhaustive() {
        // frobenius_inverse ∘ (x↦x^q) = id on every supported field ≤ 81.
        for (p, e) in [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (3, 4), (5, 1), (5, 2)] {
            let f = Fq::new(p, e).unwrap();
            if f.order() > 81 {
                continue;
            }
            for j in 1..=e {
                let q = (p as u64).pow(j as u32);
                for a in f.elements() {
                    let img = f.pow(&a, q);
                    assert_eq!(f.frobenius_inverse(&img, q).unwrap(), a);
                }
            }
        }
    }

    #[test]
    fn frobfield_sigma_is_automorphism() {
        let k = FrobField::new(Fq::new(3, 2).unwrap(), 3).unwrap();
        assert_eq!(k.degree_over_base(), 2);
        for a in k.fq.elements() {
            for b in k.fq.elements() {
                assert_eq!(k.sigma(&k.mul(&a, &b)), k.mul(&k.sigma(&a), &k.sigma(&b)));
                assert_eq!(k.sigma(&k.add(&a, &b)), k.add(&k.sigma(&a), &k.sigma(&b)));
            }
            assert_eq!(k.sigma_inv(&k.sigma(&a)).unwrap(), a);
        }
    }

    #[test]
    fn subfield_map_roundtrip() {
        let small = Fq::new(3, 1).unwrap();
        let big = Fq::new(3, 2).unwrap();
        let m = SubfieldMap::new(small.clone(), big.clone()).unwrap();
        for a in small.elements() {
            assert_eq!(m.down(&m.up(&a)).unwrap(), a);
        }
        // the generator of GF(9) is not in F_3
        assert!(m.down(&big.gen()).is_none());

        let small = Fq::new(2, 2).unwrap();
        let big = Fq::new(2, 4).unwrap();
        let m = SubfieldMap::new(small.clone(), big).unwrap();
        for a in small.elements() {
            assert_eq!(m.down(&m.up(&a)).unwrap(), a);
        }
    }
}
