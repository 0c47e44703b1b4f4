//! Arithmetic in `F_p[x]` for word-sized primes, used only to produce
//! certificates (coprimality, irreducibility) that avoid big-integer work.

use std::sync::OnceLock;

use num_integer::Integer as _;
use num_traits::ToPrimitive;

use super::IntPoly;
use crate::arith::Integer;

type Fp = Vec<u64>;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Descending primes just below `2^31`.
pub fn large_primes() -> &'static [u64] {
    static P: OnceLock<Vec<u64>> = OnceLock::new();
    P.get_or_init(|| (1u64 << 20..1u64 << 31).rev().filter(|&n| is_prime(n)).take(24).collect())
}

/// Ascending primes from 3 upward, for irreducibility tests.
pub fn small_primes() -> &'static [u64] {
    static P: OnceLock<Vec<u64>> = OnceLock::new();
    P.get_or_init(|| (3u64..).filter(|&n| is_prime(n)).take(60).collect())
}

fn trim(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powm(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, a, p);
        }
        a = mulm(a, a, p);
        e >>= 1;
    }
    r
}

fn inv(a: u64, p: u64) -> u64 {
    powm(a, p - 2, p)
}

pub fn reduce(f: &IntPoly, p: u64) -> Fp {
    let pb = Integer::from(p);
    trim(
        f.coeffs()
            .iter()
            .map(|c| c.mod_floor(&pb).to_u64().expect("residue fits"))
            .collect(),
    )
}

fn rem(a: &Fp, b: &Fp, p: u64) -> Fp {
    let mut r = a.clone();
    let db = b.len() - 1;
    let il = inv(b[db], p);
    while r.len() > db {
        let top = r.len() - 1;
        let t = mulm(r[top], il, p);
        let k = top - db;
        for (j, &bj) in b.iter().enumerate() {
            r[k + j] = (r[k + j] + p - mulm(t, bj, p)) % p;
        }
        r = trim(r);
    }
    r
}

fn gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn mul_mod(a: &Fp, b: &Fp, f: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            c[i + j] = (c[i + j] + mulm(x, y, p)) % p;
        }
    }
    rem(&trim(c), f, p)
}

fn pow_mod(a: &Fp, mut e: u64, f: &Fp, p: u64) -> Fp {
    let mut base = rem(a, f, p);
    let mut acc = vec![1u64];
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(&acc, &base, f, p);
        }
        e >>= 1;
        if e > 0 {
            base = mul_mod(&base, &base, f, p);
        }
    }
    acc
}

fn sub(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect(),
    )
}

/// `true` proves `gcd(f, g) = 1` over `Q`; `false` is inconclusive.
///
/// A prime not dividing either leading coefficient cannot raise the degree
/// of a common factor, so a constant gcd mod `p` is a proof.
pub fn coprime_certificate(f: &IntPoly, g: &IntPoly) -> bool {
    if f.is_zero() || g.is_zero() {
        return false;
    }
    for &p in large_primes().iter().take(3) {
        let (fp, gp) = (reduce(f, p), reduce(g, p));
        if fp.len() != f.deg() + 1 || gp.len() != g.deg() + 1 {
            continue;
        }
        if gcd(&fp, &gp, p).len() == 1 {
            return true;
        }
    }
    false
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test: is `f` (of full degree mod `p`) irreducible over `F_p`?
fn irreducible_mod(f: &Fp, p: u64) -> bool {
    let m = (f.len() - 1) as u64;
    let x: Fp = vec![0, 1];
    // x^(p^k) mod f for k = 0..=m
    let mut frob = vec![rem(&x, f, p)];
    for _ in 0..m {
        let last = frob.last().unwrap();
        frob.push(pow_mod(last, p, f, p));
    }
    if frob[m as usize] != frob[0] {
        return false;
    }
    for q in prime_divisors(m) {
        let h = sub(&frob[(m / q) as usize], &x, p);
        if gcd(f, &h, p).len() != 1 {
            return false;
        }
    }
    true
}

/// `true` proves `f` irreducible over `Q`: its image mod some small prime
/// keeps the degree and is irreducible. `false` is inconclusive.
pub fn irreducible_certificate(f: &IntPoly) -> bool {
    if f.deg() == 0 {
        return false;
    }
    if f.deg() == 1 {
        return true;
    }
    small_primes().iter().any(|&p| {
        let fp = reduce(f, p);
        fp.len() == f.deg() + 1 && irreducible_mod(&fp, p)
    })
}
