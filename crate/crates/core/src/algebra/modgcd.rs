//! Modular gcd in ℚ[λ]: images modulo word-size primes, combined by the
//! Chinese remainder theorem and confirmed by trial division.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::Q;
use super::poly::Poly;

/// Primitive integer polynomial with positive leading coefficient.
fn primitive(p: &Poly) -> Vec<BigInt> {
    let lcm = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| (c * Q::from_integer(lcm.clone())).to_integer()).collect();
    primitive_part(ints)
}

fn primitive_part(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let content = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if content.is_zero() {
        return v;
    }
    let sign = if v.last().is_some_and(|c| c.is_negative()) { -BigInt::one() } else { BigInt::one() };
    let d = content * sign;
    for c in &mut v {
        *c = &*c / &d;
    }
    v
}

fn reduce(v: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    let mut out: Vec<u64> = v.iter().map(|c| c.mod_floor(&pb).to_u64().expect("reduced")).collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Monic gcd over 𝔽_p.
fn gcd_mod(a: Vec<u64>, b: Vec<u64>, p: u64) -> Vec<u64> {
    let (mut x, mut y) = (a, b);
    while !y.is_empty() {
        let inv = inv_mod(*y.last().unwrap(), p);
        while x.len() >= y.len() {
            let c = mul_mod(*x.last().unwrap(), inv, p);
            let shift = x.len() - y.len();
            for (j, yc) in y.iter().enumerate() {
                x[shift + j] = (x[shift + j] + p - mul_mod(c, *yc, p)) % p;
            }
            while x.last() == Some(&0) {
                x.pop();
            }
        }
        std::mem::swap(&mut x, &mut y);
    }
    if let Some(&lead) = x.last() {
        let inv = inv_mod(lead, p);
        for c in &mut x {
            *c = mul_mod(*c, inv, p);
        }
    }
    x
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Exact division test in ℤ[λ]; `d` primitive, so quotients stay integral.
fn divides_z(a: &[BigInt], d: &[BigInt]) -> bool {
    if d.len() > a.len() {
        return false;
    }
    let lead = d.last().unwrap();
    let mut rem = a.to_vec();
    for k in (0..=a.len() - d.len()).rev() {
        let top = &rem[k + d.len() - 1];
        if top.is_zero() {
            continue;
        }
        let (c, r) = top.div_rem(lead);
        if !r.is_zero() {
            return false;
        }
        for (j, dc) in d.iter().enumerate() {
            rem[k + j] -= &c * dc;
        }
    }
    rem.iter().all(Zero::is_zero)
}

fn to_poly(v: &[BigInt]) -> Poly {
    Poly::new(v.iter().map(|c| Q::from_integer(c.clone())).collect())
}

/// Monic gcd of two polynomials over ℚ, not both zero.
pub(crate) fn gcd_q(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    let (fa, fb) = (primitive(a), primitive(b));
    let lc = fa.last().unwrap().gcd(fb.last().unwrap());
    let max_deg = (fa.len().min(fb.len()) - 1) as usize;

    let mut prime: u64 = (1 << 31) - 1;
    let mut acc: Option<(Vec<BigInt>, BigInt)> = None;
    let mut last_candidate: Option<Vec<BigInt>> = None;
    loop {
        while !is_prime(prime) {
            prime -= 2;
        }
        let p = prime;
        prime -= 2;
        let lc_p = lc.mod_floor(&BigInt::from(p)).to_u64().unwrap();
        if lc_p == 0 {
            continue;
        }
        let (ra, rb) = (reduce(&fa, p), reduce(&fb, p));
        if ra.len() != fa.len() || rb.len() != fb.len() {
            continue;
        }
        let g = gcd_mod(ra, rb, p);
        let deg = g.len() - 1;
        if deg == 0 {
            return Poly::one();
        }
        if deg > max_deg {
            continue;
        }
        let image: Vec<u64> = g.iter().map(|c| mul_mod(*c, lc_p, p)).collect();
        acc = match acc.take() {
            Some((h, m)) if h.len() == image.len() => {
                let pb = BigInt::from(p);
                let m_inv = BigInt::from(inv_mod(m.mod_floor(&pb).to_u64().unwrap(), p));
                let h = h
                    .iter()
                    .zip(&image)
                    .map(|(hc, ic)| {
                        let t = ((BigInt::from(*ic) - hc) * &m_inv).mod_floor(&pb);
                        hc + &m * t
                    })
                    .collect();
                Some((h, m * pb))
            }
            Some((h, m)) if h.len() < image.len() => Some((h, m)),
            _ => Some((image.iter().map(|c| BigInt::from(*c)).collect(), BigInt::from(p))),
        };
        let (h, m) = acc.as_ref().unwrap();
        let half = m / 2;
        let sym: Vec<BigInt> = h.iter().map(|c| if c > &half { c - m } else { c.clone() }).collect();
        let candidate = primitive_part(sym);
        if last_candidate.as_ref() == Some(&candidate) && divides_z(&fa, &candidate) && divides_z(&fb, &candidate) {
            return to_poly(&candidate).monic();
        }
        last_candidate = Some(candidate);
    }
}
