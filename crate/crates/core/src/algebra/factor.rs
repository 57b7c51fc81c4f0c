//! Factorization over finite fields: squarefree decomposition, distinct-degree
//! splitting, then randomized equal-degree splitting with a seeded PRNG.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use super::field::FieldElement;
use super::int::prime_divisors;
use super::poly::{Poly, PolyRing};
use crate::error::{Error, Result};

/// `f = unit * prod g_i^{m_i}` with every `g_i` monic irreducible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FieldElement,
    /// Sorted by degree, then coefficients.
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn product(&self, ring: &PolyRing) -> Poly {
        self.factors
            .iter()
            .fold(ring.constant(self.unit.clone()), |acc, (g, m)| {
                ring.mul(&acc, &ring.pow(g, u64::from(*m)))
            })
    }

    /// Degrees of the distinct irreducible factors, with repetition for
    /// distinct factors of equal degree.
    pub fn degrees(&self) -> Vec<usize> {
        self.factors.iter().map(|(g, _)| g.degree().unwrap()).collect()
    }
}

/// Canonical 64-bit seed derived from the field and the coefficients of `f`.
pub fn canonical_seed(ring: &PolyRing, f: &Poly) -> u64 {
    let mut h = Sha256::new();
    let k = ring.field();
    h.update(k.characteristic().to_le_bytes());
    for c in k.modulus() {
        h.update(c.to_le_bytes());
    }
    h.update([0xff]);
    for c in f.coeffs() {
        for x in c.padded(k.degree()) {
            h.update(x.to_le_bytes());
        }
    }
    let digest = h.finalize();
    u64::from_le_bytes(digest[..8].try_into().unwrap())
}

/// Factor with the seed derived from `f`.
pub fn factor(ring: &PolyRing, f: &Poly) -> Result<Factorization> {
    factor_with_seed(ring, f, canonical_seed(ring, f))
}

pub fn factor_with_seed(ring: &PolyRing, f: &Poly, seed: u64) -> Result<Factorization> {
    let lead = f
        .leading()
        .cloned()
        .ok_or_else(|| Error::Domain("cannot factor the zero polynomial".into()))?;
    let monic = ring.monic(f)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factors = Vec::new();
    for (part, mult) in squarefree(ring, &monic)? {
        for (block, d) in distinct_degree(ring, &part)? {
            for g in equal_degree(ring, &block, d, &mut rng)? {
                factors.push((g, mult));
            }
        }
    }
    factors.sort_by(|(a, _), (b, _)| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    Ok(Factorization { unit: lead, factors })
}

/// Squarefree decomposition of a monic polynomial: pairwise coprime monic
/// squarefree parts with multiplicities.
pub fn squarefree(ring: &PolyRing, f: &Poly) -> Result<Vec<(Poly, u32)>> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return Ok(out);
    }
    let p = ring.field().characteristic() as u32;
    let df = ring.derivative(f);
    if df.is_zero() {
        let root = ring.pth_root(f);
        for (g, m) in squarefree(ring, &root)? {
            out.push((g, m * p));
        }
        return Ok(out);
    }
    let mut c = ring.gcd(f, &df);
    let mut w = ring.div_exact(f, &c)?;
    let mut i = 1u32;
    while w.degree().unwrap() > 0 {
        let y = ring.gcd(&w, &c);
        let z = ring.div_exact(&w, &y)?;
        if z.degree().unwrap() > 0 {
            out.push((z, i));
        }
        i += 1;
        c = ring.div_exact(&c, &y)?;
        w = y;
    }
    if c.degree().unwrap() > 0 {
        let root = ring.pth_root(&c);
        for (g, m) in squarefree(ring, &root)? {
            out.push((g, m * p));
        }
    }
    Ok(out)
}

/// Split a squarefree monic polynomial into products of irreducibles of
/// equal degree: `(block, d)`.
pub fn distinct_degree(ring: &PolyRing, f: &Poly) -> Result<Vec<(Poly, usize)>> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = ring.x();
    let mut h = ring.rem(&x, &rest)?;
    let mut d = 1;
    while rest.degree().unwrap() >= 2 * d {
        h = ring.frobenius_mod(&h, &rest)?;
        let g = ring.gcd(&rest, &ring.sub(&h, &x));
        if g.degree().unwrap() > 0 {
            rest = ring.div_exact(&rest, &g)?;
            h = ring.rem(&h, &rest)?;
            out.push((g, d));
        }
        d += 1;
    }
    if rest.degree().unwrap() > 0 {
        let n = rest.degree().unwrap();
        out.push((rest, n));
    }
    Ok(out)
}

/// Split a squarefree monic product of irreducibles of degree `d`.
pub fn equal_degree(ring: &PolyRing, f: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Poly>> {
    let n = f.degree().unwrap();
    if n == d {
        return Ok(vec![f.clone()]);
    }
    let k = ring.field();
    let p = k.characteristic();
    let odd_exp = (p != 2).then(|| (num_traits::pow(k.order(), d) - 1u32) / 2u32);
    loop {
        let a = ring.random(rng, n);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let g0 = ring.gcd(&a, f);
        let candidate = if g0.degree().unwrap() > 0 {
            g0
        } else {
            let t = match &odd_exp {
                Some(e) => ring.sub(&ring.pow_mod(&a, e, f)?, &ring.one()),
                None => {
                    // absolute trace to F_2
                    let mut acc = Poly::zero();
                    let mut power = ring.rem(&a, f)?;
                    for _ in 0..k.degree() * d {
                        acc = ring.add(&acc, &power);
                        power = ring.mulmod(&power, &power, f)?;
                    }
                    acc
                }
            };
            ring.gcd(&t, f)
        };
        let dg = candidate.degree().unwrap();
        if dg > 0 && dg < n {
            let other = ring.div_exact(f, &candidate)?;
            let mut out = equal_degree(ring, &candidate, d, rng)?;
            out.extend(equal_degree(ring, &other, d, rng)?);
            return Ok(out);
        }
    }
}

/// Rabin's test: `x^(Q^n) = x mod f` and `gcd(x^(Q^(n/r)) - x, f) = 1` for
/// every prime `r | n`.
pub fn is_irreducible(ring: &PolyRing, f: &Poly) -> Result<bool> {
    let n = match f.degree() {
        None | Some(0) => return Ok(false),
        Some(1) => return Ok(true),
        Some(n) => n,
    };
    let f = ring.monic(f)?;
    let x = ring.x();
    let mut powers = vec![ring.rem(&x, &f)?];
    for _ in 0..n {
        let next = ring.frobenius_mod(powers.last().unwrap(), &f)?;
        powers.push(next);
    }
    if powers[n] != ring.rem(&x, &f)? {
        return Ok(false);
    }
    for r in prime_divisors(n as u64) {
        let h = &powers[n / r as usize];
        if ring.gcd(&ring.sub(h, &x), &f).degree().unwrap() > 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Distinct roots in the coefficient field, in lexicographic order.
pub fn roots(ring: &PolyRing, f: &Poly) -> Result<Vec<FieldElement>> {
    if f.is_zero() {
        return Err(Error::Domain("roots of the zero polynomial".into()));
    }
    let f = ring.monic(f)?;
    if f.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let x = ring.x();
    let xq = ring.frobenius_mod(&x, &f)?;
    let g = ring.gcd(&f, &ring.sub(&xq, &x));
    if g.degree().unwrap() == 0 {
        return Ok(Vec::new());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(canonical_seed(ring, &g));
    let mut out: Vec<FieldElement> = equal_degree(ring, &g, 1, &mut rng)?
        .into_iter()
        .map(|lin| ring.field().neg(&lin.coeff(0)))
        .collect();
    out.sort();
    Ok(out)
}
