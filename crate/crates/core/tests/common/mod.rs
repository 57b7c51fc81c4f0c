//! Independent oracles shared by the integration tests and the acceptance
//! harness. They use their own field construction and brute force instead of
//! the library's arithmetic, so agreement with the library is evidence rather
//! than tautology.

#![allow(dead_code)]

use ffiwa::algebra::{FieldElement, FiniteField, Poly, PolyRing};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Largest field the oracle will tabulate.
pub const MAX_ORACLE_ORDER: u64 = 1 << 21;

/// `F_{p^n}` built from the first monic polynomial (by index) for which `x`
/// has multiplicative order `p^n − 1`, with exp/log tables. Elements are
/// indices whose base-`p` digits are the coefficients, constant term first.
pub struct OracleField {
    pub p: u64,
    pub n: u32,
    size: u64,
    exp: Vec<u32>,
    log: Vec<u32>,
}

fn digits(mut idx: u64, p: u64, n: u32) -> Vec<u64> {
    (0..n)
        .map(|_| {
            let d = idx % p;
            idx /= p;
            d
        })
        .collect()
}

fn undigits(d: &[u64], p: u64) -> u64 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// `a·b mod m` for monic `m` of degree `n` over `F_p`, dense vectors of length `n`.
fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let n = m.len() - 1;
    let mut prod = vec![0u64; 2 * n];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for k in (n..2 * n).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        for (j, &mj) in m.iter().enumerate().take(n) {
            prod[k - n + j] = (prod[k - n + j] + p * p - c * mj % p) % p;
        }
        prod[k] = 0;
    }
    prod.truncate(n);
    prod
}

fn powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let n = m.len() - 1;
    let mut acc = vec![0u64; n];
    acc[0] = 1;
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(&acc, &b, m, p);
        }
        b = mulmod(&b, &b, m, p);
        e >>= 1;
    }
    acc
}

fn prime_factors(mut n: u64) -> Vec<u64> {
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

impl OracleField {
    pub fn new(p: u64, n: u32) -> Self {
        let size = p.pow(n);
        assert!(size <= MAX_ORACLE_ORDER, "oracle field of order {size} is too large");
        let nn = n as usize;
        let order = size - 1;
        let factors = prime_factors(order);
        let mut x = vec![0u64; nn];
        if nn > 1 {
            x[1] = 1;
        }
        let mut modulus = None;
        for cand in 0..p.pow(n) {
            let mut m = digits(cand, p, n);
            if m[0] == 0 {
                continue;
            }
            m.push(1);
            // for n = 1 the class of x is −m_0
            let xe = if nn == 1 { vec![(p - m[0]) % p] } else { x.clone() };
            let one = powmod(&xe, order, &m, p);
            if one.iter().enumerate().any(|(i, &c)| c != u64::from(i == 0)) {
                continue;
            }
            let primitive = factors.iter().all(|&l| {
                let r = powmod(&xe, order / l, &m, p);
                r.iter().enumerate().any(|(i, &c)| c != u64::from(i == 0))
            });
            if primitive {
                modulus = Some((m, xe));
                break;
            }
        }
        let (m, xe) = modulus.expect("a primitive polynomial exists");
        let mut exp = vec![0u32; order as usize];
        let mut log = vec![0u32; size as usize];
        let mut cur = vec![0u64; nn];
        cur[0] = 1;
        for i in 0..order as usize {
            let idx = undigits(&cur, p) as u32;
            exp[i] = idx;
            log[idx as usize] = i as u32;
            cur = mulmod(&cur, &xe, &m, p);
        }
        OracleField { p, n, size, exp, log }
    }

    pub fn order(&self) -> u64 {
        self.size
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.size as u32
    }

    pub fn one(&self) -> u32 {
        1
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a as u64, b as u64);
        let (mut out, mut place) = (0u64, 1u64);
        while a > 0 || b > 0 {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out as u32
    }

    pub fn neg(&self, a: u32) -> u32 {
        let mut a = a as u64;
        let (mut out, mut place) = (0u64, 1u64);
        while a > 0 {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out as u32
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let order = self.size - 1;
        let e = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % order;
        self.exp[e as usize]
    }

    /// `a^e`, with `e` reduced modulo the group order.
    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let order = self.size - 1;
        let l = (self.log[a as usize] as u128 * (e % order) as u128) % order as u128;
        self.exp[l as usize]
    }

    /// `a^(q^k)` for `q = p^s`.
    pub fn frobenius(&self, a: u32, q: u64, k: u32) -> u32 {
        let order = self.size - 1;
        let mut e = 1u64;
        for _ in 0..k {
            e = ((e as u128 * q as u128) % order as u128) as u64;
        }
        if e == 0 {
            e = order;
        }
        self.pow(a, e)
    }

    pub fn eval(&self, coeffs: &[u32], x: u32) -> u32 {
        coeffs.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }

    /// All roots, by exhaustion.
    pub fn roots(&self, coeffs: &[u32]) -> Vec<u32> {
        self.elements().filter(|&x| self.eval(coeffs, x) == 0).collect()
    }

    /// Image of an element of the library field `F_{p^s}` once its
    /// generator is sent to `g`.
    pub fn image(&self, g: u32, a: &FieldElement) -> u32 {
        a.coeffs()
            .iter()
            .rev()
            .fold(0, |acc, &c| self.add(self.mul(acc, g), c as u32 % self.p as u32))
    }

    /// A root of the defining polynomial of the library field `k`, i.e. a
    /// valid image for its generator.
    pub fn generator_image(&self, k: &FiniteField) -> u32 {
        if k.degree() == 1 {
            return 0;
        }
        let m: Vec<u32> = k.modulus().iter().map(|&c| c as u32).collect();
        self.elements()
            .find(|&x| self.eval(&m, x) == 0)
            .expect("the oracle field contains the base field")
    }

    /// Coefficients of a polynomial over the library field mapped through `g`.
    pub fn image_poly(&self, g: u32, f: &Poly) -> Vec<u32> {
        f.coeffs().iter().map(|c| self.image(g, c)).collect()
    }
}

/// Reduced Drinfeld module evaluated pointwise in an oracle field:
/// `φ̄_T(x) = Σ a_i x^{q^i}`.
pub struct PointwiseModule<'a> {
    pub field: &'a OracleField,
    pub q: u64,
    /// `a_i(t)` for the chosen image `t` of `T`.
    pub coeffs: Vec<u32>,
}

impl PointwiseModule<'_> {
    pub fn phi_t(&self, x: u32) -> u32 {
        let mut acc = 0;
        let mut xq = x;
        for &a in &self.coeffs {
            acc = self.field.add(acc, self.field.mul(a, xq));
            xq = self.field.pow(xq, self.q);
        }
        acc
    }

    /// `φ̄_c(x) = Σ c_j φ̄_T^j(x)` by Horner's rule on the additive map.
    pub fn phi(&self, c: &[u32], x: u32) -> u32 {
        let mut acc = 0;
        for &cj in c.iter().rev() {
            acc = self.field.add(self.phi_t(acc), self.field.mul(cj, x));
        }
        acc
    }

    /// All `x` with `φ̄_c(x) = 0`.
    pub fn kernel(&self, c: &[u32]) -> Vec<u32> {
        self.field.elements().filter(|&x| self.phi(c, x) == 0).collect()
    }
}

/// Counts from exhaustive enumeration of the reduced `π`-torsion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionCounts {
    pub roots: u64,
    /// Roots fixed by `x ↦ x^{#F_v}`.
    pub fixed: u64,
    /// Roots lying in each requested subfield, as `(degree over F_p, count)`.
    pub in_subfields: Vec<(u32, u64)>,
}

/// Enumerate `φ̄[π]` at `v` inside `F_{p^{ambient}}`, which must contain
/// `F_v`, also counting the roots in the subfields of the given degrees.
pub fn torsion_counts(q: u64, phi_t: &[Poly], pi: &Poly, v: &Poly, ambient: u32, subfields: &[u32]) -> TorsionCounts {
    let k = FiniteField::with_order(q).unwrap();
    let p = k.characteristic();
    let field = OracleField::new(p, ambient);
    let g = field.generator_image(&k);
    let v_img = field.image_poly(g, v);
    let t = field
        .elements()
        .find(|&x| field.eval(&v_img, x) == 0)
        .expect("v has a root in the ambient field");
    let coeffs: Vec<u32> = phi_t.iter().map(|a| field.eval(&field.image_poly(g, a), t)).collect();
    let module = PointwiseModule {
        field: &field,
        q,
        coeffs,
    };
    let c = field.image_poly(g, pi);
    let roots = module.kernel(&c);
    let deg_v = v.degree().unwrap() as u32;
    let fixed = roots.iter().filter(|&&x| field.frobenius(x, q, deg_v) == x).count() as u64;
    let in_subfields = subfields
        .iter()
        .map(|&d| {
            (
                d,
                roots.iter().filter(|&&x| field.frobenius(x, p, d) == x).count() as u64,
            )
        })
        .collect();
    TorsionCounts {
        roots: roots.len() as u64,
        fixed,
        in_subfields,
    }
}

/// Monic irreducibles of degree `d` over `F_q`, found by trial division.
pub fn monic_irreducibles(q: u64, d: usize) -> Vec<Poly> {
    let k = FiniteField::with_order(q).unwrap();
    let ring = PolyRing::new(k.clone());
    (0..q.pow(d as u32))
        .map(|idx| {
            let mut coeffs: Vec<FieldElement> = digits(idx, q, d as u32).into_iter().map(|c| k.from_index(c)).collect();
            coeffs.push(k.one());
            Poly::new(coeffs)
        })
        .filter(|f| irreducible_by_trial_division(&ring, f))
        .collect()
}

/// Drinfeld modules of rank at most 2 used by the torsion grids, as
/// `(q, τ-coefficients of φ_T)`.
pub const TORSION_MODULES: [(u64, &[&str]); 8] = [
    (2, &["T", "1"]),
    (2, &["T", "T^2+T+1"]),
    (2, &["T", "1", "1"]),
    (2, &["T", "T", "1"]),
    (2, &["T", "0", "T^2+T+1"]),
    (3, &["T", "1"]),
    (3, &["T", "0", "1"]),
    (3, &["T", "1", "2"]),
];

/// Splitting of an irreducible `v` of degree `d` over `F_q` in `F_{q^m}`
/// from the Frobenius orbit of one root: `(count, degree)`.
pub fn splitting_by_orbit(q: u64, v: &Poly, m: u64) -> (u64, u64) {
    let k = FiniteField::with_order(q).unwrap();
    let d = v.degree().unwrap() as u32;
    let field = OracleField::new(k.characteristic(), k.degree() as u32 * d);
    let g = field.generator_image(&k);
    let v_img = field.image_poly(g, v);
    let alpha = field
        .elements()
        .find(|&x| field.eval(&v_img, x) == 0)
        .expect("an irreducible of degree d has a root in F_{q^d}");
    let step = |x: u32| {
        let mut y = x;
        for _ in 0..m {
            y = field.pow(y, q);
        }
        y
    };
    let mut orbit = 1u64;
    let mut y = step(alpha);
    while y != alpha {
        y = step(y);
        orbit += 1;
    }
    (d as u64 / orbit, orbit)
}

/// Power sums `s_1..=s_count` of the inverse roots of `L` by Newton's
/// identities.
pub fn power_sums(l: &[i64], count: usize) -> Vec<BigInt> {
    let a = |i: usize| BigInt::from(*l.get(i).unwrap_or(&0));
    let mut s = vec![BigInt::zero(); count + 1];
    for k in 1..=count {
        let mut v = -BigInt::from(k as u64) * a(k);
        for i in 1..k {
            v -= a(i) * &s[k - i];
        }
        s[k] = v;
    }
    s
}

/// `h_m = |Π (1 − α_i^m)|` from power sums: the polynomial
/// `Π (1 − α_i^m x)` is rebuilt from `s_{km}` and evaluated at 1.
pub fn class_number_newton(l: &[i64], m: u64) -> BigInt {
    let two_g = l.len() - 1;
    let s = power_sums(l, two_g * m as usize);
    let t = |k: usize| &s[k * m as usize];
    let mut b = vec![BigInt::one()];
    for k in 1..=two_g {
        let mut acc = BigInt::zero();
        for i in 0..k {
            acc += &b[i] * t(k - i);
        }
        let kk = BigInt::from(k as u64);
        assert!((&acc % &kk).is_zero(), "Newton identity division is exact");
        b.push(-acc / kk);
    }
    b.iter().fold(BigInt::zero(), |acc, x| acc + x).abs()
}

/// Determinant of a square rational matrix by Gaussian elimination.
pub fn rational_det(mut a: Vec<Vec<BigRational>>) -> BigRational {
    let size = a.len();
    let mut det = BigRational::one();
    for col in 0..size {
        let Some(pivot) = (col..size).find(|&r| !a[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let pv = a[col][col].clone();
        det *= &pv;
        for r in col + 1..size {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &pv;
            for c in col..size {
                let delta = &factor * &a[col][c];
                a[r][c] -= delta;
            }
        }
    }
    det
}

/// Determinant of the Sylvester matrix of `f` and `g` (low degree first).
pub fn sylvester_resultant(f: &[BigInt], g: &[BigInt]) -> BigInt {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    let mut a = vec![vec![BigRational::zero(); size]; size];
    for i in 0..n {
        for (j, c) in f.iter().rev().enumerate() {
            a[i][i + j] = BigRational::from_integer(c.clone());
        }
    }
    for i in 0..m {
        for (j, c) in g.iter().rev().enumerate() {
            a[n + i][i + j] = BigRational::from_integer(c.clone());
        }
    }
    let det = rational_det(a);
    assert!(det.is_integer());
    det.to_integer()
}

/// Product of two integer polynomials reduced modulo a monic `f`.
fn mul_mod_monic(a: &[BigInt], b: &[BigInt], f: &[BigInt]) -> Vec<BigInt> {
    let d = f.len() - 1;
    let mut prod = vec![BigInt::zero(); a.len() + b.len()];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            prod[i + j] += x * y;
        }
    }
    for k in (d..prod.len()).rev() {
        let c = std::mem::take(&mut prod[k]);
        if c.is_zero() {
            continue;
        }
        for j in 0..d {
            prod[k - d + j] -= &c * &f[j];
        }
    }
    prod.truncate(d);
    prod.resize(d, BigInt::zero());
    prod
}

/// `Res(f, (1+T)^m − 1)` for monic `f` as the norm of `(1+T)^m − 1` in
/// `Z[T]/(f)`: the determinant of multiplication by it.
pub fn omega_norm(f: &[BigInt], m: u64) -> BigInt {
    let d = f.len() - 1;
    assert!(f[d].is_one(), "f must be monic");
    let mut one = vec![BigInt::zero(); d];
    one[0] = BigInt::one();
    let mut base = one.clone();
    if d > 1 {
        base[1] = BigInt::one();
    } else {
        // T ≡ −f_0 modulo a linear f
        base[0] = BigInt::one() - &f[0];
    }
    let mut acc = one.clone();
    let mut e = m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod_monic(&acc, &base, f);
        }
        base = mul_mod_monic(&base, &base, f);
        e >>= 1;
    }
    acc[0] -= 1;
    let mut t_pow = one;
    let mut columns = Vec::with_capacity(d);
    for _ in 0..d {
        columns.push(mul_mod_monic(&acc, &t_pow, f));
        let mut shifted = vec![BigInt::zero()];
        shifted.extend(t_pow.iter().cloned());
        t_pow = mul_mod_monic(&shifted, &[BigInt::one()], f);
    }
    let matrix: Vec<Vec<BigRational>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| BigRational::from_integer(columns[j][i].clone()))
                .collect()
        })
        .collect();
    let det = rational_det(matrix);
    assert!(det.is_integer());
    det.to_integer()
}

/// An elementary module of the growth grid: `p`, the `μ_i` and the
/// distinguished `f_j` (integer coefficients, low degree first).
#[derive(Clone, Debug)]
pub struct GridModule {
    pub p: u64,
    pub mu_parts: Vec<u32>,
    pub lambda_parts: Vec<Vec<i64>>,
}

impl GridModule {
    pub fn mu(&self) -> u64 {
        self.mu_parts.iter().map(|&m| m as u64).sum()
    }

    pub fn lambda(&self) -> usize {
        self.lambda_parts.iter().map(|f| f.len() - 1).sum()
    }

    /// `e_n` from norms computed in `Z[T]/(f_j)`.
    pub fn exponent(&self, n: u32) -> u64 {
        let m = self.p.pow(n);
        let mut e = self.mu() * m;
        for f in &self.lambda_parts {
            let f: Vec<BigInt> = f.iter().map(|&c| BigInt::from(c)).collect();
            e += valuation_by_division(&omega_norm(&f, m), self.p).expect("finite quotient");
        }
        e
    }
}

/// Every `(μ, λ) ∈ {0,1} × {0,1,2}` for `p ∈ {2,3}`, with several shapes per
/// cell: split and non-split distinguished polynomials, one or two parts.
pub fn elementary_grid() -> Vec<GridModule> {
    let mut out = Vec::new();
    for p in [2i64, 3] {
        let mut lambda_options: Vec<Vec<Vec<i64>>> = vec![
            vec![],
            vec![vec![-p, 1]],
            vec![vec![-p * p, 1]],
            vec![vec![p, 0, 1]],
            vec![vec![p * p, p, 1]],
            vec![vec![-p, 1], vec![-p * p, 1]],
        ];
        if p == 3 {
            // at p = 2 the root −2 of T + 2 is also a root of every ω_n
            lambda_options.push(vec![vec![p, 1]]);
        }
        for mu_parts in [vec![], vec![1u32]] {
            for parts in &lambda_options {
                out.push(GridModule {
                    p: p as u64,
                    mu_parts: mu_parts.clone(),
                    lambda_parts: parts.clone(),
                });
            }
        }
    }
    out
}

/// Irreducibility by trial division by every monic polynomial of degree at
/// most `deg f / 2`.
pub fn irreducible_by_trial_division(ring: &PolyRing, f: &Poly) -> bool {
    let Some(d) = f.degree() else { return false };
    if d == 0 {
        return false;
    }
    let k = ring.field();
    let q = k.order_u64().unwrap();
    for e in 1..=d / 2 {
        let count = q.pow(e as u32);
        for idx in 0..count {
            let mut coeffs: Vec<FieldElement> = digits(idx, q, e as u32).into_iter().map(|c| k.from_index(c)).collect();
            coeffs.push(k.one());
            let g = Poly::new(coeffs);
            if ring.rem(f, &g).unwrap().is_zero() {
                return false;
            }
        }
    }
    true
}

/// `v_p(n)` by repeated division; `None` for zero.
pub fn valuation_by_division(n: &BigInt, p: u64) -> Option<u64> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut k = 0;
    while (&n % &p).is_zero() {
        n /= &p;
        k += 1;
    }
    Some(k)
}

/// A curve of the class-number corpus with its own evaluator for the oracle.
pub struct CorpusCurve {
    pub q: u64,
    pub affine: &'static str,
    pub genus: usize,
    /// Points at infinity on the smooth model.
    pub at_infinity: u64,
    pub eval: fn(&OracleField, u32, u32) -> u32,
}

fn minus(f: &OracleField, a: u32) -> u32 {
    f.neg(a)
}

/// Curves of genus ≤ 2 over `F_2` and `F_3`, each with one point at infinity.
pub fn curve_corpus() -> Vec<CorpusCurve> {
    vec![
        CorpusCurve {
            q: 2,
            affine: "y^2+y+x^3",
            genus: 1,
            at_infinity: 1,
            eval: |f, x, y| f.add(f.add(f.pow(y, 2), y), f.pow(x, 3)),
        },
        CorpusCurve {
            q: 2,
            affine: "y^2+x*y+x^3+1",
            genus: 1,
            at_infinity: 1,
            eval: |f, x, y| f.add(f.add(f.pow(y, 2), f.mul(x, y)), f.add(f.pow(x, 3), 1)),
        },
        CorpusCurve {
            q: 2,
            affine: "y^2+y+x^5",
            genus: 2,
            at_infinity: 1,
            eval: |f, x, y| f.add(f.add(f.pow(y, 2), y), f.pow(x, 5)),
        },
        CorpusCurve {
            q: 2,
            affine: "y^2+y+x^5+x^3",
            genus: 2,
            at_infinity: 1,
            eval: |f, x, y| f.add(f.add(f.pow(y, 2), y), f.add(f.pow(x, 5), f.pow(x, 3))),
        },
        CorpusCurve {
            q: 3,
            affine: "y^2-x^3+x",
            genus: 1,
            at_infinity: 1,
            eval: |f, x, y| f.add(f.add(f.pow(y, 2), minus(f, f.pow(x, 3))), x),
        },
        CorpusCurve {
            q: 3,
            affine: "y^2-x^3-x^2-1",
            genus: 1,
            at_infinity: 1,
            eval: |f, x, y| {
                let rhs = f.add(f.add(f.pow(x, 3), f.pow(x, 2)), 1);
                f.sub(f.pow(y, 2), rhs)
            },
        },
        CorpusCurve {
            q: 3,
            affine: "y^2-x^5+x-1",
            genus: 2,
            at_infinity: 1,
            eval: |f, x, y| {
                let rhs = f.add(f.sub(f.pow(x, 5), x), 1);
                f.sub(f.pow(y, 2), rhs)
            },
        },
    ]
}

/// Point counts over `F_{q^k}` by enumerating the affine plane with the
/// oracle field; `curve(x, y)` evaluates the model.
pub fn count_affine(field: &OracleField, curve: impl Fn(&OracleField, u32, u32) -> u32) -> u64 {
    let mut n = 0;
    for x in field.elements() {
        for y in field.elements() {
            if curve(field, x, y) == 0 {
                n += 1;
            }
        }
    }
    n
}

/// `Σ c_i(t) x^{q^i}` for a skew polynomial over `F_q[T]` evaluated at
/// `T = t` in an oracle field, `g` being the image of the generator of `F_q`.
pub fn eval_skew(field: &OracleField, g: u32, q: u64, coeffs: &[Poly], t: u32, x: u32) -> u32 {
    let mut acc = 0;
    let mut xq = x;
    for c in coeffs {
        let ct = field.eval(&field.image_poly(g, c), t);
        acc = field.add(acc, field.mul(ct, xq));
        xq = field.pow(xq, q);
    }
    acc
}

/// One `(φ, π, v)` triple of the torsion grid.
#[derive(Clone, Debug)]
pub struct TorsionCase {
    pub q: u64,
    pub phi_t: Vec<Poly>,
    pub pi: Poly,
    pub v: Poly,
}

/// Every triple with `φ` from [`TORSION_MODULES`], `deg π ≤ 2`, `deg v ≤ 2`,
/// `v ≠ π` and `v` not dividing the leading coefficient of `φ_T`.
pub fn torsion_grid() -> Vec<TorsionCase> {
    let mut out = Vec::new();
    for (q, coeffs) in TORSION_MODULES {
        let k = FiniteField::with_order(q).unwrap();
        let ring = PolyRing::new(k.clone());
        let phi_t: Vec<Poly> = coeffs
            .iter()
            .map(|c| ffiwa::algebra::parse::parse_poly(c, &k).unwrap())
            .collect();
        let lead = phi_t.last().unwrap().clone();
        let places: Vec<Poly> = (1..=2).flat_map(|d| monic_irreducibles(q, d)).collect();
        for pi in &places {
            for v in &places {
                if v == pi || ring.rem(&lead, v).unwrap().is_zero() {
                    continue;
                }
                out.push(TorsionCase {
                    q,
                    phi_t: phi_t.clone(),
                    pi: pi.clone(),
                    v: v.clone(),
                });
            }
        }
    }
    out
}
