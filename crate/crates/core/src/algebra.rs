//! Table-driven arithmetic in small finite fields and transversal designs
//! built from them.
//!
//! Elements of GF(p^e) are indexed by `Σ c_i p^i` where `c_0 + c_1 x + ...`
//! is the residue polynomial modulo a fixed irreducible polynomial. The
//! moduli below are the Conway polynomials, so tables (and every TD file
//! derived from them) are reproducible.

use crate::error::AlgebraError;
use crate::model::{DesignParams, DirectedDesign, GroupedDesign, OrderedBlock, Point};

/// Orders with a built-in field.
pub const SUPPORTED_ORDERS: [u32; 18] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32];

/// (order, characteristic, degree, modulus coefficients from x^0 up to x^(e-1);
/// the leading x^e coefficient is 1).
const MODULI: &[(u32, u32, u32, &[u32])] = &[
    (4, 2, 2, &[1, 1]),        // x^2 + x + 1
    (8, 2, 3, &[1, 1, 0]),     // x^3 + x + 1
    (16, 2, 4, &[1, 1, 0, 0]), // x^4 + x + 1
    (32, 2, 5, &[1, 0, 1, 0, 0]), // x^5 + x^2 + 1
    (9, 3, 2, &[2, 2]),        // x^2 + 2x + 2
    (27, 3, 3, &[1, 2, 0]),    // x^3 + 2x + 1
    (25, 5, 2, &[2, 4]),       // x^2 + 4x + 2
];

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// A finite field of order `q` given by full addition and multiplication
/// tables over element indices `[0, q)`. Index 0 is zero, index 1 is one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteField {
    order: u32,
    characteristic: u32,
    degree: u32,
    add: Vec<u8>,
    mul: Vec<u8>,
}

impl FiniteField {
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.order + b) as usize] as u32
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.order + b) as usize] as u32
    }

    pub fn neg(&self, a: u32) -> u32 {
        (0..self.order).find(|&b| self.add(a, b) == 0).expect("additive inverse exists")
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        (1..self.order).find(|&b| self.mul(a, b) == 1)
    }
}

fn digits(mut x: u32, p: u32, e: u32) -> Vec<u32> {
    (0..e)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn poly_mul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let e = modulus.len();
    let mut prod = vec![0u32; 2 * e];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // x^e ≡ −(m_0 + m_1 x + ... + m_{e−1} x^{e−1})
    for deg in (e..2 * e).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        prod[deg] = 0;
        for (i, &m) in modulus.iter().enumerate() {
            let t = deg - e + i;
            prod[t] = (prod[t] + (p - c) * m) % p;
        }
    }
    prod.truncate(e);
    prod
}

/// Builds the field of order `q`.
pub fn field_build(q: u32) -> Result<FiniteField, AlgebraError> {
    if !SUPPORTED_ORDERS.contains(&q) {
        return Err(AlgebraError::UnsupportedOrder(q));
    }
    let n = q as usize;
    let mut add = vec![0u8; n * n];
    let mut mul = vec![0u8; n * n];
    if is_prime(q) {
        for a in 0..q {
            for b in 0..q {
                add[(a * q + b) as usize] = ((a + b) % q) as u8;
                mul[(a * q + b) as usize] = ((a * b) % q) as u8;
            }
        }
        return Ok(FiniteField { order: q, characteristic: q, degree: 1, add, mul });
    }
    let &(_, p, e, modulus) = MODULI.iter().find(|m| m.0 == q).expect("modulus table covers prime powers");
    for a in 0..q {
        let da = digits(a, p, e);
        for b in 0..q {
            let db = digits(b, p, e);
            let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
            add[(a * q + b) as usize] = undigits(&sum, p) as u8;
            mul[(a * q + b) as usize] = undigits(&poly_mul_mod(&da, &db, modulus, p), p) as u8;
        }
    }
    Ok(FiniteField { order: q, characteristic: p, degree: e, add, mul })
}

/// Parameters of a TD(k, n) with λ = 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TdSpec {
    pub k: u32,
    pub n: u32,
}

/// Builds TD(k, n) over GF(n).
///
/// Group `g` holds points `g·n .. g·n + n`. For `(a, b) ∈ F²` the block
/// takes `a·x_g + b` in group `g` for the field element `x_g` with index
/// `g`; when `k = n + 1` the last group receives the slope `a` instead.
/// Blocks list their points in group order.
pub fn td_build(spec: TdSpec) -> Result<GroupedDesign, AlgebraError> {
    let TdSpec { k, n } = spec;
    let field = field_build(n)?;
    if k > n + 1 {
        return Err(AlgebraError::KTooLarge { k, n });
    }
    if k < 2 {
        return Err(AlgebraError::KTooLarge { k, n });
    }
    let affine_groups = k.min(n);
    let mut blocks = Vec::with_capacity((n * n) as usize);
    for a in 0..n {
        for b in 0..n {
            let mut pts: smallvec::SmallVec<[Point; 8]> = (0..affine_groups)
                .map(|g| g * n + field.add(field.mul(a, g), b))
                .collect();
            if k == n + 1 {
                pts.push(n * n + a);
            }
            blocks.push(OrderedBlock::from_distinct(pts));
        }
    }
    let params = DesignParams::new(k * n, k, 1).expect("TD parameters are valid");
    let design = DirectedDesign::new(params, blocks).expect("TD points are in range");
    let groups = (0..k).map(|g| (g * n..(g + 1) * n).collect()).collect();
    Ok(GroupedDesign::new(design, groups, false).expect("TD columns partition the points"))
}
