//! Table-driven arithmetic for small finite fields, used by exhaustive
//! point counting. Elements are the base-`p` indices of [`FiniteField`];
//! multiplication goes through discrete logarithms and addition through
//! Zech logarithms.

use num_bigint::BigUint;

use super::field::{FieldElement, FiniteField};
use crate::error::{Error, Result};

/// Upper bound on the field size accepted for table construction.
pub const MAX_TABLE_ORDER: u64 = 1 << 20;

#[derive(Clone, Debug)]
pub struct SmallField {
    field: FiniteField,
    order: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    /// `zech[d] = log(1 + g^d)`, or `u32::MAX` when `1 + g^d = 0`.
    zech: Vec<u32>,
}

impl SmallField {
    pub fn new(field: &FiniteField) -> Result<Self> {
        let order = field
            .order_u64()
            .filter(|&n| n <= MAX_TABLE_ORDER)
            .ok_or_else(|| Error::Size(format!("{field:?} exceeds the table size limit")))?;
        let group = order - 1;
        let target = BigUint::from(group);
        let generator = (1..order)
            .map(|i| field.from_index(i))
            .find(|g| field.multiplicative_order(g).map(|o| o == target).unwrap_or(false))
            .ok_or_else(|| Error::Consistency("no primitive element found".into()))?;

        let mut exp = vec![0u32; group as usize];
        let mut log = vec![u32::MAX; order as usize];
        let mut acc = field.one();
        for (i, slot) in exp.iter_mut().enumerate() {
            let idx = field.index_of(&acc) as u32;
            *slot = idx;
            log[idx as usize] = i as u32;
            acc = field.mul(&acc, &generator);
        }
        let one = field.one();
        let zech = exp
            .iter()
            .map(|&e| {
                let s = field.add(&one, &field.from_index(e as u64));
                if s.is_zero() {
                    u32::MAX
                } else {
                    log[field.index_of(&s) as usize]
                }
            })
            .collect();
        Ok(SmallField {
            field: field.clone(),
            order: order as u32,
            exp,
            log,
            zech,
        })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn index(&self, a: &FieldElement) -> u32 {
        self.field.index_of(a) as u32
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.order - 1;
        let s = self.log[a as usize] + self.log[b as usize];
        self.exp[(if s >= n { s - n } else { s }) as usize]
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        let n = self.order - 1;
        let la = self.log[a as usize];
        let lb = self.log[b as usize];
        let d = if lb >= la { lb - la } else { lb + n - la };
        let z = self.zech[d as usize];
        if z == u32::MAX {
            return 0;
        }
        let s = la + z;
        self.exp[(if s >= n { s - n } else { s }) as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_agree_with_field_arithmetic() {
        for q in [2u64, 3, 4, 9, 16, 25, 27] {
            let k = FiniteField::with_order(q).unwrap();
            let t = SmallField::new(&k).unwrap();
            for a in 0..q {
                for b in 0..q {
                    let (x, y) = (k.from_index(a), k.from_index(b));
                    assert_eq!(t.add(a as u32, b as u32), k.index_of(&k.add(&x, &y)) as u32);
                    assert_eq!(t.mul(a as u32, b as u32), k.index_of(&k.mul(&x, &y)) as u32);
                }
            }
        }
    }
}
