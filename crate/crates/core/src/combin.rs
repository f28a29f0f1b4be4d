//! Exact big-integer combinatorics helpers shared across modules.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

pub(crate) fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut res = BigUint::one();
    for i in 0..k {
        res = res * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    res
}

/// Natural log of a positive big integer, accurate to ~1e-15 relative.
pub(crate) fn ln_biguint(x: &BigUint) -> f64 {
    assert!(!x.is_zero(), "ln of zero");
    let bits = x.bits();
    if bits <= 53 {
        return x.to_f64().unwrap().ln();
    }
    let shift = bits - 53;
    let top = (x >> shift).to_f64().unwrap();
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Factorials 0!..=n! for repeated exact binomials.
pub(crate) struct FactorialTable {
    table: Vec<BigUint>,
}

impl FactorialTable {
    pub(crate) fn up_to(n: usize) -> FactorialTable {
        let mut table = Vec::with_capacity(n + 1);
        table.push(BigUint::one());
        for i in 1..=n {
            let next = &table[i - 1] * BigUint::from(i);
            table.push(next);
        }
        FactorialTable { table }
    }

    pub(crate) fn binomial(&self, n: usize, k: usize) -> BigUint {
        if k > n {
            return BigUint::zero();
        }
        &self.table[n] / (&self.table[k] * &self.table[n - k])
    }

    #[cfg(test)]
    pub(crate) fn factorial(&self, n: usize) -> &BigUint {
        &self.table[n]
    }
}
