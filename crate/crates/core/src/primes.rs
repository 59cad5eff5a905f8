//! Prime sieves, the von Mangoldt function, and a shared double-double
//! table of `ln n` used by every Dirichlet-series main sum.

use std::sync::{Arc, RwLock};

use crate::dd::Dd;

/// Smallest prime factor of every `n <= limit` (`spf[0] = spf[1] = 0`).
pub fn smallest_prime_factors(limit: usize) -> Vec<u32> {
    let mut spf = vec![0u32; limit + 1];
    for i in 2..=limit {
        if spf[i] == 0 {
            spf[i] = i as u32;
            if let Some(start) = i.checked_mul(i) {
                let mut j = start;
                while j <= limit {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
    }
    spf
}

/// All primes `<= limit`, ascending.
pub fn primes_up_to(limit: usize) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// `Λ(n)` for `0 <= n <= limit`: `ln p` on prime powers `p^m`, else 0.
pub fn von_mangoldt_table(limit: usize) -> Vec<f64> {
    let spf = smallest_prime_factors(limit);
    let mut lambda = vec![0.0; limit + 1];
    for n in 2..=limit {
        let p = spf[n] as usize;
        let mut m = n;
        while m % p == 0 {
            m /= p;
        }
        if m == 1 {
            lambda[n] = (p as f64).ln();
        }
    }
    lambda
}

static LN_TABLE: RwLock<Option<Arc<Vec<Dd>>>> = RwLock::new(None);

fn build_ln_table(limit: usize) -> Vec<Dd> {
    let spf = smallest_prime_factors(limit);
    let mut table = vec![Dd::ZERO; limit + 1];
    for n in 2..=limit {
        let p = spf[n] as usize;
        table[n] = if p == n {
            Dd::from_f64(n as f64).ln()
        } else {
            table[p] + table[n / p]
        };
    }
    table
}

/// Double-double `ln n` for `0 <= n <= limit` (entry 0 is unused).
///
/// The table is shared process-wide and grown geometrically on demand, so
/// repeated calls with similar limits are cheap.
pub fn ln_table(limit: usize) -> Arc<Vec<Dd>> {
    if let Some(t) = LN_TABLE.read().expect("ln table lock").as_ref() {
        if t.len() > limit {
            return Arc::clone(t);
        }
    }
    let mut guard = LN_TABLE.write().expect("ln table lock");
    if let Some(t) = guard.as_ref() {
        if t.len() > limit {
            return Arc::clone(t);
        }
    }
    let old = guard.as_ref().map_or(0, |t| t.len());
    let size = limit.max(2 * old).max(1024);
    let table = Arc::new(build_ln_table(size));
    *guard = Some(Arc::clone(&table));
    table
}
