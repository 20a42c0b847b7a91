use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::RationalPolynomial;
use crate::arith::Prime;
use crate::{Error, Result};

/// Largest Bernoulli index computed unless a caller raises the cap.
pub const DEFAULT_BERNOULLI_CAP: usize = 5000;

/// Exact Bernoulli numbers `B_0 ..= B_max`, with `B_1 = -1/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BernoulliTable {
    values: Vec<BigRational>,
    cap: usize,
}

impl BernoulliTable {
    pub fn new(max_index: usize) -> Result<Self> {
        Self::with_cap(max_index, DEFAULT_BERNOULLI_CAP)
    }

    pub fn with_cap(max_index: usize, cap: usize) -> Result<Self> {
        let mut table = BernoulliTable {
            values: vec![BigRational::one()],
            cap,
        };
        table.extend_to(max_index)?;
        Ok(table)
    }

    /// Wraps caller-supplied values without checking them. Harnesses use
    /// this to inject a corrupted table and confirm the cross-checks notice.
    pub fn from_values(values: Vec<BigRational>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Domain("a Bernoulli table needs at least B_0".into()));
        }
        let cap = values.len() - 1;
        Ok(BernoulliTable { values, cap })
    }

    /// Grows the table with `sum_{k=0}^{m} C(m+1, k) B_k = 0`.
    pub fn extend_to(&mut self, max_index: usize) -> Result<()> {
        if max_index > self.cap {
            return Err(Error::CapExceeded {
                requested: max_index,
                cap: self.cap,
            });
        }
        for m in self.values.len()..=max_index {
            let mut binom = BigInt::one(); // C(m+1, k)
            let mut sum = BigRational::zero();
            for (k, b) in self.values.iter().enumerate() {
                if !b.is_zero() {
                    sum += b * &binom;
                }
                binom = binom * (m + 1 - k) / (k + 1);
            }
            self.values.push(-sum / BigInt::from(m + 1));
        }
        Ok(())
    }

    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn get(&self, k: usize) -> Option<&BigRational> {
        self.values.get(k)
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    fn require(&self, index: usize) -> Result<()> {
        if index > self.max_index() {
            return Err(Error::TableTooShort {
                index,
                max: self.max_index(),
            });
        }
        Ok(())
    }

    /// `sum_{k in ks} C(n, k) B_k x^(n-k)`.
    fn binomial_sum(
        &self,
        n: usize,
        keep: impl Fn(usize) -> bool,
        upto: usize,
    ) -> RationalPolynomial {
        let mut coeffs = vec![BigRational::zero(); n + 1];
        let mut binom = BigInt::one(); // C(n, k)
        for k in 0..=upto {
            if keep(k) {
                coeffs[n - k] = &self.values[k] * &binom;
            }
            binom = binom * (n - k) / (k + 1);
        }
        RationalPolynomial::new(coeffs)
    }

    /// `B_n(x) = sum_{k=0}^{n} C(n, k) B_k x^(n-k)`.
    pub fn bernoulli_poly(&self, n: usize) -> Result<RationalPolynomial> {
        self.require(n)?;
        Ok(self.binomial_sum(n, |_| true, n))
    }

    /// `B_n(x) - B_n`, i.e. the same sum without the `k = n` term.
    pub fn bt_poly(&self, n: usize) -> Result<RationalPolynomial> {
        if n == 0 {
            return Err(Error::IndexDomain {
                index: 0,
                reason: "B_0(x) - B_0 is the zero polynomial",
            });
        }
        self.require(n - 1)?;
        Ok(self.binomial_sum(n, |_| true, n - 1))
    }

    /// The part of `B_n(x) - B_n` whose coefficients can carry a `p` in
    /// the denominator: terms with even `k`, `2 <= k <= n - 1`, `(p-1) | k`.
    pub fn bt_np_poly(&self, n: usize, p: Prime) -> Result<RationalPolynomial> {
        if n < 3 {
            return Err(Error::IndexDomain {
                index: n as u64,
                reason: "defined for n >= 3",
            });
        }
        self.require(n - 1)?;
        let pm1 = (p.get() - 1) as usize;
        Ok(self.binomial_sum(n, |k| k >= 2 && k % 2 == 0 && k % pm1 == 0, n - 1))
    }
}

/// Freshly computed `B_0 ..= B_max` under the default cap.
pub fn bernoulli_numbers(max_index: usize) -> Result<BernoulliTable> {
    BernoulliTable::new(max_index)
}

static SHARED: OnceLock<RwLock<Arc<BernoulliTable>>> = OnceLock::new();

/// Process-wide memoized table covering at least `max_index`.
///
/// Readers share one immutable snapshot; growing it swaps in a larger one.
pub fn shared_table(max_index: usize) -> Result<Arc<BernoulliTable>> {
    let lock = SHARED.get_or_init(|| {
        RwLock::new(Arc::new(
            BernoulliTable::new(0).expect("B_0 is within any cap"),
        ))
    });
    {
        let current = lock.read().expect("bernoulli table lock poisoned");
        if current.max_index() >= max_index {
            return Ok(Arc::clone(&current));
        }
    }
    let mut current = lock.write().expect("bernoulli table lock poisoned");
    if current.max_index() < max_index {
        let mut grown = BernoulliTable::clone(&current);
        grown.extend_to(max_index)?;
        *current = Arc::new(grown);
    }
    Ok(Arc::clone(&current))
}

pub fn bernoulli_poly(n: usize) -> Result<RationalPolynomial> {
    shared_table(n)?.bernoulli_poly(n)
}

pub fn bt_poly(n: usize) -> Result<RationalPolynomial> {
    shared_table(n.saturating_sub(1))?.bt_poly(n)
}

pub fn bt_np_poly(n: usize, p: Prime) -> Result<RationalPolynomial> {
    shared_table(n.saturating_sub(1))?.bt_np_poly(n, p)
}
