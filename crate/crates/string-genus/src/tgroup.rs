//! The obstruction groups `T_2m = R[[q]] / (Z[[q]] + M_2m)` on rational
//! representatives: normal forms, element orders with certification, and
//! p-localization.
//!
//! A class is materialized as the window of tail coefficients with indices
//! `k .. prec-1`, each a rational in `[0, 1)`; the head coefficients are
//! absorbed by the echelon basis, integral parts by `Z[[q]]`.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::modforms::ModularBasis;
use crate::qseries::QSeries;
use crate::rat::{frac_part, lcm_denom, p_primary_part, rat_int, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TClass {
    weight: u32,
    k: usize,
    tail: Vec<Rat>,
    prime: Option<u32>,
}

impl TClass {
    pub fn weight(&self) -> u32 {
        self.weight
    }

    /// Index of the first tail entry (the dimension of the modular head).
    pub fn k(&self) -> usize {
        self.k
    }

    /// Stored window extends to exponents below this bound.
    pub fn prec(&self) -> usize {
        self.k + self.tail.len()
    }

    /// Tail entries for exponents `k .. prec-1`, each in `[0, 1)`.
    pub fn tail(&self) -> &[Rat] {
        &self.tail
    }

    pub fn prime(&self) -> Option<u32> {
        self.prime
    }

    pub fn is_zero(&self) -> bool {
        self.tail.iter().all(Rat::is_zero)
    }

    /// Normal form of `[f]` in `T_weight`: subtract the head projections
    /// `sum_i p_i(f) f_i` against the echelon basis and keep the fractional
    /// parts of the remaining coefficients.
    pub fn reduce(f: &QSeries, weight: u32, basis: &ModularBasis) -> Result<TClass> {
        if basis.weight() != weight {
            return Err(Error::WeightMismatch(basis.weight(), weight));
        }
        let k = basis.k();
        if f.prec() < k.max(1) {
            return Err(Error::InsufficientPrecision {
                needed: k.max(1),
                got: f.prec(),
            });
        }
        let mut g = if k > 0 {
            f.truncate(basis.prec())
        } else {
            f.clone()
        };
        for (i, fi) in basis.forms().iter().enumerate() {
            let c = f.coeff(i).clone();
            if !c.is_zero() {
                g = g.sub(&fi.scale(&c));
            }
        }
        let tail = g.coeffs()[k..].iter().map(frac_part).collect();
        Ok(TClass {
            weight,
            k,
            tail,
            prime: None,
        })
    }

    /// Projection onto the p-primary component, entry by entry.
    ///
    /// The class must not already be localized.
    pub fn localize(&self, p: u32) -> TClass {
        assert!(self.prime.is_none(), "class is already localized");
        TClass {
            weight: self.weight,
            k: self.k,
            tail: self.tail.iter().map(|t| p_primary_part(t, p)).collect(),
            prime: Some(p),
        }
    }

    /// Order of the class under a caller-asserted global denominator bound:
    /// `denominator_bound * f` must lie in `Z[[q]]` for some representative
    /// `f` of the class, so the true order divides the bound.
    ///
    /// The lcm of the windowed tail denominators is always a lower bound for
    /// the order; it is exact (certified) precisely when it saturates the
    /// bound. A tail denominator that fails to divide the bound contradicts
    /// the caller's assertion and is rejected.
    pub fn order(&self, denominator_bound: u64) -> Result<(u64, bool)> {
        assert!(denominator_bound >= 1);
        let bound = BigUint::from(denominator_bound);
        let mut acc = BigUint::one();
        for t in &self.tail {
            let den = t.denom().to_biguint().expect("positive denominator");
            if (&bound % &den) != BigUint::zero() {
                return Err(Error::InconsistentBound {
                    denominator: den.to_string(),
                    bound: denominator_bound,
                });
            }
            acc = lcm_denom(&acc, t);
        }
        let order = acc.to_u64().expect("order divides a u64 bound");
        Ok((order, order == denominator_bound))
    }

    pub fn add(&self, other: &TClass) -> Result<TClass> {
        if self.weight != other.weight {
            return Err(Error::WeightMismatch(self.weight, other.weight));
        }
        if self.k != other.k || self.prime != other.prime {
            return Err(Error::WeightMismatch(self.weight, other.weight));
        }
        let n = self.tail.len().min(other.tail.len());
        let tail = (0..n)
            .map(|i| frac_part(&(&self.tail[i] + &other.tail[i])))
            .collect();
        Ok(TClass {
            weight: self.weight,
            k: self.k,
            tail,
            prime: self.prime,
        })
    }

    pub fn negate(&self) -> TClass {
        TClass {
            weight: self.weight,
            k: self.k,
            tail: self.tail.iter().map(|t| frac_part(&-t)).collect(),
            prime: self.prime,
        }
    }

    /// `n`-fold sum of the class.
    pub fn mul_int(&self, n: i64) -> TClass {
        let m = rat_int(n);
        TClass {
            weight: self.weight,
            k: self.k,
            tail: self.tail.iter().map(|t| frac_part(&(t * &m))).collect(),
            prime: self.prime,
        }
    }
}
