//! Truncated formal power series in one variable `q` over exact rationals,
//! together with the arithmetic functions feeding Eisenstein series.
//!
//! A series stores exactly `prec` coefficients for the exponents
//! `0 .. prec-1`. Binary operations truncate to the minimum precision of the
//! operands and never extend a series with fabricated zeros.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exec;
use crate::rat::{is_integer, rat, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<Rat>,
}

impl QSeries {
    /// Builds a series from explicit coefficients; `coeffs.len()` is the
    /// precision.
    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series stores at least one coefficient"
        );
        QSeries { coeffs }
    }

    pub fn zero(prec: usize) -> Self {
        Self::constant(Rat::zero(), prec)
    }

    pub fn one(prec: usize) -> Self {
        Self::constant(Rat::one(), prec)
    }

    pub fn constant(c: Rat, prec: usize) -> Self {
        assert!(prec >= 1);
        let mut coeffs = vec![Rat::zero(); prec];
        coeffs[0] = c;
        QSeries { coeffs }
    }

    /// The monomial `c q^k`, truncated away entirely if `k >= prec`.
    pub fn monomial(c: Rat, k: usize, prec: usize) -> Self {
        assert!(prec >= 1);
        let mut coeffs = vec![Rat::zero(); prec];
        if k < prec {
            coeffs[k] = c;
        }
        QSeries { coeffs }
    }

    pub fn prec(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, n: usize) -> &Rat {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rat::is_zero)
    }

    /// True when every stored coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(is_integer)
    }

    /// Drops coefficients beyond `prec`. Never extends.
    pub fn truncate(&self, prec: usize) -> Self {
        assert!(prec >= 1);
        let n = prec.min(self.coeffs.len());
        QSeries {
            coeffs: self.coeffs[..n].to_vec(),
        }
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        let n = self.prec().min(other.prec());
        let coeffs = (0..n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect();
        QSeries { coeffs }
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        let n = self.prec().min(other.prec());
        let coeffs = (0..n).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect();
        QSeries { coeffs }
    }

    pub fn neg(&self) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, r: &Rat) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Cauchy product truncated to the minimum precision. Each output
    /// coefficient is an independent convolution, computed in parallel for
    /// long series.
    pub fn mul(&self, other: &QSeries) -> QSeries {
        let n = self.prec().min(other.prec());
        let a = &self.coeffs;
        let b = &other.coeffs;
        let coeffs = exec::map_indexed(n, exec::SERIES_PAR_MIN, |k| {
            let lo = (k + 1).saturating_sub(b.len());
            let hi = k.min(a.len() - 1);
            let mut acc = Rat::zero();
            for i in lo..=hi {
                if !a[i].is_zero() && !b[k - i].is_zero() {
                    acc += &a[i] * &b[k - i];
                }
            }
            acc
        });
        QSeries { coeffs }
    }

    pub fn pow(&self, e: u32) -> QSeries {
        let mut result = QSeries::one(self.prec());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Multiplicative inverse: the unique `b` with `a b = 1 + O(q^prec)`.
    ///
    /// The recurrence is `b_0 = 1/a_0`, `b_n = -1/a_0 sum_{i=1}^n a_i b_{n-i}`.
    pub fn invert(&self) -> Result<QSeries> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::NotAUnit);
        }
        let inv_a0 = a0.recip();
        let mut out = vec![Rat::zero(); self.prec()];
        out[0] = inv_a0.clone();
        for n in 1..self.prec() {
            let mut acc = Rat::zero();
            for i in 1..=n {
                if !self.coeffs[i].is_zero() && !out[n - i].is_zero() {
                    acc += &self.coeffs[i] * &out[n - i];
                }
            }
            if !acc.is_zero() {
                out[n] = -(&inv_a0 * acc);
            }
        }
        Ok(QSeries { coeffs: out })
    }

    /// Formal logarithm of a series with constant term 1:
    /// `log(1+u) = u - u^2/2 + u^3/3 - ...` with `u` having zero constant
    /// term, so the sum is finite at any precision.
    pub fn log(&self) -> Result<QSeries> {
        if !self.coeffs[0].is_one() {
            return Err(Error::InvalidSeries("log requires constant term 1"));
        }
        let prec = self.prec();
        let u = self.sub(&QSeries::one(prec));
        let mut term = u.clone();
        let mut acc = QSeries::zero(prec);
        for j in 1..prec {
            let sign = if j % 2 == 1 { 1 } else { -1 };
            acc = acc.add(&term.scale(&rat(sign, j as i64)));
            if j + 1 < prec {
                term = term.mul(&u);
            }
        }
        Ok(acc)
    }
}

impl std::fmt::Display for QSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut wrote = false;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if wrote {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            match n {
                0 => write!(f, "{}", mag)?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{}*", mag)?;
                    }
                    if n == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{}", n)?;
                    }
                }
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.prec())
    }
}

/// Bernoulli number `B_{2k}` in the convention with `B_2 = 1/6`, via the
/// recurrence `sum_{j=0}^{n} C(n+1, j) B_j = 0`.
pub fn bernoulli(two_k: u32) -> Rat {
    assert!(
        two_k >= 2 && two_k.is_multiple_of(2),
        "argument must be an even weight >= 2"
    );
    let n = two_k as usize;
    let mut b: Vec<Rat> = Vec::with_capacity(n + 1);
    b.push(Rat::one());
    for m in 1..=n {
        let mut acc = Rat::zero();
        let mut binom = BigInt::one(); // C(m+1, 0)
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                acc += bj * Rat::from_integer(binom.clone());
            }
            // C(m+1, j+1) from C(m+1, j)
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-acc / rat((m + 1) as i64, 1));
    }
    b.pop().expect("computed up to index n")
}

/// Divisor power sum `sigma_e(n) = sum_{d | n} d^e`.
pub fn divisor_power_sum(e: u32, n: u64) -> BigInt {
    assert!(n >= 1);
    let mut acc = BigInt::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            acc += BigInt::from(d).pow(e);
            let co = n / d;
            if co != d {
                acc += BigInt::from(co).pow(e);
            }
        }
        d += 1;
    }
    acc
}

/// Eisenstein series `G_{2k} = -B_{2k}/4k + sum_{n>=1} sigma_{2k-1}(n) q^n`.
///
/// The constant term is rational while all higher coefficients are integers.
pub fn eisenstein_g(weight: u32, prec: usize) -> Result<QSeries> {
    if weight == 0 || !weight.is_multiple_of(2) {
        return Err(Error::InvalidWeight(weight));
    }
    assert!(prec >= 1);
    let k = (weight / 2) as i64;
    let mut coeffs = Vec::with_capacity(prec);
    coeffs.push(-bernoulli(weight) / rat(4 * k, 1));
    for n in 1..prec {
        coeffs.push(Rat::from_integer(divisor_power_sum(weight - 1, n as u64)));
    }
    Ok(QSeries { coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_int;

    fn series(cs: &[(i64, i64)]) -> QSeries {
        QSeries::from_coeffs(cs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn mul_difference_of_squares() {
        let a = series(&[(1, 1), (1, 1), (0, 1)]);
        let b = series(&[(1, 1), (-1, 1), (0, 1)]);
        assert_eq!(a.mul(&b), series(&[(1, 1), (0, 1), (-1, 1)]));
    }

    #[test]
    fn invert_geometric_series() {
        let a = series(&[(1, 1), (-1, 1), (0, 1), (0, 1), (0, 1)]);
        let inv = a.invert().unwrap();
        assert_eq!(inv, series(&[(1, 1), (1, 1), (1, 1), (1, 1), (1, 1)]));
        assert_eq!(a.mul(&inv), QSeries::one(5));
    }

    #[test]
    fn invert_rejects_non_units() {
        let a = series(&[(0, 1), (1, 1)]);
        assert_eq!(a.invert(), Err(Error::NotAUnit));
    }

    #[test]
    fn scale_halves() {
        let a = series(&[(2, 1), (4, 1)]);
        assert_eq!(a.scale(&rat(1, 2)), series(&[(1, 1), (2, 1)]));
    }

    #[test]
    fn binary_ops_truncate_to_min_prec() {
        let a = QSeries::one(7);
        let b = QSeries::one(3);
        assert_eq!(a.add(&b).prec(), 3);
        assert_eq!(a.mul(&b).prec(), 3);
        assert_eq!(b.sub(&a).prec(), 3);
    }

    #[test]
    fn pow_edges() {
        let a = series(&[(1, 1), (-1, 1), (0, 1)]);
        assert_eq!(a.pow(0), QSeries::one(3));
        assert_eq!(a.pow(1), a);
        assert_eq!(a.pow(2), a.mul(&a));
        assert!(QSeries::zero(4).pow(3).is_zero());
    }

    #[test]
    fn integrality_flag() {
        assert!(series(&[(2, 1), (-7, 1)]).is_integral());
        assert!(!series(&[(1, 2), (3, 1)]).is_integral());
    }

    #[test]
    fn bernoulli_small_values() {
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(4), rat(-1, 30));
        assert_eq!(bernoulli(6), rat(1, 42));
        assert_eq!(bernoulli(8), rat(-1, 30));
        assert_eq!(bernoulli(12), rat(-691, 2730));
        assert_eq!(bernoulli(14), rat(7, 6));
    }

    /// Independent route: the double-sum formula
    /// `B_n = sum_{k=0}^{n} 1/(k+1) sum_{j=0}^{k} (-1)^j C(k,j) j^n`.
    fn bernoulli_oracle(n: u32) -> Rat {
        let mut acc = Rat::zero();
        for k in 0..=n {
            let mut inner = Rat::zero();
            let mut binom = BigInt::one();
            for j in 0..=k {
                let jn = if j == 0 && n == 0 {
                    BigInt::one()
                } else {
                    BigInt::from(j).pow(n)
                };
                let term = Rat::from_integer(&binom * jn);
                if j % 2 == 0 {
                    inner += term;
                } else {
                    inner -= term;
                }
                binom = binom * BigInt::from(k - j) / BigInt::from(j + 1);
            }
            acc += inner / rat((k + 1) as i64, 1);
        }
        acc
    }

    #[test]
    fn bernoulli_matches_double_sum_oracle_up_to_40() {
        for two_k in (2..=40).step_by(2) {
            assert_eq!(bernoulli(two_k), bernoulli_oracle(two_k), "B_{}", two_k);
        }
    }

    #[test]
    fn divisor_sums_brute_force() {
        let naive = |e: u32, n: u64| -> BigInt {
            (1..=n)
                .filter(|d| n.is_multiple_of(*d))
                .map(|d| BigInt::from(d).pow(e))
                .sum()
        };
        assert_eq!(divisor_power_sum(1, 2), BigInt::from(3));
        assert_eq!(divisor_power_sum(1, 6), BigInt::from(12));
        assert_eq!(divisor_power_sum(3, 4), BigInt::from(73));
        for e in [1, 3, 5, 11, 13] {
            for n in 1..=60 {
                assert_eq!(divisor_power_sum(e, n), naive(e, n));
            }
        }
    }

    #[test]
    fn eisenstein_examples() {
        let g2 = eisenstein_g(2, 3).unwrap();
        assert_eq!(g2.coeffs(), &[rat(-1, 24), rat_int(1), rat_int(3)]);
        let g4 = eisenstein_g(4, 2).unwrap();
        assert_eq!(g4.coeffs(), &[rat(1, 240), rat_int(1)]);
        let g6 = eisenstein_g(6, 2).unwrap();
        assert_eq!(g6.coeffs(), &[rat(-1, 504), rat_int(1)]);
        assert_eq!(eisenstein_g(3, 4), Err(Error::InvalidWeight(3)));
        assert_eq!(eisenstein_g(0, 4), Err(Error::InvalidWeight(0)));
    }

    #[test]
    fn eisenstein_higher_terms_are_integral() {
        for weight in (2..=20).step_by(2) {
            let g = eisenstein_g(weight, 30).unwrap();
            assert!(g.coeffs()[1..].iter().all(is_integer));
        }
    }

    #[test]
    fn log_of_geometric_inverse() {
        // log(1/(1-q)) = q + q^2/2 + q^3/3 + ...
        let inv = series(&[(1, 1), (-1, 1), (0, 1), (0, 1), (0, 1)])
            .invert()
            .unwrap();
        let l = inv.log().unwrap();
        assert_eq!(
            l.coeffs(),
            &[rat_int(0), rat_int(1), rat(1, 2), rat(1, 3), rat(1, 4)]
        );
        assert!(series(&[(2, 1), (0, 1)]).log().is_err());
    }

    #[test]
    fn display_is_readable() {
        let g2 = eisenstein_g(2, 3).unwrap();
        assert_eq!(g2.to_string(), "-1/24 + q + 3*q^2 + O(q^3)");
        assert_eq!(QSeries::zero(2).to_string(), "0 + O(q^2)");
    }
}
