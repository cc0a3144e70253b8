//! Multiplicative-sequence machinery: graded polynomials in the Pontrjagin
//! variables `p_1, p_2, ...`, Newton-polynomial transforms between the
//! p-monomial and power-sum bases, and the series of the Witten genus.
//!
//! Grading: `p_i` has weight `i`, so a monomial indexed by a [`Partition`]
//! has weight equal to the partition weight. Every polynomial is truncated
//! at an explicit `max_weight`; binary operations take the minimum, mirroring
//! the q-precision contract of [`QSeries`].

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partition::{partitions_of, Partition};
use crate::qseries::{eisenstein_g, QSeries};
use crate::rat::{rat, rat_int, Rat};

/// Graded polynomial with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PPoly {
    max_weight: u32,
    terms: BTreeMap<Partition, Rat>,
}

impl PPoly {
    pub fn zero(max_weight: u32) -> Self {
        PPoly {
            max_weight,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(max_weight: u32) -> Self {
        let mut p = Self::zero(max_weight);
        p.add_term(Partition::empty(), Rat::one());
        p
    }

    /// The variable `p_i`.
    pub fn variable(i: u32, max_weight: u32) -> Self {
        let mut p = Self::zero(max_weight);
        p.add_term(Partition::single(i), Rat::one());
        p
    }

    pub fn max_weight(&self) -> u32 {
        self.max_weight
    }

    pub fn terms(&self) -> &BTreeMap<Partition, Rat> {
        &self.terms
    }

    pub fn coeff(&self, m: &Partition) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c p_m`, dropping the term if it cancels or exceeds the weight
    /// bound. Absent partition means zero coefficient.
    pub fn add_term(&mut self, m: Partition, c: Rat) {
        if c.is_zero() || m.weight() > self.max_weight {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &PPoly) -> PPoly {
        let mut out = PPoly::zero(self.max_weight.min(other.max_weight));
        for (m, c) in self.terms.iter().chain(other.terms.iter()) {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &PPoly) -> PPoly {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, r: &Rat) -> PPoly {
        let mut out = PPoly::zero(self.max_weight);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * r);
        }
        out
    }

    pub fn mul(&self, other: &PPoly) -> PPoly {
        let w = self.max_weight.min(other.max_weight);
        let mut out = PPoly::zero(w);
        for (m1, c1) in &self.terms {
            if m1.weight() > w {
                continue;
            }
            for (m2, c2) in &other.terms {
                if m1.weight() + m2.weight() > w {
                    continue;
                }
                out.add_term(m1.merge(m2), c1 * c2);
            }
        }
        out
    }

    /// The homogeneous component of the given weight.
    pub fn weight_part(&self, w: u32) -> PPoly {
        let mut out = PPoly::zero(self.max_weight);
        for (m, c) in &self.terms {
            if m.weight() == w {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// `exp` of a polynomial with no weight-0 term; the positive-weight part
    /// is nilpotent under truncation, so the sum is finite.
    pub fn exp_positive(&self) -> Result<PPoly> {
        if self.terms.contains_key(&Partition::empty()) {
            return Err(Error::InvalidSeries("exp requires vanishing weight-0 part"));
        }
        let mut out = PPoly::one(self.max_weight);
        let mut term = PPoly::one(self.max_weight);
        let mut factorial = Rat::one();
        for j in 1..=self.max_weight as i64 {
            term = term.mul(self);
            if term.is_zero() {
                break;
            }
            factorial *= rat_int(j);
            out = out.add(&term.scale(&factorial.recip()));
        }
        Ok(out)
    }
}

/// Newton polynomial `N_{2k}` in the `p_i`, from the recurrence
/// `N_{2k} = p_1 N_{2k-2} - p_2 N_{2k-4} + ... + (-1)^{k-1} k p_k`.
pub fn newton_polynomial(k: u32) -> PPoly {
    assert!(k >= 1);
    let mut table: Vec<PPoly> = vec![PPoly::variable(1, k)];
    for kk in 2..=k {
        let mut acc = PPoly::zero(k);
        for i in 1..kk {
            let sign = if i % 2 == 1 { Rat::one() } else { -Rat::one() };
            let pi = PPoly::variable(i, k).scale(&sign);
            acc = acc.add(&pi.mul(&table[(kk - i - 1) as usize]));
        }
        let sign = if kk % 2 == 1 {
            rat_int(kk as i64)
        } else {
            rat_int(-(kk as i64))
        };
        acc.add_term(Partition::single(kk), sign);
        table.push(acc);
    }
    table.pop().expect("k >= 1")
}

/// The monomial `N_{2 mu_1} N_{2 mu_2} ...` expanded in the p-basis.
pub fn newton_monomial(mu: &Partition) -> PPoly {
    let w = mu.weight();
    let mut out = PPoly::one(w.max(1));
    for &part in mu.parts() {
        out = out.mul(&newton_polynomial(part).truncated_to(w.max(1)));
    }
    out
}

impl PPoly {
    fn truncated_to(&self, max_weight: u32) -> PPoly {
        let mut out = PPoly::zero(max_weight);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

/// Inverse change of basis for one weight: column `mu` of the forward matrix
/// is the p-expansion of `N_mu`; the returned matrix maps p-coordinates to
/// N-coordinates. Pure rational Gauss-Jordan; the matrix is invertible for
/// every weight.
fn powersum_inverse(w: u32) -> (Vec<Partition>, Vec<Vec<Rat>>) {
    let parts = partitions_of(w);
    let n = parts.len();
    let mut m: Vec<Vec<Rat>> = vec![vec![Rat::zero(); 2 * n]; n];
    for (col, mu) in parts.iter().enumerate() {
        let expansion = newton_monomial(mu);
        for (row, lam) in parts.iter().enumerate() {
            m[row][col] = expansion.coeff(lam);
        }
    }
    for (row, r) in m.iter_mut().enumerate() {
        r[n + row] = Rat::one();
    }
    for col in 0..n {
        let pivot_row = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .expect("power-sum basis matrix is invertible");
        m.swap(col, pivot_row);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x *= &inv;
        }
        let pivot = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x -= p * &f;
                }
            }
        }
    }
    let inverse = m.into_iter().map(|row| row[n..].to_vec()).collect();
    (parts, inverse)
}

/// Rewrites a pure-weight polynomial in the basis of power-sum monomials
/// `N_mu = N_{2 mu_1} ... N_{2 mu_r}`; general polynomials are handled one
/// graded component at a time. Round-trips with [`from_powersum_basis`].
pub fn to_powersum_basis(p: &PPoly) -> BTreeMap<Partition, Rat> {
    let mut out = BTreeMap::new();
    let weights: std::collections::BTreeSet<u32> = p.terms.keys().map(Partition::weight).collect();
    for w in weights {
        if w == 0 {
            let c = p.coeff(&Partition::empty());
            if !c.is_zero() {
                out.insert(Partition::empty(), c);
            }
            continue;
        }
        let (parts, inv) = powersum_inverse(w);
        for (i, mu) in parts.iter().enumerate() {
            let mut acc = Rat::zero();
            for (j, lam) in parts.iter().enumerate() {
                let c = p.coeff(lam);
                if !c.is_zero() {
                    acc += &inv[i][j] * c;
                }
            }
            if !acc.is_zero() {
                out.insert(mu.clone(), acc);
            }
        }
    }
    out
}

/// [`to_powersum_basis`] for q-series coefficients: the change of basis is
/// rational and acts q-coefficient by q-coefficient.
pub fn to_powersum_basis_q(g: &GradedPPoly) -> BTreeMap<Partition, QSeries> {
    let mut out = BTreeMap::new();
    let weights: std::collections::BTreeSet<u32> = g.terms.keys().map(Partition::weight).collect();
    for w in weights {
        if w == 0 {
            let c = g.coeff(&Partition::empty());
            if !c.is_zero() {
                out.insert(Partition::empty(), c);
            }
            continue;
        }
        let (parts, inv) = powersum_inverse(w);
        for (i, mu) in parts.iter().enumerate() {
            let mut acc = QSeries::zero(g.qprec);
            for (j, lam) in parts.iter().enumerate() {
                if let Some(c) = g.terms.get(lam) {
                    if !inv[i][j].is_zero() {
                        acc = acc.add(&c.scale(&inv[i][j]));
                    }
                }
            }
            if !acc.is_zero() {
                out.insert(mu.clone(), acc);
            }
        }
    }
    out
}

/// Substitutes the Newton polynomials back into a power-sum expansion.
pub fn from_powersum_basis(map: &BTreeMap<Partition, Rat>, max_weight: u32) -> PPoly {
    let mut out = PPoly::zero(max_weight);
    for (mu, c) in map {
        if mu.is_empty() {
            out.add_term(Partition::empty(), c.clone());
        } else {
            out = out.add(&newton_monomial(mu).truncated_to(max_weight).scale(c));
        }
    }
    out
}

/// Multiplicative sequence `K_phi` of an even power series `phi` with
/// constant term 1, supplied as a series in `t = x^2`.
///
/// `K_phi = exp(sum_k c_k N_{2k})` where `log phi = sum_k c_k t^k`.
pub fn multiplicative_sequence(phi: &QSeries, max_weight: u32) -> Result<PPoly> {
    if !phi.coeff(0).is_one() {
        return Err(Error::InvalidSeries(
            "multiplicative sequence requires constant term 1",
        ));
    }
    let needed = max_weight as usize + 1;
    if phi.prec() < needed {
        return Err(Error::InsufficientPrecision {
            needed,
            got: phi.prec(),
        });
    }
    let log = phi.truncate(needed).log()?;
    let mut arg = PPoly::zero(max_weight);
    for k in 1..=max_weight {
        let c = log.coeff(k as usize);
        if !c.is_zero() {
            arg = arg.add(&newton_polynomial(k).truncated_to(max_weight).scale(c));
        }
    }
    arg.exp_positive()
}

/// The defining even series of the spin Dirac sequence, `(x/2)/sinh(x/2)`,
/// as a series in `t = x^2`.
pub fn a_hat_phi(tprec: usize) -> QSeries {
    // sinh(x/2)/(x/2) = sum t^n / (4^n (2n+1)!)
    let mut coeffs = Vec::with_capacity(tprec);
    let mut denom = BigInt::one();
    for n in 0..tprec {
        if n > 0 {
            // 4^n (2n+1)! from 4^{n-1} (2n-1)!
            denom *= BigInt::from(4 * 2 * n * (2 * n + 1));
        }
        coeffs.push(Rat::new(BigInt::one(), denom.clone()));
    }
    QSeries::from_coeffs(coeffs)
        .invert()
        .expect("constant term 1")
}

/// The defining even series of the signature sequence, `x/tanh(x)`, as a
/// series in `t = x^2`.
pub fn l_genus_phi(tprec: usize) -> QSeries {
    // cosh(x) = sum t^n/(2n)!,  sinh(x)/x = sum t^n/(2n+1)!
    let mut cosh = Vec::with_capacity(tprec);
    let mut sinhx = Vec::with_capacity(tprec);
    let mut even_fact = BigInt::one();
    let mut odd_fact = BigInt::one();
    for n in 0..tprec {
        if n > 0 {
            even_fact *= BigInt::from((2 * n - 1) * 2 * n);
            odd_fact *= BigInt::from(2 * n * (2 * n + 1));
        }
        cosh.push(Rat::new(BigInt::one(), even_fact.clone()));
        sinhx.push(Rat::new(BigInt::one(), odd_fact.clone()));
    }
    QSeries::from_coeffs(cosh).mul(
        &QSeries::from_coeffs(sinhx)
            .invert()
            .expect("constant term 1"),
    )
}

/// Graded polynomial whose coefficients are exact q-series; all coefficient
/// series share the same precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPPoly {
    max_weight: u32,
    qprec: usize,
    terms: BTreeMap<Partition, QSeries>,
}

impl GradedPPoly {
    pub fn zero(max_weight: u32, qprec: usize) -> Self {
        GradedPPoly {
            max_weight,
            qprec,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(max_weight: u32, qprec: usize) -> Self {
        let mut p = Self::zero(max_weight, qprec);
        p.add_term(Partition::empty(), QSeries::one(qprec));
        p
    }

    /// Embeds a rational polynomial with every coefficient as a constant
    /// series.
    pub fn embed(p: &PPoly, qprec: usize) -> Self {
        let mut out = Self::zero(p.max_weight(), qprec);
        for (m, c) in p.terms() {
            out.add_term(m.clone(), QSeries::constant(c.clone(), qprec));
        }
        out
    }

    pub fn max_weight(&self) -> u32 {
        self.max_weight
    }

    pub fn qprec(&self) -> usize {
        self.qprec
    }

    pub fn terms(&self) -> &BTreeMap<Partition, QSeries> {
        &self.terms
    }

    pub fn coeff(&self, m: &Partition) -> QSeries {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| QSeries::zero(self.qprec))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Partition, c: QSeries) {
        if m.weight() > self.max_weight {
            return;
        }
        let c = c.truncate(self.qprec);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(&c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &GradedPPoly) -> GradedPPoly {
        let mut out = GradedPPoly::zero(
            self.max_weight.min(other.max_weight),
            self.qprec.min(other.qprec),
        );
        for (m, c) in self.terms.iter().chain(other.terms.iter()) {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &GradedPPoly) -> GradedPPoly {
        let mut neg = GradedPPoly::zero(other.max_weight, other.qprec);
        for (m, c) in &other.terms {
            neg.add_term(m.clone(), c.neg());
        }
        self.add(&neg)
    }

    pub fn scale_series(&self, s: &QSeries) -> GradedPPoly {
        let mut out = GradedPPoly::zero(self.max_weight, self.qprec.min(s.prec()));
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.mul(s));
        }
        out
    }

    pub fn mul(&self, other: &GradedPPoly) -> GradedPPoly {
        let w = self.max_weight.min(other.max_weight);
        let mut out = GradedPPoly::zero(w, self.qprec.min(other.qprec));
        for (m1, c1) in &self.terms {
            if m1.weight() > w {
                continue;
            }
            for (m2, c2) in &other.terms {
                if m1.weight() + m2.weight() > w {
                    continue;
                }
                out.add_term(m1.merge(m2), c1.mul(c2));
            }
        }
        out
    }

    pub fn weight_part(&self, w: u32) -> GradedPPoly {
        let mut out = GradedPPoly::zero(self.max_weight, self.qprec);
        for (m, c) in &self.terms {
            if m.weight() == w {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// The rational polynomial of q-coefficient `n`.
    pub fn q_coefficient(&self, n: usize) -> PPoly {
        let mut out = PPoly::zero(self.max_weight);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.coeff(n).clone());
        }
        out
    }

    /// Specialization `q = 0`.
    pub fn at_q0(&self) -> PPoly {
        self.q_coefficient(0)
    }

    pub fn exp_positive(&self) -> Result<GradedPPoly> {
        if self.terms.contains_key(&Partition::empty()) {
            return Err(Error::InvalidSeries("exp requires vanishing weight-0 part"));
        }
        let mut out = GradedPPoly::one(self.max_weight, self.qprec);
        let mut term = GradedPPoly::one(self.max_weight, self.qprec);
        let mut factorial = Rat::one();
        for j in 1..=self.max_weight as i64 {
            term = term.mul(self);
            if term.is_zero() {
                break;
            }
            factorial *= rat_int(j);
            let inv = factorial.recip();
            let mut scaled = GradedPPoly::zero(self.max_weight, self.qprec);
            for (m, c) in &term.terms {
                scaled.add_term(m.clone(), c.scale(&inv));
            }
            out = out.add(&scaled);
        }
        Ok(out)
    }
}

fn factorial_rat(n: u32) -> Rat {
    let mut f = BigInt::one();
    for i in 2..=n as u64 {
        f *= BigInt::from(i);
    }
    Rat::from_integer(f)
}

/// `Theta = exp( sum_{k>=2} (2/(2k)!) G_{2k} N_{2k} )`.
pub fn theta_witten(max_weight: u32, qprec: usize) -> GradedPPoly {
    assert!(qprec >= 1);
    let mut arg = GradedPPoly::zero(max_weight, qprec);
    for k in 2..=max_weight {
        let g = eisenstein_g(2 * k, qprec).expect("even positive weight");
        let scale = rat(2, 1) / factorial_rat(2 * k);
        let newton = newton_polynomial(k).truncated_to(max_weight).scale(&scale);
        for (m, c) in newton.terms() {
            arg.add_term(m.clone(), g.scale(c));
        }
    }
    arg.exp_positive().expect("argument has no weight-0 part")
}

/// `sum_{j >= j0} G_2^j p_1^{j-1+shift} / j!` truncated by weight; with
/// `shift = 1, j0 = 0` this is `exp(G_2 p_1)`, with `shift = 0, j0 = 1` the
/// explicit summation form of `(exp(G_2 p_1) - 1)/p_1`.
fn g2_exponential_sum(max_weight: u32, qprec: usize, with_shift: bool) -> GradedPPoly {
    let g2 = eisenstein_g(2, qprec).expect("weight 2");
    let mut out = GradedPPoly::zero(max_weight, qprec);
    if with_shift {
        out.add_term(Partition::empty(), QSeries::one(qprec));
    }
    let mut g2_pow = QSeries::one(qprec);
    let mut factorial = Rat::one();
    let top = max_weight + if with_shift { 0 } else { 1 };
    for j in 1..=top {
        g2_pow = g2_pow.mul(&g2);
        factorial *= rat_int(j as i64);
        let p1_exp = if with_shift { j } else { j - 1 };
        let m = if p1_exp == 0 {
            Partition::empty()
        } else {
            Partition::new(vec![1; p1_exp as usize])
        };
        out.add_term(m, g2_pow.scale(&factorial.recip()));
    }
    out
}

/// `Phi = Theta exp(G_2 p_1)`: the multiplicative series of the Witten genus.
pub fn phi_witten(max_weight: u32, qprec: usize) -> GradedPPoly {
    theta_witten(max_weight, qprec).mul(&g2_exponential_sum(max_weight, qprec, true))
}

/// `PhiTilde = Theta sum_{j>=1} G_2^j p_1^{j-1} / j!`, the transgression
/// series pairing against the relative class; built from the summation form,
/// never by dividing by `p_1`.
pub fn phi_tilde(max_weight: u32, qprec: usize) -> GradedPPoly {
    theta_witten(max_weight, qprec).mul(&g2_exponential_sum(max_weight, qprec, false))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(parts: &[u32]) -> Partition {
        if parts.is_empty() {
            Partition::empty()
        } else {
            Partition::new(parts.to_vec())
        }
    }

    #[test]
    fn newton_small() {
        assert_eq!(newton_polynomial(1), PPoly::variable(1, 1));
        let n4 = newton_polynomial(2);
        assert_eq!(n4.coeff(&part(&[1, 1])), rat_int(1));
        assert_eq!(n4.coeff(&part(&[2])), rat_int(-2));
        assert_eq!(n4.terms().len(), 2);
        let n6 = newton_polynomial(3);
        assert_eq!(n6.coeff(&part(&[1, 1, 1])), rat_int(1));
        assert_eq!(n6.coeff(&part(&[2, 1])), rat_int(-3));
        assert_eq!(n6.coeff(&part(&[3])), rat_int(3));
        assert_eq!(n6.terms().len(), 3);
    }

    /// Brute-force oracle with three formal roots: expand a candidate
    /// polynomial under `p_i -> e_i(y_1, y_2, y_3)` and compare with the
    /// power sum `y_1^k + y_2^k + y_3^k`. Faithful for weight <= 3.
    mod three_roots {
        use super::*;
        pub type MPoly = BTreeMap<[u8; 3], Rat>;

        pub fn add_to(a: &mut MPoly, m: [u8; 3], c: Rat) {
            if c.is_zero() {
                return;
            }
            let e = a.entry(m).or_insert_with(Rat::zero);
            *e += c;
            if e.is_zero() {
                a.remove(&m);
            }
        }

        pub fn mul(a: &MPoly, b: &MPoly) -> MPoly {
            let mut out = MPoly::new();
            for (m1, c1) in a {
                for (m2, c2) in b {
                    let m = [m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2]];
                    add_to(&mut out, m, c1 * c2);
                }
            }
            out
        }

        pub fn elementary(i: u32) -> MPoly {
            let mut out = MPoly::new();
            match i {
                1 => {
                    for m in [[1, 0, 0], [0, 1, 0], [0, 0, 1]] {
                        add_to(&mut out, m, Rat::one());
                    }
                }
                2 => {
                    for m in [[1, 1, 0], [1, 0, 1], [0, 1, 1]] {
                        add_to(&mut out, m, Rat::one());
                    }
                }
                3 => add_to(&mut out, [1, 1, 1], Rat::one()),
                _ => {}
            }
            out
        }

        pub fn expand(p: &PPoly) -> MPoly {
            let mut out = MPoly::new();
            for (partition, c) in p.terms() {
                let mut term = MPoly::new();
                add_to(&mut term, [0, 0, 0], c.clone());
                for &i in partition.parts() {
                    term = mul(&term, &elementary(i));
                }
                for (m, c) in term {
                    add_to(&mut out, m, c);
                }
            }
            out
        }

        pub fn power_sum(k: u8) -> MPoly {
            let mut out = MPoly::new();
            for m in [[k, 0, 0], [0, k, 0], [0, 0, k]] {
                add_to(&mut out, m, Rat::one());
            }
            out
        }
    }

    #[test]
    fn newton_matches_three_root_expansion() {
        for k in 1..=3u32 {
            let candidate = three_roots::expand(&newton_polynomial(k));
            assert_eq!(candidate, three_roots::power_sum(k as u8), "N_{}", 2 * k);
        }
    }

    #[test]
    fn powersum_basis_examples() {
        // p1 -> N2
        let m = to_powersum_basis(&PPoly::variable(1, 1));
        assert_eq!(m.len(), 1);
        assert_eq!(m[&part(&[1])], rat_int(1));
        // p2 -> (N2^2 - N4)/2
        let m = to_powersum_basis(&PPoly::variable(2, 2));
        assert_eq!(m[&part(&[1, 1])], rat(1, 2));
        assert_eq!(m[&part(&[2])], rat(-1, 2));
        assert_eq!(m.len(), 2);
        // N4 expressed in p-basis round-trips
        let n4 = newton_polynomial(2);
        let m = to_powersum_basis(&n4);
        assert_eq!(m.len(), 1);
        assert_eq!(m[&part(&[2])], rat_int(1));
    }

    #[test]
    fn powersum_round_trip() {
        // a mixed-weight polynomial survives the round trip unchanged
        let mut p = PPoly::zero(5);
        p.add_term(part(&[]), rat(3, 7));
        p.add_term(part(&[2, 1]), rat(-5, 2));
        p.add_term(part(&[3, 1, 1]), rat(11, 4));
        p.add_term(part(&[4]), rat_int(2));
        let round = from_powersum_basis(&to_powersum_basis(&p), 5);
        assert_eq!(round, p);
    }

    #[test]
    fn elementary_sequence_from_one_plus_t() {
        // phi = 1 + x^2: K_phi = sum p_i
        let phi = QSeries::from_coeffs(vec![rat_int(1), rat_int(1), rat_int(0), rat_int(0)]);
        let k = multiplicative_sequence(&phi, 3).unwrap();
        assert_eq!(k.weight_part(1), PPoly::variable(1, 3));
        assert_eq!(k.weight_part(2), PPoly::variable(2, 3));
        assert_eq!(k.weight_part(3), PPoly::variable(3, 3));
    }

    #[test]
    fn dirac_and_signature_leading_terms() {
        let a_hat = multiplicative_sequence(&a_hat_phi(4), 3).unwrap();
        assert_eq!(a_hat.coeff(&part(&[1])), rat(-1, 24));
        let l = multiplicative_sequence(&l_genus_phi(4), 3).unwrap();
        assert_eq!(l.coeff(&part(&[1])), rat(1, 3));
        // weight-2 parts of the classical sequences
        assert_eq!(a_hat.coeff(&part(&[1, 1])), rat(7, 5760));
        assert_eq!(a_hat.coeff(&part(&[2])), rat(-4, 5760));
        assert_eq!(l.coeff(&part(&[1, 1])), rat(-1, 45));
        assert_eq!(l.coeff(&part(&[2])), rat(7, 45));
    }

    #[test]
    fn multiplicative_sequence_rejects_bad_input() {
        let phi = QSeries::from_coeffs(vec![rat_int(2), rat_int(0)]);
        assert!(matches!(
            multiplicative_sequence(&phi, 1),
            Err(Error::InvalidSeries(_))
        ));
        let short = QSeries::one(2);
        assert!(matches!(
            multiplicative_sequence(&short, 4),
            Err(Error::InsufficientPrecision { .. })
        ));
    }

    #[test]
    fn witten_series_low_weights() {
        let qprec = 6;
        let phi = phi_witten(2, qprec);
        assert_eq!(phi.coeff(&part(&[])), QSeries::one(qprec));
        assert_eq!(phi.coeff(&part(&[1])), eisenstein_g(2, qprec).unwrap());
        let pt = phi_tilde(2, qprec);
        assert_eq!(pt.coeff(&part(&[])), eisenstein_g(2, qprec).unwrap());
    }

    #[test]
    fn witten_series_identities() {
        let (w, qprec) = (6, 8);
        let theta = theta_witten(w, qprec);
        let phi = phi_witten(w, qprec);
        let tilde = phi_tilde(w, qprec);
        // Phi = Theta exp(G2 p1)
        assert_eq!(phi, theta.mul(&g2_exponential_sum(w, qprec, true)));
        // Phi - Theta = PhiTilde * p1
        let p1 = GradedPPoly::embed(&PPoly::variable(1, w), qprec);
        assert_eq!(phi.sub(&theta), tilde.mul(&p1));
    }

    #[test]
    fn phi_specializes_to_the_dirac_sequence_at_q0() {
        let phi0 = phi_witten(4, 2).at_q0();
        let a_hat = multiplicative_sequence(&a_hat_phi(6), 4).unwrap();
        for w in 0..=4 {
            assert_eq!(
                phi0.weight_part(w),
                a_hat.weight_part(w).truncated_to(4),
                "weight {}",
                w
            );
        }
    }

    #[test]
    fn powersum_basis_with_series_coefficients() {
        let qprec = 5;
        let phi = phi_witten(2, qprec);
        let n = to_powersum_basis_q(&phi);
        // weight-0 and weight-1 parts: 1 and G_2 N_2
        assert_eq!(n[&part(&[])], QSeries::one(qprec));
        assert_eq!(n[&part(&[1])], eisenstein_g(2, qprec).unwrap());
        // agreement with the rational conversion at q = 0
        let at0 = to_powersum_basis(&phi.at_q0());
        for (mu, c) in &n {
            assert_eq!(
                at0.get(mu).cloned().unwrap_or_else(Rat::zero),
                c.coeff(0).clone()
            );
        }
    }

    #[test]
    fn multiplicativity_spot_check() {
        let qprec = 5;
        let phi = a_hat_phi(qprec);
        let psi = l_genus_phi(qprec);
        let k_prod = multiplicative_sequence(&phi.mul(&psi), 4).unwrap();
        let k_phi = multiplicative_sequence(&phi, 4).unwrap();
        let k_psi = multiplicative_sequence(&psi, 4).unwrap();
        assert_eq!(k_prod, k_phi.mul(&k_psi));
    }
}
