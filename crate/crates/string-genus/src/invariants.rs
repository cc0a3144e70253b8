//! Evaluation of the Witten genus and its secondary invariants from
//! characteristic-number data, the weight-6 mod-3 detector polynomial, and
//! the dimension-3 invariants with canonical-string-structure normalization.
//!
//! Manifolds enter purely through characteristic numbers: a closed
//! `4m`-manifold through its Pontrjagin numbers, a zero bordism through the
//! relative numbers pairing the refined first Pontrjagin class against
//! absolute monomials.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::genera::{newton_monomial, phi_tilde, phi_witten, to_powersum_basis};
use crate::modforms::ModularBasis;
use crate::partition::Partition;
use crate::qseries::QSeries;
use crate::rat::{canonical_mod_p, is_integer, rat, rat_int, Rat};
use crate::tgroup::TClass;

/// Normalization constant absorbing the real symmetry of the twisted Dirac
/// index: `1` for even `m`, `1/2` for odd `m`. Computed from the parity,
/// never passed by callers.
pub fn kappa(m: u32) -> Rat {
    if m.is_multiple_of(2) {
        rat_int(1)
    } else {
        rat(1, 2)
    }
}

/// Pontrjagin numbers of a closed `4m`-dimensional manifold: the pairing
/// `<p_J, [M]>` for each partition `J` of weight `m`.
#[derive(Clone, Debug)]
pub struct CharNumbers {
    m: u32,
    numbers: BTreeMap<Partition, Rat>,
}

impl CharNumbers {
    pub fn new(m: u32, numbers: BTreeMap<Partition, Rat>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidWeight(0));
        }
        for p in numbers.keys() {
            if p.weight() != m {
                return Err(Error::InvalidSeries(
                    "characteristic-number partition of wrong weight",
                ));
            }
        }
        Ok(CharNumbers { m, numbers })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn numbers(&self) -> &BTreeMap<Partition, Rat> {
        &self.numbers
    }
}

/// Relative characteristic numbers of a spin zero bordism `Z` of a
/// `4m-1`-dimensional string manifold: entry `J` is the pairing
/// `<ptilde_1 cup p_J, [Z, M]>` over partitions `J` of weight `m-1`;
/// the relative class occupies one implicit linear slot.
#[derive(Clone, Debug)]
pub struct RelCharNumbers {
    m: u32,
    numbers: BTreeMap<Partition, Rat>,
    sign_z: Option<i64>,
}

impl RelCharNumbers {
    pub fn new(m: u32, numbers: BTreeMap<Partition, Rat>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidWeight(0));
        }
        for p in numbers.keys() {
            if p.weight() != m - 1 {
                return Err(Error::InvalidSeries(
                    "relative-number partition of wrong weight",
                ));
            }
        }
        Ok(RelCharNumbers {
            m,
            numbers,
            sign_z: None,
        })
    }

    pub fn with_signature(mut self, sign_z: i64) -> Self {
        self.sign_z = Some(sign_z);
        self
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn numbers(&self) -> &BTreeMap<Partition, Rat> {
        &self.numbers
    }

    pub fn sign_z(&self) -> Option<i64> {
        self.sign_z
    }
}

/// The Witten genus from Pontrjagin numbers:
/// `kappa_m * sum_J coeff_J(weight-m part of Phi) <p_J, [M]>`.
pub fn witten_genus(data: &CharNumbers, qprec: usize) -> QSeries {
    let phi = phi_witten(data.m, qprec);
    let mut acc = QSeries::zero(qprec);
    for (j, n) in &data.numbers {
        if !n.is_zero() {
            acc = acc.add(&phi.coeff(j).scale(n));
        }
    }
    acc.scale(&kappa(data.m))
}

/// Index of the spin Dirac operator of a closed spin 4-manifold,
/// `-(1/24) <p_1, [M]>`.
pub fn spin_index_dim4(p1_number: &Rat) -> Rat {
    -p1_number / rat_int(24)
}

/// The representative power series of the secondary invariant before
/// reduction: `-kappa_m sum_J coeff_J(weight-(m-1) part of PhiTilde)
/// <ptilde_1 cup p_J, [Z, M]>`.
pub fn b_geom_series(rel: &RelCharNumbers, qprec: usize) -> QSeries {
    let tilde = phi_tilde(rel.m.saturating_sub(1), qprec);
    let mut acc = QSeries::zero(qprec);
    for (j, n) in &rel.numbers {
        if !n.is_zero() {
            acc = acc.add(&tilde.coeff(j).scale(n));
        }
    }
    acc.scale(&-kappa(rel.m))
}

/// The secondary invariant as a class in `T_2m`.
pub fn b_geom(rel: &RelCharNumbers, qprec: usize, basis: &ModularBasis) -> Result<TClass> {
    let weight = 2 * rel.m;
    if basis.weight() != weight {
        return Err(Error::WeightMismatch(basis.weight(), weight));
    }
    TClass::reduce(&b_geom_series(rel, qprec), weight, basis)
}

/// The weight-6 detector polynomial: the combination
/// `3 ((q^1 coefficient) - 24 (q^0 coefficient))` of the weight-6 part of
/// `PhiTilde`, rewritten in power-sum monomials `N_{2k}` (with `N_2 = p_1`),
/// each coefficient reduced to its unique representative with a pure
/// 3-power denominator `3^e` and numerator in `[0, 3^{e+1})`.
///
/// Keys are partitions `(k_1, ..., k_r)` of 6 denoting `N_{2k_1} ... N_{2k_r}`.
pub fn nu_delta_polynomial() -> BTreeMap<Partition, Rat> {
    let exact = nu_delta_polynomial_exact();
    exact
        .into_iter()
        .map(|(m, c)| (m, canonical_mod_p(&c, 3)))
        .collect()
}

/// The same combination with exact rational coefficients, before the mod-3
/// normalization. The two differ per coefficient by an element of
/// `3 Z_(3)`, so they induce the same detector.
pub fn nu_delta_polynomial_exact() -> BTreeMap<Partition, Rat> {
    let tilde = phi_tilde(6, 2);
    let w6 = tilde.weight_part(6);
    let combo = w6
        .q_coefficient(1)
        .sub(&w6.q_coefficient(0).scale(&rat_int(24)))
        .scale(&rat_int(3));
    to_powersum_basis(&combo)
}

/// Evaluates the detector on relative characteristic numbers of a
/// 28-dimensional zero bordism (`m = 7`): the value
/// `c = -<ptilde_1 cup P, [Z, M]> mod 3` in `{0, 1, 2}`.
///
/// The pre-reduction pairing must be an integer; a fractional value means
/// the data cannot come from a geometric configuration.
pub fn nu_delta_detect(rel: &RelCharNumbers) -> Result<u8> {
    if rel.m != 7 {
        return Err(Error::InvalidWeight(rel.m));
    }
    let poly = nu_delta_polynomial();
    let mut value = Rat::zero();
    for (mu, c) in &poly {
        let expansion = newton_monomial(mu);
        let mut pairing = Rat::zero();
        for (lam, coeff) in expansion.terms() {
            if let Some(n) = rel.numbers.get(lam) {
                pairing += coeff * n;
            }
        }
        value += c * pairing;
    }
    if !is_integer(&value) {
        return Err(Error::NonIntegralPairing(crate::rat::format_rat(&value)));
    }
    Ok(mod3(&-value.to_integer()))
}

fn mod3(n: &BigInt) -> u8 {
    use num_integer::Integer;
    use num_traits::ToPrimitive;
    n.mod_floor(&BigInt::from(3))
        .to_u8()
        .expect("residue below 3")
}

/// The dimension-3 invariant `d_Z = (1/2) <p_1> - <H>`; the combination is an
/// integer for every geometric configuration and non-integral input is
/// rejected as inconsistent data.
pub fn d_invariant(p1_integral: &Rat, h_integral: &Rat) -> Result<BigInt> {
    let v = p1_integral / rat_int(2) - h_integral;
    if !is_integer(&v) {
        return Err(Error::NonIntegral(crate::rat::format_rat(&v)));
    }
    Ok(v.to_integer())
}

/// Output of the canonical-string-structure normalization in dimension 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SigmaCanonical {
    /// `sigma = 3 sign(Z) - 2 d`.
    pub sigma: i64,
    /// The bordism-independent class of `sigma` in `Z/2`.
    pub sigma_mod2: u8,
    /// The unique shift `x` of the string structure with
    /// `sigma + 2x` in `{0, 1}`.
    pub shift: i64,
}

/// `sigma` and the canonical normalization: shifting the string structure by
/// `x` changes `d` by `-x` and hence `sigma` by `+2x`, so exactly one shift
/// lands in `{0, 1}`.
pub fn sigma_and_canonical(sign_z: i64, d: i64) -> SigmaCanonical {
    let sigma = 3 * sign_z - 2 * d;
    let shift = -sigma.div_euclid(2);
    SigmaCanonical {
        sigma,
        sigma_mod2: sigma.rem_euclid(2) as u8,
        shift,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modforms::miller_basis;
    use crate::qseries::eisenstein_g;

    fn part(parts: &[u32]) -> Partition {
        if parts.is_empty() {
            Partition::empty()
        } else {
            Partition::new(parts.to_vec())
        }
    }

    fn rel_m1(p1_pairing: i64) -> RelCharNumbers {
        let mut numbers = BTreeMap::new();
        numbers.insert(Partition::empty(), rat_int(p1_pairing));
        RelCharNumbers::new(1, numbers).unwrap()
    }

    #[test]
    fn kappa_parity() {
        assert_eq!(kappa(1), rat(1, 2));
        assert_eq!(kappa(2), rat_int(1));
        assert_eq!(kappa(7), rat(1, 2));
    }

    #[test]
    fn witten_genus_dimension_four() {
        let zero = CharNumbers::new(1, BTreeMap::from([(part(&[1]), rat_int(0))])).unwrap();
        assert!(witten_genus(&zero, 6).is_zero());

        // <p_1> = -48: kappa = 1/2 and the weight-1 part of Phi is G_2 p_1,
        // giving -24 G_2 = 1 - 24 q - 72 q^2 - 96 q^3 - ...
        let k3ish = CharNumbers::new(1, BTreeMap::from([(part(&[1]), rat_int(-48))])).unwrap();
        let r = witten_genus(&k3ish, 6);
        assert_eq!(r, eisenstein_g(2, 6).unwrap().scale(&rat_int(-24)));
        assert_eq!(
            r.coeffs()[..4],
            [rat_int(1), rat_int(-24), rat_int(-72), rat_int(-96)]
        );

        let trivial = CharNumbers::new(2, BTreeMap::new()).unwrap();
        assert!(witten_genus(&trivial, 4).is_zero());
    }

    #[test]
    fn char_numbers_validate_weights() {
        assert!(CharNumbers::new(2, BTreeMap::from([(part(&[1]), rat_int(1))])).is_err());
        assert!(RelCharNumbers::new(1, BTreeMap::from([(part(&[1]), rat_int(1))])).is_err());
        assert!(RelCharNumbers::new(7, BTreeMap::from([(part(&[3, 2, 1]), rat_int(1))])).is_ok());
    }

    #[test]
    fn spin_index_examples() {
        assert_eq!(spin_index_dim4(&rat_int(-48)), rat_int(2));
        assert_eq!(spin_index_dim4(&rat_int(0)), rat_int(0));
        assert_eq!(spin_index_dim4(&rat_int(-24)), rat_int(1));
    }

    #[test]
    fn generator_class() {
        let basis = miller_basis(2, 8).unwrap();
        let c = b_geom(&rel_m1(2), 8, &basis).unwrap();
        assert_eq!(c.tail()[0], rat(1, 24));
        assert!(c.tail()[1..].iter().all(Rat::is_zero));
        assert_eq!(c.order(24).unwrap(), (24, true));

        assert!(b_geom(&rel_m1(0), 8, &basis).unwrap().is_zero());
        // <ptilde_1> = 48 gives -24 G_2, an integral series
        assert!(b_geom(&rel_m1(48), 8, &basis).unwrap().is_zero());
    }

    #[test]
    fn b_geom_checks_basis_weight() {
        let basis = miller_basis(4, 8).unwrap();
        assert!(matches!(
            b_geom(&rel_m1(2), 8, &basis),
            Err(Error::WeightMismatch(4, 2))
        ));
    }

    #[test]
    fn detector_coefficients_match_ground_truth() {
        let poly = nu_delta_polynomial();
        let expect = [
            (vec![2u32, 2, 2], (1967, 729)),
            (vec![4, 1, 1], (356, 243)),
            (vec![3, 1, 1, 1], (2575, 2187)),
            (vec![4, 2], (152, 81)),
            (vec![3, 2, 1], (941, 729)),
            (vec![1, 1, 1, 1, 1, 1], (6232, 2187)),
            (vec![2, 1, 1, 1, 1], (898, 729)),
            (vec![5, 1], (541, 243)),
            (vec![2, 2, 1, 1], (623, 729)),
            (vec![6], (457, 729)),
            (vec![3, 3], (2398, 2187)),
        ];
        assert_eq!(poly.len(), 11);
        for (parts, (num, den)) in expect {
            assert_eq!(poly[&part(&parts)], rat(num, den), "monomial {:?}", parts);
        }
    }

    #[test]
    fn exact_and_canonical_detectors_agree_mod_3() {
        let exact = nu_delta_polynomial_exact();
        let canon = nu_delta_polynomial();
        assert_eq!(exact.len(), canon.len());
        for (mu, c) in &exact {
            // difference lies in 3 Z_(3): numerator divisible by 3 after
            // clearing a denominator prime to 3
            let d = &canon[mu] - c;
            let den = d.denom();
            assert!(
                !(den % BigInt::from(3)).is_zero(),
                "3-integral difference at {}",
                mu
            );
            assert!(
                (d.numer() % BigInt::from(3)).is_zero(),
                "divisible by 3 at {}",
                mu
            );
        }
    }

    /// Data vector dual to one power-sum monomial under the pairing, built by
    /// solving the transpose system over the 11 partitions of weight 6.
    fn dual_data(target: &Partition, scale: i64) -> RelCharNumbers {
        let parts = crate::partition::partitions_of(6);
        let n = parts.len();
        // forward[mu][lam] = coefficient of p_lam in N_mu
        let mut m: Vec<Vec<Rat>> = Vec::with_capacity(n);
        for mu in &parts {
            let e = newton_monomial(mu);
            m.push(parts.iter().map(|lam| e.coeff(lam)).collect());
        }
        // solve m * x = scale * e_target by gaussian elimination
        let mut rhs: Vec<Rat> = parts
            .iter()
            .map(|mu| {
                if mu == target {
                    rat_int(scale)
                } else {
                    Rat::zero()
                }
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| !m[r][col].is_zero()).unwrap();
            m.swap(col, piv);
            rhs.swap(col, piv);
            let inv = m[col][col].recip();
            for x in m[col].iter_mut() {
                *x *= &inv;
            }
            rhs[col] *= &inv;
            let pivot = m[col].clone();
            let pivot_rhs = rhs[col].clone();
            for (r, row) in m.iter_mut().enumerate() {
                if r != col && !row[col].is_zero() {
                    let f = row[col].clone();
                    for (x, p) in row.iter_mut().zip(&pivot) {
                        *x -= p * &f;
                    }
                    let t = &pivot_rhs * &f;
                    rhs[r] -= t;
                }
            }
        }
        let numbers = parts.into_iter().zip(rhs).collect();
        RelCharNumbers::new(7, numbers).unwrap()
    }

    #[test]
    fn detector_evaluation() {
        let zero = RelCharNumbers::new(7, BTreeMap::new()).unwrap();
        assert_eq!(nu_delta_detect(&zero).unwrap(), 0);

        // pairing <ptilde_1 cup P> = 457 t for data dual to N_12 scaled by 729
        for t in 1..=3i64 {
            let rel = dual_data(&part(&[6]), 729 * t);
            let c = nu_delta_detect(&rel).unwrap();
            assert_eq!(i64::from(c), (-457 * t).rem_euclid(3), "t = {}", t);
        }

        // wrong dimension is rejected
        assert!(nu_delta_detect(&rel_m1(2)).is_err());
    }

    #[test]
    fn detector_linearity_mod_3() {
        // data scaled by 3 detects 0
        let rel = dual_data(&part(&[6]), 729 * 3);
        assert_eq!(nu_delta_detect(&rel).unwrap(), 0);
    }

    #[test]
    fn detector_agrees_with_series_route() {
        // For data divisible by 3^7 both computation routes are 3-integral:
        // the canonical polynomial pairing and -3(b_1 - 24 b_0) from the
        // pre-reduction series must give the same class mod 3.
        let parts = crate::partition::partitions_of(6);
        let mut seed = 0x9e3779b97f4a7c15u64;
        for case in 0..50 {
            let mut numbers = BTreeMap::new();
            for p in &parts {
                seed = seed
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                let v = ((seed >> 33) % 41) as i64 - 20;
                numbers.insert(p.clone(), rat_int(2187 * v));
            }
            let rel = RelCharNumbers::new(7, numbers).unwrap();
            let c_poly = nu_delta_detect(&rel).unwrap();

            let series = b_geom_series(&rel, 2);
            let combo = series.coeff(1) - &(series.coeff(0) * rat_int(24));
            let r = -combo * rat_int(3);
            assert!(
                !(r.denom() % BigInt::from(3)).is_zero(),
                "3-integral series route"
            );
            let c_series = canonical_mod_p(&r, 3);
            assert!(is_integer(&c_series));
            assert_eq!(c_poly, mod3(&c_series.to_integer()), "case {}", case);
        }
    }

    #[test]
    fn d_invariant_examples() {
        assert_eq!(
            d_invariant(&rat_int(-2), &rat_int(0)).unwrap(),
            BigInt::from(-1)
        );
        assert_eq!(
            d_invariant(&rat_int(0), &rat_int(0)).unwrap(),
            BigInt::from(0)
        );
        assert_eq!(
            d_invariant(&rat_int(2), &rat_int(1)).unwrap(),
            BigInt::from(0)
        );
        // rejects exactly the inputs where halving leaves a fraction
        assert!(matches!(
            d_invariant(&rat_int(1), &rat_int(0)),
            Err(Error::NonIntegral(_))
        ));
        assert_eq!(
            d_invariant(&rat_int(1), &rat(1, 2)).unwrap(),
            BigInt::from(0)
        );
    }

    #[test]
    fn sigma_normalization() {
        let so3 = sigma_and_canonical(1, -1);
        assert_eq!(
            so3,
            SigmaCanonical {
                sigma: 5,
                sigma_mod2: 1,
                shift: -2
            }
        );
        let t3 = sigma_and_canonical(0, 0);
        assert_eq!(
            t3,
            SigmaCanonical {
                sigma: 0,
                sigma_mod2: 0,
                shift: 0
            }
        );
        let other = sigma_and_canonical(0, 3);
        assert_eq!(
            other,
            SigmaCanonical {
                sigma: -6,
                sigma_mod2: 0,
                shift: 3
            }
        );
        // shifting d by -x reproduces the canonical class
        for (s, d) in [(1i64, -1i64), (0, 0), (0, 3), (2, 5), (-3, 7)] {
            let n = sigma_and_canonical(s, d);
            let renorm = sigma_and_canonical(s, d - n.shift);
            assert_eq!(renorm.sigma, i64::from(n.sigma_mod2));
            assert!(renorm.sigma == 0 || renorm.sigma == 1);
        }
    }
}
