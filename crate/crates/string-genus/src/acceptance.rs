//! The acceptance suite: every ground-truth criterion the crate must
//! reproduce, runnable from tests and from the command line.
//!
//! All arithmetic is exact, so every comparison is equality; the randomized
//! suites are seed-pinned and deterministic. Criteria are independent and
//! run in parallel, with results reported in fixed order.

use std::collections::BTreeMap;

use crate::exec;
use crate::genera::{
    a_hat_phi, from_powersum_basis, l_genus_phi, multiplicative_sequence, newton_monomial,
    phi_witten, to_powersum_basis, PPoly,
};
use crate::invariants::{
    b_geom, b_geom_series, d_invariant, nu_delta_polynomial, sigma_and_canonical, spin_index_dim4,
    RelCharNumbers, SigmaCanonical,
};
use crate::modforms::{
    delta, delta_via_eisenstein, dim_modular, eisenstein_normalized, miller_basis, tate_curve,
    weierstrass_invariants,
};
use num_traits::One;

use crate::partition::{partitions_of, Partition};
use crate::qseries::{eisenstein_g, QSeries};
use crate::rat::{rat, rat_int, Rat};
use crate::spinbordism::{embedded_table, ko_cover_torsion, validate_table};
use crate::tgroup::TClass;

/// Seed for the randomized property suites; fixed so every run checks the
/// same 200 cases per suite.
pub const SUITE_SEED: u64 = 0x5743_9e3779b97f4a;

/// Cases per randomized property suite.
pub const SUITE_CASES: usize = 200;

#[derive(Clone, Debug)]
pub struct CriterionOutcome {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl std::fmt::Display for CriterionOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{:2}] {}  {} — {}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.detail
        )
    }
}

type Check = fn() -> std::result::Result<String, String>;

const CRITERIA: [(&str, Check); 13] = [
    ("eisenstein-ground-truth", c01_eisenstein),
    ("delta-cross-construction", c02_delta),
    ("tate-curve-identity", c03_tate),
    ("echelon-basis", c04_basis),
    ("discriminant-power-orders", c05_orders),
    ("generator-class-order-24", c06_generator),
    ("localization-at-2", c07_local2),
    ("localization-at-3", c08_local3),
    ("detector-coefficients", c09_detector),
    ("dirac-specialization", c10_dirac),
    ("three-manifold-examples", c11_three_manifolds),
    ("spin-bordism-table", c12_table),
    ("property-suites", c13_properties),
];

/// Runs every criterion; the returned vector is ordered by id.
pub fn run_all() -> Vec<CriterionOutcome> {
    exec::map_indexed(CRITERIA.len(), 1, |i| {
        let (name, check) = CRITERIA[i];
        match check() {
            Ok(detail) => CriterionOutcome {
                id: i + 1,
                name,
                passed: true,
                detail,
            },
            Err(detail) => CriterionOutcome {
                id: i + 1,
                name,
                passed: false,
                detail,
            },
        }
    })
}

fn ensure(cond: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn lib_err(e: crate::error::Error) -> String {
    format!("library error: {}", e)
}

fn c01_eisenstein() -> std::result::Result<String, String> {
    let prec = 50;
    let g2 = eisenstein_g(2, prec).map_err(lib_err)?;
    ensure(
        *g2.coeff(0) == rat(-1, 24),
        "constant term of G_2 must be -1/24",
    )?;
    for n in 1..prec {
        let sigma: num_bigint::BigInt = (1..=n as u64)
            .filter(|d| (n as u64).is_multiple_of(*d))
            .map(num_bigint::BigInt::from)
            .sum();
        ensure(
            *g2.coeff(n) == Rat::from_integer(sigma),
            format!("divisor-sum oracle failed at q^{}", n),
        )?;
        ensure(
            crate::rat::is_integer(g2.coeff(n)),
            format!("non-integral coefficient at q^{}", n),
        )?;
    }
    let spot = [rat_int(1), rat_int(3), rat_int(4), rat_int(7), rat_int(6)];
    ensure(
        g2.coeffs()[1..6] == spot,
        "leading coefficients 1, 3, 4, 7, 6",
    )?;
    Ok(format!(
        "G_2 to q^{}: constant -1/24, divisor sums, integrality",
        prec - 1
    ))
}

fn c02_delta() -> std::result::Result<String, String> {
    let prec = 50;
    let product = delta(prec);
    let eisenstein = delta_via_eisenstein(prec);
    ensure(
        product == eisenstein,
        "product and Eisenstein constructions differ",
    )?;
    // brute-force oracle: q times the 24th powers of the individual factors
    let mut oracle = QSeries::one(prec);
    for n in 1..prec {
        let factor = QSeries::one(prec).sub(&QSeries::monomial(Rat::one(), n, prec));
        oracle = oracle.mul(&factor.pow(24));
    }
    for n in 1..prec {
        ensure(
            product.coeff(n) == oracle.coeff(n - 1),
            format!("product oracle failed at q^{}", n),
        )?;
    }
    let spot = [
        rat_int(0),
        rat_int(1),
        rat_int(-24),
        rat_int(252),
        rat_int(-1472),
        rat_int(4830),
    ];
    ensure(
        product.coeffs()[..6] == spot,
        "expansion q - 24q^2 + 252q^3 - 1472q^4 + 4830q^5",
    )?;
    Ok(format!(
        "two constructions agree to q^{}, leading term q",
        prec - 1
    ))
}

fn c03_tate() -> std::result::Result<String, String> {
    let prec = 30;
    let (c4, c6, disc) = weierstrass_invariants(&tate_curve(prec));
    ensure(
        c4 == eisenstein_normalized(4, prec).map_err(lib_err)?,
        "c4 differs from E_4",
    )?;
    ensure(
        c6 == eisenstein_normalized(6, prec).map_err(lib_err)?.neg(),
        "c6 differs from -E_6",
    )?;
    ensure(
        disc == delta(prec),
        "discriminant differs from the cusp form",
    )?;
    let w = tate_curve(50);
    ensure(
        w.a4.is_integral() && w.a6.is_integral(),
        "B or C has a fractional coefficient",
    )?;
    Ok("c4 = E_4, c6 = -E_6, disc = cusp form to q^29; B, C integral to q^49".to_string())
}

fn c04_basis() -> std::result::Result<String, String> {
    for weight in (0..=48).step_by(2) {
        let k = dim_modular(weight).map_err(lib_err)?;
        let basis = miller_basis(weight, k + 4).map_err(lib_err)?;
        ensure(
            basis.k() == k,
            format!("dimension mismatch at weight {}", weight),
        )?;
        for (j, f) in basis.forms().iter().enumerate() {
            ensure(
                f.is_integral(),
                format!("non-integral form at weight {}", weight),
            )?;
            for i in 0..k {
                let expect = if i == j { rat_int(1) } else { rat_int(0) };
                ensure(
                    *f.coeff(i) == expect,
                    format!("p_{}(f_{}) != delta at weight {}", i, j, weight),
                )?;
            }
        }
    }
    Ok("integral echelon bases with unit pivots for weights 0..=48".to_string())
}

fn c05_orders() -> std::result::Result<String, String> {
    for k in 0..=4u32 {
        let weight = 12 * k + 2;
        let prec = k as usize + 6;
        let basis = miller_basis(weight, prec).map_err(lib_err)?;
        let dk = if k == 0 {
            QSeries::one(prec)
        } else {
            delta(prec).pow(k)
        };
        for a in 2..=24u64 {
            let f = dk.scale(&rat(1, a as i64));
            let class = TClass::reduce(&f, weight, &basis).map_err(lib_err)?;
            let (order, certified) = class.order(a).map_err(lib_err)?;
            ensure(
                order == a && certified,
                format!(
                    "(k, a) = ({}, {}): got order {} certified {}",
                    k, a, order, certified
                ),
            )?;
        }
    }
    Ok("order of the k-th discriminant power over a is a, certified, k <= 4, a <= 24".to_string())
}

fn rel_m1(pairing: i64) -> RelCharNumbers {
    let numbers = BTreeMap::from([(Partition::empty(), rat_int(pairing))]);
    RelCharNumbers::new(1, numbers).expect("weight-0 partition")
}

fn c06_generator() -> std::result::Result<String, String> {
    let basis = miller_basis(2, 8).map_err(lib_err)?;
    let class = b_geom(&rel_m1(2), 8, &basis).map_err(lib_err)?;
    ensure(
        class.tail()[0] == rat(1, 24),
        "constant coefficient must be 1/24",
    )?;
    ensure(
        class.tail()[1..].iter().all(num_traits::Zero::is_zero),
        "higher coefficients must vanish",
    )?;
    ensure(
        class.order(24).map_err(lib_err)? == (24, true),
        "order must be exactly 24",
    )?;
    Ok("generator class is [1/24] with order 24".to_string())
}

fn c07_local2() -> std::result::Result<String, String> {
    let basis2 = miller_basis(2, 6).map_err(lib_err)?;
    let c = TClass::reduce(&QSeries::constant(rat(1, 24), 6), 2, &basis2).map_err(lib_err)?;
    let at2 = c.localize(2);
    ensure(
        at2.tail()[0] == rat(3, 8),
        "[1/24] must localize to [3/8] at 2",
    )?;
    ensure(
        at2.order(8).map_err(lib_err)? == (8, true),
        "[3/8] must have order 8",
    )?;

    let prec = 10;
    let basis14 = miller_basis(14, prec).map_err(lib_err)?;
    let d = delta(prec);
    for c in [1i64, 3] {
        let class = TClass::reduce(&d.scale(&rat(c, 4)), 14, &basis14).map_err(lib_err)?;
        let (order, certified) = class.localize(2).order(4).map_err(lib_err)?;
        ensure(
            order == 4 && certified,
            format!("[{}/4 D] at 2 must have order 4", c),
        )?;
    }
    let basis26 = miller_basis(26, prec).map_err(lib_err)?;
    let d2 = d.pow(2);
    for c in [1i64, 5] {
        let class = TClass::reduce(&d2.scale(&rat(c, 8)), 26, &basis26).map_err(lib_err)?;
        let (order, certified) = class.localize(2).order(8).map_err(lib_err)?;
        ensure(
            order == 8 && certified,
            format!("[{}/8 D^2] at 2 must have order 8", c),
        )?;
    }
    Ok("orders 8, 4, 4, 8, 8 across the 2-local table rows".to_string())
}

fn c08_local3() -> std::result::Result<String, String> {
    let basis2 = miller_basis(2, 6).map_err(lib_err)?;
    let c = TClass::reduce(&QSeries::constant(rat(2, 3), 6), 2, &basis2).map_err(lib_err)?;
    ensure(
        c.localize(3).order(3).map_err(lib_err)? == (3, true),
        "[2/3] must have order 3 at 3",
    )?;
    let prec = 10;
    let basis14 = miller_basis(14, prec).map_err(lib_err)?;
    let class = TClass::reduce(&delta(prec).scale(&rat(2, 3)), 14, &basis14).map_err(lib_err)?;
    ensure(
        class.localize(3).order(3).map_err(lib_err)? == (3, true),
        "[2/3 D] must have order 3 at 3",
    )?;
    Ok("orders 3 and 3 across the 3-local table rows".to_string())
}

fn c09_detector() -> std::result::Result<String, String> {
    let poly = nu_delta_polynomial();
    let expect: [(&[u32], (i64, i64)); 11] = [
        (&[2, 2, 2], (1967, 729)),
        (&[4, 1, 1], (356, 243)),
        (&[3, 1, 1, 1], (2575, 2187)),
        (&[4, 2], (152, 81)),
        (&[3, 2, 1], (941, 729)),
        (&[1, 1, 1, 1, 1, 1], (6232, 2187)),
        (&[2, 1, 1, 1, 1], (898, 729)),
        (&[5, 1], (541, 243)),
        (&[2, 2, 1, 1], (623, 729)),
        (&[6], (457, 729)),
        (&[3, 3], (2398, 2187)),
    ];
    ensure(
        poly.len() == 11,
        format!("expected 11 coefficients, got {}", poly.len()),
    )?;
    for (parts, (num, den)) in expect {
        let key = Partition::new(parts.to_vec());
        ensure(
            poly.get(&key) == Some(&rat(num, den)),
            format!("coefficient of {} must be {}/{}", key, num, den),
        )?;
    }
    Ok("all 11 detector coefficients match exactly".to_string())
}

fn c10_dirac() -> std::result::Result<String, String> {
    let phi0 = phi_witten(4, 2).at_q0();
    let a_hat = multiplicative_sequence(&a_hat_phi(6), 4).map_err(lib_err)?;
    for w in 0..=4 {
        ensure(
            phi0.weight_part(w) == a_hat.weight_part(w),
            format!(
                "specialization differs from the Dirac sequence at weight {}",
                w
            ),
        )?;
    }
    let w2 = a_hat.weight_part(2);
    ensure(
        w2.coeff(&Partition::new(vec![1, 1])) == rat(7, 5760)
            && w2.coeff(&Partition::new(vec![2])) == rat(-4, 5760),
        "weight-2 part must be (7 p1^2 - 4 p2)/5760",
    )?;
    ensure(
        a_hat.coeff(&Partition::single(1)) == rat(-1, 24),
        "dimension-4 coefficient must be -1/24",
    )?;
    ensure(
        spin_index_dim4(&rat_int(-48)) == rat_int(2),
        "index of the reference 4-manifold",
    )?;
    let l = multiplicative_sequence(&l_genus_phi(4), 1).map_err(lib_err)?;
    ensure(
        l.coeff(&Partition::single(1)) == rat(1, 3),
        "signature coefficient must be 1/3",
    )?;
    Ok("q = 0 specialization equals the Dirac sequence through weight 4".to_string())
}

fn c11_three_manifolds() -> std::result::Result<String, String> {
    let d_so3 = d_invariant(&rat_int(-2), &rat_int(0)).map_err(lib_err)?;
    ensure(
        d_so3 == num_bigint::BigInt::from(-1),
        "rotation-group example must give d = -1",
    )?;
    let n = sigma_and_canonical(1, -1);
    ensure(
        n == SigmaCanonical {
            sigma: 5,
            sigma_mod2: 1,
            shift: -2,
        },
        format!("rotation-group normalization, got {:?}", n),
    )?;
    let d_t3 = d_invariant(&rat_int(0), &rat_int(0)).map_err(lib_err)?;
    ensure(
        d_t3 == num_bigint::BigInt::from(0),
        "torus example must give d = 0",
    )?;
    let n = sigma_and_canonical(0, 0);
    ensure(
        n == SigmaCanonical {
            sigma: 0,
            sigma_mod2: 0,
            shift: 0,
        },
        format!("torus normalization, got {:?}", n),
    )?;
    Ok("d = -1, sigma = 5, shift -2 and d = 0, sigma = 0, shift 0".to_string())
}

fn c12_table() -> std::result::Result<String, String> {
    let rows = embedded_table().map_err(lib_err)?;
    ensure(rows.len() == 128, "table must cover degrees 0..=127")?;
    let discrepancies = validate_table(&rows);
    if let Some(first) = discrepancies.first() {
        return Err(format!(
            "{} discrepancies, first: {}",
            discrepancies.len(),
            first
        ));
    }
    ensure(
        rows[24].rank == 11 && rows[100].rank == 1958,
        "spot ranks at degrees 24 and 100",
    )?;
    for row in &rows {
        ensure(
            row.torsion == ko_cover_torsion(row.degree) + row.dim_z,
            format!("torsion closure fails at degree {}", row.degree),
        )?;
    }
    Ok("128 rows consistent; ranks, torsion closure, spot values".to_string())
}

// ---- randomized property suites -----------------------------------------

/// Minimal deterministic generator so the suites need no external
/// dependencies and stay identical between the test and the CLI runner.
struct SplitMix64(u64);

impl SplitMix64 {
    fn new(seed: u64) -> Self {
        SplitMix64(seed)
    }

    fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `lo..=hi`.
    fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u64() % span) as i64
    }

    fn small_rat(&mut self) -> Rat {
        rat(self.int_in(-9, 9), self.int_in(1, 6))
    }

    fn series(&mut self, prec: usize) -> QSeries {
        QSeries::from_coeffs((0..prec).map(|_| self.small_rat()).collect())
    }

    fn integral_series(&mut self, prec: usize) -> QSeries {
        QSeries::from_coeffs((0..prec).map(|_| rat_int(self.int_in(-9, 9))).collect())
    }
}

fn c13_properties() -> std::result::Result<String, String> {
    suite_ring_axioms()?;
    suite_reduce_homomorphism()?;
    suite_b_geom_linearity()?;
    suite_newton_round_trip()?;
    suite_multiplicativity()?;
    Ok(format!("5 suites x {} seeded cases", SUITE_CASES))
}

fn suite_ring_axioms() -> std::result::Result<(), String> {
    let mut rng = SplitMix64::new(SUITE_SEED ^ 0xA1);
    for case in 0..SUITE_CASES {
        let prec = rng.int_in(1, 7) as usize;
        let a = rng.series(prec);
        let b = rng.series(prec);
        let c = rng.series(prec);
        ensure(
            a.add(&b).add(&c) == a.add(&b.add(&c)),
            format!("additive associativity, case {}", case),
        )?;
        ensure(
            a.mul(&b) == b.mul(&a),
            format!("commutativity, case {}", case),
        )?;
        ensure(
            a.mul(&b).mul(&c) == a.mul(&b.mul(&c)),
            format!("multiplicative associativity, case {}", case),
        )?;
        ensure(
            a.mul(&b.add(&c)) == a.mul(&b).add(&a.mul(&c)),
            format!("distributivity, case {}", case),
        )?;
        // force a unit and check the inverse contract
        let mut coeffs = a.coeffs().to_vec();
        coeffs[0] = rat(rng.int_in(1, 9), rng.int_in(1, 6));
        let u = QSeries::from_coeffs(coeffs);
        let inv = u
            .invert()
            .map_err(|e| format!("invert failed, case {}: {}", case, e))?;
        ensure(
            u.mul(&inv) == QSeries::one(prec),
            format!("u * u^-1 = 1, case {}", case),
        )?;
    }
    Ok(())
}

fn suite_reduce_homomorphism() -> std::result::Result<(), String> {
    let mut rng = SplitMix64::new(SUITE_SEED ^ 0xB2);
    let weights = [2u32, 12, 14, 16, 24, 26];
    for case in 0..SUITE_CASES {
        let weight = weights[(rng.next_u64() % weights.len() as u64) as usize];
        let k = dim_modular(weight).map_err(lib_err)?;
        let prec = k + 5;
        let basis = miller_basis(weight, prec).map_err(lib_err)?;
        let f = rng.series(prec);
        let g = rng.series(prec);
        let both = TClass::reduce(&f.add(&g), weight, &basis).map_err(lib_err)?;
        let separate = TClass::reduce(&f, weight, &basis)
            .map_err(lib_err)?
            .add(&TClass::reduce(&g, weight, &basis).map_err(lib_err)?)
            .map_err(lib_err)?;
        ensure(
            both == separate,
            format!("homomorphism at weight {}, case {}", weight, case),
        )?;

        // invariance under the integral head and Z[[q]]
        let mut shifted = f.add(&rng.integral_series(prec));
        for form in basis.forms() {
            shifted = shifted.add(&form.scale(&rat_int(rng.int_in(-5, 5))));
        }
        let reduced = TClass::reduce(&shifted, weight, &basis).map_err(lib_err)?;
        let original = TClass::reduce(&f, weight, &basis).map_err(lib_err)?;
        ensure(
            reduced == original,
            format!("basis invariance at weight {}, case {}", weight, case),
        )?;
    }
    Ok(())
}

fn suite_b_geom_linearity() -> std::result::Result<(), String> {
    let mut rng = SplitMix64::new(SUITE_SEED ^ 0xC3);
    let qprec = 5;
    for case in 0..SUITE_CASES {
        let m = rng.int_in(1, 3) as u32;
        let parts = partitions_of(m - 1);
        let mut na = BTreeMap::new();
        let mut nb = BTreeMap::new();
        let mut nsum = BTreeMap::new();
        for p in parts {
            let a = rng.small_rat();
            let b = rng.small_rat();
            nsum.insert(p.clone(), &a + &b);
            na.insert(p.clone(), a);
            nb.insert(p, b);
        }
        let ra = RelCharNumbers::new(m, na).map_err(lib_err)?;
        let rb = RelCharNumbers::new(m, nb).map_err(lib_err)?;
        let rsum = RelCharNumbers::new(m, nsum).map_err(lib_err)?;
        ensure(
            b_geom_series(&ra, qprec).add(&b_geom_series(&rb, qprec))
                == b_geom_series(&rsum, qprec),
            format!("series additivity at m = {}, case {}", m, case),
        )?;
        let basis = miller_basis(2 * m, qprec + 4).map_err(lib_err)?;
        let ca = b_geom(&ra, qprec, &basis).map_err(lib_err)?;
        let cb = b_geom(&rb, qprec, &basis).map_err(lib_err)?;
        let csum = b_geom(&rsum, qprec, &basis).map_err(lib_err)?;
        ensure(
            ca.add(&cb).map_err(lib_err)? == csum,
            format!("class additivity at m = {}, case {}", m, case),
        )?;
    }

    // order of the m = 1 family: <ptilde_1> = 2n gives order 24/gcd(n, 24)
    let basis = miller_basis(2, 6).map_err(lib_err)?;
    for n in 1..=48u64 {
        let class = b_geom(&rel_m1(2 * n as i64), 6, &basis).map_err(lib_err)?;
        let (order, _) = class.order(24).map_err(lib_err)?;
        let expect = 24 / gcd64(n, 24);
        ensure(
            order == expect,
            format!("order at n = {}: got {}, expected {}", n, order, expect),
        )?;
    }
    Ok(())
}

fn gcd64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd64(b, a % b)
    }
}

fn suite_newton_round_trip() -> std::result::Result<(), String> {
    let mut rng = SplitMix64::new(SUITE_SEED ^ 0xD4);
    for case in 0..SUITE_CASES {
        let max_weight = rng.int_in(1, 6) as u32;
        let mut p = PPoly::zero(max_weight);
        for w in 0..=max_weight {
            for partition in partitions_of(w) {
                if rng.next_u64().is_multiple_of(3) {
                    p.add_term(partition, rng.small_rat());
                }
            }
        }
        let round = from_powersum_basis(&to_powersum_basis(&p), max_weight);
        ensure(round == p, format!("round trip, case {}", case))?;
        // substitution route: expanding a random power-sum monomial and
        // converting back is the identity
        let w = rng.int_in(1, 6) as u32;
        let parts = partitions_of(w);
        let mu = parts[(rng.next_u64() % parts.len() as u64) as usize].clone();
        let back = to_powersum_basis(&newton_monomial(&mu));
        ensure(
            back.len() == 1 && back.get(&mu) == Some(&rat_int(1)),
            format!("monomial round trip, case {}", case),
        )?;
    }
    Ok(())
}

fn suite_multiplicativity() -> std::result::Result<(), String> {
    let mut rng = SplitMix64::new(SUITE_SEED ^ 0xE5);
    let tprec = 5;
    for case in 0..SUITE_CASES {
        let mut phi = rng.series(tprec);
        let mut psi = rng.series(tprec);
        let mut pc = phi.coeffs().to_vec();
        pc[0] = Rat::one();
        phi = QSeries::from_coeffs(pc);
        let mut qc = psi.coeffs().to_vec();
        qc[0] = Rat::one();
        psi = QSeries::from_coeffs(qc);
        let k_prod = multiplicative_sequence(&phi.mul(&psi), 4).map_err(lib_err)?;
        let k_phi = multiplicative_sequence(&phi, 4).map_err(lib_err)?;
        let k_psi = multiplicative_sequence(&psi, 4).map_err(lib_err)?;
        ensure(
            k_prod == k_phi.mul(&k_psi),
            format!("multiplicativity, case {}", case),
        )?;
    }
    Ok(())
}
