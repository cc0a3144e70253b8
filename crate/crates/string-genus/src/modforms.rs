//! Integral modular forms of level one: dimensions, the echelon Z-basis with
//! unit pivots, membership testing, normalized Eisenstein series, the
//! discriminant form, and the Tate-curve q-expansions.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::qseries::{divisor_power_sum, eisenstein_g, QSeries};
use crate::rat::{rat, Rat};

/// Dimension of the space of level-one modular forms of even weight, counted
/// as the number of pairs `(a, b)` with `4a + 6b = weight`.
pub fn dim_modular(weight: u32) -> Result<usize> {
    if !weight.is_multiple_of(2) {
        return Err(Error::InvalidWeight(weight));
    }
    let mut count = 0;
    let mut b = 0;
    while 6 * b <= weight {
        if (weight - 6 * b).is_multiple_of(4) {
            count += 1;
        }
        b += 1;
    }
    Ok(count)
}

/// Normalized Eisenstein series `E_w`: the unique rescaling of `G_w` with
/// constant term exactly 1. Weight 2 is rejected; `G_2` is not modular.
pub fn eisenstein_normalized(weight: u32, prec: usize) -> Result<QSeries> {
    if weight < 4 {
        return Err(Error::InvalidWeight(weight));
    }
    let g = eisenstein_g(weight, prec)?;
    Ok(g.scale(&g.coeff(0).recip()))
}

/// `prod_{n>=1} (1 - q^n)` via the pentagonal number expansion
/// `sum_k (-1)^k q^{k(3k-1)/2}` over all integers `k`.
fn euler_product(prec: usize) -> QSeries {
    let mut coeffs = vec![Rat::zero(); prec];
    coeffs[0] = Rat::one();
    let mut k: i64 = 1;
    loop {
        let g1 = k * (3 * k - 1) / 2;
        let g2 = k * (3 * k + 1) / 2;
        if g1 as usize >= prec && g2 as usize >= prec {
            break;
        }
        let sign = if k % 2 == 0 { Rat::one() } else { -Rat::one() };
        for g in [g1, g2] {
            if (g as usize) < prec {
                coeffs[g as usize] = sign.clone();
            }
        }
        k += 1;
    }
    QSeries::from_coeffs(coeffs)
}

/// The discriminant form, normalized so that the expansion starts with `q`,
/// computed from the product formula `q prod (1 - q^n)^24`.
pub fn delta(prec: usize) -> QSeries {
    assert!(prec >= 2);
    let eta24 = euler_product(prec).pow(24);
    let mut coeffs = vec![Rat::zero(); prec];
    for (n, c) in eta24.coeffs().iter().enumerate() {
        if n + 1 < prec {
            coeffs[n + 1] = c.clone();
        }
    }
    QSeries::from_coeffs(coeffs)
}

/// The same form from `(E_4^3 - E_6^2) / 1728`; independent construction used
/// to cross-check [`delta`].
pub fn delta_via_eisenstein(prec: usize) -> QSeries {
    assert!(prec >= 2);
    let e4 = eisenstein_normalized(4, prec).expect("weight 4 is valid");
    let e6 = eisenstein_normalized(6, prec).expect("weight 6 is valid");
    e4.pow(3).sub(&e6.pow(2)).scale(&rat(1, 1728))
}

/// Integral echelon basis `f_0, ..., f_{k-1}` of weight-`2m` forms with
/// `p_i(f_j) = delta_{ij}` on the first `k` coefficients.
#[derive(Clone, Debug)]
pub struct ModularBasis {
    weight: u32,
    forms: Vec<QSeries>,
    prec: usize,
}

impl ModularBasis {
    pub fn weight(&self) -> u32 {
        self.weight
    }

    /// `k`, the dimension of the space.
    pub fn k(&self) -> usize {
        self.forms.len()
    }

    pub fn forms(&self) -> &[QSeries] {
        &self.forms
    }

    pub fn prec(&self) -> usize {
        self.prec
    }
}

/// Echelon Z-basis of the lattice spanned by the integral monomials in the
/// weight-4 and weight-6 Eisenstein series and the discriminant form.
///
/// Generators are `D^c E_4^a E_6^b` with `b <= 1`, one for each admissible
/// leading order `c`; the relation `E_4^3 - E_6^2 = 1728 D` reduces every
/// other integral monomial into this set over Z. Row reduction uses only
/// integer multiples of rows, and the pivots are required to be exactly 1;
/// a non-unit pivot would contradict the echelon-lattice guarantee and
/// aborts loudly.
pub fn miller_basis(weight: u32, prec: usize) -> Result<ModularBasis> {
    let k = dim_modular(weight)?;
    if prec < k.max(1) {
        return Err(Error::InsufficientPrecision {
            needed: k.max(1),
            got: prec,
        });
    }
    if k == 0 {
        return Ok(ModularBasis {
            weight,
            forms: Vec::new(),
            prec,
        });
    }
    let e4 = eisenstein_normalized(4, prec.max(2))?.truncate(prec);
    let e6 = eisenstein_normalized(6, prec.max(2))?.truncate(prec);
    let d = if weight >= 12 {
        Some(delta(prec.max(2)).truncate(prec))
    } else {
        None
    };

    let mut rows: Vec<QSeries> = Vec::with_capacity(k);
    for c in 0..=(weight / 12) {
        let rem = weight - 12 * c;
        if rem == 2 {
            continue;
        }
        let b = if rem.is_multiple_of(4) { 0 } else { 1 };
        let a = (rem - 6 * b) / 4;
        let mut form = QSeries::one(prec);
        if a > 0 {
            form = form.mul(&e4.pow(a));
        }
        if b > 0 {
            form = form.mul(&e6.pow(b));
        }
        if c > 0 {
            form = form.mul(&d.as_ref().expect("weight >= 12 generator").pow(c));
        }
        rows.push(form);
    }
    if rows.len() != k {
        return Err(Error::Internal(format!(
            "generator count {} does not match dim {} at weight {}",
            rows.len(),
            k,
            weight
        )));
    }

    // Rows are ordered by leading exponent, so row j already has zeros at the
    // columns 0..j; clear the columns above each unit pivot.
    for j in 0..k {
        if !rows[j].coeff(j).is_one() {
            return Err(Error::Internal(format!(
                "non-unit pivot {} at column {} in weight {}",
                rows[j].coeff(j),
                j,
                weight
            )));
        }
        for i in 0..k {
            if i == j {
                continue;
            }
            let m = rows[i].coeff(j).clone();
            if !m.is_zero() {
                rows[i] = rows[i].sub(&rows[j].scale(&m));
            }
        }
    }
    for f in &rows {
        if !f.is_integral() {
            return Err(Error::Internal(format!(
                "non-integral basis form at weight {}",
                weight
            )));
        }
    }
    Ok(ModularBasis {
        weight,
        forms: rows,
        prec,
    })
}

/// Decides, to the stored precision of `f`, whether `f` lies in the span of
/// the weight-`weight` basis: the head projections are subtracted and the
/// remainder must vanish at every stored coefficient.
pub fn is_modular(f: &QSeries, weight: u32) -> Result<bool> {
    let k = dim_modular(weight)?;
    if f.prec() < k.max(1) {
        return Err(Error::InsufficientPrecision {
            needed: k.max(1),
            got: f.prec(),
        });
    }
    let basis = miller_basis(weight, f.prec())?;
    let mut g = f.clone();
    for (i, fi) in basis.forms().iter().enumerate() {
        let c = f.coeff(i).clone();
        if !c.is_zero() {
            g = g.sub(&fi.scale(&c));
        }
    }
    Ok(g.is_zero())
}

/// Coefficients of a generalized Weierstrass equation
/// `Y^2 Z + a1 XYZ + a3 Y Z^2 = X^3 + a2 X^2 Z + a4 X Z^2 + a6 Z^3`
/// over the q-series ring.
#[derive(Clone, Debug)]
pub struct WeierstrassCoefficients {
    pub a1: QSeries,
    pub a2: QSeries,
    pub a3: QSeries,
    pub a4: QSeries,
    pub a6: QSeries,
}

/// The Tate curve over `Z[[q]]`:
/// `(a1, a2, a3, a4, a6) = (1, 0, 0, B, C)` with
/// `B = -5 sum n^3 q^n/(1-q^n)` and `C = -(1/12) sum (7n^5 + 5n^3) q^n/(1-q^n)`.
///
/// The Lambert series collapse to divisor sums: `B = -5 sum sigma_3(m) q^m`
/// and `C = -(1/12) sum (7 sigma_5(m) + 5 sigma_3(m)) q^m`, both integral.
pub fn tate_curve(prec: usize) -> WeierstrassCoefficients {
    assert!(prec >= 1);
    let mut b = vec![Rat::zero(); prec];
    let mut c = vec![Rat::zero(); prec];
    for m in 1..prec {
        let s3 = Rat::from_integer(divisor_power_sum(3, m as u64));
        let s5 = Rat::from_integer(divisor_power_sum(5, m as u64));
        b[m] = -(&s3 * rat(5, 1));
        c[m] = -((s5 * rat(7, 1) + s3 * rat(5, 1)) * rat(1, 12));
    }
    WeierstrassCoefficients {
        a1: QSeries::one(prec),
        a2: QSeries::zero(prec),
        a3: QSeries::zero(prec),
        a4: QSeries::from_coeffs(b),
        a6: QSeries::from_coeffs(c),
    }
}

/// Classical invariants `(c4, c6, discriminant)` of a Weierstrass equation:
/// `b2 = a1^2 + 4 a2`, `b4 = 2 a4 + a1 a3`, `b6 = a3^2 + 4 a6`,
/// `c4 = b2^2 - 24 b4`, `c6 = -b2^3 + 36 b2 b4 - 216 b6`,
/// `disc = (c4^3 - c6^2) / 1728`.
pub fn weierstrass_invariants(w: &WeierstrassCoefficients) -> (QSeries, QSeries, QSeries) {
    let four = rat(4, 1);
    let b2 = w.a1.mul(&w.a1).add(&w.a2.scale(&four));
    let b4 = w.a4.scale(&rat(2, 1)).add(&w.a1.mul(&w.a3));
    let b6 = w.a3.mul(&w.a3).add(&w.a6.scale(&four));
    let c4 = b2.mul(&b2).sub(&b4.scale(&rat(24, 1)));
    let c6 = b2
        .mul(&b2)
        .mul(&b2)
        .neg()
        .add(&b2.mul(&b4).scale(&rat(36, 1)))
        .sub(&b6.scale(&rat(216, 1)));
    let disc = c4.pow(3).sub(&c6.pow(2)).scale(&rat(1, 1728));
    (c4, c6, disc)
}
