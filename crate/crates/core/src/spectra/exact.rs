//! Exact-arithmetic energy enclosures from an integer characteristic
//! polynomial.
//!
//! The polynomial is split into square-free factors (Yun), the real roots of
//! each factor are isolated with a Sturm chain over the rationals, and every
//! root interval is bisected until it is narrower than the requested width and
//! clear of the centre. The result is a rational interval guaranteed to hold
//! `Σ |λ_i − centre|`. No floating point is involved, which makes it usable as
//! an arbiter for borderline floating-point classifications.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::charpoly::CharPoly;

/// Dense polynomial over the rationals, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq)]
struct Poly(Vec<BigRational>);

impl Poly {
    fn from_charpoly(p: &CharPoly) -> Self {
        let coeffs = p
            .coefficients()
            .iter()
            .rev()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        Poly(coeffs).trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lead(&self) -> &BigRational {
        self.0.last().expect("nonzero polynomial")
    }

    fn eval(&self, x: &BigRational) -> BigRational {
        self.0
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    fn derivative(&self) -> Poly {
        Poly(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
                .collect(),
        )
        .trimmed()
    }

    fn monic(self) -> Poly {
        if self.is_zero() {
            return self;
        }
        let lead = self.lead().clone();
        Poly(self.0.into_iter().map(|c| c / &lead).collect())
    }

    fn sub(&self, other: &Poly) -> Poly {
        let len = self.0.len().max(other.0.len());
        let zero = BigRational::zero();
        Poly(
            (0..len)
                .map(|k| self.0.get(k).unwrap_or(&zero) - other.0.get(k).unwrap_or(&zero))
                .collect(),
        )
        .trimmed()
    }

    fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }

    fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let mut rem = self.0.clone();
        let dd = divisor.degree();
        if self.is_zero() || self.degree() < dd {
            return (Poly(Vec::new()), self.clone());
        }
        let mut quot = vec![BigRational::zero(); self.degree() - dd + 1];
        let lead = divisor.lead();
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / lead;
            for (j, d) in divisor.0.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly(quot).trimmed(), Poly(rem).trimmed())
    }

    fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    fn exact_div(&self, divisor: &Poly) -> Poly {
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero());
        q
    }
}

/// Yun's square-free decomposition of a monic polynomial: factors paired with
/// the multiplicity of their roots.
fn square_free(f: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    if f.degree() == 0 {
        return out;
    }
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.exact_div(&a0);
    let c = df.exact_div(&a0);
    let mut d = c.sub(&b.derivative());
    let mut multiplicity = 1;
    while b.degree() > 0 {
        let a = b.gcd(&d);
        let next_b = b.exact_div(&a);
        let next_c = d.exact_div(&a);
        if a.degree() > 0 {
            out.push((a, multiplicity));
        }
        d = next_c.sub(&next_b.derivative());
        b = next_b;
        multiplicity += 1;
    }
    out
}

struct Sturm {
    chain: Vec<Poly>,
}

impl Sturm {
    fn new(g: &Poly) -> Self {
        let mut chain = vec![g.clone(), g.derivative()];
        loop {
            let k = chain.len();
            if chain[k - 1].is_zero() {
                chain.pop();
                break;
            }
            let (_, r) = chain[k - 2].div_rem(&chain[k - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(r.neg());
        }
        Sturm { chain }
    }

    fn variations(&self, x: &BigRational) -> usize {
        let mut count = 0;
        let mut last = 0i8;
        for p in &self.chain {
            let v = p.eval(x);
            let s = if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                continue;
            };
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Distinct roots in `(lo, hi]`.
    fn count(&self, lo: &BigRational, hi: &BigRational) -> usize {
        self.variations(lo) - self.variations(hi)
    }
}

/// Half-open rational interval `(lo, hi]` holding exactly one root.
#[derive(Debug, Clone)]
struct RootInterval {
    lo: BigRational,
    hi: BigRational,
}

fn isolate(g: &Poly, sturm: &Sturm) -> Vec<RootInterval> {
    if g.degree() == 1 {
        let root = -&g.0[0] / &g.0[1];
        return vec![RootInterval {
            lo: root.clone(),
            hi: root,
        }];
    }
    let lead = g.lead().abs();
    let bound =
        g.0.iter()
            .map(|c| c.abs() / &lead)
            .fold(BigRational::zero(), |a, b| if b > a { b } else { a })
            + BigRational::one();
    let two = BigRational::from_integer(BigInt::from(2));
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((lo, hi)) = stack.pop() {
        match sturm.count(&lo, &hi) {
            0 => {}
            1 if g.eval(&hi).is_zero() => out.push(RootInterval { lo: hi.clone(), hi }),
            1 => out.push(RootInterval { lo, hi }),
            _ => {
                let mid = (&lo + &hi) / &two;
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
            }
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    out
}

fn bisect(iv: &mut RootInterval, sturm: &Sturm) {
    let mid = (&iv.lo + &iv.hi) / BigRational::from_integer(BigInt::from(2));
    if sturm.chain[0].eval(&mid).is_zero() {
        // Rational root hit: collapse to a point.
        iv.lo = mid.clone();
        iv.hi = mid;
    } else if sturm.count(&iv.lo, &mid) == 1 {
        iv.hi = mid;
    } else {
        iv.lo = mid;
    }
}

/// A closed rational interval.
#[derive(Debug, Clone, PartialEq)]
pub struct Enclosure {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Enclosure {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint_f64(&self) -> f64 {
        ((&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2)))
            .to_f64()
            .unwrap_or(f64::NAN)
    }

    /// `Some` ordering when the intervals are disjoint, `None` when they
    /// overlap (the values may be equal).
    pub fn compare(&self, other: &Enclosure) -> Option<Ordering> {
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if self.lo > other.hi {
            Some(Ordering::Greater)
        } else {
            None
        }
    }
}

/// Encloses `Σ |λ_i − centre|` over the roots of `poly` (with multiplicity)
/// in an interval of width at most `degree · width`.
///
/// All roots of `poly` must be real, which holds for characteristic
/// polynomials of symmetric matrices.
pub fn energy_enclosure(poly: &CharPoly, centre: &BigRational, width: &BigRational) -> Enclosure {
    let f = Poly::from_charpoly(poly);
    let mut lo_sum = BigRational::zero();
    let mut hi_sum = BigRational::zero();
    let mut roots_seen = 0;
    for (g, mult) in square_free(&f) {
        let sturm = Sturm::new(&g);
        let centre_is_root = g.eval(centre).is_zero();
        let m = BigRational::from_integer(BigInt::from(mult));
        for mut iv in isolate(&g, &sturm) {
            roots_seen += mult;
            if centre_is_root && iv.lo < *centre && *centre <= iv.hi {
                continue;
            }
            while (iv.lo < *centre && *centre < iv.hi) || &(&iv.hi - &iv.lo) > width {
                bisect(&mut iv, &sturm);
            }
            let (near, far) = if *centre <= iv.lo {
                (&iv.lo - centre, &iv.hi - centre)
            } else {
                (centre - &iv.hi, centre - &iv.lo)
            };
            lo_sum += &m * near;
            hi_sum += &m * far;
        }
    }
    debug_assert_eq!(roots_seen, poly.degree(), "non-real roots");
    Enclosure {
        lo: lo_sum,
        hi: hi_sum,
    }
}

/// `1 / 10^digits` as a rational.
pub fn decimal_width(digits: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10).pow(digits))
}

pub fn rational(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}
