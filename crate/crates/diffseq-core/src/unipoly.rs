//! Dense univariate polynomials over the rationals.
//!
//! Used for the solution polynomials `P(x) = Σ A_i x^i`, the coefficient
//! functions of linear combinations, and the resonance polynomials `Q(r)`
//! of the singularity analysis. Coefficients are stored ascending with no
//! trailing zero; the zero polynomial has an empty coefficient list.

use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};

use crate::diffalg::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(alloc::vec![c])
    }

    /// The variable itself.
    pub fn x() -> Self {
        Self::from_coeffs(alloc::vec![Rational::zero(), Rational::one()])
    }

    /// Build from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        let mut p = UniPoly { coeffs };
        p.trim();
        p
    }

    /// Convenience constructor from small integers, ascending.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
        )
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Ascending coefficient slice (no trailing zero).
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|q| q * c).collect(),
        }
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(k.into()))
                .collect(),
        )
    }

    /// `k`-th derivative.
    pub fn derivative_n(&self, k: usize) -> UniPoly {
        let mut p = self.clone();
        for _ in 0..k {
            p = p.derivative();
        }
        p
    }

    pub fn eval(&self, at: &Rational) -> Rational {
        // Horner, highest first.
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * at + c;
        }
        acc
    }

    pub fn pow(&self, exp: u32) -> UniPoly {
        let mut out = UniPoly::one();
        for _ in 0..exp {
            out = &out * self;
        }
        out
    }

    /// Multiply by `x^k`.
    pub fn shift_up(&self, k: usize) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = alloc::vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs }
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.degree().unwrap();
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.clone();
        let mut quot = UniPoly::zero();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let factor = rem.leading().unwrap() / &lead;
            let shift = rd - dd;
            let mut q = alloc::vec![Rational::zero(); shift + 1];
            q[shift] = factor.clone();
            let q = UniPoly::from_coeffs(q);
            rem = &rem - &(&q * divisor);
            quot = &quot + &q;
        }
        (quot, rem)
    }

    /// Monic gcd via a primitive pseudo-remainder sequence over the
    /// integers, which keeps intermediate coefficients small.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let mut a = int_primitive(self);
        let mut b = int_primitive(other);
        if a.len() < b.len() {
            core::mem::swap(&mut a, &mut b);
        }
        while b.len() > 1 {
            let r = primitive_part(pseudo_rem(&a, &b));
            a = b;
            b = r;
        }
        if !b.is_empty() {
            // A nonzero constant remainder means the inputs are coprime.
            return UniPoly::one();
        }
        UniPoly::from_coeffs(a.into_iter().map(Rational::from_integer).collect()).monic()
    }

    /// Scaled to leading coefficient 1 (zero stays zero).
    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            None => UniPoly::zero(),
            Some(l) => self.scale(&(Rational::one() / l)),
        }
    }

    /// All rational roots with multiplicity, plus the rootless cofactor.
    ///
    /// The multiset of returned roots and the remaining factor satisfy
    /// `self = lc · Π (x − root)^mult · remainder` up to a constant.
    pub fn rational_roots(&self) -> RootExtraction {
        let mut roots = Vec::new();
        let mut rest = self.clone();
        if rest.is_zero() || rest.degree() == Some(0) {
            return RootExtraction {
                roots,
                remainder: rest,
            };
        }
        // Roots at zero first.
        let mut zero_mult = 0u32;
        while rest.coeff(0).is_zero() && rest.degree().is_some_and(|d| d > 0) {
            rest = UniPoly::from_coeffs(rest.coeffs[1..].to_vec());
            zero_mult += 1;
        }
        if zero_mult > 0 {
            roots.push((Rational::zero(), zero_mult));
        }
        // Clear denominators so candidates divide integer endpoints.
        let mut den = BigInt::one();
        for c in &rest.coeffs {
            den = den.lcm(c.denom());
        }
        let int_coeffs: Vec<BigInt> = rest
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        if int_coeffs.is_empty() {
            return RootExtraction {
                roots,
                remainder: rest,
            };
        }
        let lead_divs = divisors(&int_coeffs[int_coeffs.len() - 1]);
        let const_divs = divisors(&int_coeffs[0]);
        for p in &const_divs {
            for q in &lead_divs {
                if p.gcd(q) != BigInt::one() {
                    continue;
                }
                for sign in [1i64, -1] {
                    let cand = Rational::new(p * BigInt::from(sign), q.clone());
                    let mut mult = 0u32;
                    while rest.degree().is_some_and(|d| d > 0) && rest.eval(&cand).is_zero() {
                        let factor =
                            UniPoly::from_coeffs(alloc::vec![-cand.clone(), Rational::one()]);
                        let (quot, rem) = rest.div_rem(&factor);
                        debug_assert!(rem.is_zero());
                        rest = quot;
                        mult += 1;
                    }
                    if mult > 0 {
                        roots.push((cand, mult));
                    }
                }
            }
        }
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        RootExtraction {
            roots,
            remainder: rest,
        }
    }

    /// Render with an arbitrary variable name, ascending powers.
    pub fn fmt_with(&self, f: &mut fmt::Formatter<'_>, var: &str) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            // A leading negative term spells out a unit coefficient
            // ("-1*x^2"), keeping the output inside the input grammar.
            let leading_negative = first && c.is_negative();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let a = c.abs();
            if k == 0 {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() || leading_negative {
                    write!(f, "{a}*")?;
                }
                if k == 1 {
                    write!(f, "{var}")?;
                } else {
                    write!(f, "{var}^{k}")?;
                }
            }
        }
        Ok(())
    }
}

/// Result of rational-root extraction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootExtraction {
    /// `(root, multiplicity)` pairs, sorted by root.
    pub roots: Vec<(Rational, u32)>,
    /// The factor with no rational roots (constant when all roots are
    /// rational).
    pub remainder: UniPoly,
}

/// Integer coefficients of a rational polynomial with denominators
/// cleared and the content divided out; empty for zero.
fn int_primitive(p: &UniPoly) -> Vec<BigInt> {
    let mut den = BigInt::one();
    for c in &p.coeffs {
        den = den.lcm(c.denom());
    }
    primitive_part(
        p.coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect(),
    )
}

fn primitive_part(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    let mut content = BigInt::zero();
    for c in &v {
        content = content.gcd(c);
    }
    if content > BigInt::one() {
        for c in &mut v {
            *c = &*c / &content;
        }
    }
    v
}

/// Pseudo-remainder of integer polynomials: `lc(b)^(da−db+1)·a mod b`.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    debug_assert!(b.len() > 1 && a.len() >= b.len());
    let lead = b[b.len() - 1].clone();
    let mut rem = a.to_vec();
    for _ in 0..=(a.len() - b.len()) {
        if rem.len() < b.len() {
            break;
        }
        let shift = rem.len() - b.len();
        let factor = rem[rem.len() - 1].clone();
        for c in rem.iter_mut() {
            *c = &*c * &lead;
        }
        for (i, bc) in b.iter().enumerate() {
            let delta = &factor * bc;
            rem[shift + i] -= delta;
        }
        while rem.last().is_some_and(Zero::is_zero) {
            rem.pop();
        }
    }
    rem
}

/// Positive divisors of `n` (empty input treated as 1).
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if n.is_zero() || n.is_one() {
        return alloc::vec![BigInt::one()];
    }
    let mut out = Vec::new();
    let mut d = BigInt::one();
    loop {
        let d_sq = &d * &d;
        if d_sq > n {
            break;
        }
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let q = &n / &d;
            if q != d {
                out.push(q);
            }
        }
        d += 1;
    }
    out.sort();
    out
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) + rhs.coeff(k));
        }
        UniPoly::from_coeffs(coeffs)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self + &(-rhs)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = alloc::vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(coeffs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl Pow<u32> for &UniPoly {
    type Output = UniPoly;
    fn pow(self, exp: u32) -> UniPoly {
        self.pow(exp)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, "x")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffalg::rat;

    #[test]
    fn arithmetic_and_eval() {
        let p = UniPoly::from_ints(&[1, 1, 1]); // 1 + x + x^2
        assert_eq!(p.eval(&rat(2, 1)), rat(7, 1));
        assert_eq!(p.derivative(), UniPoly::from_ints(&[1, 2]));
        let q = &p * &UniPoly::from_ints(&[-1, 1]); // (x - 1)(1 + x + x^2) = x^3 - 1
        assert_eq!(q, UniPoly::from_ints(&[-1, 0, 0, 1]));
    }

    #[test]
    fn div_rem_roundtrip() {
        let a = UniPoly::from_ints(&[2, -3, 0, 1]);
        let b = UniPoly::from_ints(&[-1, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
    }

    #[test]
    fn rational_root_extraction() {
        // (r - 1)(r + 1)(r + 2)^2 · (r^2 + 1)
        let p = &(&(&UniPoly::from_ints(&[-1, 1]) * &UniPoly::from_ints(&[1, 1]))
            * &UniPoly::from_ints(&[2, 1]).pow(2))
            * &UniPoly::from_ints(&[1, 0, 1]);
        let ex = p.rational_roots();
        assert_eq!(
            ex.roots,
            alloc::vec![(rat(-2, 1), 2), (rat(-1, 1), 1), (rat(1, 1), 1),]
        );
        assert_eq!(ex.remainder.monic(), UniPoly::from_ints(&[1, 0, 1]));
    }

    #[test]
    fn fractional_roots_found() {
        // (2x - 3)(x + 5) has the root 3/2.
        let p = &UniPoly::from_ints(&[-3, 2]) * &UniPoly::from_ints(&[5, 1]);
        let ex = p.rational_roots();
        assert_eq!(ex.roots, alloc::vec![(rat(-5, 1), 1), (rat(3, 2), 1)]);
        assert_eq!(ex.remainder.degree(), Some(0));
    }

    #[test]
    fn display_ascending() {
        use alloc::string::ToString;
        let p = UniPoly::from_coeffs(alloc::vec![rat(-1, 1), rat(0, 1), rat(3, 2)]);
        assert_eq!(p.to_string(), "-1 + 3/2*x^2");
    }
}
