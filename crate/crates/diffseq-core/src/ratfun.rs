//! Reduced rational functions in `x`.
//!
//! Stored as a numerator/denominator pair with the gcd divided out and
//! the denominator monic, so equality of values is structural equality.

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::diffalg::Rational;
use crate::unipoly::UniPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    num: UniPoly,
    den: UniPoly,
}

impl RationalFunction {
    /// Panics if `den` is the zero polynomial.
    pub fn new(num: UniPoly, den: UniPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut rf = RationalFunction { num, den };
        rf.normalize();
        rf
    }

    pub fn from_poly(p: UniPoly) -> Self {
        RationalFunction {
            num: p,
            den: UniPoly::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(UniPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(UniPoly::one())
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = UniPoly::one();
            return;
        }
        let g = self.num.gcd(&self.den);
        if g.degree().is_some_and(|d| d > 0) {
            self.num = self.num.div_rem(&g).0;
            self.den = self.den.div_rem(&g).0;
        }
        let lead = self.den.leading().unwrap().clone();
        if !lead.is_one() {
            let inv = Rational::one() / lead;
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Quotient-rule derivative.
    pub fn derivative(&self) -> RationalFunction {
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RationalFunction::new(num, &self.den * &self.den)
    }

    /// Evaluate; `None` at a pole.
    pub fn eval(&self, at: &Rational) -> Option<Rational> {
        let d = self.den.eval(at);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(at) / d)
    }

    pub fn pow(&self, exp: u32) -> RationalFunction {
        let mut out = RationalFunction::one();
        for _ in 0..exp {
            out = &out * self;
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> RationalFunction {
        RationalFunction::new(self.num.scale(c), self.den.clone())
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_zero() || self.den == UniPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
