//! Exact rational functions in canonical form.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{gcd, Poly};
use super::SymbolicError;

/// A quotient of integer polynomials stored in canonical form: numerator and
/// denominator share no common factor, the denominator has a positive leading
/// coefficient, and zero is `0/1`. Canonical forms are unique, so structural
/// equality is equality of rational functions.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Expr {
    num: Poly,
    den: Poly,
}

impl Expr {
    pub fn zero() -> Self {
        Expr {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Expr::int(1)
    }

    pub fn int(k: i64) -> Self {
        Expr {
            num: Poly::constant(k),
            den: Poly::one(),
        }
    }

    pub fn rational(n: i64, d: i64) -> Self {
        Expr::normalize(Poly::constant(n), Poly::constant(d)).expect("nonzero denominator")
    }

    pub fn from_bigrational(q: &BigRational) -> Self {
        Expr {
            num: Poly::constant(q.numer().clone()),
            den: Poly::constant(q.denom().clone()),
        }
    }

    /// Coordinate variable with the given chart index.
    pub fn var(index: usize) -> Self {
        Expr {
            num: Poly::var(index),
            den: Poly::one(),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        Expr {
            num: p,
            den: Poly::one(),
        }
    }

    /// Canonical form of `n / d`.
    pub fn normalize(n: Poly, d: Poly) -> Result<Self, SymbolicError> {
        if d.is_zero() {
            return Err(SymbolicError::ZeroDenominator);
        }
        if n.is_zero() {
            return Ok(Expr::zero());
        }
        if d.is_one() {
            return Ok(Expr { num: n, den: d });
        }
        let g = gcd(&n, &d);
        let (mut n, mut d) = if g.is_one() {
            (n, d)
        } else {
            (
                n.exact_div(&g).expect("gcd divides numerator"),
                d.exact_div(&g).expect("gcd divides denominator"),
            )
        };
        if d.leading_coefficient().is_negative() {
            n = n.neg();
            d = d.neg();
        }
        Ok(Expr { num: n, den: d })
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the expression depends on no coordinate.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        Some(BigRational::new(self.num.as_constant()?, self.den.as_constant()?))
    }

    pub fn inv(&self) -> Result<Expr, SymbolicError> {
        if self.is_zero() {
            return Err(SymbolicError::DivisionByZero);
        }
        let (mut n, mut d) = (self.den.clone(), self.num.clone());
        if d.leading_coefficient().is_negative() {
            n = n.neg();
            d = d.neg();
        }
        Ok(Expr { num: n, den: d })
    }

    pub fn checked_div(&self, other: &Expr) -> Result<Expr, SymbolicError> {
        Ok(self * &other.inv()?)
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, exp: i32) -> Result<Expr, SymbolicError> {
        if exp < 0 {
            return self.inv()?.pow(-exp);
        }
        let e = exp as u32;
        Ok(Expr {
            num: self.num.pow(e),
            den: self.den.pow(e),
        })
    }

    pub fn square(&self) -> Expr {
        self * self
    }

    pub fn scale(&self, k: i64) -> Expr {
        self * &Expr::int(k)
    }

    /// Exact partial derivative with respect to the variable at `var`.
    pub fn derivative(&self, var: usize) -> Expr {
        if !self.num.contains_var(var) && !self.den.contains_var(var) {
            return Expr::zero();
        }
        if self.den.is_one() {
            return Expr::from_poly(self.num.derivative(var));
        }
        // (n'd - nd') / d^2
        let n = self
            .num
            .derivative(var)
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derivative(var)));
        Expr::normalize(n, self.den.mul(&self.den)).expect("square of nonzero denominator")
    }

    /// Replaces the variable at `var` by `value`. Fails with a pole when the
    /// denominator vanishes identically after substitution.
    pub fn substitute(&self, var: usize, value: &Expr) -> Result<Expr, SymbolicError> {
        if !self.num.contains_var(var) && !self.den.contains_var(var) {
            return Ok(self.clone());
        }
        let horner = |p: &Poly| {
            let coeffs = p.coefficients_in(var);
            coeffs
                .iter()
                .rev()
                .fold(Expr::zero(), |acc, c| &(&acc * value) + &Expr::from_poly(c.clone()))
        };
        horner(&self.num)
            .checked_div(&horner(&self.den))
            .map_err(|_| SymbolicError::Pole)
    }

    /// Exact value at a point given as one rational per chart coordinate.
    pub fn eval(&self, point: &[BigRational]) -> Result<BigRational, SymbolicError> {
        let need = self.num.var_span().max(self.den.var_span());
        if point.len() < need {
            return Err(SymbolicError::IncompleteAssignment {
                needed: need,
                given: point.len(),
            });
        }
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(SymbolicError::Pole);
        }
        Ok(self.num.eval(point) / d)
    }

    /// Canonical text in the manifest expression syntax.
    pub fn to_text(&self, names: &[String]) -> String {
        let n = self.num.to_text(names);
        if self.den.is_one() {
            return n;
        }
        let n = if self.num.num_terms() > 1 { format!("({n})") } else { n };
        let d = self.den.to_text(names);
        let single_factor = self.den.num_terms() == 1
            && (self.den.is_constant()
                || (self.den.leading_coefficient().is_one()
                    && self
                        .den
                        .leading_term()
                        .is_some_and(|(m, _)| m.exponents().iter().filter(|&&e| e > 0).count() == 1)));
        if single_factor {
            format!("{n}/{d}")
        } else {
            format!("{n}/({d})")
        }
    }

    /// Signed integer constant, when the expression is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        let q = self.as_rational()?;
        q.is_integer().then(|| q.to_integer())
    }
}

impl Default for Expr {
    fn default() -> Self {
        Expr::zero()
    }
}

impl fmt::Display for Expr {
    /// Renders with placeholder variable names `v0, v1, ...`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(&[]))
    }
}

impl<'a> Add<&'a Expr> for &'a Expr {
    type Output = Expr;
    fn add(self, rhs: &'a Expr) -> Expr {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return Expr::normalize(self.num.add(&rhs.num), self.den.clone()).expect("nonzero denominator");
        }
        let n = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        Expr::normalize(n, self.den.mul(&rhs.den)).expect("nonzero denominator")
    }
}

impl<'a> Sub<&'a Expr> for &'a Expr {
    type Output = Expr;
    fn sub(self, rhs: &'a Expr) -> Expr {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Expr> for &'a Expr {
    type Output = Expr;
    fn mul(self, rhs: &'a Expr) -> Expr {
        if self.is_zero() || rhs.is_zero() {
            return Expr::zero();
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Expr::from_poly(self.num.mul(&rhs.num));
        }
        // Cross-cancel first to keep intermediate degrees small.
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let n1 = self.num.exact_div(&g1).expect("gcd divides");
        let d2 = rhs.den.exact_div(&g1).expect("gcd divides");
        let n2 = rhs.num.exact_div(&g2).expect("gcd divides");
        let d1 = self.den.exact_div(&g2).expect("gcd divides");
        let mut n = n1.mul(&n2);
        let mut d = d1.mul(&d2);
        if d.leading_coefficient().is_negative() {
            n = n.neg();
            d = d.neg();
        }
        Expr { num: n, den: d }
    }
}

impl Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        -&self
    }
}

/// Panics on division by the zero expression; use [`Expr::checked_div`] for a
/// fallible version.
impl<'a> Div<&'a Expr> for &'a Expr {
    type Output = Expr;
    fn div(self, rhs: &'a Expr) -> Expr {
        self.checked_div(rhs).expect("division by zero expression")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Expr> for Expr {
            type Output = Expr;
            fn $m(self, rhs: Expr) -> Expr { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Expr> for Expr {
            type Output = Expr;
            fn $m(self, rhs: &'a Expr) -> Expr { (&self).$m(rhs) }
        }
        impl<'a> $tr<Expr> for &'a Expr {
            type Output = Expr;
            fn $m(self, rhs: Expr) -> Expr { self.$m(&rhs) }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl std::iter::Sum for Expr {
    fn sum<I: Iterator<Item = Expr>>(iter: I) -> Expr {
        iter.fold(Expr::zero(), |acc, e| &acc + &e)
    }
}

impl From<i64> for Expr {
    fn from(k: i64) -> Expr {
        Expr::int(k)
    }
}

/// Sums the products `a_i * b_i`, skipping zero factors.
pub fn dot(a: &[Expr], b: &[Expr]) -> Expr {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> Expr {
        Expr::var(0)
    }

    #[test]
    fn substitution() {
        let names: Vec<String> = ["x", "y"].iter().map(|s| s.to_string()).collect();
        let p = |s: &str| crate::symbolic::parse_expr(s, &names).unwrap();
        let e = p("(x - y)/(x + y)");
        assert!(e.substitute(1, &p("x")).unwrap().is_zero());
        assert_eq!(e.substitute(0, &p("2*y")).unwrap(), Expr::rational(1, 3));
        assert_eq!(p("1/(x - y)").substitute(0, &p("y")), Err(SymbolicError::Pole));
    }

    #[test]
    fn normalize_cancels_common_factor() {
        let n = Poly::var(0).pow(2).sub(&Poly::one());
        let d = Poly::var(0).sub(&Poly::one());
        let e = Expr::normalize(n, d).unwrap();
        assert_eq!(e, &t() + &Expr::one());
        assert!(e.denominator().is_one());
    }

    #[test]
    fn normalize_zero_over_anything() {
        let e = Expr::normalize(Poly::zero(), Poly::var(0).pow(3)).unwrap();
        assert_eq!(e.numerator(), &Poly::zero());
        assert!(e.denominator().is_one());
    }

    #[test]
    fn normalize_content() {
        let e = Expr::normalize(Poly::var(0).scale(&BigInt::from(2)), Poly::constant(4)).unwrap();
        assert_eq!(e.numerator(), &Poly::var(0));
        assert_eq!(e.denominator(), &Poly::constant(2));
    }

    #[test]
    fn normalize_rejects_zero_denominator() {
        assert_eq!(
            Expr::normalize(Poly::one(), Poly::zero()),
            Err(SymbolicError::ZeroDenominator)
        );
    }

    #[test]
    fn negative_denominator_is_flipped() {
        let e = Expr::normalize(Poly::one(), Poly::var(0).neg()).unwrap();
        assert_eq!(e.denominator(), &Poly::var(0));
        assert_eq!(e.numerator(), &Poly::constant(-1));
    }

    #[test]
    fn arithmetic_examples() {
        assert!((&t() * &t().inv().unwrap()).is_one());
        let sq = (&t() + &Expr::one()).pow(2).unwrap();
        let expanded = &(&t().square() + &t().scale(2)) + &Expr::one();
        assert!((&sq - &expanded).is_zero());
        let half_sq = &t().square() / &Expr::int(2);
        assert_eq!(half_sq.pow(2).unwrap(), &t().pow(4).unwrap() / &Expr::int(4));
        assert_eq!(Expr::zero().inv(), Err(SymbolicError::DivisionByZero));
        assert_eq!(t().pow(-2).unwrap(), t().square().inv().unwrap());
        assert_eq!(Expr::zero().pow(-1), Err(SymbolicError::DivisionByZero));
    }

    #[test]
    fn derivative_quotient_rule() {
        let beta = -&t().inv().unwrap();
        assert_eq!(beta.derivative(0), t().pow(-2).unwrap());
        let alpha = &t().square() / &Expr::int(2);
        assert_eq!(alpha.derivative(0), t());
        assert!(t().square().derivative(1).is_zero());
    }

    #[test]
    fn evaluation_and_poles() {
        let alpha = &t().square() / &Expr::int(2);
        let two = BigRational::from_integer(2.into());
        assert_eq!(alpha.eval(std::slice::from_ref(&two)).unwrap(), two);
        let z = BigRational::zero();
        assert_eq!(t().inv().unwrap().eval(&[z]), Err(SymbolicError::Pole));
        let prod = &Expr::var(0) * &Expr::var(1);
        let pt = [BigRational::from_integer(3.into()), BigRational::from_integer(2.into())];
        assert_eq!(prod.eval(&pt).unwrap(), BigRational::from_integer(6.into()));
        assert!(matches!(
            prod.eval(&pt[..1]),
            Err(SymbolicError::IncompleteAssignment { .. })
        ));
    }

    #[test]
    fn zero_tests() {
        assert!((&(&t() * &t().inv().unwrap()) - &Expr::one()).is_zero());
        assert!(!(&t().pow(4).unwrap() / &Expr::int(4)).is_zero());
        assert!(Expr::rational(0, 5).is_zero());
    }

    #[test]
    fn text_forms() {
        let names = vec!["t".to_string()];
        assert_eq!((&t().square() / &Expr::int(2)).to_text(&names), "t^2/2");
        assert_eq!((-&t().inv().unwrap()).to_text(&names), "-1/t");
        let e = &(&t().pow(6).unwrap() - &Expr::int(4)) / &t().square().scale(2);
        assert_eq!(e.to_text(&names), "(t^6 - 4)/(2*t^2)");
    }
}
