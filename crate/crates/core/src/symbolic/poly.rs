//! Sparse multivariate polynomials with arbitrary-precision integer coefficients.
//!
//! Variables are identified by their index in the owning chart. Monomials are
//! exponent vectors with trailing zeros trimmed, so constants carry no
//! variable count and polynomials from the same chart compose freely.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exponent vector, ordered graded-lexicographically (total degree first,
/// then the earlier variable wins).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(index: usize, exp: u32) -> Self {
        let mut v = vec![0; index + 1];
        v[index] = exp;
        Monomial::from_exponents(v)
    }

    pub fn from_exponents(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.0.get(var).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        let exps = (0..n).map(|i| self.exponent(i) + other.exponent(i)).collect();
        Monomial::from_exponents(exps)
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().enumerate().all(|(i, &e)| e <= other.exponent(i))
    }

    fn div(&self, divisor: &Monomial) -> Monomial {
        let exps = (0..self.0.len())
            .map(|i| self.exponent(i) - divisor.exponent(i))
            .collect();
        Monomial::from_exponents(exps)
    }

    fn with_exponent(&self, var: usize, exp: u32) -> Monomial {
        let mut v = self.0.clone();
        if v.len() <= var {
            v.resize(var + 1, 0);
        }
        v[var] = exp;
        Monomial::from_exponents(v)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let n = self.0.len().max(other.0.len());
            for i in 0..n {
                match self.exponent(i).cmp(&other.exponent(i)) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in Z[x_0, x_1, ...]. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Poly { terms }
    }

    pub fn var(index: usize) -> Self {
        Poly::monomial(Monomial::var(index, 1), BigInt::one())
    }

    pub fn monomial(m: Monomial, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().next().is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The constant term when the polynomial has no variables.
    pub fn as_constant(&self) -> Option<BigInt> {
        if self.is_constant() {
            Some(self.terms.values().next().cloned().unwrap_or_default())
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter().rev()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> BigInt {
        self.leading_term().map(|(_, c)| c.clone()).unwrap_or_default()
    }

    /// Number of variable slots touched by any monomial.
    pub fn var_span(&self) -> usize {
        self.terms.keys().map(|m| m.0.len()).max().unwrap_or(0)
    }

    pub fn contains_var(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exponent(var) > 0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exponent(var)).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let (mut out, src) = if self.terms.len() >= other.terms.len() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        for (m, c) in &src.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    fn mul_term(&self, m: &Monomial, c: &BigInt) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(mm, cc)| (mm.mul(m), cc * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut e = exp;
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

    pub fn derivative(&self, var: usize) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e > 0 {
                out.add_term(m.with_exponent(var, e - 1), c * BigInt::from(e));
            }
        }
        out
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder. Relies on the monomial order being a well-order.
    pub fn exact_div(&self, divisor: &Poly) -> Option<Poly> {
        let (dm, dc) = divisor.leading_term()?;
        if divisor.terms.len() == 1 && dm.is_one() && dc.is_one() {
            return Some(self.clone());
        }
        let mut quotient = Poly::zero();
        let mut rem = self.clone();
        while let Some((rm, rc)) = rem.leading_term() {
            if !dm.divides(rm) {
                return None;
            }
            let (q, r) = rc.div_rem(dc);
            if !r.is_zero() {
                return None;
            }
            let m = rm.div(dm);
            rem = rem.sub(&divisor.mul_term(&m, &q));
            quotient.add_term(m, q);
        }
        Some(quotient)
    }

    /// Integer content (gcd of all coefficients), always nonnegative.
    pub fn integer_content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Flips the sign so that the leading coefficient is positive.
    pub fn with_positive_lead(self) -> Poly {
        if self.leading_coefficient().is_negative() {
            self.neg()
        } else {
            self
        }
    }

    /// Coefficients of `self` viewed as a univariate polynomial in `var`;
    /// entry `k` multiplies `var^k`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Poly> {
        let deg = self.degree_in(var) as usize;
        let mut out = vec![Poly::zero(); deg + 1];
        if self.is_zero() {
            return vec![Poly::zero()];
        }
        for (m, c) in &self.terms {
            let e = m.exponent(var) as usize;
            out[e].add_term(m.with_exponent(var, 0), c.clone());
        }
        out
    }

    pub fn from_coefficients_in(var: usize, coeffs: &[Poly]) -> Poly {
        let mut out = Poly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            for (m, cc) in &c.terms {
                out.add_term(m.with_exponent(var, k as u32), cc.clone());
            }
        }
        out
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut term = BigRational::from_integer(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term *= num_traits::pow(point[i].clone(), e as usize);
                }
            }
            acc += term;
        }
        acc
    }

    /// Text rendering with the given variable names, highest monomial first.
    pub fn to_text(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for (v, &e) in m.0.iter().enumerate() {
                let name = names.get(v).cloned().unwrap_or_else(|| format!("v{v}"));
                match e {
                    0 => {}
                    1 => factors.push(name),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            let _ = write!(s, "{}", factors.join("*"));
        }
        s
    }
}

/// Greatest common divisor in Z[x_0, ...], normalized to a positive leading
/// coefficient. Recursive primitive-PRS over one variable at a time.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.clone().with_positive_lead();
    }
    if b.is_zero() {
        return a.clone().with_positive_lead();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::constant(a.integer_content().gcd(&b.integer_content()));
    }
    if a == b {
        return a.clone().with_positive_lead();
    }
    let span = a.var_span().max(b.var_span());
    // A variable occurring in only one argument drops out through its content.
    for v in 0..span {
        let in_a = a.contains_var(v);
        let in_b = b.contains_var(v);
        if in_a && !in_b {
            return gcd(&content_in(a, v), b);
        }
        if in_b && !in_a {
            return gcd(a, &content_in(b, v));
        }
    }
    let v = (0..span)
        .find(|&v| a.contains_var(v))
        .expect("non-constant polynomial has a variable");
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let pa = a.exact_div(&ca).expect("content divides");
    let pb = b.exact_div(&cb).expect("content divides");
    let g = gcd(&ca, &cb);
    let h = primitive_prs(pa, pb, v);
    g.mul(&h).with_positive_lead()
}

/// gcd of the coefficients of `p` viewed as univariate in `var`.
fn content_in(p: &Poly, var: usize) -> Poly {
    let mut acc = Poly::zero();
    for c in p.coefficients_in(var) {
        if c.is_zero() {
            continue;
        }
        acc = gcd(&acc, &c);
        if acc.is_one() {
            break;
        }
    }
    acc
}

fn primitive_part_in(p: &Poly, var: usize) -> Poly {
    let c = content_in(p, var);
    p.exact_div(&c).expect("content divides")
}

fn primitive_prs(a: Poly, b: Poly, var: usize) -> Poly {
    let (mut f, mut g) = if a.degree_in(var) >= b.degree_in(var) {
        (a, b)
    } else {
        (b, a)
    };
    loop {
        let r = pseudo_remainder(&f, &g, var);
        if r.is_zero() {
            return primitive_part_in(&g, var).with_positive_lead();
        }
        if r.degree_in(var) == 0 {
            return Poly::one();
        }
        f = g;
        g = primitive_part_in(&r, var);
    }
}

fn pseudo_remainder(f: &Poly, g: &Poly, var: usize) -> Poly {
    let gc = g.coefficients_in(var);
    let dg = gc.len() - 1;
    let lc_g = &gc[dg];
    let mut r = f.coefficients_in(var);
    loop {
        while r.len() > 1 && r.last().is_some_and(Poly::is_zero) {
            r.pop();
        }
        let dr = r.len() - 1;
        if (dr == 0 && r[0].is_zero()) || dr < dg {
            break;
        }
        let lc_r = r[dr].clone();
        let shift = dr - dg;
        for c in r.iter_mut() {
            *c = c.mul(lc_g);
        }
        for (k, gk) in gc.iter().enumerate() {
            r[k + shift] = r[k + shift].sub(&gk.mul(&lc_r));
        }
        debug_assert!(r[dr].is_zero());
    }
    Poly::from_coefficients_in(var, &r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Poly {
        Poly::var(i)
    }

    fn c(k: i64) -> Poly {
        Poly::constant(k)
    }

    #[test]
    fn grlex_orders_by_degree_then_variable() {
        let a = Monomial::from_exponents(vec![1, 1]);
        let b = Monomial::from_exponents(vec![0, 0, 3]);
        let d = Monomial::from_exponents(vec![2]);
        assert!(b > a);
        assert!(d > a);
        assert!(Monomial::var(0, 1) > Monomial::var(1, 1));
    }

    #[test]
    fn exact_division_detects_remainder() {
        let p = x(0).mul(&x(0)).sub(&c(1));
        let q = x(0).sub(&c(1));
        assert_eq!(p.exact_div(&q), Some(x(0).add(&c(1))));
        assert_eq!(p.exact_div(&x(0)), None);
        assert_eq!(c(6).exact_div(&c(4)), None);
    }

    #[test]
    fn gcd_of_shared_factor() {
        let f = x(0).add(&x(1));
        let a = f.mul(&x(0).sub(&c(2)));
        let b = f.mul(&x(1).add(&c(3))).scale(&BigInt::from(-4));
        assert_eq!(gcd(&a, &b), f);
    }

    #[test]
    fn gcd_with_integer_content() {
        let a = x(0).scale(&BigInt::from(6));
        let b = c(4);
        assert_eq!(gcd(&a, &b), c(2));
        assert_eq!(gcd(&c(0), &x(1).neg()), x(1));
    }

    #[test]
    fn gcd_of_coprime_is_one() {
        let a = x(0).mul(&x(0)).add(&x(1));
        let b = x(0).mul(&x(1)).add(&c(1));
        assert!(gcd(&a, &b).is_one());
    }

    #[test]
    fn coefficient_roundtrip() {
        let p = x(0).mul(&x(2)).add(&x(2).pow(3)).sub(&c(5));
        let cs = p.coefficients_in(2);
        assert_eq!(cs.len(), 4);
        assert_eq!(Poly::from_coefficients_in(2, &cs), p);
    }

    #[test]
    fn text_rendering() {
        let names: Vec<String> = ["x", "t"].iter().map(|s| s.to_string()).collect();
        let p = x(1).pow(2).scale(&BigInt::from(-3)).add(&x(0)).sub(&c(4));
        assert_eq!(p.to_text(&names), "-3*t^2 + x - 4");
    }
}
