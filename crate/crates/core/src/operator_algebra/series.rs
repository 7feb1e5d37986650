//! Truncated polynomials in descendant variables `t^α_m` with a formal
//! weight `ħ^e` (`e` may be negative).

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::exactmath::{format_rational, Rational};

/// The coordinate dual to `τ_mode(φ_class)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    pub class: usize,
    pub mode: u32,
}

impl Var {
    pub fn new(class: usize, mode: u32) -> Self {
        Var { class, mode }
    }
}

/// Product of variables with positive exponents, sorted by variable.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_vars(vars: &[Var]) -> Self {
        vars.iter().fold(Monomial::one(), |acc, &v| acc.mul(&Monomial::var(v)))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn max_mode(&self) -> u32 {
        self.0.iter().map(|(v, _)| v.mode).max().unwrap_or(0)
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0.iter().find(|(w, _)| *w == v).map_or(0, |&(_, e)| e)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut map: BTreeMap<Var, u32> = self.0.iter().copied().collect();
        for &(v, e) in &other.0 {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial(map.into_iter().collect())
    }

    /// `∂/∂v` as `(multiplicity, remaining monomial)`, or `None` if `v` is absent.
    pub fn derivative(&self, v: Var) -> Option<(u32, Monomial)> {
        let e = self.exponent(v);
        if e == 0 {
            return None;
        }
        let rest = self
            .0
            .iter()
            .filter_map(|&(w, f)| match (w == v, f) {
                (true, 1) => None,
                (true, f) => Some((w, f - 1)),
                (false, f) => Some((w, f)),
            })
            .collect();
        Some((e, Monomial(rest)))
    }

    /// Whether every variable satisfies `pred`.
    pub fn all_vars(&self, pred: impl Fn(Var) -> bool) -> bool {
        self.0.iter().all(|&(v, _)| pred(v))
    }

    pub fn render(&self, names: &dyn Fn(Var) -> String) -> String {
        if self.is_one() {
            return "1".into();
        }
        self.0
            .iter()
            .map(|&(v, e)| if e == 1 { names(v) } else { format!("{}^{e}", names(v)) })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// Bounds on stored monomials: every variable mode `≤ max_mode` and total
/// degree `≤ max_degree`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Truncation {
    pub max_mode: u32,
    pub max_degree: u32,
}

impl Truncation {
    pub fn new(max_mode: u32, max_degree: u32) -> Self {
        Truncation { max_mode, max_degree }
    }

    pub fn admits(&self, m: &Monomial) -> bool {
        m.degree() <= self.max_degree && m.max_mode() <= self.max_mode
    }
}

/// Key of a stored term: monomial and `ħ` exponent.
pub type TermKey = (Monomial, i32);

#[derive(Clone, Debug)]
pub struct SeriesPolynomial {
    bound: Truncation,
    terms: BTreeMap<TermKey, Rational>,
    dropped: u64,
}

impl PartialEq for SeriesPolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl SeriesPolynomial {
    pub fn zero(bound: Truncation) -> Self {
        SeriesPolynomial {
            bound,
            terms: BTreeMap::new(),
            dropped: 0,
        }
    }

    pub fn constant(bound: Truncation, c: Rational) -> Self {
        let mut s = Self::zero(bound);
        s.add_term(Monomial::one(), 0, c);
        s
    }

    pub fn bound(&self) -> Truncation {
        self.bound
    }

    /// Number of monomials discarded by the truncation so far.
    pub fn dropped(&self) -> u64 {
        self.dropped
    }

    pub(crate) fn note_dropped(&mut self, n: u64) {
        self.dropped += n;
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, i32, &Rational)> {
        self.terms.iter().map(|((m, h), c)| (m, *h, c))
    }

    pub fn coefficient(&self, m: &Monomial, hbar: i32) -> Rational {
        self.terms
            .get(&(m.clone(), hbar))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Adds `c·m·ħ^hbar`; returns `false` (and counts a drop) when `m` is
    /// outside the truncation.
    pub fn add_term(&mut self, m: Monomial, hbar: i32, c: Rational) -> bool {
        if c.is_zero() {
            return true;
        }
        if !self.bound.admits(&m) {
            self.dropped += 1;
            return false;
        }
        let key = (m, hbar);
        let slot = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
        true
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.dropped += other.dropped;
        for (m, h, c) in other.terms() {
            out.add_term(m.clone(), h, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Rational::from_integer((-1).into())))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = Self::zero(self.bound);
        out.dropped = self.dropped;
        for (m, h, c) in self.terms() {
            out.add_term(m.clone(), h, c * s);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.bound);
        out.dropped = self.dropped + other.dropped;
        for (m1, h1, c1) in self.terms() {
            for (m2, h2, c2) in other.terms() {
                out.add_term(m1.mul(m2), h1 + h2, c1 * c2);
            }
        }
        out
    }

    pub fn derivative(&self, v: Var) -> Self {
        let mut out = Self::zero(self.bound);
        out.dropped = self.dropped;
        for (m, h, c) in self.terms() {
            if let Some((e, rest)) = m.derivative(v) {
                out.add_term(rest, h, c * Rational::from_integer(e.into()));
            }
        }
        out
    }

    /// Terms with the given `ħ` exponent, re-weighted to `ħ^0`.
    pub fn hbar_part(&self, hbar: i32) -> Self {
        let mut out = Self::zero(self.bound);
        for (m, h, c) in self.terms() {
            if h == hbar {
                out.add_term(m.clone(), 0, c.clone());
            }
        }
        out
    }

    /// Keeps terms whose monomial satisfies `pred`.
    pub fn filter(&self, pred: impl Fn(&Monomial) -> bool) -> Self {
        let mut out = Self::zero(self.bound);
        for (m, h, c) in self.terms() {
            if pred(m) {
                out.add_term(m.clone(), h, c.clone());
            }
        }
        out
    }

    pub fn with_bound(&self, bound: Truncation) -> Self {
        let mut out = Self::zero(bound);
        out.dropped = self.dropped;
        for (m, h, c) in self.terms() {
            out.add_term(m.clone(), h, c.clone());
        }
        out
    }

    pub fn render(&self, names: &dyn Fn(Var) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms()
            .map(|(m, h, c)| {
                let hb = match h {
                    0 => String::new(),
                    1 => "*hbar".into(),
                    h => format!("*hbar^{h}"),
                };
                format!("{}*{}{}", format_rational(c), m.render(names), hb)
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for SeriesPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&|v: Var| format!("t{}_{}", v.class, v.mode)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::int;

    #[test]
    fn derivative_of_product() {
        let b = Truncation::new(4, 4);
        let t0 = Var::new(0, 0);
        let t1 = Var::new(0, 1);
        let mut s = SeriesPolynomial::zero(b);
        s.add_term(Monomial::from_vars(&[t1, t0]), 0, int(1));
        let d = s.derivative(t1);
        assert_eq!(d, {
            let mut e = SeriesPolynomial::zero(b);
            e.add_term(Monomial::var(t0), 0, int(1));
            e
        });
    }

    #[test]
    fn truncation_drops_are_counted() {
        let b = Truncation::new(1, 2);
        let x = Var::new(0, 1);
        let mut s = SeriesPolynomial::zero(b);
        assert!(s.add_term(Monomial::from_vars(&[x, x]), 0, int(1)));
        assert!(!s.add_term(Monomial::from_vars(&[x, x, x]), 0, int(1)));
        assert!(!s.add_term(Monomial::var(Var::new(0, 2)), 0, int(1)));
        assert_eq!(s.dropped(), 2);
        let sq = s.mul(&s);
        assert!(sq.is_zero());
        assert_eq!(sq.dropped(), 5);
    }

    #[test]
    fn cancellation_removes_terms() {
        let b = Truncation::new(2, 2);
        let m = Monomial::var(Var::new(1, 0));
        let mut s = SeriesPolynomial::zero(b);
        s.add_term(m.clone(), -1, int(3));
        s.add_term(m, -1, int(-3));
        assert!(s.is_zero());
    }
}
