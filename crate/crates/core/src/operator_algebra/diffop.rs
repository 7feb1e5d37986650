//! Differential operators of order at most two on [`SeriesPolynomial`],
//! normal ordered with multiplications to the left of derivatives.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::series::{Monomial, SeriesPolynomial, Var};
use crate::exactmath::{format_rational, int, Rational};

/// `(ħ exponent, multiplier, sorted derivative variables)`.
pub type OpKey = (i32, Monomial, Vec<Var>);

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiffOperator {
    terms: BTreeMap<OpKey, Rational>,
}

impl DiffOperator {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut op = Self::zero();
        op.add_term(c, 0, Monomial::one(), vec![]);
        op
    }

    /// `∂/∂v`.
    pub fn derivative(v: Var) -> Self {
        let mut op = Self::zero();
        op.add_term(Rational::one(), 0, Monomial::one(), vec![v]);
        op
    }

    /// Multiplication by `c·m·ħ^hbar`.
    pub fn multiplication(c: Rational, hbar: i32, m: Monomial) -> Self {
        let mut op = Self::zero();
        op.add_term(c, hbar, m, vec![]);
        op
    }

    pub fn add_term(&mut self, c: Rational, hbar: i32, mult: Monomial, mut derivs: Vec<Var>) {
        if c.is_zero() {
            return;
        }
        derivs.sort();
        let key = (hbar, mult, derivs);
        let slot = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&OpKey, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, hbar: i32, mult: &Monomial, derivs: &[Var]) -> Rational {
        let mut d = derivs.to_vec();
        d.sort();
        self.terms
            .get(&(hbar, mult.clone(), d))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((h, m, d), c) in other.terms() {
            out.add_term(c.clone(), *h, m.clone(), d.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&int(-1)))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = Self::zero();
        for ((h, m, d), c) in self.terms() {
            out.add_term(c * s, *h, m.clone(), d.clone());
        }
        out
    }

    /// Keeps the terms satisfying `pred`.
    pub fn filter(&self, pred: impl Fn(&OpKey) -> bool) -> Self {
        DiffOperator {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| pred(k))
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    /// Drops pure scalar terms (no multiplier, no derivative).
    pub fn non_constant(&self) -> Self {
        self.filter(|(_, m, d)| !(m.is_one() && d.is_empty()))
    }

    /// Keeps terms in which every variable has mode `≤ max_mode`.
    pub fn restrict_modes(&self, max_mode: u32) -> Self {
        self.filter(|(_, m, d)| m.max_mode() <= max_mode && d.iter().all(|v| v.mode <= max_mode))
    }

    /// Replaces the multiplier variable `v` by `v + shift` (derivatives are
    /// unchanged). The dilaton shift is `shift = -1` on `t^0_1`.
    pub fn substitute_shift(&self, v: Var, shift: &Rational) -> Self {
        let mut out = Self::zero();
        for ((h, m, d), c) in self.terms() {
            let e = m.exponent(v);
            let mut rest = m.clone();
            for _ in 0..e {
                rest = rest.derivative(v).expect("present").1;
            }
            // (v + shift)^e = Σ_j C(e,j) shift^{e-j} v^j
            let mut binom = Rational::one();
            for j in 0..=e {
                let mut mono = rest.clone();
                for _ in 0..j {
                    mono = mono.mul(&Monomial::var(v));
                }
                let power = (0..e - j).fold(Rational::one(), |acc, _| acc * shift);
                out.add_term(c * &binom * power, *h, mono, d.clone());
                binom = binom * int((e - j) as i64) / int(j as i64 + 1);
            }
        }
        out
    }

    pub fn apply(&self, series: &SeriesPolynomial) -> SeriesPolynomial {
        let mut out = SeriesPolynomial::zero(series.bound());
        out.note_dropped(series.dropped());
        for ((h, mult, derivs), c) in self.terms() {
            let mut cur = series.clone();
            for &v in derivs {
                cur = cur.derivative(v);
            }
            for (m, hs, cs) in cur.terms() {
                out.add_term(mult.mul(m), h + hs, c * cs);
            }
        }
        out
    }

    /// `e^{-F/ħ} · op · e^{F/ħ}` for an `ħ`-free `F`, expanded exactly.
    pub fn conjugate_exp(&self, f: &SeriesPolynomial) -> SeriesPolynomial {
        let bound = f.bound();
        let mut out = SeriesPolynomial::zero(bound);
        for ((h, mult, derivs), c) in self.terms() {
            let mut lead = SeriesPolynomial::zero(bound);
            lead.add_term(mult.clone(), *h, c.clone());
            let contribution = match derivs.as_slice() {
                [] => lead,
                [u] => lead.mul(&shift_hbar(&f.derivative(*u), -1)),
                [u, v] => {
                    let fu = f.derivative(*u);
                    let quad = shift_hbar(&fu.mul(&f.derivative(*v)), -2);
                    let lin = shift_hbar(&fu.derivative(*v), -1);
                    lead.mul(&quad.add(&lin))
                }
                _ => unreachable!("operators have order at most two"),
            };
            out = out.add(&contribution);
        }
        out
    }

    pub fn render(&self, names: &dyn Fn(Var) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms()
            .map(|((h, m, d), c)| {
                let mut parts = vec![format_rational(c)];
                if *h != 0 {
                    parts.push(format!("hbar^{h}"));
                }
                if !m.is_one() {
                    parts.push(m.render(names));
                }
                parts.extend(d.iter().map(|&v| format!("d/d{}", names(v))));
                parts.join("*")
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn shift_hbar(s: &SeriesPolynomial, by: i32) -> SeriesPolynomial {
    let mut out = SeriesPolynomial::zero(s.bound());
    out.note_dropped(s.dropped());
    for (m, h, c) in s.terms() {
        out.add_term(m.clone(), h + by, c.clone());
    }
    out
}

impl fmt::Display for DiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&|v: Var| format!("t{}_{}", v.class, v.mode)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator_algebra::series::Truncation;

    fn series(terms: &[(&[Var], i32, i64)]) -> SeriesPolynomial {
        let mut s = SeriesPolynomial::zero(Truncation::new(4, 6));
        for (vars, h, c) in terms {
            s.add_term(Monomial::from_vars(vars), *h, int(*c));
        }
        s
    }

    #[test]
    fn identity_and_single_derivative() {
        let t0 = Var::new(0, 0);
        let t1 = Var::new(0, 1);
        let s = series(&[(&[t1, t0], 0, 1)]);
        assert_eq!(DiffOperator::constant(int(1)).apply(&s), s);
        assert_eq!(DiffOperator::derivative(t1).apply(&s), series(&[(&[t0], 0, 1)]));
    }

    #[test]
    fn conjugation_matches_direct_expansion() {
        // e^{-F/ħ} ∂_u ∂_v e^{F/ħ} = F_u F_v/ħ² + F_uv/ħ
        let a = Var::new(0, 0);
        let b = Var::new(1, 0);
        let f = series(&[(&[a, b], 0, 3), (&[a, a], 0, 1)]);
        let mut op = DiffOperator::zero();
        op.add_term(int(1), 1, Monomial::one(), vec![a, b]);
        let got = op.conjugate_exp(&f);
        let expected = series(&[(&[a, b], -1, 9), (&[a, a], -1, 6), (&[], 0, 3)]);
        assert_eq!(got, expected);
    }

    #[test]
    fn dilaton_substitution() {
        let q = Var::new(0, 1);
        let x = Var::new(1, 0);
        let mut op = DiffOperator::zero();
        op.add_term(int(1), 0, Monomial::from_vars(&[q, q]), vec![x]);
        let shifted = op.substitute_shift(q, &int(-1));
        assert_eq!(shifted.coefficient(0, &Monomial::from_vars(&[q, q]), &[x]), int(1));
        assert_eq!(shifted.coefficient(0, &Monomial::var(q), &[x]), int(-2));
        assert_eq!(shifted.coefficient(0, &Monomial::one(), &[x]), int(1));
    }
}
