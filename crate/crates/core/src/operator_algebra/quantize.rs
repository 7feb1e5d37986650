//! Quadratic Hamiltonians in Darboux coordinates `p_a^μ, q_b^ν`, their
//! quantization, Poisson brackets and the quantization cocycle.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use super::diffop::DiffOperator;
use super::series::{Monomial, SeriesPolynomial, Truncation, Var};
use super::thetaz::ThetaZOperator;
use crate::error::{Error, Result};
use crate::exactmath::linalg::RatMatrix;
use crate::exactmath::{int, rat, Rational};

/// A Darboux coordinate. `Q` sorts before `P`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Darboux {
    Q(Var),
    P(Var),
}

impl Darboux {
    pub fn var(self) -> Var {
        match self {
            Darboux::Q(v) | Darboux::P(v) => v,
        }
    }
}

type LinearForm = BTreeMap<Darboux, Rational>;

/// `Σ c·x·y` over unordered pairs of Darboux coordinates.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QuadraticHamiltonian {
    terms: BTreeMap<(Darboux, Darboux), Rational>,
}

impl QuadraticHamiltonian {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(x: Darboux, y: Darboux) -> Self {
        let mut h = Self::zero();
        h.add_term(x, y, Rational::one());
        h
    }

    pub fn add_term(&mut self, x: Darboux, y: Darboux, c: Rational) {
        if c.is_zero() {
            return;
        }
        let key = if x <= y { (x, y) } else { (y, x) };
        let slot = self.terms.entry(key).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Darboux, Darboux), &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(x, y), c) in other.terms() {
            out.add_term(x, y, c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = Self::zero();
        for (&(x, y), c) in self.terms() {
            out.add_term(x, y, c * s);
        }
        out
    }

    /// Keeps the monomials whose coordinates all have mode `≤ max_mode`.
    pub fn restrict_modes(&self, max_mode: u32) -> Self {
        QuadraticHamiltonian {
            terms: self
                .terms
                .iter()
                .filter(|((x, y), _)| x.var().mode <= max_mode && y.var().mode <= max_mode)
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    /// Every `q`-variable that occurs, for building probe polynomials.
    pub fn variables(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|&(x, y)| [x.var(), y.var()]).collect()
    }

    fn gradient(&self, z: Darboux) -> LinearForm {
        let mut out = LinearForm::new();
        for (&(x, y), c) in self.terms() {
            if x == z {
                *out.entry(y).or_insert_with(Rational::zero) += c;
            }
            if y == z {
                *out.entry(x).or_insert_with(Rational::zero) += c;
            }
        }
        out
    }
}

/// `{F, G} = Σ_v ∂F/∂p_v ∂G/∂q_v - ∂F/∂q_v ∂G/∂p_v`, so `{p, q} = 1`.
pub fn poisson_bracket(f: &QuadraticHamiltonian, g: &QuadraticHamiltonian) -> QuadraticHamiltonian {
    let mut out = QuadraticHamiltonian::zero();
    let vars: BTreeSet<Var> = f.variables().union(&g.variables()).copied().collect();
    for v in vars {
        let (p, q) = (Darboux::P(v), Darboux::Q(v));
        for (a, b, sign) in [(p, q, int(1)), (q, p, int(-1))] {
            let fa = f.gradient(a);
            let gb = g.gradient(b);
            for (x, cx) in &fa {
                for (y, cy) in &gb {
                    out.add_term(*x, *y, &sign * cx * cy);
                }
            }
        }
    }
    out
}

/// `q q ↦ q q/ħ`, `q p ↦ q ∂/∂q`, `p p ↦ ħ ∂²/∂q∂q`.
pub fn quantize(h: &QuadraticHamiltonian) -> DiffOperator {
    let mut op = DiffOperator::zero();
    for (&(x, y), c) in h.terms() {
        match (x, y) {
            (Darboux::Q(a), Darboux::Q(b)) => op.add_term(c.clone(), -1, Monomial::from_vars(&[a, b]), vec![]),
            (Darboux::Q(a), Darboux::P(b)) => op.add_term(c.clone(), 0, Monomial::var(a), vec![b]),
            (Darboux::P(a), Darboux::P(b)) => op.add_term(c.clone(), 1, Monomial::one(), vec![a, b]),
            (Darboux::P(_), Darboux::Q(_)) => unreachable!("keys are sorted"),
        }
    }
    op
}

fn probes(vars: &BTreeSet<Var>, bound: Truncation) -> Vec<SeriesPolynomial> {
    let list: Vec<Var> = vars.iter().copied().collect();
    let mut out = vec![SeriesPolynomial::constant(bound, int(1))];
    for (i, &a) in list.iter().enumerate() {
        let mut s = SeriesPolynomial::zero(bound);
        s.add_term(Monomial::var(a), 0, int(1));
        out.push(s);
        for &b in &list[i..] {
            let mut s = SeriesPolynomial::zero(bound);
            s.add_term(Monomial::from_vars(&[a, b]), 0, int(1));
            out.push(s);
        }
    }
    out
}

/// The scalar `[Â, B̂] - ({A,B})^`, read off from probe polynomials.
pub fn cocycle(a: &QuadraticHamiltonian, b: &QuadraticHamiltonian) -> Result<Rational> {
    let (qa, qb) = (quantize(a), quantize(b));
    let qc = quantize(&poisson_bracket(a, b));
    let vars: BTreeSet<Var> = a.variables().union(&b.variables()).copied().collect();
    let max_mode = vars.iter().map(|v| v.mode).max().unwrap_or(0);
    let bound = Truncation::new(max_mode, 6);
    let defect = |f: &SeriesPolynomial| qa.apply(&qb.apply(f)).sub(&qb.apply(&qa.apply(f))).sub(&qc.apply(f));
    let probes = probes(&vars, bound);
    let base = defect(&probes[0]);
    let constant = base.coefficient(&Monomial::one(), 0);
    for probe in &probes {
        let d = defect(probe);
        if d != probe.scale(&constant) {
            return Err(Error::Internal(format!(
                "quantized commutator differs from the bracket by a non-scalar: {d}"
            )));
        }
    }
    Ok(constant)
}

/// The scalar `[Â, B̂] - ({A,B})^` read off from the constant probe alone.
pub fn cocycle_on_unit(a: &QuadraticHamiltonian, b: &QuadraticHamiltonian) -> Rational {
    let (qa, qb) = (quantize(a), quantize(b));
    let qc = quantize(&poisson_bracket(a, b));
    let max_mode = a.variables().union(&b.variables()).map(|v| v.mode).max().unwrap_or(0);
    let one = SeriesPolynomial::constant(Truncation::new(max_mode, 4), Rational::one());
    let defect = qa
        .apply(&qb.apply(&one))
        .sub(&qb.apply(&qa.apply(&one)))
        .sub(&qc.apply(&one));
    defect.coefficient(&Monomial::one(), 0)
}

/// The cocycle in closed form: `C(p_x p_y, q_x q_y) = 1 + δ_{xy}` and
/// antisymmetric, zero on every other pair of monomials.
pub fn cocycle_formula(a: &QuadraticHamiltonian, b: &QuadraticHamiltonian) -> Rational {
    let pairing = |f: &QuadraticHamiltonian, g: &QuadraticHamiltonian| {
        let mut total = Rational::zero();
        for (&(x, y), c) in f.terms() {
            if let (Darboux::P(u), Darboux::P(v)) = (x, y) {
                let d = g
                    .terms
                    .get(&(Darboux::Q(u), Darboux::Q(v)))
                    .cloned()
                    .unwrap_or_else(Rational::zero);
                let mult = if u == v { int(2) } else { int(1) };
                total += c * d * mult;
            }
        }
        total
    };
    pairing(a, b) - pairing(b, a)
}

/// Vectors of linear forms indexed by `z`-exponent.
type LinearSeries = BTreeMap<i64, Vec<LinearForm>>;

fn add_form(acc: &mut LinearForm, f: &LinearForm, s: &Rational) {
    for (k, c) in f {
        let slot = acc.entry(*k).or_insert_with(Rational::zero);
        *slot += c * s;
    }
    acc.retain(|_, c| !c.is_zero());
}

/// The generic point `Σ p_a^μ φ^μ (-z)^{-a-1} + Σ q_b^ν φ_ν z^b` for modes `≤ max_mode`.
fn generic_point(eta: &RatMatrix, max_mode: u32) -> Result<LinearSeries> {
    let n = eta.rows();
    let eta_inv = eta.inverse()?;
    let mut f = LinearSeries::new();
    for b in 0..=max_mode {
        let col: Vec<LinearForm> = (0..n)
            .map(|nu| LinearForm::from([(Darboux::Q(Var::new(nu, b)), int(1))]))
            .collect();
        f.insert(b as i64, col);
    }
    for a in 0..=max_mode {
        let sign = if a % 2 == 0 { int(-1) } else { int(1) };
        let mut col = vec![LinearForm::new(); n];
        for (nu, slot) in col.iter_mut().enumerate() {
            for mu in 0..n {
                let c = &eta_inv[(mu, nu)] * &sign;
                if !c.is_zero() {
                    add_form(slot, &LinearForm::from([(Darboux::P(Var::new(mu, a)), int(1))]), &c);
                }
            }
        }
        f.insert(-(a as i64) - 1, col);
    }
    Ok(f)
}

fn apply_operator(op: &ThetaZOperator, f: &LinearSeries) -> LinearSeries {
    let n = op.size();
    let mut out = LinearSeries::new();
    for (&k, v) in f {
        for (j, e, m) in op.terms() {
            let weight = (0..e).fold(Rational::one(), |acc, _| acc * int(k));
            if weight.is_zero() {
                continue;
            }
            let slot = out.entry(j + k).or_insert_with(|| vec![LinearForm::new(); n]);
            for row in 0..n {
                for col in 0..n {
                    let c = &m[(row, col)] * &weight;
                    if !c.is_zero() {
                        add_form(&mut slot[row], &v[col], &c);
                    }
                }
            }
        }
    }
    out
}

/// `Ω(F, G) = Res_z (F(-z), G(z)) dz` with the pairing `η`.
fn omega(f: &LinearSeries, g: &LinearSeries, eta: &RatMatrix) -> QuadraticHamiltonian {
    let mut out = QuadraticHamiltonian::zero();
    for (&k, fv) in f {
        let Some(gv) = g.get(&(-1 - k)) else { continue };
        let sign = if k.rem_euclid(2) == 0 { int(1) } else { int(-1) };
        for (a, fa) in fv.iter().enumerate() {
            for (b, gb) in gv.iter().enumerate() {
                let w = &eta[(a, b)] * &sign;
                if w.is_zero() {
                    continue;
                }
                for (x, cx) in fa {
                    for (y, cy) in gb {
                        out.add_term(*x, *y, &w * cx * cy);
                    }
                }
            }
        }
    }
    out
}

/// `h_A(f) = ½ Ω(A f, f)` for `A` acting on column vectors, restricted
/// to Darboux modes `≤ max_mode`.
pub fn hamiltonian_of(op: &ThetaZOperator, eta: &RatMatrix, max_mode: u32) -> Result<QuadraticHamiltonian> {
    if op.size() != eta.rows() {
        return Err(Error::Shape("operator and pairing sizes differ".into()));
    }
    let f = generic_point(eta, max_mode)?;
    let af = apply_operator(op, &f);
    Ok(omega(&af, &f, eta).scale(&rat(1, 2)))
}

/// `Â` on the Fock space in descendant coordinates: the dilaton shift
/// `q_1^0 = t_1^0 - 1` applied to the quantized Hamiltonian.
pub fn quantize_operator(op: &ThetaZOperator, eta: &RatMatrix, max_mode: u32) -> Result<DiffOperator> {
    let h = hamiltonian_of(op, eta, max_mode)?;
    Ok(quantize(&h).substitute_shift(Var::new(0, 1), &int(-1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(c: usize, m: u32) -> Darboux {
        Darboux::Q(Var::new(c, m))
    }
    fn p(c: usize, m: u32) -> Darboux {
        Darboux::P(Var::new(c, m))
    }

    #[test]
    fn cocycle_examples() {
        let pp = QuadraticHamiltonian::monomial(p(1, 2), p(2, 3));
        let qq = QuadraticHamiltonian::monomial(q(1, 2), q(2, 3));
        assert_eq!(cocycle(&pp, &qq).unwrap(), int(1));
        assert_eq!(cocycle(&qq, &pp).unwrap(), int(-1));
        let pp2 = QuadraticHamiltonian::monomial(p(1, 2), p(1, 2));
        let qq2 = QuadraticHamiltonian::monomial(q(1, 2), q(1, 2));
        assert_eq!(cocycle(&pp2, &qq2).unwrap(), int(2));
        let qp = QuadraticHamiltonian::monomial(q(0, 1), p(1, 0));
        assert_eq!(cocycle(&qq, &qp).unwrap(), int(0));
    }

    #[test]
    fn closed_form_cocycle_agrees_with_probes() {
        let mut a = QuadraticHamiltonian::monomial(p(1, 2), p(2, 3));
        a.add_term(p(0, 0), p(0, 0), int(3));
        a.add_term(q(0, 1), p(2, 0), int(5));
        let mut b = QuadraticHamiltonian::monomial(q(1, 2), q(2, 3));
        b.add_term(q(0, 0), q(0, 0), rat(1, 2));
        b.add_term(p(2, 3), p(2, 3), int(7));
        assert_eq!(cocycle_formula(&a, &b), cocycle(&a, &b).unwrap());
        assert_eq!(cocycle_formula(&b, &a), cocycle(&b, &a).unwrap());
    }

    #[test]
    fn pp_quantization_on_qq() {
        // ħ∂_a∂_b (q_a q_b) = ħ(1 + δ)
        let bound = Truncation::new(3, 4);
        for (a, b, expect) in [(q(0, 1), q(1, 1), 1), (q(0, 1), q(0, 1), 2)] {
            let op = quantize(&QuadraticHamiltonian::monomial(
                Darboux::P(a.var()),
                Darboux::P(b.var()),
            ));
            let mut s = SeriesPolynomial::zero(bound);
            s.add_term(Monomial::from_vars(&[a.var(), b.var()]), 0, int(1));
            let got = op.apply(&s);
            assert_eq!(got.coefficient(&Monomial::one(), 1), int(expect));
            assert_eq!(got.len(), 1);
        }
        let qp = quantize(&QuadraticHamiltonian::monomial(q(0, 0), p(1, 1)));
        assert!(qp.apply(&SeriesPolynomial::constant(bound, int(1))).is_zero());
    }

    #[test]
    fn poisson_of_p_and_q() {
        // {p², q²} = 4pq
        let pp = QuadraticHamiltonian::monomial(p(0, 0), p(0, 0));
        let qq = QuadraticHamiltonian::monomial(q(0, 0), q(0, 0));
        let mut expect = QuadraticHamiltonian::zero();
        expect.add_term(q(0, 0), p(0, 0), int(4));
        assert_eq!(poisson_bracket(&pp, &qq), expect);
    }
}
