//! Operators `Σ_j z^j P_j(θ)` with `θ = z d/dz` and matrix-valued
//! polynomial coefficients, kept in the normal form where every `z` power
//! stands to the left.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactmath::linalg::RatMatrix;
use crate::exactmath::{format_rational, int, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaZOperator {
    size: usize,
    /// `z`-exponent ↦ coefficients of `θ^0, θ^1, …`.
    terms: BTreeMap<i64, Vec<RatMatrix>>,
}

impl ThetaZOperator {
    pub fn zero(size: usize) -> Self {
        ThetaZOperator {
            size,
            terms: BTreeMap::new(),
        }
    }

    /// `z^j · M · θ^e`.
    pub fn monomial(j: i64, m: RatMatrix, e: usize) -> Self {
        let size = m.rows();
        let mut poly = vec![RatMatrix::zeros(size, size); e + 1];
        poly[e] = m;
        let mut out = ThetaZOperator {
            size,
            terms: BTreeMap::from([(j, poly)]),
        };
        out.normalize();
        out
    }

    pub fn identity(size: usize) -> Self {
        Self::monomial(0, RatMatrix::identity(size), 0)
    }

    pub fn z_power(size: usize, j: i64) -> Self {
        Self::monomial(j, RatMatrix::identity(size), 0)
    }

    pub fn theta(size: usize) -> Self {
        Self::monomial(0, RatMatrix::identity(size), 1)
    }

    pub fn matrix(m: RatMatrix) -> Self {
        Self::monomial(0, m, 0)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero terms as `(j, e, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (i64, usize, &RatMatrix)> {
        self.terms.iter().flat_map(|(&j, poly)| {
            poly.iter()
                .enumerate()
                .filter(|(_, m)| !m.is_zero())
                .map(move |(e, m)| (j, e, m))
        })
    }

    /// `P_j(θ)` evaluated at `θ = x`.
    pub fn coefficient_at(&self, j: i64, x: &Rational) -> RatMatrix {
        let mut acc = RatMatrix::zeros(self.size, self.size);
        if let Some(poly) = self.terms.get(&j) {
            let mut pow = Rational::one();
            for m in poly {
                acc = &acc + &m.scale(&pow);
                pow *= x;
            }
        }
        acc
    }

    fn normalize(&mut self) {
        for poly in self.terms.values_mut() {
            while poly.last().is_some_and(RatMatrix::is_zero) {
                poly.pop();
            }
        }
        self.terms.retain(|_, poly| !poly.is_empty());
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.size != other.size {
            return Err(Error::Shape(format!(
                "operator sizes {} and {} differ",
                self.size, other.size
            )));
        }
        Ok(())
    }

    fn add_poly(&mut self, j: i64, e: usize, m: &RatMatrix) {
        let size = self.size;
        let poly = self.terms.entry(j).or_default();
        if poly.len() <= e {
            poly.resize(e + 1, RatMatrix::zeros(size, size));
        }
        poly[e] = &poly[e] + m;
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (j, e, m) in other.terms() {
            out.add_poly(j, e, m);
        }
        out.normalize();
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&int(-1)))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = Self::zero(self.size);
        for (j, e, m) in self.terms() {
            out.add_poly(j, e, &m.scale(s));
        }
        out.normalize();
        out
    }

    /// Composition `self ∘ other`, using `P(θ) z^b = z^b P(θ + b)`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.size);
        for (a, e, m) in self.terms() {
            for (b, f, n) in other.terms() {
                let mn = m * n;
                // (θ + b)^e θ^f = Σ_i C(e,i) b^{e-i} θ^{i+f}
                let mut binom = Rational::one();
                let bb = int(b);
                for i in (0..=e).rev() {
                    let power_of_b = pow(&bb, e - i);
                    out.add_poly(a + b, i + f, &mn.scale(&(&binom * power_of_b)));
                    // next binomial C(e, i-1) = C(e,i) · i / (e - i + 1)
                    binom = binom * int(i as i64) / int((e - i + 1) as i64);
                }
            }
        }
        out.normalize();
        Ok(out)
    }

    pub fn power(&self, k: u32) -> Result<Self> {
        let mut acc = Self::identity(self.size);
        for _ in 0..k {
            acc = acc.compose(self)?;
        }
        Ok(acc)
    }

    /// `[A, B] = AB - BA` under composition.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.compose(other)?.sub(&other.compose(self)?)
    }

    /// Substitutes `θ ↦ θ + c` in every coefficient; equals conjugation
    /// `z^{-c} · A · z^{c}`.
    pub fn shift_theta(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.size);
        for (j, e, m) in self.terms() {
            let mut binom = Rational::one();
            for i in (0..=e).rev() {
                out.add_poly(j, i, &m.scale(&(&binom * pow(c, e - i))));
                binom = binom * int(i as i64) / int((e - i + 1) as i64);
            }
        }
        out.normalize();
        out
    }

    /// Action on `z^k · v` for a column vector `v`: `Σ_j z^{j+k} P_j(k) v`.
    pub fn apply_monomial(&self, k: i64, v: &[Rational]) -> Result<BTreeMap<i64, Vec<Rational>>> {
        let mut out = BTreeMap::new();
        let x = int(k);
        for &j in self.terms.keys() {
            let w = self.coefficient_at(j, &x).mul_vec(v)?;
            if w.iter().any(|c| !c.is_zero()) {
                out.insert(j + k, w);
            }
        }
        Ok(out)
    }

    /// One line per term: `z^j * [matrix] * θ^e`.
    pub fn dump(&self) -> String {
        self.terms()
            .map(|(j, e, m)| format!("z^{j} * {} * θ^{e}", render(m)))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

fn render(m: &RatMatrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| m.row(i).iter().map(format_rational).collect::<Vec<_>>().join(" "))
        .collect();
    format!("[{}]", rows.join("; "))
}

fn pow(x: &Rational, e: usize) -> Rational {
    (0..e).fold(Rational::one(), |acc, _| acc * x)
}

impl fmt::Display for ThetaZOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "0")
        } else {
            write!(f, "{}", self.dump())
        }
    }
}

/// `L_m = z^{-1/2}(z d/dz z - μz + ρ)^{m+1} z^{-1/2}` for column-acting `μ`, `ρ`.
///
/// Conjugating by `z^{1/2}` turns this into `z^{-1}·(z(θ + 1/2 - μ) + ρ)^{m+1}`.
pub fn build_lm(mu: &RatMatrix, rho: &RatMatrix, m: i64) -> Result<ThetaZOperator> {
    if m < -1 {
        return Err(Error::Range {
            index: m,
            max: i64::MAX,
        });
    }
    if mu.rows() != rho.rows() || !mu.is_square() || !rho.is_square() {
        return Err(Error::Shape("mu and rho must be square of equal size".into()));
    }
    let size = mu.rows();
    let half = crate::exactmath::rat(1, 2);
    let shift = &RatMatrix::identity(size).scale(&half) - mu;
    let b = ThetaZOperator::monomial(1, RatMatrix::identity(size), 1)
        .add(&ThetaZOperator::monomial(1, shift, 0))?
        .add(&ThetaZOperator::matrix(rho.clone()))?;
    ThetaZOperator::z_power(size, -1).compose(&b.power((m + 1) as u32)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;
    use crate::geometry::WeightedProjectiveModel;

    fn data(d: u32, n: u32) -> (RatMatrix, RatMatrix) {
        let m = WeightedProjectiveModel::new(d, n).unwrap();
        (m.mu_matrix(), m.rho_matrix().transpose())
    }

    /// Vectors supported on exponents in `½ℤ`, keyed by twice the exponent.
    type HalfSeries = BTreeMap<i64, Vec<Rational>>;

    fn add_into(acc: &mut HalfSeries, e2: i64, v: Vec<Rational>) {
        let slot = acc.entry(e2).or_insert_with(|| vec![int(0); v.len()]);
        for (a, b) in slot.iter_mut().zip(v) {
            *a += b;
        }
    }

    fn z_half(s: &HalfSeries, steps: i64) -> HalfSeries {
        s.iter().map(|(&e, v)| (e + steps, v.clone())).collect()
    }

    // the operator z d/dz z - μz + ρ applied literally, with exponents in ½ℤ
    fn inner(s: &HalfSeries, mu: &RatMatrix, rho: &RatMatrix) -> HalfSeries {
        let mut out = HalfSeries::new();
        for (&e2, v) in s {
            // z·d/dz·z on z^{e}: (e+1)·z^{e+1}
            let coef = rat(e2 + 2, 2);
            add_into(&mut out, e2 + 2, v.iter().map(|x| x * &coef).collect());
            let muv = mu.mul_vec(v).unwrap();
            add_into(&mut out, e2 + 2, muv.into_iter().map(|x| -x).collect());
            add_into(&mut out, e2, rho.mul_vec(v).unwrap());
        }
        out.retain(|_, v| v.iter().any(|x| !x.is_zero()));
        out
    }

    fn definition_oracle(mu: &RatMatrix, rho: &RatMatrix, m: i64, k: i64, v: &[Rational]) -> HalfSeries {
        let mut s = z_half(&HalfSeries::from([(2 * k, v.to_vec())]), -1);
        for _ in 0..m + 1 {
            s = inner(&s, mu, rho);
        }
        z_half(&s, -1)
    }

    #[test]
    fn normal_form_sanity() {
        let z = ThetaZOperator::z_power(2, 1);
        let th = ThetaZOperator::theta(2);
        assert_eq!(z.commutator(&th).unwrap(), z.scale(&int(-1)));
        let l = build_lm(&data(1, 2).0, &data(1, 2).1, 2).unwrap();
        assert!(l.commutator(&l).unwrap().is_zero());
    }

    #[test]
    fn lm_matches_definition_on_monomials() {
        for (d, n) in [(1, 2), (2, 3)] {
            let (mu, rho) = data(d, n);
            let size = mu.rows();
            for m in -1..=3 {
                let op = build_lm(&mu, &rho, m).unwrap();
                for k in -4..=4 {
                    for a in 0..size {
                        let mut v = vec![int(0); size];
                        v[a] = int(1);
                        let got: HalfSeries = op
                            .apply_monomial(k, &v)
                            .unwrap()
                            .into_iter()
                            .map(|(e, w)| (2 * e, w))
                            .collect();
                        assert_eq!(got, definition_oracle(&mu, &rho, m, k, &v), "m={m} k={k}");
                    }
                }
            }
        }
    }

    #[test]
    fn low_order_forms() {
        let (mu, rho) = data(1, 2);
        let size = mu.rows();
        assert_eq!(build_lm(&mu, &rho, -1).unwrap(), ThetaZOperator::z_power(size, -1));
        let shift = &RatMatrix::identity(size).scale(&rat(1, 2)) - &mu;
        let expected = ThetaZOperator::theta(size)
            .add(&ThetaZOperator::matrix(shift))
            .unwrap()
            .add(&ThetaZOperator::monomial(-1, rho.clone(), 0))
            .unwrap();
        assert_eq!(build_lm(&mu, &rho, 0).unwrap(), expected);
    }

    #[test]
    fn shift_is_conjugation() {
        let (mu, rho) = data(2, 3);
        let op = build_lm(&mu, &rho, 2).unwrap();
        let c = int(3);
        let conj = ThetaZOperator::z_power(mu.rows(), -3)
            .compose(&op)
            .unwrap()
            .compose(&ThetaZOperator::z_power(mu.rows(), 3))
            .unwrap();
        assert_eq!(op.shift_theta(&c), conj);
    }

    #[test]
    fn dump_format() {
        let op = ThetaZOperator::monomial(-1, RatMatrix::diagonal(&[rat(1, 2), int(3)]), 2);
        assert_eq!(op.dump(), "z^-1 * [1/2 0; 0 3] * θ^2");
    }

    #[test]
    fn rejects_bad_index() {
        let (mu, rho) = data(1, 2);
        assert!(build_lm(&mu, &rho, -2).is_err());
    }
}
