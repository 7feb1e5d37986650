//! Truncated degree-zero genus-zero potentials and the coefficients of
//! `𝓛_k 𝒟 / 𝒟` at order `1/ħ`.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{admissible_profiles, evaluate_with_c, untwisted_invariant, CoefficientVector, InvariantQuery};
use crate::error::{Error, Result};
use crate::exactmath::{factorial, int, rat, Rational};
use crate::geometry::{Case, MonodromyProfile, WeightedProjectiveModel};
use crate::operator_algebra::diffop::DiffOperator;
use crate::operator_algebra::series::{Monomial, SeriesPolynomial, Truncation, Var};
use crate::operator_algebra::virasoro::{explicit_lk, DisplayConstants};

fn multiplicity_factor(m: &Monomial) -> Rational {
    m.factors().iter().map(|&(_, e)| factorial(e as u64)).product()
}

/// `⟨⟨1⟩⟩_0 = Σ ⟨τ_{l_1}…τ_{l_n}⟩_0 t_{l_1}…t_{l_n}/|Aut|` in the class-0 variables.
pub fn point_potential(bound: Truncation) -> SeriesPolynomial {
    let mut out = SeriesPolynomial::zero(bound);
    for n in 3..=bound.max_degree as usize {
        for l in super::compositions(n, n as u32 - 3) {
            if l.windows(2).any(|w| w[0] > w[1]) || l.iter().any(|&x| x > bound.max_mode) {
                continue;
            }
            let mono = Monomial::from_vars(&l.iter().map(|&m| Var::new(0, m)).collect::<Vec<_>>());
            let value = untwisted_invariant(&l).expect("n >= 3");
            out.add_term(mono.clone(), 0, value / multiplicity_factor(&mono));
        }
    }
    out
}

/// `Σ_m s_m ⟨⟨τ_m⟩⟩_0`, the untwisted part for `ℙ(1,N)`. Correlators with
/// only `1` insertions vanish in degree zero.
pub fn curve_untwisted_potential(bound: Truncation) -> SeriesPolynomial {
    let wide = Truncation::new(bound.max_mode, bound.max_degree + 1);
    let fpt = point_potential(wide);
    let mut out = SeriesPolynomial::zero(bound);
    for m in 0..=bound.max_mode {
        let mut s = SeriesPolynomial::zero(bound);
        s.add_term(Monomial::var(Var::new(1, m)), 0, int(1));
        out = out.add(&s.mul(&fpt.derivative(Var::new(0, m)).with_bound(bound)));
    }
    out
}

/// Random `c` constant on each sector block, as the potential must be
/// symmetric in the points of a block.
pub fn block_constant_c(profile: &MonodromyProfile, rng: &mut impl Rng) -> CoefficientVector {
    let mut per_block = Vec::new();
    for _ in profile.counts() {
        let num: i64 = rng.gen_range(-20..=20);
        let den: i64 = rng.gen_range(1..=9);
        per_block.push(rat(num, den));
    }
    CoefficientVector(
        profile
            .sectors()
            .iter()
            .map(|&i| per_block[(i - 1) as usize].clone())
            .collect(),
    )
}

/// `Σ α…t… ⟨τ̃…τ…|λ⟩/|Aut|` over admissible profiles with at least three
/// stacky points; `c` is chosen per profile.
pub fn stacky_potential(
    model: &WeightedProjectiveModel,
    case: Case,
    bound: Truncation,
    c_for: &mut dyn FnMut(&MonodromyProfile) -> CoefficientVector,
) -> Result<SeriesPolynomial> {
    let n = model.order();
    let d = model.dim() as usize;
    let mut out = SeriesPolynomial::zero(bound);
    if n < 2 {
        return Ok(out);
    }
    let max_points = bound.max_degree as usize;
    for profile in admissible_profiles(n, max_points) {
        let c = c_for(&profile);
        let s = profile.total();
        let sectors = profile.sectors();
        let mut seen = BTreeSet::new();
        for plain in 0..=(max_points - s) {
            for exps in exponent_vectors(s + plain, bound.max_mode, (s + plain) as u32) {
                let (st, pl) = exps.split_at(s);
                let vars: Vec<Var> = st
                    .iter()
                    .zip(&sectors)
                    .map(|(&k, &i)| Var::new(d + i as usize, k))
                    .chain(pl.iter().map(|&l| Var::new(0, l)))
                    .collect();
                let mono = Monomial::from_vars(&vars);
                if !seen.insert(mono.clone()) {
                    continue;
                }
                let q = InvariantQuery::new(profile.clone(), st.to_vec(), pl.to_vec(), case)?;
                if !q.satisfies_dimension() {
                    continue;
                }
                let value = match evaluate_with_c(&q, &c) {
                    Ok(v) => v,
                    Err(Error::Degenerate(_)) => continue,
                    Err(e) => return Err(e),
                };
                out.add_term(mono.clone(), 0, value / multiplicity_factor(&mono));
            }
        }
    }
    Ok(out)
}

/// Exponent vectors of length `len` with entries `≤ top` and sum `≤ budget`.
fn exponent_vectors(len: usize, top: u32, budget: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        let mut next = Vec::new();
        for v in &out {
            let used: u32 = v.iter().sum();
            for e in 0..=top.min(budget - used) {
                let mut w = v.clone();
                w.push(e);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

/// The `1/ħ` coefficients of `𝓛_k 𝒟/𝒟` inside `window`.
#[derive(Clone, Debug)]
pub struct ZBlockReport {
    pub window: Truncation,
    /// Coefficients that must vanish: everything for the curve, the
    /// α-monomials without the `ħ∂α∂α` terms for the surface.
    pub asserted: SeriesPolynomial,
    /// The α-monomials produced by the surface `ħ∂α^i∂α^{N-i}` terms.
    pub cross_terms: SeriesPolynomial,
    /// Number of asserted coefficients examined.
    pub checked: usize,
    /// Number of monomials in the assembled potential.
    pub potential_terms: usize,
    /// Monomials discarded while assembling the potential.
    pub dropped: u64,
}

impl ZBlockReport {
    pub fn vanishes(&self) -> bool {
        self.asserted.is_zero()
    }
}

fn in_window(m: &Monomial, w: Truncation) -> bool {
    m.degree() <= w.max_degree && m.max_mode() <= w.max_mode
}

fn has_twisted(m: &Monomial, d: usize) -> bool {
    m.factors().iter().any(|(v, _)| v.class > d)
}

/// Number of monomials of degree `≤ D` and mode `≤ M` over `classes` classes.
fn window_size(classes: usize, w: Truncation) -> usize {
    let vars = classes * (w.max_mode as usize + 1);
    // Σ_{j ≤ D} C(vars + j - 1, j)
    (0..=w.max_degree as usize)
        .map(|j| {
            let mut c: u128 = 1;
            for i in 0..j {
                c = c * (vars + i) as u128 / (i as u128 + 1);
            }
            c as usize
        })
        .sum()
}

/// Builds the potential with random block-constant `c` (seeded), applies
/// the explicit `𝓛_k`, and extracts the `1/ħ` coefficients in `window`.
pub fn z_block_coefficients(
    model: &WeightedProjectiveModel,
    k: i64,
    window: Truncation,
    seed: u64,
) -> Result<ZBlockReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cache: BTreeMap<Vec<u32>, CoefficientVector> = BTreeMap::new();
    let mut c_for = |p: &MonodromyProfile| {
        cache
            .entry(p.counts().to_vec())
            .or_insert_with(|| block_constant_c(p, &mut rng))
            .clone()
    };
    z_block_with(model, k, window, &mut c_for)
}

/// As [`z_block_coefficients`] with caller-supplied `c` per profile.
pub fn z_block_with(
    model: &WeightedProjectiveModel,
    k: i64,
    window: Truncation,
    c_for: &mut dyn FnMut(&MonodromyProfile) -> CoefficientVector,
) -> Result<ZBlockReport> {
    let d = model.dim() as usize;
    let case = match d {
        1 => Case::Curve,
        2 => Case::Surface,
        _ => return Err(Error::Unsupported("the z-block check needs d = 1 or 2".into())),
    };
    let bound = Truncation::new(window.max_mode + k as u32 + 1, window.max_degree + 2);
    let mut f = stacky_potential(model, case, bound, c_for)?;
    if d == 1 {
        f = f.add(&curve_untwisted_potential(bound));
    }
    let op = explicit_lk(model, k, bound.max_mode, &DisplayConstants::default())?;
    let is_cross = |key: &(i32, Monomial, Vec<Var>)| key.0 == 1 && key.2.iter().all(|v| v.class > d);
    let (main, cross): (DiffOperator, DiffOperator) = if d == 2 {
        (op.filter(|key| !is_cross(key)), op.filter(is_cross))
    } else {
        (op, DiffOperator::zero())
    };
    let keep = |m: &Monomial| in_window(m, window) && (d == 1 || has_twisted(m, d));
    let asserted = main.conjugate_exp(&f).hbar_part(-1).filter(keep);
    let cross_terms = cross.conjugate_exp(&f).hbar_part(-1).filter(keep);
    let classes = model.basis_len();
    Ok(ZBlockReport {
        window,
        checked: window_size(classes, window),
        potential_terms: f.len(),
        asserted,
        cross_terms,
        dropped: f.dropped(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_potential_low_terms() {
        let f = point_potential(Truncation::new(3, 5));
        let t0 = Var::new(0, 0);
        let t1 = Var::new(0, 1);
        assert_eq!(f.coefficient(&Monomial::from_vars(&[t0, t0, t0]), 0), rat(1, 6));
        assert_eq!(f.coefficient(&Monomial::from_vars(&[t0, t0, t0, t1]), 0), rat(1, 6));
        assert_eq!(f.coefficient(&Monomial::from_vars(&[t0, t0, t0, t1, t1]), 0), rat(1, 6));
    }

    #[test]
    fn curve_blocks_vanish_for_p12() {
        let model = WeightedProjectiveModel::new(1, 2).unwrap();
        for k in 1..=2 {
            let r = z_block_coefficients(&model, k, Truncation::new(4, 4), 7).unwrap();
            assert!(r.vanishes(), "k={k}: {}", r.asserted);
        }
    }

    #[test]
    fn unsymmetric_c_is_detected() {
        let model = WeightedProjectiveModel::new(1, 3).unwrap();
        let mut c_for = |p: &MonodromyProfile| CoefficientVector((0..p.total()).map(|r| int(r as i64 + 1)).collect());
        let r = z_block_with(&model, 1, Truncation::new(4, 4), &mut c_for).unwrap();
        assert!(!r.vanishes());
    }

    #[test]
    fn manifold_line_reduces_to_point_check() {
        let model = WeightedProjectiveModel::new(1, 1).unwrap();
        let r = z_block_coefficients(&model, 1, Truncation::new(3, 4), 1).unwrap();
        assert!(r.vanishes(), "{}", r.asserted);
    }

    #[test]
    fn surface_alpha_block_vanishes_for_p113() {
        let model = WeightedProjectiveModel::new(2, 3).unwrap();
        let r = z_block_coefficients(&model, 1, Truncation::new(4, 4), 3).unwrap();
        assert!(r.vanishes(), "{}", r.asserted);
    }
}
