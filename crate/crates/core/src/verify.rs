//! Exact verification sweeps shared by the CLI and the acceptance tests.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{int, rat, Rational};
use crate::geometry::{Case, MonodromyProfile, WeightedProjectiveModel};
use crate::invariants::potential::z_block_coefficients;
use crate::invariants::{
    admissible_profiles, build_matrix_a, determinant_formula, distinguished_query, evaluate_invariant, invariant_form,
    matrix_parameter, recursion_queries, scale_rows, theta_vector, CoefficientVector, HodgeInput, InvariantQuery,
    ResidualKernel,
};
use crate::operator_algebra::quantize::{cocycle, cocycle_formula, poisson_bracket, Darboux, QuadraticHamiltonian};
use crate::operator_algebra::series::{Truncation, Var};
use crate::operator_algebra::thetaz::build_lm;
use crate::operator_algebra::virasoro::{commutation_holds, general_expansion, hamiltonian, l0_prime};
use crate::stringy::{
    closed_form, coprime_pairs, libgober_wood_check, stringy_rhs, supertrace_mu_squared, HodgeDiamond,
};

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub passed: bool,
    pub checked: usize,
    pub failed: usize,
    /// The first few failures.
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        SuiteReport {
            name: name.into(),
            passed: true,
            checked: 0,
            failed: 0,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.passed = false;
            self.failed += 1;
            if self.failures.len() < 20 {
                self.failures.push(what());
            }
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {} ({} checks)", self.name, self.checked)?;
        for n in &self.notes {
            write!(f, "\n  {n}")?;
        }
        for e in &self.failures {
            write!(f, "\n  failed: {e}")?;
        }
        Ok(())
    }
}

fn random_profile(rng: &mut ChaCha8Rng, max_n: u32, max_total: u32) -> MonodromyProfile {
    loop {
        let n = rng.gen_range(2..=max_n);
        let total = rng.gen_range(3..=max_total);
        let mut counts = vec![0u32; (n - 1) as usize];
        for _ in 0..total {
            let slot = rng.gen_range(0..counts.len());
            counts[slot] += 1;
        }
        if let Ok(p) = MonodromyProfile::new(n, counts) {
            if p.is_admissible() {
                return p;
            }
        }
    }
}

/// `r_1 + r_{N-1} - 1 = Σn - 3`, and `Σ_j r_j = g`, on random profiles.
pub fn rank_identity(samples: usize, max_n: u32, max_total: u32, seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("rank identity");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let p = random_profile(&mut rng, max_n, max_total);
        let ranks = p.eigenbundle_ranks().expect("admissible");
        let g = p.cover_genus().expect("admissible") as i64;
        let lhs = ranks[0] + ranks[ranks.len() - 1] - 1;
        let rhs = p.total() as i64 - 3;
        rep.check(lhs == rhs, || format!("{p}: r1+r(N-1)-1 = {lhs}, sum(n)-3 = {rhs}"));
        let sum: i64 = ranks.iter().sum();
        rep.check(sum == g, || format!("{p}: sum of ranks {sum} but g = {g}"));
    }
    rep
}

/// `n_1 + n_2 = g + 2` for every admissible `N = 3` profile.
pub fn cover_genus_n3(max_total: u32) -> SuiteReport {
    let mut rep = SuiteReport::new("cover genus N=3");
    for p in admissible_profiles(3, max_total as usize) {
        let g = p.cover_genus().expect("admissible") as usize;
        rep.check(p.total() == g + 2, || format!("{p}: g = {g}"));
    }
    rep
}

/// Which form of the commutation relation is tested.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// `[L_m, L_n] = (m-n)L_{m+n}` for the operators `L_m^{μ,ρ}`.
    Literal,
    /// `[L_m, L_n] = (n-m)L_{m+n}` for the same operators.
    Reversed,
    /// `[𝓛_m, 𝓛_n] = (m-n)𝓛_{m+n}` plus the central term.
    Quantized,
}

pub fn commutators(models: &[WeightedProjectiveModel], relation: Relation, max_mode: u32) -> Result<SuiteReport> {
    let name = match relation {
        Relation::Literal => "commutators [L_m,L_n] = (m-n)L_{m+n}",
        Relation::Reversed => "commutators [L_m,L_n] = (n-m)L_{m+n}",
        Relation::Quantized => "commutators of the quantized operators",
    };
    let mut rep = SuiteReport::new(name);
    for model in models {
        let mu = model.mu_matrix();
        let rho = model.rho_matrix().transpose();
        let mut ops = BTreeMap::new();
        if relation != Relation::Quantized {
            for m in -1..=6 {
                ops.insert(m, build_lm(&mu, &rho, m)?);
            }
        }
        for m in -1..=3i64 {
            for n in -1..=3i64 {
                let ok = match relation {
                    Relation::Quantized if m + n < -1 => {
                        let h = hamiltonian(model, m, max_mode + 4)?;
                        poisson_bracket(&h, &h).is_zero() && cocycle_formula(&h, &h).is_zero()
                    }
                    Relation::Quantized => commutation_holds(model, m, n, max_mode)?,
                    _ => {
                        let lhs = ops[&m].commutator(&ops[&n])?;
                        let factor = if relation == Relation::Literal { m - n } else { n - m };
                        let rhs = if m + n >= -1 {
                            ops[&(m + n)].scale(&int(factor))
                        } else {
                            lhs.scale(&Rational::zero())
                        };
                        lhs.sub(&rhs)?.is_zero()
                    }
                };
                rep.check(ok, || format!("{} (m,n) = ({m},{n})", model.label()));
            }
        }
    }
    Ok(rep)
}

/// Every quadratic Darboux monomial on `classes` classes with modes `≤ max_mode`.
pub fn darboux_monomials(classes: usize, max_mode: u32) -> Vec<QuadraticHamiltonian> {
    let mut vars = Vec::new();
    for a in 0..classes {
        for m in 0..=max_mode {
            let v = Var::new(a, m);
            vars.push(Darboux::Q(v));
            vars.push(Darboux::P(v));
        }
    }
    vars.sort();
    let mut out = Vec::new();
    for i in 0..vars.len() {
        for j in i..vars.len() {
            out.push(QuadraticHamiltonian::monomial(vars[i], vars[j]));
        }
    }
    out
}

fn expected_cocycle(a: &QuadraticHamiltonian, b: &QuadraticHamiltonian) -> Rational {
    let single = |h: &QuadraticHamiltonian| {
        let (&(x, y), _) = h.terms().next().expect("monomial");
        (x, y)
    };
    let (ax, ay) = single(a);
    let (bx, by) = single(b);
    let same = ax.var() == bx.var() && ay.var() == by.var();
    let value = if ax.var() == ay.var() { int(2) } else { int(1) };
    match (ax, ay, bx, by) {
        (Darboux::P(_), Darboux::P(_), Darboux::Q(_), Darboux::Q(_)) if same => value,
        (Darboux::Q(_), Darboux::Q(_), Darboux::P(_), Darboux::P(_)) if same => -value,
        _ => Rational::zero(),
    }
}

/// The cocycle on all ordered pairs of monomials, computed from the
/// quantized operators, against the table. Probes on several polynomials
/// confirm scalarity for pairs with modes `≤ probe_mode`.
pub fn cocycle_table(classes: usize, max_mode: u32, probe_mode: u32) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("cocycle table");
    let monos = darboux_monomials(classes, max_mode);
    let mut nonzero = 0;
    for a in &monos {
        for b in &monos {
            let expected = expected_cocycle(a, b);
            let formula = cocycle_formula(a, b);
            let got = crate::operator_algebra::quantize::cocycle_on_unit(a, b);
            if !expected.is_zero() {
                nonzero += 1;
            }
            rep.check(got == expected && formula == expected, || {
                format!("C({a:?}, {b:?}) = {got}, table {expected}")
            });
        }
    }
    let small = darboux_monomials(classes, probe_mode);
    for a in &small {
        for b in &small {
            let got = cocycle(a, b)?;
            rep.check(got == expected_cocycle(a, b), || {
                format!("probe C({a:?}, {b:?}) = {got}")
            });
        }
    }
    rep.note(format!(
        "{} ordered pairs, {nonzero} nonzero entries; scalarity probed on {} pairs",
        monos.len() * monos.len(),
        small.len() * small.len()
    ));
    Ok(rep)
}

fn random_c(rng: &mut ChaCha8Rng, len: usize) -> CoefficientVector {
    CoefficientVector(
        (0..len)
            .map(|_| rat(rng.gen_range(-30..=30), rng.gen_range(1..=12)))
            .collect(),
    )
}

/// The recursion residual vanishes for every query of the sweep.
pub fn recursion_sweep(
    case: Case,
    orders: &[u32],
    max_points: usize,
    max_plain: usize,
    max_k: u32,
    trials: usize,
    seed: u64,
) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(&format!("recursion vs closed form ({})", case.as_str()));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut degenerate = 0;
    for &n in orders {
        let max_exp = (max_points + max_plain) as u32;
        let kernels = (1..=max_k)
            .map(|k| ResidualKernel::new(n, case, k, max_exp))
            .collect::<Result<Vec<_>>>()?;
        for prof in admissible_profiles(n, max_points) {
            let cs: Vec<CoefficientVector> = (0..trials).map(|_| random_c(&mut rng, prof.total())).collect();
            for plain in 0..=max_plain {
                for k in 1..=max_k {
                    let kernel = &kernels[(k - 1) as usize];
                    for q in recursion_queries(&prof, case, plain, k) {
                        let form = match kernel.form(&q) {
                            Ok(f) => f,
                            Err(Error::Degenerate(_)) => {
                                degenerate += 1;
                                continue;
                            }
                            Err(e) => return Err(e),
                        };
                        // a zero form vanishes on every c
                        let zero = form.is_zero();
                        for c in &cs {
                            let r = if zero { Rational::zero() } else { form.evaluate(c)? };
                            rep.check(r.is_zero(), || format!("{q:?} k={k}: residual {r}"));
                        }
                    }
                }
            }
        }
    }
    rep.note(format!("{degenerate} queries skipped as degenerate"));
    Ok(rep)
}

/// `det A` by elimination against the product formula.
pub fn determinant_law(max_points: usize, orders: &[u32]) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("determinant law");
    for &n in orders {
        for prof in admissible_profiles(n, max_points) {
            for case in [Case::Curve, Case::Surface] {
                let a = matrix_parameter(&prof, case);
                let det = build_matrix_a(&prof, case, &a).det()?;
                let formula = determinant_formula(&prof, case, &a);
                rep.check(det == formula, || {
                    format!("{prof} {}: {det} vs {formula}", case.as_str())
                });
            }
        }
    }
    Ok(rep)
}

pub fn z_blocks(models: &[WeightedProjectiveModel], ks: &[i64], window: Truncation, seed: u64) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("z/x/y-block vanishing");
    for model in models {
        for &k in ks {
            let r = z_block_coefficients(model, k, window, seed)?;
            rep.check(r.vanishes(), || format!("{} k={k}: {}", model.label(), r.asserted));
            rep.note(format!(
                "{} k={k}: potential with {} terms, {} window monomials, {} nonzero, cross terms {} ({} monomials), {} dropped",
                model.label(),
                r.potential_terms,
                r.checked,
                r.asserted.len(),
                if r.cross_terms.is_zero() { "zero" } else { "nonzero" },
                r.cross_terms.len(),
                r.dropped
            ));
        }
    }
    Ok(rep)
}

/// The `ℤ_3` base query with `Γ = 1/3`.
pub fn bz3_point() -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("BZ3 point value");
    let prof = MonodromyProfile::new(3, vec![3, 0])?;
    let ranks = prof.eigenbundle_ranks()?;
    rep.check(ranks[0] == 0, || format!("r1 = {}", ranks[0]));
    let q = InvariantQuery::new(prof.clone(), vec![0, 0, 0], vec![], Case::Curve)?;
    let input = HodgeInput::new(&prof, vec![rat(1, 3); 3])?;
    let v = evaluate_invariant(&q, &input)?;
    rep.check(v == rat(1, 3), || format!("got {v}"));
    Ok(rep)
}

pub fn stringy(max: u32) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("stringy identity for P(a,b)");
    let pairs = coprime_pairs(max);
    for m in &pairs {
        let lhs = supertrace_mu_squared(m);
        let rhs = stringy_rhs(m);
        rep.check(lhs == rhs && rhs == closed_form(m), || {
            format!("{}: {lhs} vs {rhs}", m.label())
        });
    }
    let p23 = crate::geometry::PabModel::new(2, 3)?;
    rep.check(supertrace_mu_squared(&p23) == rat(5, 9), || "P(2,3) is not 5/9".into());
    rep.note(format!("{} coprime pairs", pairs.len()));
    Ok(rep)
}

pub fn libgober_wood() -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("Libgober-Wood for projective spaces");
    for (n, chi, c1c) in [(1, 2, 2), (2, 3, 9)] {
        let ok = libgober_wood_check(&HodgeDiamond::projective_space(n), (chi, c1c))?;
        rep.check(ok, || format!("P^{n}"));
    }
    Ok(rep)
}

pub fn l0_consistency(model: &WeightedProjectiveModel, max_mode: u32) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("L0 consistency");
    let g = general_expansion(model, 0, max_mode)?.non_constant();
    let p = l0_prime(model, max_mode, &Rational::zero())?.non_constant();
    rep.check(g == p, || format!("{}: {}", model.label(), g.sub(&p)));
    rep.note(format!("{} terms compared", g.len()));
    Ok(rep)
}

/// `Θ` for `N = 2`, `(6)`, `k = (1,0,0,0,0,0)`, against the first row of the
/// scaled matrix and the stated values.
pub fn theta_spot() -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("theta spot values");
    let prof = MonodromyProfile::new(2, vec![6])?;
    let q = InvariantQuery::new(prof.clone(), vec![1, 0, 0, 0, 0, 0], vec![], Case::Curve)?;
    let th = theta_vector(&q)?;
    let expected: Vec<Rational> = std::iter::once(int(384))
        .chain(std::iter::repeat_n(int(128), 5))
        .collect();
    rep.check(th == expected, || format!("theta = {th:?}"));
    let a = matrix_parameter(&prof, Case::Curve);
    let scaled = scale_rows(&prof, Case::Curve, &build_matrix_a(&prof, Case::Curve, &a), &a)?;
    rep.check(scaled.row(0) == th.as_slice(), || "first scaled row differs".into());
    let dq = distinguished_query(&prof, Case::Curve, 1)?;
    rep.check(dq == q, || format!("distinguished query is {dq:?}"));
    let form = invariant_form(&q)?.to_string();
    let want = "384*c1 + 128*c2 + 128*c3 + 128*c4 + 128*c5 + 128*c6";
    rep.check(form == want, || format!("form {form}"));
    Ok(rep)
}

/// The named suites accepted by `verify`.
pub const SUITES: &[&str] = &[
    "ranks",
    "genus",
    "commutators",
    "cocycle",
    "recursion",
    "determinant",
    "z-blocks",
    "bz3",
    "stringy",
    "libgober-wood",
    "l0",
    "theta",
];
