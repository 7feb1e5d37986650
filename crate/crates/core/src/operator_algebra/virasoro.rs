//! Explicit Virasoro operators `𝓛_m` on descendant coordinates.

use num_traits::Zero;

use super::diffop::DiffOperator;
use super::quantize::{cocycle_formula, hamiltonian_of, poisson_bracket, quantize_operator, QuadraticHamiltonian};
use super::series::{Monomial, Var};
use super::thetaz::build_lm;
use crate::error::{Error, Result};
use crate::exactmath::linalg::RatMatrix;
use crate::exactmath::{bracket_or_zero, int, rat, Rational};
use crate::geometry::WeightedProjectiveModel;

fn var(class: usize, mode: i64) -> Option<Var> {
    u32::try_from(mode).ok().map(|m| Var::new(class, m))
}

/// `¼ str(¼ - μ²)`; every class of these models is even.
pub fn central_constant(model: &WeightedProjectiveModel) -> Rational {
    let quarter = rat(1, 4);
    let tr: Rational = model.mu_spectrum().into_iter().map(|(_, m)| &quarter - &m * &m).sum();
    tr * &quarter
}

/// The general expansion of `𝓛_m`, keeping every term whose variables
/// all have mode `≤ max_mode`.
pub fn general_expansion(model: &WeightedProjectiveModel, m: i64, max_mode: u32) -> Result<DiffOperator> {
    if m < -1 {
        return Err(Error::Range {
            index: m,
            max: i64::MAX,
        });
    }
    let n = model.basis_len();
    let r = model.dim() as i64;
    let mu: Vec<Rational> = model.mu_spectrum().into_iter().map(|(_, x)| x).collect();
    let rho = model.rho_matrix();
    let eta = model.pairing_matrix();
    let eta_inv = eta.inverse()?;
    let half = rat(1, 2);
    let top = max_mode as i64;
    let mut op = DiffOperator::zero();

    for i in 0..=(m + 1) {
        let ri = rho.pow(i as u32);
        // (ρ^i)^{αβ} = Σ_γ η^{αγ} (R^i)_γ^β
        let raised = &eta_inv * &ri;
        for k in (i - m)..=-1 {
            let sign = if k.rem_euclid(2) == 0 { int(1) } else { int(-1) };
            for a in 0..n {
                // the bracket carries μ of the class dual to α
                let br = bracket_or_zero(&(int(k) + &half - &mu[a]), i, m);
                for b in 0..n {
                    let c = &raised[(a, b)];
                    if c.is_zero() || br.is_zero() {
                        continue;
                    }
                    let (Some(va), Some(vb)) = (var(a, -k - 1), var(b, k + m - i)) else {
                        continue;
                    };
                    if va.mode > max_mode || vb.mode > max_mode {
                        continue;
                    }
                    op.add_term(&half * &sign * &br * c, 1, Monomial::one(), vec![va, vb]);
                }
            }
        }
        let br = bracket_or_zero(&rat(3 - r, 2), i, m);
        for b in 0..n {
            if let Some(vb) = var(b, m - i + 1).filter(|v| v.mode <= max_mode) {
                op.add_term(-(&br * &ri[(0, b)]), 0, Monomial::one(), vec![vb]);
            }
        }
        for k in 0..=top {
            for a in 0..n {
                let br = bracket_or_zero(&(&mu[a] + int(k) + &half), i, m);
                if br.is_zero() {
                    continue;
                }
                for b in 0..n {
                    let c = &ri[(a, b)];
                    if c.is_zero() {
                        continue;
                    }
                    if let Some(vb) = var(b, k + m - i).filter(|v| v.mode <= max_mode) {
                        let ta = Var::new(a, k as u32);
                        op.add_term(&br * c, 0, Monomial::var(ta), vec![vb]);
                    }
                }
            }
        }
    }
    // (R^{m+1})_{αβ} = Σ_γ (R^{m+1})_α^γ η_{γβ}
    let lowered: RatMatrix = &rho.pow((m + 1) as u32) * &eta;
    for a in 0..n {
        for b in 0..n {
            let c = &lowered[(a, b)];
            if !c.is_zero() {
                let mono = Monomial::from_vars(&[Var::new(a, 0), Var::new(b, 0)]);
                op.add_term(c * &half, -1, mono, vec![]);
            }
        }
    }
    if m == 0 {
        op = op.add(&DiffOperator::constant(central_constant(model)));
    }
    Ok(op)
}

/// `𝓛_m` as a quantized `θ`-`z` operator: `-(L_m)^` built with `-μ`, plus
/// the central constant. Agrees with [`general_expansion`] term by term.
pub fn quantized(model: &WeightedProjectiveModel, m: i64, max_mode: u32) -> Result<DiffOperator> {
    let mu = model.mu_matrix().scale(&int(-1));
    let l = build_lm(&mu, &model.rho_matrix().transpose(), m)?;
    let mut op = quantize_operator(&l, &model.pairing_matrix(), max_mode)?
        .restrict_modes(max_mode)
        .scale(&int(-1));
    if m == 0 {
        op = op.add(&DiffOperator::constant(central_constant(model)));
    }
    Ok(op)
}

/// The quadratic Hamiltonian whose quantization is `𝓛_m` up to sign and
/// the central constant: `𝓛_m = -Ĥ_m + δ_{m0}·const`.
pub fn hamiltonian(model: &WeightedProjectiveModel, m: i64, max_mode: u32) -> Result<QuadraticHamiltonian> {
    let mu = model.mu_matrix().scale(&int(-1));
    let l = build_lm(&mu, &model.rho_matrix().transpose(), m)?;
    hamiltonian_of(&l, &model.pairing_matrix(), max_mode)
}

/// Checks `[𝓛_m, 𝓛_n] = (m-n)𝓛_{m+n}` through the Hamiltonians: the Poisson
/// bracket on coordinates of mode `≤ max_mode` and the central term.
pub fn commutation_holds(model: &WeightedProjectiveModel, m: i64, n: i64, max_mode: u32) -> Result<bool> {
    let pad = max_mode + 2 * (m.unsigned_abs() + n.unsigned_abs()) as u32 + 4;
    let hm = hamiltonian(model, m, pad)?;
    let hn = hamiltonian(model, n, pad)?;
    let hmn = hamiltonian(model, m + n, pad)?;
    let lhs = poisson_bracket(&hm, &hn).restrict_modes(max_mode);
    let rhs = hmn.scale(&int(n - m)).restrict_modes(max_mode);
    let central = if m + n == 0 {
        central_constant(model) * int(m - n)
    } else {
        Rational::zero()
    };
    Ok(lhs == rhs && cocycle_formula(&hm, &hn) == central)
}

/// The constants `c` and `|c|²` with `c_1 = c·ω` appearing in the
/// explicit operators for curves and surfaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisplayConstants {
    pub c: Rational,
    pub c_abs_sq: Rational,
}

impl Default for DisplayConstants {
    fn default() -> Self {
        DisplayConstants {
            c: int(2),
            c_abs_sq: int(4),
        }
    }
}

struct Builder {
    op: DiffOperator,
    max_mode: i64,
}

impl Builder {
    fn lin(&mut self, c: Rational, mult: Option<(usize, i64)>, d: (usize, i64)) {
        let Some(dv) = var(d.0, d.1).filter(|v| v.mode as i64 <= self.max_mode) else {
            return;
        };
        let mono = match mult {
            None => Monomial::one(),
            Some((cl, md)) => match var(cl, md).filter(|v| v.mode as i64 <= self.max_mode) {
                Some(v) => Monomial::var(v),
                None => return,
            },
        };
        self.op.add_term(c, 0, mono, vec![dv]);
    }

    fn dd(&mut self, c: Rational, a: (usize, i64), b: (usize, i64)) {
        let ok = |v: &Var| v.mode as i64 <= self.max_mode;
        if let (Some(va), Some(vb)) = (var(a.0, a.1).filter(ok), var(b.0, b.1).filter(ok)) {
            self.op.add_term(c, 1, Monomial::one(), vec![va, vb]);
        }
    }
}

fn br(x: Rational, i: i64, k: i64) -> Rational {
    bracket_or_zero(&x, i, k)
}

fn alt(m: i64) -> Rational {
    if m % 2 == 0 {
        int(1)
    } else {
        int(-1)
    }
}

/// The explicit `𝓛_k`, `k > 0`, for `ℙ(1,N)` (classes `t, s, α^i`) and
/// `ℙ(1,1,N)` (classes `t, s, r, α^i`), transcribed term by term.
pub fn explicit_lk(
    model: &WeightedProjectiveModel,
    k: i64,
    max_mode: u32,
    consts: &DisplayConstants,
) -> Result<DiffOperator> {
    if k < 1 {
        return Err(Error::Range {
            index: k,
            max: i64::MAX,
        });
    }
    let nn = model.order() as i64;
    let top = max_mode as i64;
    let half = rat(1, 2);
    let mut b = Builder {
        op: DiffOperator::zero(),
        max_mode: top,
    };
    let c = &consts.c;
    match model.dim() {
        1 => {
            let (t, s) = (0, 1);
            let alpha = |i: i64| 1 + i as usize;
            b.lin(-br(int(1), 0, k), None, (t, k + 1));
            for m in 0..=top {
                b.lin(br(int(m), 0, k), Some((t, m)), (t, k + m));
                b.lin(br(int(m + 1), 0, k), Some((s, m)), (s, k + m));
                for i in 1..nn {
                    b.lin(br(int(m) + rat(i, nn), 0, k), Some((alpha(i), m)), (alpha(i), k + m));
                }
            }
            b.lin(-(c * br(int(1), 1, k)), None, (s, k));
            for m in 0..=top {
                b.lin(c * br(int(m), 1, k), Some((t, m)), (s, k + m - 1));
            }
            for m in 0..=(k - 2) {
                let coef = c * &half * alt(m + 1) * br(int(-m - 1), 1, k);
                b.dd(coef, (s, m), (s, k - m - 2));
            }
        }
        2 => {
            let (t, s, r) = (0, 1, 2);
            let alpha = |i: i64| 2 + i as usize;
            let c2 = &consts.c_abs_sq;
            b.lin(-br(half.clone(), 0, k), None, (t, k + 1));
            for m in 0..=top {
                let x = int(m);
                b.lin(br(&x - &half, 0, k), Some((t, m)), (t, k + m));
                b.lin(br(&x + &half, 0, k), Some((s, m)), (s, k + m));
                b.lin(br(&x + rat(3, 2), 0, k), Some((r, m)), (r, k + m));
                for i in 1..nn {
                    let e = &x + rat(2 * i, nn) - &half;
                    b.lin(br(e, 0, k), Some((alpha(i), m)), (alpha(i), k + m));
                }
            }
            for m in 0..=(k - 1) {
                let sg = alt(m + 1);
                let x = int(-m);
                b.dd(&sg * br(&x - rat(3, 2), 1, k), (r, m), (t, k - m - 1));
                b.dd(&sg * &half * br(&x - &half, 1, k), (s, m), (s, k - m - 1));
                for i in 1..nn {
                    let e = &x - rat(2 * i, nn) + &half;
                    b.dd(&sg * br(e, 1, k), (alpha(i), m), (alpha(nn - i), k - m - 1));
                }
            }
            b.lin(-(c * br(half.clone(), 1, k)), None, (s, k));
            for m in 0..=top {
                let x = int(m);
                b.lin(c * br(&x - &half, 1, k), Some((t, m)), (s, k + m - 1));
                b.lin(c * br(&x + &half, 1, k), Some((s, m)), (r, k + m - 1));
            }
            for m in 0..=(k - 2) {
                b.dd(c * alt(m + 1) * br(int(-m) - rat(3, 2), 1, k), (r, m), (s, k - m - 2));
            }
            b.lin(-(c2 * br(half.clone(), 2, k)), None, (r, k - 1));
            for m in 0..=top {
                b.lin(c2 * br(int(m) - &half, 2, k), Some((t, m)), (r, k + m - 2));
            }
            for m in 0..=(k - 3) {
                let coef = c2 * &half * alt(m + 1) * br(int(-m) - rat(3, 2), 2, k);
                b.dd(coef, (r, m), (r, k - m - 3));
            }
            if k == 1 {
                let t0 = Var::new(t, 0);
                b.op.add_term(half.clone(), -1, Monomial::from_vars(&[t0, t0]), vec![]);
            }
        }
        d => return Err(Error::Unsupported(format!("no explicit operator for dimension {d}"))),
    }
    Ok(b.op)
}

/// `𝓛_0'` from the virtual dimension, divisor and dilaton equations, with
/// the genus-one correction supplied as `constant`.
pub fn l0_prime(model: &WeightedProjectiveModel, max_mode: u32, constant: &Rational) -> Result<DiffOperator> {
    let n = model.basis_len();
    let r = model.dim() as i64;
    let mu: Vec<Rational> = model.mu_spectrum().into_iter().map(|(_, x)| x).collect();
    let rho = model.rho_matrix();
    let eta = model.pairing_matrix();
    let half = rat(1, 2);
    let mut op = DiffOperator::zero();
    if max_mode >= 1 {
        op.add_term(-(rat(3 - r, 2)), 0, Monomial::one(), vec![Var::new(0, 1)]);
    }
    for m in 0..=max_mode {
        for (a, mu_a) in mu.iter().enumerate() {
            let v = Var::new(a, m);
            op.add_term(mu_a + int(m as i64) + &half, 0, Monomial::var(v), vec![v]);
        }
    }
    for b in 0..n {
        op.add_term(-rho[(0, b)].clone(), 0, Monomial::one(), vec![Var::new(b, 0)]);
    }
    for m in 1..=max_mode {
        for a in 0..n {
            for b in 0..n {
                let c = &rho[(a, b)];
                if !c.is_zero() {
                    op.add_term(c.clone(), 0, Monomial::var(Var::new(a, m)), vec![Var::new(b, m - 1)]);
                }
            }
        }
    }
    let lowered = &rho * &eta;
    for a in 0..n {
        for b in 0..n {
            let c = &lowered[(a, b)];
            if !c.is_zero() {
                let mono = Monomial::from_vars(&[Var::new(a, 0), Var::new(b, 0)]);
                op.add_term(c * &half, -1, mono, vec![]);
            }
        }
    }
    Ok(op.add(&DiffOperator::constant(constant.clone())))
}

/// Descendant coordinate names used in the explicit operators.
pub fn coordinate_name(model: &WeightedProjectiveModel, v: Var) -> String {
    let d = model.dim() as usize;
    let base = match (d, v.class) {
        (_, 0) => "t".to_string(),
        (_, 1) if d >= 1 => "s".to_string(),
        (2, 2) => "r".to_string(),
        (3, 2) => "u".to_string(),
        (3, 3) => "r".to_string(),
        (_, c) => format!("a{}_", c - d),
    };
    format!("{base}{}", v.mode)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hbar_part(op: &DiffOperator, h: i32) -> DiffOperator {
        op.filter(|(e, _, _)| *e == h)
    }

    #[test]
    fn quantization_matches_general_expansion() {
        for (d, n) in [(1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 2)] {
            let model = WeightedProjectiveModel::new(d, n).unwrap();
            for m in -1..=4 {
                let g = general_expansion(&model, m, 4).unwrap();
                assert_eq!(quantized(&model, m, 4).unwrap(), g, "d={d} N={n} m={m}");
            }
        }
    }

    #[test]
    fn quantized_commutation_relations() {
        for (d, n) in [(1, 2), (2, 3), (3, 1)] {
            let model = WeightedProjectiveModel::new(d, n).unwrap();
            for m in -1..=2 {
                for k in (-1 - m).max(-1)..=2 {
                    assert!(commutation_holds(&model, m, k, 3).unwrap(), "d={d} N={n} ({m},{k})");
                }
            }
        }
    }

    #[test]
    fn string_operator() {
        // 𝓛_{-1} = -∂/∂t_0 + Σ t_{k+1}^α ∂/∂t_k^α + (1/2ħ) η_{αβ} t_0^α t_0^β
        let model = WeightedProjectiveModel::new(1, 3).unwrap();
        let g = general_expansion(&model, -1, 3).unwrap();
        assert_eq!(g.coefficient(0, &Monomial::one(), &[Var::new(0, 0)]), int(-1));
        assert_eq!(
            g.coefficient(0, &Monomial::var(Var::new(2, 3)), &[Var::new(2, 2)]),
            int(1)
        );
        let t0 = Var::new(0, 0);
        let s0 = Var::new(1, 0);
        assert_eq!(g.coefficient(-1, &Monomial::from_vars(&[t0, s0]), &[]), rat(1, 3));
        assert!(hbar_part(&g, 1).is_zero());
    }

    #[test]
    fn l0_nonconstant_parts_agree() {
        for (d, n) in [(1, 1), (1, 2), (2, 3), (3, 2)] {
            let model = WeightedProjectiveModel::new(d, n).unwrap();
            let g = general_expansion(&model, 0, 4).unwrap().non_constant();
            let p = l0_prime(&model, 4, &int(0)).unwrap().non_constant();
            assert_eq!(g, p, "d={d} N={n}");
        }
    }

    #[test]
    fn central_constant_of_p12() {
        // μ = -1/2, 1/2, 0
        let model = WeightedProjectiveModel::new(1, 2).unwrap();
        assert_eq!(central_constant(&model), rat(1, 16));
    }

    #[test]
    fn displays_share_the_hbar_free_part() {
        for (d, n) in [(1, 1), (1, 2), (1, 4), (2, 1), (2, 3)] {
            let model = WeightedProjectiveModel::new(d, n).unwrap();
            for k in 1..=4 {
                let e = explicit_lk(&model, k, 5, &DisplayConstants::default()).unwrap();
                let g = general_expansion(&model, k, 5).unwrap();
                assert_eq!(hbar_part(&e, 0), hbar_part(&g, 0), "d={d} N={n} k={k}");
            }
        }
    }

    #[test]
    fn curve_display_omits_the_untwisted_hbar_cross_terms() {
        // with (1, ξ) = 1 the ħ∂s∂s block agrees; the display has no ħ∂t∂s
        // or ħ∂α∂α terms, which the general expansion contains
        use crate::geometry::PairingConfig;
        let model = WeightedProjectiveModel::new(1, 3).unwrap().with_pairing(PairingConfig {
            untwisted: int(1),
            twisted: rat(1, 3),
        });
        let e = explicit_lk(&model, 3, 4, &DisplayConstants::default()).unwrap();
        let g = general_expansion(&model, 3, 4).unwrap();
        let s = |m| Var::new(1, m);
        for (a, b) in [(0, 1), (1, 0)] {
            assert_eq!(
                e.coefficient(1, &Monomial::one(), &[s(a), s(b)]),
                g.coefficient(1, &Monomial::one(), &[s(a), s(b)])
            );
        }
        let cross = g.filter(|(h, _, d)| *h == 1 && d.iter().any(|v| v.class != 1));
        assert!(!cross.is_zero());
        assert!(e
            .filter(|(h, _, d)| *h == 1 && d.iter().any(|v| v.class != 1))
            .is_zero());
    }

    #[test]
    fn threefolds_have_no_display() {
        let model = WeightedProjectiveModel::new(3, 2).unwrap();
        assert!(matches!(
            explicit_lk(&model, 1, 3, &DisplayConstants::default()),
            Err(Error::Unsupported(_))
        ));
    }
}
