//! Supertraces and characteristic numbers for weighted projective lines,
//! and the manifold identity of Libgober and Wood.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactmath::{int, rat, Rational};
use crate::geometry::{euler_characteristic_inertia, PabModel, SectorHodgeData, WeightedProjectiveModel};

fn sign(p: u32) -> i64 {
    if p.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `Σ_p (-1)^p (p + age - dim/2)² χ(𝒳_i, Ω^p)` summed over sectors of
/// ambient dimension `dim`.
pub fn sector_supertrace(sectors: &[SectorHodgeData], dim: u32) -> Rational {
    let half_dim = rat(dim as i64, 2);
    let mut total = Rational::zero();
    for s in sectors {
        for &(p, chi) in &s.chi {
            let shift = int(p as i64) + &s.age - &half_dim;
            total += &shift * &shift * int(sign(p) * chi);
        }
    }
    total
}

/// `str(μ²)` for `ℙ(a,b)` from its inertia sectors.
pub fn supertrace_mu_squared(model: &PabModel) -> Rational {
    sector_supertrace(&model.sectors(), 1)
}

/// `χ_top(IX)/12 + (1/6)∫c₁`, the Euler/Chern side for `ℙ(a,b)`.
pub fn stringy_rhs(model: &PabModel) -> Rational {
    int(euler_characteristic_inertia(model)) / int(12) + model.c1_degree() / int(6)
}

/// `(a+b)/12 + (1/a + 1/b)/6`.
pub fn closed_form(model: &PabModel) -> Rational {
    rat((model.a() + model.b()) as i64, 12) + model.c1_degree() / int(6)
}

/// `str(μ²)` from the μ-eigenvalues of a basis in which every class is even.
pub fn supertrace_from_spectrum(model: &WeightedProjectiveModel) -> Rational {
    model.mu_spectrum().iter().map(|(_, mu)| mu * mu).sum()
}

/// `str(1/4 - μ²)/4 = χ_top/16 - str(μ²)/4`.
pub fn central_side(model: &PabModel) -> Rational {
    int(euler_characteristic_inertia(model)) / int(16) - supertrace_mu_squared(model) / int(4)
}

/// Predicted `⟨ψ⟩_{1,1,0}` and `⟨c₁⟩_{1,1,0}` for `ℙ(a,b)`.
pub fn genus_one_predictions(model: &PabModel) -> (Rational, Rational) {
    (
        int(euler_characteristic_inertia(model)) / int(24),
        model.c1_degree() / int(24),
    )
}

/// `(3-r)/2·⟨ψ⟩ - ⟨c₁⟩` with `r = 1`, to be compared with [`central_side`].
pub fn genus_one_side(model: &PabModel) -> Rational {
    let (psi, c1) = genus_one_predictions(model);
    psi - c1
}

/// A Hodge diamond `h[p][q]` of a compact Kähler manifold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeDiamond {
    h: Vec<Vec<i64>>,
}

impl HodgeDiamond {
    /// Checks squareness, complex conjugation and Serre symmetry.
    pub fn new(h: Vec<Vec<i64>>) -> Result<Self> {
        let n = h.len();
        if n == 0 || h.iter().any(|row| row.len() != n) {
            return Err(Error::Shape("a Hodge diamond is a nonempty square array".into()));
        }
        for p in 0..n {
            for q in 0..n {
                if h[p][q] != h[q][p] || h[p][q] != h[n - 1 - p][n - 1 - q] {
                    return Err(Error::Shape(format!("h^{{{p},{q}}} breaks Hodge or Serre symmetry")));
                }
                if h[p][q] < 0 {
                    return Err(Error::Shape(format!("h^{{{p},{q}}} is negative")));
                }
            }
        }
        Ok(HodgeDiamond { h })
    }

    pub fn projective_space(n: usize) -> Self {
        let h = (0..=n).map(|p| (0..=n).map(|q| i64::from(p == q)).collect()).collect();
        HodgeDiamond { h }
    }

    pub fn dim(&self) -> u32 {
        self.h.len() as u32 - 1
    }

    /// `χ(X, Ω^p) = Σ_q (-1)^q h^{p,q}`.
    pub fn chi(&self, p: usize) -> i64 {
        self.h[p].iter().enumerate().map(|(q, &x)| sign(q as u32) * x).sum()
    }

    pub fn euler(&self) -> i64 {
        (0..self.h.len()).map(|p| sign(p as u32) * self.chi(p)).sum()
    }

    pub fn sector(&self) -> SectorHodgeData {
        SectorHodgeData {
            age: Rational::zero(),
            dim: self.dim(),
            chi: (0..self.h.len()).map(|p| (p as u32, self.chi(p))).collect(),
        }
    }
}

/// Both sides of `Σ_p (-1)^p (p - n/2)² χ(Ω^p) = (n·χ_top + 2∫c₁c_{n-1})/12`.
/// `c_numbers` is `(χ_top, ∫c₁c_{n-1})`.
pub fn libgober_wood_sides(hodge: &HodgeDiamond, c_numbers: (i64, i64)) -> Result<(Rational, Rational)> {
    let (euler, c1c) = c_numbers;
    if euler != hodge.euler() {
        return Err(Error::Shape(format!(
            "χ_top = {euler} does not match the diamond ({})",
            hodge.euler()
        )));
    }
    let n = hodge.dim() as i64;
    let lhs = sector_supertrace(&[hodge.sector()], hodge.dim());
    let rhs = int(n * euler + 2 * c1c) / int(12);
    Ok((lhs, rhs))
}

pub fn libgober_wood_check(hodge: &HodgeDiamond, c_numbers: (i64, i64)) -> Result<bool> {
    let (lhs, rhs) = libgober_wood_sides(hodge, c_numbers)?;
    Ok(lhs == rhs)
}

/// Coprime pairs `1 ≤ a < b ≤ max`, plus `(1,1)`.
pub fn coprime_pairs(max: u32) -> Vec<PabModel> {
    let mut out = vec![PabModel::new(1, 1).expect("coprime")];
    for b in 2..=max {
        for a in 1..b {
            if let Ok(m) = PabModel::new(a, b) {
                out.push(m);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pab(a: u32, b: u32) -> PabModel {
        PabModel::new(a, b).unwrap()
    }

    #[test]
    fn p23() {
        assert_eq!(supertrace_mu_squared(&pab(2, 3)), rat(5, 9));
        assert_eq!(stringy_rhs(&pab(2, 3)), rat(5, 9));
        assert_eq!(genus_one_predictions(&pab(2, 3)), (rat(5, 24), rat(5, 144)));
    }

    #[test]
    fn p11() {
        assert_eq!(supertrace_mu_squared(&pab(1, 1)), rat(1, 2));
        assert_eq!(genus_one_predictions(&pab(1, 1)), (rat(2, 24), rat(2, 24)));
    }

    #[test]
    fn both_sides_for_all_small_pairs() {
        for m in coprime_pairs(20) {
            let lhs = supertrace_mu_squared(&m);
            assert_eq!(lhs, stringy_rhs(&m), "{}", m.label());
            assert_eq!(lhs, closed_form(&m), "{}", m.label());
            assert_eq!(central_side(&m), genus_one_side(&m), "{}", m.label());
        }
    }

    #[test]
    fn spectrum_agrees_with_sectors() {
        for n in 1..=8 {
            let w = WeightedProjectiveModel::new(1, n).unwrap();
            assert_eq!(supertrace_from_spectrum(&w), supertrace_mu_squared(&pab(1, n)));
        }
    }

    #[test]
    fn projective_spaces() {
        assert!(libgober_wood_check(&HodgeDiamond::projective_space(1), (2, 2)).unwrap());
        assert!(libgober_wood_check(&HodgeDiamond::projective_space(2), (3, 9)).unwrap());
        assert!(libgober_wood_check(&HodgeDiamond::projective_space(3), (4, 24)).unwrap());
    }

    #[test]
    fn calabi_yau_diamonds() {
        let k3 = HodgeDiamond::new(vec![vec![1, 0, 1], vec![0, 20, 0], vec![1, 0, 1]]).unwrap();
        assert!(libgober_wood_check(&k3, (24, 0)).unwrap());
        let elliptic = HodgeDiamond::new(vec![vec![1, 1], vec![1, 1]]).unwrap();
        assert!(libgober_wood_check(&elliptic, (0, 0)).unwrap());
    }

    #[test]
    fn bad_diamonds() {
        assert!(matches!(
            HodgeDiamond::new(vec![vec![1, 0], vec![0, 2]]),
            Err(Error::Shape(_))
        ));
        assert!(matches!(HodgeDiamond::new(vec![vec![1, 0]]), Err(Error::Shape(_))));
        let p1 = HodgeDiamond::projective_space(1);
        assert!(matches!(libgober_wood_check(&p1, (3, 2)), Err(Error::Shape(_))));
    }
}
