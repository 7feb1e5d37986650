//! Orbifold data for ℙ(1,…,1,N) and ℙ(a,b): inertia sectors, ages, the μ
//! grading, the pairing, monodromy profiles of cyclic covers and the
//! dimension bookkeeping built on them.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactmath::linalg::RatMatrix;
use crate::exactmath::{fractional_part, int, parse_rational, rat, to_i64, Rational};

/// A basis class of the Chen-Ruan cohomology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassLabel {
    /// `ξ^p` on the untwisted sector; `p = 0` is `1`, `p = d` is `[𝒳]`.
    Untwisted(u32),
    /// The point sector `γ_j`.
    Twisted(u32),
}

impl ClassLabel {
    pub fn render(&self, dim: u32) -> String {
        match *self {
            ClassLabel::Untwisted(0) => "1".into(),
            ClassLabel::Untwisted(p) if p == dim => "[X]".into(),
            ClassLabel::Untwisted(1) => "xi".into(),
            ClassLabel::Untwisted(p) => format!("xi^{p}"),
            ClassLabel::Twisted(j) => format!("gamma{j}"),
        }
    }
}

/// Normalization of the orbifold pairing: every nonzero untwisted entry
/// `(ξ^p, ξ^{d-p})` and every twisted entry `(γ_j, γ_{N-j})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingConfig {
    pub untwisted: Rational,
    pub twisted: Rational,
}

impl PairingConfig {
    pub fn standard(n: u32) -> Self {
        PairingConfig {
            untwisted: rat(1, n as i64),
            twisted: rat(1, n as i64),
        }
    }
}

/// Multiplication by `c₁` on the untwisted classes: `ρ(ξ^p) = steps[p]·ξ^{p+1}`.
/// Twisted sectors are annihilated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoConfig {
    pub steps: Vec<Rational>,
}

impl RhoConfig {
    /// `ρ(1) = c·ξ`, and for surfaces `ρ(ξ) = (|c|²/c)·[𝒳]` so that
    /// `ρ²(1) = |c|²·[𝒳]`. Threefolds use `c` at every step.
    pub fn from_constants(dim: u32, c: &Rational, c_abs_sq: &Rational) -> Result<Self> {
        if c.is_zero() && !c_abs_sq.is_zero() {
            return Err(Error::Inconsistent("c = 0 forces |c|² = 0".into()));
        }
        let second = if c.is_zero() { Rational::zero() } else { c_abs_sq / c };
        let steps = match dim {
            1 => vec![c.clone()],
            2 => vec![c.clone(), second],
            d => vec![c.clone(); d as usize],
        };
        Ok(RhoConfig { steps })
    }

    pub fn default_for(dim: u32) -> Self {
        let c = int(2);
        Self::from_constants(dim, &c, &(&c * &c)).expect("nonzero c")
    }
}

/// `ℙ(1,…,1,N)` with `d+1` weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedProjectiveModel {
    dim: u32,
    n: u32,
    pub pairing: PairingConfig,
    pub rho: RhoConfig,
}

impl WeightedProjectiveModel {
    /// `n = 1` gives the manifold `ℙ^d` with no twisted sectors.
    pub fn new(dim: u32, n: u32) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(Error::Unsupported(format!("dimension {dim}")));
        }
        if n == 0 {
            return Err(Error::Unsupported("N must be positive".into()));
        }
        Ok(WeightedProjectiveModel {
            dim,
            n,
            pairing: PairingConfig::standard(n),
            rho: RhoConfig::default_for(dim),
        })
    }

    pub fn with_pairing(mut self, pairing: PairingConfig) -> Self {
        self.pairing = pairing;
        self
    }

    pub fn with_rho(mut self, rho: RhoConfig) -> Result<Self> {
        if rho.steps.len() != self.dim as usize {
            return Err(Error::Shape(format!(
                "rho needs {} steps, got {}",
                self.dim,
                rho.steps.len()
            )));
        }
        self.rho = rho;
        Ok(self)
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    /// Untwisted classes first (`1, ξ, …, [𝒳]`), then `γ_1 … γ_{N-1}`.
    pub fn basis(&self) -> Vec<ClassLabel> {
        (0..=self.dim)
            .map(ClassLabel::Untwisted)
            .chain((1..self.n).map(ClassLabel::Twisted))
            .collect()
    }

    pub fn basis_len(&self) -> usize {
        (self.dim + self.n) as usize
    }

    pub fn index_of(&self, label: ClassLabel) -> Option<usize> {
        match label {
            ClassLabel::Untwisted(p) if p <= self.dim => Some(p as usize),
            ClassLabel::Twisted(j) if j >= 1 && j < self.n => Some((self.dim + j) as usize),
            _ => None,
        }
    }

    pub fn age(&self, label: ClassLabel) -> Rational {
        match label {
            ClassLabel::Untwisted(_) => Rational::zero(),
            ClassLabel::Twisted(j) => rat((self.dim * j) as i64, self.n as i64),
        }
    }

    /// Hodge degree `p` of the class within its sector.
    pub fn hodge_p(&self, label: ClassLabel) -> u32 {
        match label {
            ClassLabel::Untwisted(p) => p,
            ClassLabel::Twisted(_) => 0,
        }
    }

    pub fn mu(&self, label: ClassLabel) -> Rational {
        int(self.hodge_p(label) as i64) + self.age(label) - rat(self.dim as i64, 2)
    }

    pub fn mu_spectrum(&self) -> Vec<(ClassLabel, Rational)> {
        self.basis().into_iter().map(|l| (l, self.mu(l))).collect()
    }

    pub fn mu_matrix(&self) -> RatMatrix {
        let diag: Vec<Rational> = self.mu_spectrum().into_iter().map(|(_, m)| m).collect();
        RatMatrix::diagonal(&diag)
    }

    /// The class paired with `label` under the involution.
    pub fn dual(&self, label: ClassLabel) -> ClassLabel {
        match label {
            ClassLabel::Untwisted(p) => ClassLabel::Untwisted(self.dim - p),
            ClassLabel::Twisted(j) => ClassLabel::Twisted(self.n - j),
        }
    }

    pub fn pairing_matrix(&self) -> RatMatrix {
        let basis = self.basis();
        let mut eta = RatMatrix::zeros(basis.len(), basis.len());
        for (a, &la) in basis.iter().enumerate() {
            let b = self.index_of(self.dual(la)).expect("dual class exists");
            eta[(a, b)] = match la {
                ClassLabel::Untwisted(_) => self.pairing.untwisted.clone(),
                ClassLabel::Twisted(_) => self.pairing.twisted.clone(),
            };
        }
        eta
    }

    /// Matrix of `ρ` acting on row vectors: `ρ(φ_α) = Σ_β ρ[α][β] φ_β`.
    pub fn rho_matrix(&self) -> RatMatrix {
        let mut r = RatMatrix::zeros(self.basis_len(), self.basis_len());
        for (p, step) in self.rho.steps.iter().enumerate() {
            r[(p, p + 1)] = step.clone();
        }
        r
    }

    pub fn label(&self) -> String {
        let ones = vec!["1"; self.dim as usize].join(",");
        format!("P({ones},N={})", self.n)
    }
}

/// One component of the inertia orbifold with its age and `χ(𝒳_i, Ω^p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectorHodgeData {
    pub age: Rational,
    pub dim: u32,
    pub chi: Vec<(u32, i64)>,
}

impl SectorHodgeData {
    pub fn point(age: Rational) -> Self {
        SectorHodgeData {
            age,
            dim: 0,
            chi: vec![(0, 1)],
        }
    }

    pub fn rational_curve() -> Self {
        SectorHodgeData {
            age: Rational::zero(),
            dim: 1,
            chi: vec![(0, 1), (1, -1)],
        }
    }

    /// Topological Euler characteristic of the coarse sector, `Σ (-1)^p χ(Ω^p)`.
    pub fn euler(&self) -> i64 {
        self.chi.iter().map(|&(p, c)| if p % 2 == 0 { c } else { -c }).sum()
    }
}

/// The weighted projective line `ℙ(a,b)` with coprime weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PabModel {
    a: u32,
    b: u32,
}

impl PabModel {
    pub fn new(a: u32, b: u32) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::Unsupported("weights must be positive".into()));
        }
        if a.gcd(&b) != 1 {
            return Err(Error::Unsupported(format!("P({a},{b}) has non-coprime weights")));
        }
        Ok(PabModel { a, b })
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    /// The untwisted curve, then `a-1` points of age `i/a`, then `b-1` of age `j/b`.
    pub fn sectors(&self) -> Vec<SectorHodgeData> {
        let mut out = vec![SectorHodgeData::rational_curve()];
        out.extend((1..self.a).map(|i| SectorHodgeData::point(rat(i as i64, self.a as i64))));
        out.extend((1..self.b).map(|j| SectorHodgeData::point(rat(j as i64, self.b as i64))));
        out
    }

    /// `∫ c₁(T)` over `ℙ(a,b)`.
    pub fn c1_degree(&self) -> Rational {
        rat(1, self.a as i64) + rat(1, self.b as i64)
    }

    pub fn label(&self) -> String {
        format!("P(a={},b={})", self.a, self.b)
    }
}

/// `χ_top` of the coarse inertia space, summed sector by sector.
pub fn euler_characteristic_inertia(model: &PabModel) -> i64 {
    model.sectors().iter().map(SectorHodgeData::euler).sum()
}

/// A parsed model literal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Model {
    Weighted(WeightedProjectiveModel),
    Pab(PabModel),
}

impl FromStr for Model {
    type Err = Error;

    /// Accepts `P(1,N=3)`, `P(1,1,N=4)`, `P(1,1,1,N=3)`, `P(a=2,b=3)` and `P(2,3)`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unrecognized model literal {s:?}"));
        let inner = s
            .trim()
            .strip_prefix("P(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        if let [a, b] = parts.as_slice() {
            if let (Some(a), Some(b)) = (a.strip_prefix("a="), b.strip_prefix("b=")) {
                let a = a.parse().map_err(|_| bad())?;
                let b = b.parse().map_err(|_| bad())?;
                return Ok(Model::Pab(PabModel::new(a, b)?));
            }
            if let (Ok(a), Ok(b)) = (a.parse::<u32>(), b.parse::<u32>()) {
                if a != 1 {
                    return Ok(Model::Pab(PabModel::new(a, b)?));
                }
            }
        }
        let (last, ones) = parts.split_last().ok_or_else(bad)?;
        if ones.is_empty() || ones.iter().any(|w| *w != "1") {
            return Err(bad());
        }
        let n = last.strip_prefix("N=").unwrap_or(last).parse().map_err(|_| bad())?;
        Ok(Model::Weighted(WeightedProjectiveModel::new(ones.len() as u32, n)?))
    }
}

/// Stacky points of a genus-zero orbicurve mapping to `Bℤ_N`: `n_i` points
/// with monodromy `ω^i`, listed in sector order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonodromyProfile {
    n: u32,
    counts: Vec<u32>,
}

impl MonodromyProfile {
    pub fn new(n: u32, counts: Vec<u32>) -> Result<Self> {
        if n < 2 {
            return Err(Error::Parse(format!("profile needs N >= 2, got {n}")));
        }
        if counts.len() != (n - 1) as usize {
            return Err(Error::Shape(format!(
                "N={n} needs {} counts, got {}",
                n - 1,
                counts.len()
            )));
        }
        Ok(MonodromyProfile { n, counts })
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    /// `(n_1, …, n_{N-1})`.
    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    /// `n_i` for `1 ≤ i ≤ N-1`.
    pub fn count(&self, i: u32) -> u32 {
        self.counts[(i - 1) as usize]
    }

    /// `Σ n_i`.
    pub fn total(&self) -> usize {
        self.counts.iter().map(|&c| c as usize).sum()
    }

    /// `M_0 = 0, M_1, …, M_{N-1}`.
    pub fn partial_sums(&self) -> Vec<usize> {
        let mut out = vec![0];
        for &c in &self.counts {
            out.push(out.last().unwrap() + c as usize);
        }
        out
    }

    /// Sector of each stacky position, in order (length `Σ n_i`).
    pub fn sectors(&self) -> Vec<u32> {
        self.counts
            .iter()
            .enumerate()
            .flat_map(|(i, &c)| std::iter::repeat_n(i as u32 + 1, c as usize))
            .collect()
    }

    /// Sector `s` with `M_{s-1} < r ≤ M_s` for a 1-based position `r`.
    pub fn sector_of(&self, r: usize) -> Result<u32> {
        let sums = self.partial_sums();
        (1..sums.len())
            .find(|&s| sums[s - 1] < r && r <= sums[s])
            .map(|s| s as u32)
            .ok_or(Error::Range {
                index: r as i64,
                max: self.total() as i64,
            })
    }

    /// `Σ i·n_i`.
    pub fn weighted_sum(&self) -> u64 {
        self.counts
            .iter()
            .enumerate()
            .map(|(i, &c)| (i as u64 + 1) * c as u64)
            .sum()
    }

    pub fn is_admissible(&self) -> bool {
        self.weighted_sum().is_multiple_of(self.n as u64)
    }

    fn require_admissible(&self) -> Result<()> {
        if self.is_admissible() {
            Ok(())
        } else {
            Err(Error::NotAdmissible(self.to_string()))
        }
    }

    /// Genus of the ℤ_N cover of ℙ¹ by Riemann-Hurwitz:
    /// `2 - 2g = 2N - Σ n_i (N - gcd(i, N))`.
    pub fn cover_genus(&self) -> Result<u64> {
        self.require_admissible()?;
        let n = self.n as i64;
        let ramification: i64 = self
            .counts
            .iter()
            .enumerate()
            .map(|(i, &c)| c as i64 * (n - (i as i64 + 1).gcd(&n)))
            .sum();
        let euler = 2 * n - ramification;
        if euler % 2 != 0 || euler > 2 {
            return Err(Error::Inconsistent(format!(
                "Riemann-Hurwitz gives 2-2g = {euler} for {self}"
            )));
        }
        Ok(((2 - euler) / 2) as u64)
    }

    /// Rank of `𝔼_{ω^j}`: `-1 + Σ_i n_i ⟨i·j/N⟩`.
    pub fn eigenbundle_rank(&self, j: u32) -> Result<i64> {
        self.require_admissible()?;
        if j == 0 || j >= self.n {
            return Err(Error::Range {
                index: j as i64,
                max: self.n as i64 - 1,
            });
        }
        let mut sum = Rational::zero();
        for (i, &c) in self.counts.iter().enumerate() {
            let twist = rat((i as i64 + 1) * j as i64, self.n as i64);
            sum += fractional_part(&twist) * int(c as i64);
        }
        let rank = sum - Rational::one();
        to_i64(&rank).ok_or_else(|| Error::Inconsistent(format!("non-integral rank {rank} for {self}, j={j}")))
    }

    /// `r_1, …, r_{N-1}`.
    pub fn eigenbundle_ranks(&self) -> Result<Vec<i64>> {
        (1..self.n).map(|j| self.eigenbundle_rank(j)).collect()
    }
}

impl fmt::Display for MonodromyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let counts: Vec<String> = self.counts.iter().map(u32::to_string).collect();
        write!(f, "N={};n={}", self.n, counts.join(","))
    }
}

impl FromStr for MonodromyProfile {
    type Err = Error;

    /// Parses `N=3;n=3,0` (a space may replace the semicolon).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unrecognized profile literal {s:?}"));
        let mut n = None;
        let mut counts = None;
        for part in s.split([';', ' ']).filter(|p| !p.is_empty()) {
            if let Some(v) = part.strip_prefix("N=") {
                n = Some(v.parse::<u32>().map_err(|_| bad())?);
            } else if let Some(v) = part.strip_prefix("n=") {
                let parsed: std::result::Result<Vec<u32>, _> = v.split(',').map(|x| x.trim().parse::<u32>()).collect();
                counts = Some(parsed.map_err(|_| bad())?);
            } else {
                return Err(bad());
            }
        }
        MonodromyProfile::new(n.ok_or_else(bad)?, counts.ok_or_else(bad)?)
    }
}

/// Which Hodge class is integrated: `λ_{r_1}` over a curve target, or
/// `λ_{r_1}^2` over a surface target.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Case {
    Curve,
    Surface,
}

impl Case {
    /// Multiplier of `i/N` in the sector shift: `1` or `2`.
    pub fn weight(self) -> i64 {
        match self {
            Case::Curve => 1,
            Case::Surface => 2,
        }
    }

    /// Shift attached to a stacky insertion in sector `i`: `i/N`, or `2i/N - 1/2`.
    pub fn stacky_shift(self, i: u32, n: u32) -> Rational {
        match self {
            Case::Curve => rat(i as i64, n as i64),
            Case::Surface => rat(2 * i as i64, n as i64) - rat(1, 2),
        }
    }

    /// Shift attached to a plain insertion: `0`, or `-1/2`.
    pub fn plain_shift(self) -> Rational {
        match self {
            Case::Curve => Rational::zero(),
            Case::Surface => rat(-1, 2),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Case::Curve => "curve",
            Case::Surface => "surface",
        }
    }
}

impl FromStr for Case {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "curve" => Ok(Case::Curve),
            "surface" => Ok(Case::Surface),
            other => Err(Error::Parse(format!("unknown case {other:?}"))),
        }
    }
}

/// Virtual dimension gate for `⟨τ̃_k… τ_l… (τ_{K+1})⟩`; `virasoro_k = None`
/// is the plain invariant and behaves like `K = 0`.
///
/// Curve: `n + Σn_i - 2 = Σ l + Σ (k_j + i/N) + K`.
/// Surface: `(n + Σn_i - 2)/2 = Σ (l - 1/2) + Σ (k_j - 1/2 + 2i/N) + K`.
pub fn dimension_constraint(
    profile: &MonodromyProfile,
    case: Case,
    stacky: &[u32],
    plain: &[u32],
    virasoro_k: Option<u32>,
) -> Result<bool> {
    if stacky.len() != profile.total() {
        return Err(Error::Shape(format!(
            "profile {profile} has {} stacky points, got {} exponents",
            profile.total(),
            stacky.len()
        )));
    }
    let points = int(plain.len() as i64 + profile.total() as i64 - 2);
    let lhs = match case {
        Case::Curve => points,
        Case::Surface => points / int(2),
    };
    let mut rhs = int(virasoro_k.unwrap_or(0) as i64);
    for &l in plain {
        rhs += int(l as i64) + case.plain_shift();
    }
    for (&k, i) in stacky.iter().zip(profile.sectors()) {
        rhs += int(k as i64) + case.stacky_shift(i, profile.order());
    }
    Ok(lhs == rhs)
}

/// Parses a comma-separated list of rationals such as `"1/3,2,-5/7"`.
pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(parse_rational)
        .collect()
}
