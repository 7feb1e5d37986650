//! Degree-zero genus-zero invariants `⟨τ̃_{k_1}…τ̃_{k_S} τ_{l_1}…τ_{l_n} | λ⟩_g`
//! of `ℙ(1,N)` (`λ = λ_{r_1}`) and `ℙ(1,1,N)` (`λ = λ_{r_1}^2`) in closed form.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactmath::linalg::RatMatrix;
use crate::exactmath::{
    bracket_symbol, factorial, format_rational, int, is_integer, rat, shifted_factorial, to_i64, Rational,
};
use crate::geometry::{dimension_constraint, Case, MonodromyProfile};

pub mod potential;
pub mod threefold;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InvariantQuery {
    pub profile: MonodromyProfile,
    /// `k_1..k_S`, ordered by sector blocks.
    pub stacky: Vec<u32>,
    /// `l_1..l_n`.
    pub plain: Vec<u32>,
    pub case: Case,
}

impl InvariantQuery {
    pub fn new(profile: MonodromyProfile, stacky: Vec<u32>, plain: Vec<u32>, case: Case) -> Result<Self> {
        if stacky.len() != profile.total() {
            return Err(Error::Shape(format!(
                "profile {profile} has {} stacky points, got {} exponents",
                profile.total(),
                stacky.len()
            )));
        }
        profile.cover_genus()?;
        Ok(InvariantQuery {
            profile,
            stacky,
            plain,
            case,
        })
    }

    pub fn satisfies_dimension(&self) -> bool {
        dimension_constraint(&self.profile, self.case, &self.stacky, &self.plain, None).unwrap_or(false)
    }

    fn points(&self) -> i64 {
        (self.plain.len() + self.profile.total()) as i64
    }

    fn with_plain(&self, plain: Vec<u32>) -> Self {
        InvariantQuery { plain, ..self.clone() }
    }

    fn with_stacky(&self, stacky: Vec<u32>) -> Self {
        InvariantQuery { stacky, ..self.clone() }
    }
}

/// The values `Γ_{j,g}` of the distinguished invariants, supplied externally.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeInput {
    pub genus: u64,
    pub gamma: Vec<Rational>,
}

impl HodgeInput {
    pub fn new(profile: &MonodromyProfile, gamma: Vec<Rational>) -> Result<Self> {
        if gamma.len() != profile.total() {
            return Err(Error::Shape(format!(
                "need {} gamma values for {profile}, got {}",
                profile.total(),
                gamma.len()
            )));
        }
        Ok(HodgeInput {
            genus: profile.cover_genus()?,
            gamma,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientVector(pub Vec<Rational>);

/// `Σ coeffs[j]·c_{j+1}` with symbolic `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm(pub Vec<Rational>);

impl LinearForm {
    pub fn zero(len: usize) -> Self {
        LinearForm(vec![Rational::zero(); len])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn evaluate(&self, c: &CoefficientVector) -> Result<Rational> {
        if c.0.len() != self.0.len() {
            return Err(Error::Shape(format!(
                "form has {} symbols, got {} values",
                self.0.len(),
                c.0.len()
            )));
        }
        Ok(self.0.iter().zip(&c.0).map(|(a, b)| a * b).sum())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        LinearForm(self.0.iter().map(|x| x * s).collect())
    }

    /// `self += s·other`.
    pub fn add_scaled(&mut self, other: &LinearForm, s: &Rational) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += b * s;
        }
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| format!("{}*c{}", format_rational(c), j + 1))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// `⟨τ_{l_1}…τ_{l_n}⟩_0` on `M̄_{0,n}`: `(n-3)!/Π l_i!` when `Σ l = n - 3`.
pub fn untwisted_invariant(l: &[u32]) -> Result<Rational> {
    let n = l.len() as u64;
    if n < 3 {
        return Err(Error::EmptyModuli(format!("M_0,{n}")));
    }
    let total: u64 = l.iter().map(|&x| x as u64).sum();
    if total != n - 3 {
        return Ok(Rational::zero());
    }
    let den: Rational = l.iter().map(|&x| factorial(x as u64)).product();
    Ok(factorial(n - 3) / den)
}

/// The exponent `a` in the matrix entries: `Σn - Σ(i/N)n_i - 2` for the
/// curve and `Σn - Σ(2i/N)n_i - 2` for the surface.
pub fn matrix_parameter(profile: &MonodromyProfile, case: Case) -> Rational {
    let n = profile.order() as i64;
    let w = case.weight();
    let twist: Rational = profile
        .counts()
        .iter()
        .enumerate()
        .map(|(i, &c)| rat(w * (i as i64 + 1) * c as i64, n))
        .sum();
    int(profile.total() as i64) - twist - int(2)
}

/// The exponent `a` of the distinguished invariant `⟨τ̃_a τ̃_0…τ̃_0|λ⟩`
/// allowed by the dimension constraint. Equals [`matrix_parameter`] for
/// the curve and exceeds it by one for the surface.
pub fn distinguished_exponent(profile: &MonodromyProfile, case: Case) -> Rational {
    match case {
        Case::Curve => matrix_parameter(profile, case),
        Case::Surface => matrix_parameter(profile, case) + int(1),
    }
}

fn block_value(case: Case, i: u32, n: u32) -> Rational {
    rat(case.weight() * i as i64, n as i64)
}

/// `a_{st} = v_{i(t)} + a·δ_{st}` with `v_i = i/N` or `2i/N`.
pub fn build_matrix_a(profile: &MonodromyProfile, case: Case, a: &Rational) -> RatMatrix {
    let sectors = profile.sectors();
    let s = sectors.len();
    let mut m = RatMatrix::zeros(s, s);
    for row in 0..s {
        for (col, &i) in sectors.iter().enumerate() {
            m[(row, col)] = block_value(case, i, profile.order());
            if row == col {
                m[(row, col)] += a;
            }
        }
    }
    m
}

/// `a^{S-1}(a + Σ n_i v_i)`.
pub fn determinant_formula(profile: &MonodromyProfile, case: Case, a: &Rational) -> Rational {
    let s = profile.total();
    let trace: Rational = profile
        .sectors()
        .iter()
        .map(|&i| block_value(case, i, profile.order()))
        .sum();
    let mut p = Rational::one();
    for _ in 1..s {
        p *= a;
    }
    p * (a + trace)
}

fn nonnegative_integer(a: &Rational, what: &str) -> Result<i64> {
    match to_i64(a) {
        Some(v) if v >= 0 => Ok(v),
        _ => Err(Error::Degenerate(format!(
            "{what} = {} is not a non-negative integer",
            format_rational(a)
        ))),
    }
}

fn nonzero(x: Rational, what: impl Fn() -> String) -> Result<Rational> {
    if x.is_zero() {
        Err(Error::Degenerate(what()))
    } else {
        Ok(x)
    }
}

/// Multiplies row `j` (sector `i`) by
/// `v(S-3)!/((a+v)!·Π_b v_b^{n_b})` with `v = i/N` for the curve, and by
/// `½(S-3)!·v/((a+v)!·Π_b v_b^{n_b})` with `v = 2i/N - 1/2` for the surface.
pub fn scale_rows(profile: &MonodromyProfile, case: Case, a_matrix: &RatMatrix, a: &Rational) -> Result<RatMatrix> {
    let n = profile.order();
    let s = profile.total();
    if s < 3 {
        return Err(Error::EmptyModuli(format!(
            "{profile} has fewer than three stacky points"
        )));
    }
    let a_int = nonnegative_integer(a, "a")?;
    let shift = |i: u32| case.stacky_shift(i, n);
    let mut prod = Rational::one();
    for (idx, &c) in profile.counts().iter().enumerate() {
        let i = idx as u32 + 1;
        if c > 0 {
            let v = nonzero(shift(i), || format!("sector {i} of {profile} has zero shift"))?;
            for _ in 0..c {
                prod *= &v;
            }
        }
    }
    let lead = match case {
        Case::Curve => factorial(s as u64 - 3),
        Case::Surface => factorial(s as u64 - 3) * rat(1, 2),
    };
    let mut out = a_matrix.clone();
    for (row, &i) in profile.sectors().iter().enumerate() {
        let v = shift(i);
        let den = nonzero(shifted_factorial(a_int, &v) * &prod, || {
            format!("(a + {})! vanishes for {profile}", format_rational(&v))
        })?;
        out.scale_row(row, &(&lead * &v / den));
    }
    Ok(out)
}

/// `(k_j + v)!` over the stacky block and `l!` or `(l - 1/2)!` over the plain
/// points, i.e. the common denominator of `Θ`.
fn theta_denominator(q: &InvariantQuery) -> Result<Rational> {
    let n = q.profile.order();
    let mut den = Rational::one();
    for &l in &q.plain {
        den *= match q.case {
            Case::Curve => factorial(l as u64),
            Case::Surface => shifted_factorial(l as i64 - 1, &rat(1, 2)),
        };
    }
    for (&k, i) in q.stacky.iter().zip(q.profile.sectors()) {
        den *= shifted_factorial(k as i64, &q.case.stacky_shift(i, n));
    }
    nonzero(den, || {
        format!("a factorial in the denominator vanishes for {}", q.profile)
    })
}

fn check_position(q: &InvariantQuery, r: usize) -> Result<u32> {
    if q.points() < 3 {
        return Err(Error::EmptyModuli(format!("{} points", q.points())));
    }
    q.profile.sector_of(r)
}

/// `Θ(k, l)_r` for a 1-based position `r`. Curve:
/// `(n+S-3)!(k_r + s/N) / (Π l_j! Π (k_j + b/N)!)`. Surface:
/// `½(n+S-3)!(k_r - 1/2 + 2s/N) / (2^n Π (l_j - 1/2)! Π (k_j - 1/2 + 2b/N)!)`
/// with `(l - 1/2)! = (1/2)(3/2)…(l - 1/2)`.
pub fn theta(q: &InvariantQuery, r: usize) -> Result<Rational> {
    let s = check_position(q, r)?;
    let head = factorial((q.points() - 3) as u64);
    let num = &head * (int(q.stacky[r - 1] as i64) + q.case.stacky_shift(s, q.profile.order()));
    let den = theta_denominator(q)?;
    Ok(match q.case {
        Case::Curve => num / den,
        Case::Surface => num * rat(1, 2) / (den * int(1i64 << q.plain.len())),
    })
}

/// `Θ` exactly as displayed for the surface, with leading factor
/// `½(n+S-3)!` and `(l - 1/2)!` read as `(l-1/2)(l-3/2)…(1/2)`. Kept to
/// show that it violates the recursion once plain points are present.
pub fn theta_as_displayed(q: &InvariantQuery, r: usize) -> Result<Rational> {
    match q.case {
        Case::Curve => theta(q, r),
        Case::Surface => Ok(theta(q, r)? * int(1i64 << q.plain.len())),
    }
}

pub fn theta_vector(q: &InvariantQuery) -> Result<Vec<Rational>> {
    if q.points() < 3 {
        return Err(Error::EmptyModuli(format!("{} points", q.points())));
    }
    let n = q.profile.order();
    let mut scale = factorial((q.points() - 3) as u64) / theta_denominator(q)?;
    if q.case == Case::Surface {
        scale = scale * rat(1, 2) / int(1i64 << q.plain.len());
    }
    Ok(q.stacky
        .iter()
        .zip(q.profile.sectors())
        .map(|(&k, s)| (int(k as i64) + q.case.stacky_shift(s, n)) * &scale)
        .collect())
}

/// The invariant as a linear form in `c`, zero when the dimension fails.
pub fn invariant_form(q: &InvariantQuery) -> Result<LinearForm> {
    if !q.satisfies_dimension() {
        return Ok(LinearForm::zero(q.profile.total()));
    }
    Ok(LinearForm(theta_vector(q)?))
}

pub fn evaluate_with_c(q: &InvariantQuery, c: &CoefficientVector) -> Result<Rational> {
    invariant_form(q)?.evaluate(c)
}

/// The distinguished query with exponent `a` at position `j` (1-based).
pub fn distinguished_query(profile: &MonodromyProfile, case: Case, j: usize) -> Result<InvariantQuery> {
    let a = nonnegative_integer(&distinguished_exponent(profile, case), "a")?;
    let mut stacky = vec![0; profile.total()];
    stacky[j - 1] = a as u32;
    InvariantQuery::new(profile.clone(), stacky, vec![], case)
}

/// Rows `Θ` of the distinguished queries. For the curve this is the row
/// scaled matrix `𝐀`; for the surface the columns carry `2i/N - 1/2`.
pub fn system_matrix(profile: &MonodromyProfile, case: Case) -> Result<RatMatrix> {
    let s = profile.total();
    let rows: Result<Vec<Vec<Rational>>> = (1..=s)
        .map(|j| theta_vector(&distinguished_query(profile, case, j)?))
        .collect();
    RatMatrix::from_rows(rows?)
}

/// Solves `Θ-matrix · c = Γ`.
pub fn solve_for_c(profile: &MonodromyProfile, case: Case, input: &HodgeInput) -> Result<CoefficientVector> {
    if input.gamma.len() != profile.total() {
        return Err(Error::Shape(
            "gamma length differs from the number of stacky points".into(),
        ));
    }
    if distinguished_exponent(profile, case).is_zero() {
        return Err(Error::Singular(format!("a = 0 for {profile}")));
    }
    let m = system_matrix(profile, case)?;
    Ok(CoefficientVector(m.solve(&input.gamma)?))
}

fn is_base_query(q: &InvariantQuery) -> bool {
    q.plain.is_empty() && q.stacky.iter().all(|&k| k == 0) && distinguished_exponent(&q.profile, q.case).is_zero()
}

/// The invariant given `Γ`. When `a = 0` the only invariant in reach is the
/// all-zero query, and its value is the supplied `Γ` itself.
pub fn evaluate_invariant(q: &InvariantQuery, input: &HodgeInput) -> Result<Rational> {
    if !q.satisfies_dimension() {
        return Ok(Rational::zero());
    }
    if is_base_query(q) {
        let first = input
            .gamma
            .first()
            .ok_or_else(|| Error::EmptyModuli("no stacky points".into()))?;
        if input.gamma.iter().any(|g| g != first) {
            return Err(Error::Inconsistent(
                "the base invariant needs equal gamma entries".into(),
            ));
        }
        return Ok(first.clone());
    }
    let c = solve_for_c(&q.profile, q.case, input)?;
    evaluate_with_c(q, &c)
}

/// LHS of the recursion from `𝓛_k`, divided by `[1]_0^k` (curve) or
/// `[1/2]_0^k` (surface); zero when the closed form is right.
pub fn recursion_residual(q: &InvariantQuery, k: u32, c: &CoefficientVector) -> Result<Rational> {
    recursion_residual_form(q, k)?.evaluate(c)
}

/// Factor in front of `⟨…τ_{l+k}…⟩` after normalization.
fn plain_transfer(case: Case, k: u32, l: u32) -> Result<Rational> {
    Ok(match case {
        Case::Curve if l == 0 => Rational::zero(),
        Case::Curve => factorial(l as u64 + k as u64) / (factorial(l as u64 - 1) * factorial(k as u64 + 1)),
        Case::Surface => bracket_symbol(&(int(l as i64) - rat(1, 2)), 0, k)? / bracket_symbol(&rat(1, 2), 0, k)?,
    })
}

/// Factor in front of `⟨…τ̃_{k_j+k}…⟩` after normalization.
fn stacky_transfer(case: Case, k: u32, kj: u32, v: &Rational) -> Result<Rational> {
    Ok(match case {
        Case::Curve => {
            shifted_factorial(kj as i64 + k as i64, v) / (shifted_factorial(kj as i64 - 1, v) * factorial(k as u64 + 1))
        }
        Case::Surface => bracket_symbol(&(int(kj as i64) + v), 0, k)? / bracket_symbol(&rat(1, 2), 0, k)?,
    })
}

/// `l!` for the curve, `(l - 1/2)!` for the surface.
fn plain_factorial(case: Case, l: u32) -> Rational {
    match case {
        Case::Curve => factorial(l as u64),
        Case::Surface => shifted_factorial(l as i64 - 1, &rat(1, 2)),
    }
}

/// The residual of [`recursion_residual`] as a linear form in `c`.
///
/// Every term is `Θ` of a query differing from `q` in one exponent, so
/// `residual_r = W·(k_r + v_r) + w_r·k` with scalar weights.
pub fn recursion_residual_form(q: &InvariantQuery, k: u32) -> Result<LinearForm> {
    let mut aug = q.plain.clone();
    aug.push(k + 1);
    if k < 1 || q.points() < 3 || !q.with_plain(aug).satisfies_dimension() {
        return recursion_residual_form_direct(q, k);
    }
    let Ok(den) = theta_denominator(q) else {
        return recursion_residual_form_direct(q, k);
    };
    let n = q.profile.order();
    let points = q.points();
    let mut base = factorial((points - 3) as u64) / den;
    if q.case == Case::Surface {
        base = base * rat(1, 2) / int(1i64 << q.plain.len());
    }
    let mut total = -(&base * int(points - 2) / plain_factorial(q.case, k + 1));
    if q.case == Case::Surface {
        total *= rat(1, 2);
    }
    for &l in &q.plain {
        let f = plain_transfer(q.case, k, l)?;
        if !f.is_zero() {
            total += f * &base * plain_factorial(q.case, l) / plain_factorial(q.case, l + k);
        }
    }
    let sectors = q.profile.sectors();
    let mut stacky_w = Vec::with_capacity(sectors.len());
    for (&kj, &s) in q.stacky.iter().zip(&sectors) {
        let v = q.case.stacky_shift(s, n);
        let f = stacky_transfer(q.case, k, kj, &v)?;
        let ratio = shifted_factorial(kj as i64 + k as i64, &v) / shifted_factorial(kj as i64, &v);
        let w = f * &base / ratio;
        total += &w;
        stacky_w.push(w);
    }
    let kk = int(k as i64);
    Ok(LinearForm(
        q.stacky
            .iter()
            .zip(&sectors)
            .zip(&stacky_w)
            .map(|((&kr, &s), w)| &total * (int(kr as i64) + q.case.stacky_shift(s, n)) + w * &kk)
            .collect(),
    ))
}

/// Precomputed weights for [`recursion_residual_form`] over many queries of
/// one order, case and `k`, with exponents `≤ max_exp`.
pub struct ResidualKernel {
    case: Case,
    k: u32,
    /// `l!` or `(l - 1/2)!` for `l ≤ max_exp + k + 1`.
    plain_fact: Vec<Rational>,
    /// Transfer factor over the change of denominator, per plain exponent.
    plain_w: Vec<Rational>,
    /// `(k_j + v_s)!`, indexed by sector then exponent.
    stacky_fact: Vec<Vec<Rational>>,
    /// Transfer factor over the change of denominator, per sector and exponent.
    stacky_w: Vec<Vec<Rational>>,
    /// `v_s`, indexed by sector.
    shift: Vec<Rational>,
}

impl ResidualKernel {
    pub fn new(order: u32, case: Case, k: u32, max_exp: u32) -> Result<Self> {
        let top = max_exp + k + 1;
        let plain_fact: Vec<Rational> = (0..=top).map(|l| plain_factorial(case, l)).collect();
        let plain_w = (0..=max_exp)
            .map(|l| Ok(plain_transfer(case, k, l)? * &plain_fact[l as usize] / &plain_fact[(l + k) as usize]))
            .collect::<Result<_>>()?;
        let mut stacky_fact = vec![vec![]];
        let mut stacky_w = vec![vec![]];
        let mut shift = vec![Rational::zero()];
        for s in 1..order {
            let v = case.stacky_shift(s, order);
            let facts: Vec<Rational> = (0..=top).map(|kj| shifted_factorial(kj as i64, &v)).collect();
            let mut ws = Vec::new();
            for kj in 0..=max_exp {
                let ratio = &facts[(kj + k) as usize] / &facts[kj as usize];
                ws.push(stacky_transfer(case, k, kj, &v)? / ratio);
            }
            stacky_fact.push(facts);
            stacky_w.push(ws);
            shift.push(v);
        }
        Ok(ResidualKernel {
            case,
            k,
            plain_fact,
            plain_w,
            stacky_fact,
            stacky_w,
            shift,
        })
    }

    /// Same value as [`recursion_residual_form`] for queries whose
    /// augmentation satisfies the dimension constraint.
    pub fn form(&self, q: &InvariantQuery) -> Result<LinearForm> {
        let max_exp = self.plain_w.len() as u32 - 1;
        let in_range = q.plain.iter().chain(&q.stacky).all(|&e| e <= max_exp);
        if q.case != self.case || q.points() < 3 || !in_range || self.stacky_fact.len() != q.profile.order() as usize {
            return recursion_residual_form(q, self.k);
        }
        let sectors = q.profile.sectors();
        let mut den = Rational::one();
        for &l in &q.plain {
            den *= &self.plain_fact[l as usize];
        }
        for (&kj, &s) in q.stacky.iter().zip(&sectors) {
            den *= &self.stacky_fact[s as usize][kj as usize];
        }
        if den.is_zero() {
            return recursion_residual_form(q, self.k);
        }
        let points = q.points();
        let mut base = factorial((points - 3) as u64) / den;
        if self.case == Case::Surface {
            base = base * rat(1, 2) / int(1i64 << q.plain.len());
        }
        let mut weight = -(int(points - 2) / &self.plain_fact[(self.k + 1) as usize]);
        if self.case == Case::Surface {
            weight *= rat(1, 2);
        }
        for &l in &q.plain {
            weight += &self.plain_w[l as usize];
        }
        for (&kj, &s) in q.stacky.iter().zip(&sectors) {
            weight += &self.stacky_w[s as usize][kj as usize];
        }
        let kk = int(self.k as i64);
        Ok(LinearForm(
            q.stacky
                .iter()
                .zip(&sectors)
                .map(|(&kr, &s)| {
                    let own = &self.stacky_w[s as usize][kr as usize] * &kk;
                    (&weight * (int(kr as i64) + &self.shift[s as usize]) + own) * &base
                })
                .collect(),
        ))
    }
}

/// The residual assembled term by term from [`invariant_form`].
pub fn recursion_residual_form_direct(q: &InvariantQuery, k: u32) -> Result<LinearForm> {
    if k < 1 {
        return Err(Error::Range {
            index: 0,
            max: i64::MAX,
        });
    }
    let n = q.profile.order();
    let mut aug = q.plain.clone();
    aug.push(k + 1);
    let mut total = invariant_form(&q.with_plain(aug))?.scale(&int(-1));
    for i in 0..q.plain.len() {
        let f = plain_transfer(q.case, k, q.plain[i])?;
        if f.is_zero() {
            continue;
        }
        let mut l = q.plain.clone();
        l[i] += k;
        total.add_scaled(&invariant_form(&q.with_plain(l))?, &f);
    }
    for (j, s) in q.profile.sectors().into_iter().enumerate() {
        let v = q.case.stacky_shift(s, n);
        let f = stacky_transfer(q.case, k, q.stacky[j], &v)?;
        let mut st = q.stacky.clone();
        st[j] += k;
        total.add_scaled(&invariant_form(&q.with_stacky(st))?, &f);
    }
    Ok(total)
}

/// Whether the query augmented by `τ_{k+1}` satisfies the dimension constraint.
pub fn recursion_applies(q: &InvariantQuery, k: u32) -> bool {
    dimension_constraint(&q.profile, q.case, &q.stacky, &q.plain, Some(k)).unwrap_or(false)
}

/// Every non-negative exponent vector of the given length with sum `total`.
pub fn compositions(len: usize, total: u32) -> Vec<Vec<u32>> {
    if len == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(len - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Queries of a profile with `n` plain points whose `τ_{k+1}`-augmentation
/// satisfies the dimension constraint.
pub fn recursion_queries(profile: &MonodromyProfile, case: Case, n: usize, k: u32) -> Vec<InvariantQuery> {
    let s = profile.total();
    let sectors = profile.sectors();
    let shift: Rational = sectors
        .iter()
        .map(|&i| case.stacky_shift(i, profile.order()))
        .sum::<Rational>()
        + case.plain_shift() * int(n as i64);
    let points = int((n + s) as i64 - 2);
    let lhs = match case {
        Case::Curve => points,
        Case::Surface => points / int(2),
    };
    let budget = lhs - shift - int(k as i64);
    if !is_integer(&budget) {
        return vec![];
    }
    let Some(b) = to_i64(&budget).filter(|b| *b >= 0) else {
        return vec![];
    };
    compositions(s + n, b as u32)
        .into_iter()
        .filter_map(|exps| {
            let (st, pl) = exps.split_at(s);
            InvariantQuery::new(profile.clone(), st.to_vec(), pl.to_vec(), case).ok()
        })
        .collect()
}

/// Admissible profiles of order `n` with `3 ≤ Σ n_i ≤ max_points`.
pub fn admissible_profiles(n: u32, max_points: usize) -> Vec<MonodromyProfile> {
    let mut out = Vec::new();
    for total in 3..=max_points as u32 {
        for counts in compositions((n - 1) as usize, total) {
            if let Ok(p) = MonodromyProfile::new(n, counts) {
                if p.is_admissible() {
                    out.push(p);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u32, c: &[u32]) -> MonodromyProfile {
        MonodromyProfile::new(n, c.to_vec()).unwrap()
    }

    fn q(n: u32, c: &[u32], k: &[u32], l: &[u32], case: Case) -> InvariantQuery {
        InvariantQuery::new(p(n, c), k.to_vec(), l.to_vec(), case).unwrap()
    }

    #[test]
    fn untwisted_values() {
        assert_eq!(untwisted_invariant(&[0, 0, 0]).unwrap(), int(1));
        assert_eq!(untwisted_invariant(&[1, 0, 0, 0]).unwrap(), int(1));
        assert_eq!(untwisted_invariant(&[2, 0, 0, 0, 0]).unwrap(), int(1));
        assert_eq!(untwisted_invariant(&[1, 1, 0, 0, 0]).unwrap(), int(2));
        assert!(untwisted_invariant(&[0, 0]).is_err());
    }

    #[test]
    fn six_point_double_cover() {
        let prof = p(2, &[6]);
        let a = matrix_parameter(&prof, Case::Curve);
        assert_eq!(a, int(1));
        let m = build_matrix_a(&prof, Case::Curve, &a);
        assert_eq!(m[(0, 0)], rat(3, 2));
        assert_eq!(m[(2, 5)], rat(1, 2));
        let scaled = scale_rows(&prof, Case::Curve, &m, &a).unwrap();
        assert_eq!(scaled[(3, 3)], &m[(3, 3)] * int(256));
        assert_eq!(system_matrix(&prof, Case::Curve).unwrap(), scaled);
        let query = q(2, &[6], &[1, 0, 0, 0, 0, 0], &[], Case::Curve);
        let th = theta_vector(&query).unwrap();
        assert_eq!(th[0], int(384));
        assert!(th[1..].iter().all(|x| *x == int(128)));
        assert_eq!(
            invariant_form(&query).unwrap().to_string(),
            "384*c1 + 128*c2 + 128*c3 + 128*c4 + 128*c5 + 128*c6"
        );
    }

    #[test]
    fn singular_when_a_vanishes() {
        let prof = p(2, &[4]);
        let a = matrix_parameter(&prof, Case::Curve);
        assert!(a.is_zero());
        assert!(build_matrix_a(&prof, Case::Curve, &a).det().unwrap().is_zero());
        let input = HodgeInput::new(&prof, vec![int(1); 4]).unwrap();
        assert!(matches!(
            solve_for_c(&prof, Case::Curve, &input),
            Err(Error::Singular(_))
        ));
    }

    #[test]
    fn base_query_passes_gamma_through() {
        let query = q(3, &[3, 0], &[0, 0, 0], &[], Case::Curve);
        let input = HodgeInput::new(&query.profile, vec![rat(1, 3); 3]).unwrap();
        assert_eq!(evaluate_invariant(&query, &input).unwrap(), rat(1, 3));
    }

    #[test]
    fn distinguished_queries_return_gamma() {
        for (prof, case) in [
            (p(2, &[6]), Case::Curve),
            (p(3, &[5, 2]), Case::Curve),
            (p(3, &[4, 1]), Case::Curve),
            (p(3, &[6, 0]), Case::Surface),
            (p(5, &[5, 0, 0, 0]), Case::Surface),
        ] {
            let gamma: Vec<Rational> = (1..=prof.total() as i64).map(|j| rat(j * j - 3, j + 1)).collect();
            let input = HodgeInput::new(&prof, gamma.clone()).unwrap();
            for j in 1..=prof.total() {
                let dq = distinguished_query(&prof, case, j).unwrap();
                assert!(dq.satisfies_dimension());
                assert_eq!(evaluate_invariant(&dq, &input).unwrap(), gamma[j - 1]);
            }
        }
    }

    #[test]
    fn recursion_vanishes_for_both_cases() {
        let c = CoefficientVector((0..8).map(|j| rat(2 * j + 1, j + 3)).collect());
        for (n, case) in [
            (2, Case::Curve),
            (3, Case::Curve),
            (3, Case::Surface),
            (5, Case::Surface),
        ] {
            for prof in admissible_profiles(n, 5) {
                let cv = CoefficientVector(c.0[..prof.total()].to_vec());
                for plain in 0..=2 {
                    for k in 1..=2 {
                        for query in recursion_queries(&prof, case, plain, k) {
                            match recursion_residual(&query, k, &cv) {
                                Ok(r) => assert!(r.is_zero(), "{query:?} k={k}"),
                                Err(Error::Degenerate(_)) => {}
                                Err(e) => panic!("{e}"),
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn factored_residual_matches_direct_assembly() {
        for (n, case) in [
            (2, Case::Curve),
            (3, Case::Curve),
            (3, Case::Surface),
            (5, Case::Surface),
        ] {
            for prof in admissible_profiles(n, 5) {
                for plain in 0..=2 {
                    for k in 1..=3 {
                        for query in recursion_queries(&prof, case, plain, k) {
                            let fast = recursion_residual_form(&query, k);
                            let slow = recursion_residual_form_direct(&query, k);
                            let kernel = ResidualKernel::new(n, case, k, 8).unwrap().form(&query);
                            match (fast, slow) {
                                (Ok(a), Ok(b)) => {
                                    assert_eq!(a, b, "{query:?} k={k}");
                                    assert_eq!(kernel.unwrap(), b, "{query:?} k={k}");
                                }
                                (Err(_), Err(_)) => {}
                                (a, b) => panic!("{query:?}: {a:?} vs {b:?}"),
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn displayed_surface_normalization_breaks_the_recursion() {
        // one plain point: the displayed Θ is off by 2 between n and n+1
        let query = q(3, &[3, 0], &[0, 0, 0], &[1], Case::Surface);
        let base = q(3, &[3, 0], &[0, 0, 0], &[], Case::Surface);
        let r = 1;
        let printed_ratio = theta_as_displayed(&query, r).unwrap() / theta_as_displayed(&base, r).unwrap();
        let ratio = theta(&query, r).unwrap() / theta(&base, r).unwrap();
        assert_eq!(printed_ratio, ratio * int(2));
    }

    #[test]
    fn determinant_law_small() {
        for n in 2..=4 {
            for prof in admissible_profiles(n, 5) {
                for case in [Case::Curve, Case::Surface] {
                    let a = matrix_parameter(&prof, case);
                    let m = build_matrix_a(&prof, case, &a);
                    assert_eq!(m.det().unwrap(), determinant_formula(&prof, case, &a));
                }
            }
        }
    }
}
