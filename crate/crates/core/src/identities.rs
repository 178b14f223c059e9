//! Two-class identities: diagonal conditions on matrix triplets, the
//! structural families that satisfy them, the coupled system for `(g₀, g₁)`,
//! the cubic satisfied by their common value and its radical closed forms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::genfun::{solve_genfun, GenFunError};
use crate::kernel::{SpecError, SubshiftSpec};
use crate::matrix::IntMatrix;
use crate::series::{rat, RationalSeries};

/// Three 2×2 matrices `(A⁻, A, A⁺)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Triplet {
    #[serde(rename = "Aminus")]
    pub a_minus: IntMatrix,
    #[serde(rename = "A")]
    pub a: IntMatrix,
    #[serde(rename = "Aplus")]
    pub a_plus: IntMatrix,
}

impl Triplet {
    pub fn new(a_minus: IntMatrix, a: IntMatrix, a_plus: IntMatrix) -> Self {
        assert!(a_minus.dim() == 2 && a.dim() == 2 && a_plus.dim() == 2, "triplets are 2x2");
        Triplet { a_minus, a, a_plus }
    }

    pub fn m2(a_minus: [[i64; 2]; 2], a: [[i64; 2]; 2], a_plus: [[i64; 2]; 2]) -> Self {
        Triplet::new(IntMatrix::m2(a_minus), IntMatrix::m2(a), IntMatrix::m2(a_plus))
    }

    pub fn ones() -> Self {
        let j = IntMatrix::constant(2, 1);
        Triplet::new(j.clone(), j.clone(), j)
    }

    /// The 0-1 triplet whose twelve entries are the bits of `index` (`index < 4096`).
    pub fn from_bits(index: u16) -> Self {
        assert!(index < 4096);
        let bit = |k: u16| i64::from((index >> k) & 1);
        let mat = |base: u16| IntMatrix::m2([[bit(base + 3), bit(base + 2)], [bit(base + 1), bit(base)]]);
        Triplet::new(mat(8), mat(4), mat(0))
    }

    /// All 4096 0-1 triplets.
    pub fn all_binary() -> impl Iterator<Item = Triplet> {
        (0..4096u16).map(Triplet::from_bits)
    }

    /// Random triplet with entries in `[0, max_entry]`.
    pub fn random<R: Rng>(rng: &mut R, max_entry: i64) -> Self {
        let mut mat = || IntMatrix::m2([[0; 2]; 2].map(|r| r.map(|_| rng.gen_range(0..=max_entry))));
        let a_minus = mat();
        let a = mat();
        let a_plus = mat();
        Triplet::new(a_minus, a, a_plus)
    }

    pub fn to_spec(&self, m: usize) -> Result<SubshiftSpec, SpecError> {
        SubshiftSpec::new(vec![m, m], self.a_minus.clone(), self.a.clone(), self.a_plus.clone())
    }

    pub fn max_entry(&self) -> i64 {
        self.a_minus.max_entry().max(self.a.max_entry()).max(self.a_plus.max_entry())
    }

    /// `A⁻ Aᵏ A⁺`.
    pub fn sandwich(&self, k: u32) -> IntMatrix {
        self.a_minus.mul(&self.a.pow(k)).mul(&self.a_plus)
    }
}

impl std::fmt::Display for Triplet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.a_minus, self.a, self.a_plus)
    }
}

fn diagonal_balanced(m: &IntMatrix) -> bool {
    m.get(0, 0) == m.get(1, 1)
}

/// Whether `(A⁻A⁺)₀₀ = (A⁻A⁺)₁₁` and `(A⁻AA⁺)₀₀ = (A⁻AA⁺)₁₁`.
pub fn diag_conditions(t: &Triplet) -> (bool, bool) {
    (diagonal_balanced(&t.sandwich(0)), diagonal_balanced(&t.sandwich(1)))
}

/// First `k` in `1..=k_max` with `(A⁻AᵏA⁺)₀₀ ≠ (A⁻AᵏA⁺)₁₁`, with the two entries.
pub fn first_unbalanced_power(t: &Triplet, k_max: u32) -> Option<(u32, i64, i64)> {
    let mut left = t.a_minus.mul(&t.a);
    for k in 1..=k_max {
        let s = left.mul(&t.a_plus);
        if !diagonal_balanced(&s) {
            return Some((k, s.get(0, 0), s.get(1, 1)));
        }
        left = left.mul(&t.a);
    }
    None
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct DiagonalReport {
    pub triplet: Triplet,
    /// False when the diagonal conditions do not hold; nothing is asserted then.
    pub applicable: bool,
    pub k_max: u32,
    /// `(k, (A⁻AᵏA⁺)₀₀, (A⁻AᵏA⁺)₁₁)` at the first failing power.
    pub first_failure: Option<(u32, i64, i64)>,
}

impl DiagonalReport {
    pub fn holds(&self) -> bool {
        !self.applicable || self.first_failure.is_none()
    }
}

/// Checks the balanced-diagonal identity for all powers up to `k_max`.
pub fn verify_diagonal(t: &Triplet, k_max: u32) -> DiagonalReport {
    let applicable = diag_conditions(t) == (true, true);
    let first_failure = if applicable { first_unbalanced_power(t, k_max) } else { None };
    DiagonalReport { triplet: t.clone(), applicable, k_max, first_failure }
}

/// Structural forms of triplets with balanced diagonals.
///
/// The first three are sufficient for the identity. The two `Loose*`
/// variants are weaker forms kept for comparison; they are not
/// sufficient and [`validate_family_form`] finds counterexamples to both.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum FamilyForm {
    /// All three matrices of the form `[[a, b], [b, a]]`.
    Star,
    /// `A⁻` with equal rows, `A` arbitrary, `A⁺` with equal columns.
    StarStar,
    /// `A⁻ = [[b0, b1], [b2, b3]]`, `A` symmetric, `A⁺ = [[b2, b0], [b3, b1]]`.
    StarStarStar,
    /// `A⁻`, `A` of the form `[[a, b], [b, a]]`, `A⁺` with equal rows.
    LooseStar,
    /// `A⁻` with equal rows, `A` arbitrary, `A⁺` of the form `[[a, b], [b, a]]`.
    LooseStarStar,
}

impl FamilyForm {
    pub const VALIDATED: [FamilyForm; 3] = [FamilyForm::Star, FamilyForm::StarStar, FamilyForm::StarStarStar];
    pub const ALL: [FamilyForm; 5] = [
        FamilyForm::Star,
        FamilyForm::StarStar,
        FamilyForm::StarStarStar,
        FamilyForm::LooseStar,
        FamilyForm::LooseStarStar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyForm::Star => "star",
            FamilyForm::StarStar => "star2",
            FamilyForm::StarStarStar => "star3",
            FamilyForm::LooseStar => "loose-star",
            FamilyForm::LooseStarStar => "loose-star2",
        }
    }

    pub fn contains(self, t: &Triplet) -> bool {
        let (am, a, ap) = (&t.a_minus, &t.a, &t.a_plus);
        match self {
            FamilyForm::Star => circulant(am) && circulant(a) && circulant(ap),
            FamilyForm::StarStar => equal_rows(am) && equal_cols(ap),
            FamilyForm::StarStarStar => {
                a.get(0, 1) == a.get(1, 0)
                    && ap.get(0, 0) == am.get(1, 0)
                    && ap.get(0, 1) == am.get(0, 0)
                    && ap.get(1, 0) == am.get(1, 1)
                    && ap.get(1, 1) == am.get(0, 1)
            }
            FamilyForm::LooseStar => circulant(am) && circulant(a) && equal_rows(ap),
            FamilyForm::LooseStarStar => equal_rows(am) && circulant(ap),
        }
    }

    /// A random member with entries in `[0, max_entry]`.
    pub fn sample<R: Rng>(self, rng: &mut R, max_entry: i64) -> Triplet {
        let mut v = || rng.gen_range(0..=max_entry);
        let mut circ = || {
            let (x, y) = (v(), v());
            [[x, y], [y, x]]
        };
        let (c1, c2, c3) = (circ(), circ(), circ());
        let mut v = || rng.gen_range(0..=max_entry);
        let free = [[v(), v()], [v(), v()]];
        let rows = {
            let (x, y) = (v(), v());
            [[x, y], [x, y]]
        };
        let cols = {
            let (x, y) = (v(), v());
            [[x, x], [y, y]]
        };
        let sym = {
            let (x, y, w) = (v(), v(), v());
            [[x, y], [y, w]]
        };
        match self {
            FamilyForm::Star => Triplet::m2(c1, c2, c3),
            FamilyForm::StarStar => Triplet::m2(rows, free, cols),
            FamilyForm::StarStarStar => {
                let b = free;
                Triplet::m2(b, sym, [[b[1][0], b[0][0]], [b[1][1], b[0][1]]])
            }
            FamilyForm::LooseStar => Triplet::m2(c1, c2, rows),
            FamilyForm::LooseStarStar => Triplet::m2(rows, free, c3),
        }
    }
}

fn circulant(m: &IntMatrix) -> bool {
    m.get(0, 0) == m.get(1, 1) && m.get(0, 1) == m.get(1, 0)
}

fn equal_rows(m: &IntMatrix) -> bool {
    m.get(0, 0) == m.get(1, 0) && m.get(0, 1) == m.get(1, 1)
}

fn equal_cols(m: &IntMatrix) -> bool {
    m.get(0, 0) == m.get(0, 1) && m.get(1, 0) == m.get(1, 1)
}

/// Validated families containing `t`; empty when it is in none of them.
pub fn family_of(t: &Triplet) -> Vec<FamilyForm> {
    FamilyForm::VALIDATED.into_iter().filter(|f| f.contains(t)).collect()
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct FamilyCounterexample {
    pub triplet: Triplet,
    pub k: u32,
    pub left: i64,
    pub right: i64,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct FamilyReport {
    pub form: FamilyForm,
    pub trials: usize,
    pub k_max: u32,
    pub failures: usize,
    /// The first counterexample drawn, if any.
    pub counterexample: Option<FamilyCounterexample>,
}

impl FamilyReport {
    pub fn holds(&self) -> bool {
        self.failures == 0
    }
}

/// Checks one triplet against the identity for `1 ≤ k ≤ k_max`.
pub fn check_family_instance(t: &Triplet, k_max: u32) -> Option<FamilyCounterexample> {
    first_unbalanced_power(t, k_max).map(|(k, left, right)| FamilyCounterexample { triplet: t.clone(), k, left, right })
}

/// Draws `trials` random members of `form` (entries in `[0, 3]`) and checks
/// the identity on each.
pub fn validate_family_form(form: FamilyForm, trials: usize, k_max: u32, seed: u64) -> FamilyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    let mut counterexample = None;
    for _ in 0..trials {
        let t = form.sample(&mut rng, 3);
        debug_assert!(form.contains(&t));
        if let Some(cx) = check_family_instance(&t, k_max) {
            failures += 1;
            counterexample.get_or_insert(cx);
        }
    }
    FamilyReport { form, trials, k_max, failures, counterexample }
}

/// Solves the two-class system
///
/// `g_δ = z²{M + [A⁻(δ,δ)(1 − g_δ′A(δ′,δ′))g_δA⁺(δ,δ) + A⁻(δ,δ′)g_δ′A(δ′,δ)g_δA⁺(δ,δ)
///        + A⁻(δ,δ)g_δA(δ,δ′)g_δ′A⁺(δ′,δ) + A⁻(δ,δ′)(1 − g_δA(δ,δ))g_δ′A⁺(δ′,δ)] / Δ}`
///
/// with `Δ = 1 − A(0,0)g₀ − A(1,1)g₁ + g₀g₁ det A`, degree by degree.
/// Entries may be any integers; `order` must be even and at least 2.
pub fn solve_coupled_g(t: &Triplet, m: i64, order: usize) -> Result<(RationalSeries, RationalSeries), GenFunError> {
    if order < 2 || order % 2 != 0 {
        return Err(GenFunError::InvalidOrder(order));
    }
    let mut g = [RationalSeries::zero(order), RationalSeries::zero(order)];
    for step in 1..=order / 2 {
        let cur = 2 * step;
        let g0 = g[0].truncate(cur);
        let g1 = g[1].truncate(cur);
        let next = coupled_map(t, m, &g0, &g1)?;
        for (gk, rk) in g.iter_mut().zip(&next) {
            for d in 0..=cur {
                gk.set_coeff(d, rk.coeff(d).clone());
            }
        }
    }
    let [g0, g1] = g;
    Ok((g0, g1))
}

fn coupled_map(t: &Triplet, m: i64, g0: &RationalSeries, g1: &RationalSeries) -> Result<[RationalSeries; 2], GenFunError> {
    let order = g0.order();
    let (am, a, ap) = (&t.a_minus, &t.a, &t.a_plus);
    let one = RationalSeries::one(order);
    let g01 = g0 * g1;
    let delta = &(&(&one - &g0.scale_int(a.get(0, 0))) - &g1.scale_int(a.get(1, 1))) + &g01.scale_int(a.det2());
    let inv = delta.inverse()?;
    let gs = [g0, g1];
    let mut out = [RationalSeries::zero(order), RationalSeries::zero(order)];
    for d in 0..2 {
        let e = 1 - d;
        let (gd, ge) = (gs[d], gs[e]);
        let t1 = (&(gd - &g01.scale_int(a.get(e, e)))).scale_int(am.get(d, d) * ap.get(d, d));
        let t2 = g01.scale_int(am.get(d, e) * a.get(e, d) * ap.get(d, d));
        let t3 = g01.scale_int(am.get(d, d) * a.get(d, e) * ap.get(e, d));
        let t4 = (&(ge - &g01.scale_int(a.get(d, d)))).scale_int(am.get(d, e) * ap.get(e, d));
        let bracket = &(&(&t1 + &t2) + &t3) + &t4;
        let inside = &RationalSeries::constant(rat(m), order) + &(&bracket * &inv);
        out[d] = inside.shift(2);
    }
    Ok(out)
}

/// Coefficients of the cubic `det A·g³ + B g² + C g + D = 0` satisfied by the
/// common generating function when both diagonal conditions hold.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CubicData {
    pub m: i64,
    pub tr_a: i64,
    pub det_a: i64,
    /// Common diagonal value of `A⁻A⁺`.
    pub eta4: i64,
    /// Common diagonal value of `A⁻AA⁺`.
    pub eta6: i64,
    pub b: RationalSeries,
    pub c: RationalSeries,
    pub d: RationalSeries,
    /// `B² − 3C det A`.
    pub i_res: RationalSeries,
    /// `9BC det A − 27D det A² − 2B³`.
    pub j_res: RationalSeries,
}

impl CubicData {
    /// Uses the `(0,0)` diagonal entries for `η(4)` and `η(6)`.
    pub fn new(t: &Triplet, m: i64, order: usize) -> Self {
        let tr_a = t.a.trace();
        let det_a = t.a.det2();
        let eta4 = t.sandwich(0).get(0, 0);
        let eta6 = t.sandwich(1).get(0, 0);
        let b = RationalSeries::from_i64s(&[-tr_a, 0, -(m * det_a + eta6 - eta4 * tr_a)], order);
        let c = RationalSeries::from_i64s(&[1, 0, m * tr_a - eta4], order);
        let d = RationalSeries::from_i64s(&[0, 0, -m], order);
        let i_res = &(&b * &b) - &c.scale_int(3 * det_a);
        let b3 = &(&b * &b) * &b;
        let j_res = &(&(&b * &c).scale_int(9 * det_a) - &d.scale_int(27 * det_a * det_a)) - &b3.scale_int(2);
        CubicData { m, tr_a, det_a, eta4, eta6, b, c, d, i_res, j_res }
    }

    /// `det A·g³ + B g² + C g + D`.
    pub fn residual(&self, g: &RationalSeries) -> RationalSeries {
        let g2 = g * g;
        let g3 = &g2 * g;
        &(&(&g3.scale_int(self.det_a) + &(&self.b * &g2)) + &(&self.c * g)) + &self.d
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CubicReport {
    pub triplet: Triplet,
    pub m: i64,
    pub order: usize,
    pub diag: (bool, bool),
    /// `g₀(4) = g₁(4)` and `g₀(6) = g₁(6)`.
    pub low_coefficients_agree: bool,
    /// Whether the low coefficients agree exactly when both diagonal conditions hold.
    pub equivalence_holds: bool,
    /// `g₀ = g₁` through the order; `None` unless the diagonal conditions hold.
    pub series_equal: Option<bool>,
    /// Cubic residual vanishes; `None` unless the diagonal conditions hold.
    pub residual_vanishes: Option<bool>,
    pub cubic: Option<CubicData>,
    pub g0: RationalSeries,
    pub g1: RationalSeries,
}

impl CubicReport {
    pub fn ok(&self) -> bool {
        self.equivalence_holds && self.series_equal != Some(false) && self.residual_vanishes != Some(false)
    }
}

pub fn verify_cubic(t: &Triplet, m: i64, order: usize) -> Result<CubicReport, GenFunError> {
    let order = order.max(6);
    let (g0, g1) = solve_coupled_g(t, m, order)?;
    let diag = diag_conditions(t);
    let both = diag == (true, true);
    let low_coefficients_agree = g0.coeff(4) == g1.coeff(4) && g0.coeff(6) == g1.coeff(6);
    let (series_equal, residual_vanishes, cubic) = if both {
        let cubic = CubicData::new(t, m, order);
        (Some(g0 == g1), Some(cubic.residual(&g0).is_zero()), Some(cubic))
    } else {
        (None, None, None)
    };
    Ok(CubicReport {
        triplet: t.clone(),
        m,
        order,
        diag,
        low_coefficients_agree,
        equivalence_holds: low_coefficients_agree == both,
        series_equal,
        residual_vanishes,
        cubic,
        g0,
        g1,
    })
}

/// Whether [`solve_coupled_g`] reproduces the general solver on `t` with `M₀ = M₁ = m`.
pub fn coupled_matches_genfun(t: &Triplet, m: usize, order: usize) -> Result<bool, GenFunError> {
    let spec = t.to_spec(m).map_err(|e| GenFunError::InvalidParams(e.to_string()))?;
    let sol = solve_genfun(&spec, order)?;
    let (g0, g1) = solve_coupled_g(t, m as i64, order)?;
    Ok(sol.g[0] == g0 && sol.g[1] == g1)
}

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize)]
pub struct CubicSweep {
    pub checked: usize,
    /// Triplets satisfying both diagonal conditions.
    pub balanced: usize,
    pub failures: Vec<Triplet>,
}

/// Runs [`verify_cubic`] on all 4096 0-1 triplets with `M = 1`.
pub fn sweep_cubic(order: usize) -> Result<CubicSweep, GenFunError> {
    let mut out = CubicSweep::default();
    for t in Triplet::all_binary() {
        let r = verify_cubic(&t, 1, order)?;
        out.checked += 1;
        if r.diag == (true, true) {
            out.balanced += 1;
        }
        if !r.ok() {
            out.failures.push(t);
        }
    }
    Ok(out)
}

/// Which radical formula produced a closed-form value.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum ClosedFormBranch {
    /// `det A = 0`: root of `B g² + C g + D` vanishing at `z = 0`.
    Quadratic,
    /// One real root: Cardano with real cube roots.
    Cardano,
    /// Three real roots: trigonometric form, with the branch index `k` of
    /// `2√I cos((arccos(J / 2I√I) + 2πk) / 3)`.
    Trigonometric { k: u8 },
}

#[derive(Clone, Copy, PartialEq, Debug, Serialize)]
pub struct ClosedFormValue {
    pub value: f64,
    pub branch: ClosedFormBranch,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClosedFormError {
    #[error("negative radicand {radicand} at z0 = {z0} where a real value is required")]
    NegativeRadicand { z0: f64, radicand: f64 },
    #[error("degenerate cubic at z0 = {z0}")]
    Degenerate { z0: f64 },
}

/// Evaluates the common generating function at `z0` from the radical formulas.
///
/// For `det A ≠ 0` the cubic is depressed to `t³ − 3I t − J = 0` with
/// `g = (t − B) / (3 det A)`. The sign of `J² − 4I³` decides between one real
/// root (Cardano) and three (trigonometric form); among three the root with
/// the smallest `|g|` is taken, being the one that tends to `g(0) = 0`.
pub fn closed_form_eval(c: &CubicData, z0: f64) -> Result<ClosedFormValue, ClosedFormError> {
    let b = c.b.eval_f64(z0);
    let cc = c.c.eval_f64(z0);
    let d = c.d.eval_f64(z0);
    if c.det_a == 0 {
        let disc = cc * cc - 4.0 * b * d;
        if disc < 0.0 {
            return Err(ClosedFormError::NegativeRadicand { z0, radicand: disc });
        }
        // (−C + √disc) / 2B, rewritten so that B = 0 is harmless
        let den = cc + disc.sqrt();
        if den == 0.0 {
            return Err(ClosedFormError::Degenerate { z0 });
        }
        return Ok(ClosedFormValue { value: -2.0 * d / den, branch: ClosedFormBranch::Quadratic });
    }
    let a3 = 3.0 * c.det_a as f64;
    let i = c.i_res.eval_f64(z0);
    let j = c.j_res.eval_f64(z0);
    let disc = j * j - 4.0 * i * i * i;
    if disc >= 0.0 {
        let s = disc.sqrt();
        let t = ((j + s) / 2.0).cbrt() + ((j - s) / 2.0).cbrt();
        return Ok(ClosedFormValue { value: (t - b) / a3, branch: ClosedFormBranch::Cardano });
    }
    // three real roots, so I > 0
    let r = i.sqrt();
    let theta = (j / (2.0 * i * r)).clamp(-1.0, 1.0).acos();
    let (k, value) = (0u8..3)
        .map(|k| {
            let t = 2.0 * r * ((theta + 2.0 * std::f64::consts::PI * f64::from(k)) / 3.0).cos();
            (k, (t - b) / a3)
        })
        .min_by(|x, y| x.1.abs().total_cmp(&y.1.abs()))
        .expect("three candidates");
    Ok(ClosedFormValue { value, branch: ClosedFormBranch::Trigonometric { k } })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ones() -> IntMatrix {
        IntMatrix::constant(2, 1)
    }

    #[test]
    fn diag_condition_examples() {
        let t = Triplet::new(ones(), ones(), IntMatrix::identity(2));
        assert_eq!(diag_conditions(&t), (true, true));
        let listed = Triplet::m2([[1, 1], [1, 0]], [[1, 1], [1, 0]], [[0, 1], [1, 0]]);
        assert_eq!(diag_conditions(&listed), (true, true));
        assert_eq!(listed.sandwich(0).get(0, 0), 1);
        assert_eq!(listed.sandwich(1).get(0, 0), 1);
        let lopsided = Triplet::m2([[1, 0], [0, 0]], [[1, 0], [0, 1]], [[1, 0], [0, 1]]);
        assert_eq!(diag_conditions(&lopsided), (false, false));
    }

    #[test]
    fn diagonal_examples() {
        let t = Triplet::m2([[1, 0], [0, 1]], [[1, 2], [3, 1]], [[1, 0], [0, 1]]);
        let r = verify_diagonal(&t, 3);
        assert!(r.applicable && r.holds());
        assert_eq!(t.sandwich(3).get(0, 0), 19);
        let zero = Triplet::m2([[0; 2]; 2], [[3, 1], [2, 0]], [[0; 2]; 2]);
        assert!(verify_diagonal(&zero, 12).holds());
        let listed = Triplet::m2([[1, 1], [1, 0]], [[1, 1], [1, 0]], [[0, 1], [1, 0]]);
        assert!(verify_diagonal(&listed, 12).holds());
        let inapplicable = verify_diagonal(&Triplet::m2([[1, 0], [0, 0]], [[1, 1], [1, 1]], [[1, 1], [1, 1]]), 4);
        assert!(!inapplicable.applicable);
    }

    #[test]
    fn family_membership() {
        let all = family_of(&Triplet::ones());
        assert_eq!(all, FamilyForm::VALIDATED.to_vec());
        let t3 = Triplet::m2([[1, 2], [3, 4]], [[1, 5], [5, 2]], [[3, 1], [4, 2]]);
        assert!(FamilyForm::StarStarStar.contains(&t3));
        assert!(check_family_instance(&t3, 12).is_none());
    }

    #[test]
    fn loose_forms_have_counterexamples() {
        let t = Triplet::m2([[1, 0], [0, 1]], [[1, 0], [0, 1]], [[1, 0], [1, 0]]);
        assert!(FamilyForm::LooseStar.contains(&t));
        let cx = check_family_instance(&t, 12).unwrap();
        assert_eq!((cx.k, cx.left, cx.right), (1, 1, 0));
        let t2 = Triplet::m2([[1, 0], [1, 0]], [[1, 0], [0, 1]], [[1, 0], [0, 1]]);
        assert!(FamilyForm::LooseStarStar.contains(&t2));
        assert!(check_family_instance(&t2, 12).is_some());
    }

    #[test]
    fn validated_families_survive_random_draws() {
        for form in FamilyForm::VALIDATED {
            let r = validate_family_form(form, 200, 12, 7);
            assert!(r.holds(), "{form:?}: {:?}", r.counterexample);
        }
        for form in [FamilyForm::LooseStar, FamilyForm::LooseStarStar] {
            assert!(!validate_family_form(form, 200, 12, 7).holds());
        }
    }

    #[test]
    fn coupled_examples() {
        let (g0, g1) = solve_coupled_g(&Triplet::ones(), 1, 8).unwrap();
        assert_eq!(g0, RationalSeries::from_i64s(&[0, 0, 1, 0, 2, 0, 8, 0, 40], 8));
        assert_eq!(g0, g1);
        let t = Triplet::new(ones(), ones(), IntMatrix::identity(2));
        let (g0, g1) = solve_coupled_g(&t, 1, 8).unwrap();
        assert_eq!(g0, g1);
        assert_eq!(g0.coeff(4), &rat(1));
        // 2g² − (1 + z²)g + z² = 0
        let res = &(&(&g0 * &g0).scale_int(2) - &(&RationalSeries::from_i64s(&[1, 0, 1], 8) * &g0))
            + &RationalSeries::monomial(rat(1), 2, 8);
        assert!(res.is_zero());
        let lopsided = Triplet::m2([[1, 0], [0, 0]], [[1, 1], [1, 1]], [[1, 1], [1, 1]]);
        let (g0, g1) = solve_coupled_g(&lopsided, 1, 6).unwrap();
        assert_ne!(g0.coeff(4), g1.coeff(4));
    }

    #[test]
    fn coupled_agrees_with_general_solver() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let t = Triplet::random(&mut rng, 2);
            assert!(coupled_matches_genfun(&t, 2, 12).unwrap(), "{t}");
        }
    }

    #[test]
    fn cubic_for_ones_ones_identity() {
        let t = Triplet::new(ones(), ones(), IntMatrix::identity(2));
        let r = verify_cubic(&t, 1, 16).unwrap();
        assert!(r.ok());
        let c = r.cubic.unwrap();
        assert_eq!((c.eta4, c.eta6, c.det_a), (1, 2, 0));
        assert_eq!(c.b, RationalSeries::from_i64s(&[-2], 16));
        assert_eq!(c.c, RationalSeries::from_i64s(&[1, 0, 1], 16));
        assert_eq!(c.d, RationalSeries::from_i64s(&[0, 0, -1], 16));
    }

    #[test]
    fn all_ones_cubic_is_constant_case_quadratic() {
        let r = verify_cubic(&Triplet::ones(), 1, 16).unwrap();
        assert!(r.ok());
        let p = crate::genfun::ConstantParams { m: 1, k_minus: 1, k: 1, k_plus: 1, n: 2 };
        assert!(crate::genfun::constant_residual(&p, &r.g0).is_zero());
    }

    #[test]
    fn closed_form_quadratic_case() {
        let t = Triplet::new(ones(), ones(), IntMatrix::identity(2));
        let c = CubicData::new(&t, 1, 24);
        let z0: f64 = 0.1;
        let direct = (1.0 + z0 * z0 - (1.0 - 6.0 * z0 * z0 + z0.powi(4)).sqrt()) / 4.0;
        let v = closed_form_eval(&c, z0).unwrap();
        assert_eq!(v.branch, ClosedFormBranch::Quadratic);
        assert!((v.value - direct).abs() < 1e-15);
        let (g, _) = solve_coupled_g(&t, 1, 24).unwrap();
        assert!((v.value - g.eval_f64(z0)).abs() < 1e-10);
        assert_eq!(closed_form_eval(&c, 0.0).unwrap().value, 0.0);
    }

    #[test]
    fn closed_form_signed_example_uses_trig_or_cardano() {
        // χ_A has complex roots; entries are allowed to be negative here
        let t = Triplet::m2([[1, 0], [0, 1]], [[1, -1], [1, 1]], [[1, 0], [0, 1]]);
        let (g0, g1) = solve_coupled_g(&t, 1, 24).unwrap();
        assert_eq!(g0, g1);
        let c = CubicData::new(&t, 1, 24);
        assert!(c.residual(&g0).is_zero());
        for z0 in [0.0, 0.01, 0.05] {
            let v = closed_form_eval(&c, z0).unwrap();
            assert!((v.value - g0.eval_f64(z0)).abs() < 1e-10, "{z0}: {v:?}");
        }
    }

    #[test]
    fn bits_enumerate_distinct_triplets() {
        let set: std::collections::BTreeSet<Triplet> = Triplet::all_binary().collect();
        assert_eq!(set.len(), 4096);
        assert_eq!(Triplet::from_bits(4095), Triplet::ones());
    }
}
