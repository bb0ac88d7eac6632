//! Closed-form metric dimensions and general bounds for `C(n, ±{1..t})`.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("bounds need t >= 2, got t = {0}")]
    StepTooSmall(usize),
    #[error("n = {n} < 2t + 2 = {}: C(n, ±{{1..{t}}}) is complete", 2 * t + 2)]
    CompleteRange { n: usize, t: usize },
}

/// Which general bound fired.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum BoundRule {
    /// `dim >= t` for `n >= 2t + 2`.
    WindowLower,
    /// `dim >= t + 1` for `n = 2kt + r`, `k >= 0`, `t + 2 <= r <= 2t + 1`.
    ResidueLower { k: usize, r: usize },
    /// `dim <= t + p` for even `t >= 4` and `n = 2kt + t + 2p`.
    EvenStepUpper { k: usize, p: usize },
    /// `dim <= t + 1` for `n = 2kt + r`, `k >= 1`, `2 <= r <= t + 2`.
    SmallResidueUpper { k: usize, r: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub lower: usize,
    pub upper: Option<usize>,
    pub provenance: Vec<BoundRule>,
}

/// Metric dimension of `C(n, ±{1..t})` where a closed form is known.
///
/// * `t = 2`, `n >= 6`: 4 if `n ≡ 1 (mod 4)`, else 3.
/// * `t = 3`, `n >= 8`: 5 if `n ≡ 1 (mod 6)`, else 4.
/// * `t = 4`: 4 for `n` in `{5, 11, 19}`; for `n >= 10`, 4 when `n ≡ 4`,
///   5 when `n ≡ ±2, ±3`, and 6 when `n ≡ 0, ±1 (mod 8)`.
///
/// `None` elsewhere. In particular `t = 4`, `n` in `6..=9` is left to the
/// exact solver: those graphs are complete (dimension `n - 1`) and the
/// residue rule does not describe them.
pub fn formula_dim(n: usize, t: usize) -> Option<usize> {
    match t {
        2 if n >= 6 => Some(if n % 4 == 1 { 4 } else { 3 }),
        3 if n >= 8 => Some(if n % 6 == 1 { 5 } else { 4 }),
        4 if matches!(n, 5 | 11 | 19) => Some(4),
        4 if n >= 10 => Some(t4_residue_rule(n)),
        _ => None,
    }
}

fn t4_residue_rule(n: usize) -> usize {
    match n % 8 {
        4 => 4,
        2 | 3 | 5 | 6 => 5,
        _ => 6,
    }
}

/// The `t = 4` residue rule applied to every `n >= 6` outside `{11, 19}`,
/// exactly as the closed form is usually stated. Differs from the truth at
/// `n = 8, 9`; kept so reports can flag that divergence.
pub fn literal_t4_statement(n: usize) -> Option<usize> {
    match n {
        5 | 11 | 19 => Some(4),
        n if n >= 6 => Some(t4_residue_rule(n)),
        _ => None,
    }
}

/// Combines every general bound applicable to `C(n, ±{1..t})`.
pub fn known_bounds(n: usize, t: usize) -> Result<BoundsReport, BoundsError> {
    if t < 2 {
        return Err(BoundsError::StepTooSmall(t));
    }
    if n < 2 * t + 2 {
        return Err(BoundsError::CompleteRange { n, t });
    }
    let period = 2 * t;
    let mut provenance = vec![BoundRule::WindowLower];
    let mut lower = t;
    let mut upper: Option<usize> = None;
    let tighten = |bound: usize, upper: &mut Option<usize>| {
        *upper = Some(upper.map_or(bound, |u| u.min(bound)));
    };

    for k in 0..=n / period {
        let r = n - k * period;
        if (t + 2..=2 * t + 1).contains(&r) {
            lower = lower.max(t + 1);
            provenance.push(BoundRule::ResidueLower { k, r });
        }
        if k >= 1 && (2..=t + 2).contains(&r) {
            tighten(t + 1, &mut upper);
            provenance.push(BoundRule::SmallResidueUpper { k, r });
        }
    }

    if t.is_multiple_of(2) && t >= 4 {
        for k in 0..=n / period {
            let rest = n - k * period;
            if rest >= t && (rest - t).is_multiple_of(2) {
                let p = (rest - t) / 2;
                tighten(t + p, &mut upper);
                provenance.push(BoundRule::EvenStepUpper { k, p });
            }
        }
    }

    Ok(BoundsReport {
        lower,
        upper,
        provenance,
    })
}
