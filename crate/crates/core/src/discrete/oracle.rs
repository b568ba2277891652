use crate::frame::OmegaFrame;
use crate::pointwise::{check_pointwise_sup, PointwiseVerdict};
use crate::rational::Q;
use crate::rl::{ExplicitFamily, PrefixIndicators, RayFamily, Rl};

use super::sequence::EventuallyConstant;
use super::vector::{render_vec, DiscreteSpace, QVec};
use super::DiscreteError;

/// Coordinatewise verdict next to the frame-level verdict on the hats.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub coord_upper: bool,
    /// `f₀(p) = sup_K k(p)` at every point `p`.
    pub coord_pointwise: bool,
    /// First point where the coordinatewise sup differs from `f₀`.
    pub failing_point: Option<String>,
    pub frame_upper: bool,
    pub frame_pointwise: bool,
    pub failing_ray: Option<Q>,
    pub agree: bool,
}

fn report<E>(coord_upper: bool, failing_point: Option<String>, v: &PointwiseVerdict<E>) -> OracleReport {
    let coord_pointwise = coord_upper && failing_point.is_none();
    OracleReport {
        coord_upper,
        coord_pointwise,
        failing_point,
        frame_upper: v.is_upper_bound,
        frame_pointwise: v.is_pointwise,
        failing_ray: v.failing_ray(),
        agree: coord_upper == v.is_upper_bound && coord_pointwise == v.is_pointwise,
    }
}

/// On finite discrete `X`: compares `max_K k(x)` with `f₀(x)` and the verdict
/// of [`check_pointwise_sup`] on `f̂₀` and the hats. An empty family has no
/// coordinatewise sup, so it fails at the first point.
pub fn oracle_sup_check(sp: &DiscreteSpace, f0: &[Q], fam: &[QVec]) -> Result<OracleReport, DiscreteError> {
    sp.check(f0)?;
    for k in fam {
        sp.check(k)?;
    }
    let coord_upper = fam.iter().all(|k| k.iter().zip(f0).all(|(a, b)| a <= b));
    let failing_point = (0..sp.dim())
        .find(|&x| fam.iter().map(|k| k[x]).max() != Some(f0[x]))
        .map(|x| format!("x{}", x + 1));
    let hats = ExplicitFamily::new(fam.iter().map(|k| sp.hat(k)).collect());
    let v = check_pointwise_sup(sp.rl(), &sp.hat(f0), &hats)?;
    Ok(report(coord_upper, failing_point, &v))
}

/// A family of continuous functions on ω+1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OmegaFamily {
    Explicit(Vec<EventuallyConstant>),
    /// `{f_n : n ∈ ω}`.
    PrefixIndicators,
}

impl OmegaFamily {
    /// `sup_K k` at the natural `n` (`None` for ω) in closed form.
    fn coord_sup(&self, at: Option<usize>) -> Option<Q> {
        match self {
            OmegaFamily::Explicit(ks) => ks.iter().map(|k| at.map_or(k.at_omega(), |n| k.at(n))).max(),
            // Every natural lies in all but finitely many prefixes; ω in none.
            OmegaFamily::PrefixIndicators => Some(if at.is_some() { Q::ONE } else { Q::ZERO }),
        }
    }

    /// Past this index every member is at its tail.
    fn horizon(&self) -> usize {
        match self {
            OmegaFamily::Explicit(ks) => ks.iter().map(|k| k.prefix().len()).max().unwrap_or(0),
            OmegaFamily::PrefixIndicators => 0,
        }
    }
}

/// On ω+1: the coordinatewise sup is computed at every natural and at ω.
/// For the prefix indicators it is 1 on ω and 0 at ω, which is not
/// continuous; the frame verdict then reports the failure at the ray where
/// the point ω is missing.
pub fn oracle_sup_check_omega(f0: &EventuallyConstant, fam: &OmegaFamily) -> Result<OracleReport, DiscreteError> {
    let rl = Rl::new(&OmegaFrame);
    let horizon = fam.horizon().max(f0.prefix().len()) + 1;
    let coord_upper = match fam {
        OmegaFamily::Explicit(ks) => ks.iter().all(|k| k.leq(f0)),
        OmegaFamily::PrefixIndicators => (0..horizon).all(|n| f0.at(n) >= Q::ONE) && f0.at_omega() >= Q::ZERO,
    };
    let points = (0..horizon).map(Some).chain([None]);
    let failing_point = points
        .filter(|p| fam.coord_sup(*p) != Some(p.map_or(f0.at_omega(), |n| f0.at(n))))
        .map(|p| p.map_or("omega".to_string(), |n| n.to_string()))
        .next();
    let hat0 = f0.hat(rl);
    let v = match fam {
        OmegaFamily::Explicit(ks) => {
            check_pointwise_sup(rl, &hat0, &ExplicitFamily::new(ks.iter().map(|k| k.hat(rl)).collect()))?
        }
        OmegaFamily::PrefixIndicators => check_pointwise_sup(rl, &hat0, &PrefixIndicators)?,
    };
    Ok(report(coord_upper, failing_point, &v))
}

/// The members of the prefix-indicator family agree with the sequence hats.
pub fn prefix_indicators_match(count: usize) -> bool {
    let rl = Rl::new(&OmegaFrame);
    (0..count).all(|n| PrefixIndicators.member(rl, n) == Some(EventuallyConstant::prefix_indicator(n).hat(rl)))
}

/// `(x1=1,x2=0)`-style rendering for reports.
pub fn describe_family(fam: &[QVec]) -> String {
    let parts: Vec<String> = fam.iter().map(|k| render_vec(k)).collect();
    format!("{{{}}}", parts.join(" "))
}
