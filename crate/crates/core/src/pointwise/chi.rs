use crate::frame::{Classify, Frame};
use crate::rational::Q;
use crate::rl::{RayFamily, Rl, Step};

use super::verdict::verdict_grid;
use super::PwError;

/// A strictly positive `χ` with `f₀ − χ` still above the family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiWitness<E> {
    pub chi: Step<E>,
    /// `b = ⋁_K k(r,∞)`.
    pub b: E,
    /// `a = f₀(s,∞) ∧ b*`, the support of `χ`.
    pub a: E,
    pub r: Q,
    pub s: Q,
    pub checks: Vec<(String, bool)>,
}

impl<E> ChiWitness<E> {
    pub fn valid(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

/// A default `s`: halfway from `r` to the next grid threshold above it
/// (or `r + 1` if there is none).
pub fn auto_s<F: Frame, K: RayFamily<F> + ?Sized>(rl: Rl<'_, F>, f0: &Step<F::Elem>, fam: &K, r: Q) -> Q {
    let mut ts = f0.thresholds().to_vec();
    ts.extend(fam.breakpoints(rl));
    ts.into_iter()
        .filter(|&t| t > r)
        .min()
        .map_or(r + Q::ONE, |t| Q::midpoint(r, t))
}

/// `χ(t,∞) = ⊤` for `t < 0`, `a` for `0 ≤ t < s − r`, `⊥` after.
///
/// On `a`, `f₀ > s` and `χ ≤ s − r`, so `f₀ − χ > r`, while every member is
/// at most `r` on `b* ≥ a`. Off `a`, `χ = 0`. The checks confirm `χ > 0` and
/// `f₀ − χ ≥ k` for every sampled member on the exact ray grid.
pub fn witness_chi<F, K>(rl: Rl<'_, F>, f0: &Step<F::Elem>, fam: &K, r: Q, s: Q) -> Result<ChiWitness<F::Elem>, PwError>
where
    F: Classify,
    K: RayFamily<F> + ?Sized,
{
    let fr = rl.frame();
    if !fr.classify().boolean {
        return Err(PwError::HypothesisFailed("frame is not boolean".into()));
    }
    if s <= r {
        return Err(PwError::HypothesisFailed(format!("need s > r, got r={r} s={s}")));
    }
    fam.validate(rl)?;
    let b = fam.ray_join(rl, r);
    let a = fr.meet(&rl.ray(f0, s), &fr.pseudocomplement(&b));
    if fr.is_bottom(&a) {
        return Err(PwError::HypothesisFailed(format!(
            "f0({s},inf) = {} is below b = {}",
            fr.render(&rl.ray(f0, s)),
            fr.render(&b)
        )));
    }
    let chi = rl.validate(vec![Q::ZERO, s - r], vec![fr.top(), a.clone(), fr.bottom()])?;

    let zero = rl.zero();
    let rest = rl.sub(f0, &chi);
    let mut checks = vec![
        ("chi>=0".to_string(), rl.leq(&zero, &chi)),
        ("chi!=0".to_string(), chi != zero),
    ];
    let grid = verdict_grid(rl, &rest, fam);
    let dominated = grid.iter().all(|&t| fr.leq(&fam.ray_join(rl, t), &rl.ray(&rest, t)));
    checks.push(("f0-chi>=K".to_string(), dominated));
    for (n, m) in fam.sample(rl).iter().enumerate() {
        if !rl.leq(m, &rest) {
            checks.push((format!("f0-chi>=k{n}"), false));
        }
    }
    Ok(ChiWitness {
        chi,
        b,
        a,
        r,
        s,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::{FiniteFrame, OmegaFrame, Poset};
    use crate::rational::q;
    use crate::rl::{ExplicitFamily, PrefixIndicators};

    #[test]
    fn b2_withheld_b() {
        let f = FiniteFrame::discrete("B2", ["a", "b"]);
        let rl = Rl::new(&f);
        let a = f.elem(&["a"]).unwrap();
        let b = f.elem(&["b"]).unwrap();
        let fam = ExplicitFamily::new(vec![rl.characteristic(&a).unwrap()]);
        let w = witness_chi(rl, &rl.one(), &fam, Q::ZERO, q(1, 2)).unwrap();
        assert_eq!(w.b, a);
        assert_eq!(w.a, b);
        assert_eq!(w.chi, rl.scale(q(1, 2), &rl.characteristic(&b).unwrap()));
        assert!(w.valid(), "{w:?}");
        assert_eq!(auto_s(rl, &rl.one(), &fam, Q::ZERO), q(1, 2));
        // s = 1 puts f₀(s,∞) at ⊥.
        assert!(matches!(
            witness_chi(rl, &rl.one(), &fam, Q::ZERO, Q::ONE),
            Err(PwError::HypothesisFailed(_))
        ));
    }

    #[test]
    fn pointwise_family_has_no_chi() {
        let f = FiniteFrame::discrete("B2", ["a", "b"]);
        let rl = Rl::new(&f);
        let fam = ExplicitFamily::new(vec![rl.one()]);
        assert!(matches!(
            witness_chi(rl, &rl.one(), &fam, Q::ZERO, q(1, 2)),
            Err(PwError::HypothesisFailed(_))
        ));
    }

    #[test]
    fn non_boolean_frames_are_refused() {
        let f = FiniteFrame::new("chain3", Poset::chain(["a", "b"])).unwrap();
        let rl = Rl::new(&f);
        let fam = ExplicitFamily::new(vec![rl.zero()]);
        assert!(witness_chi(rl, &rl.one(), &fam, Q::ZERO, q(1, 2)).is_err());
        let rl = Rl::new(&OmegaFrame);
        assert!(witness_chi(rl, &rl.one(), &PrefixIndicators, q(1, 2), q(3, 4)).is_err());
    }
}
