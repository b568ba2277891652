use crate::frame::Frame;
use crate::rational::Q;
use crate::rl::{cell_reps, ExplicitFamily, RayFamily, Rl, Step};

use super::PwError;

/// Outcome of comparing a candidate `f₀` with a family `K` ray by ray.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointwiseVerdict<E> {
    pub is_upper_bound: bool,
    pub is_pointwise: bool,
    /// Smallest failing grid representative, with `⋁_K k(r,∞)` and `f₀(r,∞)`.
    pub failing: Option<FailingRay<E>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FailingRay<E> {
    pub r: Q,
    pub lhs: E,
    pub rhs: E,
}

impl<E> PointwiseVerdict<E> {
    pub fn failing_ray(&self) -> Option<Q> {
        self.failing.as_ref().map(|f| f.r)
    }
}

/// Grid on which every ray of `f₀`, of the sampled members and of the family
/// oracle is constant cell by cell.
pub fn verdict_grid<F: Frame, K: RayFamily<F> + ?Sized>(rl: Rl<'_, F>, f0: &Step<F::Elem>, fam: &K) -> Vec<Q> {
    let mut ts = f0.thresholds().to_vec();
    ts.extend(fam.breakpoints(rl));
    for m in fam.sample(rl) {
        ts.extend_from_slice(m.thresholds());
    }
    ts.sort();
    ts.dedup();
    cell_reps(&ts)
}

/// `f₀` is the pointwise supremum of `K` iff `f₀(r,∞) = ⋁_K k(r,∞)` for all
/// `r`; it is an upper bound iff `⋁_K k(r,∞) ≤ f₀(r,∞)` for all `r`.
pub fn check_pointwise_sup<F: Frame, K: RayFamily<F> + ?Sized>(
    rl: Rl<'_, F>,
    f0: &Step<F::Elem>,
    fam: &K,
) -> Result<PointwiseVerdict<F::Elem>, PwError> {
    fam.validate(rl)?;
    let fr = rl.frame();
    let mut is_upper_bound = true;
    let mut failing = None;
    for r in verdict_grid(rl, f0, fam) {
        let lhs = fam.ray_join(rl, r);
        let rhs = rl.ray(f0, r);
        if !fr.leq(&lhs, &rhs) {
            is_upper_bound = false;
        }
        if lhs != rhs && failing.is_none() {
            failing = Some(FailingRay { r, lhs, rhs });
        }
    }
    Ok(PointwiseVerdict {
        is_upper_bound,
        is_pointwise: failing.is_none(),
        failing,
    })
}

/// Dual check with left rays: `f₀(−∞,r) = ⋁_K k(−∞,r)`. Lower bound iff
/// `⋁_K k(−∞,r) ≤ f₀(−∞,r)` everywhere.
pub fn check_pointwise_inf<F: Frame>(
    rl: Rl<'_, F>,
    f0: &Step<F::Elem>,
    fam: &ExplicitFamily<F::Elem>,
) -> Result<PointwiseVerdict<F::Elem>, PwError> {
    let fr = rl.frame();
    let mut ts = f0.thresholds().to_vec();
    ts.extend(RayFamily::<F>::breakpoints(fam, rl));
    ts.sort();
    ts.dedup();
    let mut is_lower_bound = true;
    let mut failing = None;
    for r in cell_reps(&ts) {
        let lhs = fam.left_ray_join(rl, r);
        let rhs = rl.left_ray(f0, r);
        if !fr.leq(&lhs, &rhs) {
            is_lower_bound = false;
        }
        if lhs != rhs && failing.is_none() {
            failing = Some(FailingRay { r, lhs, rhs });
        }
    }
    Ok(PointwiseVerdict {
        is_upper_bound: is_lower_bound,
        is_pointwise: failing.is_none(),
        failing,
    })
}

/// `K − f₀`, member by member.
pub fn translate_family<F: Frame>(
    rl: Rl<'_, F>,
    fam: &ExplicitFamily<F::Elem>,
    f0: &Step<F::Elem>,
) -> ExplicitFamily<F::Elem> {
    ExplicitFamily::new(fam.members.iter().map(|k| rl.sub(k, f0)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::{FiniteFrame, OmegaElem, OmegaFrame};
    use crate::rational::q;
    use crate::rl::{PrefixIndicators, Shifted};

    #[test]
    fn singleton_is_pointwise() {
        let f = FiniteFrame::discrete("B2", ["a", "b"]);
        let rl = Rl::new(&f);
        let a = f.elem(&["a"]).unwrap();
        let chi = rl.characteristic(&a).unwrap();
        let v = check_pointwise_sup(rl, &chi, &ExplicitFamily::new(vec![chi.clone()])).unwrap();
        assert!(v.is_pointwise && v.is_upper_bound);
    }

    #[test]
    fn characteristics_of_a_partition() {
        let f = FiniteFrame::discrete("B2", ["a", "b"]);
        let rl = Rl::new(&f);
        let a = f.elem(&["a"]).unwrap();
        let b = f.elem(&["b"]).unwrap();
        let fam = ExplicitFamily::new(vec![rl.characteristic(&a).unwrap(), rl.characteristic(&b).unwrap()]);
        let v = check_pointwise_sup(rl, &rl.one(), &fam).unwrap();
        assert!(v.is_pointwise);
        let v = check_pointwise_sup(rl, &rl.constant(q(2, 1)), &fam).unwrap();
        assert!(v.is_upper_bound && !v.is_pointwise);
        assert_eq!(v.failing_ray(), Some(q(3, 2)));
        let v = check_pointwise_sup(rl, &rl.constant(q(1, 2)), &fam).unwrap();
        assert!(!v.is_upper_bound);
    }

    #[test]
    fn omega_prefix_indicators_are_not_pointwise() {
        let rl = Rl::new(&OmegaFrame);
        let v = check_pointwise_sup(rl, &rl.one(), &PrefixIndicators).unwrap();
        assert!(v.is_upper_bound && !v.is_pointwise);
        let fail = v.failing.unwrap();
        assert_eq!(fail.r, q(1, 2));
        assert_eq!(fail.lhs, OmegaElem::cofin_nat([]));
        assert_eq!(fail.rhs, OmegaFrame.top());

        let shifted = Shifted::new(PrefixIndicators, Q::ONE);
        let v = check_pointwise_sup(rl, &rl.zero(), &shifted).unwrap();
        assert!(!v.is_pointwise);
        assert_eq!(v.failing_ray(), Some(q(-1, 2)));
    }

    #[test]
    fn inf_agrees_with_negated_sup() {
        let f = FiniteFrame::discrete("B2", ["a", "b"]);
        let rl = Rl::new(&f);
        let a = f.elem(&["a"]).unwrap();
        let chi = rl.characteristic(&a).unwrap();
        let fam = ExplicitFamily::new(vec![chi.clone(), rl.one()]);
        let neg = ExplicitFamily::new(fam.members.iter().map(|k| rl.neg(k)).collect());
        for f0 in [chi.clone(), rl.zero(), rl.constant(q(-1, 1))] {
            let inf = check_pointwise_inf(rl, &f0, &fam).unwrap();
            let sup = check_pointwise_sup(rl, &rl.neg(&f0), &neg).unwrap();
            assert_eq!(inf.is_pointwise, sup.is_pointwise);
            assert_eq!(inf.is_upper_bound, sup.is_upper_bound);
        }
        assert!(check_pointwise_inf(rl, &chi, &fam).unwrap().is_pointwise);
    }

    #[test]
    fn translation_preserves_verdict() {
        let f = FiniteFrame::discrete("B2", ["a", "b"]);
        let rl = Rl::new(&f);
        let a = f.elem(&["a"]).unwrap();
        let fam = ExplicitFamily::new(vec![rl.characteristic(&a).unwrap()]);
        for f0 in [rl.one(), rl.characteristic(&a).unwrap(), rl.zero()] {
            let direct = check_pointwise_sup(rl, &f0, &fam).unwrap();
            let moved = check_pointwise_sup(rl, &rl.zero(), &translate_family(rl, &fam, &f0)).unwrap();
            assert_eq!(direct.is_pointwise, moved.is_pointwise);
        }
        assert_eq!(translate_family(rl, &fam, &rl.zero()), fam);
    }
}
