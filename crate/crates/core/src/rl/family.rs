use crate::frame::{Frame, OmegaElem, OmegaFrame};
use crate::rational::Q;

use super::step::{cell_reps, Rl, Step};
use super::RlError;

/// Members inspected when validating a countably infinite family.
pub const FAMILY_SAMPLE: usize = 64;

/// A finite or countable family `K ⊆ R(L)` together with its ray join
/// `r ↦ ⋁_K k(r,∞)`.
pub trait RayFamily<F: Frame> {
    fn describe(&self) -> String;

    /// `None` for countably infinite families.
    fn len(&self) -> Option<usize>;

    /// The `n`-th member, 0-based; `None` past the end.
    fn member(&self, rl: Rl<'_, F>, n: usize) -> Option<Step<F::Elem>>;

    fn ray_join(&self, rl: Rl<'_, F>, r: Q) -> F::Elem;

    /// Every point where `ray_join` or a member's rays may change.
    fn breakpoints(&self, rl: Rl<'_, F>) -> Vec<Q>;

    /// All members of a finite family; the first [`FAMILY_SAMPLE`] otherwise.
    fn sample(&self, rl: Rl<'_, F>) -> Vec<Step<F::Elem>> {
        let n = self.len().unwrap_or(FAMILY_SAMPLE);
        (0..n).map_while(|i| self.member(rl, i)).collect()
    }

    fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }

    /// Every sampled member's rays lie below `ray_join` on the breakpoint grid,
    /// and for finite families `ray_join` is exactly the join of the members.
    fn validate(&self, rl: Rl<'_, F>) -> Result<(), RlError> {
        let fr = rl.frame();
        let members = self.sample(rl);
        let mut grid = self.breakpoints(rl);
        grid.extend(members.iter().flat_map(|m| m.thresholds().iter().copied()));
        grid.sort();
        grid.dedup();
        for r in cell_reps(&grid) {
            let joined = self.ray_join(rl, r);
            let mut partial = fr.bottom();
            for (n, m) in members.iter().enumerate() {
                let ray = rl.ray(m, r);
                if !fr.leq(&ray, &joined) {
                    return Err(RlError::FamilyOracleInvalid(format!(
                        "{}: member {n} has ray {} above the join {} at r={r}",
                        self.describe(),
                        fr.render(&ray),
                        fr.render(&joined)
                    )));
                }
                partial = fr.join(&partial, &ray);
            }
            if self.len().is_some() && partial != joined {
                return Err(RlError::FamilyOracleInvalid(format!(
                    "{}: members join to {} but the oracle gives {} at r={r}",
                    self.describe(),
                    fr.render(&partial),
                    fr.render(&joined)
                )));
            }
        }
        Ok(())
    }
}

/// A finite list of members.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitFamily<E> {
    pub members: Vec<Step<E>>,
}

impl<E> ExplicitFamily<E> {
    pub fn new(members: Vec<Step<E>>) -> ExplicitFamily<E> {
        ExplicitFamily { members }
    }
}

impl<F: Frame> RayFamily<F> for ExplicitFamily<F::Elem> {
    fn describe(&self) -> String {
        format!("explicit({})", self.members.len())
    }

    fn len(&self) -> Option<usize> {
        Some(self.members.len())
    }

    fn member(&self, _rl: Rl<'_, F>, n: usize) -> Option<Step<F::Elem>> {
        self.members.get(n).cloned()
    }

    fn ray_join(&self, rl: Rl<'_, F>, r: Q) -> F::Elem {
        let fr = rl.frame();
        self.members
            .iter()
            .fold(fr.bottom(), |acc, m| fr.join(&acc, &rl.ray(m, r)))
    }

    fn breakpoints(&self, _rl: Rl<'_, F>) -> Vec<Q> {
        let mut ts: Vec<Q> = self
            .members
            .iter()
            .flat_map(|m| m.thresholds().iter().copied())
            .collect();
        ts.sort();
        ts.dedup();
        ts
    }
}

impl<E: Clone> ExplicitFamily<E> {
    /// `r ↦ ⋁_K k(−∞,r)`.
    pub fn left_ray_join<F: Frame<Elem = E>>(&self, rl: Rl<'_, F>, r: Q) -> E {
        let fr = rl.frame();
        self.members
            .iter()
            .fold(fr.bottom(), |acc, m| fr.join(&acc, &rl.left_ray(m, r)))
    }
}

/// The truncates `f ∧ n`, `n = 1, 2, …` of a fixed element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncateFamily<E> {
    pub base: Step<E>,
}

impl<E> TruncateFamily<E> {
    pub fn new(base: Step<E>) -> TruncateFamily<E> {
        TruncateFamily { base }
    }

    /// Least `n ≥ 1` with `f ∧ n = f`.
    pub fn stable_index(&self) -> usize {
        self.base.max_threshold().map_or(1, |t| t.ceil().max(1) as usize)
    }
}

impl<F: Frame> RayFamily<F> for TruncateFamily<F::Elem> {
    fn describe(&self) -> String {
        "truncates".into()
    }

    fn len(&self) -> Option<usize> {
        None
    }

    fn member(&self, rl: Rl<'_, F>, n: usize) -> Option<Step<F::Elem>> {
        Some(rl.truncate(&self.base, Q::int(n as i64 + 1)))
    }

    /// `⋁_n (f∧n)(r,∞) = ⋁_{n>r} f(r,∞) = f(r,∞)`.
    fn ray_join(&self, rl: Rl<'_, F>, r: Q) -> F::Elem {
        rl.ray(&self.base, r)
    }

    fn breakpoints(&self, _rl: Rl<'_, F>) -> Vec<Q> {
        let mut ts = self.base.thresholds().to_vec();
        ts.extend((1..=self.stable_index()).map(|n| Q::int(n as i64)));
        ts.sort();
        ts.dedup();
        ts
    }

    /// Beyond the stable index every member equals the base, so the sample
    /// up to it is exhaustive up to repetition.
    fn validate(&self, rl: Rl<'_, F>) -> Result<(), RlError> {
        let n = self.stable_index();
        let last = rl.truncate(&self.base, Q::int(n as i64));
        if last != self.base {
            return Err(RlError::FamilyOracleInvalid(format!(
                "truncate at {n} differs from the base"
            )));
        }
        let exhaustive = ExplicitFamily::new((0..n).map(|i| self.member(rl, i).unwrap()).collect());
        for r in cell_reps(&self.breakpoints(rl)) {
            if RayFamily::<F>::ray_join(&exhaustive, rl, r) != self.ray_join(rl, r) {
                return Err(RlError::FamilyOracleInvalid(format!(
                    "truncate partial joins disagree with the base at r={r}"
                )));
            }
        }
        Ok(())
    }
}

/// On ω+1: `f_n` is the characteristic function of `{0, …, n}`. Its ray join
/// at `r ∈ [0,1)` is `ω` without the point ω, which is not complemented.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PrefixIndicators;

impl RayFamily<OmegaFrame> for PrefixIndicators {
    fn describe(&self) -> String {
        "prefix_indicators".into()
    }

    fn len(&self) -> Option<usize> {
        None
    }

    fn member(&self, rl: Rl<'_, OmegaFrame>, n: usize) -> Option<Step<OmegaElem>> {
        let prefix = OmegaElem::fin(0..=n as u64);
        Some(rl.characteristic(&prefix).expect("finite sets are clopen"))
    }

    fn ray_join(&self, rl: Rl<'_, OmegaFrame>, r: Q) -> OmegaElem {
        let fr = rl.frame();
        if r.is_negative() {
            fr.top()
        } else if r < Q::ONE {
            OmegaElem::cofin_nat([])
        } else {
            fr.bottom()
        }
    }

    fn breakpoints(&self, _rl: Rl<'_, OmegaFrame>) -> Vec<Q> {
        vec![Q::ZERO, Q::ONE]
    }
}

/// `{k − c : k ∈ K}`; `(k − c)(r,∞) = k(r + c, ∞)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shifted<K> {
    pub inner: K,
    pub shift: Q,
}

impl<K> Shifted<K> {
    pub fn new(inner: K, shift: Q) -> Shifted<K> {
        Shifted { inner, shift }
    }
}

impl<F: Frame, K: RayFamily<F>> RayFamily<F> for Shifted<K> {
    fn describe(&self) -> String {
        format!("{} - {}", self.inner.describe(), self.shift)
    }

    fn len(&self) -> Option<usize> {
        self.inner.len()
    }

    fn member(&self, rl: Rl<'_, F>, n: usize) -> Option<Step<F::Elem>> {
        self.inner.member(rl, n).map(|k| rl.add_const(&k, -self.shift))
    }

    fn ray_join(&self, rl: Rl<'_, F>, r: Q) -> F::Elem {
        self.inner.ray_join(rl, r + self.shift)
    }

    fn breakpoints(&self, rl: Rl<'_, F>) -> Vec<Q> {
        self.inner.breakpoints(rl).into_iter().map(|t| t - self.shift).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::FiniteFrame;
    use crate::rational::q;

    #[test]
    fn explicit_join_of_characteristics() {
        let f = FiniteFrame::discrete("B2", ["a", "b"]);
        let rl = Rl::new(&f);
        let a = f.elem(&["a"]).unwrap();
        let b = f.elem(&["b"]).unwrap();
        let fam = ExplicitFamily::new(vec![rl.characteristic(&a).unwrap(), rl.characteristic(&b).unwrap()]);
        assert_eq!(fam.ray_join(rl, q(1, 2)), f.top());
        assert_eq!(fam.ray_join(rl, Q::ONE), f.bottom());
        assert!(RayFamily::<FiniteFrame>::validate(&fam, rl).is_ok());
    }

    #[test]
    fn truncates_join_to_base() {
        let f = FiniteFrame::discrete("B2", ["a", "b"]);
        let rl = Rl::new(&f);
        let a = f.elem(&["a"]).unwrap();
        let g = rl.add(
            &rl.scale(q(7, 2), &rl.characteristic(&a).unwrap()),
            &rl.constant(q(-1, 1)),
        );
        let fam = TruncateFamily::new(g.clone());
        assert_eq!(fam.stable_index(), 3);
        assert!(RayFamily::<FiniteFrame>::validate(&fam, rl).is_ok());
        assert_eq!(fam.member(rl, 0).unwrap(), rl.truncate(&g, Q::ONE));
    }

    #[test]
    fn prefix_indicators_oracle() {
        let rl = Rl::new(&OmegaFrame);
        let fam = PrefixIndicators;
        assert_eq!(fam.ray_join(rl, q(1, 2)), OmegaElem::cofin_nat([]));
        assert_eq!(rl.ray(&fam.member(rl, 2).unwrap(), q(1, 2)), OmegaElem::fin([0, 1, 2]));
        assert!(fam.validate(rl).is_ok());
        let shifted = Shifted::new(fam, Q::ONE);
        assert_eq!(shifted.ray_join(rl, q(-1, 2)), OmegaElem::cofin_nat([]));
        assert!(shifted.validate(rl).is_ok());
    }

    #[test]
    fn inconsistent_oracle_is_caught() {
        struct Liar;
        impl RayFamily<OmegaFrame> for Liar {
            fn describe(&self) -> String {
                "liar".into()
            }
            fn len(&self) -> Option<usize> {
                None
            }
            fn member(&self, rl: Rl<'_, OmegaFrame>, n: usize) -> Option<Step<OmegaElem>> {
                PrefixIndicators.member(rl, n)
            }
            fn ray_join(&self, rl: Rl<'_, OmegaFrame>, r: Q) -> OmegaElem {
                if r.is_negative() {
                    rl.frame().top()
                } else {
                    OmegaElem::fin([0, 1])
                }
            }
            fn breakpoints(&self, _rl: Rl<'_, OmegaFrame>) -> Vec<Q> {
                vec![Q::ZERO, Q::ONE]
            }
        }
        let rl = Rl::new(&OmegaFrame);
        assert!(matches!(Liar.validate(rl), Err(RlError::FamilyOracleInvalid(_))));
    }
}
