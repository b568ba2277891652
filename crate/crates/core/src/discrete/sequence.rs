use std::fmt;

use crate::frame::{OmegaElem, OmegaFrame};
use crate::rational::Q;
use crate::rl::{Rl, Step};

/// A continuous function on ω+1: `g(n) = prefix[n]` for `n < len`, and
/// `g(n) = g(ω) = tail` afterwards. The last prefix entry differs from the
/// tail, so equal sequences have equal representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EventuallyConstant {
    prefix: Vec<Q>,
    tail: Q,
}

impl fmt::Debug for EventuallyConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.prefix.iter().map(|q| q.to_string()).collect();
        write!(f, "seq [{}] tail {}", parts.join(","), self.tail)
    }
}

impl fmt::Display for EventuallyConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl EventuallyConstant {
    pub fn new(mut prefix: Vec<Q>, tail: Q) -> EventuallyConstant {
        while prefix.last() == Some(&tail) {
            prefix.pop();
        }
        EventuallyConstant { prefix, tail }
    }

    pub fn constant(c: Q) -> EventuallyConstant {
        EventuallyConstant::new(Vec::new(), c)
    }

    /// `f_n`: 1 on `{0, …, n}`, 0 elsewhere including ω.
    pub fn prefix_indicator(n: usize) -> EventuallyConstant {
        EventuallyConstant::new(vec![Q::ONE; n + 1], Q::ZERO)
    }

    pub fn prefix(&self) -> &[Q] {
        &self.prefix
    }

    pub fn tail(&self) -> Q {
        self.tail
    }

    pub fn at(&self, n: usize) -> Q {
        self.prefix.get(n).copied().unwrap_or(self.tail)
    }

    pub fn at_omega(&self) -> Q {
        self.tail
    }

    /// Distinct values taken, ω included.
    pub fn values(&self) -> Vec<Q> {
        let mut v = self.prefix.clone();
        v.push(self.tail);
        v.sort();
        v.dedup();
        v
    }

    pub fn zip_with(&self, o: &EventuallyConstant, op: impl Fn(Q, Q) -> Q) -> EventuallyConstant {
        let len = self.prefix.len().max(o.prefix.len());
        let prefix = (0..len).map(|n| op(self.at(n), o.at(n))).collect();
        EventuallyConstant::new(prefix, op(self.tail, o.tail))
    }

    pub fn map(&self, op: impl Fn(Q) -> Q) -> EventuallyConstant {
        EventuallyConstant::new(self.prefix.iter().map(|q| op(*q)).collect(), op(self.tail))
    }

    pub fn add(&self, o: &EventuallyConstant) -> EventuallyConstant {
        self.zip_with(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &EventuallyConstant) -> EventuallyConstant {
        self.zip_with(o, |a, b| a - b)
    }

    pub fn join(&self, o: &EventuallyConstant) -> EventuallyConstant {
        self.zip_with(o, Q::max)
    }

    pub fn meet(&self, o: &EventuallyConstant) -> EventuallyConstant {
        self.zip_with(o, Q::min)
    }

    pub fn neg(&self) -> EventuallyConstant {
        self.map(|a| -a)
    }

    pub fn scale(&self, c: Q) -> EventuallyConstant {
        self.map(|a| c * a)
    }

    pub fn leq(&self, o: &EventuallyConstant) -> bool {
        let len = self.prefix.len().max(o.prefix.len());
        (0..len).all(|n| self.at(n) <= o.at(n)) && self.tail <= o.tail
    }

    /// `ĝ(r,∞) = {p ∈ ω+1 : g(p) > r}`: it contains ω, hence a cofinite
    /// tail, exactly when the tail exceeds `r`.
    pub fn hat(&self, rl: Rl<'_, OmegaFrame>) -> Step<OmegaElem> {
        let ray = |r: Q| {
            let idx =
                |keep: bool| (0..self.prefix.len() as u64).filter(move |&n| (self.prefix[n as usize] > r) == keep);
            if self.tail > r {
                OmegaElem::cofin(idx(false))
            } else {
                OmegaElem::fin(idx(true))
            }
        };
        rl.from_rays(self.values(), ray)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::Frame;
    use crate::rational::q;

    #[test]
    fn normalization() {
        let s = EventuallyConstant::new(vec![Q::ZERO, Q::ONE, Q::ONE], Q::ONE);
        assert_eq!(s.prefix(), &[Q::ZERO]);
        assert_eq!(s.at(7), Q::ONE);
        assert_eq!(s.to_string(), "seq [0] tail 1");
    }

    #[test]
    fn prefix_indicator_ray() {
        let rl = Rl::new(&OmegaFrame);
        let f2 = EventuallyConstant::prefix_indicator(2).hat(rl);
        assert_eq!(rl.ray(&f2, q(1, 2)), OmegaElem::fin([0, 1, 2]));
        assert_eq!(rl.ray(&f2, q(-1, 2)), OmegaFrame.top());
        assert_eq!(rl.ray(&f2, Q::ONE), OmegaFrame.bottom());
    }

    #[test]
    fn tail_above_ray_gives_cofinite_open() {
        let rl = Rl::new(&OmegaFrame);
        let g = EventuallyConstant::new(vec![q(3, 1), Q::ZERO], Q::ONE).hat(rl);
        assert_eq!(rl.ray(&g, q(1, 2)), OmegaElem::cofin([1]));
        assert_eq!(rl.ray(&g, q(2, 1)), OmegaElem::fin([0]));
    }

    #[test]
    fn arithmetic_is_coordinatewise() {
        let a = EventuallyConstant::new(vec![Q::ONE], Q::ZERO);
        let b = EventuallyConstant::new(vec![Q::ZERO, q(2, 1)], Q::ONE);
        assert_eq!(a.add(&b), EventuallyConstant::new(vec![Q::ONE, q(2, 1)], Q::ONE));
        assert_eq!(a.join(&b), EventuallyConstant::new(vec![Q::ONE, q(2, 1)], Q::ONE));
        assert!(a.meet(&b).leq(&a));
        assert!(!b.leq(&a));
    }
}
