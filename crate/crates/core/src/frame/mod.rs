//! Frame backends.
//!
//! A frame is a complete lattice in which finite meets distribute over
//! arbitrary joins. Two concrete backends are provided: [`FiniteFrame`], the
//! downsets of a finite poset (Birkhoff representation), and [`OmegaFrame`], a
//! closed-form fragment of the open sets of the one-point compactification
//! ω+1. [`OmegaPowerset`] is the boolean frame of subsets of ω+1 that the
//! latter embeds into.

mod finite;
mod morphism;
mod omega;

use std::fmt::Debug;
use std::hash::Hash;

pub use finite::{Down, FiniteFrame, Poset};
pub use morphism::{
    boolean_embedding, booleanize, compose, finite_morphism_check, morphism_check, open_quotient, BooleanEmbed,
    Booleanization, Composite, FiniteMorphism, FrameHom, MorphismReport, OmegaInclusion, OpenQuotient,
    PowersetRestriction,
};
pub use omega::{NatSet, OmegaElem, OmegaFrame, OmegaPowerset, PowElem};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FrameError {
    #[error("PosetInvalid: {0}")]
    PosetInvalid(String),
    #[error("ForeignElement: {0} is not an element of frame `{1}`")]
    ForeignElement(String, String),
    #[error("NotAFrameMap: {0}")]
    NotAFrameMap(String),
    #[error("CozeroInvalid: {0}")]
    CozeroInvalid(String),
}

impl FrameError {
    pub fn kind(&self) -> &'static str {
        match self {
            FrameError::PosetInvalid(_) => "PosetInvalid",
            FrameError::ForeignElement(..) => "ForeignElement",
            FrameError::NotAFrameMap(_) => "NotAFrameMap",
            FrameError::CozeroInvalid(_) => "CozeroInvalid",
        }
    }
}

/// The frame signature shared by every backend.
///
/// Operations assume their arguments are members of the frame; use
/// [`Frame::check`] or the `try_` variants at API boundaries.
pub trait Frame {
    type Elem: Clone + Eq + Ord + Hash + Debug;

    fn name(&self) -> &str;
    fn top(&self) -> Self::Elem;
    fn bottom(&self) -> Self::Elem;
    fn meet(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn join(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    /// Largest element disjoint from `a`.
    fn pseudocomplement(&self, a: &Self::Elem) -> Self::Elem;
    fn contains(&self, a: &Self::Elem) -> bool;
    fn render(&self, a: &Self::Elem) -> String;

    fn check(&self, a: &Self::Elem) -> Result<(), FrameError> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(FrameError::ForeignElement(format!("{a:?}"), self.name().to_string()))
        }
    }

    fn try_meet(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, FrameError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.meet(a, b))
    }

    fn try_join(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, FrameError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.join(a, b))
    }

    fn try_leq(&self, a: &Self::Elem, b: &Self::Elem) -> Result<bool, FrameError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.leq(a, b))
    }

    fn join_all<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items.into_iter().fold(self.bottom(), |acc, x| self.join(&acc, x))
    }

    fn meet_all<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items.into_iter().fold(self.top(), |acc, x| self.meet(&acc, x))
    }

    /// `a ≺ b` iff `a* ∨ b = ⊤`.
    fn rather_below(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.join(&self.pseudocomplement(a), b) == self.top()
    }

    fn is_complemented(&self, a: &Self::Elem) -> bool {
        self.join(a, &self.pseudocomplement(a)) == self.top()
    }

    fn is_top(&self, a: &Self::Elem) -> bool {
        *a == self.top()
    }

    fn is_bottom(&self, a: &Self::Elem) -> bool {
        *a == self.bottom()
    }
}

/// Frames whose disconnectivity flags can be decided.
pub trait Classify: Frame {
    fn classify(&self) -> Classification;
}

impl Classify for FiniteFrame {
    fn classify(&self) -> Classification {
        FiniteFrame::classify(self)
    }
}

impl Classify for OmegaFrame {
    fn classify(&self) -> Classification {
        OmegaFrame::classify(self)
    }
}

impl Classify for OmegaPowerset {
    fn classify(&self) -> Classification {
        Classification {
            boolean: true,
            extremally_disconnected: true,
            basically_disconnected: true,
            p_frame: true,
            witnesses: Vec::new(),
        }
    }
}

/// Disconnectivity flags of a frame, each with a witness when it fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub boolean: bool,
    pub extremally_disconnected: bool,
    pub basically_disconnected: bool,
    pub p_frame: bool,
    /// Rendered witnesses, keyed by the flag they refute.
    pub witnesses: Vec<(&'static str, String)>,
}

impl Classification {
    pub fn witness(&self, flag: &str) -> Option<&str> {
        self.witnesses.iter().find(|(k, _)| *k == flag).map(|(_, w)| w.as_str())
    }
}

/// Outcome of [`law_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawReport {
    /// Number of element triples examined.
    pub checked: usize,
    /// First failed law, rendered with its witnesses.
    pub violation: Option<String>,
}

/// Checks the frame laws on every triple drawn from `elems`: `≤` agrees with
/// meet and join, meet distributes over binary joins, `⊥ ≤ a ≤ ⊤`, and `a*`
/// is the largest element disjoint from `a`. On a finite frame pass all
/// elements; binary joins then cover every join.
pub fn law_check<F: Frame>(fr: &F, elems: &[F::Elem]) -> LawReport {
    let r = |a: &F::Elem| fr.render(a);
    let mut checked = 0;
    for a in elems {
        if !fr.leq(&fr.bottom(), a) || !fr.leq(a, &fr.top()) {
            return LawReport {
                checked,
                violation: Some(format!("bounds at {}", r(a))),
            };
        }
        let pc = fr.pseudocomplement(a);
        if !fr.is_bottom(&fr.meet(a, &pc)) {
            return LawReport {
                checked,
                violation: Some(format!("{} meets its pseudocomplement", r(a))),
            };
        }
        for b in elems {
            if fr.leq(a, b) != (fr.meet(a, b) == *a) || fr.leq(a, b) != (fr.join(a, b) == *b) {
                return LawReport {
                    checked,
                    violation: Some(format!("order vs lattice at {} {}", r(a), r(b))),
                };
            }
            if fr.is_bottom(&fr.meet(a, b)) && !fr.leq(b, &pc) {
                return LawReport {
                    checked,
                    violation: Some(format!(
                        "{} is disjoint from {} but not below its pseudocomplement",
                        r(b),
                        r(a)
                    )),
                };
            }
            for c in elems {
                checked += 1;
                let lhs = fr.meet(a, &fr.join(b, c));
                let rhs = fr.join(&fr.meet(a, b), &fr.meet(a, c));
                if lhs != rhs {
                    return LawReport {
                        checked,
                        violation: Some(format!("distributivity at {} {} {}", r(a), r(b), r(c))),
                    };
                }
            }
        }
    }
    LawReport {
        checked,
        violation: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finite_frames_satisfy_the_laws() {
        let f = FiniteFrame::new(
            "V",
            Poset::from_relations(vec!["a".into(), "b".into(), "t".into()], &[(0, 2), (1, 2)]).unwrap(),
        )
        .unwrap();
        let rep = law_check(&f, f.elements());
        assert_eq!(rep.violation, None);
        assert_eq!(rep.checked, f.len().pow(3));
    }

    #[test]
    fn omega_sample_satisfies_the_laws() {
        let sample = [
            OmegaFrame.top(),
            OmegaFrame.bottom(),
            OmegaElem::fin([0, 2]),
            OmegaElem::cofin([1]),
            OmegaElem::cofin_nat([]),
            OmegaElem::cofin_nat([0]),
        ];
        assert_eq!(law_check(&OmegaFrame, &sample).violation, None);
    }
}
