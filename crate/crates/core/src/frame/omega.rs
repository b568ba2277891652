use std::collections::BTreeSet;
use std::fmt;

use super::{Classification, Frame};

/// Natural numbers are stored as `u64`; ω itself is never a member of these sets.
pub type Nat = u64;

/// An open subset of ω+1 with a finite description.
///
/// Every open set either omits ω (then any subset of ω is open) or contains a
/// cofinite tail of ω. Only finitely-described opens are representable:
/// finite subsets of ω, cofinite subsets of ω with or without ω.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OmegaElem {
    /// The finite set `S ⊆ ω`.
    Fin(BTreeSet<Nat>),
    /// `(ω ∖ E) ∪ {ω}`.
    Cofin(BTreeSet<Nat>),
    /// `ω ∖ E`, with ω excluded. Not complemented; arises as a countable join
    /// of finite opens.
    CofinNat(BTreeSet<Nat>),
}

impl OmegaElem {
    pub fn fin(s: impl IntoIterator<Item = Nat>) -> OmegaElem {
        OmegaElem::Fin(s.into_iter().collect())
    }

    pub fn cofin(e: impl IntoIterator<Item = Nat>) -> OmegaElem {
        OmegaElem::Cofin(e.into_iter().collect())
    }

    pub fn cofin_nat(e: impl IntoIterator<Item = Nat>) -> OmegaElem {
        OmegaElem::CofinNat(e.into_iter().collect())
    }

    pub fn contains_omega(&self) -> bool {
        matches!(self, OmegaElem::Cofin(_))
    }

    pub fn contains_nat(&self, n: Nat) -> bool {
        match self {
            OmegaElem::Fin(s) => s.contains(&n),
            OmegaElem::Cofin(e) | OmegaElem::CofinNat(e) => !e.contains(&n),
        }
    }

    /// Restriction to the subspace ω, as a [`PowElem`]-style nat set.
    pub fn nat_part(&self) -> NatSet {
        match self {
            OmegaElem::Fin(s) => NatSet::Finite(s.clone()),
            OmegaElem::Cofin(e) | OmegaElem::CofinNat(e) => NatSet::Cofinite(e.clone()),
        }
    }
}

fn render_set(s: &BTreeSet<Nat>) -> String {
    let items: Vec<String> = s.iter().map(|n| n.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

impl fmt::Debug for OmegaElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OmegaElem::Fin(s) => write!(f, "fin{}", render_set(s)),
            OmegaElem::Cofin(e) => write!(f, "cofin{}", render_set(e)),
            OmegaElem::CofinNat(e) => write!(f, "natcofin{}", render_set(e)),
        }
    }
}

/// The open-set frame of ω+1, the one-point compactification of discrete ω.
#[derive(Debug, Clone, Default)]
pub struct OmegaFrame;

impl OmegaFrame {
    pub fn new() -> OmegaFrame {
        OmegaFrame
    }

    /// Closed-form classification. ω+1 is not extremally disconnected: for the
    /// evens `a`, `a*` is the odds and `a* ∨ a**` is all of ω without the
    /// point ω. The evens are not finitely describable, so that witness is
    /// stored rather than computed; the boolean and P-frame witnesses are
    /// computed from representable elements.
    pub fn classify(&self) -> Classification {
        let w = OmegaElem::cofin_nat([]);
        debug_assert!(!self.is_complemented(&w));
        let ed = "evens:a*=odds,a*|a**=natcofin{}!=TOP".to_string();
        Classification {
            boolean: false,
            extremally_disconnected: false,
            basically_disconnected: false,
            p_frame: false,
            witnesses: vec![
                ("boolean", format!("{}:not-complemented", self.render(&w))),
                ("ed", ed.clone()),
                ("bd", ed),
                ("pframe", format!("{}:cozero-not-complemented", self.render(&w))),
            ],
        }
    }
}

impl Frame for OmegaFrame {
    type Elem = OmegaElem;

    fn name(&self) -> &str {
        "omega"
    }

    fn top(&self) -> OmegaElem {
        OmegaElem::Cofin(BTreeSet::new())
    }

    fn bottom(&self) -> OmegaElem {
        OmegaElem::Fin(BTreeSet::new())
    }

    fn meet(&self, a: &OmegaElem, b: &OmegaElem) -> OmegaElem {
        use OmegaElem::*;
        match (a, b) {
            (Fin(x), Fin(y)) => Fin(x & y),
            (Fin(x), Cofin(e) | CofinNat(e)) | (Cofin(e) | CofinNat(e), Fin(x)) => Fin(x - e),
            (Cofin(e), Cofin(f)) => Cofin(e | f),
            (Cofin(e) | CofinNat(e), Cofin(f) | CofinNat(f)) => CofinNat(e | f),
        }
    }

    fn join(&self, a: &OmegaElem, b: &OmegaElem) -> OmegaElem {
        use OmegaElem::*;
        match (a, b) {
            (Fin(x), Fin(y)) => Fin(x | y),
            (Fin(x), Cofin(e)) | (Cofin(e), Fin(x)) => Cofin(e - x),
            (Fin(x), CofinNat(e)) | (CofinNat(e), Fin(x)) => CofinNat(e - x),
            (CofinNat(e), CofinNat(f)) => CofinNat(e & f),
            (Cofin(e) | CofinNat(e), Cofin(f) | CofinNat(f)) => Cofin(e & f),
        }
    }

    fn leq(&self, a: &OmegaElem, b: &OmegaElem) -> bool {
        use OmegaElem::*;
        match (a, b) {
            (Fin(x), Fin(y)) => x.is_subset(y),
            (Fin(x), Cofin(e) | CofinNat(e)) => x.is_disjoint(e),
            (Cofin(_) | CofinNat(_), Fin(_)) => false,
            (Cofin(_), CofinNat(_)) => false,
            (Cofin(e) | CofinNat(e), Cofin(f) | CofinNat(f)) => f.is_subset(e),
        }
    }

    fn pseudocomplement(&self, a: &OmegaElem) -> OmegaElem {
        match a {
            // The excluded set is finite, so the largest disjoint open keeps ω.
            OmegaElem::Fin(s) => OmegaElem::Cofin(s.clone()),
            // Any open containing ω would meet a cofinite tail.
            OmegaElem::Cofin(e) | OmegaElem::CofinNat(e) => OmegaElem::Fin(e.clone()),
        }
    }

    fn contains(&self, _a: &OmegaElem) -> bool {
        true
    }

    fn render(&self, a: &OmegaElem) -> String {
        if self.is_top(a) {
            "TOP".into()
        } else if self.is_bottom(a) {
            "BOT".into()
        } else {
            format!("{a:?}")
        }
    }
}

/// A subset of ω that is finite or cofinite.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NatSet {
    Finite(BTreeSet<Nat>),
    /// `ω ∖ E`.
    Cofinite(BTreeSet<Nat>),
}

impl NatSet {
    pub fn empty() -> NatSet {
        NatSet::Finite(BTreeSet::new())
    }

    pub fn all() -> NatSet {
        NatSet::Cofinite(BTreeSet::new())
    }

    pub fn contains(&self, n: Nat) -> bool {
        match self {
            NatSet::Finite(s) => s.contains(&n),
            NatSet::Cofinite(e) => !e.contains(&n),
        }
    }

    pub fn intersect(&self, other: &NatSet) -> NatSet {
        use NatSet::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(a & b),
            (Finite(a), Cofinite(e)) | (Cofinite(e), Finite(a)) => Finite(a - e),
            (Cofinite(e), Cofinite(f)) => Cofinite(e | f),
        }
    }

    pub fn union(&self, other: &NatSet) -> NatSet {
        use NatSet::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(a | b),
            (Finite(a), Cofinite(e)) | (Cofinite(e), Finite(a)) => Cofinite(e - a),
            (Cofinite(e), Cofinite(f)) => Cofinite(e & f),
        }
    }

    pub fn complement(&self) -> NatSet {
        match self {
            NatSet::Finite(s) => NatSet::Cofinite(s.clone()),
            NatSet::Cofinite(e) => NatSet::Finite(e.clone()),
        }
    }

    pub fn is_subset(&self, other: &NatSet) -> bool {
        self.intersect(&other.complement()) == NatSet::empty()
    }
}

impl fmt::Debug for NatSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NatSet::Finite(s) => write!(f, "nat{}", render_set(s)),
            NatSet::Cofinite(e) => write!(f, "natco{}", render_set(e)),
        }
    }
}

/// A subset of ω+1 whose trace on ω is finite or cofinite.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PowElem {
    pub nat: NatSet,
    pub omega: bool,
}

impl PowElem {
    pub fn new(nat: NatSet, omega: bool) -> PowElem {
        PowElem { nat, omega }
    }

    pub fn empty() -> PowElem {
        PowElem::new(NatSet::empty(), false)
    }

    pub fn everything() -> PowElem {
        PowElem::new(NatSet::all(), true)
    }

    /// `{ω}`.
    pub fn omega_point() -> PowElem {
        PowElem::new(NatSet::empty(), true)
    }

    pub fn intersect(&self, o: &PowElem) -> PowElem {
        PowElem::new(self.nat.intersect(&o.nat), self.omega && o.omega)
    }

    pub fn union(&self, o: &PowElem) -> PowElem {
        PowElem::new(self.nat.union(&o.nat), self.omega || o.omega)
    }

    pub fn complement(&self) -> PowElem {
        PowElem::new(self.nat.complement(), !self.omega)
    }

    pub fn is_subset(&self, o: &PowElem) -> bool {
        self.nat.is_subset(&o.nat) && (!self.omega || o.omega)
    }
}

impl fmt::Debug for PowElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.nat, self.omega) {
            (NatSet::Finite(s), true) if s.is_empty() => write!(f, "{{w}}"),
            (n, true) => write!(f, "{n:?}+w"),
            (n, false) => write!(f, "{n:?}"),
        }
    }
}

/// The boolean frame of [`PowElem`] subsets below a fixed `top`.
///
/// With `top` = ω+1 this is the codomain of the inclusion of [`OmegaFrame`];
/// smaller tops are its open quotients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaPowerset {
    top: PowElem,
}

impl OmegaPowerset {
    pub fn full() -> OmegaPowerset {
        OmegaPowerset {
            top: PowElem::everything(),
        }
    }

    /// The frame `↓top`.
    pub fn below(top: PowElem) -> OmegaPowerset {
        OmegaPowerset { top }
    }
}

impl Frame for OmegaPowerset {
    type Elem = PowElem;

    fn name(&self) -> &str {
        "omega-powerset"
    }

    fn top(&self) -> PowElem {
        self.top.clone()
    }

    fn bottom(&self) -> PowElem {
        PowElem::empty()
    }

    fn meet(&self, a: &PowElem, b: &PowElem) -> PowElem {
        a.intersect(b)
    }

    fn join(&self, a: &PowElem, b: &PowElem) -> PowElem {
        a.union(b)
    }

    fn leq(&self, a: &PowElem, b: &PowElem) -> bool {
        a.is_subset(b)
    }

    fn pseudocomplement(&self, a: &PowElem) -> PowElem {
        self.top.intersect(&a.complement())
    }

    fn contains(&self, a: &PowElem) -> bool {
        a.is_subset(&self.top)
    }

    fn render(&self, a: &PowElem) -> String {
        if *a == self.top {
            "TOP".into()
        } else if *a == PowElem::empty() {
            "BOT".into()
        } else {
            format!("{a:?}")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn join_and_meet_examples() {
        let f = OmegaFrame;
        let a = OmegaElem::fin([0, 2]);
        let b = OmegaElem::cofin([0]);
        assert_eq!(f.join(&a, &b), f.top());
        assert_eq!(f.meet(&a, &b), OmegaElem::fin([2]));
        let n = OmegaElem::cofin_nat([1]);
        assert_eq!(f.join(&n, &OmegaElem::fin([1])), OmegaElem::cofin_nat([]));
        assert_eq!(f.join(&n, &f.top()), f.top());
        assert_eq!(f.meet(&n, &f.top()), n);
    }

    #[test]
    fn pseudocomplement_examples() {
        let f = OmegaFrame;
        assert_eq!(f.pseudocomplement(&OmegaElem::fin([0, 2])), OmegaElem::cofin([0, 2]));
        let w = OmegaElem::cofin_nat([]);
        assert_eq!(f.pseudocomplement(&w), f.bottom());
        assert!(!f.is_complemented(&w));
        assert!(f.is_complemented(&OmegaElem::cofin([3])));
    }

    #[test]
    fn rendering() {
        let f = OmegaFrame;
        assert_eq!(f.render(&f.top()), "TOP");
        assert_eq!(f.render(&f.bottom()), "BOT");
        assert_eq!(f.render(&OmegaElem::fin([0, 2, 5])), "fin{0,2,5}");
        assert_eq!(f.render(&OmegaElem::cofin([1])), "cofin{1}");
        assert_eq!(f.render(&OmegaElem::cofin_nat([])), "natcofin{}");
        let p = OmegaPowerset::full();
        assert_eq!(p.render(&PowElem::omega_point()), "{w}");
    }

    #[test]
    fn classification_is_all_false() {
        let c = OmegaFrame.classify();
        assert!(!c.boolean && !c.extremally_disconnected);
        assert!(!c.basically_disconnected && !c.p_frame);
        assert!(c.witness("bd").unwrap().contains("natcofin{}"));
    }

    #[test]
    fn powerset_is_boolean() {
        let p = OmegaPowerset::full();
        let a = PowElem::new(NatSet::Finite([1, 4].into()), true);
        assert!(p.is_complemented(&a));
        assert_eq!(
            p.pseudocomplement(&a),
            PowElem::new(NatSet::Cofinite([1, 4].into()), false)
        );
        let q = OmegaPowerset::below(PowElem::omega_point());
        assert_eq!(q.pseudocomplement(&q.bottom()), PowElem::omega_point());
    }
}
