use std::fmt;

use super::{Classification, Frame, FrameError};

/// Posets are capped so that every downset fits in a `u64`.
pub const MAX_POSET_POINTS: usize = 64;
/// Frames enumerate all downsets eagerly; 2^20 is the worst case for an antichain.
pub const MAX_FRAME_POINTS: usize = 20;

/// A finite partial order on named points, stored as per-point bit masks.
#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    names: Vec<String>,
    /// below[i] has bit j set iff j ≤ i.
    below: Vec<u64>,
}

impl Poset {
    /// Builds a poset from a full `leq` table, checking the three axioms.
    pub fn new(names: Vec<String>, leq: &[Vec<bool>]) -> Result<Poset, FrameError> {
        let n = names.len();
        if n > MAX_POSET_POINTS {
            return Err(FrameError::PosetInvalid(format!(
                "{n} points exceeds the limit of {MAX_POSET_POINTS}"
            )));
        }
        if leq.len() != n || leq.iter().any(|row| row.len() != n) {
            return Err(FrameError::PosetInvalid("leq table is not square".into()));
        }
        check_unique_names(&names)?;
        for i in 0..n {
            if !leq[i][i] {
                return Err(FrameError::PosetInvalid(format!("not reflexive at {}", names[i])));
            }
            for j in 0..n {
                if i != j && leq[i][j] && leq[j][i] {
                    return Err(FrameError::PosetInvalid(format!(
                        "not antisymmetric: {} and {}",
                        names[i], names[j]
                    )));
                }
                for k in 0..n {
                    if leq[i][j] && leq[j][k] && !leq[i][k] {
                        return Err(FrameError::PosetInvalid(format!(
                            "not transitive: {} ≤ {} ≤ {}",
                            names[i], names[j], names[k]
                        )));
                    }
                }
            }
        }
        let below = (0..n)
            .map(|i| (0..n).filter(|&j| leq[j][i]).fold(0u64, |m, j| m | (1 << j)))
            .collect();
        Ok(Poset { names, below })
    }

    /// Builds the order generated by `lower < upper` pairs (reflexive-transitive
    /// closure), rejecting cycles.
    pub fn from_relations(names: Vec<String>, relations: &[(usize, usize)]) -> Result<Poset, FrameError> {
        let n = names.len();
        if n > MAX_POSET_POINTS {
            return Err(FrameError::PosetInvalid(format!(
                "{n} points exceeds the limit of {MAX_POSET_POINTS}"
            )));
        }
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(lo, hi) in relations {
            if lo >= n || hi >= n {
                return Err(FrameError::PosetInvalid("relation index out of range".into()));
            }
            if lo == hi {
                return Err(FrameError::PosetInvalid(format!(
                    "strict relation {}<{} is reflexive",
                    names[lo], names[hi]
                )));
            }
            leq[lo][hi] = true;
        }
        // Warshall closure.
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        Poset::new(names, &leq)
    }

    pub fn antichain<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Poset {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let n = names.len();
        let leq: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect();
        Poset::new(names, &leq).expect("antichain with distinct names")
    }

    /// Chain `names[0] < names[1] < …`.
    pub fn chain<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Poset {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let n = names.len();
        let leq: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i <= j).collect()).collect();
        Poset::new(names, &leq).expect("chain with distinct names")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.below[j] & (1 << i) != 0
    }

    /// Bit mask of ↓p.
    pub fn down_mask(&self, p: usize) -> u64 {
        self.below[p]
    }

    pub fn is_antichain(&self) -> bool {
        (0..self.len()).all(|i| self.below[i] == 1 << i)
    }

    /// Strict covering pairs `(lower, upper)`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for lo in 0..n {
            for hi in 0..n {
                if lo == hi || !self.leq(lo, hi) {
                    continue;
                }
                let between = (0..n).any(|m| m != lo && m != hi && self.leq(lo, m) && self.leq(m, hi));
                if !between {
                    out.push((lo, hi));
                }
            }
        }
        out
    }

    /// The induced order on the points of `mask`, with the index map back.
    pub fn restrict(&self, mask: u64) -> (Poset, Vec<usize>) {
        let keep: Vec<usize> = (0..self.len()).filter(|&i| mask & (1 << i) != 0).collect();
        let names = keep.iter().map(|&i| self.names[i].clone()).collect();
        let leq: Vec<Vec<bool>> = keep
            .iter()
            .map(|&i| keep.iter().map(|&j| self.leq(i, j)).collect())
            .collect();
        (Poset::new(names, &leq).expect("restriction of a poset"), keep)
    }
}

fn check_unique_names(names: &[String]) -> Result<(), FrameError> {
    for (i, n) in names.iter().enumerate() {
        if n.is_empty() {
            return Err(FrameError::PosetInvalid("empty point name".into()));
        }
        if names[..i].contains(n) {
            return Err(FrameError::PosetInvalid(format!("duplicate point `{n}`")));
        }
    }
    Ok(())
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self
            .covers()
            .into_iter()
            .map(|(a, b)| format!("{}<{}", self.names[a], self.names[b]))
            .collect();
        write!(f, "Poset({} | {})", self.names.join(" "), rels.join(" "))
    }
}

/// A downset of the carrier poset, as a bitset over point indices.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Down(pub u64);

impl Down {
    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn count(self) -> u32 {
        self.0.count_ones()
    }

    pub fn points(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |i| self.0 & (1u64 << i) != 0)
    }
}

impl fmt::Debug for Down {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Down({:#b})", self.0)
    }
}

/// The frame of all downsets of a finite poset.
#[derive(Clone)]
pub struct FiniteFrame {
    name: String,
    poset: Poset,
    full: u64,
    elements: Vec<Down>,
    cozero: Vec<Down>,
}

impl FiniteFrame {
    pub fn new(name: impl Into<String>, poset: Poset) -> Result<FiniteFrame, FrameError> {
        let n = poset.len();
        if n == 0 {
            return Err(FrameError::PosetInvalid("a frame needs at least one point".into()));
        }
        if n > MAX_FRAME_POINTS {
            return Err(FrameError::PosetInvalid(format!(
                "{n} points exceeds the frame limit of {MAX_FRAME_POINTS}"
            )));
        }
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let elements = enumerate_downsets(&poset);
        Ok(FiniteFrame {
            name: name.into(),
            poset,
            full,
            cozero: elements.clone(),
            elements,
        })
    }

    /// The powerset frame 2^X on the given point names.
    pub fn discrete<S: Into<String>>(name: impl Into<String>, points: impl IntoIterator<Item = S>) -> FiniteFrame {
        FiniteFrame::new(name, Poset::antichain(points)).expect("discrete frame")
    }

    /// Restricts the designated cozero part. It must contain ⊥ and ⊤ and be
    /// closed under binary meet and join.
    pub fn with_cozero(mut self, cozero: Vec<Down>) -> Result<FiniteFrame, FrameError> {
        for c in &cozero {
            self.check(c)?;
        }
        let mut set: Vec<Down> = cozero;
        set.sort_by_key(|d| (d.count(), d.0));
        set.dedup();
        let has = |d: &Down| {
            set.binary_search_by_key(&(d.count(), d.0), |e| (e.count(), e.0))
                .is_ok()
        };
        if !has(&self.bottom()) || !has(&self.top()) {
            return Err(FrameError::CozeroInvalid("cozero part must contain BOT and TOP".into()));
        }
        for a in &set {
            for b in &set {
                if !has(&self.meet(a, b)) || !has(&self.join(a, b)) {
                    return Err(FrameError::CozeroInvalid(format!(
                        "not closed under meet/join at {} and {}",
                        self.render(a),
                        self.render(b)
                    )));
                }
            }
        }
        self.cozero = set;
        Ok(self)
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    /// All elements, ordered by size then bit pattern.
    pub fn elements(&self) -> &[Down] {
        &self.elements
    }

    pub fn cozero(&self) -> &[Down] {
        &self.cozero
    }

    pub fn cozero_is_everything(&self) -> bool {
        self.cozero.len() == self.elements.len()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn principal(&self, p: usize) -> Down {
        Down(self.poset.down_mask(p))
    }

    /// The downset generated by the named points.
    pub fn down_closure(&self, names: &[&str]) -> Result<Down, FrameError> {
        let mut bits = 0u64;
        for n in names {
            let p = self
                .poset
                .index_of(n)
                .ok_or_else(|| FrameError::ForeignElement(format!("point `{n}`"), self.name.clone()))?;
            bits |= self.poset.down_mask(p);
        }
        Ok(Down(bits))
    }

    /// The element with exactly the named points; fails unless it is a downset.
    pub fn elem(&self, names: &[&str]) -> Result<Down, FrameError> {
        let mut bits = 0u64;
        for n in names {
            let p = self
                .poset
                .index_of(n)
                .ok_or_else(|| FrameError::ForeignElement(format!("point `{n}`"), self.name.clone()))?;
            bits |= 1 << p;
        }
        let d = Down(bits);
        self.check(&d)?;
        Ok(d)
    }

    pub fn complemented_elements(&self) -> Vec<Down> {
        self.elements
            .iter()
            .copied()
            .filter(|a| self.is_complemented(a))
            .collect()
    }

    /// Enumerative classification; cozero-restricted flags use [`Self::cozero`].
    pub fn classify(&self) -> Classification {
        let mut witnesses = Vec::new();
        let ed_fails = |a: &Down| {
            let s = self.pseudocomplement(a);
            self.join(&s, &self.pseudocomplement(&s)) != self.top()
        };
        let boolean = first_failure(&self.elements, |a| !self.is_complemented(a));
        let ed = first_failure(&self.elements, ed_fails);
        let bd = first_failure(&self.cozero, ed_fails);
        let p = first_failure(&self.cozero, |a| !self.is_complemented(a));
        let mut flag = |key: &'static str, w: Option<Down>, what: &str| {
            if let Some(a) = w {
                witnesses.push((key, format!("{}:{what}", self.render(&a))));
            }
            w.is_none()
        };
        Classification {
            boolean: flag("boolean", boolean, "not-complemented"),
            extremally_disconnected: flag("ed", ed, "a*|a**!=TOP"),
            basically_disconnected: flag("bd", bd, "a*|a**!=TOP"),
            p_frame: flag("pframe", p, "cozero-not-complemented"),
            witnesses,
        }
    }

    /// ↓b as a frame in its own right, with the point-index map into `self`.
    pub fn down_frame(&self, b: Down) -> (FiniteFrame, Vec<usize>) {
        let (sub, map) = self.poset.restrict(b.0);
        let name = format!("{}|{}", self.name, self.render(&b));
        let frame = if sub.is_empty() {
            // ↓⊥ is the one-element frame on the empty carrier.
            FiniteFrame {
                name,
                poset: sub,
                full: 0,
                elements: vec![Down(0)],
                cozero: vec![Down(0)],
            }
        } else {
            FiniteFrame::new(name, sub).expect("subframe of a valid frame")
        };
        (frame, map)
    }

    /// Position of `a` in [`Self::elements`].
    pub fn index_of(&self, a: &Down) -> Option<usize> {
        self.elements
            .binary_search_by_key(&(a.count(), a.0), |e| (e.count(), e.0))
            .ok()
    }
}

fn first_failure(items: &[Down], fails: impl Fn(&Down) -> bool) -> Option<Down> {
    items.iter().copied().find(|a| fails(a))
}

fn enumerate_downsets(poset: &Poset) -> Vec<Down> {
    let n = poset.len();
    // Linear extension: fewer points below first.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&p| (poset.down_mask(p).count_ones(), p));
    let mut out = Vec::new();
    fn go(poset: &Poset, order: &[usize], idx: usize, cur: u64, out: &mut Vec<Down>) {
        if idx == order.len() {
            out.push(Down(cur));
            return;
        }
        let p = order[idx];
        go(poset, order, idx + 1, cur, out);
        let strictly_below = poset.down_mask(p) & !(1u64 << p);
        if strictly_below & !cur == 0 {
            go(poset, order, idx + 1, cur | (1 << p), out);
        }
    }
    go(poset, &order, 0, 0, &mut out);
    out.sort_by_key(|d| (d.count(), d.0));
    out
}

impl Frame for FiniteFrame {
    type Elem = Down;

    fn name(&self) -> &str {
        &self.name
    }

    fn top(&self) -> Down {
        Down(self.full)
    }

    fn bottom(&self) -> Down {
        Down(0)
    }

    fn meet(&self, a: &Down, b: &Down) -> Down {
        Down(a.0 & b.0)
    }

    fn join(&self, a: &Down, b: &Down) -> Down {
        Down(a.0 | b.0)
    }

    fn leq(&self, a: &Down, b: &Down) -> bool {
        a.0 & !b.0 == 0
    }

    fn pseudocomplement(&self, a: &Down) -> Down {
        let bits = (0..self.poset.len())
            .filter(|&p| self.poset.down_mask(p) & a.0 == 0)
            .fold(0u64, |m, p| m | (1 << p));
        Down(bits)
    }

    fn contains(&self, a: &Down) -> bool {
        if a.0 & !self.full != 0 {
            return false;
        }
        a.points().all(|p| self.poset.down_mask(p) & !a.0 == 0)
    }

    fn render(&self, a: &Down) -> String {
        if *a == self.top() {
            "TOP".into()
        } else if a.0 == 0 {
            "BOT".into()
        } else {
            let names: Vec<&str> = a.points().map(|p| self.poset.name(p)).collect();
            format!("{{{}}}", names.join(","))
        }
    }
}

impl fmt::Debug for FiniteFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteFrame({}: {:?})", self.name, self.poset)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain3() -> FiniteFrame {
        FiniteFrame::new("chain3", Poset::chain(["a", "b"])).unwrap()
    }

    fn vee() -> FiniteFrame {
        // a<c, b<c
        let p = Poset::from_relations(vec!["a".into(), "b".into(), "c".into()], &[(0, 2), (1, 2)]).unwrap();
        FiniteFrame::new("vee", p).unwrap()
    }

    #[test]
    fn small_frames_have_expected_sizes() {
        assert_eq!(FiniteFrame::discrete("one", ["p"]).len(), 2);
        let c = chain3();
        assert_eq!(c.len(), 3);
        let rendered: Vec<String> = c.elements().iter().map(|e| c.render(e)).collect();
        assert_eq!(rendered, ["BOT", "{a}", "TOP"]);
        assert_eq!(FiniteFrame::discrete("2x2", ["a", "b"]).len(), 4);
        assert_eq!(vee().len(), 5);
    }

    #[test]
    fn poset_axioms_are_checked() {
        let names = vec!["a".to_string(), "b".to_string()];
        let not_reflexive = vec![vec![false, false], vec![false, true]];
        assert!(matches!(
            Poset::new(names.clone(), &not_reflexive),
            Err(FrameError::PosetInvalid(_))
        ));
        let cyclic = Poset::from_relations(names.clone(), &[(0, 1), (1, 0)]);
        assert!(matches!(cyclic, Err(FrameError::PosetInvalid(_))));
        let three = vec!["a".to_string(), "b".to_string(), "c".to_string()];
        let not_transitive = vec![
            vec![true, true, false],
            vec![false, true, true],
            vec![false, false, true],
        ];
        assert!(Poset::new(three, &not_transitive).is_err());
        assert!(FiniteFrame::new("empty", Poset::antichain(Vec::<String>::new())).is_err());
    }

    #[test]
    fn pseudocomplements() {
        let c = chain3();
        let a = c.elem(&["a"]).unwrap();
        assert_eq!(c.pseudocomplement(&a), c.bottom());
        let b4 = FiniteFrame::discrete("2x2", ["a", "b"]);
        let a = b4.elem(&["a"]).unwrap();
        let b = b4.elem(&["b"]).unwrap();
        // Brute force: join of everything disjoint from {a}.
        let brute = b4.join_all(b4.elements().iter().filter(|x| b4.meet(&a, x) == b4.bottom()));
        assert_eq!(b4.pseudocomplement(&a), brute);
        assert_eq!(brute, b);
    }

    #[test]
    fn rather_below_examples() {
        let c = chain3();
        let a = c.elem(&["a"]).unwrap();
        assert!(!c.rather_below(&a, &a));
        for x in c.elements() {
            assert!(c.rather_below(x, &c.top()));
        }
        for n in 2..=3 {
            let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
            let f = FiniteFrame::discrete("bool", names);
            for x in f.elements() {
                assert!(f.rather_below(x, x));
            }
        }
    }

    #[test]
    fn join_of_atoms_is_top() {
        let f = FiniteFrame::discrete("2x2", ["a", "b"]);
        let a = f.elem(&["a"]).unwrap();
        let b = f.elem(&["b"]).unwrap();
        assert_eq!(f.join(&a, &b), f.top());
    }

    #[test]
    fn foreign_elements_are_rejected() {
        let c = chain3();
        // {b} without a is not a downset of a<b.
        assert!(matches!(c.elem(&["b"]), Err(FrameError::ForeignElement(..))));
        assert!(c.try_join(&Down(0b100), &c.top()).is_err());
        assert!(c.try_meet(&c.top(), &c.bottom()).is_ok());
    }

    #[test]
    fn classification_of_small_frames() {
        let bool3 = FiniteFrame::discrete("b3", ["x", "y", "z"]);
        let cl = bool3.classify();
        assert!(cl.boolean && cl.extremally_disconnected && cl.basically_disconnected && cl.p_frame);

        // Every non-bottom element of a chain is dense, so a* = ⊥ and a** = ⊤.
        let cl = chain3().classify();
        assert!(!cl.boolean);
        assert!(cl.extremally_disconnected);
        assert!(cl.basically_disconnected);
        assert!(!cl.p_frame);

        let cl = vee().classify();
        assert!(!cl.boolean && !cl.extremally_disconnected && !cl.basically_disconnected);
        assert_eq!(cl.witness("ed"), Some("{a}:a*|a**!=TOP"));
    }

    #[test]
    fn cozero_restriction_changes_bd_only() {
        let v = vee();
        let a = v.elem(&["a"]).unwrap();
        let b = v.elem(&["b"]).unwrap();
        let ab = v.join(&a, &b);
        // Without {a},{b} the remaining cozeros ⊥ < {a,b} < ⊤ are all fine for BD.
        let restricted = v.clone().with_cozero(vec![v.bottom(), ab, v.top()]).unwrap();
        let cl = restricted.classify();
        assert!(!cl.extremally_disconnected);
        assert!(cl.basically_disconnected);
        assert!(!cl.p_frame);
        assert!(v.clone().with_cozero(vec![v.bottom(), a, b, v.top()]).is_err());
    }
}
