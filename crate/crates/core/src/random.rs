//! Seeded generators for randomized suites. Each case draws from its own
//! stream so results do not depend on evaluation order.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::discrete::{EventuallyConstant, QVec};
use crate::frame::{Down, FiniteFrame, Frame, Poset};
use crate::pointwise::DownsetSpec;
use crate::rational::Q;
use crate::rl::{Rl, Step};

pub type CaseRng = ChaCha8Rng;

/// Stream for case `i` of a run seeded with `seed`.
pub fn case_rng(seed: u64, i: usize) -> CaseRng {
    let mix = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ (i as u64).wrapping_mul(0xD1B5_4A32_D192_ED03);
    ChaCha8Rng::seed_from_u64(mix)
}

/// `n/d` with `|n/d| ≤ 3` and `d ∈ {1, 2, 3}`.
pub fn small_q(rng: &mut CaseRng) -> Q {
    let d = rng.gen_range(1..=3i64);
    Q::new(rng.gen_range(-3 * d..=3 * d) as i128, d as i128)
}

/// `k` distinct sorted values from [`small_q`].
pub fn thresholds(rng: &mut CaseRng, k: usize) -> Vec<Q> {
    let mut ts: Vec<Q> = Vec::with_capacity(k);
    while ts.len() < k {
        let t = small_q(rng);
        if !ts.contains(&t) {
            ts.push(t);
        }
    }
    ts.sort();
    ts
}

/// Points `p0 … p{n-1}`, each pair `i < j` related with probability 1/3.
/// Relations only go up in index, so the result is acyclic.
pub fn poset(rng: &mut CaseRng, n: usize) -> Poset {
    let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let mut rel = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_ratio(1, 3) {
                rel.push((i, j));
            }
        }
    }
    Poset::from_relations(names, &rel).expect("acyclic by construction")
}

/// Frame of downsets of a random poset with `1..=max_points` points.
pub fn frame(rng: &mut CaseRng, max_points: usize) -> FiniteFrame {
    let n = rng.gen_range(1..=max_points);
    FiniteFrame::new(format!("R{n}"), poset(rng, n)).expect("nonempty poset")
}

/// `2^X` with `1..=max_atoms` points.
pub fn boolean_frame(rng: &mut CaseRng, max_atoms: usize) -> FiniteFrame {
    let n = rng.gen_range(1..=max_atoms);
    FiniteFrame::discrete(format!("B{n}"), (0..n).map(|i| format!("a{i}")))
}

/// A step with 1 to `max_thresholds` thresholds whose values descend
/// through complemented elements.
pub fn step(rng: &mut CaseRng, rl: Rl<'_, FiniteFrame>, max_thresholds: usize) -> Step<Down> {
    let fr = rl.frame();
    let clopen = fr.complemented_elements();
    let k = rng.gen_range(1..=max_thresholds.max(1));
    let ts = thresholds(rng, k);
    let mut values = vec![fr.top()];
    for _ in 1..k {
        let cur = *values.last().expect("nonempty");
        let below: Vec<Down> = clopen.iter().copied().filter(|c| fr.leq(c, &cur)).collect();
        values.push(*below.choose(rng).expect("bottom is below"));
    }
    values.push(fr.bottom());
    rl.validate(ts, values).expect("complemented descending chain")
}

/// Entries drawn from `levels`.
pub fn vector(rng: &mut CaseRng, dim: usize, levels: &[Q]) -> QVec {
    (0..dim).map(|_| *levels.choose(rng).expect("levels")).collect()
}

pub fn sequence(rng: &mut CaseRng, max_prefix: usize) -> EventuallyConstant {
    let len = rng.gen_range(0..=max_prefix);
    EventuallyConstant::new((0..len).map(|_| small_q(rng)).collect(), small_q(rng))
}

/// Bounded with probability 1/2; otherwise one or two nonnegative
/// directions, at least one nonzero.
pub fn downset(rng: &mut CaseRng, dim: usize) -> DownsetSpec {
    let n = rng.gen_range(1..=3);
    let gens = (0..n).map(|_| (0..dim).map(|_| small_q(rng)).collect()).collect();
    let mut dirs: Vec<QVec> = Vec::new();
    if rng.gen_bool(0.5) {
        for _ in 0..rng.gen_range(1..=2) {
            let mut d: QVec = (0..dim)
                .map(|_| if rng.gen_bool(0.5) { small_q(rng).abs() } else { Q::ZERO })
                .collect();
            if d.iter().all(Q::is_zero) {
                d[rng.gen_range(0..dim)] = Q::ONE;
            }
            dirs.push(d);
        }
    }
    DownsetSpec::new(dim, gens, dirs).expect("valid by construction")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible() {
        let a: Vec<Q> = (0..5).map(|_| small_q(&mut case_rng(7, 3))).collect();
        let b: Vec<Q> = (0..5).map(|_| small_q(&mut case_rng(7, 3))).collect();
        assert_eq!(a, b);
        assert_ne!(thresholds(&mut case_rng(7, 3), 4), thresholds(&mut case_rng(7, 4), 4));
    }

    #[test]
    fn generated_objects_are_valid() {
        for i in 0..50 {
            let mut rng = case_rng(1, i);
            let f = frame(&mut rng, 5);
            let rl = Rl::new(&f);
            let s = step(&mut rng, rl, 4);
            assert!(rl.validate(s.thresholds().to_vec(), s.values().to_vec()).is_ok());
            let z = downset(&mut rng, 3);
            assert!(!z.generators.is_empty());
            assert!(z.directions.iter().all(|d| d.iter().any(Q::is_positive)));
            assert!(sequence(&mut rng, 4).prefix().len() <= 4);
        }
    }
}
