use crate::format::{write_frame, write_step};
use crate::frame::{Down, FiniteFrame, Frame};
use crate::random::{boolean_frame, frame, small_q, step, CaseRng};
use crate::rl::{cor1_check, lift, Cor1Case, PlTerm, Rl, Step, COR1_IDENTITIES};

use super::{check, seeded, Outcome};

fn dump(f: &FiniteFrame, steps: &[(&str, &Step<Down>)]) -> String {
    let rl = Rl::new(f);
    let mut s = write_frame(f);
    for (name, st) in steps {
        s.push_str(&write_step(name, f.name(), rl, st));
        s.push('\n');
    }
    s
}

/// `lift` of `x+y`, `x−y`, `max`, `min` against the closed-form operations
/// on boolean frames with at most 16 elements.
pub fn lift_vs_arith(seed: u64, n: usize, max_grid: usize) -> Vec<Outcome> {
    seeded(seed, n, |_, rng| {
        let fr = boolean_frame(rng, 4);
        let rl = Rl::new(&fr);
        let f = step(rng, rl, 3);
        let g = step(rng, rl, 3);
        let (x, y) = (PlTerm::var(0), PlTerm::var(1));
        let cases = [
            ("add", x.clone().add(y.clone()), rl.add(&f, &g)),
            ("sub", x.clone().sub(y.clone()), rl.sub(&f, &g)),
            ("join", x.clone().max(y.clone()), rl.join(&f, &g)),
            ("meet", x.min(y), rl.meet(&f, &g)),
        ];
        for (op, term, closed) in cases {
            match lift(rl, &term, &[&f, &g], max_grid) {
                Ok(l) if l == closed => {}
                Ok(_) => return Outcome::Fail(format!("op={op}\n{}", dump(&fr, &[("f", &f), ("g", &g)]))),
                Err(e) => return Outcome::Fail(format!("op={op} error={e}\n{}", dump(&fr, &[("f", &f), ("g", &g)]))),
            }
        }
        Outcome::Pass
    })
}

fn any_frame(rng: &mut CaseRng, i: usize) -> FiniteFrame {
    if i.is_multiple_of(2) {
        boolean_frame(rng, 3)
    } else {
        frame(rng, 4)
    }
}

/// The five identities on boolean and general finite frames, with
/// stabilization of identity 5 required within 64 steps.
pub fn cor1(seed: u64, n: usize, max_grid: usize) -> Vec<Outcome> {
    seeded(seed, n, |i, rng| {
        let fr = any_frame(rng, i);
        let rl = Rl::new(&fr);
        let f = step(rng, rl, 3);
        let g = rl.pos(&step(rng, rl, 3));
        let (c, r) = (small_q(rng), small_q(rng));
        let ce = |why: String| Outcome::Fail(format!("{why} c={c} r={r}\n{}", dump(&fr, &[("f", &f), ("g", &g)])));
        let case = Cor1Case {
            f: f.clone(),
            g: g.clone(),
            c,
            r,
        };
        match cor1_check(rl, &case, 64, max_grid) {
            Ok(rep) => match rep.first_failure() {
                None => Outcome::Pass,
                Some(k) => ce(format!("identity={}", COR1_IDENTITIES[k])),
            },
            Err(e) => ce(format!("error={e}")),
        }
    })
}

/// ℓ-group identities that hold in ℝ, checked in R(L) both through the
/// closed-form operations and through `lift` of each side.
pub fn cor2(seed: u64, n: usize, max_grid: usize) -> Vec<Outcome> {
    seeded(seed, n, |i, rng| {
        let fr = any_frame(rng, i);
        let rl = Rl::new(&fr);
        let f = step(rng, rl, 2);
        let g = step(rng, rl, 2);
        let h = step(rng, rl, 2);
        let neg_part = |u: &Step<Down>| rl.pos(&rl.neg(u));
        let identities = [
            (
                "meet-distributes",
                rl.meet(&f, &rl.join(&g, &h)),
                rl.join(&rl.meet(&f, &g), &rl.meet(&f, &h)),
            ),
            (
                "join-distributes",
                rl.join(&f, &rl.meet(&g, &h)),
                rl.meet(&rl.join(&f, &g), &rl.join(&f, &h)),
            ),
            ("absorb-meet", rl.meet(&f, &rl.join(&f, &g)), f.clone()),
            ("absorb-join", rl.join(&f, &rl.meet(&f, &g)), f.clone()),
            (
                "add-join",
                rl.add(&f, &rl.join(&g, &h)),
                rl.join(&rl.add(&f, &g), &rl.add(&f, &h)),
            ),
            (
                "add-meet",
                rl.add(&f, &rl.meet(&g, &h)),
                rl.meet(&rl.add(&f, &g), &rl.add(&f, &h)),
            ),
            (
                "join-plus-meet",
                rl.add(&rl.join(&f, &g), &rl.meet(&f, &g)),
                rl.add(&f, &g),
            ),
            ("pos-minus-neg", rl.sub(&rl.pos(&f), &neg_part(&f)), f.clone()),
            ("abs", rl.abs(&f), rl.add(&rl.pos(&f), &neg_part(&f))),
            ("sub-add", rl.add(&rl.sub(&f, &g), &g), f.clone()),
        ];
        let all = [("f", &f), ("g", &g), ("h", &h)];
        for (name, lhs, rhs) in &identities {
            if lhs != rhs {
                return Outcome::Fail(format!("identity={name}\n{}", dump(&fr, &all)));
            }
        }
        let (x, y, z) = (PlTerm::var(0), PlTerm::var(1), PlTerm::var(2));
        let lifted = [
            (
                "lift-join-plus-meet",
                x.clone().max(y.clone()).add(x.clone().min(y.clone())),
                x.clone().add(y.clone()),
            ),
            (
                "lift-meet-distributes",
                x.clone().min(y.clone().max(z.clone())),
                x.clone().min(y.clone()).max(x.min(z)),
            ),
        ];
        for (name, l, r) in &lifted {
            let a = lift(rl, l, &[&f, &g, &h], max_grid);
            let b = lift(rl, r, &[&f, &g, &h], max_grid);
            let ok = matches!((&a, &b), (Ok(u), Ok(v)) if u == v);
            if !ok {
                return Outcome::Fail(format!("identity={name}\n{}", dump(&fr, &all)));
            }
        }
        check(true, String::new)
    })
}
