use rand::Rng;

use crate::discrete::{
    describe_family, oracle_sup_check, render_vec, vec_add, vec_join, DiscreteSpace, EventuallyConstant, QVec,
};
use crate::format::{write_downset, write_frame, write_seq, write_step, write_vec};
use crate::frame::{Down, FiniteFrame, Frame, OmegaElem, OmegaFrame};
use crate::pointwise::{
    auto_s, check_pointwise_sup, is_mobile, mobility_by_simulation, reconstruct, separating_morphism,
    separating_morphism_const, validate_truncate_seq, witness_chi, DownsetSpec, Mobility, PwError,
    SeparationCertificate, SeparationKind, Tail, TruncSeq,
};
use crate::random::{boolean_frame, downset, frame, sequence, small_q, step, vector, CaseRng};
use crate::rational::Q;
use crate::rl::{ExplicitFamily, PrefixIndicators, Rl, Step};

use super::{check, exhaustive, seeded, Outcome};

fn entry_levels() -> Vec<Q> {
    (-2..=2).map(Q::int).collect()
}

/// Nonempty multisets of size at most `max` from `pool`, as index lists.
fn multisets(pool: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(pool: usize, max: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        for i in from..pool {
            cur.push(i);
            out.push(cur.clone());
            if cur.len() < max {
                go(pool, max, i, cur, out);
            }
            cur.pop();
        }
    }
    go(pool, max, 0, &mut cur, &mut out);
    out
}

/// Candidates for `f₀` against a family in dimension 3: the coordinatewise
/// join and its moves by `±e_x`, kept inside the entry range.
fn dim3_candidates(sup: &QVec) -> Vec<QVec> {
    let lo = Q::int(-2);
    let hi = Q::int(2);
    let mut out = vec![sup.clone()];
    for x in 0..sup.len() {
        for d in [Q::ONE, -Q::ONE] {
            let mut v = sup.clone();
            v[x] += d;
            if v[x] >= lo && v[x] <= hi {
                out.push(v);
            }
        }
    }
    out
}

/// Frame-level verdicts against the coordinatewise ones on `2^X`. For
/// `|X| ≤ 2` every candidate is paired with every family of size at most 3;
/// for `|X| = 3` every family is paired with its join and the join moved up
/// or down at one point. Every instance that is not pointwise also gets a
/// separating morphism, which must validate. Each outcome carries the
/// number of separations it performed.
pub fn spatial_oracle() -> (Vec<Outcome>, Vec<(String, String)>) {
    let levels = entry_levels();
    let mut all = Vec::new();
    let mut separated = 0;
    for dim in 1..=3 {
        let sp = DiscreteSpace::new(dim);
        let rl = sp.rl();
        let vecs = sp.grid(&levels);
        let hats: Vec<Step<Down>> = vecs.iter().map(|v| sp.hat(v)).collect();
        let fams = multisets(vecs.len(), 3);
        let outcomes: Vec<(Outcome, usize)> = exhaustive(&fams, |idx| {
            let fam: Vec<QVec> = idx.iter().map(|&i| vecs[i].clone()).collect();
            let ef = ExplicitFamily::new(idx.iter().map(|&i| hats[i].clone()).collect());
            let sup = fam[1..].iter().fold(fam[0].clone(), |a, b| vec_join(&a, b));
            let cands = if dim < 3 { vecs.clone() } else { dim3_candidates(&sup) };
            let mut seps = 0;
            for f0 in &cands {
                let ce = || format!("{}family {}", write_vec(Some("f0"), f0), describe_family(&fam));
                let rep = match oracle_sup_check(&sp, f0, &fam) {
                    Ok(rep) if rep.agree => rep,
                    _ => return (Outcome::Fail(ce()), seps),
                };
                if rep.frame_pointwise {
                    continue;
                }
                seps += 1;
                let ok = matches!(separating_morphism(rl, &ef, &sp.hat(f0)),
                    Ok((_, cert)) if judge(&cert, rep.frame_upper));
                if !ok {
                    return (Outcome::Fail(format!("separation {}", ce())), seps);
                }
            }
            (Outcome::Pass, seps)
        });
        for (o, n) in outcomes {
            separated += n;
            all.push(o);
        }
    }
    (all, vec![("SEPARATED".to_string(), separated.to_string())])
}

/// The certificate validates, an upper bound is always separated, and the
/// fallback kind only appears for non-upper bounds. A non-upper bound may
/// still be separated when its smallest failing ray is negative.
fn judge(cert: &SeparationCertificate, upper: bool) -> bool {
    cert.valid() && (!upper || cert.kind == SeparationKind::Separated)
}

fn perturbation(rng: &mut CaseRng, dim: usize) -> QVec {
    (0..dim)
        .map(|_| if rng.gen_bool(0.5) { Q::ONE } else { Q::ZERO })
        .collect()
}

enum SepCase {
    Skip,
    Done { ok: bool, upper: bool, ce: String },
}

fn separate_spatial(rng: &mut CaseRng) -> SepCase {
    let dim = rng.gen_range(1..=3);
    let sp = DiscreteSpace::new(dim);
    let levels = entry_levels();
    let fam: Vec<QVec> = (0..rng.gen_range(1..=3)).map(|_| vector(rng, dim, &levels)).collect();
    let sup = fam[1..].iter().fold(fam[0].clone(), |a, b| vec_join(&a, b));
    let f0 = if rng.gen_ratio(1, 4) {
        vector(rng, dim, &levels)
    } else {
        vec_add(&sup, &perturbation(rng, dim))
    };
    let rl = sp.rl();
    let hats = ExplicitFamily::new(fam.iter().map(|k| sp.hat(k)).collect());
    let hat0 = sp.hat(&f0);
    let v = check_pointwise_sup(rl, &hat0, &hats).expect("explicit family");
    if v.is_pointwise {
        return SepCase::Skip;
    }
    let ce = format!("spatial {}family {}", write_vec(Some("f0"), &f0), describe_family(&fam));
    match separating_morphism(rl, &hats, &hat0) {
        Ok((_, cert)) => SepCase::Done {
            ok: judge(&cert, v.is_upper_bound),
            upper: v.is_upper_bound,
            ce,
        },
        Err(e) => SepCase::Done {
            ok: false,
            upper: false,
            ce: format!("{ce} error={e}"),
        },
    }
}

fn dump_finite(fr: &FiniteFrame, f0: &Step<Down>, fam: &[Step<Down>]) -> String {
    let rl = Rl::new(fr);
    let mut s = write_frame(fr);
    s.push_str(&write_step("f0", fr.name(), rl, f0));
    s.push('\n');
    for (i, k) in fam.iter().enumerate() {
        s.push_str(&write_step(&format!("k{i}"), fr.name(), rl, k));
        s.push('\n');
    }
    s
}

fn separate_finite(rng: &mut CaseRng) -> SepCase {
    let fr = frame(rng, 4);
    let rl = Rl::new(&fr);
    let fam: Vec<Step<Down>> = (0..rng.gen_range(1..=3)).map(|_| step(rng, rl, 2)).collect();
    let sup = fam[1..].iter().fold(fam[0].clone(), |a, b| rl.join(&a, b));
    let f0 = if rng.gen_ratio(1, 4) {
        step(rng, rl, 2)
    } else {
        rl.add(&sup, &rl.pos(&step(rng, rl, 2)))
    };
    let hats = ExplicitFamily::new(fam.clone());
    let v = check_pointwise_sup(rl, &f0, &hats).expect("explicit family");
    if v.is_pointwise {
        return SepCase::Skip;
    }
    let ce = dump_finite(&fr, &f0, &fam);
    match separating_morphism(rl, &hats, &f0) {
        Ok((_, cert)) => SepCase::Done {
            ok: judge(&cert, v.is_upper_bound),
            upper: v.is_upper_bound,
            ce,
        },
        Err(e) => SepCase::Done {
            ok: false,
            upper: false,
            ce: format!("{ce}error={e}"),
        },
    }
}

fn separate_omega(rng: &mut CaseRng) -> SepCase {
    let rl = Rl::new(&OmegaFrame);
    let fam: Vec<EventuallyConstant> = (0..rng.gen_range(1..=3)).map(|_| sequence(rng, 3)).collect();
    let sup = fam[1..].iter().fold(fam[0].clone(), |a, b| a.join(b));
    let f0 = if rng.gen_ratio(1, 4) {
        sequence(rng, 3)
    } else {
        sup.add(&sequence(rng, 3).map(|q| q.max(Q::ZERO)))
    };
    let hats = ExplicitFamily::new(fam.iter().map(|k| k.hat(rl)).collect::<Vec<Step<OmegaElem>>>());
    let hat0 = f0.hat(rl);
    let v = check_pointwise_sup(rl, &hat0, &hats).expect("explicit family");
    if v.is_pointwise {
        return SepCase::Skip;
    }
    let mut ce = format!("omega {}", write_seq(Some("f0"), &f0));
    for (i, k) in fam.iter().enumerate() {
        ce.push_str(&write_seq(Some(&format!("k{i}")), k));
    }
    match separating_morphism(rl, &hats, &hat0) {
        Ok((_, cert)) => SepCase::Done {
            ok: judge(&cert, v.is_upper_bound),
            upper: v.is_upper_bound,
            ce,
        },
        Err(e) => SepCase::Done {
            ok: false,
            upper: false,
            ce: format!("{ce} error={e}"),
        },
    }
}

/// Separating morphisms for non-pointwise instances. Case 0 is the
/// prefix-indicator family on ω+1 against the constant 1; the rest cycle
/// through `2^X`, general finite frames and explicit families on ω+1.
pub fn separation(seed: u64, n: usize) -> (Vec<Outcome>, Vec<(String, String)>) {
    let results: Vec<(Outcome, Option<bool>)> = seeded(seed, n, |i, rng| {
        let case = match i {
            0 => {
                let rl = Rl::new(&OmegaFrame);
                match separating_morphism_const(rl, PrefixIndicators, Q::ONE) {
                    Ok((_, cert)) => SepCase::Done {
                        ok: judge(&cert, true),
                        upper: true,
                        ce: "omega prefix_indicators f0=1".into(),
                    },
                    Err(e) => SepCase::Done {
                        ok: false,
                        upper: false,
                        ce: format!("omega demo error={e}"),
                    },
                }
            }
            _ if i % 3 == 1 => separate_spatial(rng),
            _ if i % 3 == 2 => separate_finite(rng),
            _ => separate_omega(rng),
        };
        match case {
            SepCase::Skip => (Outcome::Skip, None),
            SepCase::Done { ok: true, upper, .. } => (Outcome::Pass, Some(upper)),
            SepCase::Done { ce, .. } => (Outcome::Fail(ce), None),
        }
    });
    let upper = results.iter().filter(|(_, s)| *s == Some(true)).count();
    let not_upper = results.iter().filter(|(_, s)| *s == Some(false)).count();
    let extra = vec![
        ("UPPER_SEPARATED".to_string(), upper.to_string()),
        ("NOT_UPPER".to_string(), not_upper.to_string()),
    ];
    (results.into_iter().map(|(o, _)| o).collect(), extra)
}

/// `χ` witnesses on boolean frames for families `kᵢ ∧ f₀` that withhold a
/// ray from `f₀`.
pub fn chi(seed: u64, n: usize) -> Vec<Outcome> {
    seeded(seed, n, |_, rng| {
        let fr = boolean_frame(rng, 3);
        let rl = Rl::new(&fr);
        let f0 = step(rng, rl, 3);
        let fam: Vec<Step<Down>> = (0..rng.gen_range(1..=3))
            .map(|_| rl.meet(&step(rng, rl, 3), &f0))
            .collect();
        let ef = ExplicitFamily::new(fam.clone());
        let v = check_pointwise_sup(rl, &f0, &ef).expect("explicit family");
        let Some(r) = v.failing_ray() else {
            return Outcome::Skip;
        };
        let s = auto_s(rl, &f0, &ef, r);
        let ok = matches!(witness_chi(rl, &f0, &ef, r, s), Ok(w) if w.valid());
        check(ok, || format!("r={r} s={s}\n{}", dump_finite(&fr, &f0, &fam)))
    })
}

/// Expected witness for a condition (1) mutation lowering `g_j` by 1/2.
fn class1_witness<F: Frame>(rl: Rl<'_, F>, seq: &TruncSeq<F::Elem>, j: usize) -> usize {
    if j >= 2 && rl.truncate(&seq.prefix[j - 1], Q::int(j as i64 - 1)) != seq.prefix[j - 2] {
        j - 1
    } else {
        j
    }
}

/// Round trip plus a condition (1) mutation; returns a failure description.
fn trunc_round_trip<F: Frame>(rl: Rl<'_, F>, h: &Step<F::Elem>, rng: &mut CaseRng) -> Option<String> {
    let seq = TruncSeq::of(rl, h);
    match reconstruct(rl, &seq) {
        Ok(rec) if rec.valid() && rec.h == *h => {}
        Ok(_) => return Some("round trip changed h".into()),
        Err(e) => return Some(format!("round trip error={e}")),
    }
    let m = seq.len_prefix();
    let j = rng.gen_range(1..m);
    let mut bad = seq.clone();
    bad.prefix[j - 1] = rl.add_const(&seq.prefix[j - 1], -Q::new(1, 2));
    let expect = class1_witness(rl, &bad, j);
    match validate_truncate_seq(rl, &bad) {
        Err(PwError::NotATruncateSequence { condition: 1, witness }) if witness == expect => None,
        other => Some(format!("class 1 at j={j}: expected witness {expect}, got {other:?}")),
    }
}

/// Condition (2) mutation on `2^X`: `g_n = n` on a clopen `a ≠ ∅` and
/// `h ∧ n` elsewhere, ramping on `a`. The rays `g_n(−∞,n)` never reach `a`;
/// the partial joins settle once `n > max_{x∉a} h(x)`.
fn trunc_class2(sp: &DiscreteSpace, h: &QVec, rng: &mut CaseRng) -> Option<String> {
    let rl = sp.rl();
    let a_mask = rng.gen_range(1..=sp.full_mask());
    let a = sp.open(a_mask);
    let outside = (0..sp.dim()).filter(|x| a_mask >> x & 1 == 0).map(|x| h[x]).max();
    let expect = outside.map_or(1, |mx| (mx.floor() + 1).max(1) as usize);
    let top = h.iter().copied().max().unwrap_or(Q::ZERO).ceil().max(2) as usize;
    let hh = sp.hat(h);
    let prefix = (1..=top)
        .map(|n| {
            let nq = Q::int(n as i64);
            rl.glue(&a, &rl.constant(nq), &rl.truncate(&hh, nq))
        })
        .collect();
    let d = rl.characteristic(&a).expect("open sets of 2^X are complemented");
    let seq = TruncSeq {
        prefix,
        tail: Tail::Ramp(d),
    };
    match validate_truncate_seq(rl, &seq) {
        Err(PwError::NotATruncateSequence { condition: 2, witness }) if witness == expect => None,
        other => Some(format!(
            "class 2 with a={} h={}: expected witness {expect}, got {other:?}",
            sp.frame().render(&a),
            render_vec(h)
        )),
    }
}

/// Truncate round trips and mutations. Even cases use ω+1, odd cases
/// alternate a general finite frame with `2^X`, where the condition (2)
/// mutation is also run.
pub fn truncates(seed: u64, n: usize) -> (Vec<Outcome>, Vec<(String, String)>) {
    let outcomes = seeded(seed, n, |i, rng| {
        if i % 2 == 0 {
            let rl = Rl::new(&OmegaFrame);
            let s = sequence(rng, 4);
            let fail = trunc_round_trip(rl, &s.hat(rl), rng);
            check(fail.is_none(), || {
                format!("{} {}", write_seq(Some("h"), &s), fail.unwrap())
            })
        } else if i % 4 == 1 {
            let fr = frame(rng, 4);
            let rl = Rl::new(&fr);
            let h = step(rng, rl, 3);
            let fail = trunc_round_trip(rl, &h, rng);
            check(fail.is_none(), || {
                format!(
                    "{}\n{}{}",
                    fail.unwrap(),
                    write_frame(&fr),
                    write_step("h", fr.name(), rl, &h)
                )
            })
        } else {
            let sp = DiscreteSpace::new(rng.gen_range(1..=3));
            let h: QVec = (0..sp.dim()).map(|_| small_q(rng)).collect();
            let fail = trunc_round_trip(sp.rl(), &sp.hat(&h), rng).or_else(|| trunc_class2(&sp, &h, rng));
            check(fail.is_none(), || {
                format!("{} {}", write_vec(Some("h"), &h), fail.unwrap())
            })
        }
    });
    let count = |pred: fn(usize) -> bool| (0..n).filter(|&i| pred(i)).count().to_string();
    let extra = vec![
        ("OMEGA".to_string(), count(|i| i % 2 == 0)),
        ("FINITE".to_string(), count(|i| i % 2 == 1)),
        ("CLASS1".to_string(), n.to_string()),
        ("CLASS2".to_string(), count(|i| i % 4 == 3)),
    ];
    (outcomes, extra)
}

fn shifts_into(z: &DownsetSpec, g: &[Q]) -> bool {
    g.iter().all(|q| !q.is_negative())
        && g.iter().any(Q::is_positive)
        && z.generators.iter().all(|p| z.contains(&vec_add(p, g)))
}

/// Bounded downsets are mobile, downsets with a recession direction are
/// immobile with a verified witness, truncate-generated downsets are mobile.
pub fn mobility(seed: u64, n: usize) -> Vec<Outcome> {
    seeded(seed, n, |i, rng| {
        let dim = rng.gen_range(1..=3);
        let z = match i % 3 {
            0 => {
                let gens = (0..rng.gen_range(1..=3))
                    .map(|_| (0..dim).map(|_| small_q(rng)).collect())
                    .collect();
                DownsetSpec::bounded(dim, gens).expect("dimensions agree")
            }
            1 => loop {
                let z = downset(rng, dim);
                if !z.directions.is_empty() {
                    break z;
                }
            },
            _ => DownsetSpec::from_truncates(&(0..dim).map(|_| small_q(rng)).collect::<Vec<Q>>()),
        };
        let ok = match (i % 3, is_mobile(&z)) {
            (1, Ok(Mobility::Immobile { g })) => shifts_into(&z, &g) && mobility_by_simulation(&z).is_some(),
            (0, Ok(Mobility::Mobile)) => mobility_by_simulation(&z).is_none(),
            (2, Ok(Mobility::Mobile)) => true,
            _ => false,
        };
        check(ok, || write_downset(Some("z"), &z))
    })
}
