use rand::Rng;

use crate::discrete::{
    cor4_check, is_pointwise_closed, is_w_kernel, kernel_generated, madden_frame, render_vec, vec_add, vec_join,
    vec_leq, vec_meet, DiscreteSpace, SubgroupSpec, SupportSubgroup,
};
use crate::format::{write_frame, write_seq};
use crate::frame::{boolean_embedding, booleanize, finite_morphism_check, Frame, FrameHom, OmegaFrame};
use crate::random::{frame, sequence, small_q};
use crate::rational::Q;
use crate::rl::Rl;

use super::{check, seeded, Outcome};

/// One case per zero set `Z ⊆ X`: `K_Z` is a W-kernel, is pointwise closed,
/// is generated by its unit vectors and corresponds to `X ∖ Z` in the kernel
/// frame, with inclusions matching the order of `2^X`. Checks about the
/// whole lattice (kernel frame, cozero density, bounded membership,
/// rejection of non-convex presentations) add a failing case only when
/// they fail.
pub fn kernels_exhaustive(dim: usize) -> Vec<Outcome> {
    let full = (1u64 << dim) - 1;
    let mf = madden_frame(dim);
    let sp = DiscreteSpace::new(dim);
    let fr = sp.frame();
    let mut out: Vec<Outcome> = (0..=full)
        .map(|z| {
            let k = SupportSubgroup::new(dim, z);
            let spec = SubgroupSpec::Support(k);
            let w = is_w_kernel(&spec).map(|r| r.is_w_kernel).unwrap_or(false);
            let closed = is_pointwise_closed(&spec, 2).map(|r| r.closed).unwrap_or(false);
            let generated = kernel_generated(dim, &k.generators()) == k;
            let i = z as usize;
            let placed = mf.kernels[i] == k
                && mf.iso[i] == sp.open(full & !z)
                && mf
                    .kernels
                    .iter()
                    .zip(&mf.iso)
                    .all(|(l, o)| k.is_subgroup_of(l) == fr.leq(&mf.iso[i], o));
            check(w && closed && generated && placed, || {
                format!("{k:?}: w_kernel={w} pointwise_closed={closed} generated={generated} frame={placed}")
            })
        })
        .collect();
    if !(mf.valid() && sp.cozero_dense()) {
        out.push(Outcome::Fail(format!("kernel frame checks {:?}", mf.checks)));
    }
    if let (_, Some((g, h))) = cor4_check(dim) {
        out.push(Outcome::Fail(format!(
            "membership g={} h={}",
            render_vec(&g),
            render_vec(&h)
        )));
    }
    let mut rejected = vec![SubgroupSpec::IntegerLattice { dim }];
    if dim > 1 {
        rejected.push(SubgroupSpec::Span {
            dim,
            gens: vec![vec![Q::ONE; dim]],
        });
    }
    for spec in rejected {
        if is_w_kernel(&spec).is_ok() || is_pointwise_closed(&spec, 2).is_ok() {
            out.push(Outcome::Fail(format!("{spec:?} accepted")));
        }
    }
    out
}

/// The hat maps on `2^X` and ω+1 preserve `+`, `∨`, `∧` and negation and
/// reflect order, and `unhat` inverts the hat on `2^X`.
pub fn hat_embedding(seed: u64, n: usize) -> Vec<Outcome> {
    seeded(seed, n, |i, rng| {
        if i % 2 == 0 {
            let sp = DiscreteSpace::new(rng.gen_range(1..=4));
            let rl = sp.rl();
            let f: Vec<_> = (0..sp.dim()).map(|_| small_q(rng)).collect();
            let g: Vec<_> = (0..sp.dim()).map(|_| small_q(rng)).collect();
            let (hf, hg) = (sp.hat(&f), sp.hat(&g));
            let neg: Vec<_> = f.iter().map(|q| -*q).collect();
            let ok = sp.hat(&vec_add(&f, &g)) == rl.add(&hf, &hg)
                && sp.hat(&vec_join(&f, &g)) == rl.join(&hf, &hg)
                && sp.hat(&vec_meet(&f, &g)) == rl.meet(&hf, &hg)
                && sp.hat(&neg) == rl.neg(&hf)
                && vec_leq(&f, &g) == rl.leq(&hf, &hg)
                && sp.unhat(&hf).as_ref() == Some(&f);
            check(ok, || format!("f={} g={}", render_vec(&f), render_vec(&g)))
        } else {
            let rl = Rl::new(&OmegaFrame);
            let f = sequence(rng, 4);
            let g = sequence(rng, 4);
            let (hf, hg) = (f.hat(rl), g.hat(rl));
            let ok = f.add(&g).hat(rl) == rl.add(&hf, &hg)
                && f.join(&g).hat(rl) == rl.join(&hf, &hg)
                && f.meet(&g).hat(rl) == rl.meet(&hf, &hg)
                && f.neg().hat(rl) == rl.neg(&hf)
                && f.leq(&g) == rl.leq(&hf, &hg);
            check(ok, || {
                format!("{}{}", write_seq(Some("f"), &f), write_seq(Some("g"), &g))
            })
        }
    })
}

/// Booleanization and the boolean embedding on random finite frames.
pub fn frame_calculus(seed: u64, n: usize) -> Vec<Outcome> {
    seeded(seed, n, |_, rng| {
        let fr = frame(rng, 6);
        let b = booleanize(&fr);
        let rep = finite_morphism_check(&b.map);
        let dd = |x| fr.pseudocomplement(&fr.pseudocomplement(x));
        let elems = fr.elements();
        let collapse = elems.iter().all(|x| {
            elems
                .iter()
                .all(|y| (b.map.apply(x) == b.map.apply(y)) == (dd(x) == dd(y)))
        });
        let all_regular = elems.iter().all(|x| dd(x) == *x);
        let emb = finite_morphism_check(&boolean_embedding(&fr));
        let checks = [
            ("boolean", b.frame.classify().boolean),
            ("frame-map", rep.frame_map),
            ("collapse=double-negation", collapse),
            ("injective=all-regular", rep.injective == all_regular),
            ("embedding", emb.frame_map && emb.injective),
        ];
        let failed: Vec<&str> = checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect();
        check(failed.is_empty(), || {
            format!("failed={}\n{}", failed.join(","), write_frame(&fr))
        })
    })
}
