//! One function per verb. Each returns a report whose exit code is 0 for a
//! verified verdict and 1 for a falsified one; input errors come back as
//! [`CliError`].

use std::path::Path;

use pointfree::discrete::{
    oracle_sup_check, oracle_sup_check_omega, DiscreteSpace, EventuallyConstant, OmegaFamily, OracleReport, QVec,
};
use pointfree::format::{Document, FamilyKind, FrameDecl};
use pointfree::frame::{booleanize, finite_morphism_check, law_check, Classify, Frame, OmegaElem};
use pointfree::pointwise::{
    auto_s, check_pointwise_inf, check_pointwise_sup, is_mobile, mobility_by_simulation, reconstruct,
    separating_morphism, separating_morphism_const, validate_truncate_seq, witness_chi, Mobility, PointwiseVerdict,
    PwError, SeparationCertificate, SeparationKind,
};
use pointfree::rational::Q;
use pointfree::rl::{lift, PlTerm, RayFamily, Rl};
use pointfree::suites::{run_suite, SuiteConfig};

use crate::load::{
    as_constant, family, frame_of_step, frame_ref, max_grid, read_document, step, trunc_seq, with_backend, Backend,
    CliError, DynFamily, Fam, OMEGA,
};
use crate::report::{yes_no, Line, Report};

fn selected<'d, T>(
    items: &'d [T],
    name_of: impl Fn(&T) -> Option<&str>,
    only: Option<&str>,
) -> Result<Vec<&'d T>, CliError> {
    let picked: Vec<&T> = items.iter().filter(|t| only.is_none() || name_of(t) == only).collect();
    match (only, picked.is_empty()) {
        (Some(n), true) => Err(CliError::new("UnknownName", format!("no declaration `{n}`"))),
        (None, true) => Err(CliError::new("EmptyInput", "nothing to check in the input")),
        _ => Ok(picked),
    }
}

/// Elements of ω+1 used to exercise the frame laws.
fn omega_sample() -> Vec<OmegaElem> {
    vec![
        OMEGA.top(),
        OMEGA.bottom(),
        OmegaElem::fin([0]),
        OmegaElem::fin([0, 2]),
        OmegaElem::fin([1, 3]),
        OmegaElem::cofin([]),
        OmegaElem::cofin([1]),
        OmegaElem::cofin([0, 2]),
        OmegaElem::cofin_nat([]),
        OmegaElem::cofin_nat([0]),
        OmegaElem::cofin_nat([1, 2]),
    ]
}

pub fn frame_check(file: &Path, only: Option<&str>) -> Result<Report, CliError> {
    let doc = read_document(file)?;
    let mut rep = Report::default();
    for entry in selected(&doc.frames, |f| Some(f.name.as_str()), only)? {
        let mut line = Line::new().kv("FRAME", &entry.name);
        let laws = match &entry.decl {
            FrameDecl::Finite(f) => {
                line.push("KIND", "finite");
                line.push("POINTS", f.poset().len());
                line.push("ELEMENTS", f.len());
                line.push("COZERO", f.cozero().len());
                law_check(f, f.elements())
            }
            FrameDecl::Omega => {
                let sample = omega_sample();
                line.push("KIND", "omega");
                line.push("SAMPLE", sample.len());
                law_check(&OMEGA, &sample)
            }
        };
        line.push("CHECKED", laws.checked);
        match laws.violation {
            None => line.push("LAWS", "ok"),
            Some(v) => {
                line.push("LAWS", "fail");
                line.push("VIOLATION", v);
                rep.falsify();
            }
        }
        rep.line(line);
    }
    Ok(rep)
}

fn classify_line<F: Classify>(name: &str, fr: &F) -> Line {
    let c = fr.classify();
    let mut line = Line::new()
        .kv("FRAME", name)
        .kv("BOOLEAN", yes_no(c.boolean))
        .kv("ED", yes_no(c.extremally_disconnected))
        .kv("BD", yes_no(c.basically_disconnected))
        .kv("PFRAME", yes_no(c.p_frame));
    for (k, w) in &c.witnesses {
        line.push(&format!("{}_WITNESS", k.to_uppercase()), w);
    }
    line
}

/// Classification is a report, not a verdict: always exit 0.
pub fn frame_classify(file: &Path, only: Option<&str>) -> Result<Report, CliError> {
    let doc = read_document(file)?;
    let mut rep = Report::default();
    for entry in selected(&doc.frames, |f| Some(f.name.as_str()), only)? {
        rep.line(match &entry.decl {
            FrameDecl::Finite(f) => classify_line(&entry.name, f),
            FrameDecl::Omega => classify_line(&entry.name, &OMEGA),
        });
    }
    Ok(rep)
}

pub fn frame_booleanize(file: &Path, only: Option<&str>) -> Result<Report, CliError> {
    let doc = read_document(file)?;
    let mut rep = Report::default();
    let finite: Vec<_> = doc
        .frames
        .iter()
        .filter(|f| matches!(f.decl, FrameDecl::Finite(_)))
        .collect();
    for entry in selected(&finite, |f| Some(f.name.as_str()), only)? {
        let FrameDecl::Finite(f) = &entry.decl else {
            unreachable!()
        };
        let b = booleanize(f);
        rep.line(
            Line::new()
                .kv("FRAME", &entry.name)
                .kv("TARGET", b.frame.name())
                .kv("ATOMS", b.frame.poset().len()),
        );
        for (x, img) in b.map.table() {
            let regular = f.pseudocomplement(&f.pseudocomplement(&x)) == x;
            rep.line(
                Line::new()
                    .kv("ELEM", f.render(&x))
                    .kv("IMAGE", b.frame.render(&img))
                    .kv("REGULAR", yes_no(regular)),
            );
        }
        let m = finite_morphism_check(&b.map);
        rep.line(
            Line::new()
                .kv("FRAME_MAP", yes_no(m.frame_map))
                .kv("INJECTIVE", yes_no(m.injective))
                .kv("SURJECTIVE", yes_no(m.surjective))
                .kv("BOOLEAN", yes_no(b.frame.classify().boolean)),
        );
        if !m.frame_map {
            rep.falsify();
        }
    }
    Ok(rep)
}

pub fn rl_validate(file: &Path, only: Option<&str>) -> Result<Report, CliError> {
    let doc = read_document(file)?;
    let mut names: Vec<(usize, &str, &str)> = doc
        .finite_steps
        .iter()
        .map(|s| (s.line, s.name.as_str(), s.frame.as_str()))
        .chain(
            doc.omega_steps
                .iter()
                .map(|s| (s.line, s.name.as_str(), s.frame.as_str())),
        )
        .collect();
    names.sort();
    let mut rep = Report::default();
    for (_, name, frame) in selected(&names, |t| Some(t.1), only)? {
        let mut line = Line::new().kv("STEP", name).kv("FRAME", frame);
        let res = with_backend!(frame_ref(&doc, frame)?, |rl| step(&doc, rl, name)
            .map(|s| rl.render(&s)));
        match res {
            Ok(v) => {
                line.push("VALID", "yes");
                line.push("VALUE", v);
            }
            Err(e) if e.kind != "FrameMismatch" => {
                line.push("VALID", "no");
                line.push("ERROR", &e.kind);
                line.push("MESSAGE", &e.message);
                rep.falsify();
            }
            Err(e) => return Err(e),
        }
        rep.line(line);
    }
    Ok(rep)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ArithOp {
    Add,
    Sub,
    Join,
    Meet,
}

impl ArithOp {
    fn name(self) -> &'static str {
        match self {
            ArithOp::Add => "add",
            ArithOp::Sub => "sub",
            ArithOp::Join => "join",
            ArithOp::Meet => "meet",
        }
    }

    fn term(self) -> PlTerm {
        let (x, y) = (PlTerm::var(0), PlTerm::var(1));
        match self {
            ArithOp::Add => x.add(y),
            ArithOp::Sub => x.sub(y),
            ArithOp::Join => x.max(y),
            ArithOp::Meet => x.min(y),
        }
    }
}

fn rl_arith_in<F: Backend>(
    doc: &Document,
    rl: Rl<'_, F>,
    op: ArithOp,
    f: &str,
    g: &str,
    grid: usize,
) -> Result<Report, CliError> {
    let (sf, sg) = (step(doc, rl, f)?, step(doc, rl, g)?);
    let closed = match op {
        ArithOp::Add => rl.add(&sf, &sg),
        ArithOp::Sub => rl.sub(&sf, &sg),
        ArithOp::Join => rl.join(&sf, &sg),
        ArithOp::Meet => rl.meet(&sf, &sg),
    };
    let lifted = lift(rl, &op.term(), &[&sf, &sg], grid)?;
    let mut rep = Report::default();
    rep.line(
        Line::new()
            .kv("OP", op.name())
            .kv("F", f)
            .kv("G", g)
            .kv("RESULT", rl.render(&closed)),
    );
    let mut line = Line::new().kv("LIFT", if lifted == closed { "agree" } else { "disagree" });
    if lifted != closed {
        line.push("LIFTED", rl.render(&lifted));
        rep.falsify();
    }
    rep.line(line);
    Ok(rep)
}

pub fn rl_arith(file: &Path, op: ArithOp, f: &str, g: &str) -> Result<Report, CliError> {
    let grid = max_grid()?;
    let doc = read_document(file)?;
    with_backend!(frame_of_step(&doc, f)?, |rl| rl_arith_in(&doc, rl, op, f, g, grid))
}

fn verdict_lines<E>(rep: &mut Report, render: impl Fn(&E) -> String, v: &PointwiseVerdict<E>, bound_key: &str) {
    rep.line(Line::new().kv(bound_key, yes_no(v.is_upper_bound)));
    let mut line = Line::new().kv("POINTWISE", yes_no(v.is_pointwise));
    if let Some(fail) = &v.failing {
        line.push("FAILING_RAY", fail.r);
        line.push("LHS", render(&fail.lhs));
        line.push("RHS", render(&fail.rhs));
        rep.falsify();
    }
    rep.line(line);
}

fn oracle_line(o: &OracleReport) -> Line {
    Line::new()
        .kv("COORD_UPPER", yes_no(o.coord_upper))
        .kv("COORD_POINTWISE", yes_no(o.coord_pointwise))
        .kv("FAILING_POINT", o.failing_point.as_deref().unwrap_or("none"))
        .kv("AGREE", yes_no(o.agree))
}

fn pw_check_in<F: Backend + 'static>(
    doc: &Document,
    rl: Rl<'_, F>,
    f0: &str,
    fam: &str,
    inf: bool,
) -> Result<Report, CliError> {
    let s0 = step(doc, rl, f0)?;
    let k = family(doc, rl, fam)?;
    let mut rep = Report::default();
    rep.line(
        Line::new()
            .kv("F0", f0)
            .kv("FAMILY", fam)
            .kv("MODE", if inf { "inf" } else { "sup" }),
    );
    let fr = rl.frame();
    if inf {
        let Fam::Explicit(e) = &k else {
            return Err(CliError::new("Unsupported", "infima are checked for explicit families"));
        };
        let v = check_pointwise_inf(rl, &s0, e)?;
        verdict_lines(&mut rep, |x| fr.render(x), &v, "LOWER_BOUND");
    } else {
        let v = check_pointwise_sup(rl, &s0, k.as_dyn())?;
        verdict_lines(&mut rep, |x| fr.render(x), &v, "UPPER_BOUND");
    }
    Ok(rep)
}

fn vec_named<'d>(doc: &'d Document, name: &str) -> Option<&'d QVec> {
    doc.vecs
        .iter()
        .find(|v| v.name.as_deref() == Some(name))
        .map(|v| &v.value)
}

fn seq_named<'d>(doc: &'d Document, name: &str) -> Option<&'d EventuallyConstant> {
    doc.seqs
        .iter()
        .find(|v| v.name.as_deref() == Some(name))
        .map(|v| &v.value)
}

/// Spatial form: `f₀` and the members are vectors on a finite discrete
/// space or sequences on ω+1; the coordinatewise oracle runs alongside.
fn pw_check_spatial(doc: &Document, f0: &str, fam: Option<&str>, members: &[String]) -> Result<Report, CliError> {
    let mut rep = Report::default();
    rep.line(
        Line::new()
            .kv("F0", f0)
            .kv("FAMILY", fam.map_or_else(|| members.join(","), str::to_string))
            .kv("MODE", "sup"),
    );
    let missing = |m: &str| CliError::new("UnknownName", format!("no vec or seq `{m}`"));
    if let Some(v0) = vec_named(doc, f0) {
        if fam.is_some() {
            return Err(CliError::new("Unsupported", "vectors take their family from --members"));
        }
        if !(1..=6).contains(&v0.len()) {
            return Err(CliError::new(
                "DimensionMismatch",
                format!("dimension {} outside 1..=6", v0.len()),
            ));
        }
        let sp = DiscreteSpace::new(v0.len());
        let ks = members
            .iter()
            .map(|m| vec_named(doc, m).cloned().ok_or_else(|| missing(m)))
            .collect::<Result<Vec<_>, _>>()?;
        let o = oracle_sup_check(&sp, v0, &ks)?;
        let hats = pointfree::rl::ExplicitFamily::new(ks.iter().map(|k| sp.hat(k)).collect());
        let v = check_pointwise_sup(sp.rl(), &sp.hat(v0), &hats)?;
        rep.line(oracle_line(&o));
        verdict_lines(&mut rep, |x| sp.frame().render(x), &v, "UPPER_BOUND");
        if !o.agree {
            rep.falsify();
        }
        return Ok(rep);
    }
    let s0 = seq_named(doc, f0).ok_or_else(|| missing(f0))?;
    let ofam = match fam {
        Some(name) => match doc.family(name).map(|d| &d.kind) {
            Some(FamilyKind::PrefixIndicators) => OmegaFamily::PrefixIndicators,
            None => return Err(CliError::new("UnknownName", format!("no family `{name}`"))),
            Some(_) => {
                return Err(CliError::new(
                    "Unsupported",
                    "sequences take prefix_indicators or --members",
                ))
            }
        },
        None => OmegaFamily::Explicit(
            members
                .iter()
                .map(|m| seq_named(doc, m).cloned().ok_or_else(|| missing(m)))
                .collect::<Result<_, _>>()?,
        ),
    };
    let o = oracle_sup_check_omega(s0, &ofam)?;
    let rl = Rl::new(&OMEGA);
    let v = match &ofam {
        OmegaFamily::PrefixIndicators => check_pointwise_sup(rl, &s0.hat(rl), &pointfree::rl::PrefixIndicators)?,
        OmegaFamily::Explicit(ks) => check_pointwise_sup(
            rl,
            &s0.hat(rl),
            &pointfree::rl::ExplicitFamily::new(ks.iter().map(|k| k.hat(rl)).collect()),
        )?,
    };
    rep.line(oracle_line(&o));
    verdict_lines(&mut rep, |x| OMEGA.render(x), &v, "UPPER_BOUND");
    if !o.agree {
        rep.falsify();
    }
    Ok(rep)
}

pub fn pw_check(file: &Path, f0: &str, fam: Option<&str>, members: &[String], inf: bool) -> Result<Report, CliError> {
    let doc = read_document(file)?;
    if doc.step_frame(f0).is_none() {
        if inf {
            return Err(CliError::new("Unsupported", "infima are checked for steps"));
        }
        return pw_check_spatial(&doc, f0, fam, members);
    }
    let fam = fam.ok_or_else(|| CliError::new("MissingArgument", "steps need --family"))?;
    with_backend!(frame_of_step(&doc, f0)?, |rl| pw_check_in(&doc, rl, f0, fam, inf))
}

fn certificate_lines(rep: &mut Report, cert: &SeparationCertificate) {
    let mut head = Line::new();
    match cert.kind {
        SeparationKind::Separated => head.push("KIND", "separated"),
        SeparationKind::NotUpperBound { member } => {
            head.push("KIND", "not_upper_bound");
            head.push("MEMBER", member);
        }
    }
    head.push("R", cert.r);
    head.push("A", &cert.a);
    head.push("B", &cert.b);
    rep.line(head);
    for (name, ok) in &cert.checks {
        rep.line(Line::new().kv("CHECK", name).kv("OK", yes_no(*ok)));
    }
    rep.line(Line::new().kv("VALID", yes_no(cert.valid())));
    if !cert.valid() {
        rep.falsify();
    }
}

fn nothing_to_separate(rep: &mut Report) {
    rep.line(Line::new().kv("POINTWISE", "yes").kv("SEPARATION", "none"));
    rep.falsify();
}

fn pw_separate_in<F: Backend + 'static>(
    doc: &Document,
    rl: Rl<'_, F>,
    f0: &str,
    fam: &str,
) -> Result<Report, CliError> {
    let s0 = step(doc, rl, f0)?;
    let k = family(doc, rl, fam)?;
    let mut rep = Report::default();
    rep.line(Line::new().kv("F0", f0).kv("FAMILY", fam));
    let res = match (&k, as_constant(rl, &s0)) {
        (Fam::Explicit(e), _) => separating_morphism(rl, e, &s0).map(|(_, c)| c),
        (Fam::Template(t), Some(c)) => separating_morphism_const(rl, DynFamily(t.as_ref()), c).map(|(_, c)| c),
        (Fam::Template(_), None) => {
            return Err(CliError::new(
                "Unsupported",
                "template families are separated from constant candidates",
            ))
        }
    };
    match res {
        Ok(cert) => certificate_lines(&mut rep, &cert),
        Err(PwError::IsPointwise) => nothing_to_separate(&mut rep),
        Err(e) => return Err(e.into()),
    }
    Ok(rep)
}

pub fn pw_separate(file: &Path, f0: &str, fam: &str) -> Result<Report, CliError> {
    let doc = read_document(file)?;
    with_backend!(frame_of_step(&doc, f0)?, |rl| pw_separate_in(&doc, rl, f0, fam))
}

fn pw_chi_in<F: Backend + 'static>(
    doc: &Document,
    rl: Rl<'_, F>,
    f0: &str,
    fam: &str,
    r: Option<Q>,
    s: Option<Q>,
) -> Result<Report, CliError> {
    let s0 = step(doc, rl, f0)?;
    let k = family(doc, rl, fam)?;
    let kd = k.as_dyn();
    let mut rep = Report::default();
    rep.line(Line::new().kv("F0", f0).kv("FAMILY", fam));
    let r = match r {
        Some(r) => r,
        None => match check_pointwise_sup(rl, &s0, kd)?.failing_ray() {
            Some(r) => r,
            None => {
                rep.line(Line::new().kv("POINTWISE", "yes").kv("CHI", "none"));
                rep.falsify();
                return Ok(rep);
            }
        },
    };
    let s = s.unwrap_or_else(|| auto_s(rl, &s0, kd, r));
    let w = witness_chi(rl, &s0, kd, r, s)?;
    let fr = rl.frame();
    rep.line(
        Line::new()
            .kv("R", r)
            .kv("S", s)
            .kv("B", fr.render(&w.b))
            .kv("A", fr.render(&w.a))
            .kv("CHI", rl.render(&w.chi)),
    );
    for (name, ok) in &w.checks {
        rep.line(Line::new().kv("CHECK", name).kv("OK", yes_no(*ok)));
    }
    rep.line(Line::new().kv("VALID", yes_no(w.valid())));
    if !w.valid() {
        rep.falsify();
    }
    Ok(rep)
}

pub fn pw_chi(file: &Path, f0: &str, fam: &str, r: Option<&str>, s: Option<&str>) -> Result<Report, CliError> {
    let r = r.map(crate::load::parse_q).transpose()?;
    let s = s.map(crate::load::parse_q).transpose()?;
    let doc = read_document(file)?;
    with_backend!(frame_of_step(&doc, f0)?, |rl| pw_chi_in(&doc, rl, f0, fam, r, s))
}

fn trunc_in<F: Backend>(
    doc: &Document,
    rl: Rl<'_, F>,
    name: &str,
    rebuild: bool,
    rep: &mut Report,
) -> Result<(), CliError> {
    let seq = trunc_seq(doc, rl, name)?;
    let mut line = Line::new().kv("SEQ", name);
    let fail = |line: &mut Line, rep: &mut Report, condition: u8, witness: usize| {
        line.push("VALID", "no");
        line.push("CONDITION", condition);
        line.push("WITNESS", witness);
        rep.falsify();
    };
    if rebuild {
        match reconstruct(rl, &seq) {
            Ok(rec) => {
                line.push("H", rl.render(&rec.h));
                line.push("VALID", yes_no(rec.valid()));
                rep.line(line);
                for (n, ok) in &rec.checks {
                    rep.line(Line::new().kv("CHECK", n).kv("OK", yes_no(*ok)));
                }
                if !rec.valid() {
                    rep.falsify();
                }
                return Ok(());
            }
            Err(PwError::NotATruncateSequence { condition, witness }) => fail(&mut line, rep, condition, witness),
            Err(e) => return Err(e.into()),
        }
    } else {
        match validate_truncate_seq(rl, &seq) {
            Ok(r) => {
                line.push("VALID", "yes");
                line.push("CHECKED_TO", r.checked_to);
                line.push("SETTLE", r.settle);
            }
            Err(PwError::NotATruncateSequence { condition, witness }) => fail(&mut line, rep, condition, witness),
            Err(e) => return Err(e.into()),
        }
    }
    rep.line(line);
    Ok(())
}

pub fn trunc(file: &Path, only: Option<&str>, rebuild: bool) -> Result<Report, CliError> {
    let doc = read_document(file)?;
    let mut rep = Report::default();
    for d in selected(&doc.truncseqs, |t| Some(t.name.as_str()), only)? {
        with_backend!(frame_ref(&doc, &d.frame)?, |rl| trunc_in(
            &doc, rl, &d.name, rebuild, &mut rep
        ))?;
    }
    Ok(rep)
}

pub fn mobile_check(file: &Path, only: Option<&str>) -> Result<Report, CliError> {
    let doc = read_document(file)?;
    let mut rep = Report::default();
    for (i, d) in selected(&doc.downsets, |d| d.name.as_deref(), only)?
        .into_iter()
        .enumerate()
    {
        let name = d.name.clone().unwrap_or_else(|| format!("#{}", i + 1));
        let mut line = Line::new().kv("DOWNSET", name);
        match is_mobile(&d.value)? {
            Mobility::Mobile => line.push("MOBILE", "yes"),
            Mobility::Immobile { g } => {
                let verified = d.value.generators.iter().all(|p| {
                    d.value
                        .contains(&p.iter().zip(&g).map(|(a, b)| *a + *b).collect::<Vec<Q>>())
                });
                line.push("MOBILE", "no");
                line.push("WITNESS", pointfree::discrete::render_vec(&g));
                line.push("VERIFIED", yes_no(verified));
                rep.falsify();
            }
        }
        let sim = mobility_by_simulation(&d.value);
        line.push(
            "SIMULATION",
            sim.map_or("none".to_string(), |g| pointfree::discrete::render_vec(&g)),
        );
        rep.line(line);
    }
    Ok(rep)
}

/// The prefix indicators `f_n = χ{0..n}` on ω+1 against the constant 1.
pub fn demo_omega() -> Result<Report, CliError> {
    let rl = Rl::new(&OMEGA);
    let fam = pointfree::rl::PrefixIndicators;
    let one = rl.one();
    let mut rep = Report::default();
    rep.line(
        Line::new()
            .kv("FRAME", "omega+1")
            .kv("FAMILY", "prefix_indicators")
            .kv("F0", "1"),
    );
    for n in 0..3 {
        let m = RayFamily::member(&fam, rl, n).expect("countable family");
        rep.line(Line::new().kv("MEMBER", n).kv("VALUE", rl.render(&m)));
    }
    let o = oracle_sup_check_omega(&EventuallyConstant::constant(Q::ONE), &OmegaFamily::PrefixIndicators)?;
    rep.line(oracle_line(&o));
    let (_, cert) = separating_morphism_const(rl, fam, Q::ONE)?;
    rep.line(
        Line::new()
            .kv(
                "SEPARATION",
                if cert.kind == SeparationKind::Separated {
                    "separated"
                } else {
                    "not_upper_bound"
                },
            )
            .kv("R", cert.r)
            .kv("A", &cert.a)
            .kv("B", &cert.b)
            .kv("VALID", yes_no(cert.valid())),
    );
    let v = check_pointwise_sup(rl, &one, &fam)?;
    rep.line(Line::new().kv("UPPER_BOUND", yes_no(v.is_upper_bound)));
    let fail = v
        .failing
        .as_ref()
        .expect("the prefix indicators withhold the point omega");
    rep.line(
        Line::new()
            .kv("POINTWISE", yes_no(v.is_pointwise))
            .kv("FAILING_RAY", fail.r)
            .kv("LHS", OMEGA.render(&fail.lhs))
            .kv("RHS", OMEGA.render(&fail.rhs)),
    );
    let reproduced = v.is_upper_bound && !v.is_pointwise && o.agree && cert.valid();
    if !reproduced {
        rep.falsify();
    }
    Ok(rep)
}

pub fn suite_run(name: &str, seed: u64, cases: Option<usize>) -> Result<Report, CliError> {
    let cfg = SuiteConfig {
        seed,
        cases,
        max_grid: max_grid()?,
    };
    let r = run_suite(name, &cfg).map_err(|e| CliError::new(e.kind(), e.to_string()))?;
    let mut rep = Report::default();
    rep.line(Line::new().kv("SUITE", &r.name).kv("SEED", r.seed));
    rep.line(Line::new().kv("PASS", r.pass).kv("FAIL", r.fail));
    let mut extra = Line::new();
    if r.skipped > 0 {
        extra.push("SKIPPED", r.skipped);
    }
    for (k, v) in &r.extra {
        extra.push(k, v);
    }
    if !extra.0.is_empty() {
        rep.line(extra);
    }
    if let Some(ce) = &r.counterexample {
        rep.line(Line::new().kv("COUNTEREXAMPLE", ce));
        rep.falsify();
    }
    Ok(rep)
}
