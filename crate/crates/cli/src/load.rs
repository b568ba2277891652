//! Reading inputs and turning declarations into library objects.

use std::path::Path;

use pointfree::format::{parse_document, Document, FamilyKind, FrameDecl, StepDecl, TailDecl, TextFrame};
use pointfree::frame::{BooleanEmbed, Classify, FiniteFrame, Frame, OmegaFrame};
use pointfree::pointwise::{Tail, TruncSeq};
use pointfree::rational::Q;
use pointfree::rl::{ExplicitFamily, PrefixIndicators, RayFamily, Rl, Step, TruncateFamily};

use crate::report::Line;

pub static OMEGA: OmegaFrame = OmegaFrame;

/// An input error: reported as `ERROR=<kind>` with exit code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub kind: String,
    pub message: String,
    pub fields: Vec<(String, String)>,
}

impl CliError {
    pub fn new(kind: &str, message: impl Into<String>) -> CliError {
        CliError {
            kind: kind.to_string(),
            message: message.into(),
            fields: Vec::new(),
        }
    }

    pub fn line(&self) -> Line {
        let mut l = Line::new().kv("ERROR", &self.kind);
        for (k, v) in &self.fields {
            l.push(k, v);
        }
        l.kv("MESSAGE", &self.message)
    }
}

/// Library errors keep their own names.
macro_rules! lib_error {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> CliError {
                CliError::new(e.kind(), e.to_string())
            }
        }
    )*};
}
lib_error!(
    pointfree::frame::FrameError,
    pointfree::rl::RlError,
    pointfree::pointwise::PwError,
    pointfree::discrete::DiscreteError
);

pub fn read_document(path: &Path) -> Result<Document, CliError> {
    let src = std::fs::read_to_string(path).map_err(|e| CliError::new("Io", format!("{}: {e}", path.display())))?;
    parse_document(&src).map_err(|e| {
        let mut err = CliError::new("ParseError", e.msg.clone());
        err.fields = vec![("LINE".into(), e.line.to_string()), ("COL".into(), e.col.to_string())];
        err
    })
}

pub fn parse_q(s: &str) -> Result<Q, CliError> {
    s.parse::<Q>()
        .map_err(|_| CliError::new("BadRational", format!("`{s}` is not a rational")))
}

/// Frames the CLI can compute over.
pub trait Backend: TextFrame + Classify + BooleanEmbed + Sync {
    fn decls(doc: &Document) -> &[StepDecl<Self::Elem>];
    fn prefix_family() -> Option<Box<dyn RayFamily<Self>>>;
}

impl Backend for FiniteFrame {
    fn decls(doc: &Document) -> &[StepDecl<Self::Elem>] {
        &doc.finite_steps
    }

    fn prefix_family() -> Option<Box<dyn RayFamily<Self>>> {
        None
    }
}

impl Backend for OmegaFrame {
    fn decls(doc: &Document) -> &[StepDecl<Self::Elem>] {
        &doc.omega_steps
    }

    fn prefix_family() -> Option<Box<dyn RayFamily<Self>>> {
        Some(Box::new(PrefixIndicators))
    }
}

pub enum FrameRef<'d> {
    Finite(&'d FiniteFrame),
    Omega,
}

pub fn frame_ref<'d>(doc: &'d Document, name: &str) -> Result<FrameRef<'d>, CliError> {
    match doc.frame(name).map(|f| &f.decl) {
        Some(FrameDecl::Finite(f)) => Ok(FrameRef::Finite(f)),
        Some(FrameDecl::Omega) => Ok(FrameRef::Omega),
        None => Err(CliError::new("UnknownName", format!("no frame `{name}`"))),
    }
}

/// Frame of a named step.
pub fn frame_of_step<'d>(doc: &'d Document, step: &str) -> Result<FrameRef<'d>, CliError> {
    let name = doc
        .step_frame(step)
        .ok_or_else(|| CliError::new("UnknownName", format!("no step `{step}`")))?;
    frame_ref(doc, name)
}

/// Runs `$body` with `$rl` bound to an `Rl` over the given frame reference.
macro_rules! with_backend {
    ($fr:expr, |$rl:ident| $body:expr) => {
        match $fr {
            $crate::load::FrameRef::Finite(f) => {
                let $rl = pointfree::rl::Rl::new(f);
                $body
            }
            $crate::load::FrameRef::Omega => {
                let $rl = pointfree::rl::Rl::new(&$crate::load::OMEGA);
                $body
            }
        }
    };
}
pub(crate) use with_backend;

pub fn step<F: Backend>(doc: &Document, rl: Rl<'_, F>, name: &str) -> Result<Step<F::Elem>, CliError> {
    let d = F::decls(doc)
        .iter()
        .find(|s| s.name == name)
        .ok_or_else(|| CliError::new("FrameMismatch", format!("no step `{name}` over {}", rl.frame().name())))?;
    Ok(rl.validate(d.thresholds.clone(), d.values.clone())?)
}

pub enum Fam<F: Frame> {
    Explicit(ExplicitFamily<F::Elem>),
    Template(Box<dyn RayFamily<F>>),
}

impl<F: Frame + 'static> Fam<F> {
    pub fn as_dyn(&self) -> &dyn RayFamily<F> {
        match self {
            Fam::Explicit(e) => e,
            Fam::Template(t) => t.as_ref(),
        }
    }
}

pub fn family<F: Backend + 'static>(doc: &Document, rl: Rl<'_, F>, name: &str) -> Result<Fam<F>, CliError> {
    let d = doc
        .family(name)
        .ok_or_else(|| CliError::new("UnknownName", format!("no family `{name}`")))?;
    match &d.kind {
        FamilyKind::Explicit(members) => Ok(Fam::Explicit(ExplicitFamily::new(
            members.iter().map(|m| step(doc, rl, m)).collect::<Result<_, _>>()?,
        ))),
        FamilyKind::Truncates(base) => Ok(Fam::Template(Box::new(TruncateFamily::new(step(doc, rl, base)?)))),
        FamilyKind::PrefixIndicators => F::prefix_family()
            .map(Fam::Template)
            .ok_or_else(|| CliError::new("FrameMismatch", "prefix_indicators lives on an omega frame")),
    }
}

/// A template family behind a reference, usable where a sized family is
/// required.
pub struct DynFamily<'a, F: Frame>(pub &'a dyn RayFamily<F>);

impl<F: Frame> RayFamily<F> for DynFamily<'_, F> {
    fn describe(&self) -> String {
        self.0.describe()
    }

    fn len(&self) -> Option<usize> {
        self.0.len()
    }

    fn member(&self, rl: Rl<'_, F>, n: usize) -> Option<Step<F::Elem>> {
        self.0.member(rl, n)
    }

    fn ray_join(&self, rl: Rl<'_, F>, r: Q) -> F::Elem {
        self.0.ray_join(rl, r)
    }

    fn breakpoints(&self, rl: Rl<'_, F>) -> Vec<Q> {
        self.0.breakpoints(rl)
    }

    fn validate(&self, rl: Rl<'_, F>) -> Result<(), pointfree::rl::RlError> {
        self.0.validate(rl)
    }
}

pub fn trunc_seq<F: Backend>(doc: &Document, rl: Rl<'_, F>, name: &str) -> Result<TruncSeq<F::Elem>, CliError> {
    let d = doc
        .truncseq(name)
        .ok_or_else(|| CliError::new("UnknownName", format!("no truncseq `{name}`")))?;
    let prefix = d
        .prefix
        .iter()
        .map(|s| step(doc, rl, s))
        .collect::<Result<Vec<_>, _>>()?;
    let tail = match &d.tail {
        TailDecl::Stable => Tail::Stable,
        TailDecl::Ramp(s) => Tail::Ramp(step(doc, rl, s)?),
    };
    Ok(TruncSeq { prefix, tail })
}

/// The constant `c` if `f` is constant.
pub fn as_constant<F: Frame>(rl: Rl<'_, F>, f: &Step<F::Elem>) -> Option<Q> {
    let c = *f.thresholds().first()?;
    (rl.constant(c) == *f).then_some(c)
}

/// `PFLAB_MAX_GRID`, default 10⁴.
pub fn max_grid() -> Result<usize, CliError> {
    match std::env::var("PFLAB_MAX_GRID") {
        Err(_) => Ok(pointfree::rl::DEFAULT_MAX_GRID),
        Ok(v) => v.trim().parse::<usize>().ok().filter(|&n| n > 0).ok_or_else(|| {
            CliError::new(
                "BadEnvironment",
                format!("PFLAB_MAX_GRID=`{v}` is not a positive integer"),
            )
        }),
    }
}
