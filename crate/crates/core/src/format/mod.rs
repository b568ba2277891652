//! Line-oriented text format for frames, step elements, families, vectors,
//! sequences, truncate sequences and downsets.
//!
//! ```text
//! frame F
//! points a b
//! order a<b
//! frame W = omega
//! step f over F = TOP | 0 {a} | 1 BOT
//! family K = explicit f g
//! family T = truncates(f)
//! family P = prefix_indicators
//! vec v = (1, 3/2, 0)
//! seq s = [0,1,1] tail 1
//! truncseq G = g1 g2 then stable
//! downset Z = gen (0,0) dir (0,1)
//! ```
//!
//! `#` starts a comment. Names in `family`, `vec`, `seq` may be omitted.

mod write;

use std::collections::HashMap;
use std::fmt;

use crate::discrete::{EventuallyConstant, QVec};
use crate::frame::{Down, FiniteFrame, Frame, OmegaElem, OmegaFrame, Poset};
use crate::pointwise::DownsetSpec;
use crate::rational::Q;

pub use write::{write_downset, write_frame, write_seq, write_step, write_vec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("ParseError at {line}:{col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl ParseError {
    fn at(line: usize, col: usize, msg: impl Into<String>) -> ParseError {
        ParseError {
            line,
            col,
            msg: msg.into(),
        }
    }
}

/// Frames whose elements have a text form.
pub trait TextFrame: Frame {
    fn parse_elem(&self, s: &str) -> Result<Self::Elem, String>;
}

impl TextFrame for FiniteFrame {
    fn parse_elem(&self, s: &str) -> Result<Down, String> {
        match s {
            "TOP" => Ok(self.top()),
            "BOT" => Ok(self.bottom()),
            _ => {
                let inner = s
                    .strip_prefix('{')
                    .and_then(|r| r.strip_suffix('}'))
                    .ok_or_else(|| format!("expected TOP, BOT or {{..}}, found `{s}`"))?;
                let names: Vec<&str> = inner.split(',').map(str::trim).filter(|n| !n.is_empty()).collect();
                self.elem(&names).map_err(|e| e.to_string())
            }
        }
    }
}

impl TextFrame for OmegaFrame {
    fn parse_elem(&self, s: &str) -> Result<OmegaElem, String> {
        match s {
            "TOP" => return Ok(self.top()),
            "BOT" => return Ok(self.bottom()),
            _ => {}
        }
        let (ctor, rest): (fn(Vec<u64>) -> OmegaElem, &str) = if let Some(r) = s.strip_prefix("natcofin") {
            (OmegaElem::cofin_nat, r)
        } else if let Some(r) = s.strip_prefix("cofin") {
            (OmegaElem::cofin, r)
        } else if let Some(r) = s.strip_prefix("fin") {
            (OmegaElem::fin, r)
        } else {
            return Err(format!(
                "expected TOP, BOT, fin{{..}}, cofin{{..}} or natcofin{{..}}, found `{s}`"
            ));
        };
        let inner = rest
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| format!("missing braces in `{s}`"))?;
        let nums = inner
            .split(',')
            .map(str::trim)
            .filter(|n| !n.is_empty())
            .map(|n| n.parse::<u64>().map_err(|_| format!("bad natural `{n}`")))
            .collect::<Result<Vec<u64>, String>>()?;
        Ok(ctor(nums))
    }
}

#[derive(Clone, Debug)]
pub enum FrameDecl {
    Finite(FiniteFrame),
    Omega,
}

#[derive(Clone, Debug)]
pub struct FrameEntry {
    pub name: String,
    pub decl: FrameDecl,
    pub line: usize,
}

/// A step as written: thresholds and values, not yet validated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepDecl<E> {
    pub name: String,
    pub frame: String,
    pub thresholds: Vec<Q>,
    pub values: Vec<E>,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    Explicit(Vec<String>),
    Truncates(String),
    PrefixIndicators,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyDecl {
    pub name: Option<String>,
    /// Frame of the members; `None` only for the empty explicit family.
    pub frame: Option<String>,
    pub kind: FamilyKind,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Named<T> {
    pub name: Option<String>,
    pub value: T,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TailDecl {
    Stable,
    Ramp(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeqDecl {
    pub name: String,
    pub frame: String,
    pub prefix: Vec<String>,
    pub tail: TailDecl,
    pub line: usize,
}

/// Everything declared in one input, in declaration order.
#[derive(Clone, Debug, Default)]
pub struct Document {
    pub frames: Vec<FrameEntry>,
    pub finite_steps: Vec<StepDecl<Down>>,
    pub omega_steps: Vec<StepDecl<OmegaElem>>,
    pub families: Vec<FamilyDecl>,
    pub vecs: Vec<Named<QVec>>,
    pub seqs: Vec<Named<EventuallyConstant>>,
    pub truncseqs: Vec<TruncSeqDecl>,
    pub downsets: Vec<Named<DownsetSpec>>,
}

impl Document {
    pub fn frame(&self, name: &str) -> Option<&FrameEntry> {
        self.frames.iter().find(|f| f.name == name)
    }

    pub fn finite_frame(&self, name: &str) -> Option<&FiniteFrame> {
        match self.frame(name).map(|f| &f.decl) {
            Some(FrameDecl::Finite(f)) => Some(f),
            _ => None,
        }
    }

    pub fn finite_step(&self, name: &str) -> Option<&StepDecl<Down>> {
        self.finite_steps.iter().find(|s| s.name == name)
    }

    pub fn omega_step(&self, name: &str) -> Option<&StepDecl<OmegaElem>> {
        self.omega_steps.iter().find(|s| s.name == name)
    }

    /// Frame name of a step of either kind.
    pub fn step_frame(&self, name: &str) -> Option<&str> {
        self.finite_step(name)
            .map(|s| s.frame.as_str())
            .or_else(|| self.omega_step(name).map(|s| s.frame.as_str()))
    }

    pub fn family(&self, name: &str) -> Option<&FamilyDecl> {
        self.families.iter().find(|f| f.name.as_deref() == Some(name))
    }

    pub fn truncseq(&self, name: &str) -> Option<&TruncSeqDecl> {
        self.truncseqs.iter().find(|t| t.name == name)
    }

    pub fn downset(&self, name: &str) -> Option<&Named<DownsetSpec>> {
        self.downsets.iter().find(|d| d.name.as_deref() == Some(name))
    }
}

#[derive(Clone, Copy, Debug)]
struct Tok<'a> {
    text: &'a str,
    col: usize,
}

/// Splits on whitespace outside `{}`, `()` and `[]`.
fn tokenize(line: &str) -> Vec<Tok<'_>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start: Option<usize> = None;
    for (i, c) in line.char_indices() {
        match c {
            '{' | '(' | '[' => depth += 1,
            '}' | ')' | ']' => depth -= 1,
            _ => {}
        }
        if c.is_whitespace() && depth <= 0 {
            if let Some(s) = start.take() {
                out.push(Tok {
                    text: &line[s..i],
                    col: s + 1,
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Tok {
            text: &line[s..],
            col: s + 1,
        });
    }
    out
}

struct PendingFrame {
    name: String,
    line: usize,
    points: Option<Vec<String>>,
    order: Vec<(usize, usize)>,
    coz: Option<Vec<(String, usize, usize)>>,
}

struct Parser {
    doc: Document,
    pending: Option<PendingFrame>,
    names: HashMap<String, usize>,
}

pub fn parse_document(src: &str) -> Result<Document, ParseError> {
    let mut p = Parser {
        doc: Document::default(),
        pending: None,
        names: HashMap::new(),
    };
    for (i, raw) in src.lines().enumerate() {
        let ln = i + 1;
        let line = raw.split('#').next().unwrap_or("");
        let toks = tokenize(line);
        let Some(head) = toks.first() else { continue };
        match head.text {
            "points" | "order" | "coz" => p.frame_body(ln, &toks)?,
            _ => {
                p.finish_frame()?;
                match head.text {
                    "frame" => p.frame_head(ln, &toks)?,
                    "step" => p.step(ln, &toks)?,
                    "family" => p.family(ln, &toks)?,
                    "vec" => p.vec(ln, &toks)?,
                    "seq" => p.seq(ln, &toks)?,
                    "truncseq" => p.truncseq(ln, &toks)?,
                    "downset" => p.downset(ln, &toks)?,
                    other => return Err(ParseError::at(ln, head.col, format!("unknown declaration `{other}`"))),
                }
            }
        }
    }
    p.finish_frame()?;
    Ok(p.doc)
}

fn need<'a>(toks: &[Tok<'a>], i: usize, ln: usize, what: &str) -> Result<Tok<'a>, ParseError> {
    toks.get(i).copied().ok_or_else(|| {
        let col = toks.last().map_or(1, |t| t.col + t.text.len());
        ParseError::at(ln, col, format!("expected {what}"))
    })
}

fn expect(toks: &[Tok<'_>], i: usize, ln: usize, word: &str) -> Result<(), ParseError> {
    let t = need(toks, i, ln, &format!("`{word}`"))?;
    if t.text == word {
        Ok(())
    } else {
        Err(ParseError::at(
            ln,
            t.col,
            format!("expected `{word}`, found `{}`", t.text),
        ))
    }
}

fn ident(t: Tok<'_>, ln: usize) -> Result<String, ParseError> {
    let ok = !t.text.is_empty()
        && t.text
            .chars()
            .all(|c| c.is_alphanumeric() || c == '_' || c == '-' || c == '\'')
        && !["TOP", "BOT", "=", "over"].contains(&t.text);
    if ok {
        Ok(t.text.to_string())
    } else {
        Err(ParseError::at(ln, t.col, format!("bad name `{}`", t.text)))
    }
}

fn rational(t: Tok<'_>, ln: usize) -> Result<Q, ParseError> {
    t.text
        .parse::<Q>()
        .map_err(|_| ParseError::at(ln, t.col, format!("bad rational `{}`", t.text)))
}

/// `(a, b, c)` or `[a, b, c]`; `col` locates errors.
fn rational_list(text: &str, open: char, close: char, ln: usize, col: usize) -> Result<Vec<Q>, ParseError> {
    let inner = text
        .strip_prefix(open)
        .and_then(|r| r.strip_suffix(close))
        .ok_or_else(|| ParseError::at(ln, col, format!("expected {open}..{close}, found `{text}`")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<Q>()
                .map_err(|_| ParseError::at(ln, col, format!("bad rational `{}`", s.trim())))
        })
        .collect()
}

/// `[name =]` prefix; returns the name and the index after it.
fn optional_name(toks: &[Tok<'_>], ln: usize) -> Result<(Option<String>, usize), ParseError> {
    if toks.get(2).map(|t| t.text) == Some("=") {
        Ok((Some(ident(toks[1], ln)?), 3))
    } else {
        Ok((None, 1))
    }
}

impl Parser {
    fn declare(&mut self, name: &str, ln: usize, col: usize) -> Result<(), ParseError> {
        if let Some(prev) = self.names.insert(name.to_string(), ln) {
            return Err(ParseError::at(
                ln,
                col,
                format!("`{name}` already declared on line {prev}"),
            ));
        }
        Ok(())
    }

    fn frame_head(&mut self, ln: usize, toks: &[Tok<'_>]) -> Result<(), ParseError> {
        let nt = need(toks, 1, ln, "frame name")?;
        let name = ident(nt, ln)?;
        self.declare(&name, ln, nt.col)?;
        if toks.len() > 2 {
            expect(toks, 2, ln, "=")?;
            let kind = need(toks, 3, ln, "`omega`")?;
            if kind.text != "omega" {
                return Err(ParseError::at(
                    ln,
                    kind.col,
                    format!("unknown built-in frame `{}`", kind.text),
                ));
            }
            if let Some(extra) = toks.get(4) {
                return Err(ParseError::at(ln, extra.col, "unexpected token"));
            }
            self.doc.frames.push(FrameEntry {
                name,
                decl: FrameDecl::Omega,
                line: ln,
            });
            return Ok(());
        }
        self.pending = Some(PendingFrame {
            name,
            line: ln,
            points: None,
            order: Vec::new(),
            coz: None,
        });
        Ok(())
    }

    fn frame_body(&mut self, ln: usize, toks: &[Tok<'_>]) -> Result<(), ParseError> {
        let head = toks[0];
        let pf = self
            .pending
            .as_mut()
            .ok_or_else(|| ParseError::at(ln, head.col, format!("`{}` outside a frame declaration", head.text)))?;
        match head.text {
            "points" => {
                if pf.points.is_some() {
                    return Err(ParseError::at(ln, head.col, "points declared twice"));
                }
                let mut pts = Vec::new();
                for t in &toks[1..] {
                    let n = ident(*t, ln)?;
                    if pts.contains(&n) {
                        return Err(ParseError::at(ln, t.col, format!("duplicate point `{n}`")));
                    }
                    pts.push(n);
                }
                if pts.is_empty() {
                    return Err(ParseError::at(ln, head.col + 6, "expected at least one point"));
                }
                pf.points = Some(pts);
            }
            "order" => {
                let pts = pf
                    .points
                    .as_ref()
                    .ok_or_else(|| ParseError::at(ln, head.col, "`order` before `points`"))?;
                for t in &toks[1..] {
                    let parts: Vec<&str> = t.text.split('<').collect();
                    if parts.len() < 2 || parts.iter().any(|p| p.is_empty()) {
                        return Err(ParseError::at(ln, t.col, format!("malformed order token `{}`", t.text)));
                    }
                    let mut idx = Vec::new();
                    let mut off = 0;
                    for p in &parts {
                        let i = pts
                            .iter()
                            .position(|n| n == p)
                            .ok_or_else(|| ParseError::at(ln, t.col + off, format!("unknown point `{p}`")))?;
                        idx.push(i);
                        off += p.len() + 1;
                    }
                    pf.order.extend(idx.windows(2).map(|w| (w[0], w[1])));
                }
            }
            _ => {
                let coz = toks[1..].iter().map(|t| (t.text.to_string(), ln, t.col)).collect();
                pf.coz = Some(coz);
            }
        }
        Ok(())
    }

    fn finish_frame(&mut self) -> Result<(), ParseError> {
        let Some(pf) = self.pending.take() else { return Ok(()) };
        let err = |e: crate::frame::FrameError| ParseError::at(pf.line, 1, e.to_string());
        let pts = pf
            .points
            .ok_or_else(|| ParseError::at(pf.line, 1, "frame without `points`"))?;
        let poset = Poset::from_relations(pts, &pf.order).map_err(err)?;
        let mut frame = FiniteFrame::new(pf.name.clone(), poset).map_err(err)?;
        if let Some(coz) = pf.coz {
            let mut elems = vec![frame.bottom(), frame.top()];
            for (text, ln, col) in coz {
                elems.push(frame.parse_elem(&text).map_err(|m| ParseError::at(ln, col, m))?);
            }
            elems.sort();
            elems.dedup();
            frame = frame.with_cozero(elems).map_err(err)?;
        }
        self.doc.frames.push(FrameEntry {
            name: pf.name,
            decl: FrameDecl::Finite(frame),
            line: pf.line,
        });
        Ok(())
    }

    fn step(&mut self, ln: usize, toks: &[Tok<'_>]) -> Result<(), ParseError> {
        let nt = need(toks, 1, ln, "step name")?;
        let name = ident(nt, ln)?;
        expect(toks, 2, ln, "over")?;
        let ft = need(toks, 3, ln, "frame name")?;
        expect(toks, 4, ln, "=")?;
        let entry = self
            .doc
            .frame(ft.text)
            .ok_or_else(|| ParseError::at(ln, ft.col, format!("unknown frame `{}`", ft.text)))?
            .clone();
        self.declare(&name, ln, nt.col)?;
        let body = &toks[5..];
        match entry.decl {
            FrameDecl::Finite(f) => {
                let (thresholds, values) = step_body(&f, body, ln, toks)?;
                self.doc.finite_steps.push(StepDecl {
                    name,
                    frame: entry.name,
                    thresholds,
                    values,
                    line: ln,
                });
            }
            FrameDecl::Omega => {
                let (thresholds, values) = step_body(&OmegaFrame, body, ln, toks)?;
                self.doc.omega_steps.push(StepDecl {
                    name,
                    frame: entry.name,
                    thresholds,
                    values,
                    line: ln,
                });
            }
        }
        Ok(())
    }

    fn family(&mut self, ln: usize, toks: &[Tok<'_>]) -> Result<(), ParseError> {
        let (name, at) = optional_name(toks, ln)?;
        if let Some(n) = &name {
            self.declare(n, ln, toks[1].col)?;
        }
        let kt = need(toks, at, ln, "family kind")?;
        let (kind, frame) = if kt.text == "explicit" {
            let mut members = Vec::new();
            let mut frame: Option<String> = None;
            for t in &toks[at + 1..] {
                let fr = self
                    .doc
                    .step_frame(t.text)
                    .ok_or_else(|| ParseError::at(ln, t.col, format!("unknown step `{}`", t.text)))?;
                if frame.as_deref().is_some_and(|f| f != fr) {
                    return Err(ParseError::at(
                        ln,
                        t.col,
                        format!("`{}` is over a different frame", t.text),
                    ));
                }
                frame = Some(fr.to_string());
                members.push(t.text.to_string());
            }
            (FamilyKind::Explicit(members), frame)
        } else if let Some(inner) = kt.text.strip_prefix("truncates(").and_then(|r| r.strip_suffix(')')) {
            let fr = self
                .doc
                .step_frame(inner)
                .ok_or_else(|| ParseError::at(ln, kt.col + 10, format!("unknown step `{inner}`")))?;
            (FamilyKind::Truncates(inner.to_string()), Some(fr.to_string()))
        } else if kt.text == "prefix_indicators" {
            let omega = self
                .doc
                .frames
                .iter()
                .find(|f| matches!(f.decl, FrameDecl::Omega))
                .map_or("omega".to_string(), |f| f.name.clone());
            (FamilyKind::PrefixIndicators, Some(omega))
        } else {
            return Err(ParseError::at(ln, kt.col, format!("unknown family kind `{}`", kt.text)));
        };
        if !matches!(kind, FamilyKind::Explicit(_)) {
            if let Some(extra) = toks.get(at + 1) {
                return Err(ParseError::at(ln, extra.col, "unexpected token"));
            }
        }
        self.doc.families.push(FamilyDecl {
            name,
            frame,
            kind,
            line: ln,
        });
        Ok(())
    }

    fn vec(&mut self, ln: usize, toks: &[Tok<'_>]) -> Result<(), ParseError> {
        let (name, at) = optional_name(toks, ln)?;
        if let Some(n) = &name {
            self.declare(n, ln, toks[1].col)?;
        }
        let t = need(toks, at, ln, "vector literal")?;
        let value = rational_list(t.text, '(', ')', ln, t.col)?;
        if value.is_empty() {
            return Err(ParseError::at(ln, t.col, "empty vector"));
        }
        if let Some(extra) = toks.get(at + 1) {
            return Err(ParseError::at(ln, extra.col, "unexpected token"));
        }
        self.doc.vecs.push(Named { name, value, line: ln });
        Ok(())
    }

    fn seq(&mut self, ln: usize, toks: &[Tok<'_>]) -> Result<(), ParseError> {
        let (name, at) = optional_name(toks, ln)?;
        if let Some(n) = &name {
            self.declare(n, ln, toks[1].col)?;
        }
        let t = need(toks, at, ln, "sequence prefix")?;
        let prefix = rational_list(t.text, '[', ']', ln, t.col)?;
        expect(toks, at + 1, ln, "tail")?;
        let tail = rational(need(toks, at + 2, ln, "tail value")?, ln)?;
        if let Some(extra) = toks.get(at + 3) {
            return Err(ParseError::at(ln, extra.col, "unexpected token"));
        }
        self.doc.seqs.push(Named {
            name,
            value: EventuallyConstant::new(prefix, tail),
            line: ln,
        });
        Ok(())
    }

    fn truncseq(&mut self, ln: usize, toks: &[Tok<'_>]) -> Result<(), ParseError> {
        let nt = need(toks, 1, ln, "sequence name")?;
        let name = ident(nt, ln)?;
        expect(toks, 2, ln, "=")?;
        self.declare(&name, ln, nt.col)?;
        let then = toks
            .iter()
            .position(|t| t.text == "then")
            .ok_or_else(|| ParseError::at(ln, nt.col, "expected `then stable` or `then ramp <step>`"))?;
        let mut frame: Option<String> = None;
        let check = |t: Tok<'_>, frame: &mut Option<String>| -> Result<(), ParseError> {
            let fr = self
                .doc
                .step_frame(t.text)
                .ok_or_else(|| ParseError::at(ln, t.col, format!("unknown step `{}`", t.text)))?;
            if frame.as_deref().is_some_and(|f| f != fr) {
                return Err(ParseError::at(
                    ln,
                    t.col,
                    format!("`{}` is over a different frame", t.text),
                ));
            }
            *frame = Some(fr.to_string());
            Ok(())
        };
        let mut prefix = Vec::new();
        for t in &toks[3..then] {
            check(*t, &mut frame)?;
            prefix.push(t.text.to_string());
        }
        if prefix.is_empty() {
            return Err(ParseError::at(ln, toks[then].col, "empty prefix"));
        }
        let kt = need(toks, then + 1, ln, "`stable` or `ramp`")?;
        let (tail, used) = match kt.text {
            "stable" => (TailDecl::Stable, then + 2),
            "ramp" => {
                let d = need(toks, then + 2, ln, "ramp step")?;
                check(d, &mut frame)?;
                (TailDecl::Ramp(d.text.to_string()), then + 3)
            }
            other => {
                return Err(ParseError::at(
                    ln,
                    kt.col,
                    format!("expected `stable` or `ramp`, found `{other}`"),
                ))
            }
        };
        if let Some(extra) = toks.get(used) {
            return Err(ParseError::at(ln, extra.col, "unexpected token"));
        }
        let frame = frame.expect("nonempty prefix");
        self.doc.truncseqs.push(TruncSeqDecl {
            name,
            frame,
            prefix,
            tail,
            line: ln,
        });
        Ok(())
    }

    fn downset(&mut self, ln: usize, toks: &[Tok<'_>]) -> Result<(), ParseError> {
        let (name, at) = optional_name(toks, ln)?;
        if let Some(n) = &name {
            self.declare(n, ln, toks[1].col)?;
        }
        expect(toks, at, ln, "gen")?;
        let mut gens = Vec::new();
        let mut dirs = Vec::new();
        let mut in_dirs = false;
        let mut dim: Option<usize> = None;
        for t in &toks[at + 1..] {
            if t.text == "dir" && !in_dirs {
                in_dirs = true;
                continue;
            }
            let v = rational_list(t.text, '(', ')', ln, t.col)?;
            if *dim.get_or_insert(v.len()) != v.len() {
                return Err(ParseError::at(ln, t.col, "vectors of different lengths"));
            }
            if in_dirs {
                dirs.push(v);
            } else {
                gens.push(v);
            }
        }
        let dim = dim.ok_or_else(|| ParseError::at(ln, toks[at].col, "downset without vectors"))?;
        let spec = DownsetSpec::new(dim, gens, dirs).map_err(|e| ParseError::at(ln, toks[at].col, e.to_string()))?;
        self.doc.downsets.push(Named {
            name,
            value: spec,
            line: ln,
        });
        Ok(())
    }
}

/// `V0 | t1 V1 | t2 V2 …`.
fn step_body<F: TextFrame>(
    fr: &F,
    body: &[Tok<'_>],
    ln: usize,
    all: &[Tok<'_>],
) -> Result<(Vec<Q>, Vec<F::Elem>), ParseError> {
    let first = body.first().copied().ok_or_else(|| {
        let col = all.last().map_or(1, |t| t.col + t.text.len());
        ParseError::at(ln, col, "expected step values")
    })?;
    let elem = |t: Tok<'_>| fr.parse_elem(t.text).map_err(|m| ParseError::at(ln, t.col, m));
    let mut values = vec![elem(first)?];
    let mut thresholds = Vec::new();
    let mut i = 1;
    while i < body.len() {
        if body[i].text != "|" {
            return Err(ParseError::at(
                ln,
                body[i].col,
                format!("expected `|`, found `{}`", body[i].text),
            ));
        }
        let t = need(body, i + 1, ln, "threshold")?;
        thresholds.push(rational(t, ln)?);
        values.push(elem(need(body, i + 2, ln, "value")?)?);
        i += 3;
    }
    Ok((thresholds, values))
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyKind::Explicit(ms) if ms.is_empty() => write!(f, "explicit"),
            FamilyKind::Explicit(ms) => write!(f, "explicit {}", ms.join(" ")),
            FamilyKind::Truncates(s) => write!(f, "truncates({s})"),
            FamilyKind::PrefixIndicators => write!(f, "prefix_indicators"),
        }
    }
}
