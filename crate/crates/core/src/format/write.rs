use crate::discrete::{render_vec, EventuallyConstant};
use crate::frame::{FiniteFrame, Frame};
use crate::pointwise::DownsetSpec;
use crate::rl::{Rl, Step};

/// `frame`, `points`, `order` (covering pairs) and `coz` when restricted.
pub fn write_frame(f: &FiniteFrame) -> String {
    let p = f.poset();
    let mut out = format!("frame {}\npoints {}\n", f.name(), p.names().join(" "));
    let covers: Vec<String> = p
        .covers()
        .iter()
        .map(|&(lo, hi)| format!("{}<{}", p.name(lo), p.name(hi)))
        .collect();
    if !covers.is_empty() {
        out.push_str(&format!("order {}\n", covers.join(" ")));
    }
    if !f.cozero_is_everything() {
        let coz: Vec<String> = f
            .cozero()
            .iter()
            .filter(|c| !f.is_top(c) && !f.is_bottom(c))
            .map(|c| f.render(c))
            .collect();
        out.push_str(&format!("coz {}\n", coz.join(" ")).replace("coz \n", "coz\n"));
    }
    out
}

pub fn write_step<F: Frame>(name: &str, frame: &str, rl: Rl<'_, F>, f: &Step<F::Elem>) -> String {
    format!("step {name} over {frame} = {}", rl.render(f))
}

pub fn write_vec(name: Option<&str>, v: &[crate::rational::Q]) -> String {
    match name {
        Some(n) => format!("vec {n} = {}", render_vec(v)),
        None => format!("vec {}", render_vec(v)),
    }
}

pub fn write_seq(name: Option<&str>, s: &EventuallyConstant) -> String {
    let body = s.to_string();
    let body = body.strip_prefix("seq ").unwrap_or(&body);
    match name {
        Some(n) => format!("seq {n} = {body}"),
        None => format!("seq {body}"),
    }
}

pub fn write_downset(name: Option<&str>, z: &DownsetSpec) -> String {
    let gens: Vec<String> = z.generators.iter().map(|g| render_vec(g)).collect();
    let mut body = format!("gen {}", gens.join(" "));
    if !z.directions.is_empty() {
        let dirs: Vec<String> = z.directions.iter().map(|d| render_vec(d)).collect();
        body.push_str(&format!(" dir {}", dirs.join(" ")));
    }
    match name {
        Some(n) => format!("downset {n} = {body}"),
        None => format!("downset {body}"),
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse_document;
    use super::*;
    use crate::frame::Poset;
    use crate::rational::{q, Q};

    #[test]
    fn frames_round_trip() {
        let p = Poset::from_relations(vec!["a".into(), "b".into(), "c".into()], &[(0, 2), (1, 2)]).unwrap();
        let f = FiniteFrame::new("V", p).unwrap();
        let text = write_frame(&f);
        assert_eq!(text, "frame V\npoints a b c\norder a<c b<c\n");
        let back = parse_document(&text).unwrap();
        assert_eq!(back.finite_frame("V").unwrap().elements(), f.elements());
    }

    #[test]
    fn restricted_cozero_round_trips() {
        let doc = parse_document("frame F\npoints a b\ncoz {a}\n").unwrap();
        let f = doc.finite_frame("F").unwrap();
        let again = parse_document(&write_frame(f)).unwrap();
        assert_eq!(again.finite_frame("F").unwrap().cozero(), f.cozero());
    }

    #[test]
    fn literals_round_trip() {
        let z = DownsetSpec::new(2, vec![vec![Q::ZERO, q(-1, 2)]], vec![vec![Q::ONE, Q::ZERO]]).unwrap();
        let s = EventuallyConstant::new(vec![q(1, 3), Q::ZERO], Q::ONE);
        let v = vec![Q::ONE, q(3, 2)];
        let text = [
            write_vec(Some("v"), &v),
            write_seq(Some("s"), &s),
            write_downset(Some("Z"), &z),
        ]
        .join("\n");
        let doc = parse_document(&text).unwrap();
        assert_eq!(doc.vecs[0].value, v);
        assert_eq!(doc.seqs[0].value, s);
        assert_eq!(doc.downsets[0].value, z);
        assert_eq!(write_seq(None, &s), "seq [1/3,0] tail 1");
    }

    #[test]
    fn steps_round_trip() {
        let f = FiniteFrame::discrete("B2", ["a", "b"]);
        let rl = Rl::new(&f);
        let a = f.elem(&["a"]).unwrap();
        let g = rl.add(&rl.characteristic(&a).unwrap(), &rl.constant(q(-1, 3)));
        let text = format!("{}{}\n", write_frame(&f), write_step("g", "B2", rl, &g));
        let doc = parse_document(&text).unwrap();
        let d = doc.finite_step("g").unwrap();
        assert_eq!(rl.validate(d.thresholds.clone(), d.values.clone()).unwrap(), g);
    }
}
