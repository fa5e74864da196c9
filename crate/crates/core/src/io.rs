//! Text formats for groups, structures and functions, and the constructor
//! spec grammar used on the command line.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use num_complex::Complex64;

use crate::algebra::{build_group, center, commutator_series, FiniteGroup, GroupSpec, Subgroup};
use crate::catalog::{abelian_structure, coset_structure, counterexample, group_structure, tensor_embed};
use crate::error::{Error, Result};
use crate::norms::ComplexFunction;
use crate::structures::{Oct, ParallelepipedStructure, ParallelogramStructure, Quad};

/// Significant lines of a text file with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn parse_usize(tok: &str, line: usize) -> Result<usize> {
    tok.parse().map_err(|_| Error::Parse { line, msg: format!("`{tok}` is not a non-negative integer") })
}

// ---------------------------------------------------------------- groups

/// Parses `group <order>`, the row-major table, and an optional `labels` block.
pub fn parse_group_file(text: &str) -> Result<GroupSpec> {
    let mut toks = content_lines(text).flat_map(|(i, l)| l.split_whitespace().map(move |t| (i, t)));
    let (line, head) = toks.next().ok_or(Error::Parse { line: 1, msg: "empty group file".into() })?;
    if head != "group" {
        return Err(Error::Parse { line, msg: format!("expected `group`, found `{head}`") });
    }
    let (line, n) = toks.next().ok_or(Error::Parse { line, msg: "missing group order".into() })?;
    let order = parse_usize(n, line)?;
    let mut mul = Vec::with_capacity(order * order);
    let mut labels = None;
    let mut last = line;
    while let Some((line, t)) = toks.next() {
        last = line;
        if t == "labels" {
            let l: Vec<String> = toks.by_ref().map(|(_, t)| t.to_string()).collect();
            if l.len() != order {
                return Err(Error::Parse { line, msg: format!("{} labels for a group of order {order}", l.len()) });
            }
            labels = Some(l);
            break;
        }
        let x = parse_usize(t, line)?;
        mul.push(u32::try_from(x).map_err(|_| Error::Parse { line, msg: "entry too large".into() })?);
    }
    if mul.len() != order * order {
        return Err(Error::Parse { line: last, msg: format!("{} table entries, expected {}", mul.len(), order * order) });
    }
    Ok(GroupSpec::Table { order, mul, labels })
}

pub fn write_group(g: &FiniteGroup) -> String {
    let n = g.order();
    let mut s = format!("group {n}\n");
    for row in g.table().chunks(n) {
        let r: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        s.push_str(&r.join(" "));
        s.push('\n');
    }
    if let Some(l) = g.labels() {
        let _ = writeln!(s, "labels {}", l.join(" "));
    }
    s
}

struct Cursor<'a> {
    spec: &'a str,
    rest: &'a str,
    base: &'a Path,
}

impl<'a> Cursor<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::spec(self.spec, msg)
    }

    fn eat(&mut self, prefix: &str) -> bool {
        match self.rest.strip_prefix(prefix) {
            Some(r) => {
                self.rest = r;
                true
            }
            None => false,
        }
    }

    /// Up to the next `,` or the end.
    fn word(&mut self) -> &'a str {
        let end = self.rest.find(',').unwrap_or(self.rest.len());
        let (w, r) = self.rest.split_at(end);
        self.rest = r;
        w
    }

    fn number(&mut self) -> Result<usize> {
        let w = self.word();
        w.parse().map_err(|_| self.err(format!("`{w}` is not a number")))
    }

    fn path(&self, p: &str) -> PathBuf {
        let p = Path::new(p);
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base.join(p)
        }
    }

    fn group(&mut self) -> Result<GroupSpec> {
        if self.eat("cyclic:") {
            return Ok(GroupSpec::Cyclic(self.number()?));
        }
        if self.eat("heis:") {
            return Ok(GroupSpec::Heisenberg(self.number()?));
        }
        if self.eat("sym:") {
            return Ok(GroupSpec::Symmetric(self.number()?));
        }
        if self.eat("prod:") {
            let a = self.group()?;
            if !self.eat(",") {
                return Err(self.err("prod needs two factors"));
            }
            let b = self.group()?;
            return Ok(GroupSpec::Product(Box::new(a), Box::new(b)));
        }
        if self.eat("file:") {
            let w = self.word();
            return read_group_file(&self.path(w));
        }
        let w = self.word();
        match w {
            "trivial" => Ok(GroupSpec::Cyclic(1)),
            _ if w.len() > 1 && w.starts_with('S') && w[1..].bytes().all(|b| b.is_ascii_digit()) => {
                Ok(GroupSpec::Symmetric(w[1..].parse().map_err(|_| self.err("bad symmetric degree"))?))
            }
            _ if self.path(w).is_file() => read_group_file(&self.path(w)),
            _ => Err(self.err(format!("unknown group `{w}`"))),
        }
    }

    /// `key=value` options after the group, each introduced by a comma.
    fn options(&mut self, allowed: &[&str]) -> Result<Vec<(&'a str, &'a str)>> {
        let mut out = Vec::new();
        while self.eat(",") {
            let w = self.word();
            let (k, v) = w.split_once('=').ok_or_else(|| self.err(format!("expected key=value, found `{w}`")))?;
            if !allowed.contains(&k) {
                return Err(self.err(format!("unknown option `{k}`")));
            }
            if out.iter().any(|&(k2, _)| k2 == k) {
                return Err(self.err(format!("option `{k}` given twice")));
            }
            out.push((k, v));
        }
        if !self.rest.is_empty() {
            return Err(self.err(format!("trailing input `{}`", self.rest)));
        }
        Ok(out)
    }
}

fn read_group_file(path: &Path) -> Result<GroupSpec> {
    parse_group_file(&std::fs::read_to_string(path)?)
}

/// `cyclic:N`, `prod:A,B`, `heis:P`, `sym:N` (or `S3`), `trivial`, or a group file.
pub fn parse_group_spec(spec: &str) -> Result<GroupSpec> {
    parse_group_spec_in(spec, Path::new("."))
}

pub fn parse_group_spec_in(spec: &str, base: &Path) -> Result<GroupSpec> {
    let mut c = Cursor { spec, rest: spec.trim(), base };
    let g = c.group()?;
    if !c.rest.is_empty() {
        return Err(c.err(format!("trailing input `{}`", c.rest)));
    }
    Ok(g)
}

pub fn parse_group(spec: &str) -> Result<FiniteGroup> {
    build_group(&parse_group_spec(spec)?)
}

/// `center`, `derived`, `all`, `trivial`, or element indices joined by `+`.
pub fn parse_subgroup(g: &FiniteGroup, text: &str) -> Result<Subgroup> {
    match text {
        "center" => Ok(center(g)),
        "derived" => Ok(commutator_series(g).0),
        "all" => Ok(Subgroup::whole(g)),
        "trivial" | "" => Ok(Subgroup::trivial(g)),
        _ => {
            let mut gens = Vec::new();
            for t in text.split('+') {
                let x: usize = t.parse().map_err(|_| Error::spec(text, format!("`{t}` is not an element index")))?;
                if x >= g.order() {
                    return Err(Error::spec(text, format!("element {x} outside a group of order {}", g.order())));
                }
                gens.push(x);
            }
            Ok(Subgroup::generated(g, &gens))
        }
    }
}

// ------------------------------------------------------ constructor specs

/// Builds a structure from `abelian:<g>[,sub=<gens>]`, `group:<g>[,sub=<gens>]`,
/// `coset:<g>,F=<gens>,Gamma=<gens>`, `counterexample:<p>` or
/// `tensor:<structure>,E=<g>[,inc=<indices>]`.
pub fn build_structure(spec: &str) -> Result<ParallelepipedStructure> {
    build_structure_in(spec, Path::new("."))
}

/// As [`build_structure`], resolving relative file names against `base`.
pub fn build_structure_in(spec: &str, base: &Path) -> Result<ParallelepipedStructure> {
    let spec = spec.trim();
    if let Some(rest) = spec.strip_prefix("tensor:") {
        return build_tensor(spec, rest, base);
    }
    let (kind, rest) = spec.split_once(':').ok_or_else(|| Error::spec(spec, "expected <constructor>:<arguments>"))?;
    let mut c = Cursor { spec, rest, base };
    match kind {
        "abelian" | "group" => {
            let g = build_group(&c.group()?)?;
            let opts = c.options(&["sub"])?;
            let sub = opts.first().map(|&(_, v)| parse_subgroup(&g, v)).transpose()?;
            if kind == "abelian" {
                abelian_structure(&g, sub.as_ref())
            } else {
                group_structure(&g, sub.as_ref())
            }
        }
        "coset" => {
            let g = build_group(&c.group()?)?;
            let opts = c.options(&["F", "Gamma"])?;
            let get = |k: &str| opts.iter().find(|&&(k2, _)| k2 == k).map(|&(_, v)| v);
            let f = parse_subgroup(&g, get("F").unwrap_or("center"))?;
            let gamma = parse_subgroup(&g, get("Gamma").ok_or_else(|| Error::spec(spec, "coset needs Gamma="))?)?;
            coset_structure(&g, &f, &gamma)
        }
        "counterexample" => {
            let p = c.number()?;
            c.options(&[])?;
            counterexample(p)
        }
        _ => Err(Error::spec(spec, format!("unknown constructor `{kind}`"))),
    }
}

fn build_tensor(spec: &str, rest: &str, base: &Path) -> Result<ParallelepipedStructure> {
    let at = rest.rfind(",E=").ok_or_else(|| Error::spec(spec, "tensor needs ,E=<group>"))?;
    let (inner, tail) = (&rest[..at], &rest[at + 3..]);
    let (e_spec, inc) = match tail.rfind(",inc=") {
        Some(i) => (&tail[..i], Some(&tail[i + 5..])),
        None => (tail, None),
    };
    let s = load_structure_in(inner, base)?.into_cube()?;
    let e = build_group(&parse_group_spec_in(e_spec, base)?)?;
    let inc = inc
        .map(|t| t.split('+').map(|x| x.parse::<usize>().map_err(|_| Error::spec(spec, format!("bad inc entry `{x}`")))).collect::<Result<Vec<usize>>>())
        .transpose()?;
    Ok(tensor_embed(&s, &e, inc.as_deref())?.structure)
}

// --------------------------------------------------------- structure files

/// The content of a structure file.
#[derive(Clone, Debug)]
pub enum StructureFile {
    Grid(ParallelogramStructure),
    Cube(ParallelepipedStructure),
}

impl StructureFile {
    pub fn into_cube(self) -> Result<ParallelepipedStructure> {
        match self {
            StructureFile::Cube(s) => Ok(s),
            StructureFile::Grid(_) => Err(Error::Invalid("a parallelepiped structure is required, found a pgram file".into())),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            StructureFile::Grid(p) => p.size(),
            StructureFile::Cube(s) => s.size(),
        }
    }
}

/// Parses a `pgram <n>` and/or `ppiped <n>` file, or a `spec <constructor>`
/// descriptor. Without a `pgram` section, `P` is the set of faces of `Q`.
pub fn parse_structure(text: &str, base: &Path) -> Result<StructureFile> {
    let mut n: Option<usize> = None;
    let mut quads: Option<Vec<Quad>> = None;
    let mut octs: Option<Vec<Oct>> = None;
    let mut labels: Option<Vec<String>> = None;
    let mut section = 0u8;
    for (line, l) in content_lines(text) {
        let toks: Vec<&str> = l.split_whitespace().collect();
        match toks[0] {
            "spec" if n.is_none() => {
                let rest = l["spec".len()..].trim();
                return Ok(StructureFile::Cube(build_structure_in(rest, base)?));
            }
            "pgram" | "ppiped" => {
                if toks.len() != 2 {
                    return Err(Error::Parse { line, msg: format!("expected `{} <n>`", toks[0]) });
                }
                let m = parse_usize(toks[1], line)?;
                if n.is_some_and(|n| n != m) {
                    return Err(Error::Parse { line, msg: "sections disagree on the ground set size".into() });
                }
                n = Some(m);
                if toks[0] == "pgram" {
                    if quads.is_some() {
                        return Err(Error::Parse { line, msg: "second pgram section".into() });
                    }
                    quads = Some(Vec::new());
                    section = 2;
                } else {
                    if octs.is_some() {
                        return Err(Error::Parse { line, msg: "second ppiped section".into() });
                    }
                    octs = Some(Vec::new());
                    section = 3;
                }
            }
            "labels" => {
                labels = Some(toks[1..].iter().map(|t| t.to_string()).collect());
            }
            _ => {
                let Some(n) = n else {
                    return Err(Error::Parse { line, msg: "expected `pgram <n>`, `ppiped <n>` or `spec <constructor>`".into() });
                };
                let want = if section == 2 { 4 } else { 8 };
                if toks.len() != want {
                    return Err(Error::Parse { line, msg: format!("expected {want} indices, found {}", toks.len()) });
                }
                let mut v = [0usize; 8];
                for (slot, t) in v.iter_mut().zip(&toks) {
                    *slot = parse_usize(t, line)?;
                    if *slot >= n {
                        return Err(Error::Parse { line, msg: format!("index {slot} outside the {n}-point ground set") });
                    }
                }
                if section == 2 {
                    quads.as_mut().expect("pgram section").push(Quad([v[0], v[1], v[2], v[3]]));
                } else {
                    octs.as_mut().expect("ppiped section").push(Oct(v));
                }
            }
        }
    }
    let n = n.ok_or(Error::Parse { line: 1, msg: "no pgram or ppiped header".into() })?;
    if labels.as_ref().is_some_and(|l| l.len() != n) {
        return Err(Error::Parse { line: 1, msg: format!("labels line does not have {n} entries") });
    }
    let out = match octs {
        None => {
            let p = ParallelogramStructure::explicit(n, quads.unwrap_or_default())?;
            match labels {
                Some(l) => StructureFile::Grid(p.with_labels(l)?),
                None => StructureFile::Grid(p),
            }
        }
        Some(octs) => {
            let quads = quads.unwrap_or_else(|| octs.iter().flat_map(|o| o.faces()).collect());
            let s = ParallelepipedStructure::explicit(n, quads, octs)?;
            StructureFile::Cube(match labels {
                Some(l) => s.with_labels(l)?,
                None => s,
            })
        }
    };
    Ok(out)
}

/// A structure file path, or a constructor spec when no such file exists.
pub fn load_structure(arg: &str) -> Result<StructureFile> {
    load_structure_in(arg, Path::new("."))
}

pub fn load_structure_in(arg: &str, base: &Path) -> Result<StructureFile> {
    let path = if Path::new(arg).is_absolute() { PathBuf::from(arg) } else { base.join(arg) };
    if path.is_file() {
        let text = std::fs::read_to_string(&path)?;
        let dir = path.parent().map(Path::to_path_buf).unwrap_or_else(|| PathBuf::from("."));
        return parse_structure(&text, &dir);
    }
    build_structure_in(arg, base).map(StructureFile::Cube)
}

fn write_header(out: &mut String, comments: &[String]) {
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
}

fn write_labels(out: &mut String, labels: Option<&[String]>) {
    if let Some(l) = labels {
        if l.iter().all(|x| !x.is_empty() && !x.contains(char::is_whitespace) && !x.contains('#')) {
            let _ = writeln!(out, "labels {}", l.join(" "));
        }
    }
}

/// The explicit `ppiped` file; fails when `|Q|` exceeds `max_q`.
pub fn write_structure(s: &ParallelepipedStructure, comments: &[String], max_q: u128) -> Result<String> {
    let est = s.estimated_oct_count();
    if est > max_q {
        return Err(Error::Guard { what: "oct count for an explicit file", size: est, limit: max_q });
    }
    let mut out = String::new();
    write_header(&mut out, comments);
    let _ = writeln!(out, "ppiped {}", s.size());
    write_labels(&mut out, s.ground().labels());
    for o in s.octs_sorted() {
        let v: Vec<String> = o.0.iter().map(|x| x.to_string()).collect();
        out.push_str(&v.join(" "));
        out.push('\n');
    }
    Ok(out)
}

pub fn write_grid(p: &ParallelogramStructure, comments: &[String]) -> String {
    let mut out = String::new();
    write_header(&mut out, comments);
    let _ = writeln!(out, "pgram {}", p.size());
    write_labels(&mut out, p.ground().labels());
    for q in p.quads() {
        let _ = writeln!(out, "{} {} {} {}", q.0[0], q.0[1], q.0[2], q.0[3]);
    }
    out
}

/// A descriptor file rebuilt from a constructor spec on reading.
pub fn write_descriptor(spec: &str, comments: &[String]) -> String {
    let mut out = String::new();
    write_header(&mut out, comments);
    let _ = writeln!(out, "spec {spec}");
    out
}

// ---------------------------------------------------------- function files

/// One value per line: `re im`, or `re` alone.
pub fn parse_function(text: &str) -> Result<ComplexFunction> {
    let mut values = Vec::new();
    for (line, l) in content_lines(text) {
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() > 2 {
            return Err(Error::Parse { line, msg: "expected `re im`".into() });
        }
        let num = |t: &str| t.parse::<f64>().map_err(|_| Error::Parse { line, msg: format!("`{t}` is not a number") });
        let re = num(toks[0])?;
        let im = toks.get(1).map(|t| num(t)).transpose()?.unwrap_or(0.0);
        if !re.is_finite() || !im.is_finite() {
            return Err(Error::Parse { line, msg: "value is not finite".into() });
        }
        values.push(Complex64::new(re, im));
    }
    if values.is_empty() {
        return Err(Error::Parse { line: 1, msg: "function file has no values".into() });
    }
    ComplexFunction::new(values)
}

pub fn write_function(f: &ComplexFunction) -> String {
    let mut out = String::new();
    for z in f.values() {
        let _ = writeln!(out, "{:?} {:?}", z.re, z.im);
    }
    out
}

/// `x` to 12 significant digits in positional notation.
pub fn format_sig(x: f64) -> String {
    if x == 0.0 {
        return "0.00000000000".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    // round in scientific form first so a carry moves the exponent
    let r: f64 = format!("{x:.11e}").parse().expect("float formatting");
    let mag = r.abs().log10().floor() as i32;
    let decimals = (11 - mag).max(0) as usize;
    format!("{r:.decimals$}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::is_isomorphism;

    #[test]
    fn group_specs() {
        assert_eq!(parse_group("cyclic:1").unwrap().order(), 1);
        let g = parse_group("prod:cyclic:3,cyclic:9").unwrap();
        assert!(g.order() == 27 && g.is_abelian());
        assert_eq!(parse_group("prod:prod:cyclic:2,cyclic:2,heis:3").unwrap().order(), 108);
        assert_eq!(parse_group("S3").unwrap().order(), 6);
        assert_eq!(parse_group("sym:4").unwrap().order(), 24);
        assert!(parse_group("heis:4").is_err());
        assert!(matches!(parse_group("cyclic:x"), Err(Error::Spec { .. })));
        assert!(parse_group("prod:cyclic:2").is_err());
        assert!(parse_group("cyclic:2,junk").is_err());
    }

    #[test]
    fn group_file_round_trip() {
        let g = FiniteGroup::heisenberg(3).unwrap();
        let text = write_group(&g);
        let h = build_group(&parse_group_file(&text).unwrap()).unwrap();
        assert_eq!(h.table(), g.table());
        assert!(parse_group_file("group 2\n0 1 1").is_err());
        assert!(build_group(&parse_group_file("group 2\n0 1 1 1").unwrap()).is_err());
        let labelled = build_group(&parse_group_file("group 2 # Z/2\n0 1\n1 0\nlabels e a\n").unwrap()).unwrap();
        assert_eq!(labelled.label(1), "a");
    }

    #[test]
    fn constructor_specs() {
        let s = build_structure("abelian:cyclic:2").unwrap();
        assert_eq!((s.quad_count(), s.oct_count()), (8, 16));
        let s = build_structure("abelian:cyclic:4,sub=2").unwrap();
        assert!(s.verify().passed());
        let h = build_structure("group:heis:2").unwrap();
        assert!(h.verify().passed() && h.is_strong());
        let c = build_structure("coset:heis:2,F=center,Gamma=4").unwrap();
        assert_eq!(c.size(), 4);
        assert!(build_structure("coset:heis:2,F=center").is_err());
        assert_eq!(build_structure("counterexample:3").unwrap().size(), 9);
        assert!(build_structure("counterexample:4").is_err());
        assert!(build_structure("tensor:counterexample:3,E=cyclic:9").unwrap().size() == 27);
        assert!(build_structure("tensor:counterexample:3,E=cyclic:2").is_err());
        assert!(matches!(build_structure("nothing:1"), Err(Error::Spec { .. })));
        assert!(build_structure("abelian:cyclic:2,bogus=1").is_err());
        assert!(parse_subgroup(&FiniteGroup::cyclic(4).unwrap(), "7").is_err());
    }

    #[test]
    fn structure_file_round_trip() {
        let s = build_structure("counterexample:3").unwrap();
        let text = write_structure(&s, &["test".into()], 1 << 24).unwrap();
        let t = parse_structure(&text, Path::new(".")).unwrap().into_cube().unwrap();
        assert_eq!(t.ground().label(4), s.ground().label(4));
        assert_eq!(t.octs_sorted(), s.octs_sorted());
        assert_eq!(t.quad_count(), s.quad_count());
        let id: Vec<usize> = (0..9).collect();
        assert!(is_isomorphism(&t, &s, &id).unwrap());
        assert!(write_structure(&s, &[], 10).is_err());
        let g = write_grid(&s.grid(), &[]);
        match parse_structure(&g, Path::new(".")).unwrap() {
            StructureFile::Grid(p) => assert_eq!(p.quads(), s.grid().quads()),
            _ => panic!("expected a grid"),
        }
        let d = write_descriptor("abelian:cyclic:3", &[]);
        assert_eq!(parse_structure(&d, Path::new(".")).unwrap().size(), 3);
    }

    #[test]
    fn malformed_structure_files() {
        let bad = |t: &str| parse_structure(t, Path::new(".")).unwrap_err();
        assert!(matches!(bad("0 0 0 0\n"), Error::Parse { line: 1, .. }));
        assert!(matches!(bad("pgram 2\n0 0 0\n"), Error::Parse { line: 2, .. }));
        assert!(matches!(bad("# c\npgram 2\n0 0 0 2\n"), Error::Parse { line: 3, .. }));
        assert!(matches!(bad("ppiped 2\n0 0 0 0 0 0 0 x\n"), Error::Parse { line: 2, .. }));
        assert!(matches!(bad("pgram 2\nppiped 3\n"), Error::Parse { .. }));
    }

    #[test]
    fn function_files() {
        let f = parse_function("# f\n1 0\n-0.5 2.25\n3\n").unwrap();
        assert_eq!(f.values(), &[Complex64::new(1.0, 0.0), Complex64::new(-0.5, 2.25), Complex64::new(3.0, 0.0)]);
        assert_eq!(parse_function(&write_function(&f)).unwrap(), f);
        assert!(parse_function("1 2 3\n").is_err());
        assert!(parse_function("nan\n").is_err());
        assert!(parse_function("").is_err());
    }

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(format_sig(64.0), "64.0000000000");
        assert_eq!(format_sig(64f64.powf(0.25)), "2.82842712475");
        assert_eq!(format_sig(1.0), "1.00000000000");
        assert_eq!(format_sig(0.0), "0.00000000000");
        assert_eq!(format_sig(-0.001234), "-0.00123400000000");
        assert_eq!(format_sig(9.999999999999999), "10.0000000000");
        assert_eq!(format_sig(1e15), "1000000000000000");
    }
}
