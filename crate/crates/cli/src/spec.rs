//! Line-based group and amalgam specification files.
//!
//! ```text
//! group <name>
//! gens <id> <id> ...
//! order <id> <int>
//! pow <id> = <word>
//! comm <id> <id> = <word>
//! end
//! amalgam <name> of <A> <B> core <D> via <id>-><word> ... ; <id>-><word> ...
//! ```
//!
//! Words are `id^int` factors joined by `*`; `e` is the empty word. `#`
//! starts a comment. Lines may end in LF or CRLF.

use nil2::pc::Word;
use nil2::{Amalgam, Elem, Group, Hom, PcBuilder};
use std::collections::BTreeMap;
use std::fmt;

/// A diagnostic pointing at a line and column (both 1-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for SpecError {}

/// Groups and amalgams declared in one or more files, in declaration order.
#[derive(Clone, Debug, Default)]
pub struct SpecObjects {
    pub groups: BTreeMap<String, Group>,
    pub amalgams: BTreeMap<String, Amalgam>,
}

/// One whitespace-separated token with its 1-based column.
#[derive(Clone, Copy, Debug)]
struct Tok<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Tok<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_ascii_whitespace() {
            if let Some(s) = start.take() {
                out.push(Tok { text: &line[s..i], column: s + 1 });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Tok { text: &line[s..], column: s + 1 });
    }
    out
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parses a word against generator names. Factors are `id` or `id^int`.
pub fn parse_word(text: &str, names: &[String]) -> Result<Word, String> {
    let text = text.trim();
    if text == "e" {
        return Ok(Vec::new());
    }
    let mut word = Vec::new();
    for factor in text.split('*') {
        let factor = factor.trim();
        let (name, exp) = match factor.rsplit_once('^') {
            Some((n, e)) => (n, e.parse::<i64>().map_err(|_| format!("bad exponent in factor `{factor}`"))?),
            None => (factor, 1),
        };
        let g = names
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| format!("unknown generator `{name}` (known: {})", names.join(", ")))?;
        word.push((g, exp));
    }
    Ok(word)
}

/// Evaluates a word in a polycyclically presented group.
pub fn eval_word(g: &Group, text: &str) -> Result<Elem, String> {
    let pc = g.pc().ok_or_else(|| format!("{} has no generator names", g.name()))?;
    let word = parse_word(text, pc.names())?;
    g.word(&word).map_err(|e| e.to_string())
}

struct GroupDraft {
    name: String,
    line: usize,
    gens: Vec<String>,
    orders: Vec<Option<u32>>,
    powers: Vec<(usize, Word)>,
    comms: Vec<(usize, usize, Word)>,
}

impl GroupDraft {
    fn index(&self, tok: Tok<'_>, line: usize) -> Result<usize, SpecError> {
        self.gens
            .iter()
            .position(|g| g == tok.text)
            .ok_or_else(|| err(line, tok.column, format!("`{}` is not a generator of {}", tok.text, self.name)))
    }

    fn finish(self) -> Result<Group, SpecError> {
        let mut b = PcBuilder::new();
        for (g, o) in self.gens.iter().zip(&self.orders) {
            let o = o.ok_or_else(|| err(self.line, 1, format!("generator `{g}` of {} has no order", self.name)))?;
            b.generator(g, o);
        }
        for (i, w) in self.powers {
            b.power(i, w);
        }
        for (j, i, w) in self.comms {
            b.comm(j, i, w);
        }
        let semantic = |e: nil2::Error| err(self.line, 1, format!("group {}: {e}", self.name));
        let pres = b.build().map_err(semantic)?;
        Group::from_pc(&self.name, pres).map_err(semantic)
    }
}

fn err(line: usize, column: usize, message: impl Into<String>) -> SpecError {
    SpecError { line, column, message: message.into() }
}

/// The text after `=` in a `pow` or `comm` line.
fn rhs<'a>(toks: &[Tok<'a>], at: usize, line: usize, raw: &'a str) -> Result<&'a str, SpecError> {
    match toks.get(at) {
        Some(t) if t.text == "=" => {
            let start = toks.get(at + 1).map(|t| t.column - 1).unwrap_or(raw.len());
            let w = raw[start..].trim();
            if w.is_empty() {
                Err(err(line, t.column, "missing word after `=`"))
            } else {
                Ok(w)
            }
        }
        Some(t) => Err(err(line, t.column, format!("expected `=`, found `{}`", t.text))),
        None => Err(err(line, raw.len() + 1, "expected `=`")),
    }
}

fn word_at(text: &str, names: &[String], line: usize, column: usize) -> Result<Word, SpecError> {
    parse_word(text, names).map_err(|m| err(line, column, m))
}

/// Parses a whole file, adding its objects to `into`.
pub fn parse_into(source: &str, into: &mut SpecObjects) -> Result<(), SpecError> {
    if let Some(pos) = source.find(|c: char| !c.is_ascii()) {
        let line = source[..pos].matches('\n').count() + 1;
        let column = pos - source[..pos].rfind('\n').map_or(0, |i| i + 1) + 1;
        return Err(err(line, column, "non-ASCII character"));
    }
    let mut draft: Option<GroupDraft> = None;
    for (idx, raw) in source.split('\n').enumerate() {
        let line = idx + 1;
        let raw = raw.strip_suffix('\r').unwrap_or(raw);
        let raw = raw.split('#').next().unwrap_or("");
        let toks = tokens(raw);
        let Some(head) = toks.first().copied() else { continue };
        let arity = |n: usize| -> Result<(), SpecError> {
            if toks.len() == n {
                Ok(())
            } else {
                Err(err(line, head.column, format!("`{}` takes {} argument(s)", head.text, n - 1)))
            }
        };
        match (head.text, draft.as_mut()) {
            ("group", None) => {
                arity(2)?;
                let name = toks[1];
                if !is_ident(name.text) {
                    return Err(err(line, name.column, format!("`{}` is not a valid name", name.text)));
                }
                if into.groups.contains_key(name.text) {
                    return Err(err(line, name.column, format!("group {} is already defined", name.text)));
                }
                draft = Some(GroupDraft {
                    name: name.text.into(),
                    line,
                    gens: Vec::new(),
                    orders: Vec::new(),
                    powers: Vec::new(),
                    comms: Vec::new(),
                });
            }
            ("gens", Some(d)) => {
                for t in &toks[1..] {
                    if !is_ident(t.text) || t.text == "e" {
                        return Err(err(line, t.column, format!("`{}` is not a valid generator name", t.text)));
                    }
                    if d.gens.iter().any(|g| g == t.text) {
                        return Err(err(line, t.column, format!("generator `{}` declared twice", t.text)));
                    }
                    d.gens.push(t.text.into());
                    d.orders.push(None);
                }
            }
            ("order", Some(d)) => {
                arity(3)?;
                let i = d.index(toks[1], line)?;
                let o = toks[2]
                    .text
                    .parse::<u32>()
                    .ok()
                    .filter(|&o| o >= 2)
                    .ok_or_else(|| err(line, toks[2].column, "order must be an integer at least 2"))?;
                d.orders[i] = Some(o);
            }
            ("pow", Some(d)) => {
                let i = d.index(*toks.get(1).ok_or_else(|| err(line, head.column, "missing generator"))?, line)?;
                let w = rhs(&toks, 2, line, raw)?;
                let word = word_at(w, &d.gens, line, toks[3].column)?;
                d.powers.push((i, word));
            }
            ("comm", Some(d)) => {
                if toks.len() < 3 {
                    return Err(err(line, head.column, "`comm` needs two generators"));
                }
                let (j, i) = (d.index(toks[1], line)?, d.index(toks[2], line)?);
                if i == j {
                    return Err(err(line, toks[2].column, "commutator of a generator with itself"));
                }
                let w = rhs(&toks, 3, line, raw)?;
                let word = word_at(w, &d.gens, line, toks[4].column)?;
                d.comms.push((j, i, word));
            }
            ("end", Some(_)) => {
                arity(1)?;
                let d = draft.take().expect("inside a group block");
                let g = d.finish()?;
                into.groups.insert(g.name().to_string(), g);
            }
            ("amalgam", None) => parse_amalgam(&toks, line, raw, into)?,
            ("group" | "amalgam", Some(d)) => {
                return Err(err(line, head.column, format!("group {} is missing `end`", d.name)));
            }
            ("gens" | "order" | "pow" | "comm" | "end", None) => {
                return Err(err(line, head.column, format!("`{}` outside a group block", head.text)));
            }
            (other, _) => return Err(err(line, head.column, format!("unknown keyword `{other}`"))),
        }
    }
    if let Some(d) = draft {
        return Err(err(d.line, 1, format!("group {} is missing `end`", d.name)));
    }
    Ok(())
}

pub fn parse(source: &str) -> Result<SpecObjects, SpecError> {
    let mut out = SpecObjects::default();
    parse_into(source, &mut out)?;
    Ok(out)
}

fn parse_amalgam(toks: &[Tok<'_>], line: usize, raw: &str, into: &mut SpecObjects) -> Result<(), SpecError> {
    let expect = |i: usize, kw: &str| -> Result<Tok<'_>, SpecError> {
        match toks.get(i) {
            Some(t) if kw.is_empty() || t.text == kw => Ok(*t),
            Some(t) => Err(err(line, t.column, format!("expected `{kw}`, found `{}`", t.text))),
            None => Err(err(line, raw.len() + 1, if kw.is_empty() { "unexpected end of line".into() } else { format!("expected `{kw}`") })),
        }
    };
    let name = expect(1, "")?;
    if !is_ident(name.text) {
        return Err(err(line, name.column, format!("`{}` is not a valid name", name.text)));
    }
    if into.amalgams.contains_key(name.text) {
        return Err(err(line, name.column, format!("amalgam {} is already defined", name.text)));
    }
    expect(2, "of")?;
    let group = |t: Tok<'_>| {
        into.groups.get(t.text).cloned().ok_or_else(|| err(line, t.column, format!("unknown group `{}`", t.text)))
    };
    let (a, b) = (group(expect(3, "")?)?, group(expect(4, "")?)?);
    expect(5, "core")?;
    let d = group(expect(6, "")?)?;
    let via = expect(7, "via")?;
    let rest_start = toks.get(8).map(|t| t.column - 1).unwrap_or(raw.len());
    let rest = &raw[rest_start..];
    let Some((left, right)) = rest.split_once(';') else {
        return Err(err(line, via.column, "expected `;` between the two maps"));
    };
    let right_col = rest_start + left.len() + 2;
    let phi_a = parse_map(left, &d, &a, line, rest_start + 1)?;
    let phi_b = parse_map(right, &d, &b, line, right_col)?;
    let am = Amalgam::new(name.text, phi_a, phi_b).map_err(|e| err(line, name.column, format!("amalgam {}: {e}", name.text)))?;
    into.amalgams.insert(name.text.to_string(), am);
    Ok(())
}

/// `id->word ...` assigning an image to every generator of the core.
fn parse_map(text: &str, d: &Group, target: &Group, line: usize, column: usize) -> Result<Hom, SpecError> {
    let names = d.pc().map(|p| p.names().to_vec()).unwrap_or_default();
    let target_names = target.pc().map(|p| p.names().to_vec()).unwrap_or_default();
    let mut images: Vec<Option<Elem>> = vec![None; names.len()];
    for t in tokens(text) {
        let col = column + t.column - 1;
        let (src, word) = t
            .text
            .split_once("->")
            .ok_or_else(|| err(line, col, format!("expected `id->word`, found `{}`", t.text)))?;
        let i = names
            .iter()
            .position(|n| n == src)
            .ok_or_else(|| err(line, col, format!("`{src}` is not a generator of {}", d.name())))?;
        if images[i].is_some() {
            return Err(err(line, col, format!("`{src}` is mapped twice")));
        }
        let w = word_at(word, &target_names, line, col + src.len() + 2)?;
        images[i] = Some(target.word(&w).map_err(|e| err(line, col, e.to_string()))?);
    }
    let images: Vec<Elem> = images
        .into_iter()
        .zip(&names)
        .map(|(img, n)| img.ok_or_else(|| err(line, column, format!("no image given for `{n}` in {}", target.name()))))
        .collect::<Result<_, _>>()?;
    Hom::from_images(d, target, &images).map_err(|e| err(line, column, format!("map into {}: {e}", target.name())))
}
