//! Text formats for every input kind, with renderers that load back to equal values.
//!
//! A file is a list of `key: value` entries. Values are atoms, `[lists]` or
//! `{key: value}` maps, and several entries may share a line. A few keys take
//! the rest of their line verbatim (`expr`, `acceptance`) or an indented block
//! of `lhs -> rhs` rows (`table`, `overrides`, `transitions`). `#` starts a
//! comment. The kind is inferred from the keys present:
//!
//! ```text
//! transient: [3/1]  strands: [{target: 0/1, mode: above}, {target: 1/1, mode: alt}]
//! members: [{strands: [{target: 1/1, mode: exact}]}, {strands: [{target: 2/1, mode: below}]}]
//! expr: sign(x)            domain: [-1/1, 1/1] | reals | none
//! table:                   overrides:
//!   0/1 -> 1/1               1/2 -> 3/1
//! states: [q0, q1]  alphabet: [a, b]  initial: q0
//! transitions:
//!   q0, a -> q1
//! acceptance: buchi [q1]   or   acceptance: muller [[q0], [q0, q1]]
//! levels: [1/2, 1/4]  samples: 33  gap: 1/4
//! ```
//!
//! Certificate exports (blocks starting with `cert <hash>`) are also accepted.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use crate::certalg::LimitCertificate;
use crate::error::{Error, Result};
use crate::funlim::{Expr, FunctionModel, Generator, GeneratorDomain, GridSchedule};
use crate::omegalim::{Acceptance, AutomatonSpec};
use crate::scalar::{fmt_rational, parse_rational, parse_xscalar, Interval, Scalar};
use crate::seqlim::{SequenceSet, SequenceSpec, Strand};

#[derive(Debug, Clone, PartialEq)]
pub enum Document {
    Sequence(SequenceSpec),
    SequenceSet(SequenceSet),
    Function(FunctionModel),
    Automaton(AutomatonSpec),
    Schedule(GridSchedule),
    Certificate(Box<LimitCertificate>),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Sequence(_) => "sequence",
            Document::SequenceSet(_) => "sequence set",
            Document::Function(_) => "function",
            Document::Automaton(_) => "automaton",
            Document::Schedule(_) => "schedule",
            Document::Certificate(_) => "certificate",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Value {
    Atom(String),
    List(Vec<Value>),
    Map(Vec<(String, Value)>),
}

#[derive(Debug)]
enum Body {
    Value(Value),
    Text(String),
    Rows(Vec<(usize, String)>),
}

struct Entry {
    line: usize,
    body: Body,
}

const TEXT_KEYS: [&str; 2] = ["expr", "acceptance"];
const ROW_KEYS: [&str; 3] = ["table", "overrides", "transitions"];

struct Lexer<'a> {
    s: &'a [u8],
    pos: usize,
    line: usize,
}

impl Lexer<'_> {
    fn err(&self, reason: impl Into<String>) -> Error {
        Error::parse(self.line, reason)
    }

    fn peek(&mut self) -> Option<u8> {
        while self.pos < self.s.len() && (self.s[self.pos].is_ascii_whitespace() || self.s[self.pos] == b',') {
            self.pos += 1;
        }
        self.s.get(self.pos).copied()
    }

    fn word(&mut self) -> Result<String> {
        self.peek();
        let start = self.pos;
        while self.pos < self.s.len() && !b" \t\r\n,[]{}:".contains(&self.s[self.pos]) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a value"));
        }
        Ok(String::from_utf8_lossy(&self.s[start..self.pos]).into_owned())
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() != Some(c) {
            return Err(self.err(format!("expected `{}`", c as char)));
        }
        self.pos += 1;
        Ok(())
    }

    fn value(&mut self) -> Result<Value> {
        match self.peek() {
            Some(b'[') => {
                self.pos += 1;
                let mut items = Vec::new();
                while self.peek() != Some(b']') {
                    if self.peek().is_none() {
                        return Err(self.err("unclosed `[`"));
                    }
                    items.push(self.value()?);
                }
                self.pos += 1;
                Ok(Value::List(items))
            }
            Some(b'{') => {
                self.pos += 1;
                let mut fields = Vec::new();
                while self.peek() != Some(b'}') {
                    if self.peek().is_none() {
                        return Err(self.err("unclosed `{`"));
                    }
                    let k = self.word()?;
                    self.expect(b':')?;
                    fields.push((k, self.value()?));
                }
                self.pos += 1;
                Ok(Value::Map(fields))
            }
            Some(b']' | b'}' | b':') => Err(self.err("unexpected delimiter")),
            Some(_) => Ok(Value::Atom(self.word()?)),
            None => Err(self.err("missing value")),
        }
    }
}

fn bracket_depth(s: &str) -> i64 {
    s.bytes()
        .map(|c| match c {
            b'[' | b'{' => 1,
            b']' | b'}' => -1,
            _ => 0,
        })
        .sum()
}

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(a, _)| a)
}

fn read_entries(text: &str) -> Result<BTreeMap<String, Entry>> {
    let lines: Vec<&str> = text.lines().collect();
    let mut out: BTreeMap<String, Entry> = BTreeMap::new();
    let insert = |out: &mut BTreeMap<String, Entry>, key: String, entry: Entry| -> Result<()> {
        let line = entry.line;
        if out.insert(key.clone(), entry).is_some() {
            return Err(Error::parse(line, format!("duplicate key `{key}`")));
        }
        Ok(())
    };
    let mut i = 0;
    while i < lines.len() {
        let lineno = i + 1;
        let raw = strip_comment(lines[i]);
        i += 1;
        if raw.trim().is_empty() {
            continue;
        }
        if raw.starts_with(char::is_whitespace) {
            return Err(Error::parse(lineno, "unexpected indented line"));
        }
        let (key, rest) = raw.split_once(':').ok_or_else(|| Error::parse(lineno, "expected `key: value`"))?;
        let key = key.trim();
        if TEXT_KEYS.contains(&key) {
            insert(&mut out, key.to_string(), Entry { line: lineno, body: Body::Text(rest.trim().to_string()) })?;
            continue;
        }
        if ROW_KEYS.contains(&key) {
            if !rest.trim().is_empty() {
                return Err(Error::parse(lineno, format!("`{key}:` takes indented rows on the following lines")));
            }
            let mut rows = Vec::new();
            while i < lines.len() {
                let row = strip_comment(lines[i]);
                if !row.trim().is_empty() && !row.starts_with(char::is_whitespace) {
                    break;
                }
                if !row.trim().is_empty() {
                    rows.push((i + 1, row.trim().to_string()));
                }
                i += 1;
            }
            insert(&mut out, key.to_string(), Entry { line: lineno, body: Body::Rows(rows) })?;
            continue;
        }
        let mut chunk = raw.to_string();
        while bracket_depth(&chunk) > 0 && i < lines.len() {
            chunk.push('\n');
            chunk.push_str(strip_comment(lines[i]));
            i += 1;
        }
        let mut lx = Lexer { s: chunk.as_bytes(), pos: 0, line: lineno };
        while lx.peek().is_some() {
            let k = lx.word()?;
            if TEXT_KEYS.contains(&k.as_str()) || ROW_KEYS.contains(&k.as_str()) {
                return Err(lx.err(format!("`{k}:` must start its own line")));
            }
            lx.expect(b':')?;
            let v = lx.value()?;
            insert(&mut out, k, Entry { line: lineno, body: Body::Value(v) })?;
        }
    }
    Ok(out)
}

fn at(line: usize) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::Parse { .. } => e,
        other => Error::parse(line, other.to_string()),
    }
}

fn atom(v: &Value, line: usize) -> Result<&str> {
    match v {
        Value::Atom(a) => Ok(a),
        _ => Err(Error::parse(line, "expected a plain value")),
    }
}

fn list(v: &Value, line: usize) -> Result<&[Value]> {
    match v {
        Value::List(items) => Ok(items),
        _ => Err(Error::parse(line, "expected a `[...]` list")),
    }
}

fn rational(v: &Value, line: usize) -> Result<Scalar> {
    parse_rational(atom(v, line)?).map_err(at(line))
}

fn names(v: &Value, line: usize) -> Result<Vec<String>> {
    list(v, line)?.iter().map(|x| atom(x, line).map(String::from)).collect()
}

fn value_of<'e>(entries: &'e BTreeMap<String, Entry>, key: &str) -> Result<Option<(&'e Value, usize)>> {
    match entries.get(key) {
        None => Ok(None),
        Some(Entry { line, body: Body::Value(v) }) => Ok(Some((v, *line))),
        Some(Entry { line, .. }) => Err(Error::parse(*line, format!("`{key}` has the wrong shape"))),
    }
}

fn require<'e>(entries: &'e BTreeMap<String, Entry>, key: &str) -> Result<(&'e Value, usize)> {
    value_of(entries, key)?.ok_or_else(|| Error::parse(1, format!("missing `{key}`")))
}

fn only_keys(entries: &BTreeMap<String, Entry>, allowed: &[&str], kind: &str) -> Result<()> {
    for (k, e) in entries {
        if !allowed.contains(&k.as_str()) {
            return Err(Error::parse(e.line, format!("unexpected key `{k}` in a {kind} file")));
        }
    }
    Ok(())
}

/// `fields` are `(key, value, line)`; `line` locates a missing `strands`.
fn sequence_from_fields(fields: &[(&str, &Value, usize)], line: usize) -> Result<SequenceSpec> {
    let mut transient = Vec::new();
    let mut strands = None;
    for &(k, v, line) in fields {
        match k {
            "transient" => transient = list(v, line)?.iter().map(|x| rational(x, line)).collect::<Result<_>>()?,
            "strands" => strands = Some(list(v, line)?.iter().map(|s| strand(s, line)).collect::<Result<Vec<_>>>()?),
            other => return Err(Error::parse(line, format!("unexpected key `{other}` in a sequence"))),
        }
    }
    SequenceSpec::new(transient, strands.ok_or_else(|| Error::parse(line, "missing `strands`"))?).map_err(at(line))
}

fn strand(v: &Value, line: usize) -> Result<Strand> {
    let Value::Map(fields) = v else {
        return Err(Error::parse(line, "a strand is `{target: ..., mode: ...}`"));
    };
    let (mut target, mut mode) = (None, None);
    for (k, v) in fields {
        match k.as_str() {
            "target" => target = Some(parse_xscalar(atom(v, line)?).map_err(at(line))?),
            "mode" => {
                let name = atom(v, line)?;
                mode = Some(name.parse().map_err(|_| Error::parse(line, format!("unknown approach mode `{name}`")))?);
            }
            other => return Err(Error::parse(line, format!("unexpected key `{other}` in a strand"))),
        }
    }
    Ok(Strand::new(
        target.ok_or_else(|| Error::parse(line, "strand is missing `target`"))?,
        mode.ok_or_else(|| Error::parse(line, "strand is missing `mode`"))?,
    ))
}

fn point_rows(rows: &[(usize, String)]) -> Result<BTreeMap<Scalar, Scalar>> {
    let mut t = BTreeMap::new();
    for (line, row) in rows {
        let (x, y) = split_arrow(row).ok_or_else(|| Error::parse(*line, "expected `x -> y`"))?;
        let x = parse_rational(x).map_err(at(*line))?;
        let y = parse_rational(y).map_err(at(*line))?;
        if t.insert(x, y).is_some() {
            return Err(Error::parse(*line, "duplicate point"));
        }
    }
    Ok(t)
}

fn split_arrow(row: &str) -> Option<(&str, &str)> {
    row.split_once("->").or_else(|| row.split_once('→')).map(|(a, b)| (a.trim(), b.trim()))
}

fn rows_of<'e>(entries: &'e BTreeMap<String, Entry>, key: &str) -> Result<Option<&'e [(usize, String)]>> {
    match entries.get(key) {
        None => Ok(None),
        Some(Entry { body: Body::Rows(r), .. }) => Ok(Some(r)),
        Some(Entry { line, .. }) => Err(Error::parse(*line, format!("`{key}` has the wrong shape"))),
    }
}

fn load_function(entries: &BTreeMap<String, Entry>) -> Result<FunctionModel> {
    only_keys(entries, &["table", "expr", "overrides", "domain"], "function")?;
    if let Some(rows) = rows_of(entries, "table")? {
        if let Some((k, e)) = entries.iter().find(|(k, _)| *k != "table") {
            return Err(Error::parse(e.line, format!("`{k}` cannot be combined with `table`")));
        }
        return FunctionModel::table(point_rows(rows)?).map_err(at(entries["table"].line));
    }
    let overrides = rows_of(entries, "overrides")?.map(point_rows).transpose()?.unwrap_or_default();
    let domain = match value_of(entries, "domain")? {
        None => GeneratorDomain::AllReals,
        Some((Value::Atom(a), _)) if a == "reals" => GeneratorDomain::AllReals,
        Some((Value::Atom(a), _)) if a == "none" => GeneratorDomain::OverridesOnly,
        Some((v, line)) => {
            let ends = list(v, line)?;
            if ends.len() != 2 {
                return Err(Error::parse(line, "domain is `[lo, hi]`, `reals` or `none`"));
            }
            GeneratorDomain::Interval(Interval::new(rational(&ends[0], line)?, rational(&ends[1], line)?).map_err(at(line))?)
        }
    };
    let expr = match entries.get("expr") {
        Some(Entry { line, body: Body::Text(src) }) => Expr::parse(src).map_err(at(*line))?,
        Some(Entry { line, .. }) => return Err(Error::parse(*line, "`expr` has the wrong shape")),
        None if domain == GeneratorDomain::OverridesOnly => Expr::Const(crate::scalar::zero()),
        None => return Err(Error::parse(1, "a function needs `table` or `expr`")),
    };
    if domain == GeneratorDomain::OverridesOnly && overrides.is_empty() {
        return Err(Error::InvariantViolation("`domain: none` needs at least one override".into()));
    }
    Ok(FunctionModel::Generator(Generator { expr, overrides, domain }))
}

fn load_automaton(entries: &BTreeMap<String, Entry>) -> Result<AutomatonSpec> {
    only_keys(entries, &["states", "alphabet", "initial", "transitions", "acceptance"], "automaton")?;
    let (v, sl) = require(entries, "states")?;
    let states = names(v, sl)?;
    let (v, al) = require(entries, "alphabet")?;
    let alphabet = names(v, al)?;
    let (v, il) = require(entries, "initial")?;
    let initial = atom(v, il)?.to_string();
    let rows = rows_of(entries, "transitions")?.ok_or_else(|| Error::parse(1, "missing `transitions`"))?;
    let mut delta = Vec::new();
    for (line, row) in rows {
        let (lhs, to) = split_arrow(row).ok_or_else(|| Error::parse(*line, "expected `state, symbol -> state`"))?;
        let (from, sym) = lhs.split_once(',').ok_or_else(|| Error::parse(*line, "expected `state, symbol -> state`"))?;
        delta.push((from.trim().to_string(), sym.trim().to_string(), to.to_string()));
    }
    let (acc_line, acc) = match entries.get("acceptance") {
        Some(Entry { line, body: Body::Text(t) }) => (*line, t.as_str()),
        Some(Entry { line, .. }) => return Err(Error::parse(*line, "`acceptance` has the wrong shape")),
        None => return Err(Error::parse(1, "missing `acceptance`")),
    };
    let (mode, rest) = acc.split_once(char::is_whitespace).unwrap_or((acc, ""));
    let mut lx = Lexer { s: rest.as_bytes(), pos: 0, line: acc_line };
    let set_value = lx.value()?;
    if lx.peek().is_some() {
        return Err(Error::parse(acc_line, "trailing text after acceptance set"));
    }
    let set = |v: &Value| -> Result<BTreeSet<String>> { Ok(names(v, acc_line)?.into_iter().collect()) };
    let acceptance = match mode {
        "buchi" => Acceptance::Buchi(set(&set_value)?),
        "muller" => Acceptance::Muller(list(&set_value, acc_line)?.iter().map(set).collect::<Result<_>>()?),
        other => return Err(Error::parse(acc_line, format!("acceptance must be `buchi` or `muller`, not `{other}`"))),
    };
    AutomatonSpec::new(states, alphabet, &delta, &initial, acceptance)
}

fn load_schedule(entries: &BTreeMap<String, Entry>) -> Result<GridSchedule> {
    only_keys(entries, &["levels", "samples", "gap"], "schedule")?;
    let (v, line) = require(entries, "levels")?;
    let levels = list(v, line)?.iter().map(|x| rational(x, line)).collect::<Result<Vec<_>>>()?;
    let samples = match value_of(entries, "samples")? {
        Some((v, l)) => atom(v, l)?.parse().map_err(|_| Error::parse(l, "`samples` must be a count"))?,
        None => GridSchedule::default().samples_per_level(),
    };
    let gap = match value_of(entries, "gap")? {
        Some((v, l)) => rational(v, l)?,
        None => GridSchedule::default().gap().clone(),
    };
    GridSchedule::new(levels, samples, gap).map_err(|e| Error::InvariantViolation(e.to_string()))
}

/// Parses any supported file, inferring its kind.
pub fn load(text: &str) -> Result<Document> {
    let first = text.lines().map(|l| strip_comment(l).trim()).find(|l| !l.is_empty());
    if first.is_some_and(|l| l.starts_with("cert ")) {
        return LimitCertificate::import(text).map(|c| Document::Certificate(Box::new(c)));
    }
    let entries = read_entries(text)?;
    let has = |k: &str| entries.contains_key(k);
    if has("strands") || has("transient") {
        only_keys(&entries, &["transient", "strands"], "sequence")?;
        let fields: Vec<(&str, &Value, usize)> = entries
            .iter()
            .filter_map(|(k, e)| match &e.body {
                Body::Value(v) => Some((k.as_str(), v, e.line)),
                _ => None,
            })
            .collect();
        let line = entries.values().map(|e| e.line).min().unwrap_or(1);
        return sequence_from_fields(&fields, line).map(Document::Sequence);
    }
    if has("members") {
        only_keys(&entries, &["members"], "sequence set")?;
        let (v, line) = require(&entries, "members")?;
        let members = list(v, line)?
            .iter()
            .map(|m| match m {
                Value::Map(fields) => {
                    let fields: Vec<_> = fields.iter().map(|(k, v)| (k.as_str(), v, line)).collect();
                    sequence_from_fields(&fields, line)
                }
                _ => Err(Error::parse(line, "each member is a `{transient: ..., strands: ...}` map")),
            })
            .collect::<Result<Vec<_>>>()?;
        return SequenceSet::new(members).map(Document::SequenceSet).map_err(at(line));
    }
    if has("states") {
        return load_automaton(&entries).map(Document::Automaton);
    }
    if has("levels") {
        return load_schedule(&entries).map(Document::Schedule);
    }
    if has("table") || has("expr") || has("overrides") || has("domain") {
        return load_function(&entries).map(Document::Function);
    }
    Err(Error::parse(1, "cannot tell what kind of file this is"))
}

pub fn load_path(path: &Path) -> Result<Document> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    load(&text)
}

fn rationals(v: &[Scalar]) -> String {
    v.iter().map(fmt_rational).collect::<Vec<_>>().join(", ")
}

fn sequence_fields(s: &SequenceSpec) -> String {
    let strands: Vec<String> = s
        .strands()
        .iter()
        .map(|st| format!("{{target: {}, mode: {}}}", st.target, st.mode.name()))
        .collect();
    format!("transient: [{}]  strands: [{}]", rationals(s.transient()), strands.join(", "))
}

fn point_block(key: &str, t: &BTreeMap<Scalar, Scalar>, out: &mut String) {
    out.push_str(key);
    out.push_str(":\n");
    for (x, y) in t {
        out.push_str(&format!("  {} -> {}\n", fmt_rational(x), fmt_rational(y)));
    }
}

fn name_list<'a>(v: impl IntoIterator<Item = &'a String>) -> String {
    format!("[{}]", v.into_iter().cloned().collect::<Vec<_>>().join(", "))
}

/// Canonical text for a document; `load(&render(d)) == d`.
pub fn render(d: &Document) -> String {
    match d {
        Document::Sequence(s) => format!("{}\n", sequence_fields(s)),
        Document::SequenceSet(set) => {
            let mut out = String::from("members: [\n");
            for m in set.members() {
                let f = sequence_fields(m).replacen("  strands", ", strands", 1);
                out.push_str(&format!("  {{{f}}}\n"));
            }
            out.push_str("]\n");
            out
        }
        Document::Function(FunctionModel::Discrete(t)) => {
            let mut out = String::new();
            point_block("table", t, &mut out);
            out
        }
        Document::Function(FunctionModel::Generator(g)) => {
            let mut out = format!("expr: {}\n", g.expr);
            match &g.domain {
                GeneratorDomain::AllReals => {}
                GeneratorDomain::OverridesOnly => out.push_str("domain: none\n"),
                GeneratorDomain::Interval(i) => {
                    out.push_str(&format!("domain: [{}, {}]\n", fmt_rational(i.lo()), fmt_rational(i.hi())))
                }
            }
            if !g.overrides.is_empty() {
                point_block("overrides", &g.overrides, &mut out);
            }
            out
        }
        Document::Automaton(a) => {
            let mut out = format!(
                "states: {}\nalphabet: {}\ninitial: {}\ntransitions:\n",
                name_list(a.states()),
                name_list(a.alphabet()),
                a.initial()
            );
            for (p, s, q) in a.transitions() {
                out.push_str(&format!("  {p}, {s} -> {q}\n"));
            }
            match a.acceptance() {
                Acceptance::Buchi(f) => out.push_str(&format!("acceptance: buchi {}\n", name_list(f))),
                Acceptance::Muller(fam) => {
                    let sets: Vec<String> = fam.iter().map(name_list).collect();
                    out.push_str(&format!("acceptance: muller [{}]\n", sets.join(", ")));
                }
            }
            out
        }
        Document::Schedule(s) => format!(
            "levels: [{}]\nsamples: {}\ngap: {}\n",
            rationals(s.levels()),
            s.samples_per_level(),
            fmt_rational(s.gap())
        ),
        Document::Certificate(c) => c.export(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};
    use crate::seqlim::ApproachMode;

    #[test]
    fn one_line_sequence() {
        let d = load("transient: [] strands: [{target: 0/1, mode: above}]").unwrap();
        assert_eq!(d, Document::Sequence(SequenceSpec::single(int(0), ApproachMode::Above)));
    }

    #[test]
    fn expression_function() {
        let Document::Function(f) = load("expr: sign(x)\n").unwrap() else { panic!() };
        assert_eq!(f.eval(&int(0)), None);
        assert_eq!(f.eval(&rat(-1, 3)), Some(int(-1)));
    }

    #[test]
    fn bad_mode_is_a_parse_error_with_line() {
        let e = load("# header\ntransient: []\nstrands: [{target: 0, mode: sideways}]\n").unwrap_err();
        assert_eq!(e, Error::parse(3, "unknown approach mode `sideways`"));
    }

    #[test]
    fn table_and_automaton() {
        let Document::Function(f) = load("table:\n  1 -> 2\n  3/2 → 0.5\n").unwrap() else { panic!() };
        assert_eq!(f.eval(&rat(3, 2)), Some(rat(1, 2)));
        let src = "states: [q0, q1]\nalphabet: [a, b]\ninitial: q0\ntransitions:\n  q0, a -> q0\n  q0, b -> q1\n  q1, a -> q0\n  q1, b -> q1\nacceptance: muller [[q0], [q0, q1]]\n";
        let d = load(src).unwrap();
        assert_eq!(render(&d), src);
        let missing = src.replace("  q1, b -> q1\n", "");
        assert!(matches!(load(&missing), Err(Error::InvariantViolation(_))));
    }

    #[test]
    fn structural_errors_carry_lines() {
        assert!(matches!(load("strands: [{target: 0/1, mode: above}\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(load("expr: x\nbogus: 1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(load("table:\n  1 2\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(load("levels: [1/2]\nlevels: [1/4]\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(load("hello\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn renders_round_trip() {
        let docs = [
            "transient: [1/1, -2/1]  strands: [{target: +inf, mode: exact}, {target: 1/3, mode: alt}]\n",
            "members: [\n  {transient: [], strands: [{target: 1/1, mode: below}]}\n  {transient: [5/1], strands: [{target: 0/1, mode: above}]}\n]\n",
            "expr: max(x, 0) + 1/2\ndomain: [-1/1, 1/1]\noverrides:\n  0/1 -> 7/1\n",
            "expr: 0\ndomain: none\noverrides:\n  1/1 -> 2/1\n",
            "levels: [1/2, 1/4, 1/8]\nsamples: 17\ngap: 1/4\n",
        ];
        for src in docs {
            let d = load(src).unwrap();
            assert_eq!(render(&d), src);
            assert_eq!(load(&render(&d)).unwrap(), d);
        }
    }
}
