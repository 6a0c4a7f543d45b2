use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use sha2::{Digest, Sha256};

use crate::certalg::model_ref::ModelRef;
use crate::error::{Error, Result};
use crate::scalar::{fmt_rational, parse_rational, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LimitKind {
    Strong,
    Weak,
}

impl LimitKind {
    pub fn name(self) -> &'static str {
        match self {
            LimitKind::Strong => "strong",
            LimitKind::Weak => "weak",
        }
    }
}

impl FromStr for LimitKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strong" => Ok(LimitKind::Strong),
            "weak" => Ok(LimitKind::Weak),
            _ => Err(Error::invalid(format!("unknown limit kind `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    Widen,
    Plus,
    Minus,
    Scale,
    Squeeze,
    ChangeOfVariable,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::Widen => "widen",
            Rule::Plus => "plus",
            Rule::Minus => "minus",
            Rule::Scale => "scale",
            Rule::Squeeze => "squeeze",
            Rule::ChangeOfVariable => "change-of-variable",
        }
    }
}

impl FromStr for Rule {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "widen" => Rule::Widen,
            "plus" => Rule::Plus,
            "minus" => Rule::Minus,
            "scale" => Rule::Scale,
            "squeeze" => Rule::Squeeze,
            "change-of-variable" | "cov" => Rule::ChangeOfVariable,
            _ => return Err(Error::invalid(format!("unknown rule `{s}`"))),
        })
    }
}

/// How a checked certificate's defect was computed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Evidence {
    /// Exact defect over the finite admissible set.
    Exact { defect: Scalar },
    /// Finest-level grid estimate.
    Sampled { defect: Scalar, levels: usize, samples: usize },
}

impl Evidence {
    pub fn defect(&self) -> &Scalar {
        match self {
            Evidence::Exact { defect } | Evidence::Sampled { defect, .. } => defect,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Provenance {
    Checked(Evidence),
    Derived { rule: Rule, parents: Vec<LimitCertificate> },
}

/// The judgment "b is a (q,r)-limit of `model` at `a`", strong or weak.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LimitCertificate {
    pub model: ModelRef,
    pub a: Scalar,
    pub q: Scalar,
    pub r: Scalar,
    pub b: Scalar,
    pub kind: LimitKind,
    pub provenance: Provenance,
}

impl LimitCertificate {
    pub fn parents(&self) -> &[LimitCertificate] {
        match &self.provenance {
            Provenance::Checked(_) => &[],
            Provenance::Derived { parents, .. } => parents,
        }
    }

    pub fn rule(&self) -> Option<Rule> {
        match &self.provenance {
            Provenance::Checked(_) => None,
            Provenance::Derived { rule, .. } => Some(*rule),
        }
    }

    /// Number of certificates in the derivation tree, counting this one.
    pub fn tree_size(&self) -> usize {
        1 + self.parents().iter().map(LimitCertificate::tree_size).sum::<usize>()
    }

    fn provenance_line(&self) -> String {
        match &self.provenance {
            Provenance::Checked(Evidence::Exact { defect }) => format!("checked exact defect={}", fmt_rational(defect)),
            Provenance::Checked(Evidence::Sampled { defect, levels, samples }) => format!(
                "checked sampled defect={} levels={levels} samples={samples}",
                fmt_rational(defect)
            ),
            Provenance::Derived { rule, parents } => {
                let mut s = format!("derived {}", rule.name());
                for p in parents {
                    s.push(' ');
                    s.push_str(&p.hash());
                }
                s
            }
        }
    }

    fn body(&self) -> Vec<String> {
        vec![
            format!("model: {}", self.model),
            format!("kind: {}", self.kind.name()),
            format!("a: {}", fmt_rational(&self.a)),
            format!("q: {}", fmt_rational(&self.q)),
            format!("r: {}", fmt_rational(&self.r)),
            format!("b: {}", fmt_rational(&self.b)),
            format!("provenance: {}", self.provenance_line()),
        ]
    }

    /// SHA-256 over the body; parents enter through their hashes.
    pub fn hash(&self) -> String {
        let mut h = Sha256::new();
        for line in self.body() {
            h.update(line.as_bytes());
            h.update(b"\n");
        }
        hex::encode(h.finalize())
    }

    /// The full derivation tree, parents before children, each node once.
    pub fn export(&self) -> String {
        let mut seen = BTreeMap::new();
        let mut out = String::new();
        self.export_into(&mut seen, &mut out);
        out
    }

    fn export_into(&self, seen: &mut BTreeMap<String, ()>, out: &mut String) {
        let hash = self.hash();
        if seen.contains_key(&hash) {
            return;
        }
        for p in self.parents() {
            p.export_into(seen, out);
        }
        out.push_str(&format!("cert {hash}\n"));
        for line in self.body() {
            out.push_str("  ");
            out.push_str(&line);
            out.push('\n');
        }
        out.push_str("end\n");
        seen.insert(hash, ());
    }

    /// Reads an export and returns its last certificate; every hash is recomputed.
    pub fn import(text: &str) -> Result<LimitCertificate> {
        let mut known: BTreeMap<String, LimitCertificate> = BTreeMap::new();
        let mut last = None;
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
        while let Some((lineno, line)) = lines.next() {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some(hash) = line.strip_prefix("cert ") else {
                return Err(Error::parse(lineno, "expected `cert <hash>`"));
            };
            let mut fields = BTreeMap::new();
            loop {
                let Some((n, l)) = lines.next() else {
                    return Err(Error::parse(lineno, "certificate block is missing `end`"));
                };
                if l == "end" {
                    break;
                }
                let (k, v) = l.split_once(':').ok_or_else(|| Error::parse(n, "expected `key: value`"))?;
                fields.insert(k.trim().to_string(), (n, v.trim().to_string()));
            }
            let get = |k: &str| fields.get(k).ok_or_else(|| Error::parse(lineno, format!("missing `{k}`")));
            let at = |k: &str, e: Error| match e {
                Error::Parse { .. } => e,
                other => Error::parse(fields.get(k).map_or(lineno, |f| f.0), other.to_string()),
            };
            let rational = |k: &str| -> Result<Scalar> { parse_rational(&get(k)?.1).map_err(|e| at(k, e)) };
            let model = ModelRef::parse(&get("model")?.1).map_err(|e| at("model", e))?;
            let kind = get("kind")?.1.parse().map_err(|e| at("kind", e))?;
            let (a, q, r, b) = (rational("a")?, rational("q")?, rational("r")?, rational("b")?);
            let (pline, prov) = get("provenance")?;
            let provenance = parse_provenance(prov, &known).map_err(|e| match e {
                Error::Parse { .. } => e,
                other => Error::parse(*pline, other.to_string()),
            })?;
            let cert = LimitCertificate { model, a, q, r, b, kind, provenance };
            if cert.hash() != hash {
                return Err(Error::parse(lineno, format!("hash mismatch for certificate {hash}")));
            }
            known.insert(hash.to_string(), cert.clone());
            last = Some(cert);
        }
        last.ok_or_else(|| Error::parse(1, "no certificate found"))
    }
}

fn parse_provenance(src: &str, known: &BTreeMap<String, LimitCertificate>) -> Result<Provenance> {
    let mut words = src.split_whitespace();
    match words.next() {
        Some("checked") => {
            let kind = words.next();
            let mut kv = BTreeMap::new();
            for w in words {
                let (k, v) = w.split_once('=').ok_or_else(|| Error::invalid(format!("bad evidence field `{w}`")))?;
                kv.insert(k, v);
            }
            let field = |k: &str| kv.get(k).copied().ok_or_else(|| Error::invalid(format!("evidence needs `{k}=`")));
            let count = |k: &str| -> Result<usize> {
                field(k)?.parse().map_err(|_| Error::invalid(format!("`{k}` must be a count")))
            };
            let defect = parse_rational(field("defect")?)?;
            match kind {
                Some("exact") => Ok(Provenance::Checked(Evidence::Exact { defect })),
                Some("sampled") => Ok(Provenance::Checked(Evidence::Sampled {
                    defect,
                    levels: count("levels")?,
                    samples: count("samples")?,
                })),
                _ => Err(Error::invalid("evidence must be `exact` or `sampled`")),
            }
        }
        Some("derived") => {
            let rule = words.next().ok_or_else(|| Error::invalid("derived provenance needs a rule"))?.parse()?;
            let parents = words
                .map(|h| known.get(h).cloned().ok_or_else(|| Error::invalid(format!("parent {h} not defined earlier"))))
                .collect::<Result<Vec<_>>>()?;
            Ok(Provenance::Derived { rule, parents })
        }
        _ => Err(Error::invalid("provenance must start with `checked` or `derived`")),
    }
}

impl fmt::Display for LimitCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} = ({}, {})-lim {} at {} [{}]",
            fmt_rational(&self.b),
            fmt_rational(&self.q),
            fmt_rational(&self.r),
            self.model,
            fmt_rational(&self.a),
            self.kind.name()
        )
    }
}
