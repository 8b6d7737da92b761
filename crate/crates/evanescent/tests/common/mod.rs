//! Corpus loading shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

use evanescent::homgen::{membership, Membership};
use evanescent::magma::{Monomial, TypeVector};
use evanescent::peirce::is_evanescent;
use evanescent::poly::Polynomial;
use evanescent::syntax::{parse, print};
use evanescent::trainsgen::{is_basis, train_identity, Roles};

pub fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

#[derive(Clone, Debug)]
pub struct Erratum {
    pub printed: String,
    pub corrected: String,
    pub note: String,
}

/// Keyed by `"<shape>/<file>:<line>"`.
pub fn errata() -> HashMap<String, Erratum> {
    let text = fs::read_to_string(corpus_dir().join("errata.txt")).expect("errata.txt");
    let mut out = HashMap::new();
    for block in text.split("\n\n") {
        let fields: HashMap<&str, &str> =
            block.lines().filter(|l| !l.starts_with('#')).filter_map(|l| l.split_once(": ")).collect();
        let Some(file) = fields.get("file") else { continue };
        out.insert(
            file.to_string(),
            Erratum {
                printed: fields["printed"].to_string(),
                corrected: fields["corrected"].to_string(),
                note: fields["note"].to_string(),
            },
        );
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Kind {
    Train,
    Homog,
}

#[derive(Clone, Debug)]
pub struct CorpusLine {
    pub key: String,
    pub kind: Kind,
    pub ty: TypeVector,
    pub printed: String,
    pub erratum: Option<Erratum>,
}

impl CorpusLine {
    /// The text the checks run on: the corrected one when an erratum exists.
    pub fn text(&self) -> &str {
        self.erratum.as_ref().map_or(&self.printed, |e| &e.corrected)
    }
}

/// Every line of every corpus list, sorted by file then line.
pub fn corpus() -> Vec<CorpusLine> {
    let errata = errata();
    let mut files = Vec::new();
    for shape in fs::read_dir(corpus_dir()).expect("corpus dir") {
        let shape = shape.unwrap().path();
        if shape.is_dir() {
            for f in fs::read_dir(&shape).unwrap() {
                files.push(f.unwrap().path());
            }
        }
    }
    files.sort();
    let mut out = Vec::new();
    for path in files {
        let shape = path.parent().unwrap().file_name().unwrap().to_string_lossy().to_string();
        let stem = path.file_stem().unwrap().to_string_lossy().to_string();
        let (kind, ty) = stem.split_once('_').expect("kind_type file name");
        let kind = if kind == "train" { Kind::Train } else { Kind::Homog };
        let ty: TypeVector = ty.replace('_', ",").parse().expect("type in file name");
        let name = path.file_name().unwrap().to_string_lossy().to_string();
        for (i, line) in fs::read_to_string(&path).unwrap().lines().enumerate() {
            let key = format!("{shape}/{name}:{}", i + 1);
            out.push(CorpusLine {
                erratum: errata.get(&key).cloned(),
                key,
                kind: kind.clone(),
                ty: ty.clone(),
                printed: line.to_string(),
            });
        }
    }
    out
}

/// The full-type monomial of a train polynomial that is not a basis element.
pub fn train_lead(f: &Polynomial, ty: &TypeVector) -> Option<Monomial> {
    let leads: Vec<Monomial> =
        f.terms().filter(|(w, _)| w.type_vector() == *ty && !is_basis(w)).map(|(w, _)| w.clone()).collect();
    (leads.len() == 1).then(|| leads[0].clone())
}

/// Why a train line is not reproduced, `None` when it is.
pub fn check_train(text: &str, ty: &TypeVector) -> Option<String> {
    let f = match parse(text) {
        Ok(f) => f,
        Err(e) => return Some(format!("parse error {e}")),
    };
    if !is_evanescent(&f).is_evanescent_identity {
        return Some("not evanescent".into());
    }
    let Some(w) = train_lead(&f, ty) else {
        return Some("no unique lead monomial".into());
    };
    let shape = Roles::detect(ty).expect("supported type").shape;
    match train_identity(&w, shape) {
        Ok(id) if id.polynomial == f => None,
        Ok(id) => Some(format!("generated {} differs", print(&id.polynomial))),
        Err(e) => Some(e.to_string()),
    }
}

/// Why a homogeneous line is rejected, `None` when it is accepted.
pub fn check_homog(text: &str, ty: &TypeVector) -> Option<String> {
    let f = match parse(text) {
        Ok(f) => f,
        Err(e) => return Some(format!("parse error {e}")),
    };
    if !f.is_homogeneous() || f.type_vector() != *ty {
        return Some("wrong type".into());
    }
    if !is_evanescent(&f).is_evanescent_identity {
        return Some("not evanescent".into());
    }
    match membership(&f) {
        Membership::InSpan => None,
        other => Some(format!("{other:?}")),
    }
}

pub fn check_line(line: &CorpusLine, text: &str) -> Option<String> {
    match line.kind {
        Kind::Train => check_train(text, &line.ty),
        Kind::Homog => check_homog(text, &line.ty),
    }
}

/// Why a line is rejected, counting a repeat of an earlier line of the same
/// file as a defect.
pub fn line_defect(line: &CorpusLine, text: &str, earlier: &[Polynomial]) -> Option<String> {
    check_line(line, text).or_else(|| {
        let f = parse(text).ok()?;
        earlier.contains(&f).then(|| "repeats an earlier line".to_string())
    })
}

fn file_of(key: &str) -> &str {
    key.rsplit_once(':').map_or(key, |(file, _)| file)
}

/// Failures for one kind of list: each line must pass, and each erratum
/// must match the printed line, fail as printed and pass once corrected.
pub fn corpus_failures(kind: Kind) -> (usize, usize, Vec<String>) {
    let lines: Vec<CorpusLine> = corpus().into_iter().filter(|l| l.kind == kind).collect();
    let mut failures = Vec::new();
    let mut corrected = 0;
    let mut seen: HashMap<&str, Vec<Polynomial>> = HashMap::new();
    for line in &lines {
        let earlier = seen.entry(file_of(&line.key)).or_default();
        if let Some(e) = &line.erratum {
            corrected += 1;
            if e.printed != line.printed {
                failures.push(format!("{}: erratum does not match the printed line", line.key));
            }
            if line_defect(line, &line.printed, earlier).is_none() {
                failures.push(format!("{}: erratum for a line that already passes", line.key));
            }
        }
        if let Some(why) = line_defect(line, line.text(), earlier) {
            failures.push(format!("{}: {why}", line.key));
        }
        if let Ok(f) = parse(line.text()) {
            earlier.push(f);
        }
    }
    (lines.len(), corrected, failures)
}
