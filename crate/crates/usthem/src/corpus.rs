//! Core domain types shared by the whole pipeline: sentence records with
//! group cues and persona labels, corpora, whitespace 1-gram tokenization,
//! lexical-diversity statistics, and JSONL persistence.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::ops::Deref;
use std::path::Path;

use chrono::{DateTime, TimeZone, Utc};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Whether a sentence opens from the ingroup ("We are") or outgroup
/// ("They are") perspective.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Cue {
    Ingroup,
    Outgroup,
}

impl Cue {
    /// The literal sentence opener this cue demands.
    pub fn phrase(self) -> &'static str {
        match self {
            Cue::Ingroup => "We are",
            Cue::Outgroup => "They are",
        }
    }

    pub fn all() -> [Cue; 2] {
        [Cue::Ingroup, Cue::Outgroup]
    }
}

impl fmt::Display for Cue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cue::Ingroup => write!(f, "ingroup"),
            Cue::Outgroup => write!(f, "outgroup"),
        }
    }
}

impl std::str::FromStr for Cue {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ingroup" => Ok(Cue::Ingroup),
            "outgroup" => Ok(Cue::Outgroup),
            other => Err(format!("unknown cue `{other}` (expected ingroup|outgroup)")),
        }
    }
}

/// Persona the generating model was conditioned with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Persona {
    #[default]
    Default,
    Conservative,
    Liberal,
}

impl Persona {
    /// Label used inside persona prompts ("Consider yourself as a ...").
    pub fn prompt_label(self) -> &'static str {
        match self {
            Persona::Default => "Default",
            Persona::Conservative => "Conservative",
            Persona::Liberal => "Liberal",
        }
    }

    pub fn all() -> [Persona; 3] {
        [Persona::Default, Persona::Conservative, Persona::Liberal]
    }
}

impl fmt::Display for Persona {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Persona::Default => write!(f, "default"),
            Persona::Conservative => write!(f, "conservative"),
            Persona::Liberal => write!(f, "liberal"),
        }
    }
}

impl std::str::FromStr for Persona {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "default" => Ok(Persona::Default),
            "conservative" => Ok(Persona::Conservative),
            "liberal" => Ok(Persona::Liberal),
            other => Err(format!(
                "unknown persona `{other}` (expected default|conservative|liberal)"
            )),
        }
    }
}

/// Political group named by a targeted outgroup prompt.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TargetGroup {
    Conservatives,
    Liberals,
}

impl TargetGroup {
    pub fn prompt_label(self) -> &'static str {
        match self {
            TargetGroup::Conservatives => "Conservatives",
            TargetGroup::Liberals => "Liberals",
        }
    }
}

impl fmt::Display for TargetGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TargetGroup::Conservatives => write!(f, "conservatives"),
            TargetGroup::Liberals => write!(f, "liberals"),
        }
    }
}

impl std::str::FromStr for TargetGroup {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "conservatives" => Ok(TargetGroup::Conservatives),
            "liberals" => Ok(TargetGroup::Liberals),
            other => Err(format!(
                "unknown target `{other}` (expected conservatives|liberals)"
            )),
        }
    }
}

/// One generated sentence with its provenance and (once judged) bias score.
///
/// Field order is the JSONL column order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SentenceRecord {
    pub id: String,
    pub text: String,
    pub cue: Cue,
    pub persona: Persona,
    pub target: Option<TargetGroup>,
    pub model_id: String,
    pub score: Option<u8>,
    pub judge_id: Option<String>,
    pub created_at: DateTime<Utc>,
}

impl SentenceRecord {
    /// Checks the record invariants, returning a human-readable violation.
    pub fn validate(&self) -> Result<(), String> {
        if self.id.is_empty() {
            return Err("id is empty".into());
        }
        let trimmed = self.text.trim();
        if trimmed.is_empty() {
            return Err("text is empty".into());
        }
        let lower = trimmed.to_lowercase();
        let expected = self.cue.phrase().to_lowercase();
        if !lower.starts_with(&expected) {
            return Err(format!(
                "text does not begin with \"{}\" for cue {}",
                self.cue.phrase(),
                self.cue
            ));
        }
        if let Some(score) = self.score {
            if score > 100 {
                return Err(format!("score {score} outside [0, 100]"));
            }
        }
        if self.target.is_some() && self.persona == Persona::Default {
            return Err("target set while persona is default".into());
        }
        Ok(())
    }
}

/// Timestamp used for all records produced under a fixed seed, so that
/// repeated runs are byte-identical.
pub fn deterministic_timestamp() -> DateTime<Utc> {
    Utc.with_ymd_and_hms(2025, 1, 1, 0, 0, 0).unwrap()
}

/// An ordered collection of sentence records plus free-form run metadata.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Corpus {
    pub records: Vec<SentenceRecord>,
    pub meta: BTreeMap<String, String>,
}

impl Corpus {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a corpus, enforcing id uniqueness and per-record invariants.
    pub fn from_records(records: Vec<SentenceRecord>) -> Result<Self, CorpusError> {
        let mut seen = HashSet::new();
        for record in &records {
            record.validate().map_err(CorpusError::InvalidRecord)?;
            if !seen.insert(record.id.clone()) {
                return Err(CorpusError::DuplicateId(record.id.clone()));
            }
        }
        Ok(Self {
            records,
            meta: BTreeMap::new(),
        })
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Records with the given cue, in corpus order.
    pub fn with_cue(&self, cue: Cue) -> impl Iterator<Item = &SentenceRecord> {
        self.records.iter().filter(move |r| r.cue == cue)
    }

    /// All tokens of the corpus, sentence by sentence.
    pub fn tokens(&self) -> Vec<String> {
        self.records
            .iter()
            .flat_map(|r| tokenize(&r.text).into_inner())
            .collect()
    }
}

/// Lowercased whitespace 1-grams with edge punctuation removed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TokenList(Vec<String>);

impl TokenList {
    pub fn into_inner(self) -> Vec<String> {
        self.0
    }
}

impl Deref for TokenList {
    type Target = [String];
    fn deref(&self) -> &[String] {
        &self.0
    }
}

impl<'a> IntoIterator for &'a TokenList {
    type Item = &'a String;
    type IntoIter = std::slice::Iter<'a, String>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Punctuation stripped from token edges. Interior punctuation (hyphens,
/// apostrophes) is kept so types like "family-owned" survive as one token.
fn is_edge_punctuation(c: char) -> bool {
    c.is_ascii_punctuation()
        || matches!(
            c,
            '\u{2018}'..='\u{201F}' // curly quotes
                | '\u{2013}' // en dash
                | '\u{2014}' // em dash
                | '\u{2026}' // ellipsis
                | '\u{00AB}' // «
                | '\u{00BB}' // »
                | '\u{00A1}' // ¡
                | '\u{00BF}' // ¿
        )
}

/// Splits on Unicode whitespace, lowercases, strips edge punctuation, and
/// drops tokens that become empty.
pub fn tokenize(text: &str) -> TokenList {
    let mut tokens = Vec::new();
    for raw in text.split_whitespace() {
        let trimmed = raw.trim_matches(is_edge_punctuation);
        if trimmed.is_empty() {
            continue;
        }
        tokens.push(trimmed.to_lowercase());
    }
    TokenList(tokens)
}

/// Lexical-diversity summary of a corpus.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LexicalStats {
    /// Per-sentence type-token ratio, averaged across sentences.
    pub ttr: f64,
    /// Fraction of tokens not on the stopword list.
    pub lexical_density: f64,
    /// Mean characters per token.
    pub mean_word_length: f64,
    pub total_tokens: usize,
    pub unique_types: usize,
}

/// Computes lexical statistics over the whole corpus. TTR is averaged per
/// sentence; density and word length are token-weighted corpus-wide.
pub fn lexical_stats(
    corpus: &Corpus,
    stopwords: &HashSet<String>,
) -> Result<LexicalStats, CorpusError> {
    let mut ttr_sum = 0.0;
    let mut ttr_sentences = 0usize;
    let mut total_tokens = 0usize;
    let mut content_tokens = 0usize;
    let mut char_sum = 0usize;
    let mut types: HashSet<String> = HashSet::new();

    for record in &corpus.records {
        let tokens = tokenize(&record.text);
        if tokens.is_empty() {
            continue;
        }
        let unique: HashSet<&String> = tokens.iter().collect();
        ttr_sum += unique.len() as f64 / tokens.len() as f64;
        ttr_sentences += 1;
        for token in &tokens {
            total_tokens += 1;
            char_sum += token.chars().count();
            if !stopwords.contains(token) {
                content_tokens += 1;
            }
            types.insert(token.clone());
        }
    }

    if total_tokens == 0 {
        return Err(CorpusError::EmptyCorpus);
    }

    Ok(LexicalStats {
        ttr: ttr_sum / ttr_sentences as f64,
        lexical_density: content_tokens as f64 / total_tokens as f64,
        mean_word_length: char_sum as f64 / total_tokens as f64,
        total_tokens,
        unique_types: types.len(),
    })
}

/// Built-in English stopword list (one word per line in `assets/stopwords.txt`).
pub fn default_stopwords() -> HashSet<String> {
    parse_stopwords(include_str!("../assets/stopwords.txt"))
}

/// Loads a custom stopword list: one lowercase word per line, `#` comments.
pub fn load_stopwords(path: &Path) -> Result<HashSet<String>, CorpusError> {
    Ok(parse_stopwords(&std::fs::read_to_string(path)?))
}

fn parse_stopwords(text: &str) -> HashSet<String> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.to_lowercase())
        .collect()
}

/// Writes one JSON object per record. Corpus `meta` is not part of the
/// line schema and is not persisted.
pub fn save_jsonl(corpus: &Corpus, path: &Path) -> Result<(), CorpusError> {
    let file = File::create(path)?;
    let mut writer = BufWriter::new(file);
    for record in &corpus.records {
        let line = serde_json::to_string(record).map_err(|e| CorpusError::Schema {
            line: 0,
            message: e.to_string(),
        })?;
        writer.write_all(line.as_bytes())?;
        writer.write_all(b"\n")?;
    }
    writer.flush()?;
    Ok(())
}

/// Reads a JSONL corpus, validating schema and invariants per line. Schema
/// errors carry the 1-based line number.
pub fn load_jsonl(path: &Path) -> Result<Corpus, CorpusError> {
    let file = File::open(path)?;
    let reader = BufReader::new(file);
    let mut records = Vec::new();
    let mut ids = HashSet::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let record: SentenceRecord =
            serde_json::from_str(&line).map_err(|e| CorpusError::Schema {
                line: line_no,
                message: e.to_string(),
            })?;
        record.validate().map_err(|message| CorpusError::Schema {
            line: line_no,
            message,
        })?;
        if !ids.insert(record.id.clone()) {
            return Err(CorpusError::Schema {
                line: line_no,
                message: format!("duplicate id `{}`", record.id),
            });
        }
        records.push(record);
    }
    Ok(Corpus {
        records,
        meta: BTreeMap::new(),
    })
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("corpus is empty")]
    EmptyCorpus,
    #[error("duplicate record id `{0}`")]
    DuplicateId(String),
    #[error("invalid record: {0}")]
    InvalidRecord(String),
    #[error("line {line}: {message}")]
    Schema { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(id: &str, text: &str, cue: Cue) -> SentenceRecord {
        SentenceRecord {
            id: id.to_string(),
            text: text.to_string(),
            cue,
            persona: Persona::Default,
            target: None,
            model_id: "stub".to_string(),
            score: None,
            judge_id: None,
            created_at: deterministic_timestamp(),
        }
    }

    #[test]
    fn tokenize_strips_edge_punctuation_and_lowercases() {
        let tokens = tokenize("We are, truly, FREE.");
        assert_eq!(&*tokens, &["we", "are", "truly", "free"]);
    }

    #[test]
    fn tokenize_empty_input() {
        assert!(tokenize("").is_empty());
    }

    #[test]
    fn tokenize_keeps_interior_hyphens() {
        let tokens = tokenize("family-owned  services");
        assert_eq!(&*tokens, &["family-owned", "services"]);
    }

    #[test]
    fn tokenize_drops_pure_punctuation_tokens() {
        let tokens = tokenize("we -- are ... !!");
        assert_eq!(&*tokens, &["we", "are"]);
    }

    #[test]
    fn lexical_stats_single_sentence() {
        let corpus =
            Corpus::from_records(vec![record("a", "we are free", Cue::Ingroup)]).unwrap();
        let stopwords: HashSet<String> = ["we", "are"].iter().map(|s| s.to_string()).collect();
        let stats = lexical_stats(&corpus, &stopwords).unwrap();
        assert!((stats.ttr - 1.0).abs() < 1e-12);
        assert!((stats.lexical_density - 1.0 / 3.0).abs() < 1e-12);
        assert!((stats.mean_word_length - 3.0).abs() < 1e-12);
        assert_eq!(stats.total_tokens, 3);
        assert_eq!(stats.unique_types, 3);
    }

    #[test]
    fn lexical_stats_repetition() {
        // Cue invariant does not apply here; build the record directly.
        let rec = SentenceRecord {
            text: "go go go".into(),
            ..record("a", "we are here to go", Cue::Ingroup)
        };
        let corpus = Corpus {
            records: vec![rec],
            meta: BTreeMap::new(),
        };
        let stats = lexical_stats(&corpus, &HashSet::new()).unwrap();
        assert!((stats.ttr - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn lexical_stats_empty_corpus() {
        let corpus = Corpus::new();
        assert!(matches!(
            lexical_stats(&corpus, &HashSet::new()),
            Err(CorpusError::EmptyCorpus)
        ));
    }

    #[test]
    fn record_invariants() {
        let mut rec = record("a", "They are late.", Cue::Outgroup);
        assert!(rec.validate().is_ok());
        rec.text = "We are early.".into();
        assert!(rec.validate().is_err());

        let mut rec = record("a", "we are, after trimming, fine", Cue::Ingroup);
        rec.score = Some(101);
        assert!(rec.validate().is_err());

        let mut rec = record("a", "We are here together.", Cue::Ingroup);
        rec.target = Some(TargetGroup::Liberals);
        assert!(rec.validate().is_err());
        rec.persona = Persona::Conservative;
        assert!(rec.validate().is_ok());
    }

    #[test]
    fn jsonl_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("corpus.jsonl");
        let mut r1 = record("a", "We are one.", Cue::Ingroup);
        r1.score = Some(42);
        r1.judge_id = Some("judge".into());
        let mut r2 = record("b", "They are far away.", Cue::Outgroup);
        r2.persona = Persona::Liberal;
        r2.target = Some(TargetGroup::Conservatives);
        let r3 = record("c", "We are builders of bridges.", Cue::Ingroup);
        let corpus = Corpus::from_records(vec![r1, r2, r3]).unwrap();
        save_jsonl(&corpus, &path).unwrap();
        let loaded = load_jsonl(&path).unwrap();
        assert_eq!(corpus.records, loaded.records);
    }

    #[test]
    fn jsonl_missing_field_names_line() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.jsonl");
        std::fs::write(
            &path,
            "{\"id\":\"a\",\"text\":\"We are one.\",\"persona\":\"default\",\"target\":null,\"model_id\":\"m\",\"score\":null,\"judge_id\":null,\"created_at\":\"2025-01-01T00:00:00Z\"}\n",
        )
        .unwrap();
        match load_jsonl(&path) {
            Err(CorpusError::Schema { line, message }) => {
                assert_eq!(line, 1);
                assert!(message.contains("cue"), "message: {message}");
            }
            other => panic!("expected schema error, got {other:?}"),
        }
    }

    #[test]
    fn jsonl_out_of_range_score() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.jsonl");
        std::fs::write(
            &path,
            "{\"id\":\"a\",\"text\":\"We are one.\",\"cue\":\"ingroup\",\"persona\":\"default\",\"target\":null,\"model_id\":\"m\",\"score\":150,\"judge_id\":null,\"created_at\":\"2025-01-01T00:00:00Z\"}\n",
        )
        .unwrap();
        match load_jsonl(&path) {
            Err(CorpusError::Schema { line, message }) => {
                assert_eq!(line, 1);
                assert!(message.contains("score"), "message: {message}");
            }
            other => panic!("expected schema error, got {other:?}"),
        }
    }

    #[test]
    fn duplicate_ids_rejected() {
        let r1 = record("a", "We are one.", Cue::Ingroup);
        let r2 = record("a", "We are two.", Cue::Ingroup);
        assert!(matches!(
            Corpus::from_records(vec![r1, r2]),
            Err(CorpusError::DuplicateId(_))
        ));
    }

    #[test]
    fn tokenize_idempotent_on_rejoined_output() {
        let texts = [
            "We are, truly, FREE.",
            "They are... staunch-defenders!! of (something)",
            "¡Ol\u{00e9}! \u{201c}quoted\u{201d} \u{2014}dash\u{2014}",
        ];
        for text in texts {
            let once = tokenize(text);
            let rejoined = once.join(" ");
            let twice = tokenize(&rejoined);
            assert_eq!(&*once, &*twice);
        }
    }
}
