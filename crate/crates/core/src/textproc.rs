//! Sentence splitting, tokenization, coarse part-of-speech tagging and
//! lemmatization.
//!
//! Everything here is deterministic and rule based. The tagger and the
//! lemmatizer sit behind [`PosTagger`] and [`Lemmatizer`] so a statistical
//! component can be swapped in through [`TextProcessor::with_components`].

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::lexicon::Lexicons;

/// Coarse part-of-speech classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Pos {
    Noun,
    Verb,
    Modal,
    Adj,
    Adv,
    Pron,
    Det,
    Prep,
    Conj,
    Num,
    Punct,
    Wh,
    To,
    Other,
}

impl Pos {
    pub const ALL: [Pos; 14] = [
        Pos::Noun,
        Pos::Verb,
        Pos::Modal,
        Pos::Adj,
        Pos::Adv,
        Pos::Pron,
        Pos::Det,
        Pos::Prep,
        Pos::Conj,
        Pos::Num,
        Pos::Punct,
        Pos::Wh,
        Pos::To,
        Pos::Other,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Pos::Noun => "NOUN",
            Pos::Verb => "VERB",
            Pos::Modal => "MODAL",
            Pos::Adj => "ADJ",
            Pos::Adv => "ADV",
            Pos::Pron => "PRON",
            Pos::Det => "DET",
            Pos::Prep => "PREP",
            Pos::Conj => "CONJ",
            Pos::Num => "NUM",
            Pos::Punct => "PUNCT",
            Pos::Wh => "WH",
            Pos::To => "TO",
            Pos::Other => "OTHER",
        }
    }

    /// Nouns, verbs, adjectives and adverbs. Mixed ngrams replace these with
    /// their tag.
    pub fn is_open_class(self) -> bool {
        matches!(self, Pos::Noun | Pos::Verb | Pos::Adj | Pos::Adv)
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Pos {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Pos::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| format!("unknown part of speech {s:?}"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub surface: String,
    pub lemma: String,
    pub pos: Pos,
    pub index: usize,
}

impl Token {
    fn raw(surface: String, index: usize) -> Self {
        Self {
            lemma: surface.to_lowercase(),
            surface,
            pos: Pos::Other,
            index,
        }
    }

    pub fn lower(&self) -> String {
        self.surface.to_lowercase()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sentence {
    pub tokens: Vec<Token>,
    pub is_question: bool,
    pub is_imperative: bool,
}

impl Sentence {
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn lowercase_words(&self) -> Vec<String> {
        self.tokens.iter().map(Token::lower).collect()
    }
}

/// Assigns a coarse tag to every token.
pub trait PosTagger: Send + Sync {
    fn tag(&self, tokens: &mut [Token]);
}

/// Maps a tagged token to its lowercase base form.
pub trait Lemmatizer: Send + Sync {
    fn lemmatize(&self, token: &Token) -> String;
}

const CLITICS: [&str; 7] = ["n't", "'s", "'re", "'ve", "'ll", "'d", "'m"];
const OPENING: [char; 6] = ['(', '[', '{', '"', '`', '<'];
const CLOSING_PUNCT: [&str; 12] = [".", ",", ";", ":", "!", "?", ")", "]", "}", "%", "'", "\""];

fn is_punct_char(c: char) -> bool {
    c.is_ascii_punctuation() && c != '\'' || matches!(c, '\'' | '“' | '”' | '…')
}

fn is_punct_token(s: &str) -> bool {
    !s.is_empty() && s.chars().all(is_punct_char)
}

fn is_number(s: &str) -> bool {
    s.chars().any(|c| c.is_ascii_digit())
        && s.chars()
            .all(|c| c.is_ascii_digit() || matches!(c, ',' | '.' | ':' | '/' | '-' | '%' | '$'))
}

fn normalize_quotes(s: &str) -> String {
    s.replace(['’', '‘'], "'")
}

/// Joins tokens back into text: no space before closing punctuation or
/// clitics, none after opening brackets.
pub fn detokenize<S: AsRef<str>>(tokens: &[S]) -> String {
    let mut out = String::new();
    let mut glue_next = true;
    for tok in tokens {
        let t = tok.as_ref();
        let attach = CLOSING_PUNCT.contains(&t) || CLITICS.contains(&t.to_lowercase().as_str());
        if !glue_next && !attach {
            out.push(' ');
        }
        out.push_str(t);
        glue_next = matches!(t, "(" | "[" | "{");
    }
    out
}

/// Default tagger: closed-class lexicon, then open-class lexicons with left
/// context, then suffix heuristics, falling back to NOUN.
pub struct RuleTagger {
    lex: Arc<Lexicons>,
}

/// Default lemmatizer: irregular tables, then suffix stripping checked
/// against the verb lexicon.
pub struct RuleLemmatizer {
    lex: Arc<Lexicons>,
}

const POSSESSIVES: [&str; 7] = ["my", "your", "our", "his", "her", "their", "its"];
const SUBJECT_PRONOUNS: [&str; 7] = ["i", "we", "you", "they", "he", "she", "it"];
const BE_PRONOUN_HOSTS: [&str; 10] = [
    "it", "he", "she", "that", "there", "what", "who", "here", "this", "where",
];

fn strip_suffix<'a>(w: &'a str, suffix: &str) -> Option<&'a str> {
    w.strip_suffix(suffix).filter(|s| s.len() >= 2)
}

fn is_vowel(c: char) -> bool {
    matches!(c, 'a' | 'e' | 'i' | 'o' | 'u')
}

fn undouble(stem: &str) -> Option<String> {
    let b = stem.as_bytes();
    let n = b.len();
    if n >= 3 && b[n - 1] == b[n - 2] && !is_vowel(b[n - 1] as char) {
        Some(stem[..n - 1].to_string())
    } else {
        None
    }
}

impl RuleLemmatizer {
    pub fn new(lex: Arc<Lexicons>) -> Self {
        Self { lex }
    }

    /// Candidate base forms for a possibly inflected verb, most specific
    /// first.
    fn verb_candidates(&self, w: &str) -> Vec<String> {
        let mut out = vec![w.to_string()];
        if let Some(base) = self.lex.irregular_lemmas.get(w) {
            out.insert(0, base.clone());
            return out;
        }
        if let Some(s) = strip_suffix(w, "ies") {
            out.push(format!("{s}y"));
        }
        if let Some(s) = strip_suffix(w, "es") {
            out.push(s.to_string());
        }
        if let Some(s) = strip_suffix(w, "s").filter(|_| !w.ends_with("ss")) {
            out.push(s.to_string());
        }
        if let Some(s) = strip_suffix(w, "ied") {
            out.push(format!("{s}y"));
        }
        for suffix in ["ed", "ing"] {
            if let Some(stem) = strip_suffix(w, suffix) {
                if let Some(u) = undouble(stem) {
                    out.push(u);
                }
                out.push(format!("{stem}e"));
                out.push(stem.to_string());
            }
        }
        out
    }

    /// Base form if `w` is a form of a verb in the lexicon.
    pub fn known_verb_base(&self, w: &str) -> Option<String> {
        self.verb_candidates(w)
            .into_iter()
            .find(|c| self.lex.verbs.contains(c))
    }

    fn heuristic_verb_base(&self, w: &str) -> String {
        if let Some(s) = strip_suffix(w, "ies") {
            return format!("{s}y");
        }
        if let Some(s) = strip_suffix(w, "ied") {
            return format!("{s}y");
        }
        for suffix in ["ed", "ing"] {
            if let Some(stem) = strip_suffix(w, suffix) {
                if let Some(u) = undouble(stem) {
                    if !matches!(stem.chars().last(), Some('l' | 's' | 'z' | 'f')) {
                        return u;
                    }
                    return stem.to_string();
                }
                const E_RESTORE: [&str; 10] = ["at", "iz", "ur", "uc", "ud", "ag", "os", "us", "iv", "ir"];
                if stem.ends_with('v') || E_RESTORE.iter().any(|e| stem.ends_with(e)) {
                    return format!("{stem}e");
                }
                return stem.to_string();
            }
        }
        if ["ches", "shes", "sses", "xes", "zes"].iter().any(|s| w.ends_with(s)) {
            return w[..w.len() - 2].to_string();
        }
        if let Some(s) = strip_suffix(w, "s").filter(|_| !w.ends_with("ss")) {
            return s.to_string();
        }
        w.to_string()
    }

    fn noun_base(&self, w: &str) -> String {
        if let Some(s) = self.lex.irregular_plurals.get(w) {
            return s.clone();
        }
        if ["ss", "us", "is", "ous", "ics"].iter().any(|s| w.ends_with(s)) || w.len() <= 3 {
            return w.to_string();
        }
        if let Some(s) = strip_suffix(w, "ies") {
            return format!("{s}y");
        }
        if ["ches", "shes", "sses", "xes", "zes"].iter().any(|s| w.ends_with(s)) {
            return w[..w.len() - 2].to_string();
        }
        if let Some(s) = w.strip_suffix('s') {
            return s.to_string();
        }
        w.to_string()
    }
}

impl Lemmatizer for RuleLemmatizer {
    fn lemmatize(&self, token: &Token) -> String {
        let w = normalize_quotes(&token.surface).to_lowercase();
        match token.pos {
            Pos::Punct | Pos::Num => w,
            Pos::Noun => self.noun_base(&w),
            Pos::Verb => {
                if w == "'s" {
                    return "be".into();
                }
                self.known_verb_base(&w)
                    .unwrap_or_else(|| self.heuristic_verb_base(&w))
            }
            _ if w == "'s" => w,
            _ => self.lex.irregular_lemmas.get(&w).cloned().unwrap_or(w),
        }
    }
}

impl RuleTagger {
    pub fn new(lex: Arc<Lexicons>) -> Self {
        Self { lex }
    }

    fn open_class(&self, tokens: &[Token], i: usize, lemmatizer: &RuleLemmatizer) -> Pos {
        let surface = &tokens[i].surface;
        let w = surface.to_lowercase();
        let prev = previous_content(tokens, i);
        let prev_word = prev.map(|j| tokens[j].lower());
        let after_nominal_modifier = prev.is_some_and(|j| {
            let p = &tokens[j];
            matches!(p.pos, Pos::Det | Pos::Adj | Pos::Num)
                || (p.pos == Pos::Prep && p.lower() != "to")
                || POSSESSIVES.contains(&p.lower().as_str())
                || (p.surface == "'s" && p.pos == Pos::Other)
        });

        let verb_base = lemmatizer.known_verb_base(&w);
        if verb_base.as_deref().is_some_and(is_aux_lemma) && w != "do" && w != "have" {
            return Pos::Verb;
        }
        if verb_base.is_some() {
            if after_nominal_modifier {
                let prep_gerund =
                    w.ends_with("ing") && prev.is_some_and(|j| tokens[j].pos == Pos::Prep);
                if prep_gerund {
                    return Pos::Verb;
                }
                if w.ends_with("ed") && prev.is_some_and(|j| tokens[j].pos == Pos::Det) {
                    return Pos::Adj;
                }
                if self.lex.adjectives.contains(&w) {
                    return Pos::Adj;
                }
                return Pos::Noun;
            }
            if self.lex.adjectives.contains(&w) {
                let after_copula = prev.is_some_and(|j| {
                    tokens[j].pos == Pos::Verb
                        && lemmatizer.known_verb_base(&tokens[j].lower()).as_deref() == Some("be")
                });
                if after_copula {
                    return Pos::Adj;
                }
            }
            return Pos::Verb;
        }
        if self.lex.adjectives.contains(&w) {
            return Pos::Adj;
        }
        if w.len() > 4 && w.ends_with("ly") {
            return Pos::Adv;
        }
        if w.ends_with("ing") || w.ends_with("ed") {
            let after_aux = prev_word.as_deref().is_some_and(|p| {
                matches!(
                    lemmatizer.known_verb_base(p).as_deref(),
                    Some("be" | "have" | "do")
                ) || self.lex.closed_class.get(p) == Some(&Pos::Modal)
                    || SUBJECT_PRONOUNS.contains(&p)
            });
            if after_aux {
                return Pos::Verb;
            }
        }
        const NOUN_SUFFIXES: [&str; 8] = ["tion", "sion", "ment", "ness", "ity", "ance", "ence", "ship"];
        const ADJ_SUFFIXES: [&str; 7] = ["able", "ible", "ful", "ous", "ive", "less", "ical"];
        if NOUN_SUFFIXES.iter().any(|s| w.ends_with(s)) {
            return Pos::Noun;
        }
        if w.len() >= 7 && ADJ_SUFFIXES.iter().any(|s| w.ends_with(s)) {
            return Pos::Adj;
        }
        Pos::Noun
    }
}

/// Nearest earlier token that is not an adverb.
fn previous_content(tokens: &[Token], i: usize) -> Option<usize> {
    (0..i).rev().find(|&j| tokens[j].pos != Pos::Adv)
}

impl PosTagger for RuleTagger {
    fn tag(&self, tokens: &mut [Token]) {
        let lemmatizer = RuleLemmatizer::new(self.lex.clone());
        for i in 0..tokens.len() {
            let w = normalize_quotes(&tokens[i].surface).to_lowercase();
            let pos = if is_punct_token(&w) && !CLITICS.contains(&w.as_str()) {
                Pos::Punct
            } else if is_number(&w) {
                Pos::Num
            } else if w == "'s" {
                let host = i
                    .checked_sub(1)
                    .map(|j| tokens[j].lower())
                    .unwrap_or_default();
                if BE_PRONOUN_HOSTS.contains(&host.as_str()) {
                    Pos::Verb
                } else {
                    Pos::Other
                }
            } else if let Some(&closed) = self.lex.closed_class.get(&w) {
                let verb_reading = self.lex.verbs.contains(&w)
                    && (0..i).rev().find(|&j| tokens[j].pos != Pos::Adv).is_some_and(|j| {
                        matches!(tokens[j].pos, Pos::Modal | Pos::To)
                            || SUBJECT_PRONOUNS.contains(&tokens[j].lower().as_str())
                    });
                if verb_reading {
                    Pos::Verb
                } else {
                    closed
                }
            } else {
                self.open_class(tokens, i, &lemmatizer)
            };
            tokens[i].pos = pos;
        }
    }
}

/// Sentence splitter, tokenizer, tagger and lemmatizer bundled together.
pub struct TextProcessor {
    lex: Arc<Lexicons>,
    tagger: Box<dyn PosTagger>,
    lemmatizer: Box<dyn Lemmatizer>,
}

impl TextProcessor {
    pub fn new(lex: Arc<Lexicons>) -> Self {
        Self {
            tagger: Box::new(RuleTagger::new(lex.clone())),
            lemmatizer: Box::new(RuleLemmatizer::new(lex.clone())),
            lex,
        }
    }

    pub fn with_components(
        lex: Arc<Lexicons>,
        tagger: Box<dyn PosTagger>,
        lemmatizer: Box<dyn Lemmatizer>,
    ) -> Self {
        Self {
            lex,
            tagger,
            lemmatizer,
        }
    }

    pub fn lexicons(&self) -> &Lexicons {
        &self.lex
    }

    fn is_abbreviation(&self, word: &str) -> bool {
        let w = word.trim_start_matches(OPENING).to_lowercase();
        let w = w.trim_end_matches('.');
        if w.is_empty() {
            return false;
        }
        let single_initial = w.chars().count() == 1 && word.chars().any(char::is_uppercase);
        single_initial || self.lex.abbreviations.contains(w)
    }

    /// Splits on `.`, `!` and `?` followed by whitespace, and on blank lines.
    /// A period ending a listed abbreviation does not split.
    pub fn split_sentences(&self, text: &str) -> Vec<String> {
        let mut out = Vec::new();
        for paragraph in split_paragraphs(text) {
            let chars: Vec<(usize, char)> = paragraph.char_indices().collect();
            let mut start = 0;
            let mut k = 0;
            while k < chars.len() {
                let (_, c) = chars[k];
                if matches!(c, '.' | '!' | '?') {
                    let mut end = k;
                    while end + 1 < chars.len()
                        && matches!(chars[end + 1].1, '.' | '!' | '?' | '"' | '\'' | ')' | '”')
                    {
                        end += 1;
                    }
                    let boundary = end + 1 == chars.len() || chars[end + 1].1.is_whitespace();
                    let byte_end = chars
                        .get(end + 1)
                        .map_or(paragraph.len(), |&(b, _)| b);
                    if boundary {
                        let candidate = &paragraph[start..byte_end];
                        let last_word = candidate.split_whitespace().last().unwrap_or("");
                        let protected = c == '.' && end == k && self.is_abbreviation(last_word);
                        if !protected {
                            push_trimmed(&mut out, candidate);
                            start = byte_end;
                        }
                    }
                    k = end + 1;
                } else {
                    k += 1;
                }
            }
            push_trimmed(&mut out, &paragraph[start..]);
        }
        out
    }

    fn split_word(&self, chunk: &str, out: &mut Vec<String>) {
        let chunk = normalize_quotes(chunk);
        let mut rest: &str = &chunk;
        let mut leading = Vec::new();
        while let Some(c) = rest.chars().next() {
            let is_clitic = CLITICS.contains(&rest.to_lowercase().as_str());
            if is_clitic || rest.chars().count() <= 1 || !is_punct_char(c) {
                break;
            }
            leading.push(c.to_string());
            rest = &rest[c.len_utf8()..];
        }
        let mut trailing = Vec::new();
        while rest.chars().count() > 1 {
            let lower = rest.to_lowercase();
            if let Some(cl) = CLITICS
                .iter()
                .find(|cl| lower.ends_with(**cl) && lower.len() > cl.len())
            {
                let split = rest.len() - cl.len();
                trailing.push(rest[split..].to_string());
                rest = &rest[..split];
                continue;
            }
            let c = rest.chars().last().unwrap_or(' ');
            let protected = (c == '.'
                && !rest[..rest.len() - 1].ends_with('.')
                && self.is_abbreviation(rest))
                || (c == '%' && is_number(rest));
            if !is_punct_char(c) || protected {
                break;
            }
            trailing.push(c.to_string());
            rest = &rest[..rest.len() - c.len_utf8()];
        }
        out.extend(leading);
        if !rest.is_empty() {
            out.push(rest.to_string());
        }
        out.extend(trailing.into_iter().rev());
    }

    /// Splits at whitespace and punctuation boundaries, separates clitics
    /// (`don't` becomes `do` + `n't`), then tags and lemmatizes.
    pub fn tokenize(&self, sentence_text: &str) -> Sentence {
        let mut words = Vec::new();
        for chunk in sentence_text.split_whitespace() {
            self.split_word(chunk, &mut words);
        }
        let tokens = words
            .into_iter()
            .enumerate()
            .map(|(i, w)| Token::raw(w, i))
            .collect();
        self.pos_tag(Sentence {
            tokens,
            is_question: false,
            is_imperative: false,
        })
    }

    /// Fills tags and lemmas with the configured components and recomputes
    /// the question and imperative flags.
    pub fn pos_tag(&self, mut sentence: Sentence) -> Sentence {
        for (i, t) in sentence.tokens.iter_mut().enumerate() {
            t.index = i;
        }
        self.tagger.tag(&mut sentence.tokens);
        for t in sentence.tokens.iter_mut() {
            t.lemma = self.lemmatizer.lemmatize(t);
        }
        sentence.is_question = is_question(&sentence.tokens);
        sentence.is_imperative = !sentence.is_question && is_imperative(&sentence.tokens);
        sentence
    }

    pub fn lemmatize(&self, token: &Token) -> String {
        self.lemmatizer.lemmatize(token)
    }

    /// Splits and tokenizes a whole message body.
    pub fn analyze(&self, text: &str) -> Vec<Sentence> {
        self.split_sentences(text)
            .iter()
            .map(|s| self.tokenize(s))
            .filter(|s| !s.is_empty())
            .collect()
    }
}

fn split_paragraphs(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut start = 0;
    let mut line_start = 0;
    let mut prev_blank = false;
    for (i, c) in text.char_indices().chain(std::iter::once((text.len(), '\n'))) {
        if c == '\n' {
            let blank = text[line_start..i].trim().is_empty();
            if blank && !prev_blank {
                out.push(&text[start..line_start]);
                start = i.min(text.len());
            }
            prev_blank = blank;
            line_start = (i + 1).min(text.len());
        }
    }
    out.push(&text[start..]);
    out.into_iter().filter(|p| !p.trim().is_empty()).collect()
}

fn push_trimmed(out: &mut Vec<String>, s: &str) {
    let t = s.trim();
    if !t.is_empty() {
        out.push(t.to_string());
    }
}

fn is_aux_lemma(lemma: &str) -> bool {
    matches!(lemma, "be" | "have" | "do")
}

fn is_question(tokens: &[Token]) -> bool {
    let last = tokens
        .iter()
        .rev()
        .find(|t| !matches!(t.surface.as_str(), "\"" | "'" | ")" | "”"));
    if last.is_some_and(|t| t.surface == "?") {
        return true;
    }
    if last.is_some_and(|t| matches!(t.surface.as_str(), "." | "!")) {
        return false;
    }
    let content: Vec<&Token> = tokens.iter().filter(|t| t.pos != Pos::Punct).collect();
    match content.as_slice() {
        [first, second, ..] => {
            let inverted = first.pos == Pos::Modal
                || first.pos == Pos::Wh
                || (first.pos == Pos::Verb && is_aux_lemma(&first.lemma));
            inverted && matches!(second.pos, Pos::Pron | Pos::Noun | Pos::Det)
        }
        _ => false,
    }
}

fn is_imperative(tokens: &[Token]) -> bool {
    let first = tokens
        .iter()
        .find(|t| t.pos != Pos::Punct && !(t.pos == Pos::Adv && matches!(t.lower().as_str(), "please" | "kindly" | "just")));
    first.is_some_and(|t| t.pos == Pos::Verb && t.lower() == t.lemma)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn processor() -> TextProcessor {
        TextProcessor::new(Arc::new(Lexicons::bundled()))
    }

    fn surfaces(s: &Sentence) -> Vec<&str> {
        s.tokens.iter().map(|t| t.surface.as_str()).collect()
    }

    #[test]
    fn splits_on_terminators() {
        let tp = processor();
        assert_eq!(
            tp.split_sentences("I know. Will John come?"),
            vec!["I know.", "Will John come?"]
        );
        assert!(tp.split_sentences("").is_empty());
        assert!(tp.split_sentences("   \n\n ").is_empty());
    }

    #[test]
    fn abbreviation_does_not_split() {
        let tp = processor();
        assert_eq!(tp.split_sentences("Mr. Lay approved."), vec!["Mr. Lay approved."]);
        assert_eq!(
            tp.split_sentences("See e.g. the memo. It is short."),
            vec!["See e.g. the memo.", "It is short."]
        );
    }

    #[test]
    fn blank_lines_split() {
        let tp = processor();
        assert_eq!(
            tp.split_sentences("Hi Bob,\n\nthe file is attached\n\nThanks"),
            vec!["Hi Bob,", "the file is attached", "Thanks"]
        );
    }

    #[test]
    fn every_listed_abbreviation_is_protected() {
        let tp = processor();
        for abbr in tp.lexicons().abbreviations.iter() {
            let text = format!("We met {abbr}. Smith today.");
            assert_eq!(tp.split_sentences(&text).len(), 1, "{abbr}");
        }
    }

    #[test]
    fn tokenizes_example_sentence() {
        let tp = processor();
        let s = tp.tokenize("John will submit the report.");
        assert_eq!(surfaces(&s), ["John", "will", "submit", "the", "report", "."]);
        assert_eq!(s.tokens.last().unwrap().pos, Pos::Punct);
        assert!(!s.is_question && !s.is_imperative);
    }

    #[test]
    fn splits_contractions() {
        let tp = processor();
        let s = tp.tokenize("I don't think it's done, and we can't wait.");
        assert_eq!(
            surfaces(&s),
            ["I", "do", "n't", "think", "it", "'s", "done", ",", "and", "we", "ca", "n't", "wait", "."]
        );
        assert_eq!(s.tokens[2].lemma, "not");
        assert_eq!(s.tokens[5].lemma, "be");
        assert_eq!(s.tokens[10].lemma, "can");
    }

    #[test]
    fn question_and_imperative_flags() {
        let tp = processor();
        assert!(tp.tokenize("Will John be capable?").is_question);
        let imp = tp.tokenize("Submit the report.");
        assert!(imp.is_imperative && !imp.is_question);
        assert!(tp.tokenize("Please send the file.").is_imperative);
        assert!(!tp.tokenize("John sent the file.").is_imperative);
        assert!(tp.tokenize("Can you send the file").is_question);
        assert!(!tp.tokenize("Can you send the file.").is_question);
    }

    #[test]
    fn closed_class_and_suffix_tags() {
        let tp = processor();
        let s = tp.tokenize("They may leave quickly.");
        assert_eq!(s.tokens[1].pos, Pos::Modal);
        assert_eq!(s.tokens[3].pos, Pos::Adv);
        let s = tp.tokenize("The reorganization was fruitful.");
        assert_eq!(s.tokens[1].pos, Pos::Noun);
        assert_eq!(s.tokens[3].pos, Pos::Adj);
    }

    #[test]
    fn contextual_verb_noun_choice() {
        let tp = processor();
        let s = tp.tokenize("I need the report because they report weekly.");
        let tags: Vec<Pos> = s.tokens.iter().map(|t| t.pos).collect();
        assert_eq!(tags[1], Pos::Verb);
        assert_eq!(tags[3], Pos::Noun);
        assert_eq!(tags[6], Pos::Verb);
        let s = tp.tokenize("I would like the slides.");
        assert_eq!(s.tokens[2].pos, Pos::Verb);
    }

    #[test]
    fn lemmas_are_lowercase() {
        let tp = processor();
        let s = tp.tokenize("Sara Says The Reports Were SUBMITTED.");
        assert!(s.tokens.iter().all(|t| t.lemma == t.lemma.to_lowercase()));
        assert_eq!(s.tokens[1].lemma, "say");
    }

    #[test]
    fn indices_are_contiguous() {
        let tp = processor();
        let s = tp.tokenize("(Maybe) we'll see, won't we?");
        for (i, t) in s.tokens.iter().enumerate() {
            assert_eq!(t.index, i);
        }
    }

    #[test]
    fn detokenize_reattaches_punctuation() {
        assert_eq!(
            detokenize(&["I", "do", "n't", "know", ",", "(", "really", ")", "."]),
            "I don't know, (really)."
        );
    }
}
