//! Text format and exports.
//!
//! A `.kts` document is UTF-8 and line-oriented. `#` starts a comment that
//! runs to end of line; blank lines are ignored. The header is the three
//! lines `kripke`, `bits <k>`, `alphabet <sym>...` in that order, followed by
//! `state <name> <bitstring>[ init]` and `trans <src> <sym> <dst>` lines in
//! any interleaving; a transition may name a state declared further down.
//! Exactly one state carries `init`, and at most one transition exists per
//! (source, symbol) pair.
//!
//! Serialization is canonical: states in id order under generated names
//! `s0, s1, ...`, transitions grouped by state in alphabet order, single
//! spaces, trailing newline. Parsing a canonically serialized document and
//! serializing it again reproduces the document byte for byte.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::model::{KripkeStructure, Label, StateId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    MissingHeader,
    DuplicateState,
    UnknownState,
    UnknownSymbol,
    DuplicateTransition,
    BadBitstring,
}

/// Parse failure with a 1-based line and column pointing at the offending
/// token.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("line {line}, column {col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, col: usize, kind: ParseErrorKind, message: impl Into<String>) -> Self {
        ParseError {
            line,
            col,
            kind,
            message: message.into(),
        }
    }
}

#[derive(Clone, Copy)]
struct Tok<'a> {
    text: &'a str,
    line: usize,
    col: usize,
}

impl<'a> Tok<'a> {
    fn err(&self, kind: ParseErrorKind, message: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.col, kind, message)
    }
}

/// Splits one line into whitespace-separated tokens with 1-based character
/// columns, dropping everything from the first `#` on.
fn tokenize(line: &str, lineno: usize) -> Vec<Tok<'_>> {
    let mut toks = Vec::new();
    let mut start = None;
    let mut start_col = 0;
    for (col, (idx, c)) in line.char_indices().enumerate() {
        if c == '#' {
            if let Some(s) = start {
                toks.push(Tok {
                    text: &line[s..idx],
                    line: lineno,
                    col: start_col + 1,
                });
            }
            return toks;
        }
        if c.is_whitespace() {
            if let Some(s) = start {
                toks.push(Tok {
                    text: &line[s..idx],
                    line: lineno,
                    col: start_col + 1,
                });
                start = None;
            }
        } else if start.is_none() {
            start = Some(idx);
            start_col = col;
        }
    }
    if let Some(s) = start {
        toks.push(Tok {
            text: &line[s..],
            line: lineno,
            col: start_col + 1,
        });
    }
    toks
}

fn expect_end(toks: &[Tok], used: usize) -> Result<(), ParseError> {
    match toks.get(used) {
        Some(extra) => Err(extra.err(
            ParseErrorKind::Syntax,
            format!("unexpected token `{}`", extra.text),
        )),
        None => Ok(()),
    }
}

pub fn parse_kts(input: &str) -> Result<KripkeStructure, ParseError> {
    let mut lines = input
        .lines()
        .enumerate()
        .map(|(i, l)| tokenize(l, i + 1))
        .filter(|toks| !toks.is_empty());
    let last_line = input.lines().count().max(1);

    // Header: `kripke`, `bits <k>`, `alphabet <sym>...`, in this order.
    let head = lines.next().ok_or_else(|| {
        ParseError::new(1, 1, ParseErrorKind::MissingHeader, "missing `kripke` header")
    })?;
    if head[0].text != "kripke" {
        return Err(head[0].err(
            ParseErrorKind::MissingHeader,
            format!("expected `kripke`, found `{}`", head[0].text),
        ));
    }
    expect_end(&head, 1)?;

    let bits_line = lines.next().ok_or_else(|| {
        ParseError::new(
            last_line,
            1,
            ParseErrorKind::MissingHeader,
            "missing `bits` line",
        )
    })?;
    if bits_line[0].text != "bits" {
        return Err(bits_line[0].err(
            ParseErrorKind::MissingHeader,
            format!("expected `bits`, found `{}`", bits_line[0].text),
        ));
    }
    let bits_tok = bits_line
        .get(1)
        .ok_or_else(|| bits_line[0].err(ParseErrorKind::Syntax, "`bits` needs a value"))?;
    let bits: usize = bits_tok
        .text
        .parse()
        .ok()
        .filter(|&b| b >= 1)
        .ok_or_else(|| {
            bits_tok.err(
                ParseErrorKind::Syntax,
                format!("`bits` must be a positive integer, found `{}`", bits_tok.text),
            )
        })?;
    expect_end(&bits_line, 2)?;

    let alpha_line = lines.next().ok_or_else(|| {
        ParseError::new(
            last_line,
            1,
            ParseErrorKind::MissingHeader,
            "missing `alphabet` line",
        )
    })?;
    if alpha_line[0].text != "alphabet" {
        return Err(alpha_line[0].err(
            ParseErrorKind::MissingHeader,
            format!("expected `alphabet`, found `{}`", alpha_line[0].text),
        ));
    }
    if alpha_line.len() < 2 {
        return Err(alpha_line[0].err(
            ParseErrorKind::Syntax,
            "`alphabet` needs at least one symbol",
        ));
    }
    let mut alphabet = Vec::new();
    let mut symbol_ids = HashMap::new();
    for tok in &alpha_line[1..] {
        if symbol_ids.insert(tok.text.to_string(), alphabet.len()).is_some() {
            return Err(tok.err(
                ParseErrorKind::Syntax,
                format!("duplicate alphabet symbol `{}`", tok.text),
            ));
        }
        alphabet.push(tok.text.to_string());
    }

    // Body, first pass: collect state declarations, buffer transitions so
    // they may reference states declared later.
    let mut state_ids: HashMap<&str, StateId> = HashMap::new();
    let mut labels: Vec<Label> = Vec::new();
    let mut initial: Option<(StateId, Tok)> = None;
    let mut trans_lines: Vec<[Tok; 3]> = Vec::new();

    for toks in lines {
        match toks[0].text {
            "state" => {
                if toks.len() < 3 {
                    return Err(toks[0].err(
                        ParseErrorKind::Syntax,
                        "`state` needs a name and a bit label",
                    ));
                }
                let name = toks[1];
                let bits_text = toks[2];
                let id = labels.len();
                if state_ids.insert(name.text, id).is_some() {
                    return Err(name.err(
                        ParseErrorKind::DuplicateState,
                        format!("state `{}` already declared", name.text),
                    ));
                }
                let label = Label::from_bitstring(bits_text.text).ok_or_else(|| {
                    bits_text.err(
                        ParseErrorKind::BadBitstring,
                        format!("`{}` is not a bit string", bits_text.text),
                    )
                })?;
                if label.width() != bits {
                    return Err(bits_text.err(
                        ParseErrorKind::BadBitstring,
                        format!(
                            "label `{}` has width {}, expected {}",
                            bits_text.text,
                            label.width(),
                            bits
                        ),
                    ));
                }
                labels.push(label);
                if let Some(flag) = toks.get(3) {
                    if flag.text != "init" {
                        return Err(flag.err(
                            ParseErrorKind::Syntax,
                            format!("expected `init`, found `{}`", flag.text),
                        ));
                    }
                    if initial.is_some() {
                        return Err(
                            flag.err(ParseErrorKind::Syntax, "second state marked `init`")
                        );
                    }
                    initial = Some((id, *flag));
                    expect_end(&toks, 4)?;
                } else {
                    expect_end(&toks, 3)?;
                }
            }
            "trans" => {
                if toks.len() != 4 {
                    return Err(toks[0].err(
                        ParseErrorKind::Syntax,
                        "`trans` needs a source, a symbol and a target",
                    ));
                }
                trans_lines.push([toks[1], toks[2], toks[3]]);
            }
            other => {
                return Err(toks[0].err(
                    ParseErrorKind::Syntax,
                    format!("unknown directive `{}`", other),
                ));
            }
        }
    }

    if labels.is_empty() {
        return Err(ParseError::new(
            last_line,
            1,
            ParseErrorKind::Syntax,
            "no states declared",
        ));
    }
    let initial = initial
        .ok_or_else(|| {
            ParseError::new(
                last_line,
                1,
                ParseErrorKind::Syntax,
                "no state marked `init`",
            )
        })?
        .0;

    // Second pass: resolve buffered transitions.
    let mut k = KripkeStructure::new(bits, alphabet, initial, labels);
    for [src, sym, dst] in trans_lines {
        let lookup = |tok: &Tok| {
            state_ids.get(tok.text).copied().ok_or_else(|| {
                tok.err(
                    ParseErrorKind::UnknownState,
                    format!("unknown state `{}`", tok.text),
                )
            })
        };
        let s_id = lookup(&src)?;
        let sym_id = *symbol_ids.get(sym.text).ok_or_else(|| {
            sym.err(
                ParseErrorKind::UnknownSymbol,
                format!("unknown symbol `{}`", sym.text),
            )
        })?;
        let d_id = lookup(&dst)?;
        if k.step(s_id, sym_id).is_some() {
            return Err(src.err(
                ParseErrorKind::DuplicateTransition,
                format!("transition for `{}` on `{}` already given", src.text, sym.text),
            ));
        }
        k.set_transition(s_id, sym_id, d_id);
    }
    Ok(k)
}

/// Canonical text form. Missing transition entries are simply omitted, so a
/// partial structure round-trips through `parse_kts` unchanged as well.
pub fn serialize_kts(k: &KripkeStructure) -> String {
    let mut out = String::new();
    out.push_str("kripke\n");
    let _ = writeln!(out, "bits {}", k.bits);
    let _ = writeln!(out, "alphabet {}", k.alphabet.join(" "));
    for q in 0..k.state_count() {
        let init = if q == k.initial { " init" } else { "" };
        let _ = writeln!(out, "state s{} {}{}", q, k.labels[q], init);
    }
    for q in 0..k.state_count() {
        for s in 0..k.alphabet_size() {
            if let Some(t) = k.step(q, s) {
                let _ = writeln!(out, "trans s{} {} s{}", q, k.alphabet[s], t);
            }
        }
    }
    out
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz rendering: one node per state annotated with its bit label, one
/// labeled edge per transition, the initial state drawn with a double
/// border.
pub fn export_dot(k: &KripkeStructure) -> String {
    let mut out = String::new();
    out.push_str("digraph kripke {\n");
    out.push_str("  rankdir=LR;\n");
    for q in 0..k.state_count() {
        let marker = if q == k.initial { ", peripheries=2" } else { "" };
        let _ = writeln!(out, "  s{} [label=\"s{}\\n{}\"{}];", q, q, k.labels[q], marker);
    }
    for q in 0..k.state_count() {
        for s in 0..k.alphabet_size() {
            if let Some(t) = k.step(q, s) {
                let _ = writeln!(
                    out,
                    "  s{} -> s{} [label=\"{}\"];",
                    q,
                    t,
                    dot_escape(&k.alphabet[s])
                );
            }
        }
    }
    out.push_str("}\n");
    out
}
