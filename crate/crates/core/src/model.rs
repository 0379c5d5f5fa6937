//! Deterministic Kripke structures with bit-vector state labels.
//!
//! A structure is a total deterministic transition system over a finite
//! alphabet together with a `bits`-wide boolean label per state. States are
//! dense indices; external names only exist at the I/O boundary. The
//! transition table may contain holes after hand construction or parsing, so
//! totality is checked by [`validate`] rather than enforced by the type.

use std::fmt;

use thiserror::Error;

/// Dense state index.
pub type StateId = usize;

/// Fixed-width bit vector attached to a state.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Label(Vec<bool>);

impl Label {
    pub fn new(bits: Vec<bool>) -> Self {
        Label(bits)
    }

    /// Parses a string of `0`/`1` characters. Returns `None` on any other
    /// character or on an empty string.
    pub fn from_bitstring(s: &str) -> Option<Self> {
        if s.is_empty() {
            return None;
        }
        let mut bits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                _ => return None,
            }
        }
        Some(Label(bits))
    }

    pub fn width(&self) -> usize {
        self.0.len()
    }

    pub fn bit(&self, i: usize) -> bool {
        self.0[i]
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Label({})", self)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
}

/// Deterministic Kripke structure over dense state ids.
///
/// `transitions` is a row-major table: the target of `(q, s)` sits at
/// `q * alphabet.len() + s`, `None` marking a missing entry. Every complete
/// instance satisfies: exactly one initial state in range, every label
/// `bits` wide, every present target in range.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KripkeStructure {
    /// Label width in bits. At least 1.
    pub bits: usize,
    /// Ordered distinct input symbols. At least one.
    pub alphabet: Vec<String>,
    pub initial: StateId,
    /// One label per state; index is the state id.
    pub labels: Vec<Label>,
    /// Row-major `(state, symbol)` target table.
    pub transitions: Vec<Option<StateId>>,
}

impl KripkeStructure {
    /// Creates a structure with `labels.len()` states and an empty
    /// transition table.
    pub fn new(bits: usize, alphabet: Vec<String>, initial: StateId, labels: Vec<Label>) -> Self {
        let slots = labels.len() * alphabet.len();
        KripkeStructure {
            bits,
            alphabet,
            initial,
            labels,
            transitions: vec![None; slots],
        }
    }

    pub fn state_count(&self) -> usize {
        self.labels.len()
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet.len()
    }

    pub fn symbol_index(&self, symbol: &str) -> Option<usize> {
        self.alphabet.iter().position(|s| s == symbol)
    }

    /// Target of `(q, s)` with `s` a symbol index.
    pub fn step(&self, q: StateId, s: usize) -> Option<StateId> {
        self.transitions[q * self.alphabet.len() + s]
    }

    pub fn set_transition(&mut self, q: StateId, s: usize, target: StateId) {
        let m = self.alphabet.len();
        self.transitions[q * m + s] = Some(target);
    }

    pub fn label(&self, q: StateId) -> &Label {
        &self.labels[q]
    }

    /// Runs the word `w` (symbol names) from `q` and returns the state
    /// reached. The structure must be total over the visited states.
    pub fn delta_star(&self, q: StateId, w: &[&str]) -> Result<StateId, ModelError> {
        let mut cur = q;
        for sym in w {
            let s = self
                .symbol_index(sym)
                .ok_or_else(|| ModelError::UnknownSymbol(sym.to_string()))?;
            cur = self
                .step(cur, s)
                .expect("transition table is not total; validate before running words");
        }
        Ok(cur)
    }

    /// Label observed after running `w` from `q`; `lambda_star(q, ε)` is the
    /// label of `q` itself.
    pub fn lambda_star(&self, q: StateId, w: &[&str]) -> Result<&Label, ModelError> {
        Ok(self.label(self.delta_star(q, w)?))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IssueKind {
    /// Missing transition entry for a (state, symbol) pair.
    NonTotal,
    /// Conflicting targets for one (state, symbol) pair. Unrepresentable in
    /// the dense table, so never produced by [`validate`]; the parser rejects
    /// duplicates before a structure exists.
    NonDeterministic,
    /// Label width differs from `bits`.
    BadLabelWidth,
    /// Initial state or transition target out of range.
    BadStateRef,
    /// State not reachable from the initial state.
    Unreachable,
}

#[derive(Clone, Debug)]
pub struct Issue {
    pub kind: IssueKind,
    pub state: Option<StateId>,
    pub symbol: Option<String>,
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.kind)?;
        if let Some(q) = self.state {
            write!(f, " at state {}", q)?;
        }
        if let Some(sym) = &self.symbol {
            write!(f, " on symbol `{}`", sym)?;
        }
        Ok(())
    }
}

/// Reachability requirement applied when computing [`ValidationReport::ok`];
/// the issue list itself is always complete.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strictness {
    AllowUnreachable,
    RequireReachable,
}

#[derive(Clone, Debug)]
pub struct ValidationReport {
    /// True when no issue violates the requested strictness.
    pub ok: bool,
    pub issues: Vec<Issue>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.issues.is_empty() {
            return f.write_str("no issues");
        }
        write!(f, "{} issue(s):", self.issues.len())?;
        for issue in &self.issues {
            write!(f, " [{}]", issue)?;
        }
        Ok(())
    }
}

/// Checks totality, label widths, reference ranges and reachability.
pub fn validate(k: &KripkeStructure, strictness: Strictness) -> ValidationReport {
    let n = k.state_count();
    let m = k.alphabet_size();
    let mut issues = Vec::new();

    if k.initial >= n {
        issues.push(Issue {
            kind: IssueKind::BadStateRef,
            state: Some(k.initial),
            symbol: None,
        });
    }
    for (q, label) in k.labels.iter().enumerate() {
        if label.width() != k.bits {
            issues.push(Issue {
                kind: IssueKind::BadLabelWidth,
                state: Some(q),
                symbol: None,
            });
        }
    }
    for q in 0..n {
        for s in 0..m {
            match k.transitions.get(q * m + s).copied().flatten() {
                None => issues.push(Issue {
                    kind: IssueKind::NonTotal,
                    state: Some(q),
                    symbol: Some(k.alphabet[s].clone()),
                }),
                Some(t) if t >= n => issues.push(Issue {
                    kind: IssueKind::BadStateRef,
                    state: Some(q),
                    symbol: Some(k.alphabet[s].clone()),
                }),
                Some(_) => {}
            }
        }
    }

    // Reachability over the entries that exist; skipped when the initial
    // state is itself broken.
    let mut unreachable_count = 0;
    if k.initial < n {
        let reachable = reachable_set(k);
        for q in 0..n {
            if !reachable[q] {
                unreachable_count += 1;
                issues.push(Issue {
                    kind: IssueKind::Unreachable,
                    state: Some(q),
                    symbol: None,
                });
            }
        }
    }

    let hard = issues.len() - unreachable_count;
    let ok = match strictness {
        Strictness::AllowUnreachable => hard == 0,
        Strictness::RequireReachable => issues.is_empty(),
    };
    ValidationReport { ok, issues }
}

fn reachable_set(k: &KripkeStructure) -> Vec<bool> {
    let n = k.state_count();
    let m = k.alphabet_size();
    let mut seen = vec![false; n];
    let mut queue = std::collections::VecDeque::new();
    seen[k.initial] = true;
    queue.push_back(k.initial);
    while let Some(q) = queue.pop_front() {
        for s in 0..m {
            if let Some(t) = k.transitions.get(q * m + s).copied().flatten() {
                if t < n && !seen[t] {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
    }
    seen
}

/// Drops states unreachable from the initial state, keeping the relative
/// order of the survivors. Returns the trimmed structure and the number of
/// states removed; a fully reachable input comes back identical.
pub fn trim_unreachable(k: &KripkeStructure) -> (KripkeStructure, usize) {
    let n = k.state_count();
    let m = k.alphabet_size();
    let reachable = reachable_set(k);
    let kept = reachable.iter().filter(|&&r| r).count();
    if kept == n {
        return (k.clone(), 0);
    }

    // Old id -> new id for survivors, in original order.
    let mut new_id = vec![usize::MAX; n];
    let mut next = 0;
    for q in 0..n {
        if reachable[q] {
            new_id[q] = next;
            next += 1;
        }
    }

    let mut out = KripkeStructure::new(
        k.bits,
        k.alphabet.clone(),
        new_id[k.initial],
        (0..n)
            .filter(|&q| reachable[q])
            .map(|q| k.labels[q].clone())
            .collect(),
    );
    for q in 0..n {
        if !reachable[q] {
            continue;
        }
        for s in 0..m {
            if let Some(t) = k.transitions[q * m + s] {
                if t < n && reachable[t] {
                    out.set_transition(new_id[q], s, new_id[t]);
                }
            }
        }
    }
    (out, n - kept)
}
