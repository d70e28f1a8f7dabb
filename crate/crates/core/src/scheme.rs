//! Variable schemes: compact byte-composed descriptions of reliability
//! sequences.
//!
//! A scheme lists reliability bytes (rows of eight variable slots) for each
//! half of the vector, plus per-length init/update rules for every variable.
//! Composing a supported length `N` takes the first `N/16` low bytes and the
//! last `N/16` high bytes (half a byte each for `N = 8`) and substitutes the
//! end sentinels `ENDL`/`ENDH` at the seam between the halves. Bold markers
//! (`*` in documents) flag the slots where that substitution may happen.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};
use crate::reliability::{ReliabilityVector, RoundingMode};

/// Which half of the reliability vector a variable lives in. Low-half values
/// count down from the top of the range, high-half values grow up from zero.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Half {
    Low,
    High,
}

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Half::Low => write!(f, "low"),
            Half::High => write!(f, "high"),
        }
    }
}

/// Name of the low-half end sentinel.
pub const ENDL: &str = "ENDL";
/// Name of the high-half end sentinel.
pub const ENDH: &str = "ENDH";

/// Hard cap on distinct variables per half; codes must fit in five bits.
pub const MAX_VARIABLES_PER_HALF: usize = 32;

/// Largest update magnitude expressible in Q4.1, counted in half-units.
pub const MAX_UPDATE_HALF_UNITS: u8 = 31;

/// A sequence variable. `code` is the five-bit identifier the hardware
/// structure memory stores; it doubles as the index into the per-half name
/// table of the owning [`VariableScheme`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VariableId {
    pub half: Half,
    pub code: u8,
}

/// Init/update pair for one (variable, length) combination.
///
/// `update_half_units` is an unsigned magnitude in half-units, so `3` means
/// 1.5 per occurrence. The direction is implied by the half: low-half
/// variables decrease, high-half variables increase. Zero means the value
/// never changes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Rule {
    pub init: i64,
    pub update_half_units: u8,
}

impl Rule {
    /// Signed update per occurrence, e.g. `-1.5` for a low-half variable
    /// with magnitude 3.
    pub fn signed_update(&self, half: Half) -> f64 {
        let mag = f64::from(self.update_half_units) / 2.0;
        match half {
            Half::Low => -mag,
            Half::High => mag,
        }
    }
}

/// One row of the composition table: eight variable slots plus bold markers.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReliabilityByte {
    pub name: String,
    pub entries: [VariableId; 8],
    pub bold: [bool; 8],
}

/// A full variable scheme: byte tables for both halves, the supported code
/// lengths and the rule table. Construct through [`SchemeBuilder`], a scheme
/// document ([`VariableScheme::from_document`]) or [`VariableScheme::builtin24`].
#[derive(Clone, PartialEq, Debug)]
pub struct VariableScheme {
    low_names: Vec<String>,
    high_names: Vec<String>,
    /// Low bytes in composition order: the first byte covers `p[0..8]`.
    low_bytes: Vec<ReliabilityByte>,
    /// High bytes in position order: the first byte covers the lowest high
    /// indices, the last byte ends at `p[N-1]`.
    high_bytes: Vec<ReliabilityByte>,
    lengths: Vec<usize>,
    rules: BTreeMap<(VariableId, usize), Rule>,
}

impl VariableScheme {
    pub fn supported_lengths(&self) -> &[usize] {
        &self.lengths
    }

    pub fn low_bytes(&self) -> &[ReliabilityByte] {
        &self.low_bytes
    }

    pub fn high_bytes(&self) -> &[ReliabilityByte] {
        &self.high_bytes
    }

    pub fn variable_count(&self, half: Half) -> usize {
        match half {
            Half::Low => self.low_names.len(),
            Half::High => self.high_names.len(),
        }
    }

    pub fn variable_name(&self, id: VariableId) -> &str {
        match id.half {
            Half::Low => &self.low_names[id.code as usize],
            Half::High => &self.high_names[id.code as usize],
        }
    }

    pub fn variable_by_name(&self, half: Half, name: &str) -> Option<VariableId> {
        let names = match half {
            Half::Low => &self.low_names,
            Half::High => &self.high_names,
        };
        names.iter().position(|n| n == name).map(|code| VariableId {
            half,
            code: code as u8,
        })
    }

    pub fn rule(&self, id: VariableId, n: usize) -> Option<Rule> {
        self.rules.get(&(id, n)).copied()
    }

    pub fn rules(&self) -> impl Iterator<Item = (VariableId, usize, Rule)> + '_ {
        self.rules.iter().map(|(&(id, n), &r)| (id, n, r))
    }

    pub fn rule_count(&self, half: Half) -> usize {
        self.rules.keys().filter(|(id, _)| id.half == half).count()
    }

    fn sentinel(&self, half: Half) -> VariableId {
        let name = match half {
            Half::Low => ENDL,
            Half::High => ENDH,
        };
        self.variable_by_name(half, name)
            .expect("validated at build time")
    }

    /// Composes the variable sequence for a supported length. The result has
    /// `n` entries: the low half first, then the high half in position order,
    /// with the end sentinels substituted at indices `n/2 - 1` and `n/2`.
    pub fn compose(&self, n: usize) -> Result<Vec<VariableId>> {
        if !self.lengths.contains(&n) {
            return Err(Error::UnsupportedLength { n });
        }
        let mut seq = Vec::with_capacity(n);
        seq.extend(self.compose_half(Half::Low, n)?);
        seq.extend(self.compose_half(Half::High, n)?);
        Ok(seq)
    }

    /// One half of [`VariableScheme::compose`], `n/2` entries long.
    fn compose_half(&self, half: Half, n: usize) -> Result<Vec<VariableId>> {
        let (bytes, flat_len) = match half {
            Half::Low => (&self.low_bytes, self.low_bytes.len() * 8),
            Half::High => (&self.high_bytes, self.high_bytes.len() * 8),
        };
        let take = n / 2;
        let flat = bytes.iter().flat_map(|b| b.entries.iter().copied());
        let mut seq: Vec<VariableId> = match half {
            Half::Low => flat.take(take).collect(),
            Half::High => flat.skip(flat_len - take).collect(),
        };
        // The slot meeting the other half carries the end sentinel: either
        // it is already there, or a bold marker allows the substitution.
        let (slot, flat_idx, global_idx) = match half {
            Half::Low => (take - 1, take - 1, n / 2 - 1),
            Half::High => (0, flat_len - take, n / 2),
        };
        let sentinel = self.sentinel(half);
        if seq[slot] != sentinel {
            let byte = &bytes[flat_idx / 8];
            if !byte.bold[flat_idx % 8] {
                return Err(Error::MissingBoldMarker {
                    half,
                    n,
                    index: global_idx,
                });
            }
            seq[slot] = sentinel;
        }
        Ok(seq)
    }

    /// Runs the composed sequence for `n` and returns the emitted
    /// reliability vector.
    ///
    /// Every variable starts at its init value for `n`. The low pass walks
    /// `i = 0..n/2`, the high pass walks `i = n-1` down to `n/2`; each step
    /// emits the variable's current value (rounded down) and then applies the
    /// update. [`RoundingMode::KeepFraction`] lets half-unit fractions
    /// accumulate across updates; [`RoundingMode::FloorEachUpdate`] drops the
    /// fraction after every update, which is what the shift-based hardware
    /// datapath does.
    pub fn reliability(&self, n: usize, mode: RoundingMode) -> Result<ReliabilityVector> {
        let seq = self.compose(n)?;
        // Current values in half-units, indexed by (half, code).
        let mut low_state = vec![0i64; self.low_names.len()];
        let mut high_state = vec![0i64; self.high_names.len()];
        let mut low_update = vec![0i64; self.low_names.len()];
        let mut high_update = vec![0i64; self.high_names.len()];
        for (&(id, len), rule) in &self.rules {
            if len != n {
                continue;
            }
            let (state, update) = match id.half {
                Half::Low => (&mut low_state, &mut low_update),
                Half::High => (&mut high_state, &mut high_update),
            };
            state[id.code as usize] = rule.init * 2;
            update[id.code as usize] = i64::from(rule.update_half_units);
        }

        let mut emit = |id: VariableId| -> i64 {
            let (state, update) = match id.half {
                Half::Low => (&mut low_state, &low_update),
                Half::High => (&mut high_state, &high_update),
            };
            let cur = &mut state[id.code as usize];
            let emitted = *cur >> 1;
            match id.half {
                Half::Low => *cur -= update[id.code as usize],
                Half::High => *cur += update[id.code as usize],
            }
            if mode == RoundingMode::FloorEachUpdate {
                *cur = (*cur >> 1) << 1;
            }
            emitted
        };

        let mut p = vec![0i64; n];
        for i in 0..n / 2 {
            p[i] = emit(seq[i]);
        }
        for i in (n / 2..n).rev() {
            p[i] = emit(seq[i]);
        }
        ReliabilityVector::new(p)
    }

    /// Reads a scheme document from a file. See [`VariableScheme::from_document`].
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_document(&text)
    }

    /// Writes the scheme document to a file. See [`VariableScheme::to_document`].
    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_document())?;
        Ok(())
    }

    /// Parses a scheme document.
    ///
    /// The format has four sections. `#` starts a comment anywhere.
    ///
    /// ```text
    /// [lengths]
    /// 8 16 32
    ///
    /// [bytes.low]
    /// A1L: N N N Z* N Z Z Y*
    ///
    /// [bytes.high]
    /// A1H: L* I I H I* H H H
    ///
    /// [rules]
    /// N  8  7  -1
    /// ```
    ///
    /// Byte rows map a name to eight variable slots; a trailing `*` marks a
    /// bold slot. Rule rows give variable, length, init and signed update
    /// (`-` when the value never changes).
    pub fn from_document(text: &str) -> Result<Self> {
        parse_document(text)
    }

    /// Renders the scheme as a document that [`VariableScheme::from_document`]
    /// parses back to an equal scheme.
    pub fn to_document(&self) -> String {
        let mut out = String::new();
        out.push_str("[lengths]\n");
        let lens: Vec<String> = self.lengths.iter().map(|n| n.to_string()).collect();
        out.push_str(&lens.join(" "));
        out.push('\n');
        for (section, bytes) in [("bytes.low", &self.low_bytes), ("bytes.high", &self.high_bytes)] {
            out.push_str(&format!("\n[{section}]\n"));
            let width = bytes.iter().map(|b| b.name.len()).max().unwrap_or(0);
            for byte in bytes {
                let mut slots = Vec::with_capacity(8);
                for (i, &id) in byte.entries.iter().enumerate() {
                    let mut tok = self.variable_name(id).to_string();
                    if byte.bold[i] {
                        tok.push('*');
                    }
                    slots.push(tok);
                }
                out.push_str(&format!("{:width$}: {}\n", byte.name, slots.join(" ")));
            }
        }
        out.push_str("\n[rules]\n");
        for (&(id, n), rule) in &self.rules {
            let update = if rule.update_half_units == 0 {
                "-".to_string()
            } else {
                format_signed_update(rule.signed_update(id.half))
            };
            out.push_str(&format!(
                "{:5} {:4} {:4} {}\n",
                self.variable_name(id),
                n,
                rule.init,
                update
            ));
        }
        out
    }

    /// The scheme distributed with the toolkit: 24 variables covering code
    /// lengths 8 through 256.
    pub fn builtin24() -> Self {
        builtin24()
    }
}

fn format_signed_update(update: f64) -> String {
    if update == update.trunc() {
        format!("{:+}", update as i64)
    } else {
        format!("{update:+}")
    }
}

/// Incremental constructor for [`VariableScheme`]. Variables are interned in
/// first-appearance order, which fixes their five-bit codes.
#[derive(Debug, Default)]
pub struct SchemeBuilder {
    low_names: Vec<String>,
    high_names: Vec<String>,
    low_bytes: Vec<ReliabilityByte>,
    high_bytes: Vec<ReliabilityByte>,
    lengths: Vec<usize>,
    rules: BTreeMap<(VariableId, usize), Rule>,
}

impl SchemeBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn lengths(&mut self, lengths: impl IntoIterator<Item = usize>) -> &mut Self {
        self.lengths.extend(lengths);
        self
    }

    /// Adds a low byte. `slots` holds eight whitespace-separated variable
    /// names, `*` suffix for bold.
    pub fn low_byte(&mut self, name: &str, slots: &str) -> Result<&mut Self> {
        self.byte(Half::Low, name, slots)
    }

    pub fn high_byte(&mut self, name: &str, slots: &str) -> Result<&mut Self> {
        self.byte(Half::High, name, slots)
    }

    fn byte(&mut self, half: Half, name: &str, slots: &str) -> Result<&mut Self> {
        let tokens: Vec<&str> = slots.split_whitespace().collect();
        if tokens.len() != 8 {
            return Err(Error::InvalidScheme(format!(
                "byte {name} has {} slots, expected 8",
                tokens.len()
            )));
        }
        let mut entries = [VariableId { half, code: 0 }; 8];
        let mut bold = [false; 8];
        for (i, tok) in tokens.iter().enumerate() {
            let (var, is_bold) = match tok.strip_suffix('*') {
                Some(stripped) => (stripped, true),
                None => (*tok, false),
            };
            entries[i] = self.intern(half, var)?;
            bold[i] = is_bold;
        }
        let byte = ReliabilityByte {
            name: name.to_string(),
            entries,
            bold,
        };
        match half {
            Half::Low => self.low_bytes.push(byte),
            Half::High => self.high_bytes.push(byte),
        }
        Ok(self)
    }

    /// Adds a rule for `(variable, n)`. `update` is the signed per-occurrence
    /// change; pass `0.0` when the value never changes.
    pub fn rule(&mut self, half: Half, variable: &str, n: usize, init: i64, update: f64) -> Result<&mut Self> {
        let names = match half {
            Half::Low => &self.low_names,
            Half::High => &self.high_names,
        };
        let code = names
            .iter()
            .position(|v| v == variable)
            .ok_or_else(|| Error::InvalidScheme(format!("rule for unknown {half} variable {variable}")))?;
        let id = VariableId {
            half,
            code: code as u8,
        };
        let wrong_sign = match half {
            Half::Low => update > 0.0,
            Half::High => update < 0.0,
        };
        if wrong_sign {
            return Err(Error::UpdateSign {
                variable: variable.to_string(),
                half,
                value: update,
            });
        }
        let half_units = update.abs() * 2.0;
        if (half_units - half_units.round()).abs() > 1e-9 {
            return Err(Error::InvalidScheme(format!(
                "update {update} for {variable} at length {n} is not a multiple of 0.5"
            )));
        }
        let half_units = half_units.round();
        if half_units > f64::from(MAX_UPDATE_HALF_UNITS) {
            return Err(Error::UpdateOverflow {
                variable: variable.to_string(),
                n,
                magnitude: update.abs(),
            });
        }
        let rule = Rule {
            init,
            update_half_units: half_units as u8,
        };
        if self.rules.insert((id, n), rule).is_some() {
            return Err(Error::InvalidScheme(format!(
                "duplicate rule for {variable} at length {n}"
            )));
        }
        Ok(self)
    }

    fn intern(&mut self, half: Half, name: &str) -> Result<VariableId> {
        if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(Error::InvalidScheme(format!("invalid variable name {name:?}")));
        }
        let names = match half {
            Half::Low => &mut self.low_names,
            Half::High => &mut self.high_names,
        };
        if let Some(code) = names.iter().position(|v| v == name) {
            return Ok(VariableId {
                half,
                code: code as u8,
            });
        }
        if names.len() == MAX_VARIABLES_PER_HALF {
            return Err(Error::TooManyVariables { half });
        }
        names.push(name.to_string());
        Ok(VariableId {
            half,
            code: (names.len() - 1) as u8,
        })
    }

    /// Validates the collected parts and produces the scheme.
    pub fn build(self) -> Result<VariableScheme> {
        let mut lengths = self.lengths;
        lengths.sort_unstable();
        lengths.dedup();
        if lengths.is_empty() {
            return Err(Error::InvalidScheme("no supported lengths".into()));
        }
        for &n in &lengths {
            if !n.is_power_of_two() || n < 8 {
                return Err(Error::InvalidScheme(format!(
                    "supported length {n} is not a power of two >= 8"
                )));
            }
        }
        for (half, bytes) in [(Half::Low, &self.low_bytes), (Half::High, &self.high_bytes)] {
            let needed = lengths.iter().map(|n| (n / 16).max(1)).max().unwrap();
            if bytes.len() < needed {
                return Err(Error::InvalidScheme(format!(
                    "{half} half has {} bytes, largest length needs {needed}",
                    bytes.len()
                )));
            }
            for (i, byte) in bytes.iter().enumerate() {
                if bytes[..i].iter().any(|b| b.name == byte.name) {
                    return Err(Error::InvalidScheme(format!(
                        "duplicate {half} byte name {}",
                        byte.name
                    )));
                }
            }
        }
        for (half, names) in [(Half::Low, &self.low_names), (Half::High, &self.high_names)] {
            let sentinel = match half {
                Half::Low => ENDL,
                Half::High => ENDH,
            };
            if !names.iter().any(|n| n == sentinel) {
                return Err(Error::InvalidScheme(format!(
                    "{half} half does not declare {sentinel}"
                )));
            }
        }

        let scheme = VariableScheme {
            low_names: self.low_names,
            high_names: self.high_names,
            low_bytes: self.low_bytes,
            high_bytes: self.high_bytes,
            lengths,
            rules: self.rules,
        };
        scheme_checks(&scheme)?;
        Ok(scheme)
    }
}

/// Whole-scheme validation: every supported length composes, sentinels land
/// exactly at the seam, every occurring variable has a rule, and no bold
/// marker is stray.
fn scheme_checks(scheme: &VariableScheme) -> Result<()> {
    let mut used_bold: Vec<(Half, usize)> = Vec::new();
    for &n in &scheme.lengths {
        let seq = scheme.compose(n)?;
        for (half, range, sentinel_at) in [
            (Half::Low, 0..n / 2, n / 2 - 1),
            (Half::High, n / 2..n, n / 2),
        ] {
            let sentinel = scheme.sentinel(half);
            for i in range {
                let id = seq[i];
                if (id == sentinel) != (i == sentinel_at) {
                    return Err(Error::InvalidScheme(format!(
                        "length {n}: {} at index {i}, expected it only at {sentinel_at}",
                        scheme.variable_name(sentinel)
                    )));
                }
                if scheme.rule(id, n).is_none() {
                    return Err(Error::MissingRule {
                        variable: scheme.variable_name(id).to_string(),
                        n,
                    });
                }
            }
        }
        let low_flat = n / 2 - 1;
        used_bold.push((Half::Low, low_flat));
        used_bold.push((Half::High, scheme.high_bytes.len() * 8 - n / 2));
    }
    for (half, bytes) in [(Half::Low, &scheme.low_bytes), (Half::High, &scheme.high_bytes)] {
        for (b, byte) in bytes.iter().enumerate() {
            for (i, &bold) in byte.bold.iter().enumerate() {
                let flat = b * 8 + i;
                if bold && !used_bold.contains(&(half, flat)) {
                    return Err(Error::InvalidScheme(format!(
                        "bold marker on {} slot {i} is never a sentinel position",
                        byte.name
                    )));
                }
            }
        }
    }
    Ok(())
}

fn parse_document(text: &str) -> Result<VariableScheme> {
    #[derive(PartialEq, Clone, Copy)]
    enum Section {
        None,
        Lengths,
        BytesLow,
        BytesHigh,
        Rules,
    }

    let mut builder = SchemeBuilder::new();
    let mut section = Section::None;
    // Rules may reference variables from bytes that appear later in the
    // file, so they are replayed after all bytes are in.
    let mut pending_rules: Vec<(usize, String)> = Vec::new();
    let mut seen: Vec<Section> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.split_once('#') {
            Some((head, _)) => head,
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[') {
            let name = name.strip_suffix(']').ok_or_else(|| Error::Parse {
                line: line_no,
                msg: "unterminated section header".into(),
            })?;
            section = match name {
                "lengths" => Section::Lengths,
                "bytes.low" => Section::BytesLow,
                "bytes.high" => Section::BytesHigh,
                "rules" => Section::Rules,
                other => {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: format!("unknown section [{other}]"),
                    })
                }
            };
            if seen.contains(&section) {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("section [{name}] appears twice"),
                });
            }
            seen.push(section);
            continue;
        }
        match section {
            Section::None => {
                return Err(Error::Parse {
                    line: line_no,
                    msg: "content before the first section header".into(),
                })
            }
            Section::Lengths => {
                for tok in line.split_whitespace() {
                    let n: usize = tok.parse().map_err(|_| Error::Parse {
                        line: line_no,
                        msg: format!("bad length {tok:?}"),
                    })?;
                    builder.lengths([n]);
                }
            }
            Section::BytesLow | Section::BytesHigh => {
                let (name, slots) = line.split_once(':').ok_or_else(|| Error::Parse {
                    line: line_no,
                    msg: "byte row needs the form `NAME: eight slots`".into(),
                })?;
                let half = if section == Section::BytesLow {
                    Half::Low
                } else {
                    Half::High
                };
                builder
                    .byte(half, name.trim(), slots)
                    .map_err(|e| at_line(line_no, e))?;
            }
            Section::Rules => pending_rules.push((line_no, line.to_string())),
        }
    }

    for (line_no, line) in pending_rules {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("rule row has {} fields, expected 4", fields.len()),
            });
        }
        let variable = fields[0];
        let n: usize = fields[1].parse().map_err(|_| Error::Parse {
            line: line_no,
            msg: format!("bad length {:?}", fields[1]),
        })?;
        let init: i64 = fields[2].parse().map_err(|_| Error::Parse {
            line: line_no,
            msg: format!("bad init value {:?}", fields[2]),
        })?;
        let update: f64 = if fields[3] == "-" {
            0.0
        } else {
            fields[3].parse().map_err(|_| Error::Parse {
                line: line_no,
                msg: format!("bad update value {:?}", fields[3]),
            })?
        };
        // The variable name determines the half; it must be unique across
        // halves for rules to be unambiguous.
        let in_low = builder.low_names.iter().any(|v| v == variable);
        let in_high = builder.high_names.iter().any(|v| v == variable);
        let half = match (in_low, in_high) {
            (true, false) => Half::Low,
            (false, true) => Half::High,
            (true, true) => {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("variable {variable} exists in both halves"),
                })
            }
            (false, false) => {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("rule for unknown variable {variable}"),
                })
            }
        };
        builder
            .rule(half, variable, n, init, update)
            .map_err(|e| at_line(line_no, e))?;
    }

    builder.build()
}

/// Wraps builder errors with the document line that triggered them.
fn at_line(line: usize, err: Error) -> Error {
    match err {
        e @ Error::Parse { .. } => e,
        other => Error::Parse {
            line,
            msg: other.to_string(),
        },
    }
}

const LOW_BYTES_24: [(&str, &str); 16] = [
    ("A1L", "N N N Z* N Z Z Y*"),
    ("B1L", "N Z Z Y X Y Y W*"),
    ("C1L", "N Z X Y X Y Y W"),
    ("C2L", "X Y Y W Y W W V*"),
    ("D1L", "N X X Y2 X Y2 Y2 W"),
    ("D2L", "X Y2 Y2 W Y2 W W V"),
    ("D3L", "X Y2 Y2 W Y2 W W V"),
    ("D4L", "Y2 W W V W V V U*"),
    ("E1L", "N Y3 Y3 Y3 Y3 T T W2"),
    ("E2L", "Y3 T T W2 T W2 W2 V2"),
    ("E3L", "Y3 T T W2 T S S V2"),
    ("E4L", "T S S V2 S V2 V2 U"),
    ("E5L", "Y3 T T S T S S V2"),
    ("E6L", "T S S V2 S V2 V2 U"),
    ("E7L", "T S S V2 S V2 V2 U"),
    ("E8L", "S V2 V2 U V2 U U ENDL"),
];

const HIGH_BYTES_24: [(&str, &str); 16] = [
    ("E8H", "ENDH Q Q Q Q Q Q M2"),
    ("E7H", "Q O2 O2 M2 O2 M2 M2 L2"),
    ("E6H", "Q O2 O2 O2 O2 M2 M2 L2"),
    ("E5H", "O2 M2 M2 L2 M2 L2 L2 I"),
    ("E4H", "Q O2 O2 M2 O2 M2 M2 L2"),
    ("E3H", "O2 M2 M2 L2 M2 L2 L2 I"),
    ("E2H", "O2 M2 M2 L2 M2 L2 L2 I"),
    ("E1H", "M2 L2 L2 I L2 I I H"),
    ("D4H", "Q* O O M O M M L"),
    ("D3H", "O M M L M L L I"),
    ("D2H", "O M M L M L L I"),
    ("D1H", "M L L I L I I H"),
    ("C2H", "O* M M L M L L I"),
    ("C1H", "M L L I L I I H"),
    ("B1H", "M* L L I L I I H"),
    ("A1H", "L* I I H I* H H H"),
];

/// Low-half rules that do not follow a per-length formula.
const FIXED_LOW_RULES_24: [(&str, usize, i64, f64); 21] = [
    ("Y", 32, 15, -1.0),
    ("Y", 64, 43, -1.5),
    ("Y", 128, 108, -2.0),
    ("Y", 256, 233, -2.5),
    ("Y2", 128, 95, -2.0),
    ("Y2", 256, 219, -2.5),
    ("Y3", 256, 232, -4.0),
    ("X", 32, 19, 0.0),
    ("X", 64, 50, -1.5),
    ("X", 128, 113, -2.0),
    ("X", 256, 241, -2.0),
    ("W", 64, 21, -1.0),
    ("W", 128, 70, -2.0),
    ("W", 256, 204, -5.0),
    ("W2", 256, 174, -6.0),
    ("V", 128, 30, -2.0),
    ("V", 256, 140, -10.0),
    ("V2", 256, 113, -3.0),
    ("U", 256, 47, -3.0),
    ("T", 256, 204, -3.5),
    ("S", 256, 145, -3.0),
];

const FIXED_HIGH_RULES_24: [(&str, usize, i64, f64); 13] = [
    ("L", 32, 16, 1.0),
    ("L", 64, 22, 1.0),
    ("L", 128, 28, 1.5),
    ("L", 256, 35, 1.5),
    ("L2", 256, 53, 2.0),
    ("M", 64, 40, 2.0),
    ("M", 128, 61, 2.0),
    ("M", 256, 79, 2.0),
    ("M2", 256, 95, 3.5),
    ("O", 128, 91, 3.0),
    ("O", 256, 131, 5.0),
    ("O2", 256, 143, 4.0),
    ("Q", 256, 192, 3.0),
];

/// End-of-high-half init values per length, 8 through 256.
const ENDH_INIT_24: [i64; 6] = [4, 11, 26, 56, 116, 238];

fn builtin24() -> VariableScheme {
    let lengths = [8usize, 16, 32, 64, 128, 256];
    let mut b = SchemeBuilder::new();
    b.lengths(lengths);
    for (name, slots) in LOW_BYTES_24 {
        b.low_byte(name, slots).unwrap();
    }
    for (name, slots) in HIGH_BYTES_24 {
        b.high_byte(name, slots).unwrap();
    }
    for (i, n) in lengths.into_iter().enumerate() {
        let log2n = n.trailing_zeros() as i64;
        b.rule(Half::Low, "N", n, n as i64 - 1, -1.0).unwrap();
        b.rule(Half::Low, "ENDL", n, log2n, 0.0).unwrap();
        b.rule(Half::High, "H", n, 0, 1.0).unwrap();
        b.rule(Half::High, "ENDH", n, ENDH_INIT_24[i], 0.0).unwrap();
        if n >= 16 {
            b.rule(Half::Low, "Z", n, n as i64 - 7, -1.0).unwrap();
            b.rule(Half::High, "I", n, log2n + 1, 1.0).unwrap();
        }
    }
    for (var, n, init, update) in FIXED_LOW_RULES_24 {
        b.rule(Half::Low, var, n, init, update).unwrap();
    }
    for (var, n, init, update) in FIXED_HIGH_RULES_24 {
        b.rule(Half::High, var, n, init, update).unwrap();
    }
    b.build().expect("built-in scheme is valid")
}
