//! Cycle-level model of the sequence generator hardware.
//!
//! Two engines run in lockstep, one per half. Each cycle an engine reads a
//! five-bit variable code from its structure memory, emits that variable's
//! register, and writes back `(register << 1) -/+ update) >> 1` with the
//! Q4.1 update magnitude from the update memory. The low engine fills
//! `p[0..N/2]` forward; the high engine uses reversed structure addressing,
//! so its cycle `c` lands at `p[N-1-c]`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::reliability::ReliabilityVector;
use crate::scheme::{Half, VariableId, VariableScheme};

/// One half's generator engine.
#[derive(Clone, Debug)]
pub struct HwEngine {
    half: Half,
    n: usize,
    /// Variable codes in counter order.
    structure: Vec<u8>,
    /// Eight-bit init values for every (code, length) pair of this half.
    init_mem: BTreeMap<(u8, usize), u8>,
    /// Q4.1 update magnitudes in half-units for the same pairs.
    update_mem: BTreeMap<(u8, usize), u8>,
    registers: Vec<i64>,
    counter: usize,
}

/// What one engine cycle did.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct StepRecord {
    pub cycle: usize,
    pub variable: VariableId,
    pub emitted: i64,
    pub register_after: i64,
}

impl HwEngine {
    pub fn half(&self) -> Half {
        self.half
    }

    pub fn counter(&self) -> usize {
        self.counter
    }

    /// Cycles until the engine has emitted its half.
    pub fn cycles_total(&self) -> usize {
        self.n / 2
    }

    pub fn structure_codes(&self) -> &[u8] {
        &self.structure
    }

    /// The engine's init memory: (code, length) to eight-bit init value.
    pub fn init_memory(&self) -> &BTreeMap<(u8, usize), u8> {
        &self.init_mem
    }

    /// The engine's update memory: (code, length) to Q4.1 magnitude in
    /// half-units.
    pub fn update_memory(&self) -> &BTreeMap<(u8, usize), u8> {
        &self.update_mem
    }

    /// Runs one cycle. Errors once the counter has walked the whole half.
    pub fn step(&mut self) -> Result<StepRecord> {
        if self.counter >= self.cycles_total() {
            return Err(Error::CounterOverflow);
        }
        let code = self.structure[self.counter];
        let update = i64::from(*self.update_mem.get(&(code, self.n)).unwrap_or(&0));
        let register = &mut self.registers[code as usize];
        let emitted = *register;
        let shifted = match self.half {
            Half::Low => (emitted << 1) - update,
            Half::High => (emitted << 1) + update,
        };
        *register = shifted >> 1;
        let record = StepRecord {
            cycle: self.counter,
            variable: VariableId {
                half: self.half,
                code,
            },
            emitted,
            register_after: *register,
        };
        self.counter += 1;
        Ok(record)
    }

    /// Destination index of cycle `c` in the reliability vector.
    pub fn target_index(&self, cycle: usize) -> usize {
        match self.half {
            Half::Low => cycle,
            Half::High => self.n - 1 - cycle,
        }
    }
}

/// Builds the engine pair for length `n`, preloading registers with the init
/// values for that length. Init values must fit the eight-bit memory.
pub fn load(scheme: &VariableScheme, n: usize) -> Result<(HwEngine, HwEngine)> {
    let seq = scheme.compose(n)?;
    let mut engines = Vec::with_capacity(2);
    for half in [Half::Low, Half::High] {
        let mut init_mem = BTreeMap::new();
        let mut update_mem = BTreeMap::new();
        for (id, len, rule) in scheme.rules() {
            if id.half != half {
                continue;
            }
            let init = u8::try_from(rule.init).map_err(|_| Error::InitOverflow {
                variable: scheme.variable_name(id).to_string(),
                n: len,
                value: rule.init,
            })?;
            init_mem.insert((id.code, len), init);
            update_mem.insert((id.code, len), rule.update_half_units);
        }
        let structure: Vec<u8> = match half {
            Half::Low => seq[..n / 2].iter().map(|id| id.code).collect(),
            // Reversed addressing walks the high half from p[N-1] inward.
            Half::High => seq[n / 2..].iter().rev().map(|id| id.code).collect(),
        };
        let mut registers = vec![0i64; scheme.variable_count(half)];
        for (&(code, len), &init) in &init_mem {
            if len == n {
                registers[code as usize] = i64::from(init);
            }
        }
        engines.push(HwEngine {
            half,
            n,
            structure,
            init_mem,
            update_mem,
            registers,
            counter: 0,
        });
    }
    let high = engines.pop().unwrap();
    let low = engines.pop().unwrap();
    Ok((low, high))
}

/// Runs both engines to completion and assembles the reliability vector.
/// Matches [`VariableScheme::reliability`] in
/// [`crate::reliability::RoundingMode::FloorEachUpdate`].
pub fn run(scheme: &VariableScheme, n: usize) -> Result<ReliabilityVector> {
    Ok(run_with_trace(scheme, n)?.0)
}

/// Like [`run`], also returning the per-cycle trace (low engine row first
/// each cycle).
pub fn run_with_trace(
    scheme: &VariableScheme,
    n: usize,
) -> Result<(ReliabilityVector, Vec<StepRecord>)> {
    let (mut low, mut high) = load(scheme, n)?;
    let mut p = vec![0i64; n];
    let mut trace = Vec::with_capacity(n);
    for _ in 0..low.cycles_total() {
        for engine in [&mut low, &mut high] {
            let record = engine.step()?;
            p[engine.target_index(record.cycle)] = record.emitted;
            trace.push(record);
        }
    }
    Ok((ReliabilityVector::new(p)?, trace))
}

/// CSV rendering of a trace with a `cycle,half,variable,emitted,register_after`
/// header.
pub fn trace_csv(scheme: &VariableScheme, trace: &[StepRecord]) -> String {
    let mut out = String::from("cycle,half,variable,emitted,register_after\n");
    for r in trace {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.cycle,
            r.variable.half,
            scheme.variable_name(r.variable),
            r.emitted,
            r.register_after
        ));
    }
    out
}

/// Storage footprint of a scheme in the generator architecture.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct MemoryReport {
    pub structure_entries_low: usize,
    pub structure_entries_high: usize,
    /// Five bits per structure entry across both halves.
    pub structure_bits: usize,
    pub init_entries_low: usize,
    pub init_entries_high: usize,
    /// Eight bits per init entry.
    pub init_bits: usize,
    pub update_entries_low: usize,
    pub update_entries_high: usize,
    /// Five bits per update entry (sign comes from the half).
    pub update_bits: usize,
    /// Bytes a direct table of every supported vector would need: the sum of
    /// the supported lengths.
    pub baseline_bytes: usize,
}

impl MemoryReport {
    pub fn to_text(&self) -> String {
        format!(
            "structure entries: {} low + {} high ({} bits)\n\
             init entries:      {} low + {} high ({} bits)\n\
             update entries:    {} low + {} high ({} bits)\n\
             baseline bytes:    {}\n",
            self.structure_entries_low,
            self.structure_entries_high,
            self.structure_bits,
            self.init_entries_low,
            self.init_entries_high,
            self.init_bits,
            self.update_entries_low,
            self.update_entries_high,
            self.update_bits,
            self.baseline_bytes,
        )
    }
}

/// Counts the memories a scheme occupies. Init and update memories hold one
/// entry per (variable, length) rule of their half.
pub fn memory_report(scheme: &VariableScheme) -> MemoryReport {
    let structure_entries_low = scheme.low_bytes().len() * 8;
    let structure_entries_high = scheme.high_bytes().len() * 8;
    let init_entries_low = scheme.rule_count(Half::Low);
    let init_entries_high = scheme.rule_count(Half::High);
    MemoryReport {
        structure_entries_low,
        structure_entries_high,
        structure_bits: 5 * (structure_entries_low + structure_entries_high),
        init_entries_low,
        init_entries_high,
        init_bits: 8 * (init_entries_low + init_entries_high),
        update_entries_low: init_entries_low,
        update_entries_high: init_entries_high,
        update_bits: 5 * (init_entries_low + init_entries_high),
        baseline_bytes: scheme.supported_lengths().iter().sum(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reliability::RoundingMode;
    use crate::scheme::{SchemeBuilder, VariableScheme};

    fn builtin24() -> VariableScheme {
        VariableScheme::builtin24()
    }

    #[test]
    fn structure_codes_match_the_composed_sequence() {
        let scheme = builtin24();
        let n = 32;
        let seq = scheme.compose(n).unwrap();
        let (low, high) = load(&scheme, n).unwrap();
        let low_codes: Vec<u8> = seq[..n / 2].iter().map(|id| id.code).collect();
        let high_codes: Vec<u8> = seq[n / 2..].iter().rev().map(|id| id.code).collect();
        assert_eq!(low.structure_codes(), low_codes);
        assert_eq!(high.structure_codes(), high_codes);
    }

    #[test]
    fn golden_run_length_8() {
        let p = run(&builtin24(), 8).unwrap();
        assert_eq!(p.values(), [7, 6, 5, 3, 4, 2, 1, 0]);
    }

    #[test]
    fn low_engine_register_walk_at_32() {
        // The second low variable of the built-in set starts at 25 and loses
        // one per occurrence at length 32.
        let scheme = builtin24();
        let (mut low, _) = load(&scheme, 32).unwrap();
        let mut seen = Vec::new();
        for _ in 0..low.cycles_total() {
            let r = low.step().unwrap();
            if scheme.variable_name(r.variable) == "Z" {
                seen.push((r.cycle, r.emitted, r.register_after));
            }
        }
        assert_eq!(
            seen,
            [
                (3, 25, 24),
                (5, 24, 23),
                (6, 23, 22),
                (9, 22, 21),
                (10, 21, 20),
            ]
        );
    }

    #[test]
    fn half_unit_updates_floor_at_64() {
        let scheme = builtin24();
        let (mut low, _) = load(&scheme, 64).unwrap();
        let mut seen = Vec::new();
        for _ in 0..low.cycles_total() {
            let r = low.step().unwrap();
            if scheme.variable_name(r.variable) == "Y" {
                seen.push((r.cycle, r.emitted));
            }
        }
        assert_eq!(
            seen,
            [
                (7, 43),
                (11, 41),
                (13, 39),
                (14, 37),
                (19, 35),
                (21, 33),
                (22, 31),
                (25, 29),
                (26, 27),
                (28, 25),
            ]
        );
    }

    #[test]
    fn run_matches_floor_mode_for_every_length() {
        let scheme = builtin24();
        for &n in scheme.supported_lengths() {
            let hw = run(&scheme, n).unwrap();
            let sw = scheme.reliability(n, RoundingMode::FloorEachUpdate).unwrap();
            assert_eq!(hw, sw, "n = {n}");
        }
    }

    #[test]
    fn high_engine_addresses_from_the_top() {
        let (low, high) = load(&builtin24(), 16).unwrap();
        assert_eq!(low.target_index(0), 0);
        assert_eq!(low.target_index(7), 7);
        assert_eq!(high.target_index(0), 15);
        assert_eq!(high.target_index(7), 8);
    }

    #[test]
    fn counter_overflows_after_the_half() {
        let (mut low, _) = load(&builtin24(), 8).unwrap();
        for _ in 0..low.cycles_total() {
            low.step().unwrap();
        }
        assert!(matches!(low.step(), Err(Error::CounterOverflow)));
    }

    #[test]
    fn load_rejects_unsupported_length() {
        assert!(load(&builtin24(), 512).is_err());
    }

    #[test]
    fn load_rejects_inits_beyond_eight_bits() {
        let mut b = SchemeBuilder::new();
        b.lengths([8]);
        b.low_byte("A", "N N N ENDL N N N N").unwrap();
        b.high_byte("B", "H H H H ENDH H H H").unwrap();
        b.rule(Half::Low, "N", 8, 300, -1.0).unwrap();
        b.rule(Half::Low, "ENDL", 8, 3, 0.0).unwrap();
        b.rule(Half::High, "ENDH", 8, 4, 0.0).unwrap();
        b.rule(Half::High, "H", 8, 0, 1.0).unwrap();
        let scheme = b.build().unwrap();
        match load(&scheme, 8) {
            Err(Error::InitOverflow { variable, n, value }) => {
                assert_eq!((variable.as_str(), n, value), ("N", 8, 300));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn init_memory_holds_one_entry_per_rule() {
        let scheme = builtin24();
        let (low, high) = load(&scheme, 256).unwrap();
        assert_eq!(low.init_memory().len(), 38);
        assert_eq!(low.update_memory().len(), 38);
        assert_eq!(high.init_memory().len(), 30);
        assert_eq!(high.update_memory().len(), 30);
    }

    #[test]
    fn memory_report_for_the_builtin_set() {
        let r = memory_report(&builtin24());
        assert_eq!(r.structure_entries_low, 128);
        assert_eq!(r.structure_entries_high, 128);
        assert_eq!(r.structure_bits, 1280);
        assert_eq!(r.init_entries_low, 38);
        assert_eq!(r.init_entries_high, 30);
        assert_eq!(r.init_bits, 544);
        assert_eq!(r.update_entries_low, 38);
        assert_eq!(r.update_entries_high, 30);
        assert_eq!(r.update_bits, 340);
        assert_eq!(r.baseline_bytes, 504);
        let text = r.to_text();
        assert!(text.contains("38 low + 30 high"));
        assert!(text.contains("baseline bytes:    504"));
    }

    #[test]
    fn trace_interleaves_the_halves() {
        let scheme = builtin24();
        let (p, trace) = run_with_trace(&scheme, 16).unwrap();
        assert_eq!(p.len(), 16);
        assert_eq!(trace.len(), 16);
        assert_eq!(trace[0].variable.half, Half::Low);
        assert_eq!(trace[1].variable.half, Half::High);
        let csv = trace_csv(&scheme, &trace);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 17);
        assert_eq!(lines[0], "cycle,half,variable,emitted,register_after");
        assert_eq!(lines[1], "0,low,N,15,14");
    }
}
