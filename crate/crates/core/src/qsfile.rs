//! Plain-text `.qs` state files.
//!
//! ```text
//! # comment
//! dims: 2 2 2
//! 0 0.7071067811865475 0
//! 7 0.7071067811865475 0
//! ```
//!
//! The first non-comment line lists the local dimensions; each following
//! nonempty line is `flat_index re im`. Omitted indices are zero.

use std::fmt::Write as _;

use num_complex::Complex64;

use crate::dims::QuditDims;
use crate::error::{Error, Result};
use crate::qstate::PureState;

fn bad(line: usize, message: impl Into<String>) -> Error {
    Error::StateFile {
        line,
        message: message.into(),
    }
}

pub fn parse_qs(text: &str) -> Result<PureState> {
    let mut dims: Option<QuditDims> = None;
    let mut amps: Vec<Option<Complex64>> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some(d) = &dims else {
            let rest = line
                .strip_prefix("dims:")
                .ok_or_else(|| bad(line_no, "expected 'dims: d1 d2 ...'"))?;
            let d: QuditDims = rest
                .trim()
                .parse()
                .map_err(|e: Error| bad(line_no, e.to_string()))?;
            amps = vec![None; d.total()];
            dims = Some(d);
            continue;
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [idx, re, im] = fields[..] else {
            return Err(bad(
                line_no,
                format!("expected 'flat_index re im', got {line:?}"),
            ));
        };
        let idx: usize = idx
            .parse()
            .map_err(|_| bad(line_no, format!("bad index {idx:?}")))?;
        let re: f64 = re
            .parse()
            .map_err(|_| bad(line_no, format!("bad real part {re:?}")))?;
        let im: f64 = im
            .parse()
            .map_err(|_| bad(line_no, format!("bad imaginary part {im:?}")))?;
        if idx >= d.total() {
            return Err(bad(
                line_no,
                format!("index {idx} out of range for dimension {}", d.total()),
            ));
        }
        if amps[idx].replace(Complex64::new(re, im)).is_some() {
            return Err(bad(line_no, format!("duplicate index {idx}")));
        }
    }
    let dims = dims.ok_or_else(|| bad(0, "missing 'dims:' line"))?;
    let amps = amps.into_iter().map(|a| a.unwrap_or_default()).collect();
    PureState::from_amplitudes(dims, amps)
}

/// Serializes the nonzero amplitudes with round-trip exact numbers.
pub fn write_qs(state: &PureState) -> String {
    let mut out = String::new();
    let dims: Vec<String> = state
        .dims()
        .as_slice()
        .iter()
        .map(|d| d.to_string())
        .collect();
    writeln!(out, "dims: {}", dims.join(" ")).unwrap();
    for (k, a) in state.amplitudes().iter().enumerate() {
        if *a != Complex64::new(0.0, 0.0) {
            writeln!(out, "{k} {:?} {:?}", a.re, a.im).unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::{standard_state, StandardState};
    use crate::random::{random_state, seeded};

    #[test]
    fn ghz_file() {
        let text = "# three-qubit GHZ\ndims: 2 2 2\n\n0 1 0\n7 1 0\n";
        let s = parse_qs(text).unwrap();
        let ghz = standard_state(StandardState::Ghz, 3, 2).unwrap();
        assert!((s.fidelity(&ghz) - 1.0).abs() < 1e-15);
        assert!(s.was_normalized());
    }

    #[test]
    fn roundtrip_is_exact() {
        let d = QuditDims::new(vec![2, 3, 2]).unwrap();
        let s = random_state(&d, &mut seeded(11));
        assert_eq!(
            parse_qs(&write_qs(&s)).unwrap().amplitudes(),
            s.amplitudes()
        );
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("0 1 0\n", 1),
            ("dims: 2 2\n4 1 0\n", 2),
            ("dims: 2 2\n0 1\n", 2),
            ("dims: 2 2\n0 1 0\n# c\n0 1 0\n", 4),
            ("dims: 2 1\n", 1),
            ("dims: 2 2\n1 x 0\n", 2),
        ];
        for (text, line) in cases {
            match parse_qs(text) {
                Err(Error::StateFile { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
        assert!(matches!(parse_qs("# only\n"), Err(Error::StateFile { .. })));
        assert_eq!(parse_qs("dims: 2\n0 0 0\n"), Err(Error::ZeroState));
    }
}
