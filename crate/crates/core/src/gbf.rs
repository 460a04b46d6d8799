//! The `.gbf` truth-table text format.
//!
//! ```text
//! # optional comments
//! n=2 k=2
//! 0 0 2 3
//! ```
//!
//! The header line is followed by `2^n` whitespace-separated decimal values
//! in table order. Values may wrap onto further lines when reading; writing
//! always produces exactly two lines.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::function::{GeneralizedBooleanFunction, Limits};

/// Parses a single function.
pub fn read_gbf(text: &str) -> Result<GeneralizedBooleanFunction> {
    read_gbf_with_limits(text, &Limits::default())
}

pub fn read_gbf_with_limits(text: &str, limits: &Limits) -> Result<GeneralizedBooleanFunction> {
    let mut functions = read_gbf_stream_with_limits(text, limits)?;
    match functions.len() {
        1 => Ok(functions.pop().unwrap()),
        0 => Err(Error::Format {
            line: 0,
            msg: "no header line found".into(),
        }),
        m => Err(Error::Format {
            line: 0,
            msg: format!("expected one function, found {m}"),
        }),
    }
}

/// Parses a concatenation of `.gbf` records, as emitted by `gbent search`.
pub fn read_gbf_stream(text: &str) -> Result<Vec<GeneralizedBooleanFunction>> {
    read_gbf_stream_with_limits(text, &Limits::default())
}

fn read_gbf_stream_with_limits(
    text: &str,
    limits: &Limits,
) -> Result<Vec<GeneralizedBooleanFunction>> {
    let mut out = Vec::new();
    // (n, k, header line, values so far)
    let mut pending: Option<(u32, u32, usize, Vec<u32>)> = None;

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('n') {
            if let Some((n, _, header, values)) = pending.take() {
                return Err(Error::Format {
                    line: header,
                    msg: format!("expected {} values, found {}", 1usize << n, values.len()),
                });
            }
            let (n, k) = parse_header(line, line_no)?;
            limits.check(n, k)?;
            pending = Some((n, k, line_no, Vec::with_capacity(1 << n)));
            continue;
        }
        let Some((n, k, _, values)) = pending.as_mut() else {
            return Err(Error::Format {
                line: line_no,
                msg: "values before the `n=.. k=..` header".into(),
            });
        };
        for word in line.split_whitespace() {
            let value = word.parse::<u32>().map_err(|_| Error::Format {
                line: line_no,
                msg: format!("not a nonnegative integer: {word:?}"),
            })?;
            values.push(value);
        }
        let expected = 1usize << *n;
        if values.len() > expected {
            return Err(Error::Format {
                line: line_no,
                msg: format!("expected {expected} values, found more"),
            });
        }
        if values.len() == expected {
            let (n, k) = (*n, *k);
            let (_, _, _, values) = pending.take().unwrap();
            out.push(GeneralizedBooleanFunction::with_limits(n, k, values, limits)?);
        }
    }
    if let Some((n, _, header, values)) = pending {
        return Err(Error::Format {
            line: header,
            msg: format!("expected {} values, found {}", 1usize << n, values.len()),
        });
    }
    Ok(out)
}

fn parse_header(line: &str, line_no: usize) -> Result<(u32, u32)> {
    let mut n = None;
    let mut k = None;
    for word in line.split_whitespace() {
        let (key, value) = word.split_once('=').ok_or_else(|| Error::Format {
            line: line_no,
            msg: format!("expected key=value, found {word:?}"),
        })?;
        let value = value.parse::<u32>().map_err(|_| Error::Format {
            line: line_no,
            msg: format!("bad value for {key}: {value:?}"),
        })?;
        match key {
            "n" => n = Some(value),
            "k" => k = Some(value),
            _ => {
                return Err(Error::Format {
                    line: line_no,
                    msg: format!("unknown header key {key:?}"),
                })
            }
        }
    }
    match (n, k) {
        (Some(n), Some(k)) => Ok((n, k)),
        _ => Err(Error::Format {
            line: line_no,
            msg: "header must define both n and k".into(),
        }),
    }
}

/// Renders `f` as two lines: header and values.
pub fn write_gbf(f: &GeneralizedBooleanFunction) -> String {
    let mut out = format!("n={} k={}\n", f.n(), f.k());
    for (i, v) in f.table().into_iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        write!(out, "{v}").unwrap();
    }
    out.push('\n');
    out
}
