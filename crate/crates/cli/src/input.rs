//! State files.
//!
//! ```text
//! DM4              X
//! re im            d0 d1 d2 d3
//! ... (16 rows)    re03 im03 re12 im12
//! ```

use std::path::{Path, PathBuf};

use geodiscord::{Complex64, DensityMatrix4, XStateParams};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum StateInput {
    Dm4(DensityMatrix4),
    X(XStateParams),
}

#[derive(Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

struct Lines<'a> {
    path: PathBuf,
    rows: Vec<(usize, Vec<Token<'a>>)>,
    next: usize,
    last_line: usize,
}

fn tokenize(line_no: usize, line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    let chars: Vec<(usize, char)> = line.char_indices().collect();
    for (k, &(byte, c)) in chars.iter().enumerate() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(k),
            (true, Some(s)) => {
                out.push(Token {
                    text: &line[chars[s].0..byte],
                    line: line_no,
                    column: s + 1,
                });
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &line[chars[s].0..],
            line: line_no,
            column: s + 1,
        });
    }
    out
}

impl<'a> Lines<'a> {
    fn new(path: &Path, text: &'a str) -> Self {
        let rows: Vec<(usize, Vec<Token<'a>>)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, tokenize(i + 1, l)))
            .collect();
        let last_line = rows.len();
        Self {
            path: path.to_path_buf(),
            rows,
            next: 0,
            last_line,
        }
    }

    fn error(&self, line: usize, column: usize, message: impl Into<String>) -> CliError {
        CliError::Parse {
            path: self.path.clone(),
            line,
            column,
            message: message.into(),
        }
    }

    /// Next line, which must hold exactly `n` tokens.
    fn row(&mut self, n: usize, what: &str) -> Result<Vec<Token<'a>>, CliError> {
        if self.next >= self.rows.len() {
            return Err(self.error(
                self.last_line + 1,
                1,
                format!("file ended, expected {what}"),
            ));
        }
        let (line, toks) = &self.rows[self.next];
        self.next += 1;
        if toks.len() != n {
            let column = toks.get(n).map_or(1, |t| t.column);
            return Err(self.error(
                *line,
                column,
                format!("expected {what} ({n} values), found {} values", toks.len()),
            ));
        }
        Ok(toks.clone())
    }

    fn finish(&self) -> Result<(), CliError> {
        for (line, toks) in &self.rows[self.next..] {
            if let Some(t) = toks.first() {
                return Err(self.error(
                    *line,
                    t.column,
                    format!("unexpected trailing data '{}'", t.text),
                ));
            }
        }
        Ok(())
    }
}

fn number(lines: &Lines, t: &Token) -> Result<f64, CliError> {
    match t.text.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(lines.error(
            t.line,
            t.column,
            format!("expected a finite number, found '{}'", t.text),
        )),
    }
}

fn numbers(lines: &mut Lines, n: usize, what: &str) -> Result<Vec<f64>, CliError> {
    let toks = lines.row(n, what)?;
    toks.iter().map(|t| number(lines, t)).collect()
}

/// Parses a state file's text. Syntax problems are [`CliError::Parse`];
/// well-formed input that is not a valid state is [`CliError::Validation`].
pub fn parse_state(path: &Path, text: &str) -> Result<StateInput, CliError> {
    let mut lines = Lines::new(path, text);
    let header = lines.row(1, "a header line 'DM4' or 'X'")?;
    let (kind, line, column) = (header[0].text, header[0].line, header[0].column);
    match kind {
        "DM4" => {
            let mut m = [[Complex64::new(0.0, 0.0); 4]; 4];
            for k in 0..16 {
                let v = numbers(&mut lines, 2, &format!("entry {} as 're im'", k + 1))?;
                m[k / 4][k % 4] = Complex64::new(v[0], v[1]);
            }
            lines.finish()?;
            DensityMatrix4::new(m)
                .map(StateInput::Dm4)
                .map_err(|e| CliError::Validation(e.to_string()))
        }
        "X" => {
            let d = numbers(&mut lines, 4, "populations 'd0 d1 d2 d3'")?;
            let a = numbers(&mut lines, 4, "coherences 're03 im03 re12 im12'")?;
            lines.finish()?;
            XStateParams::new(
                [d[0], d[1], d[2], d[3]],
                Complex64::new(a[0], a[1]),
                Complex64::new(a[2], a[3]),
            )
            .map(StateInput::X)
            .map_err(|e| CliError::Validation(format!("invalid X state: {e}")))
        }
        other => Err(lines.error(
            line,
            column,
            format!("unknown format '{other}', expected 'DM4' or 'X'"),
        )),
    }
}

pub fn read_state(path: &Path) -> Result<StateInput, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    parse_state(path, &text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<StateInput, CliError> {
        parse_state(Path::new("s.txt"), text)
    }

    fn parse_err(text: &str) -> (usize, usize, String) {
        match parse(text) {
            Err(CliError::Parse {
                line,
                column,
                message,
                ..
            }) => (line, column, message),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn reads_x_file() {
        let s = parse("X\n0.5 0 0 0.5\n0.5 0 0 0\n").unwrap();
        let StateInput::X(p) = s else { panic!() };
        assert_eq!(p.d, [0.5, 0.0, 0.0, 0.5]);
        assert_eq!(p.a03, Complex64::new(0.5, 0.0));
    }

    #[test]
    fn reads_dm4_file_with_scientific_notation() {
        let mut text = String::from("DM4\n");
        for i in 0..4 {
            for j in 0..4 {
                text.push_str(if i == j { "2.5e-1 0\n" } else { "0 -0.0\n" });
            }
        }
        assert_eq!(
            parse(&text).unwrap(),
            StateInput::Dm4(DensityMatrix4::maximally_mixed())
        );
    }

    #[test]
    fn reports_positions() {
        assert_eq!(parse_err("X\n0.5 0 abc 0.5\n0 0 0 0\n").0, 2);
        assert_eq!(parse_err("X\n0.5 0 abc 0.5\n0 0 0 0\n").1, 7);
        let (line, col, msg) = parse_err("  Y\n");
        assert_eq!((line, col), (1, 3));
        assert!(msg.contains("unknown format"));
        let (line, _, msg) = parse_err("X\n0.5 0 0 0.5\n");
        assert_eq!(line, 3);
        assert!(msg.contains("file ended"));
        let (line, col, _) = parse_err("X\n0.5 0 0 0.5 9\n0 0 0 0\n");
        assert_eq!((line, col), (2, 13));
        let (line, _, _) = parse_err("X\n0.5 0 0 0.5\n0 0 0 0\nextra\n");
        assert_eq!(line, 4);
        assert_eq!(parse_err("X\n0.5 0 0 NaN\n0 0 0 0\n").1, 9);
    }

    #[test]
    fn invalid_states_are_validation_errors() {
        assert!(matches!(
            parse("X\n0.5 0 0 0.6\n0 0 0 0\n"),
            Err(CliError::Validation(_))
        ));
        let mut text = String::from("DM4\n");
        for k in 0..16 {
            text.push_str(if k == 0 { "1.5 0\n" } else { "0 0\n" });
        }
        let err = parse(&text).unwrap_err();
        assert!(matches!(&err, CliError::Validation(m) if m.contains("trace")));
        assert_eq!(err.exit_code(), 3);
    }
}
