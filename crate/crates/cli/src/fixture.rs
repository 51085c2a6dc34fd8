//! Plain-text channel fixtures: one complex coefficient per line as two
//! whitespace-separated floats `re im`, the `N_A` lines of user A followed by
//! the `N_B` lines of user B. Blank lines and lines starting with `#` are
//! ignored.

use pnc_tas::{ChannelRealization, Complex};

#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

pub fn parse_channels(text: &str, n_a: usize, n_b: usize) -> Result<ChannelRealization, ParseError> {
    let mut values = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        last_line = i + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| ParseError { line: i + 1, message };
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(err(format!("expected 're im', found {} field(s)", fields.len())));
        }
        let re: f64 = fields[0].parse().map_err(|_| err(format!("bad real part '{}'", fields[0])))?;
        let im: f64 = fields[1].parse().map_err(|_| err(format!("bad imaginary part '{}'", fields[1])))?;
        if !re.is_finite() || !im.is_finite() {
            return Err(err("non-finite coefficient".into()));
        }
        if values.len() == n_a + n_b {
            return Err(err(format!("more than {} coefficients", n_a + n_b)));
        }
        values.push(Complex::new(re, im));
    }
    if values.len() != n_a + n_b {
        return Err(ParseError {
            line: last_line,
            message: format!("expected {} coefficients ({n_a} for A, {n_b} for B), found {}", n_a + n_b, values.len()),
        });
    }
    let coeffs_b = values.split_off(n_a);
    Ok(ChannelRealization::new(values, coeffs_b))
}

/// `RE,IM` as used by the inline `--h-a` / `--h-b` flags.
pub fn parse_inline(s: &str) -> Result<Complex, String> {
    let (re, im) = s.split_once(',').ok_or_else(|| format!("expected RE,IM, got '{s}'"))?;
    let re: f64 = re.trim().parse().map_err(|_| format!("bad real part in '{s}'"))?;
    let im: f64 = im.trim().parse().map_err(|_| format!("bad imaginary part in '{s}'"))?;
    Ok(Complex::new(re, im))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fixture() {
        let text = "# user A\n0.5 0.5\n0.5 -0.25\n\n0.5 -0.4\n0.5 0.35\n";
        let ch = parse_channels(text, 2, 2).unwrap();
        assert_eq!(ch.coeffs_a.len(), 2);
        assert_eq!(ch.coeffs_b[1], Complex::new(0.5, 0.35));
    }

    #[test]
    fn reports_line_numbers() {
        let e = parse_channels("1 0\n1 x\n", 1, 1).unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_channels("1 0\n1 0 3\n", 1, 1).unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_channels("1 0\n", 1, 1).unwrap_err();
        assert!(e.message.contains("expected 2"));
        let e = parse_channels("1 0\n1 0\n1 0\n", 1, 1).unwrap_err();
        assert_eq!(e.line, 3);
    }

    #[test]
    fn inline_values() {
        assert_eq!(parse_inline("-0.5,0.25"), Ok(Complex::new(-0.5, 0.25)));
        assert!(parse_inline("1;2").is_err());
    }
}
