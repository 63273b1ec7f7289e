//! Text rendering shared by the subcommands.

use num_complex::Complex64 as C64;

use crate::state::StateVector;

/// Components below this are printed as zero in rendered kets and points.
pub const DISPLAY_ZERO: f64 = 1e-14;

/// Shortest text that parses back to the same `f64`; scientific notation
/// for very small or large magnitudes.
pub fn num(x: f64) -> String {
    format!("{x:?}")
}

/// Plain positional decimal, as accepted by the ket grammar.
pub fn decimal(x: f64) -> String {
    format!("{x}")
}

fn clean(x: f64) -> f64 {
    if x.abs() < DISPLAY_ZERO {
        0.0
    } else {
        x
    }
}

/// Complex number as a scalar the ket grammar accepts.
pub fn complex(c: C64) -> String {
    let (re, im) = (clean(c.re), clean(c.im));
    match (re == 0.0, im == 0.0) {
        (_, true) => decimal(re),
        (true, false) => format!("{}*i", decimal(im)),
        (false, false) if im < 0.0 => format!("({} - {}*i)", decimal(re), decimal(-im)),
        (false, false) => format!("({} + {}*i)", decimal(re), decimal(im)),
    }
}

/// Ket expression of `psi` with decimal coefficients.
pub fn render_state(psi: &StateVector) -> String {
    let mut out = String::new();
    for (k, a) in psi.amps().iter().enumerate() {
        let c = C64::new(clean(a.re), clean(a.im));
        if c.re == 0.0 && c.im == 0.0 {
            continue;
        }
        let mut text = complex(c);
        let negative = text.starts_with('-');
        if negative {
            text.remove(0);
        }
        match (out.is_empty(), negative) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        if text != "1" {
            out.push_str(&text);
        }
        out.push_str(&format!("|{:0width$b}>", k, width = psi.n()));
    }
    if out.is_empty() {
        out = format!("0|{}>", "0".repeat(psi.n()));
    }
    out
}

/// `[z0:z1:...]` with each coordinate rendered by [`complex`].
pub fn render_point(coords: &[C64]) -> String {
    let parts: Vec<String> = coords.iter().map(|&c| complex(c)).collect();
    format!("[{}]", parts.join(":"))
}

/// Left-aligned columns separated by two spaces.
pub fn aligned(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            if c + 1 == row.len() {
                line.push_str(cell);
            } else {
                line.push_str(&format!("{:<w$}  ", cell, w = widths[c]));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ket::parse_state;

    #[test]
    fn numbers_round_trip() {
        for x in [0.0, 1.0, 8.0 / 9.0, 1e-9, -8.881784197001252e-16, 1.0 / 3.0, 1e300] {
            assert_eq!(num(x).parse::<f64>().unwrap(), x);
            assert_eq!(decimal(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn rendered_states_parse_back() {
        let exprs = [
            "|0>",
            "1/sqrt(2)(|00>-|11>)",
            "1/2(|00> + i|01> - |10> + (1/2 - 1/2*i)*sqrt(2)|11>)",
        ];
        for e in exprs {
            let psi = parse_state(e).unwrap();
            let back = parse_state(&render_state(&psi)).unwrap();
            assert!(back.approx_eq(&psi, 1e-15), "{e} -> {}", render_state(&psi));
        }
    }

    #[test]
    fn point_text() {
        let c = [C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, -0.5)];
        assert_eq!(render_point(&c), "[1:0:-0.5*i]");
    }

    #[test]
    fn alignment() {
        let rows = vec![
            vec!["a".to_string(), "bb".to_string()],
            vec!["ccc".to_string(), "d".to_string()],
        ];
        assert_eq!(aligned(&rows), "a    bb\nccc  d\n");
    }
}
