//! Named reference states, written in ket notation.

use crate::error::Result;
use crate::ket::parse_state;
use crate::state::StateVector;

pub const SEP3: &str = "|000>";
pub const B1: &str = "1/sqrt(2)(|000>+|011>)";
pub const B2: &str = "1/sqrt(2)(|000>+|101>)";
pub const B3: &str = "1/sqrt(2)(|000>+|110>)";
pub const W3: &str = "1/sqrt(3)(|100>+|010>+|001>)";
pub const GHZ: &str = "1/sqrt(2)(|000>+|111>)";
pub const EPS: &str = "1/sqrt(2)(|00>+|11>)";
pub const HS: &str = "1/sqrt(6)(|1100>+|0011>+w|1001>+w|0110>+w^2|1010>+w^2|0101>)";
pub const BSSB4: &str = "1/2(|0000>+|+>|011>+|1101>+|->|110>)";
pub const BSSB5: &str =
    "1/2(|000>(|01>-|10>) + |010>(|00>-|11>) + |100>(|01>+|10>) + |111>(|00>+|11>))";

/// `|0...0>` on `n` qubits, as an expression.
pub fn separable_expr(n: usize) -> String {
    format!("|{}>", "0".repeat(n))
}

/// `(|0...0> + |1...1>)/sqrt 2`.
pub fn schrodinger_expr(n: usize) -> String {
    format!("1/sqrt(2)(|{}>+|{}>)", "0".repeat(n), "1".repeat(n))
}

/// Equal superposition of all `n`-bit kets with exactly `k` ones, listed in
/// decreasing binary order.
pub fn dicke_expr(n: usize, k: usize) -> String {
    let kets: Vec<String> = (0..1usize << n)
        .rev()
        .filter(|i| i.count_ones() as usize == k)
        .map(|i| format!("|{:0width$b}>", i, width = n))
        .collect();
    format!("1/sqrt({})({})", kets.len(), kets.join("+"))
}

pub fn named(expr: &str) -> Result<StateVector> {
    parse_state(expr)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dicke_listing() {
        assert_eq!(
            dicke_expr(4, 1),
            "1/sqrt(4)(|1000>+|0100>+|0010>+|0001>)"
        );
        assert_eq!(dicke_expr(3, 1), "1/sqrt(3)(|100>+|010>+|001>)");
        assert_eq!(named(&dicke_expr(3, 1)).unwrap(), named(W3).unwrap());
        assert_eq!(named(&dicke_expr(4, 0)).unwrap(), named(&separable_expr(4)).unwrap());
    }

    #[test]
    fn catalog_is_normalized_as_written() {
        use crate::ket::{evaluate, parse};
        for e in [SEP3, B1, B2, B3, W3, GHZ, EPS, HS, BSSB4] {
            evaluate(&parse(e).unwrap(), false).unwrap();
        }
        // the two-qubit kets inside BSSB5 are written without their 1/sqrt 2
        assert!(evaluate(&parse(BSSB5).unwrap(), false).is_err());
        assert_eq!(named(BSSB5).unwrap().n(), 5);
    }
}
