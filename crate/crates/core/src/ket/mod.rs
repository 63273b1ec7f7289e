//! Dirac-notation input: parsing, exact expansion and evaluation to states.

mod exact;
mod parser;
mod permute;

use std::collections::BTreeMap;

use num_complex::Complex64 as C64;

pub use exact::ExactScalar;
pub use parser::{parse, ParseError};
pub use permute::{permute_qubits, Permutation};

use crate::error::{Error, Result};
use crate::state::StateVector;

/// Largest qubit count an expression may expand to.
pub const MAX_QUBITS: usize = 26;

/// Norm tolerance for `evaluate(.., normalize = false)`.
pub const EVAL_NORM_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedKet {
    /// `(|0> + |1>)/sqrt 2`
    Plus,
    /// `(|0> - |1>)/sqrt 2`
    Minus,
}

#[derive(Debug, Clone, PartialEq)]
pub enum KetNode {
    Sum(Vec<KetNode>),
    Scale(ExactScalar, Box<KetNode>),
    Tensor(Vec<KetNode>),
    Basis(String),
    Named(NamedKet),
}

#[derive(Debug, Clone, PartialEq)]
pub struct KetExpression {
    pub root: KetNode,
}

/// Fully expanded ket: exact coefficient per basis index.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactKet {
    pub n: usize,
    pub terms: BTreeMap<u64, ExactScalar>,
}

impl ExactKet {
    fn single(n: usize, index: u64, c: ExactScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(index, c);
        }
        Self { n, terms }
    }

    fn scale(mut self, c: &ExactScalar) -> Self {
        for v in self.terms.values_mut() {
            *v = &*v * c;
        }
        self.terms.retain(|_, v| !v.is_zero());
        self
    }

    fn add(mut self, other: ExactKet) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::MixedArity(self.n, other.n));
        }
        for (k, v) in other.terms {
            let sum = match self.terms.remove(&k) {
                Some(existing) => &existing + &v,
                None => v,
            };
            if !sum.is_zero() {
                self.terms.insert(k, sum);
            }
        }
        Ok(self)
    }

    fn tensor(&self, other: &ExactKet) -> Result<Self> {
        let n = self.n + other.n;
        if n > MAX_QUBITS {
            return Err(Error::TooLarge(format!("{n} qubits exceeds {MAX_QUBITS}")));
        }
        let mut terms = BTreeMap::new();
        for (ka, va) in &self.terms {
            for (kb, vb) in &other.terms {
                terms.insert((ka << other.n) | kb, va * vb);
            }
        }
        Ok(Self { n, terms })
    }

    /// Canonical pretty-printed form, parseable by [`parse`].
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return format!("0|{}>", "0".repeat(self.n));
        }
        let mut out = String::new();
        for (idx, (&k, c)) in self.terms.iter().enumerate() {
            let bits = format!("{:0width$b}", k, width = self.n);
            let mut text = c.render();
            let negative = text.starts_with('-');
            if negative {
                text.remove(0);
            }
            match (idx, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if text != "1" {
                out.push_str(&text);
            }
            out.push_str(&format!("|{bits}>"));
        }
        out
    }

    pub fn to_amplitudes(&self) -> Vec<C64> {
        let mut amps = vec![C64::new(0.0, 0.0); 1 << self.n];
        for (&k, c) in &self.terms {
            amps[k as usize] = c.to_complex();
        }
        amps
    }
}

impl KetExpression {
    /// Expands the tree into exact per-basis coefficients.
    pub fn expand(&self) -> Result<ExactKet> {
        expand_node(&self.root)
    }
}

fn expand_node(node: &KetNode) -> Result<ExactKet> {
    match node {
        KetNode::Basis(bits) => {
            if bits.len() > MAX_QUBITS {
                return Err(Error::TooLarge(format!("{}-qubit ket", bits.len())));
            }
            let index = u64::from_str_radix(bits, 2)
                .map_err(|e| Error::InvalidArgument(e.to_string()))?;
            Ok(ExactKet::single(bits.len(), index, ExactScalar::one()))
        }
        KetNode::Named(named) => {
            let h = &ExactScalar::fraction(1, 2) * &ExactScalar::sqrt(2);
            let second = match named {
                NamedKet::Plus => h.clone(),
                NamedKet::Minus => -&h,
            };
            ExactKet::single(1, 0, h).add(ExactKet::single(1, 1, second))
        }
        KetNode::Scale(c, inner) => Ok(expand_node(inner)?.scale(c)),
        KetNode::Tensor(parts) => {
            let mut iter = parts.iter();
            let first = iter
                .next()
                .ok_or_else(|| Error::InvalidArgument("empty tensor product".into()))?;
            let mut acc = expand_node(first)?;
            for p in iter {
                acc = acc.tensor(&expand_node(p)?)?;
            }
            Ok(acc)
        }
        KetNode::Sum(terms) => {
            let mut iter = terms.iter();
            let first = iter
                .next()
                .ok_or_else(|| Error::InvalidArgument("empty sum".into()))?;
            let mut acc = expand_node(first)?;
            for t in iter {
                acc = acc.add(expand_node(t)?)?;
            }
            Ok(acc)
        }
    }
}

/// Converts an expression to a state.
///
/// With `normalize` the result is rescaled to unit norm; otherwise the
/// expression must already have norm 1 within [`EVAL_NORM_TOL`].
pub fn evaluate(expr: &KetExpression, normalize: bool) -> Result<StateVector> {
    let exact = expr.expand()?;
    if exact.terms.is_empty() {
        return Err(Error::ZeroState);
    }
    let amps = exact.to_amplitudes();
    if !normalize {
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > EVAL_NORM_TOL {
            return Err(Error::NotNormalized(norm));
        }
    }
    StateVector::from_amplitudes(amps, true).map_err(|e| match e {
        Error::NotPowerOfTwo(1) => {
            Error::InvalidArgument("a state needs at least one qubit".into())
        }
        other => other,
    })
}

/// `evaluate(parse(text), true)`.
pub fn parse_state(text: &str) -> Result<StateVector> {
    evaluate(&parse(text)?, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn amps_close(a: &StateVector, expect: &[C64]) {
        assert_eq!(a.dim(), expect.len());
        for (x, y) in a.amps().iter().zip(expect) {
            assert!((x - y).norm() < 1e-12, "{x} vs {y}");
        }
    }

    fn real(v: &[f64]) -> Vec<C64> {
        v.iter().map(|&x| C64::new(x, 0.0)).collect()
    }

    #[test]
    fn basis_ket() {
        let e = parse("|000>").unwrap();
        assert_eq!(e.root, KetNode::Basis("000".into()));
        amps_close(&evaluate(&e, false).unwrap(), &real(&[1.0, 0., 0., 0., 0., 0., 0., 0.]));
    }

    #[test]
    fn schrodinger_state() {
        let e = parse("1/sqrt(2)(|000> + |111>)").unwrap();
        match &e.root {
            KetNode::Scale(c, inner) => {
                assert_eq!(*c, &ExactScalar::fraction(1, 2) * &ExactScalar::sqrt(2));
                assert!(matches!(**inner, KetNode::Sum(ref t) if t.len() == 2));
            }
            other => panic!("unexpected {other:?}"),
        }
        let h = std::f64::consts::FRAC_1_SQRT_2;
        amps_close(
            &evaluate(&e, false).unwrap(),
            &real(&[h, 0., 0., 0., 0., 0., 0., h]),
        );
    }

    #[test]
    fn hs_state() {
        let e = parse("1/sqrt(6)(|1100>+|0011>+w|1001>+w|0110>+w^2|1010>+w^2|0101>)").unwrap();
        let s = evaluate(&e, false).unwrap();
        let w = C64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        let c = 1.0 / 6f64.sqrt();
        let a = s.amps();
        assert!((a[0b1100] - c).norm() < 1e-15);
        assert!((a[0b1001] - w * c).norm() < 1e-15);
        assert!((a[0b0101] - w * w * c).norm() < 1e-15);
        assert_eq!(a.iter().filter(|x| x.norm() > 0.0).count(), 6);
    }

    #[test]
    fn bssb4_with_named_kets() {
        let s = parse_state("1/2(|0000>+|+>|011>+|1101>+|->|110>)").unwrap();
        let h = 0.5 * std::f64::consts::FRAC_1_SQRT_2;
        let mut expect = vec![0.0; 16];
        expect[0b0000] = 0.5;
        expect[0b0011] = h;
        expect[0b1011] = h;
        expect[0b1101] = 0.5;
        expect[0b0110] = h;
        expect[0b1110] = -h;
        amps_close(&s, &real(&expect));
    }

    #[test]
    fn cancellation_is_zero_state() {
        assert_eq!(parse_state("|01> - |01>").unwrap_err(), Error::ZeroState);
        assert_eq!(
            parse_state("w|0> + w^2|0> + |0>").unwrap_err(),
            Error::ZeroState
        );
    }

    #[test]
    fn w_state_is_normalized() {
        let s = parse_state("|100>+|010>+|001>").unwrap();
        let t = 1.0 / 3f64.sqrt();
        amps_close(&s, &real(&[0., t, t, 0., t, 0., 0., 0.]));
        let raw = parse("|100>+|010>+|001>").unwrap();
        assert!(matches!(evaluate(&raw, false), Err(Error::NotNormalized(_))));
    }

    #[test]
    fn mixed_arity_rejected() {
        assert_eq!(parse_state("|0> + |01>").unwrap_err(), Error::MixedArity(1, 2));
    }

    #[test]
    fn tensor_spellings_agree() {
        let a = parse_state("|0>|1>(|0>+|1>)").unwrap();
        let b = parse_state("|0> * |1> * (|0>+|1>)").unwrap();
        let c = parse_state("|0>(x)|1>(x)(|0>+|1>)").unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(a, parse_state("|010> + |011>").unwrap());
    }

    #[test]
    fn coefficient_forms() {
        let s = parse_state("(1+i)|0> + 2*sqrt(2)*|1>").unwrap();
        let a = s.amps();
        assert!((a[1] / a[0] - C64::new(1.0, -1.0) * 2f64.sqrt()).norm() < 1e-14);
        let s = parse_state("1/(1+i)|0> - -|1>").unwrap();
        let a = s.amps();
        assert!((a[0] / a[1] - C64::new(0.5, -0.5)).norm() < 1e-14);
        let s = parse_state("0.6|0> + 0.8i|1>").unwrap();
        assert!((s.amps()[1] - C64::new(0.0, 0.8)).norm() < 1e-15);
    }

    #[test]
    fn bssb5_nested_factors() {
        let s = parse_state(
            "1/2(|000>(|01>-|10>) + |010>(|00>-|11>) + |100>(|01>+|10>) + |111>(|00>+|11>))",
        )
        .unwrap();
        assert_eq!(s.n(), 5);
        assert_eq!(s.amps().iter().filter(|x| x.norm() > 0.0).count(), 8);
        assert!((s.amps()[0b00001].re - 0.5 / 2f64.sqrt()).abs() < 1e-15);
        assert!((s.amps()[0b00010].re + 0.5 / 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn parse_errors_carry_position() {
        let e = parse("|01> + |2>").unwrap_err();
        assert_eq!(e.position, 8);
        assert_eq!(e.to_string(), "1:9 expected bitstring, '+' or '-' inside ket found '2'");
        let e = parse("1/sqrt(2)").unwrap_err();
        assert_eq!(e.expected, "ket or '('");
        assert_eq!(e.found, "end of input");
        let e = parse("|0>\n + $").unwrap_err();
        assert_eq!((e.line, e.col), (2, 4));
        let e = parse("(|0> + |1>").unwrap_err();
        assert_eq!(e.expected, "')'");
        assert!(parse("").is_err());
        assert!(parse("1/0|0>").is_err());
        assert!(parse("|0> |1> 2").is_err());
    }

    #[test]
    fn render_is_canonical() {
        let e = parse("1/sqrt(6)(|1100>+w|1001>) - i|0000>").unwrap();
        let exact = e.expand().unwrap();
        assert_eq!(
            exact.render(),
            "-i|0000> + (1/4*sqrt(2)*i - 1/12*sqrt(6))|1001> + 1/6*sqrt(6)|1100>"
        );
        let again = parse(&exact.render()).unwrap().expand().unwrap();
        assert_eq!(again, exact);
    }
}
