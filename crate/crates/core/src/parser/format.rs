use std::cmp::Ordering;
use std::fmt::Write;

use num_traits::{One, Signed};

use crate::symplectic::{Observable, Poly, Rational, Scalar};

const OBSERVABLE_NAMES: [&str; 6] = ["q1", "q2", "p1", "p2", "theta", "hbar"];
/// Factors are written parameters first: `theta*p1*p2`.
const OBSERVABLE_PRINT_ORDER: [usize; 6] = [4, 5, 0, 1, 2, 3];

const SCALAR_NAMES: [&str; 2] = ["theta", "hbar"];
const SCALAR_PRINT_ORDER: [usize; 2] = [0, 1];

/// Canonical text of an observable.
///
/// Monomials are sorted by total degree, then lexicographically with
/// `q1 < q2 < p1 < p2 < theta < hbar` (higher power of an earlier variable
/// first). The output parses back to the same observable.
pub fn format(f: &Observable) -> String {
    render(f, &OBSERVABLE_NAMES, &OBSERVABLE_PRINT_ORDER)
}

pub fn format_scalar(s: &Scalar) -> String {
    render(s, &SCALAR_NAMES, &SCALAR_PRINT_ORDER)
}

fn graded_lex<const N: usize>(a: &[u32; N], b: &[u32; N]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| b.cmp(a))
}

fn render<const N: usize>(p: &Poly<N>, names: &[&str; N], order: &[usize; N]) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut terms: Vec<(&[u32; N], &Rational)> = p.terms().collect();
    terms.sort_by(|x, y| graded_lex(x.0, y.0));
    let mut out = String::new();
    for (k, (e, c)) in terms.into_iter().enumerate() {
        let negative = c.is_negative();
        match (k, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let magnitude = c.abs();
        let factors: Vec<String> = order
            .iter()
            .filter(|&&i| e[i] > 0)
            .map(|&i| match e[i] {
                1 => names[i].to_string(),
                k => format!("{}^{k}", names[i]),
            })
            .collect();
        if factors.is_empty() {
            write!(out, "{magnitude}").expect("string write");
        } else if magnitude.is_one() {
            out.push_str(&factors.join("*"));
        } else {
            write!(out, "{magnitude}*{}", factors.join("*")).expect("string write");
        }
    }
    out
}

impl std::fmt::Display for Poly<6> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&format(self))
    }
}

impl std::fmt::Display for Poly<2> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&format_scalar(self))
    }
}
