//! Coordinate charts with a normal-crossing divisor `x_1 ⋯ x_m = 0`.

use std::sync::Arc;

use crate::error::{Error, Result};

/// Named coordinates, divisorial ones first, each group sorted by name.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Chart {
    vars: Vec<String>,
    m: usize,
    half_dim: Option<usize>,
}

pub type ChartRef = Arc<Chart>;

impl Chart {
    /// Build a chart and move it into canonical order.
    pub fn new<S: AsRef<str>, T: AsRef<str>>(vars: &[S], divisor_vars: &[T]) -> Result<ChartRef> {
        let mut seen = std::collections::BTreeSet::new();
        for v in vars {
            let v = v.as_ref();
            if !is_identifier(v) {
                return Err(Error::Input(format!("bad variable name {v:?}")));
            }
            if !seen.insert(v.to_string()) {
                return Err(Error::Input(format!("duplicate variable {v}")));
            }
        }
        let mut div: Vec<String> = Vec::new();
        for v in divisor_vars {
            let v = v.as_ref().to_string();
            if !seen.contains(&v) {
                return Err(Error::Input(format!("divisor variable {v} not in chart")));
            }
            if div.contains(&v) {
                return Err(Error::Input(format!("duplicate divisor variable {v}")));
            }
            div.push(v);
        }
        div.sort();
        let mut rest: Vec<String> = seen.into_iter().filter(|v| !div.contains(v)).collect();
        rest.sort();
        let m = div.len();
        div.extend(rest);
        Ok(Arc::new(Chart { vars: div, m, half_dim: None }))
    }

    /// Chart without divisor.
    pub fn plain<S: AsRef<str>>(vars: &[S]) -> Result<ChartRef> {
        Chart::new(vars, &[] as &[&str])
    }

    /// Chart `x1..xd` with the first `m` divisorial.
    pub fn standard(d: usize, m: usize) -> ChartRef {
        let vars: Vec<String> = (1..=d).map(|i| format!("x{i}")).collect();
        Chart::new(&vars, &vars[..m]).expect("standard chart")
    }

    /// Chart `x1..xn, y1..yn` with `x1..xk` divisorial and `d = 2n` recorded.
    pub fn symplectic(n: usize, k: usize) -> ChartRef {
        let mut vars: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        vars.extend((1..=n).map(|i| format!("y{i}")));
        let div: Vec<String> = (1..=k).map(|i| format!("x{i}")).collect();
        let c = Chart::new(&vars, &div).expect("symplectic chart");
        Arc::new(c.with_half_dim(n).expect("even"))
    }

    pub fn with_half_dim(&self, n: usize) -> Result<Chart> {
        if 2 * n != self.vars.len() {
            return Err(Error::Input(format!("dimension {} is not 2*{n}", self.vars.len())));
        }
        let mut c = self.clone();
        c.half_dim = Some(n);
        Ok(c)
    }

    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    /// Number of divisorial variables.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn half_dim(&self) -> Option<usize> {
        self.half_dim
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn divisor_vars(&self) -> &[String] {
        &self.vars[..self.m]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn is_divisorial(&self, i: usize) -> bool {
        i < self.m
    }

    /// Bitmask of the divisorial indices.
    pub fn divisor_mask(&self) -> u32 {
        (1u32 << self.m) - 1
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order() {
        let c = Chart::new(&["y", "b", "x", "a"], &["x", "b"]).unwrap();
        assert_eq!(c.vars(), &["b", "x", "a", "y"]);
        assert_eq!(c.m(), 2);
        assert_eq!(c.divisor_mask(), 0b11);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Chart::plain(&["x", "x"]).is_err());
        assert!(Chart::new(&["x"], &["y"]).is_err());
        assert!(Chart::plain(&["1x"]).is_err());
    }

    #[test]
    fn symplectic_layout() {
        let c = Chart::symplectic(2, 1);
        assert_eq!(c.vars(), &["x1", "x2", "y1", "y2"]);
        assert_eq!(c.m(), 1);
        assert_eq!(c.half_dim(), Some(2));
    }
}
