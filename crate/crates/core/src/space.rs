//! Ambient spaces: a product of projective spaces `P^{k_1} x ... x P^{k_r}`
//! with one named homogeneous coordinate block per factor.
//!
//! Block `i` owns `k_i + 1` variables named `<prefix_i>0 .. <prefix_i>{k_i}`
//! where the prefixes run through `x, y, z, u, v, w` in factor order.  All
//! exponent vectors used by the polynomial layer are indexed by the *global*
//! variable index: block offsets are laid out consecutively.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub const BLOCK_PREFIXES: [char; 6] = ['x', 'y', 'z', 'u', 'v', 'w'];

/// Product of projective spaces.  `factors[i]` is the dimension of the i-th
/// factor (so the block has `factors[i] + 1` homogeneous coordinates).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AmbientSpace {
    factors: Vec<usize>,
}

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum SpaceError {
    #[error("a product space needs at least one factor")]
    NoFactors,
    #[error("at most 6 factors are supported (coordinate prefixes run out), got {0}")]
    TooManyFactors(usize),
    #[error("factor {0} has dimension 0; projective factors must have dimension >= 1")]
    ZeroDimFactor(usize),
}

impl AmbientSpace {
    pub fn product(factors: &[usize]) -> Result<Self, SpaceError> {
        if factors.is_empty() {
            return Err(SpaceError::NoFactors);
        }
        if factors.len() > BLOCK_PREFIXES.len() {
            return Err(SpaceError::TooManyFactors(factors.len()));
        }
        for (i, &k) in factors.iter().enumerate() {
            if k == 0 {
                return Err(SpaceError::ZeroDimFactor(i));
            }
        }
        Ok(AmbientSpace {
            factors: factors.to_vec(),
        })
    }

    pub fn projective(k: usize) -> Result<Self, SpaceError> {
        Self::product(&[k])
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn num_factors(&self) -> usize {
        self.factors.len()
    }

    /// Total dimension `k = k_1 + ... + k_r`.
    pub fn dim(&self) -> usize {
        self.factors.iter().sum()
    }

    /// Total number of homogeneous coordinates across all blocks.
    pub fn num_vars(&self) -> usize {
        self.factors.iter().map(|k| k + 1).sum()
    }

    /// Global index of the first variable of block `b`.
    pub fn block_offset(&self, b: usize) -> usize {
        self.factors[..b].iter().map(|k| k + 1).sum()
    }

    /// Number of variables in block `b` (`k_b + 1`).
    pub fn block_len(&self, b: usize) -> usize {
        self.factors[b] + 1
    }

    /// Global index range of block `b`.
    pub fn block_range(&self, b: usize) -> core::ops::Range<usize> {
        let off = self.block_offset(b);
        off..off + self.block_len(b)
    }

    /// Block containing global variable `v`.
    pub fn block_of_var(&self, v: usize) -> usize {
        let mut off = 0;
        for (b, &k) in self.factors.iter().enumerate() {
            off += k + 1;
            if v < off {
                return b;
            }
        }
        panic!("variable index {v} out of range for {self}");
    }

    pub fn var_name(&self, v: usize) -> String {
        let b = self.block_of_var(v);
        let within = v - self.block_offset(b);
        let mut s = String::new();
        s.push(BLOCK_PREFIXES[b]);
        s.push_str(itoa(within).as_str());
        s
    }

    /// Resolve a variable name like `x0` or `y12` to its global index.
    pub fn resolve_var(&self, name: &str) -> Option<usize> {
        let mut chars = name.chars();
        let prefix = chars.next()?;
        let b = BLOCK_PREFIXES.iter().position(|&p| p == prefix)?;
        if b >= self.factors.len() {
            return None;
        }
        let rest = chars.as_str();
        if rest.is_empty() || rest.len() > 6 || !rest.bytes().all(|c| c.is_ascii_digit()) {
            return None;
        }
        // reject leading zeros in multi-digit indices so names are canonical
        if rest.len() > 1 && rest.starts_with('0') {
            return None;
        }
        let idx: usize = rest.parse().ok()?;
        if idx >= self.block_len(b) {
            return None;
        }
        Some(self.block_offset(b) + idx)
    }
}

impl fmt::Display for AmbientSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, k) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" x ")?;
            }
            write!(f, "P^{k}")?;
        }
        Ok(())
    }
}

fn itoa(mut n: usize) -> String {
    if n == 0 {
        return String::from("0");
    }
    let mut digits = Vec::new();
    while n > 0 {
        digits.push(b'0' + (n % 10) as u8);
        n /= 10;
    }
    digits.reverse();
    String::from_utf8(digits).expect("ascii digits")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projective_plane_layout() {
        let s = AmbientSpace::projective(2).unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(s.num_vars(), 3);
        assert_eq!(s.var_name(0), "x0");
        assert_eq!(s.var_name(2), "x2");
        assert_eq!(s.resolve_var("x1"), Some(1));
        assert_eq!(s.resolve_var("x3"), None);
        assert_eq!(s.resolve_var("y0"), None);
    }

    #[test]
    fn product_layout() {
        let s = AmbientSpace::product(&[1, 2]).unwrap();
        assert_eq!(s.dim(), 3);
        assert_eq!(s.num_vars(), 5);
        assert_eq!(s.block_offset(1), 2);
        assert_eq!(s.var_name(1), "x1");
        assert_eq!(s.var_name(2), "y0");
        assert_eq!(s.resolve_var("y2"), Some(4));
        assert_eq!(s.block_of_var(4), 1);
        assert_eq!(alloc::format!("{s}"), "P^1 x P^2");
    }

    #[test]
    fn rejects_bad_shapes() {
        assert_eq!(AmbientSpace::product(&[]), Err(SpaceError::NoFactors));
        assert_eq!(
            AmbientSpace::product(&[1, 0]),
            Err(SpaceError::ZeroDimFactor(1))
        );
        assert_eq!(
            AmbientSpace::product(&[1; 7]),
            Err(SpaceError::TooManyFactors(7))
        );
    }

    #[test]
    fn canonical_names_reject_padding() {
        let s = AmbientSpace::projective(11).unwrap();
        assert_eq!(s.resolve_var("x10"), Some(10));
        assert_eq!(s.resolve_var("x01"), None);
    }
}
