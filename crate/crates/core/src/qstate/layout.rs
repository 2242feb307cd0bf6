use crate::{Error, Result};

pub const DEFAULT_MAX_QUBITS: usize = 14;

/// `k` system qubits followed by `n` environment qubits.
///
/// The qubit cap travels with the layout so that registers derived from it
/// (tensor products, marginals) are checked against the same limit.
#[derive(Clone, Copy, Debug)]
pub struct RegisterLayout {
    k: usize,
    n: usize,
    max_qubits: usize,
}

impl PartialEq for RegisterLayout {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.n == other.n
    }
}

impl Eq for RegisterLayout {}

impl RegisterLayout {
    pub fn new(k: usize, n: usize) -> Result<Self> {
        Self::with_cap(k, n, DEFAULT_MAX_QUBITS)
    }

    pub fn with_cap(k: usize, n: usize, max_qubits: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::invalid("k", "at least one system qubit is required"));
        }
        Self::marginal(k, n, max_qubits)
    }

    /// A layout that may lack system qubits, as produced by partial traces.
    pub fn marginal(k: usize, n: usize, max_qubits: usize) -> Result<Self> {
        if k + n == 0 {
            return Err(Error::invalid("layout", "empty register"));
        }
        if k + n > max_qubits {
            return Err(Error::TooManyQubits { qubits: k + n, cap: max_qubits });
        }
        Ok(RegisterLayout { k, n, max_qubits })
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn qubits(&self) -> usize {
        self.k + self.n
    }

    #[inline]
    pub fn dim(&self) -> usize {
        1 << self.qubits()
    }

    pub fn max_qubits(&self) -> usize {
        self.max_qubits
    }

    /// Global position of environment qubit `j` (0-based).
    pub fn env_qubit(&self, j: usize) -> usize {
        self.k + j
    }

    pub fn is_system(&self, q: usize) -> bool {
        q < self.k
    }

    /// Bit shift of qubit `q` inside a basis index.
    #[inline]
    pub fn shift(&self, q: usize) -> usize {
        self.qubits() - 1 - q
    }

    pub fn split_index(&self, index: usize) -> (usize, usize) {
        (index >> self.n, index & ((1 << self.n) - 1))
    }

    pub fn join_index(&self, s: usize, e: usize) -> usize {
        (s << self.n) | e
    }

    pub fn check_qubit(&self, q: usize) -> Result<()> {
        if q < self.qubits() {
            Ok(())
        } else {
            Err(Error::invalid(
                "qubit",
                format!("index {q} outside a register of {}", self.qubits()),
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_round_trip() {
        let l = RegisterLayout::new(2, 3).unwrap();
        for y in 0..l.dim() {
            let (s, e) = l.split_index(y);
            assert!(s < 4 && e < 8);
            assert_eq!(l.join_index(s, e), y);
        }
        assert_eq!(l.shift(0), 4);
        assert_eq!(l.shift(l.env_qubit(2)), 0);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            RegisterLayout::new(1, 14),
            Err(Error::TooManyQubits { qubits: 15, cap: 14 })
        ));
        assert!(RegisterLayout::with_cap(1, 14, 15).is_ok());
        assert!(RegisterLayout::new(0, 3).is_err());
    }
}
