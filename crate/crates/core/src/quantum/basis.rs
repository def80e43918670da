use std::fmt;

use crate::error::{Error, Result};

/// Hilbert space dimension of four qubits.
pub const DIM: usize = 16;

/// Position of a qubit in the 4-qubit register, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QubitIndex(u8);

impl QubitIndex {
    pub const A_FIRST: QubitIndex = QubitIndex(1);
    pub const B_FIRST: QubitIndex = QubitIndex(2);
    pub const A_SECOND: QubitIndex = QubitIndex(3);
    pub const B_SECOND: QubitIndex = QubitIndex(4);

    pub fn new(position: i64) -> Result<Self> {
        if (1..=4).contains(&position) {
            Ok(QubitIndex(position as u8))
        } else {
            Err(Error::Index(position))
        }
    }

    pub fn position(self) -> u8 {
        self.0
    }

    /// Weight of this qubit's bit in the flat basis index.
    pub(crate) fn mask(self) -> usize {
        1 << (4 - self.0 as usize)
    }
}

/// One of the two rounds of play.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Stage {
    First,
    Second,
}

impl Stage {
    pub const ALL: [Stage; 2] = [Stage::First, Stage::Second];

    pub fn from_number(n: i64) -> Result<Self> {
        match n {
            1 => Ok(Stage::First),
            2 => Ok(Stage::Second),
            other => Err(Error::Domain(format!("stage must be 1 or 2, got {other}"))),
        }
    }

    pub fn number(self) -> u8 {
        match self {
            Stage::First => 1,
            Stage::Second => 2,
        }
    }

    /// The (player A, player B) qubits acted on in this stage.
    pub fn qubits(self) -> (QubitIndex, QubitIndex) {
        match self {
            Stage::First => (QubitIndex::A_FIRST, QubitIndex::B_FIRST),
            Stage::Second => (QubitIndex::A_SECOND, QubitIndex::B_SECOND),
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

/// Computational basis label `|ijkl>` with every symbol in `{1, 2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisLabel([u8; 4]);

impl BasisLabel {
    pub fn new(i: u8, j: u8, k: u8, l: u8) -> Result<Self> {
        let symbols = [i, j, k, l];
        if symbols.iter().all(|s| *s == 1 || *s == 2) {
            Ok(BasisLabel(symbols))
        } else {
            Err(Error::Domain(format!(
                "basis symbols must be 1 or 2, got {i}{j}{k}{l}"
            )))
        }
    }

    /// Parses a four-character label such as `"1122"`.
    pub fn parse(s: &str) -> Result<Self> {
        let digits: Vec<u8> = s.bytes().map(|b| b.wrapping_sub(b'0')).collect();
        if digits.len() != 4 {
            return Err(Error::Domain(format!("basis label must have 4 symbols: {s:?}")));
        }
        Self::new(digits[0], digits[1], digits[2], digits[3])
    }

    pub fn from_index(index: usize) -> Option<Self> {
        if index >= DIM {
            return None;
        }
        let bit = |shift: usize| 1 + ((index >> shift) & 1) as u8;
        Some(BasisLabel([bit(3), bit(2), bit(1), bit(0)]))
    }

    pub fn index(self) -> usize {
        self.0
            .iter()
            .fold(0, |acc, s| (acc << 1) | (*s as usize - 1))
    }

    pub fn symbol(self, qubit: QubitIndex) -> u8 {
        self.0[qubit.position() as usize - 1]
    }

    pub fn symbols(self) -> [u8; 4] {
        self.0
    }

    pub fn flipped(self, qubit: QubitIndex) -> Self {
        let mut s = self.0;
        let slot = qubit.position() as usize - 1;
        s[slot] = 3 - s[slot];
        BasisLabel(s)
    }

    pub fn all() -> impl Iterator<Item = BasisLabel> {
        (0..DIM).filter_map(BasisLabel::from_index)
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [i, j, k, l] = self.0;
        write!(f, "{i}{j}{k}{l}")
    }
}
