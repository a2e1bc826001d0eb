//! The maps W, T and L from GF(4)^n to binary vectors, and the binary linear codes they produce.
//!
//! With `x = a + b w` (a = one part, b = alpha part):
//! W(x) = (a + b | b) of length 2n, T(x) = x + x^2 = b, L(x) = x w + x^2 w^2 = a + b.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bits::BitVec;
use crate::code::F4Space;
use crate::distance::{binary_min_distance, Distance, DistanceError, DistanceOptions};
use crate::gf4::F4Vector;
use crate::linalg::Echelon;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MapKind {
    W,
    T,
    L,
}

impl MapKind {
    pub const ALL: [MapKind; 3] = [MapKind::W, MapKind::T, MapKind::L];

    pub fn image_length(self, n: usize) -> usize {
        match self {
            MapKind::W => 2 * n,
            MapKind::T | MapKind::L => n,
        }
    }
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MapKind::W => "W",
            MapKind::T => "T",
            MapKind::L => "L",
        })
    }
}

impl FromStr for MapKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "W" | "w" => Ok(MapKind::W),
            "T" | "t" => Ok(MapKind::T),
            "L" | "l" => Ok(MapKind::L),
            other => Err(format!("unknown map {other:?} (expected W, T or L)")),
        }
    }
}

pub fn apply_map(kind: MapKind, v: &F4Vector) -> BitVec {
    match kind {
        MapKind::W => v.one.xor(&v.alpha).concat(&v.alpha),
        MapKind::T => v.alpha.clone(),
        MapKind::L => v.one.xor(&v.alpha),
    }
}

/// Tri-state structural flags; `None` means not checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Flags {
    pub reversible: Option<bool>,
    pub self_orthogonal: Option<bool>,
    pub dual_containing: Option<bool>,
    pub self_dual: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryLinearCode {
    length: usize,
    basis: Echelon,
    flags: Flags,
}

impl BinaryLinearCode {
    pub fn from_rows(length: usize, rows: impl IntoIterator<Item = BitVec>) -> Self {
        Self::from_echelon(Echelon::from_owned_rows(length, rows))
    }

    pub fn from_echelon(basis: Echelon) -> Self {
        Self {
            length: basis.ncols(),
            basis,
            flags: Flags::default(),
        }
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn k(&self) -> usize {
        self.basis.rank()
    }

    pub fn basis(&self) -> &Echelon {
        &self.basis
    }

    pub fn flags(&self) -> Flags {
        self.flags
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        v.len() == self.length && self.basis.contains(v)
    }

    /// Euclidean dual.
    pub fn dual(&self) -> BinaryLinearCode {
        BinaryLinearCode::from_rows(self.length, self.basis.orthogonal_complement())
    }

    pub fn is_reversible(&self) -> bool {
        let rev = Echelon::from_owned_rows(self.length, self.basis.rows().iter().map(BitVec::reversed));
        rev.same_space(&self.basis)
    }

    pub fn is_self_orthogonal(&self) -> bool {
        let rows = self.basis.rows();
        rows.iter()
            .enumerate()
            .all(|(i, r)| rows[i..].iter().all(|s| !r.dot(s)))
    }

    pub fn is_dual_containing(&self) -> bool {
        self.basis
            .orthogonal_complement()
            .iter()
            .all(|v| self.basis.contains(v))
    }

    /// Computes and stores all four flags.
    pub fn analyze(&mut self) -> Flags {
        let so = self.is_self_orthogonal();
        let dc = self.is_dual_containing();
        self.flags = Flags {
            reversible: Some(self.is_reversible()),
            self_orthogonal: Some(so),
            dual_containing: Some(dc),
            self_dual: Some(so && dc && 2 * self.k() == self.length),
        };
        self.flags
    }

    pub fn min_distance(&self, opts: &DistanceOptions) -> Result<Distance<BitVec>, DistanceError> {
        binary_min_distance(&self.basis, opts)
    }

    pub fn to_record(&self, d: Option<usize>) -> BinaryRecord {
        BinaryRecord {
            length: self.length,
            k: self.k(),
            d,
            flags: self.flags,
            basis: self.basis.rows().iter().map(BitVec::to_hex).collect(),
        }
    }
}

/// Serializable binary code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinaryRecord {
    pub length: usize,
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    pub flags: Flags,
    pub basis: Vec<String>,
}

impl BinaryRecord {
    pub fn to_code(&self) -> Result<BinaryLinearCode, crate::bits::HexError> {
        let rows = self
            .basis
            .iter()
            .map(|h| BitVec::from_hex(self.length, h))
            .collect::<Result<Vec<_>, _>>()?;
        let mut code = BinaryLinearCode::from_rows(self.length, rows);
        code.flags = self.flags;
        Ok(code)
    }
}

/// Image of an additive code under one of the maps. The maps are F2-linear, so mapping a basis
/// spans the image.
pub fn image_code(kind: MapKind, space: &F4Space) -> BinaryLinearCode {
    let len = kind.image_length(space.n());
    BinaryLinearCode::from_rows(len, space.basis_vectors().iter().map(|v| apply_map(kind, v)))
}
