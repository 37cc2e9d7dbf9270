use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::num::NonZeroU32;

/// Entry domain of a filling, extended with the two sentinels.
///
/// The derived order is the intended one: `Zero < Fin(1) < Fin(2) < ... < Infinity`.
/// `Zero` is the value read above the top of every column (and the padding
/// value used while a row is being transported); `Infinity` is the value read
/// below the bottom row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtValue {
    Zero,
    Fin(NonZeroU32),
    Infinity,
}

impl ExtValue {
    /// `Fin(n)` for `n >= 1`, `None` for zero.
    pub fn fin(n: u32) -> Option<Self> {
        NonZeroU32::new(n).map(ExtValue::Fin)
    }

    /// Stored-entry constructor: `0` maps to `Zero`.
    pub fn from_u32(n: u32) -> Self {
        Self::fin(n).unwrap_or(ExtValue::Zero)
    }

    /// Numeric value of a stored entry (`Zero` is 0). Panics on `Infinity`.
    pub fn as_u32(self) -> u32 {
        match self {
            ExtValue::Zero => 0,
            ExtValue::Fin(n) => n.get(),
            ExtValue::Infinity => panic!("Infinity is never stored in a filling"),
        }
    }

    pub fn is_zero(self) -> bool {
        self == ExtValue::Zero
    }
}

impl From<NonZeroU32> for ExtValue {
    fn from(n: NonZeroU32) -> Self {
        ExtValue::Fin(n)
    }
}

/// Stored values serialize as integers (`Zero` is 0); `Infinity` as the string `"inf"`.
impl Serialize for ExtValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtValue::Infinity => s.serialize_str("inf"),
            v => s.serialize_u32(v.as_u32()),
        }
    }
}

impl<'de> Deserialize<'de> for ExtValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u32),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(n) => Ok(ExtValue::from_u32(n)),
            Raw::Str(s) if s == "inf" => Ok(ExtValue::Infinity),
            Raw::Str(s) => Err(serde::de::Error::custom(format!("invalid entry {s:?}"))),
        }
    }
}

impl fmt::Display for ExtValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtValue::Zero => write!(f, "0"),
            ExtValue::Fin(n) => write!(f, "{n}"),
            ExtValue::Infinity => write!(f, "inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn total_order() {
        let one = ExtValue::from_u32(1);
        let two = ExtValue::from_u32(2);
        assert!(ExtValue::Zero < one);
        assert!(one < two);
        assert!(two < ExtValue::Infinity);
        assert!(ExtValue::Zero < ExtValue::Infinity);
        assert_eq!(ExtValue::from_u32(0), ExtValue::Zero);
        assert_eq!(ExtValue::fin(0), None);
    }
}
