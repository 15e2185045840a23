//! Exact symbolic cardinals: natural numbers and the alephs `ℵ_k` for
//! natural `k`.
//!
//! This is deliberately a very small fragment of cardinal arithmetic — no
//! limit alephs like `ℵ_ω`, no weakly inaccessible cardinals, no
//! exponentiation. Every cardinal that appears in a finite atomic model
//! lives here, the representation is canonical (value equality is cardinal
//! equality), and all suprema are over finite lists.

use serde::de::{self, Deserializer, Visitor};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A natural number or an aleph with natural index.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Cardinal {
    /// A finite count. `Finite(n) < Aleph(k)` for all `n`, `k`.
    Finite(u64),
    /// `ℵ_k`. `Aleph(j) < Aleph(k)` iff `j < k`.
    Aleph(u32),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CardinalError {
    #[error("empty supremum")]
    EmptySupremum,
}

impl Cardinal {
    pub const ZERO: Cardinal = Cardinal::Finite(0);
    pub const ALEPH0: Cardinal = Cardinal::Aleph(0);

    pub fn is_finite(self) -> bool {
        matches!(self, Cardinal::Finite(_))
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Cardinal::Aleph(_))
    }

    pub fn is_zero(self) -> bool {
        self == Cardinal::ZERO
    }

    /// The successor cardinal: `n + 1` for finite, `ℵ_{k+1}` for `ℵ_k`.
    pub fn succ(self) -> Cardinal {
        match self {
            Cardinal::Finite(n) => Cardinal::Finite(n + 1),
            Cardinal::Aleph(k) => Cardinal::Aleph(k + 1),
        }
    }
}

/// Cardinal sum: ordinary addition of finite counts, maximum as soon as one
/// side is infinite.
impl std::ops::Add for Cardinal {
    type Output = Cardinal;

    fn add(self, other: Cardinal) -> Cardinal {
        match (self, other) {
            (Cardinal::Finite(a), Cardinal::Finite(b)) => Cardinal::Finite(a.saturating_add(b)),
            _ => self.max(other),
        }
    }
}

/// Cardinal product: ordinary multiplication of finite counts, zero if
/// either factor is zero, maximum otherwise.
impl std::ops::Mul for Cardinal {
    type Output = Cardinal;

    fn mul(self, other: Cardinal) -> Cardinal {
        if self.is_zero() || other.is_zero() {
            return Cardinal::ZERO;
        }
        match (self, other) {
            (Cardinal::Finite(a), Cardinal::Finite(b)) => Cardinal::Finite(a.saturating_mul(b)),
            _ => self.max(other),
        }
    }
}

/// Supremum of a nonempty finite list (its maximum).
pub fn sup(values: &[Cardinal]) -> Result<Cardinal, CardinalError> {
    values
        .iter()
        .copied()
        .max()
        .ok_or(CardinalError::EmptySupremum)
}

/// Least cardinal strictly greater than every element: the successor of the
/// maximum, and 0 on the empty list.
pub fn sup_plus(values: &[Cardinal]) -> Cardinal {
    match values.iter().copied().max() {
        Some(m) => m.succ(),
        None => Cardinal::ZERO,
    }
}

impl std::fmt::Display for Cardinal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Cardinal::Finite(n) => write!(f, "{n}"),
            Cardinal::Aleph(k) => write!(f, "aleph_{k}"),
        }
    }
}

// JSON encoding: a finite cardinal is the bare integer, an aleph is the
// object {"aleph": k}.
impl Serialize for Cardinal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Cardinal::Finite(n) => serializer.serialize_u64(*n),
            Cardinal::Aleph(k) => {
                let mut map = serializer.serialize_map(Some(1))?;
                map.serialize_entry("aleph", k)?;
                map.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for Cardinal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct CardinalVisitor;

        impl<'de> Visitor<'de> for CardinalVisitor {
            type Value = Cardinal;

            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("a nonnegative integer or {\"aleph\": k}")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Cardinal, E> {
                Ok(Cardinal::Finite(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Cardinal, E> {
                u64::try_from(v)
                    .map(Cardinal::Finite)
                    .map_err(|_| E::custom("cardinal must be nonnegative"))
            }

            fn visit_map<A: de::MapAccess<'de>>(self, mut map: A) -> Result<Cardinal, A::Error> {
                let mut aleph: Option<u32> = None;
                while let Some(key) = map.next_key::<String>()? {
                    if key == "aleph" {
                        aleph = Some(map.next_value()?);
                    } else {
                        return Err(de::Error::unknown_field(&key, &["aleph"]));
                    }
                }
                aleph
                    .map(Cardinal::Aleph)
                    .ok_or_else(|| de::Error::missing_field("aleph"))
            }
        }

        deserializer.deserialize_any(CardinalVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const FIN0: Cardinal = Cardinal::Finite(0);

    #[test]
    fn succ_examples() {
        assert_eq!(Cardinal::Aleph(0).succ(), Cardinal::Aleph(1));
        assert_eq!(FIN0.succ(), Cardinal::Finite(1));
        assert_eq!(Cardinal::Aleph(1).succ(), Cardinal::Aleph(2));
    }

    #[test]
    fn sup_examples() {
        assert_eq!(
            sup(&[Cardinal::Finite(3), Cardinal::Aleph(0)]),
            Ok(Cardinal::Aleph(0))
        );
        assert_eq!(
            sup(&[Cardinal::Aleph(2), Cardinal::Aleph(1)]),
            Ok(Cardinal::Aleph(2))
        );
        assert_eq!(sup(&[Cardinal::Finite(5)]), Ok(Cardinal::Finite(5)));
        assert_eq!(sup(&[]), Err(CardinalError::EmptySupremum));
    }

    #[test]
    fn sup_plus_examples() {
        assert_eq!(sup_plus(&[Cardinal::Aleph(0)]), Cardinal::Aleph(1));
        assert_eq!(sup_plus(&[]), FIN0);
        assert_eq!(
            sup_plus(&[Cardinal::Aleph(0), Cardinal::Aleph(2)]),
            Cardinal::Aleph(3)
        );
    }

    #[test]
    fn mul_examples() {
        assert_eq!(Cardinal::Aleph(0) * Cardinal::Aleph(0), Cardinal::Aleph(0));
        assert_eq!(FIN0 * Cardinal::Aleph(3), FIN0);
        assert_eq!(Cardinal::Finite(4) * Cardinal::Aleph(1), Cardinal::Aleph(1));
    }

    #[test]
    fn add_examples() {
        assert_eq!(
            Cardinal::Finite(2) + Cardinal::Finite(3),
            Cardinal::Finite(5)
        );
        assert_eq!(Cardinal::Aleph(0) + Cardinal::Aleph(1), Cardinal::Aleph(1));
        assert_eq!(Cardinal::Finite(7) + Cardinal::Aleph(0), Cardinal::Aleph(0));
    }

    #[test]
    fn json_round_trip() {
        let vals = [Cardinal::Finite(7), Cardinal::Aleph(2), FIN0];
        for v in vals {
            let s = serde_json::to_string(&v).unwrap();
            let back: Cardinal = serde_json::from_str(&s).unwrap();
            assert_eq!(v, back);
        }
        assert_eq!(serde_json::to_string(&Cardinal::Finite(7)).unwrap(), "7");
        assert_eq!(
            serde_json::to_string(&Cardinal::Aleph(2)).unwrap(),
            "{\"aleph\":2}"
        );
    }

    fn cardinal_strategy() -> impl Strategy<Value = Cardinal> {
        prop_oneof![
            (0u64..40).prop_map(Cardinal::Finite),
            (0u32..10).prop_map(Cardinal::Aleph),
        ]
    }

    proptest! {
        #[test]
        fn total_order(a in cardinal_strategy(), b in cardinal_strategy()) {
            let exactly_one = [a < b, a == b, a > b].iter().filter(|&&x| x).count();
            prop_assert_eq!(exactly_one, 1);
        }

        #[test]
        fn infinite_square_is_self(k in 0u32..10) {
            let a = Cardinal::Aleph(k);
            prop_assert_eq!(a * a, a);
        }

        #[test]
        fn infinite_absorbs(a in cardinal_strategy(), k in 0u32..10) {
            let b = Cardinal::Aleph(k);
            if !a.is_zero() && a <= b {
                prop_assert_eq!(a * b, b);
                prop_assert_eq!(a + b, b);
            }
        }

        #[test]
        fn sup_plus_is_strict_and_tight(values in prop::collection::vec(cardinal_strategy(), 1..6)) {
            let sp = sup_plus(&values);
            for &s in &values {
                prop_assert!(sp > s);
            }
            // No cardinal strictly between max and sup_plus.
            let m = sup(&values).unwrap();
            prop_assert_eq!(m.succ(), sp);
        }

        #[test]
        fn succ_strictly_monotone(a in cardinal_strategy(), b in cardinal_strategy()) {
            if a < b {
                prop_assert!(a.succ() < b.succ());
            }
            prop_assert!(a < a.succ());
        }
    }
}
