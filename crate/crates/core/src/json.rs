//! JSON encoding of exact scalars.
//!
//! Every integer or rational value is written as a decimal string (`"-12"`,
//! `"3/4"`) so that values beyond 64 bits survive interchange. On input both
//! strings and plain JSON integers are accepted.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::matrix::{Matrix, Scalar};

/// Scalars with a lossless decimal text form.
pub trait DecimalScalar: Scalar + fmt::Display {
    fn parse_decimal(s: &str) -> Result<Self, String>;
}

impl DecimalScalar for BigInt {
    fn parse_decimal(s: &str) -> Result<Self, String> {
        BigInt::from_str(s.trim()).map_err(|_| format!("expected a decimal integer, got {s:?}"))
    }
}

impl DecimalScalar for BigRational {
    fn parse_decimal(s: &str) -> Result<Self, String> {
        let t = s.trim();
        let r = BigRational::from_str(t)
            .map_err(|_| format!("expected a rational like \"p/q\", got {s:?}"))?;
        Ok(r)
    }
}

/// A single scalar wrapped for serde.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dec<T>(pub T);

impl<T: DecimalScalar> Serialize for Dec<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de, T: DecimalScalar> Deserialize<'de> for Dec<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V<T>(std::marker::PhantomData<T>);
        impl<T: DecimalScalar> Visitor<'_> for V<T> {
            type Value = Dec<T>;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a decimal string or an integer")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Self::Value, E> {
                T::parse_decimal(v).map(Dec).map_err(E::custom)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Self::Value, E> {
                self.visit_str(&v.to_string())
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Self::Value, E> {
                self.visit_str(&v.to_string())
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Self::Value, E> {
                Err(E::custom(format!(
                    "floating-point value {v} is not allowed; use an exact decimal string"
                )))
            }
        }
        d.deserialize_any(V(std::marker::PhantomData))
    }
}

/// `#[serde(with = "dec")]` for a single scalar.
pub mod dec {
    use super::*;

    pub fn serialize<T: DecimalScalar, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, T: DecimalScalar, D: Deserializer<'de>>(d: D) -> Result<T, D::Error> {
        Dec::<T>::deserialize(d).map(|x| x.0)
    }
}

/// `#[serde(with = "dec_vec")]` for `Vec<T>`.
pub mod dec_vec {
    use super::*;

    pub fn serialize<T: DecimalScalar, S: Serializer>(v: &[T], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&x.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, T: DecimalScalar, D: Deserializer<'de>>(
        d: D,
    ) -> Result<Vec<T>, D::Error> {
        let v = Vec::<Dec<T>>::deserialize(d)?;
        Ok(v.into_iter().map(|x| x.0).collect())
    }
}

/// `#[serde(with = "dec_vecs")]` for `Vec<Vec<T>>`.
pub mod dec_vecs {
    use super::*;

    pub fn serialize<T: DecimalScalar, S: Serializer>(
        v: &[Vec<T>],
        s: S,
    ) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for row in v {
            let row: Vec<String> = row.iter().map(ToString::to_string).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }

    pub fn deserialize<'de, T: DecimalScalar, D: Deserializer<'de>>(
        d: D,
    ) -> Result<Vec<Vec<T>>, D::Error> {
        let v = Vec::<Vec<Dec<T>>>::deserialize(d)?;
        Ok(v.into_iter()
            .map(|r| r.into_iter().map(|x| x.0).collect())
            .collect())
    }
}

/// Matrices are row-major nested arrays.
impl<T: DecimalScalar> Serialize for Matrix<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        dec_vecs::serialize(&self.to_rows(), s)
    }
}

impl<'de, T: DecimalScalar> Deserialize<'de> for Matrix<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V<T>(std::marker::PhantomData<T>);
        impl<'de, T: DecimalScalar> Visitor<'de> for V<T> {
            type Value = Matrix<T>;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rectangular array of rows")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Self::Value, A::Error> {
                let mut rows: Vec<Vec<T>> = Vec::new();
                while let Some(row) = seq.next_element::<Vec<Dec<T>>>()? {
                    if let Some(first) = rows.first() {
                        if first.len() != row.len() {
                            return Err(de::Error::custom(format!(
                                "row {} has {} entries, expected {}",
                                rows.len(),
                                row.len(),
                                first.len()
                            )));
                        }
                    }
                    rows.push(row.into_iter().map(|x| x.0).collect());
                }
                Ok(Matrix::from_rows(&rows))
            }
        }
        d.deserialize_seq(V(std::marker::PhantomData))
    }
}

pub fn int_vec_json(v: &[BigInt]) -> serde_json::Value {
    serde_json::Value::Array(v.iter().map(|x| x.to_string().into()).collect())
}

pub fn rat_vec_json(v: &[BigRational]) -> serde_json::Value {
    serde_json::Value::Array(v.iter().map(|x| x.to_string().into()).collect())
}
