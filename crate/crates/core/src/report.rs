//! Serialization helpers shared by every report type.
//!
//! Integers that may exceed 64 bits are always written as decimal strings.

use std::fmt::Display;

use serde::Serializer;

pub fn ser_display<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub fn ser_opt_display<T: Display, S: Serializer>(v: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.collect_str(x),
        None => s.serialize_none(),
    }
}

pub fn ser_vec_display<T: Display, S: Serializer>(v: &[T], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

/// `(d, k)` as `{"d": .., "k": ..}` or `null`.
pub fn ser_opt_pair<S: Serializer>(v: &Option<(u64, u64)>, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    match v {
        Some((d, k)) => {
            let mut map = s.serialize_map(Some(2))?;
            map.serialize_entry("d", d)?;
            map.serialize_entry("k", k)?;
            map.end()
        }
        None => s.serialize_none(),
    }
}
