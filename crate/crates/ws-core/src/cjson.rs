//! Serde adapters writing complex numbers as `{re, im}` objects, the
//! wire form promised by the `ws-kernel/1` schema. Attach with
//! `#[serde(with = "crate::cjson")]` (or `cjson::option` for
//! `Option<Complex>` fields).

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{c64, Complex};

#[derive(Serialize, Deserialize)]
struct C {
    re: f64,
    im: f64,
}

pub fn serialize<S: Serializer>(v: &Complex, s: S) -> Result<S::Ok, S::Error> {
    C { re: v.re, im: v.im }.serialize(s)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex, D::Error> {
    let c = C::deserialize(d)?;
    Ok(c64(c.re, c.im))
}

/// The same adapter for `Option<Complex>` fields.
pub mod option {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::{c64, Complex};

    #[derive(Serialize, Deserialize)]
    struct C {
        re: f64,
        im: f64,
    }

    pub fn serialize<S: Serializer>(v: &Option<Complex>, s: S) -> Result<S::Ok, S::Error> {
        v.map(|z| C { re: z.re, im: z.im }).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Complex>, D::Error> {
        Ok(Option::<C>::deserialize(d)?.map(|c| c64(c.re, c.im)))
    }
}
