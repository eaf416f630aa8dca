//! JSON shapes for simplices, groups, certificates and matrices.
//!
//! Every integer is written as a decimal string so that values beyond 64
//! bits survive a round trip; readers also accept plain JSON numbers.

use std::fmt::{self, Display};
use std::marker::PhantomData;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::IntMatrix;
use crate::gorenstein::GorensteinCertificate;
use crate::oracle::CatalogEntry;
use crate::simplex::{GroupElement, LambdaGroup, LatticeSimplex};

struct Decimal<T>(T);

impl<T: Display> Serialize for Decimal<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}

impl<'de, T> Deserialize<'de> for Decimal<T>
where
    T: FromStr,
    T::Err: Display,
{
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V<T>(PhantomData<T>);
        impl<T> V<T>
        where
            T: FromStr,
            T::Err: Display,
        {
            fn parse<E: de::Error>(s: &str) -> std::result::Result<Decimal<T>, E> {
                s.trim().parse().map(Decimal).map_err(|e| E::custom(format!("bad integer {s:?}: {e}")))
            }
        }
        impl<T> Visitor<'_> for V<T>
        where
            T: FromStr,
            T::Err: Display,
        {
            type Value = Decimal<T>;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }
            fn visit_str<E: de::Error>(self, s: &str) -> std::result::Result<Self::Value, E> {
                Self::parse(s)
            }
            fn visit_u64<E: de::Error>(self, n: u64) -> std::result::Result<Self::Value, E> {
                Self::parse(&n.to_string())
            }
            fn visit_i64<E: de::Error>(self, n: i64) -> std::result::Result<Self::Value, E> {
                Self::parse(&n.to_string())
            }
        }
        d.deserialize_any(V(PhantomData))
    }
}

/// `#[serde(with = "decimal")]` for a single integer field.
pub mod decimal {
    use super::*;

    pub fn serialize<T: Display, S: Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
        Decimal(v).serialize(s)
    }

    pub fn deserialize<'de, T, D>(d: D) -> std::result::Result<T, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        Ok(Decimal::<T>::deserialize(d)?.0)
    }
}

/// `#[serde(with = "decimal_vec")]` for a list of integers.
pub mod decimal_vec {
    use super::*;

    pub fn serialize<T: Display, S: Serializer>(v: &[T], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(Decimal))
    }

    pub fn deserialize<'de, T, D>(d: D) -> std::result::Result<Vec<T>, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        Ok(Vec::<Decimal<T>>::deserialize(d)?.into_iter().map(|x| x.0).collect())
    }
}

/// `#[serde(with = "decimal_rows")]` for a list of integer lists.
pub mod decimal_rows {
    use super::*;

    pub fn serialize<T: Display, S: Serializer>(v: &[Vec<T>], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|row| row.iter().map(Decimal).collect::<Vec<_>>()))
    }

    pub fn deserialize<'de, T, D>(d: D) -> std::result::Result<Vec<Vec<T>>, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        Ok(Vec::<Vec<Decimal<T>>>::deserialize(d)?
            .into_iter()
            .map(|row| row.into_iter().map(|x| x.0).collect())
            .collect())
    }
}

/// `"n/d"`, or `"n"` for integers.
pub fn rational_to_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
    let d: BigInt = d.parse().map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(n, d))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplexJson {
    #[serde(with = "decimal")]
    pub dim: usize,
    #[serde(with = "decimal_rows")]
    pub vertices: Vec<Vec<BigInt>>,
}

impl SimplexJson {
    pub fn from_simplex(s: &LatticeSimplex) -> Self {
        Self { dim: s.dim(), vertices: s.vertices().to_vec() }
    }

    pub fn to_simplex(&self) -> Result<LatticeSimplex> {
        if self.vertices.len() != self.dim + 1 {
            return Err(Error::Parse(format!(
                "dimension {} needs {} vertices, found {}",
                self.dim,
                self.dim + 1,
                self.vertices.len()
            )));
        }
        LatticeSimplex::new(self.vertices.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    #[serde(with = "decimal")]
    pub order: BigInt,
    #[serde(with = "decimal_vec")]
    pub invariant_factors: Vec<BigInt>,
    /// Each generator as a list of `"n/d"` coordinates.
    pub generators: Vec<Vec<String>>,
}

impl GroupJson {
    pub fn from_group(g: &LambdaGroup) -> Self {
        Self {
            order: g.order().clone(),
            invariant_factors: g.invariant_factors().to_vec(),
            generators: g.generators().iter().map(element_to_strings).collect(),
        }
    }
}

pub fn element_to_strings(g: &GroupElement) -> Vec<String> {
    g.coords().iter().map(rational_to_string).collect()
}

pub fn element_from_strings(parts: &[String]) -> Result<GroupElement> {
    Ok(GroupElement::new(parts.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    #[serde(with = "decimal")]
    pub index: u32,
    #[serde(with = "decimal_vec")]
    pub translate: Vec<BigInt>,
    #[serde(with = "decimal_rows")]
    pub dual_vertices: Vec<Vec<BigInt>>,
    #[serde(with = "decimal")]
    pub dual_volume: BigInt,
}

impl CertificateJson {
    pub fn from_certificate(c: &GorensteinCertificate) -> Self {
        Self {
            index: c.index,
            translate: c.translate.clone(),
            dual_vertices: c.dual.vertices().to_vec(),
            dual_volume: c.dual_volume.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MatrixJson(#[serde(with = "decimal_rows")] pub Vec<Vec<BigInt>>);

impl MatrixJson {
    pub fn from_matrix(m: &IntMatrix) -> Self {
        Self(m.to_rows())
    }

    pub fn to_matrix(&self) -> Result<IntMatrix> {
        IntMatrix::from_rows(self.0.clone())
    }
}

/// One line of a JSON-lines catalog.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogLine {
    #[serde(with = "decimal_rows")]
    pub h: Vec<Vec<BigInt>>,
    #[serde(with = "decimal")]
    pub dim: usize,
    #[serde(with = "decimal")]
    pub volume: BigInt,
    #[serde(with = "decimal_option")]
    pub pyramid_index: Option<usize>,
    #[serde(with = "decimal_vec")]
    pub invariant_factors: Vec<BigInt>,
    pub generators: Vec<Vec<String>>,
    pub certificate: Option<CertificateJson>,
    #[serde(with = "decimal")]
    pub class_id: usize,
}

impl CatalogLine {
    pub fn from_entry(e: &CatalogEntry) -> Self {
        Self {
            h: e.h.to_rows(),
            dim: e.dim,
            volume: e.volume.clone(),
            pyramid_index: e.pyramid,
            invariant_factors: e.invariant_factors.clone(),
            generators: e.group.generators().iter().map(element_to_strings).collect(),
            certificate: e.certificate.as_ref().map(CertificateJson::from_certificate),
            class_id: e.class_id,
        }
    }
}

/// `#[serde(with = "decimal_option")]` for an optional integer.
pub mod decimal_option {
    use super::*;

    pub fn serialize<T: Display, S: Serializer>(v: &Option<T>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match v {
            Some(x) => Decimal(x).serialize(s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, T, D>(d: D) -> std::result::Result<Option<T>, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        Ok(Option::<Decimal<T>>::deserialize(d)?.map(|x| x.0))
    }
}
