//! Text formats shared by the command line and reports.
//!
//! * map: `"f0,f1,f2;g0,g1,g2"`, coefficients of `X^d, X^(d-1)Y, ..`; the
//!   degree is inferred from the list length.
//! * point: `"x,y"`, normalized on parse.
//! * point list: points separated by `;`.
//! * place set: comma-separated primes, possibly empty.
//! * rational: `"n"` or `"n/d"`.

use std::fmt::Display;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serializer;

use crate::arith::PlaceSet;
use crate::dynamics::RationalMap;
use crate::error::{Error, Result};
use crate::forms::BinaryForm;
use crate::proj::ProjPoint;
use crate::Rat;

pub(crate) fn ser_display<T: Display, S: Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub(crate) fn ser_display_seq<T: Display, S: Serializer>(
    v: &[T],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

/// Largest map degree accepted on the wire.
pub const MAX_WIRE_DEGREE: usize = 32;

fn parse_error(what: &str, input: &str, why: impl Display) -> Error {
    Error::Parse(format!("bad {what} {input:?}: {why}"))
}

fn parse_int(s: &str) -> Result<BigInt> {
    let t = s.trim();
    if t.is_empty() {
        return Err(parse_error("integer", s, "empty"));
    }
    BigInt::from_str(t).map_err(|e| parse_error("integer", s, e))
}

fn parse_int_list(s: &str) -> Result<Vec<BigInt>> {
    s.split(',').map(parse_int).collect()
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    match s.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(s)?)),
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(parse_error("rational", s, "zero denominator"));
            }
            Ok(Rat::new(parse_int(n)?, d))
        }
    }
}

pub fn parse_point(s: &str) -> Result<ProjPoint> {
    let coords = parse_int_list(s)?;
    let [x, y]: [BigInt; 2] = coords
        .try_into()
        .map_err(|_| parse_error("point", s, "expected two coordinates"))?;
    ProjPoint::new(x, y).map_err(|e| parse_error("point", s, e))
}

pub fn parse_points(s: &str) -> Result<Vec<ProjPoint>> {
    s.split(';').map(parse_point).collect()
}

pub fn parse_map(s: &str) -> Result<RationalMap> {
    let (f, g) = s
        .split_once(';')
        .ok_or_else(|| parse_error("map", s, "expected `f0,..;g0,..`"))?;
    let f = parse_int_list(f)?;
    let g = parse_int_list(g)?;
    if f.len() != g.len() {
        return Err(parse_error("map", s, "F and G need the same number of coefficients"));
    }
    if f.len() < 2 {
        return Err(parse_error("map", s, "degree must be at least one"));
    }
    if f.len() > MAX_WIRE_DEGREE + 1 {
        return Err(parse_error("map", s, format!("degree above {MAX_WIRE_DEGREE}")));
    }
    let f = BinaryForm::new(f).map_err(|e| parse_error("map", s, e))?;
    let g = BinaryForm::new(g).map_err(|e| parse_error("map", s, e))?;
    RationalMap::new(f, g).map_err(|e| parse_error("map", s, e))
}

pub fn parse_place_set(s: &str) -> Result<PlaceSet> {
    let t = s.trim().trim_start_matches('{').trim_end_matches('}');
    if t.trim().is_empty() {
        return Ok(PlaceSet::empty());
    }
    let primes = t
        .split(',')
        .map(|p| p.trim().parse::<u64>().map_err(|e| parse_error("place set", s, e)))
        .collect::<Result<Vec<_>>>()?;
    PlaceSet::new(primes).map_err(|e| parse_error("place set", s, e))
}

/// `"f0,f1,f2;g0,g1,g2"`, the inverse of [`parse_map`].
pub fn format_map(phi: &RationalMap) -> String {
    phi.to_string()
}
