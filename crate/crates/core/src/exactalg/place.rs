use std::fmt;

use super::factor::is_irreducible;
use super::field::Field;
use super::poly::Poly;
use crate::{Error, Result};

/// A closed point of the projective line over the base field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Place {
    Finite(Poly),
    Infinity,
}

impl Place {
    /// The place `π = 0`. `π` is made monic and must be irreducible; over `Q`
    /// irreducibility is only decidable here up to degree 3.
    pub fn finite(pi: &Poly) -> Result<Place> {
        let pi = pi.monic();
        let deg = pi.degree().unwrap_or(0);
        if deg == 0 {
            return Err(Error::Domain("a place needs a nonconstant polynomial".into()));
        }
        let irreducible = match pi.field() {
            Field::Rationals => {
                if deg > 3 {
                    return Err(Error::Unsupported(format!(
                        "cannot certify irreducibility of {} over Q",
                        pi
                    )));
                }
                deg == 1 || pi.roots()?.is_empty()
            }
            _ => is_irreducible(&pi)?,
        };
        if !irreducible {
            return Err(Error::Domain(format!("{} is reducible", pi)));
        }
        Ok(Place::Finite(pi))
    }

    /// The degree-one place `t = a`.
    pub fn at(field: &Field, a: i64) -> Place {
        Place::Finite(Poly::from_coeffs(field, vec![field.from_i64(-a), field.one()]))
    }

    /// Trusted constructor for factors coming out of a factorisation.
    pub(crate) fn from_factor(pi: Poly) -> Place {
        Place::Finite(pi)
    }

    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(p) => p.degree().unwrap_or(0),
            Place::Infinity => 1,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Place::Infinity)
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{}", p),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

/// Residue field at a place: the base field at degree-one places and
/// `F_p[t]/(π)` for higher-degree places over a prime field.
pub fn residue_field_at(place: &Place, base: &Field) -> Result<Field> {
    match place {
        Place::Infinity => Ok(base.clone()),
        Place::Finite(pi) => {
            if pi.field() != base {
                return Err(Error::FieldMismatch(pi.field().to_string(), base.to_string()));
            }
            match (pi.degree().unwrap_or(0), base) {
                (1, _) => Ok(base.clone()),
                (_, Field::Prime(_)) => Field::extension(pi),
                (d, _) => Err(Error::Unsupported(format!(
                    "residue field of a degree-{} place over {}",
                    d, base
                ))),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_one_places_give_the_base() {
        let f7 = Field::prime(7).unwrap();
        assert_eq!(residue_field_at(&Place::at(&f7, 0), &f7).unwrap(), f7);
        assert_eq!(residue_field_at(&Place::Infinity, &Field::Rationals).unwrap(), Field::Rationals);
    }

    #[test]
    fn quadratic_place_over_f3_is_f9() {
        let f3 = Field::prime(3).unwrap();
        let pl = Place::finite(&Poly::from_i64(&f3, &[1, 0, 1])).unwrap();
        let k = residue_field_at(&pl, &f3).unwrap();
        assert_eq!(k.cardinality(), Some(9));
    }

    #[test]
    fn quadratic_place_over_q_is_unsupported() {
        let q = Field::Rationals;
        let pl = Place::finite(&Poly::from_i64(&q, &[1, 0, 1])).unwrap();
        assert!(matches!(residue_field_at(&pl, &q), Err(Error::Unsupported(_))));
    }

    #[test]
    fn reducible_place_is_rejected() {
        let f5 = Field::prime(5).unwrap();
        assert!(Place::finite(&Poly::from_i64(&f5, &[1, 0, 1])).is_err());
    }
}
