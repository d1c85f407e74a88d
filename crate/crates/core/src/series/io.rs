//! JSON and CSV renderings of series. Exponents and coefficients are exact
//! strings (`"9/4"`, `"-24"`).

use serde::{Deserialize, Serialize};

use super::{parse_rational, Exponent, PuiseuxSeries, LATTICE_DEN};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesRepr {
    pub lattice_den: i64,
    /// `[exponent, coefficient]` pairs in increasing exponent order.
    pub terms: Vec<[String; 2]>,
    pub trunc_order: String,
}

impl From<&PuiseuxSeries> for SeriesRepr {
    fn from(s: &PuiseuxSeries) -> Self {
        SeriesRepr {
            lattice_den: LATTICE_DEN,
            terms: s
                .terms()
                .map(|(e, c)| [e.to_string(), c.to_string()])
                .collect(),
            trunc_order: s.trunc_order().to_string(),
        }
    }
}

impl TryFrom<&SeriesRepr> for PuiseuxSeries {
    type Error = Error;

    fn try_from(r: &SeriesRepr) -> Result<Self> {
        if r.lattice_den != LATTICE_DEN {
            return Err(Error::Parse(format!(
                "unsupported lattice denominator {}",
                r.lattice_den
            )));
        }
        let order = Exponent::parse(&r.trunc_order)?;
        let terms = r
            .terms
            .iter()
            .map(|[e, c]| Ok((Exponent::parse(e)?, parse_rational(c)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(PuiseuxSeries::from_terms(terms, order))
    }
}

impl PuiseuxSeries {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(SeriesRepr::from(self)).expect("series repr is plain data")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let repr: SeriesRepr =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        PuiseuxSeries::try_from(&repr)
    }

    /// `exponent,coefficient` rows with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("exponent,coefficient\n");
        for (e, c) in self.terms() {
            out.push_str(&format!("{e},{c}\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{int, rat};
    use proptest::prelude::*;

    #[test]
    fn json_layout() {
        let s = PuiseuxSeries::from_terms(
            [
                (Exponent::from_quarters(1), int(2)),
                (Exponent::from_quarters(9), rat(-3, 4)),
            ],
            Exponent::integer(3),
        );
        let v = s.to_json();
        assert_eq!(v["lattice_den"], 4);
        assert_eq!(v["trunc_order"], "3");
        assert_eq!(v["terms"][0][0], "1/4");
        assert_eq!(v["terms"][1][1], "-3/4");
        assert_eq!(s.to_csv(), "exponent,coefficient\n1/4,2\n9/4,-3/4\n");
    }

    #[test]
    fn rejects_foreign_lattice() {
        let v = serde_json::json!({"lattice_den": 3, "terms": [], "trunc_order": "1"});
        assert!(PuiseuxSeries::from_json(&v).is_err());
    }

    proptest! {
        #[test]
        fn json_round_trip(
            terms in prop::collection::vec((-8i64..40, -50i64..50, 1i64..9), 0..12),
            order in 0i64..48,
        ) {
            let s = PuiseuxSeries::from_terms(
                terms.iter().map(|&(e, n, d)| (Exponent::from_quarters(e), rat(n, d))),
                Exponent::from_quarters(order),
            );
            let back = PuiseuxSeries::from_json(&s.to_json()).unwrap();
            prop_assert_eq!(back.trunc_order(), s.trunc_order());
            prop_assert_eq!(back, s);
        }
    }
}
