use num_rational::Rational64;

/// Exact reduced rational with positive denominator.
pub type Rational = Rational64;

/// Serializes rationals as `"p/q"` strings (`"p"` when integral).
pub(crate) mod as_string {
    use super::Rational;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(value)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        text.parse::<Rational>().map_err(de::Error::custom)
    }
}
