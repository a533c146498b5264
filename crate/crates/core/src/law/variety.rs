use std::fmt;

use crate::error::{Error, Result};

use super::parse::parse_identity;
use super::term::{Identity, Term};

/// Left invertive law; defines AG-groupoids.
pub const LEFT_INVERTIVE: &str = "((x y) z) = ((z y) x)";
pub const IDEMPOTENT: &str = "x = (x x)";
pub const ANTI_RECTANGULAR: &str = "((x y) x) = y";
pub const MEDIAL: &str = "((c d) (e f)) = ((c e) (d f))";
/// `a(bc) = c(ba)`, a consequence of the anti-rectangular AG-band laws.
pub const ARAGB_PERMUTATION: &str = "(a (b c)) = (c (b a))";
pub const SQUARE_ROOT: &str = "y = (y y)";
pub const ANTI_RECTANGULAR_DUAL: &str = "(y (z y)) = z";
/// Evans' law, whose finite models exist exactly at square orders.
pub const EVANS: &str = "((x y) (y z)) = y";

/// A named finite set of identities.
///
/// `implied` lists identities known to follow from `identities`. They are
/// never used to decide membership, only as extra propagation in the model
/// search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarietySpec {
    name: String,
    identities: Vec<Identity>,
    implied: Vec<Identity>,
}

fn parsed(src: &[&str]) -> Vec<Identity> {
    src.iter()
        .map(|s| parse_identity(s).expect("built-in law parses"))
        .collect()
}

impl VarietySpec {
    pub fn new(name: impl Into<String>, identities: Vec<Identity>) -> Result<Self> {
        if identities.is_empty() {
            return Err(Error::Argument("a variety needs at least one identity".into()));
        }
        Ok(VarietySpec {
            name: name.into(),
            identities,
            implied: Vec::new(),
        })
    }

    pub fn with_implied(mut self, implied: Vec<Identity>) -> Self {
        self.implied = implied;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn identities(&self) -> &[Identity] {
        &self.identities
    }

    pub fn implied(&self) -> &[Identity] {
        &self.implied
    }

    pub fn ag() -> Self {
        VarietySpec::new("AG", parsed(&[LEFT_INVERTIVE])).unwrap()
    }

    pub fn band() -> Self {
        VarietySpec::new("BAND", parsed(&[LEFT_INVERTIVE, IDEMPOTENT])).unwrap()
    }

    pub fn aragb() -> Self {
        VarietySpec::new("ARAGB", parsed(&[LEFT_INVERTIVE, IDEMPOTENT, ANTI_RECTANGULAR]))
            .unwrap()
            .with_implied(parsed(&[ANTI_RECTANGULAR_DUAL, ARAGB_PERMUTATION]))
    }

    pub fn medial() -> Self {
        VarietySpec::new("MEDIAL", parsed(&[MEDIAL])).unwrap()
    }

    pub fn evans() -> Self {
        VarietySpec::new("EVANS", parsed(&[EVANS])).unwrap()
    }

    pub const PRESETS: [&'static str; 5] = ["AG", "BAND", "ARAGB", "MEDIAL", "EVANS"];

    /// Looks up a preset by name, ignoring case.
    pub fn preset(name: &str) -> Option<Self> {
        match name.to_ascii_uppercase().as_str() {
            "AG" => Some(Self::ag()),
            "BAND" => Some(Self::band()),
            "ARAGB" => Some(Self::aragb()),
            "MEDIAL" => Some(Self::medial()),
            "EVANS" => Some(Self::evans()),
            _ => None,
        }
    }

    /// A preset name, or else an inline identity string.
    pub fn resolve(spec: &str) -> Result<Self> {
        if let Some(v) = Self::preset(spec) {
            return Ok(v);
        }
        if !spec.contains('=') {
            return Err(Error::Argument(format!(
                "unknown variety {spec:?}; presets are {}",
                Self::PRESETS.join(", ")
            )));
        }
        let id = parse_identity(spec)?;
        VarietySpec::new(spec.trim(), vec![id])
    }

    /// Every identity plus every implied identity.
    pub fn all_laws(&self) -> impl Iterator<Item = &Identity> {
        self.identities.iter().chain(self.implied.iter())
    }

    /// Whether `x = (x x)` (in either orientation) is among the defining laws.
    pub fn is_idempotent(&self) -> bool {
        self.identities.iter().any(is_idempotent_law)
    }

    /// Cancellation the laws force syntactically: `(rows, columns)`, where
    /// `rows` means every left multiplication is injective.
    ///
    /// Recognized shape: one side is a variable `y` occurring exactly once on
    /// the other side, inside a product whose other factor is a bare variable
    /// `x`. Then `y` is recoverable from `x y` (or `y x`) for every `x`.
    pub fn implied_cancellation(&self) -> (bool, bool) {
        let mut rows = false;
        let mut cols = false;
        for id in self.all_laws() {
            for (side, other) in [(id.lhs(), id.rhs()), (id.rhs(), id.lhs())] {
                let Term::Var(y) = side else { continue };
                if other.occurrences(*y) != 1 || matches!(other, Term::Var(_)) {
                    continue;
                }
                match parent_of_var(other, *y) {
                    Some((Term::Var(x), true)) if x != y => rows = true,
                    Some((Term::Var(x), false)) if x != y => cols = true,
                    _ => {}
                }
            }
        }
        (rows, cols)
    }

    pub fn merge(name: impl Into<String>, parts: &[VarietySpec]) -> Result<Self> {
        let identities = parts.iter().flat_map(|v| v.identities.clone()).collect();
        let implied = parts.iter().flat_map(|v| v.implied.clone()).collect();
        Ok(VarietySpec::new(name, identities)?.with_implied(implied))
    }
}

fn is_idempotent_law(id: &Identity) -> bool {
    let square = |t: &Term, v: char| match t {
        Term::Mul(l, r) => **l == Term::Var(v) && **r == Term::Var(v),
        _ => false,
    };
    match (id.lhs(), id.rhs()) {
        (Term::Var(v), t) | (t, Term::Var(v)) => square(t, *v),
        _ => false,
    }
}

/// The sibling of the single occurrence of `v`, and whether `v` is the
/// right factor.
fn parent_of_var(t: &Term, v: char) -> Option<(&Term, bool)> {
    let Term::Mul(l, r) = t else { return None };
    if **r == Term::Var(v) {
        return Some((l, true));
    }
    if **l == Term::Var(v) {
        return Some((r, false));
    }
    parent_of_var(l, v).or_else(|| parent_of_var(r, v))
}

impl fmt::Display for VarietySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {{", self.name)?;
        for (k, id) in self.identities.iter().enumerate() {
            if k > 0 {
                write!(f, ";")?;
            }
            write!(f, " {id}")?;
        }
        write!(f, " }}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_resolve_case_insensitively() {
        for name in VarietySpec::PRESETS {
            assert_eq!(VarietySpec::preset(&name.to_lowercase()).unwrap().name(), name);
        }
        assert!(VarietySpec::preset("SEMIGROUP").is_none());
        assert!(VarietySpec::resolve("SEMIGROUP").is_err());
        let inline = VarietySpec::resolve("x = (x x)").unwrap();
        assert_eq!(inline.identities().len(), 1);
    }

    #[test]
    fn aragb_contains_three_laws() {
        let v = VarietySpec::aragb();
        let shown: Vec<String> = v.identities().iter().map(ToString::to_string).collect();
        assert_eq!(shown, [LEFT_INVERTIVE, IDEMPOTENT, ANTI_RECTANGULAR]);
        assert!(v.is_idempotent());
        assert!(!VarietySpec::ag().is_idempotent());
    }

    #[test]
    fn cancellation_detection() {
        assert_eq!(VarietySpec::aragb().implied_cancellation(), (true, true));
        assert_eq!(VarietySpec::ag().implied_cancellation(), (false, false));
        assert_eq!(VarietySpec::evans().implied_cancellation(), (false, false));
        let only_rows = VarietySpec::resolve("((x y) x) = y").unwrap();
        assert_eq!(only_rows.implied_cancellation(), (true, false));
        // y sits next to a compound factor here, so nothing is implied.
        let compound = VarietySpec::resolve("(((x x) y) x) = y").unwrap();
        assert_eq!(compound.implied_cancellation(), (false, false));
    }
}
