//! Desk-scale size caps.
//!
//! Every exhaustive routine checks its input against one of these caps and
//! returns [`Error::SizeLimit`](crate::Error::SizeLimit) instead of running
//! for an unbounded time. The defaults can be overridden through the
//! `DIAMETER_LAB_CAPS` environment variable, a comma separated list of
//! `name=value` pairs, e.g. `DIAMETER_LAB_CAPS=canonical_vertices=20,legal_len=9`.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Used vertices accepted by [`canonical_form`](crate::complex::PureComplex::canonical_form).
    pub canonical_vertices: usize,
    /// Leaves of the individualization tree explored by the canonical form.
    pub canonical_leaves: usize,
    /// Vertices accepted by the flag test (clique enumeration).
    pub flag_vertices: usize,
    /// Nodes of J(n,d) accepted by the exact induced path search.
    pub johnson_nodes: usize,
    /// Facets of the complete multicomplex accepted by the c.l.m. search.
    pub clm_facets: usize,
    /// Ground set size for legal sequences.
    pub legal_elements: usize,
    /// Sequence length for legal sequences.
    pub legal_len: usize,
    /// Ground set size for non-pure layered families.
    pub nonpure_elements: usize,
    /// Vertices accepted by the decomposability deciders.
    pub decomposable_vertices: usize,
    /// Copies in an iterated join.
    pub join_copies: usize,
    /// Facets of any constructed complex.
    pub construct_facets: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            canonical_vertices: 40,
            canonical_leaves: 200_000,
            flag_vertices: 64,
            johnson_nodes: 128,
            clm_facets: 24,
            legal_elements: 4,
            legal_len: 8,
            nonpure_elements: 10,
            decomposable_vertices: 24,
            join_copies: 4,
            construct_facets: 2_000_000,
        }
    }
}

impl Caps {
    /// Parses a `name=value,...` override list on top of the defaults.
    pub fn parse_overrides(spec: &str) -> Result<Caps, String> {
        let mut caps = Caps::default();
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (name, value) = item.split_once('=').ok_or_else(|| format!("expected name=value, got `{item}`"))?;
            let value: usize = value.trim().parse().map_err(|_| format!("cap `{name}` needs an integer value"))?;
            let slot = match name.trim() {
                "canonical_vertices" => &mut caps.canonical_vertices,
                "canonical_leaves" => &mut caps.canonical_leaves,
                "flag_vertices" => &mut caps.flag_vertices,
                "johnson_nodes" => &mut caps.johnson_nodes,
                "clm_facets" => &mut caps.clm_facets,
                "legal_elements" => &mut caps.legal_elements,
                "legal_len" => &mut caps.legal_len,
                "nonpure_elements" => &mut caps.nonpure_elements,
                "decomposable_vertices" => &mut caps.decomposable_vertices,
                "join_copies" => &mut caps.join_copies,
                "construct_facets" => &mut caps.construct_facets,
                other => return Err(format!("unknown cap `{other}`")),
            };
            *slot = value;
        }
        Ok(caps)
    }
}

static CAPS: OnceLock<Caps> = OnceLock::new();

/// The process-wide caps: defaults, or the `DIAMETER_LAB_CAPS` overrides when set.
///
/// A malformed override list is ignored and the defaults are used.
pub fn caps() -> &'static Caps {
    CAPS.get_or_init(|| match std::env::var("DIAMETER_LAB_CAPS") {
        Ok(spec) => Caps::parse_overrides(&spec).unwrap_or_default(),
        Err(_) => Caps::default(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_parse() {
        let caps = Caps::parse_overrides("legal_len=9, flag_vertices=10").unwrap();
        assert_eq!(caps.legal_len, 9);
        assert_eq!(caps.flag_vertices, 10);
        assert_eq!(caps.clm_facets, Caps::default().clm_facets);
        assert!(Caps::parse_overrides("bogus=1").is_err());
        assert!(Caps::parse_overrides("legal_len").is_err());
    }
}
