//! Connected layer multicomplexes (c.l.m.) and their relatives.
//!
//! A layering assigns an integer layer to every facet so that all layers in
//! `[a, b]` are nonempty; it is *connected* when, for every face `S`, the
//! layers meeting the star of `S` form an interval.

mod decompose;
mod legal;
mod nonpure;
mod search;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::complex::{Face, Facet, Multiset, Pure, PureComplex, PureMulticomplex};
use crate::diameter::binomial;
use crate::error::{Error, Result};

pub use decompose::{bl_decompose, bl_piece, kk_split, BlPiece, KkSplit};
pub use legal::{legal_check, legal_double, LegalChecker, LegalSequence};
pub use nonpure::{example_hnp5, extend_nonpure, NonpureLayeredFamily};
pub use search::{max_clm_search, ClmSearchResult};

/// A layered pure (multi)complex. Layers need not satisfy the interval
/// condition; see [`Layered::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layered<F: Face> {
    base: Pure<F>,
    /// Layer of `base.facets()[i]`.
    layer_of: Vec<i64>,
}

pub type LayeredMulticomplex = Layered<Multiset>;
pub type LayeredComplex = Layered<Facet>;

/// A face whose star misses `missing` although it meets layers on both sides.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClmViolation<F> {
    pub face: F,
    pub missing: i64,
}

impl<F: Face> Layered<F> {
    /// Every layer between the least and the greatest used one must be nonempty.
    pub fn new(base: Pure<F>, layer_of: Vec<i64>) -> Result<Self> {
        if layer_of.len() != base.len() {
            return Err(Error::invalid(format!("{} layers for {} facets", layer_of.len(), base.len())));
        }
        if base.is_empty() {
            return Err(Error::invalid("a layered family needs at least one facet"));
        }
        let m = Layered { base, layer_of };
        if let Some(empty) = m.layers().iter().position(Vec::is_empty) {
            return Err(Error::invalid(format!("layer {} is empty", m.a() + empty as i64)));
        }
        Ok(m)
    }

    /// Layers given in order, numbered from 0.
    pub fn from_layers(n: usize, d: usize, layers: Vec<Vec<F>>) -> Result<Self> {
        let mut tagged: Vec<(F, i64)> =
            layers.into_iter().enumerate().flat_map(|(i, l)| l.into_iter().map(move |f| (f, i as i64))).collect();
        tagged.sort();
        let base = Pure::new(n, d, tagged.iter().map(|(f, _)| f.clone()).collect())?;
        Layered::new(base, tagged.into_iter().map(|(_, l)| l).collect())
    }

    pub fn base(&self) -> &Pure<F> {
        &self.base
    }

    pub fn layer_of(&self) -> &[i64] {
        &self.layer_of
    }

    /// First layer index.
    pub fn a(&self) -> i64 {
        *self.layer_of.iter().min().unwrap()
    }

    /// Last layer index.
    pub fn b(&self) -> i64 {
        *self.layer_of.iter().max().unwrap()
    }

    /// `b − a`.
    pub fn length(&self) -> usize {
        (self.b() - self.a()) as usize
    }

    /// Facets of each layer from `a` to `b`.
    pub fn layers(&self) -> Vec<Vec<F>> {
        let a = self.a();
        let mut out = vec![Vec::new(); self.length() + 1];
        for (f, &l) in self.base.facets().iter().zip(&self.layer_of) {
            out[(l - a) as usize].push(f.clone());
        }
        out
    }

    /// Elements used by each layer.
    pub fn layer_supports(&self) -> Vec<Vec<usize>> {
        self.layers()
            .iter()
            .map(|l| {
                let mut s: Vec<usize> = l.iter().flat_map(|f| f.support()).collect();
                s.sort_unstable();
                s.dedup();
                s
            })
            .collect()
    }

    /// Same layers shifted to start at 0.
    pub fn normalized(&self) -> Self {
        let a = self.a();
        Layered { base: self.base.clone(), layer_of: self.layer_of.iter().map(|l| l - a).collect() }
    }

    /// The first face (in face order) whose star skips a layer, with the
    /// least skipped layer. Only divisors of facets are checked: other
    /// faces have empty stars.
    pub fn violation(&self) -> Option<ClmViolation<F>> {
        let mut stars: BTreeMap<F, Vec<i64>> = BTreeMap::new();
        for (f, &l) in self.base.facets().iter().zip(&self.layer_of) {
            for s in f.subfaces() {
                stars.entry(s).or_default().push(l);
            }
        }
        for (face, mut layers) in stars {
            layers.sort_unstable();
            layers.dedup();
            if let Some(w) = layers.windows(2).find(|w| w[1] > w[0] + 1) {
                return Some(ClmViolation { face, missing: w[0] + 1 });
            }
        }
        None
    }

    pub fn validate(&self) -> bool {
        self.violation().is_none()
    }

    /// `lk(S)` with the layers inherited from the star of `S`.
    pub fn link(&self, face: &F) -> Result<Self> {
        let mut facets = Vec::new();
        for (f, &l) in self.base.facets().iter().zip(&self.layer_of) {
            if face.is_subface_of(f) {
                facets.push((f.minus(face), l));
            }
        }
        if facets.is_empty() {
            return Err(Error::NotAFace(format!("{face:?}")));
        }
        let base = Pure::new(
            self.base.n(),
            self.base.d() - face.cardinality(),
            facets.iter().map(|(f, _)| f.clone()).collect(),
        )?;
        let layer_of = base.facets().iter().map(|f| facets.iter().find(|(g, _)| g == f).unwrap().1).collect();
        Layered::new(base, layer_of)
    }
}

/// Layers by dual distance from the facet `x`.
pub fn layer_by_distance<F: Face>(c: &Pure<F>, x: &F) -> Result<Layered<F>> {
    let i = c.facet_index(x).ok_or_else(|| Error::NotAFace(format!("{x:?} (not a facet)")))?;
    let dist = c.dual_graph().distances_from(&[i]);
    let layer_of = dist.into_iter().map(|d| d.map(|d| d as i64).ok_or(Error::Disconnected)).collect::<Result<_>>()?;
    Layered::new(c.clone(), layer_of)
}

/// All multisets of degree `d` over `{1, …, n}`, layered by the sum of their elements.
pub fn complete_clm(n: usize, d: usize) -> Result<LayeredMulticomplex> {
    if n == 0 {
        return Err(Error::invalid("complete c.l.m. needs n >= 1"));
    }
    let base = PureMulticomplex::complete(n, d);
    let layer_of = base.facets().iter().map(|m| m.weight() as i64).collect();
    Layered::new(base, layer_of)
}

/// Multisets `i^p (i+1)^q` with `p + q = d`, one per layer, layered by sum.
pub fn injective_clm(n: usize, d: usize) -> Result<LayeredMulticomplex> {
    if n == 0 || d == 0 {
        return Err(Error::invalid("injective c.l.m. needs n, d >= 1"));
    }
    let mut facets = Vec::new();
    for i in 0..n {
        let top = if i + 1 < n { d } else { 0 };
        for q in 0..=top {
            let mut e = vec![0u32; n];
            e[i] = (d - q) as u32;
            if q > 0 {
                e[i + 1] = q as u32;
            }
            facets.push(Multiset::new(e));
        }
    }
    let base = Pure::from_facets_dedup(n, d, facets);
    let layer_of = base.facets().iter().map(|m| m.weight() as i64).collect();
    Layered::new(base, layer_of)
}

/// Replaces `{1^{k_1}, …, n^{k_n}}` by `{(1,1), …, (1,k_1), …, (n,k_n)}`,
/// with `(i, c)` encoded as vertex `i·d + c − 1`.
pub fn multicomplex_to_complex(m: &LayeredMulticomplex) -> Result<LayeredComplex> {
    let d = m.base().d();
    let facets: Vec<(Facet, i64)> = m
        .base()
        .facets()
        .iter()
        .zip(m.layer_of())
        .map(|(x, &l)| {
            let verts = x.exponents().iter().enumerate().flat_map(|(i, &k)| (0..k as usize).map(move |c| i * d + c));
            (Facet::from_distinct(verts), l)
        })
        .collect();
    let base = PureComplex::new(m.base().n() * d, d, facets.iter().map(|(f, _)| f.clone()).collect())?;
    let layer_of = base.facets().iter().map(|f| facets.iter().find(|(g, _)| g == f).unwrap().1).collect();
    Layered::new(base, layer_of)
}

/// Known exact values of the maximum c.l.m. length: `(n−1)d` when `n ≤ 3` or `d ≤ 2`.
pub fn known_hclm(n: usize, d: usize) -> Option<usize> {
    (n >= 1 && (n <= 3 || d <= 2)).then(|| (n - 1) * d)
}

/// Number of facets of the complete multicomplex, `C(n+d−1, d)`.
pub fn complete_facet_count(n: usize, d: usize) -> u64 {
    binomial((n + d).saturating_sub(1) as u64, d as u64)
}

/// Layered JSON: the base with `"layers": [[facet indices], ...]`, layers from 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayeredJson<R> {
    pub schema: u32,
    pub n: usize,
    pub d: usize,
    pub facets: Vec<R>,
    pub layers: Vec<Vec<usize>>,
}

fn layers_to_json<F: Face, R>(m: &Layered<F>, row: impl Fn(&F) -> R) -> LayeredJson<R> {
    let a = m.a();
    let mut layers = vec![Vec::new(); m.length() + 1];
    for (i, &l) in m.layer_of().iter().enumerate() {
        layers[(l - a) as usize].push(i);
    }
    LayeredJson {
        schema: crate::complex::SCHEMA_VERSION,
        n: m.base().n(),
        d: m.base().d(),
        facets: m.base().facets().iter().map(row).collect(),
        layers,
    }
}

fn layers_from_json<F: Face, R>(j: LayeredJson<R>, face: impl Fn(R) -> Result<F>) -> Result<Layered<F>> {
    if j.schema != crate::complex::SCHEMA_VERSION {
        return Err(Error::invalid(format!("unsupported schema version {}", j.schema)));
    }
    let facets: Vec<F> = j.facets.into_iter().map(face).collect::<Result<_>>()?;
    let mut layer = vec![None; facets.len()];
    for (l, members) in j.layers.iter().enumerate() {
        for &i in members {
            match layer.get_mut(i) {
                Some(slot @ None) => *slot = Some(l),
                Some(Some(_)) => return Err(Error::invalid(format!("facet {i} is in two layers"))),
                None => return Err(Error::invalid(format!("facet index {i} out of range"))),
            }
        }
    }
    let layers: Vec<Vec<F>> = {
        let mut out = vec![Vec::new(); j.layers.len()];
        for (f, l) in facets.into_iter().zip(layer) {
            out[l.ok_or_else(|| Error::invalid("facet without a layer"))?].push(f);
        }
        out
    };
    Layered::from_layers(j.n, j.d, layers)
}

impl LayeredMulticomplex {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&layers_to_json(self, |f| f.exponents().to_vec())).expect("serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: LayeredJson<Vec<u32>> = serde_json::from_str(text).map_err(|e| Error::invalid(e.to_string()))?;
        let n = j.n;
        layers_from_json(j, |row| {
            if row.len() != n {
                return Err(Error::invalid(format!("exponent row {row:?} does not have length {n}")));
            }
            Ok(Multiset::new(row))
        })
    }
}

impl LayeredComplex {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&layers_to_json(self, |f| f.vertices().to_vec())).expect("serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: LayeredJson<Vec<usize>> = serde_json::from_str(text).map_err(|e| Error::invalid(e.to_string()))?;
        layers_from_json(j, Facet::new)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{complete_complex, corridor_2complex};

    fn ms(n: usize, elems: &[usize]) -> Multiset {
        Multiset::from_elements(n, &elems.iter().map(|e| e - 1).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn complete_three_two() {
        let m = complete_clm(3, 2).unwrap();
        assert!(m.validate());
        assert_eq!(m.length(), 4);
        let layers: Vec<Vec<String>> =
            m.layers().iter().map(|l| l.iter().map(|f| format!("{f:?}")).collect()).collect();
        let mut l4 = layers[2].clone();
        l4.sort();
        assert_eq!(layers[0], vec!["11"]);
        assert_eq!(layers[1], vec!["12"]);
        assert_eq!(l4, vec!["13", "22"]);
        assert_eq!(layers[3], vec!["23"]);
        assert_eq!(layers[4], vec!["33"]);
        assert_eq!((m.a(), m.b()), (2, 6));
    }

    #[test]
    fn moving_a_facet_breaks_the_interval_condition() {
        let m = complete_clm(3, 2).unwrap();
        let i = m.base().facet_index(&ms(3, &[2, 2])).unwrap();
        let mut layer_of = m.layer_of().to_vec();
        layer_of[i] = 6;
        let bad = Layered::new(m.base().clone(), layer_of).unwrap();
        let v = bad.violation().unwrap();
        assert_eq!(v.face, ms(3, &[2]));
        assert_eq!(v.missing, 4);
    }

    #[test]
    fn extremal_examples() {
        for n in 1..=6 {
            for d in 1..=6 {
                for m in [complete_clm(n, d).unwrap(), injective_clm(n, d).unwrap()] {
                    assert!(m.validate(), "{n},{d}");
                    assert_eq!(m.length(), d * (n - 1));
                }
                let inj = injective_clm(n, d).unwrap();
                assert!(inj.layers().iter().all(|l| l.len() == 1));
            }
        }
        let inj: Vec<String> = injective_clm(4, 3).unwrap().layers().iter().map(|l| format!("{:?}", l[0])).collect();
        assert_eq!(inj, ["111", "112", "122", "222", "223", "233", "333", "334", "344", "444"]);
        assert_eq!(complete_clm(4, 1).unwrap().layers().len(), 4);
    }

    #[test]
    fn single_layer_is_valid() {
        let base = PureMulticomplex::complete(3, 2);
        let m = Layered::new(base.clone(), vec![5; base.len()]).unwrap();
        assert!(m.validate());
        assert_eq!(m.length(), 0);
        assert!(Layered::new(base.clone(), vec![0, 2, 2, 2, 2, 2]).is_err());
    }

    #[test]
    fn links() {
        let m = complete_clm(4, 3).unwrap();
        let empty = Multiset::zero(4);
        assert_eq!(m.link(&empty).unwrap(), m);
        for v in 0..4 {
            let mut e = vec![0; 4];
            e[v] = 1;
            let l = m.link(&Multiset::new(e)).unwrap();
            assert!(l.validate());
            assert_eq!(l.base().d(), 2);
        }
        assert!(m.link(&Multiset::new(vec![4, 0, 0, 0])).is_err());
    }

    #[test]
    fn distance_layering() {
        for (n, d) in [(5, 2), (6, 3), (6, 2)] {
            let c = complete_complex(n, d);
            let m = layer_by_distance(&c, &c.facets()[0]).unwrap();
            assert!(m.validate());
            assert_eq!(m.length(), d.min(n - d));
        }
        let corridor = corridor_2complex(10).unwrap();
        let order = corridor.corridor_order().unwrap();
        let m = layer_by_distance(&corridor, &order[0]).unwrap();
        assert_eq!(m.length(), order.len() - 1);
    }

    #[test]
    fn substitution_preserves_structure() {
        let m = complete_clm(3, 2).unwrap();
        let c = multicomplex_to_complex(&m).unwrap();
        assert_eq!(c.base().n(), 6);
        assert!(c.validate());
        assert_eq!(c.length(), 4);
        assert_eq!(c.base().len(), m.base().len());
    }

    #[test]
    fn json_round_trip() {
        let m = complete_clm(3, 3).unwrap();
        let back = LayeredMulticomplex::from_json(&m.to_json()).unwrap();
        assert_eq!(back, m.normalized());
        let c = multicomplex_to_complex(&m).unwrap();
        assert_eq!(LayeredComplex::from_json(&c.to_json()).unwrap(), c.normalized());
        assert!(LayeredMulticomplex::from_json(
            r#"{"schema":1,"n":2,"d":1,"facets":[[1,0],[0,1]],"layers":[[0],[0]]}"#
        )
        .is_err());
    }
}
