//! k-decomposability and weak k-decomposability, with shedding certificates.
//!
//! A complex is (weakly) k-decomposable if it is a single facet, or some face
//! `S` with at most `k+1` vertices has a pure full-dimensional deletion
//! `C∖S` (facets not containing `S`) that is again (weakly) k-decomposable;
//! the strong version also asks the same of `lk(S)`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::caps::caps;
use crate::complex::{Face, Facet, PureComplex, VertexId};
use crate::constructions::{nabla, nabla_minus, nabla_plus};
use crate::diameter::{binomial, dual_diameter};
use crate::error::{Error, Result};

/// A shedding certificate. Leaves are single facets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SheddingTree {
    pub complex: PureComplex,
    pub shedding_face: Option<Facet>,
    pub deletion: Option<Box<SheddingTree>>,
    /// Absent for the weak notion.
    pub link: Option<Box<SheddingTree>>,
}

impl SheddingTree {
    /// Nodes in the tree.
    pub fn size(&self) -> usize {
        1 + self.deletion.as_ref().map_or(0, |t| t.size()) + self.link.as_ref().map_or(0, |t| t.size())
    }

    /// The shedding faces along the deletion branch.
    pub fn shedding_sequence(&self) -> Vec<Facet> {
        let mut out = Vec::new();
        let mut node = self;
        while let (Some(s), Some(next)) = (&node.shedding_face, &node.deletion) {
            out.push(s.clone());
            node = next;
        }
        out
    }
}

/// Outcome of a decision, with a certificate when positive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decision {
    pub decomposable: bool,
    pub certificate: Option<SheddingTree>,
    /// Distinct complexes (up to isomorphism) decided.
    pub states: u64,
}

/// Memoized decider; the memo is keyed on canonical forms.
pub struct Decider {
    k: usize,
    weak: bool,
    budget: Option<u64>,
    memo: HashMap<Vec<Facet>, bool>,
}

impl Decider {
    pub fn new(k: usize, weak: bool, budget: Option<u64>) -> Self {
        Decider { k, weak, budget, memo: HashMap::new() }
    }

    pub fn states(&self) -> u64 {
        self.memo.len() as u64
    }

    /// Candidate shedding faces: faces with `1..=k+1` vertices, in face order.
    fn candidates(&self, c: &PureComplex) -> Vec<Facet> {
        c.faces().into_iter().filter(|s| !s.is_empty() && s.len() <= self.k + 1).collect()
    }

    pub fn decide(&mut self, c: &PureComplex) -> Result<bool> {
        if c.len() == 1 {
            return Ok(true);
        }
        let key = c.canonical_key()?;
        if let Some(&v) = self.memo.get(&key) {
            return Ok(v);
        }
        if let Some(b) = self.budget {
            if self.memo.len() as u64 >= b {
                return Err(Error::Budget { budget: b });
            }
        }
        let mut found = false;
        for s in self.candidates(c) {
            if self.sheds(c, &s)? {
                found = true;
                break;
            }
        }
        self.memo.insert(key, found);
        Ok(found)
    }

    fn sheds(&mut self, c: &PureComplex, s: &Facet) -> Result<bool> {
        let Some(del) = c.deletion(s) else { return Ok(false) };
        if !self.decide(&del)? {
            return Ok(false);
        }
        Ok(self.weak || self.decide(&c.link(s)?)?)
    }

    /// Rebuilds a certificate for a complex already decided positively.
    pub fn certificate(&mut self, c: &PureComplex) -> Result<Option<SheddingTree>> {
        if c.len() == 1 {
            return Ok(Some(SheddingTree { complex: c.clone(), shedding_face: None, deletion: None, link: None }));
        }
        if !self.decide(c)? {
            return Ok(None);
        }
        for s in self.candidates(c) {
            if !self.sheds(c, &s)? {
                continue;
            }
            let del = c.deletion(&s).expect("checked pure");
            let deletion = self.certificate(&del)?.map(Box::new);
            let link = if self.weak { None } else { self.certificate(&c.link(&s)?)?.map(Box::new) };
            return Ok(Some(SheddingTree { complex: c.clone(), shedding_face: Some(s), deletion, link }));
        }
        unreachable!("memo said decomposable")
    }
}

fn decide_with(c: &PureComplex, k: usize, weak: bool, budget: Option<u64>) -> Result<Decision> {
    if k >= c.d() {
        return Err(Error::invalid(format!("k = {k} must be below the rank {}", c.d())));
    }
    Error::check_cap("vertices for decomposability", c.used_vertices().len(), caps().decomposable_vertices)?;
    let mut decider = Decider::new(k, weak, budget);
    let decomposable = decider.decide(c)?;
    let certificate = if decomposable { decider.certificate(c)? } else { None };
    Ok(Decision { decomposable, certificate, states: decider.states() })
}

/// Exact decision of k-decomposability; `budget` bounds the distinct states.
pub fn is_k_decomposable(c: &PureComplex, k: usize, budget: Option<u64>) -> Result<Decision> {
    decide_with(c, k, false, budget)
}

/// Exact decision of weak k-decomposability.
pub fn is_weakly_k_decomposable(c: &PureComplex, k: usize, budget: Option<u64>) -> Result<Decision> {
    decide_with(c, k, true, budget)
}

/// Replays a certificate: base cases, face sizes, pureness of every deletion
/// and the stored children. Returns the first problem found.
pub fn verify_certificate(tree: &SheddingTree, k: usize, weak: bool) -> std::result::Result<(), String> {
    let c = &tree.complex;
    let Some(s) = &tree.shedding_face else {
        return if c.len() == 1 { Ok(()) } else { Err(format!("leaf with {} facets", c.len())) };
    };
    if s.is_empty() || s.len() > k + 1 {
        return Err(format!("shedding face {s:?} has the wrong size"));
    }
    if !c.facets().iter().any(|f| s.is_subface_of(f)) {
        return Err(format!("{s:?} is not a face"));
    }
    let max = c.deletion_maximal_faces(s);
    if max.is_empty() || max.iter().any(|f| f.len() != c.d()) {
        return Err(format!("deletion of {s:?} is not pure"));
    }
    let del = tree.deletion.as_ref().ok_or("missing deletion branch")?;
    let expected: Vec<&Facet> = c.facets().iter().filter(|f| !s.is_subface_of(f)).collect();
    if del.complex.facets().iter().collect::<Vec<_>>() != expected {
        return Err(format!("deletion branch of {s:?} does not match"));
    }
    verify_certificate(del, k, weak)?;
    match (&tree.link, weak) {
        (None, true) => Ok(()),
        (Some(_), true) => Err("link branch in a weak certificate".into()),
        (None, false) => Err("missing link branch".into()),
        (Some(lk), false) => {
            let expected = c.link(s).map_err(|e| e.to_string())?;
            if lk.complex != expected {
                return Err(format!("link branch of {s:?} does not match"));
            }
            verify_certificate(lk, k, weak)
        }
    }
}

/// Diameter against the decomposability bounds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProvanBilleraReport {
    pub k: usize,
    pub decomposable: bool,
    pub weakly_decomposable: bool,
    pub diameter: usize,
    pub f_k: usize,
    /// `f_k − C(d, k+1)`, used when decomposable.
    pub bound: i64,
    /// `2 f_k`, used when weakly decomposable.
    pub weak_bound: usize,
    /// Every applicable inequality holds.
    pub holds: bool,
}

pub fn provan_billera_check(c: &PureComplex, k: usize, budget: Option<u64>) -> Result<ProvanBilleraReport> {
    let strong = is_k_decomposable(c, k, budget)?.decomposable;
    let weak = strong || is_weakly_k_decomposable(c, k, budget)?.decomposable;
    let diameter = dual_diameter(c)?.diameter;
    let f_k = c.f_count(k);
    let bound = f_k as i64 - binomial(c.d() as u64, k as u64 + 1) as i64;
    let weak_bound = 2 * f_k;
    let holds = (!strong || diameter as i64 <= bound) && (!weak || diameter <= weak_bound);
    Ok(ProvanBilleraReport {
        k,
        decomposable: strong,
        weakly_decomposable: weak,
        diameter,
        f_k,
        bound,
        weak_bound,
        holds,
    })
}

/// One case of the obstruction argument for ∇_{a,b}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionCase {
    /// Deleted vertices, in order.
    pub sequence: Vec<VertexId>,
    /// A facet that survives every deletion.
    pub survivor: Facet,
    /// A face of the final complex contained in no surviving facet.
    pub ridge: Facet,
    /// The two facets of ∇ over `ridge`; both are deleted.
    pub twins: [Facet; 2],
    pub survivor_present: bool,
    pub ridge_uncovered: bool,
    /// First step (1-based) whose deletion is not pure, by generic check.
    pub nonpure_at: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub a: usize,
    pub b: usize,
    pub cases: Vec<ObstructionCase>,
    /// Ordered triples of distinct vertices tried as shedding sequences.
    pub sequences_checked: usize,
    /// Whether every such triple hits a non-pure deletion.
    pub all_sequences_fail: bool,
}

impl ObstructionReport {
    pub fn confirmed(&self) -> bool {
        self.all_sequences_fail
            && self.cases.iter().all(|c| c.survivor_present && c.ridge_uncovered && c.nonpure_at.is_some())
    }
}

/// First step at which deleting the vertices one by one is not pure.
fn first_nonpure(c: &PureComplex, sequence: &[VertexId]) -> Option<usize> {
    let mut cur = c.clone();
    for (i, &v) in sequence.iter().enumerate() {
        match cur.deletion(&Facet::new(vec![v]).expect("vertex")) {
            Some(next) => cur = next,
            None => return Some(i + 1),
        }
    }
    None
}

/// Checks the vertex-deletion obstruction on ∇_{a,b}: the three cases left
/// after symmetry, each in every admissible order, and independently every
/// ordered triple of vertices.
pub fn dk_obstruction_witness(a: usize, b: usize) -> Result<ObstructionReport> {
    if a < 2 || b < 2 {
        return Err(Error::invalid("the obstruction needs a, b >= 2"));
    }
    let c = nabla(a, b)?;
    Error::check_cap("vertices for decomposability", c.used_vertices().len(), caps().decomposable_vertices)?;
    let m = a + b + 1;
    let face = |plus: Vec<usize>, minus: Vec<usize>| -> Facet {
        let mut v: Vec<VertexId> = plus.into_iter().map(nabla_plus).collect();
        v.extend(minus.into_iter().map(nabla_minus));
        Facet::new(v).expect("distinct labels")
    };
    let ridge = face((3..=a + 1).collect(), (a + 2..=m).collect());
    let twins = [ridge.with(nabla_plus(1)), ridge.with(nabla_plus(2))];
    let survivor_a = face((b + 2..=m).collect(), (2..=b + 1).collect());
    let survivor_b = face((b + 2..=m).collect(), [1, 2].into_iter().chain(4..=b + 1).collect());

    let (p1, p2) = (nabla_plus(1), nabla_plus(2));
    let mut orders: Vec<(Vec<VertexId>, &Facet)> = vec![(vec![p1, p2], &survivor_a), (vec![p2, p1], &survivor_a)];
    for (minus, survivor) in [(nabla_minus(1), &survivor_a), (nabla_minus(3), &survivor_b)] {
        // Orders where the first two are not both positive.
        for seq in [[minus, p1, p2], [minus, p2, p1], [p1, minus, p2], [p2, minus, p1]] {
            orders.push((seq.to_vec(), survivor));
        }
    }
    let mut cases = Vec::new();
    for (sequence, survivor) in orders {
        let kept: Vec<&Facet> = c.facets().iter().filter(|f| !sequence.iter().any(|&v| f.contains(v))).collect();
        let survivor_present = kept.contains(&survivor);
        let ridge_uncovered = !sequence.iter().any(|&v| ridge.contains(v))
            && !kept.iter().any(|f| ridge.is_subface_of(f))
            && twins.iter().all(|t| c.facet_index(t).is_some() && !kept.contains(&t));
        let nonpure_at = first_nonpure(&c, &sequence);
        cases.push(ObstructionCase {
            sequence,
            survivor: survivor.clone(),
            ridge: ridge.clone(),
            twins: twins.clone(),
            survivor_present,
            ridge_uncovered,
            nonpure_at,
        });
    }

    let vertices = c.used_vertices();
    let mut sequences_checked = 0;
    let mut all_sequences_fail = true;
    for &x in &vertices {
        for &y in &vertices {
            for &z in &vertices {
                if x == y || y == z || x == z {
                    continue;
                }
                sequences_checked += 1;
                if first_nonpure(&c, &[x, y, z]).is_none() {
                    all_sequences_fail = false;
                }
            }
        }
    }
    Ok(ObstructionReport { a, b, cases, sequences_checked, all_sequences_fail })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{barycentric_subdivision, complete_complex};

    fn boundary(d: usize) -> PureComplex {
        complete_complex(d + 1, d)
    }

    #[test]
    fn single_facet_and_boundaries() {
        let one = PureComplex::from_lists(4, 3, vec![vec![0, 1, 2]]).unwrap();
        let r = is_k_decomposable(&one, 0, None).unwrap();
        assert!(r.decomposable);
        assert!(r.certificate.unwrap().shedding_face.is_none());
        for d in 1..=4 {
            let c = boundary(d);
            let r = is_k_decomposable(&c, 0, None).unwrap();
            assert!(r.decomposable, "d = {d}");
            verify_certificate(&r.certificate.unwrap(), 0, false).unwrap();
        }
    }

    #[test]
    fn complete_complexes_are_vertex_decomposable() {
        for n in 3..=6 {
            for d in 1..n {
                let c = complete_complex(n, d);
                let r = is_k_decomposable(&c, 0, None).unwrap();
                assert!(r.decomposable, "({n},{d})");
                let tree = r.certificate.unwrap();
                verify_certificate(&tree, 0, false).unwrap();
                let w = is_weakly_k_decomposable(&c, 0, None).unwrap();
                assert!(w.decomposable);
                verify_certificate(&w.certificate.unwrap(), 0, true).unwrap();
                let pb = provan_billera_check(&c, 0, None).unwrap();
                assert!(pb.holds, "{pb:?}");
            }
        }
    }

    #[test]
    fn nabla_fixtures() {
        let small = nabla(1, 1).unwrap();
        assert!(is_weakly_k_decomposable(&small, 0, None).unwrap().decomposable);
        assert!(is_k_decomposable(&small, 0, None).unwrap().decomposable);
        let big = nabla(2, 2).unwrap();
        let r = is_weakly_k_decomposable(&big, 0, None).unwrap();
        assert!(!r.decomposable);
        assert!(r.certificate.is_none());
        assert!(!is_k_decomposable(&big, 0, None).unwrap().decomposable);
    }

    #[test]
    fn obstruction_cases() {
        let r = dk_obstruction_witness(2, 2).unwrap();
        assert_eq!(r.cases.len(), 10);
        assert_eq!(r.sequences_checked, 720);
        assert!(r.confirmed(), "{r:?}");
        assert!(dk_obstruction_witness(1, 2).is_err());
    }

    #[test]
    fn monotone_in_k_and_weaker() {
        let sd = barycentric_subdivision(&boundary(2)).complex;
        let hexagon = PureComplex::from_lists(6, 2, (0..6).map(|i| vec![i, (i + 1) % 6]).collect()).unwrap();
        for c in [sd, hexagon, boundary(3), nabla(1, 2).unwrap()] {
            for k in 0..c.d() {
                let strong = is_k_decomposable(&c, k, None).unwrap();
                let weak = is_weakly_k_decomposable(&c, k, None).unwrap();
                if strong.decomposable {
                    assert!(weak.decomposable);
                    if k + 1 < c.d() {
                        assert!(is_k_decomposable(&c, k + 1, None).unwrap().decomposable);
                    }
                    assert!(provan_billera_check(&c, k, None).unwrap().holds);
                }
            }
        }
    }

    #[test]
    fn verifier_rejects_tampering() {
        let c = boundary(2);
        let mut tree = is_k_decomposable(&c, 0, None).unwrap().certificate.unwrap();
        tree.shedding_face = Some(Facet::new(vec![0, 1]).unwrap());
        assert!(verify_certificate(&tree, 0, false).is_err());
        let weak = is_weakly_k_decomposable(&c, 0, None).unwrap().certificate.unwrap();
        assert!(verify_certificate(&weak, 0, false).is_err());
    }

    #[test]
    fn budget_and_range() {
        let big = nabla(2, 2).unwrap();
        assert!(matches!(is_weakly_k_decomposable(&big, 0, Some(1)), Err(Error::Budget { budget: 1 })));
        assert!(is_k_decomposable(&boundary(2), 2, None).is_err());
    }
}
