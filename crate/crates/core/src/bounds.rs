//! Closed-form diameter bounds, known exact values and excess arithmetic.
//!
//! Bounds stated only up to a constant are evaluated with constant 1 and
//! flagged `constant_free`. Exact quantities are kept as rationals.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::diameter::{binomial, hirsch_excess};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Upper,
    Lower,
    Exact,
    Conjectural,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LogBase {
    Two,
    E,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundEntry {
    pub name: String,
    pub kind: BoundKind,
    /// Exact value when it is rational and fits.
    pub exact: Option<Ratio<i64>>,
    pub approx: f64,
    pub constant_free: bool,
    pub log_base: Option<LogBase>,
}

impl BoundEntry {
    fn exact(name: &str, kind: BoundKind, v: Ratio<i64>) -> Self {
        BoundEntry {
            name: name.into(),
            kind,
            exact: Some(v),
            approx: *v.numer() as f64 / *v.denom() as f64,
            constant_free: false,
            log_base: None,
        }
    }

    fn int(name: &str, kind: BoundKind, v: i64) -> Self {
        Self::exact(name, kind, Ratio::from_integer(v))
    }

    fn real(name: &str, kind: BoundKind, v: f64, log_base: Option<LogBase>) -> Self {
        BoundEntry { name: name.into(), kind, exact: None, approx: v, constant_free: false, log_base }
    }

    fn constant_free(mut self) -> Self {
        self.constant_free = true;
        self
    }
}

/// Inputs for a full report; entries needing a missing parameter are skipped.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundParams {
    pub n: u64,
    pub d: u64,
    pub m: Option<u64>,
    pub k: Option<u64>,
    pub l: Option<u64>,
    pub delta: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub params: BoundParams,
    pub entries: Vec<BoundEntry>,
}

impl BoundReport {
    pub fn get(&self, name: &str) -> Option<&BoundEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    /// One `name,kind,exact,approx,constant_free,log_base` row per entry.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("name,kind,exact,approx,constant_free,log_base\n");
        for e in &self.entries {
            let kind = serde_json::to_value(e.kind).unwrap();
            let base = e.log_base.map(|b| serde_json::to_value(b).unwrap());
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                e.name,
                kind.as_str().unwrap(),
                e.exact.map(|r| r.to_string()).unwrap_or_default(),
                e.approx,
                e.constant_free,
                base.as_ref().and_then(|b| b.as_str()).unwrap_or("")
            ));
        }
        out
    }
}

/// `n^{log₂ d + 1} − 1`, upper bound on the length of a c.l.m.
pub fn kalai_kleitman_clm(n: u64, d: u64) -> f64 {
    (n as f64).powf((d as f64).log2() + 1.0) - 1.0
}

/// `(n−1)·2^{d−1}`, upper bound on the length of a c.l.m.
pub fn barnette_larman_clm(n: u64, d: u64) -> u64 {
    (n.saturating_sub(1)) << (d.saturating_sub(1))
}

/// `2^{d−3}` as a rational (fractional below dimension 3).
fn pow2_minus3(d: u64) -> Ratio<i64> {
    if d >= 3 {
        Ratio::from_integer(1i64 << (d - 3))
    } else {
        Ratio::new(1, 1i64 << (3 - d))
    }
}

/// General polytope bounds at `(n, d)`, with the Hirsch value and known exact
/// value when available.
pub fn polytope_bounds(n: u64, d: u64) -> Vec<BoundEntry> {
    let (ni, di) = (n as i64, d as i64);
    let mut out = vec![
        BoundEntry::real(
            "kalai_kleitman_polytope",
            BoundKind::Upper,
            (n as f64).powf((d as f64).log2() + 2.0),
            Some(LogBase::Two),
        ),
        BoundEntry::exact("larman", BoundKind::Upper, pow2_minus3(d) * ni),
        BoundEntry::exact("barnette", BoundKind::Upper, pow2_minus3(d) * Ratio::new(2 * ni, 3)),
        BoundEntry::int("hirsch", BoundKind::Conjectural, ni - di),
    ];
    if d >= 1 {
        out.push(BoundEntry::int("bounded_lower", BoundKind::Lower, (di - 1) * ni / di - (di - 2)));
    }
    if let Some(h) = known_hb(n, d) {
        out.push(BoundEntry::int("known_hb", BoundKind::Exact, h as i64));
    }
    out
}

const KNOWN_HB: [((u64, u64), u64); 9] = [
    ((8, 4), 4),
    ((9, 4), 5),
    ((10, 5), 5),
    ((10, 4), 5),
    ((11, 5), 6),
    ((11, 4), 6),
    ((12, 6), 6),
    ((12, 4), 7),
    ((12, 5), 7),
];

/// The listed exact values of the maximum diameter of bounded `d`-polytopes
/// with `n` facets.
pub fn known_hb_table() -> &'static [((u64, u64), u64)] {
    &KNOWN_HB
}

/// Maximum diameter of a bounded `d`-polytope with `n` facets, when known:
/// the reduction `H(d+k, d) = H(2k, k)` for `k < d`, the formulas for
/// `d ≤ 3`, and the table.
pub fn known_hb(n: u64, d: u64) -> Option<u64> {
    if d == 0 || n <= d {
        return None;
    }
    let k = n - d;
    if k < d {
        return known_hb(2 * k, k);
    }
    match d {
        1 => Some(1),
        2 => Some(n / 2),
        3 => Some(2 * n / 3 - 1),
        _ => KNOWN_HB.iter().find(|(key, _)| *key == (n, d)).map(|(_, v)| *v),
    }
}

/// Parameters of the polyhedron obtained from a `d`-spindle with `n` facets
/// and length `l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DStep {
    /// Dimension `n − d`.
    pub dim: u64,
    /// Facets `2(n − d)`.
    pub facets: u64,
    /// `l + (n − 2d)`.
    pub diameter_lower: u64,
    /// Whether `l > d`, so the diameter exceeds `facets − dim`.
    pub violates_hirsch: bool,
}

pub fn strong_dstep(n: u64, d: u64, l: u64) -> Result<DStep> {
    if n <= 2 * d {
        return Err(Error::invalid(format!("need n > 2d, got n = {n}, d = {d}")));
    }
    Ok(DStep { dim: n - d, facets: 2 * (n - d), diameter_lower: l + (n - 2 * d), violates_hirsch: l > d })
}

/// `(l − d)/(n − d)`.
pub fn spindle_excess(n: u64, d: u64, l: u64) -> Result<Ratio<i64>> {
    if n <= d {
        return Err(Error::invalid("need n > d"));
    }
    Ok(Ratio::new(l as i64 - d as i64, (n - d) as i64))
}

/// `(1 − 1/k)·ε`.
pub fn asymptotic_excess(eps: Ratio<i64>, k: u64) -> Result<Ratio<i64>> {
    if k == 0 {
        return Err(Error::invalid("k must be positive"));
    }
    Ok((Ratio::from_integer(1) - Ratio::new(1, k as i64)) * eps)
}

/// Facets `12k(6k−1)` and width `4+k` of the five-dimensional spindle family.
pub fn msw_spindle(k: u64) -> (u64, u64) {
    (12 * k * (6 * k - 1), 4 + k)
}

/// Spindle excess of the `k`-th member of that family.
pub fn msw_excess(k: u64) -> Ratio<i64> {
    let (n, l) = msw_spindle(k);
    spindle_excess(n, 5, l).expect("n > 5")
}

/// Terms of the subdeterminant bound for dimension `d` and subdeterminant bound `m`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubdeterminantBounds {
    /// `1 + √(2/π)/(m² d^{2.5})`.
    pub expansion: f64,
    /// `ln(2^d · d! · d^{d/2} · m^d)`.
    pub log_volume_ratio: f64,
    /// Least `i` with `expansion^i ≥ 2^d d! d^{d/2} m^d`.
    pub iterations: u64,
    /// `2 · iterations`.
    pub diameter: u64,
    /// `√(π/2) · m² · d^{2.5} · ln(2^d d! d^{d/2} m^d)`.
    pub explicit: f64,
    /// `m² d^{3.5} ln(dm)`, constant-free.
    pub big_o: f64,
}

pub fn subdeterminant_bounds(d: u64, m: u64) -> Result<SubdeterminantBounds> {
    if d == 0 || m == 0 {
        return Err(Error::invalid("d and M must be positive"));
    }
    let (df, mf) = (d as f64, m as f64);
    let expansion = 1.0 + (2.0 / std::f64::consts::PI).sqrt() / (mf * mf * df.powf(2.5));
    let ln_fact: f64 = (1..=d).map(|i| (i as f64).ln()).sum();
    let log_volume_ratio = df * 2f64.ln() + ln_fact + df / 2.0 * df.ln() + df * mf.ln();
    let iterations = (log_volume_ratio / expansion.ln()).ceil() as u64;
    let explicit = (std::f64::consts::PI / 2.0).sqrt() * mf * mf * df.powf(2.5) * log_volume_ratio;
    let big_o = mf * mf * df.powf(3.5) * (df * mf).ln();
    Ok(SubdeterminantBounds { expansion, log_volume_ratio, iterations, diameter: 2 * iterations, explicit, big_o })
}

/// `k·d` for lattice polytopes in `[0,k]^d`.
pub fn kleinschmidt_onn(k: u64, d: u64) -> u64 {
    k * d
}

/// `d^16 n^3 (ln dn)^3`, constant-free.
pub fn dyer_frieze(n: u64, d: u64) -> f64 {
    let (nf, df) = (n as f64, d as f64);
    df.powi(16) * nf.powi(3) * (df * nf).ln().powi(3)
}

/// `n^{log₂ n + 1}`.
pub fn hnp_upper(n: u64) -> f64 {
    (n as f64).powf((n as f64).log2() + 1.0)
}

/// From the one-element family of length 2, the five-element family of
/// length 11, and two extra layers per element.
pub fn hnp_lower(n: u64) -> Option<u64> {
    match n {
        0 => None,
        1..=4 => Some(2 * n),
        _ => Some(11 + 2 * (n - 5)),
    }
}

/// `n^{(log₂ n)/2}`.
pub fn legal_upper(n: u64) -> f64 {
    (n as f64).powf((n as f64).log2() / 2.0)
}

/// `4^{C(k,2)}`, a lower bound at `n = 4^k`.
pub fn legal_lower_pow4(k: u64) -> Option<u64> {
    4u64.checked_pow(u32::try_from(binomial(k, 2)).ok()?)
}

/// Dimension `2⌈(k+3)²/4⌉` and vertex count `(k+3)²+2` of the non-weakly
/// k-decomposable family.
pub fn hkp_parameters(k: u64) -> (u64, u64) {
    let s = (k + 3) * (k + 3);
    (2 * s.div_ceil(4), s + 2)
}

/// Miscellaneous layered-family and legal-sequence quantities.
pub fn misc_bounds(n: u64, d: u64, k: Option<u64>) -> Vec<BoundEntry> {
    let (ni, di) = (n as i64, d as i64);
    let mut out = vec![
        BoundEntry::real("kalai_kleitman_clm", BoundKind::Upper, kalai_kleitman_clm(n, d), Some(LogBase::Two)),
        BoundEntry::int("barnette_larman_clm", BoundKind::Upper, barnette_larman_clm(n, d) as i64),
        BoundEntry::int("clm_conjecture", BoundKind::Conjectural, di * (ni - 1)),
        BoundEntry::int("hclm_rank2", BoundKind::Exact, 2 * ni - 2),
        BoundEntry::real("hclc_rank2_lower", BoundKind::Lower, 2.0 * n as f64 - (n as f64).sqrt(), None)
            .constant_free(),
        BoundEntry::real("hnp_upper", BoundKind::Upper, hnp_upper(n), Some(LogBase::Two)),
        BoundEntry::real("legal_upper", BoundKind::Upper, legal_upper(n), Some(LogBase::Two)),
    ];
    if d >= 2 {
        let df = d as f64;
        out.push(
            BoundEntry::real("hclc_4d_lower", BoundKind::Lower, df * df / df.log2(), Some(LogBase::Two))
                .constant_free(),
        );
    }
    if let Some(h) = hnp_lower(n) {
        out.push(BoundEntry::int("hnp_lower", BoundKind::Lower, h as i64));
    }
    if let Some(k) = k {
        if let Some(y) = legal_lower_pow4(k) {
            out.push(BoundEntry::int("legal_lower_pow4", BoundKind::Lower, y as i64));
        }
        let (dim, verts) = hkp_parameters(k);
        out.push(BoundEntry::int("hkp_dimension", BoundKind::Exact, dim as i64));
        out.push(BoundEntry::int("hkp_vertices", BoundKind::Exact, verts as i64));
    }
    out
}

/// Everything that applies to the given parameters.
pub fn bound_report(p: &BoundParams) -> Result<BoundReport> {
    if p.d == 0 || p.n <= p.d {
        return Err(Error::invalid(format!("need n > d >= 1, got n = {}, d = {}", p.n, p.d)));
    }
    let mut entries = polytope_bounds(p.n, p.d);
    entries.extend(misc_bounds(p.n, p.d, p.k));
    if let Some(delta) = p.delta {
        entries.push(BoundEntry::exact("hirsch_excess", BoundKind::Exact, hirsch_excess(p.n, p.d, delta)?));
    }
    if let Some(l) = p.l {
        entries.push(BoundEntry::exact("spindle_excess", BoundKind::Exact, spindle_excess(p.n, p.d, l)?));
        if let Ok(s) = strong_dstep(p.n, p.d, l) {
            entries.push(BoundEntry::int("dstep_dimension", BoundKind::Exact, s.dim as i64));
            entries.push(BoundEntry::int("dstep_facets", BoundKind::Exact, s.facets as i64));
            entries.push(BoundEntry::int("dstep_diameter_lower", BoundKind::Lower, s.diameter_lower as i64));
        }
    }
    if let Some(m) = p.m {
        let s = subdeterminant_bounds(p.d, m)?;
        entries.push(BoundEntry::real("subdeterminant_expansion", BoundKind::Exact, s.expansion, None));
        entries.push(BoundEntry::int("subdeterminant_diameter", BoundKind::Upper, s.diameter as i64));
        entries.push(BoundEntry::real("subdeterminant_explicit", BoundKind::Upper, s.explicit, Some(LogBase::E)));
        entries.push(
            BoundEntry::real("subdeterminant_big_o", BoundKind::Upper, s.big_o, Some(LogBase::E)).constant_free(),
        );
        entries.push(
            BoundEntry::real("dyer_frieze", BoundKind::Upper, dyer_frieze(p.n, p.d), Some(LogBase::E)).constant_free(),
        );
    }
    if let Some(k) = p.k {
        entries.push(BoundEntry::int("kleinschmidt_onn", BoundKind::Upper, kleinschmidt_onn(k, p.d) as i64));
    }
    Ok(BoundReport { params: p.clone(), entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clm_bounds() {
        assert_eq!(barnette_larman_clm(4, 3), 12);
        assert_eq!(kalai_kleitman_clm(4, 2), 15.0);
        for n in 2..=10 {
            for d in 2..=10 {
                assert!(barnette_larman_clm(n, d) >= d * (n - 1));
                assert!(kalai_kleitman_clm(n, d) + 1e-9 >= (d * (n - 1)) as f64);
            }
        }
    }

    #[test]
    fn known_values() {
        for &((n, d), v) in known_hb_table() {
            assert_eq!(known_hb(n, d), Some(v));
            assert!(v <= n - d);
        }
        assert_eq!(known_hb(10, 5), Some(5));
        assert_eq!(known_hb(9, 3), Some(5));
        assert_eq!(known_hb(13, 9), Some(4));
        assert_eq!(known_hb(7, 2), Some(3));
        assert_eq!(known_hb(13, 4), None);
        assert_eq!(known_hb(4, 4), None);
        assert_eq!(3 * 12 / 4 - 2, 7);
        let p = polytope_bounds(12, 4);
        let get = |name: &str| p.iter().find(|e| e.name == name).unwrap().exact.unwrap();
        assert_eq!(get("bounded_lower"), Ratio::from_integer(7));
        assert_eq!(get("known_hb"), Ratio::from_integer(7));
        assert_eq!(get("hirsch"), Ratio::from_integer(8));
    }

    #[test]
    fn lower_formula_matches_small_dimensions() {
        for n in 5..30 {
            let lower = |d: u64| (d - 1) * n / d - (d - 2);
            assert_eq!(known_hb(n, 2), Some(lower(2)));
            assert_eq!(known_hb(n, 3), Some(lower(3)));
        }
    }

    #[test]
    fn excess_arithmetic() {
        assert_eq!(hirsch_excess(8, 4, 5).unwrap(), Ratio::new(1, 4));
        assert_eq!(spindle_excess(25, 5, 6).unwrap(), Ratio::new(1, 20));
        assert_eq!(asymptotic_excess(Ratio::new(1, 20), 2).unwrap(), Ratio::new(1, 40));
        let s = strong_dstep(25, 5, 6).unwrap();
        assert_eq!(s, DStep { dim: 20, facets: 40, diameter_lower: 21, violates_hirsch: true });
        assert_eq!(strong_dstep(48, 5, 6).unwrap().dim, 43);
        assert!(!strong_dstep(25, 5, 5).unwrap().violates_hirsch);
        assert!(strong_dstep(10, 5, 6).is_err());
        assert_eq!(msw_spindle(1), (60, 5));
        assert_eq!(msw_excess(1), Ratio::from_integer(0));
        for k in 2..100 {
            assert!(msw_excess(k + 1) < msw_excess(k));
            assert!(msw_excess(k) > Ratio::from_integer(0));
        }
    }

    #[test]
    fn subdeterminants() {
        let s = subdeterminant_bounds(1, 1).unwrap();
        assert!((s.expansion - (1.0 + (2.0 / std::f64::consts::PI).sqrt())).abs() < 1e-12);
        for d in 1..=20 {
            for m in 1..=20 {
                let s = subdeterminant_bounds(d, m).unwrap();
                assert!(subdeterminant_bounds(d, m + 1).unwrap().iterations >= s.iterations);
                assert!(subdeterminant_bounds(d + 1, m).unwrap().iterations >= s.iterations);
                assert!(subdeterminant_bounds(d, m + 1).unwrap().explicit > s.explicit);
                assert!(subdeterminant_bounds(d + 1, m).unwrap().explicit > s.explicit);
            }
        }
        assert!(subdeterminant_bounds(10, 1).unwrap().explicit < dyer_frieze(10, 10));
        assert_eq!(kleinschmidt_onn(3, 4), 12);
    }

    #[test]
    fn misc() {
        assert_eq!(legal_lower_pow4(2), Some(4));
        assert_eq!(hkp_parameters(1), (8, 18));
        assert_eq!(hnp_lower(5), Some(11));
        assert_eq!(hnp_lower(1), Some(2));
        let r =
            bound_report(&BoundParams { n: 25, d: 5, l: Some(6), m: Some(1), k: Some(2), delta: Some(21) }).unwrap();
        assert_eq!(r.get("spindle_excess").unwrap().exact, Some(Ratio::new(1, 20)));
        assert!(r.to_csv().lines().count() == r.entries.len() + 1);
        assert!(r.get("dyer_frieze").unwrap().constant_free);
        assert!(bound_report(&BoundParams { n: 3, d: 3, ..Default::default() }).is_err());
    }
}
