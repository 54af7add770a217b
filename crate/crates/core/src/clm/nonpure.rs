//! Layered families of arbitrary subsets of `[n]` (the empty set included).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::caps::caps;
use crate::error::{Error, Result};

/// Layers of subsets of `[n]`, each subset a bitmask (bit `i` is element `i+1`).
/// The length of such a family is its number of layers.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonpureLayeredFamily {
    pub n: usize,
    pub layers: Vec<Vec<u32>>,
}

impl fmt::Debug for NonpureLayeredFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let set = |s: u32| -> String {
            if s == 0 {
                "∅".into()
            } else {
                (0..32).filter(|i| s >> i & 1 == 1).map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")
            }
        };
        let layers: Vec<String> = self
            .layers
            .iter()
            .map(|l| l.iter().map(|&s| format!("{{{}}}", set(s))).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "[{}] on {}", layers.join(" | "), self.n)
    }
}

impl NonpureLayeredFamily {
    /// Sets are given as lists of 1-based elements.
    pub fn from_lists(n: usize, layers: &[&[&[usize]]]) -> Result<Self> {
        let layers = layers
            .iter()
            .map(|l| {
                l.iter()
                    .map(|s| {
                        s.iter().try_fold(0u32, |m, &e| {
                            if e == 0 || e > n {
                                Err(Error::invalid(format!("element {e} outside 1..={n}")))
                            } else {
                                Ok(m | 1 << (e - 1))
                            }
                        })
                    })
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<_>>()?;
        Ok(NonpureLayeredFamily { n, layers })
    }

    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    /// The first `S ⊆ [n]` (as a bitmask, in increasing order) whose supersets
    /// in the family do not occupy an interval of layers; structural problems
    /// (empty layer, repeated set, element outside `[n]`) are errors.
    pub fn violation(&self) -> Result<Option<u32>> {
        Error::check_cap("non-pure ground set", self.n, caps().nonpure_elements.min(20))?;
        let universe = (1u32 << self.n) - 1;
        let mut seen: Vec<u32> = Vec::new();
        for (i, layer) in self.layers.iter().enumerate() {
            if layer.is_empty() {
                return Err(Error::invalid(format!("layer {i} is empty")));
            }
            for &s in layer {
                if s & !universe != 0 {
                    return Err(Error::invalid(format!("set {s:#b} is not a subset of [{}]", self.n)));
                }
                seen.push(s);
            }
        }
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("a set appears twice"));
        }
        for s in 0..=universe {
            let hits: Vec<usize> =
                (0..self.layers.len()).filter(|&i| self.layers[i].iter().any(|&x| x & s == s)).collect();
            if hits.windows(2).any(|w| w[1] > w[0] + 1) {
                return Ok(Some(s));
            }
        }
        Ok(None)
    }

    pub fn validate(&self) -> Result<bool> {
        Ok(self.violation()?.is_none())
    }

    /// Moves the empty set into a final layer of its own, dropping a layer
    /// left empty.
    pub fn normalized(&self) -> Self {
        let mut layers: Vec<Vec<u32>> = self
            .layers
            .iter()
            .map(|l| l.iter().copied().filter(|&s| s != 0).collect::<Vec<_>>())
            .filter(|l| !l.is_empty())
            .collect();
        layers.push(vec![0]);
        NonpureLayeredFamily { n: self.n, layers }
    }
}

/// The eleven-layer family on five elements.
pub fn example_hnp5() -> NonpureLayeredFamily {
    NonpureLayeredFamily::from_lists(
        5,
        &[
            &[&[1]],
            &[&[1, 5]],
            &[&[1, 4], &[5]],
            &[&[1, 2], &[3, 5], &[4]],
            &[&[1, 3], &[2, 5], &[4, 5]],
            &[&[2, 4, 5], &[3]],
            &[&[2, 4], &[3, 4]],
            &[&[2, 3, 4]],
            &[&[2, 3]],
            &[&[2]],
            &[&[]],
        ],
    )
    .expect("static family")
}

/// Adds the element `n+1` and two layers `[X ∪ {n+1}]`, `[{n+1}]` before the
/// final `[∅]`, where `X` is the least set of the layer before it.
pub fn extend_nonpure(f: &NonpureLayeredFamily) -> Result<NonpureLayeredFamily> {
    let f = f.normalized();
    if f.layers.len() < 2 {
        return Err(Error::invalid("extension needs a layer before the empty set"));
    }
    let e = 1u32 << f.n;
    let x = *f.layers[f.layers.len() - 2].iter().min().unwrap();
    let mut layers = f.layers.clone();
    let last = layers.pop().unwrap();
    layers.push(vec![x | e]);
    layers.push(vec![e]);
    layers.push(last);
    Ok(NonpureLayeredFamily { n: f.n + 1, layers })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eleven_layers_on_five() {
        let f = example_hnp5();
        assert_eq!(f.len(), 11);
        assert!(f.validate().unwrap());
        assert_eq!(f.normalized(), f);
    }

    #[test]
    fn extension_adds_two_layers() {
        let mut f = NonpureLayeredFamily::from_lists(1, &[&[&[1]], &[&[]]]).unwrap();
        assert_eq!(f.len(), 2);
        for step in 1..=5 {
            let g = extend_nonpure(&f).unwrap();
            assert_eq!(g.len(), f.len() + 2);
            assert!(g.validate().unwrap(), "step {step}: {g:?}");
            f = g;
        }
        assert_eq!(f.n, 6);
        let g = extend_nonpure(&extend_nonpure(&example_hnp5()).unwrap()).unwrap();
        assert_eq!(g.len(), 15);
        assert!(g.validate().unwrap());
    }

    #[test]
    fn violations() {
        let bad = NonpureLayeredFamily::from_lists(2, &[&[&[1]], &[&[2]], &[&[1, 2]]]).unwrap();
        assert_eq!(bad.violation().unwrap(), Some(0b01));
        let twice = NonpureLayeredFamily::from_lists(2, &[&[&[1]], &[&[1]]]).unwrap();
        assert!(twice.validate().is_err());
        assert!(NonpureLayeredFamily::from_lists(2, &[&[&[3]]]).is_err());
    }
}
