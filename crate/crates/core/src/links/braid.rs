use serde::{Deserialize, Serialize};

use super::matrix::LinkingMatrix;
use crate::error::{Error, Result};

/// A braid word on `strands` strands (zero strands is the empty link). Letter `g > 0` is the positive crossing
/// `σ_g` between positions `g-1` and `g` (0-based); `g < 0` is its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    word: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, word: Vec<i32>) -> Result<Self> {
        if strands == 0 && !word.is_empty() {
            return Err(Error::InvalidBraid("the empty braid has no crossings".into()));
        }
        if let Some(&g) = word
            .iter()
            .find(|&&g| g == 0 || g.unsigned_abs() as usize >= strands)
        {
            return Err(Error::InvalidBraid(format!(
                "generator {g} is out of range for {strands} strands"
            )));
        }
        Ok(Self { strands, word })
    }

    /// The trivial braid on `strands` strands.
    pub fn identity(strands: usize) -> Result<Self> {
        Self::new(strands, Vec::new())
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn word(&self) -> &[i32] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// Where each top position ends up at the bottom of the braid.
    pub fn permutation(&self) -> Vec<usize> {
        (0..self.strands).map(|s| self.follow(s)).collect()
    }

    fn follow(&self, mut pos: usize) -> usize {
        for &g in &self.word {
            let g = g.unsigned_abs() as usize;
            if pos == g - 1 {
                pos = g;
            } else if pos == g {
                pos = g - 1;
            }
        }
        pos
    }

    /// Components of the closure as cycles of top positions, each starting at
    /// its smallest position, ordered by that position.
    pub fn closure_components(&self) -> Vec<Vec<usize>> {
        let perm = self.permutation();
        let mut seen = vec![false; self.strands];
        let mut out = Vec::new();
        for s in 0..self.strands {
            if seen[s] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = perm[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn num_components(&self) -> usize {
        self.closure_components().len()
    }

    /// Component index of every top position.
    pub fn component_of_position(&self) -> Vec<usize> {
        let mut owner = vec![0; self.strands];
        for (c, cycle) in self.closure_components().iter().enumerate() {
            for &x in cycle {
                owner[x] = c;
            }
        }
        owner
    }

    /// Every generator inverted: the closure of the result is the mirror image.
    pub fn mirror(&self) -> Self {
        Self {
            strands: self.strands,
            word: self.word.iter().map(|g| -g).collect(),
        }
    }

    /// The word concatenated with itself `times` times.
    pub fn repeat(&self, times: usize) -> Self {
        Self {
            strands: self.strands,
            word: self.word.repeat(times),
        }
    }

    /// The same word on `strands + extra` strands.
    pub fn with_extra_strands(&self, extra: usize) -> Self {
        Self {
            strands: self.strands + extra,
            word: self.word.clone(),
        }
    }

    /// Signed crossing counts `lk` between distinct closure components
    /// (not yet halved), plus the component index of each top position.
    pub(crate) fn crossing_signs_between_components(&self) -> Vec<Vec<i64>> {
        let owner_top = self.component_of_position();
        let n = self.num_components();
        let mut owner = owner_top;
        let mut counts = vec![vec![0i64; n]; n];
        for &g in &self.word {
            let i = g.unsigned_abs() as usize;
            let (a, b) = (owner[i - 1], owner[i]);
            if a != b {
                let s = i64::from(g.signum());
                counts[a][b] += s;
                counts[b][a] += s;
            }
            owner.swap(i - 1, i);
        }
        counts
    }
}

/// A braid closure with an integer framing on every component, optionally
/// together with unknots that bound disks disjoint from the braid axis and
/// from the rest of the link (`split`, given by their framings).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "BraidJson", into = "BraidJson")]
pub struct FramedBraidLink {
    pub braid: BraidWord,
    pub framings: Vec<i64>,
    pub split: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct BraidJson {
    strands: usize,
    word: Vec<i32>,
    #[serde(default)]
    framings: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    split: Vec<i64>,
}

impl TryFrom<BraidJson> for FramedBraidLink {
    type Error = Error;

    fn try_from(j: BraidJson) -> Result<Self> {
        let braid = BraidWord::new(j.strands, j.word)?;
        let framings = j
            .framings
            .unwrap_or_else(|| vec![0; braid.num_components()]);
        let mut link = Self::new(braid, framings)?;
        link.split = j.split;
        Ok(link)
    }
}

impl From<FramedBraidLink> for BraidJson {
    fn from(l: FramedBraidLink) -> Self {
        BraidJson {
            strands: l.braid.strands,
            word: l.braid.word,
            framings: Some(l.framings),
            split: l.split,
        }
    }
}

impl FramedBraidLink {
    pub fn new(braid: BraidWord, framings: Vec<i64>) -> Result<Self> {
        let n = braid.num_components();
        if framings.len() != n {
            return Err(Error::InvalidBraid(format!(
                "closure has {n} components but {} framings were given",
                framings.len()
            )));
        }
        Ok(Self {
            braid,
            framings,
            split: Vec::new(),
        })
    }

    pub fn with_split(mut self, split: Vec<i64>) -> Self {
        self.split = split;
        self
    }

    pub fn num_components(&self) -> usize {
        self.framings.len() + self.split.len()
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("braid serializes")
    }

    /// Pairwise linking numbers with framings on the diagonal; braid
    /// components first, then the split unknots.
    pub fn linking_matrix(&self) -> LinkingMatrix {
        let counts = self.braid.crossing_signs_between_components();
        let nb = self.framings.len();
        let m = self.num_components();
        let mut entries = vec![vec![0i64; m]; m];
        for i in 0..nb {
            for j in 0..nb {
                entries[i][j] = if i == j {
                    self.framings[i]
                } else {
                    debug_assert!(counts[i][j] % 2 == 0, "closed braids cross each other evenly");
                    counts[i][j] / 2
                };
            }
        }
        for (s, &f) in self.split.iter().enumerate() {
            entries[nb + s][nb + s] = f;
        }
        LinkingMatrix::new(entries).expect("linking numbers are symmetric")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn braid(n: usize, w: &[i32]) -> BraidWord {
        BraidWord::new(n, w.to_vec()).unwrap()
    }

    #[test]
    fn components_of_closures() {
        assert_eq!(braid(2, &[1, 1]).closure_components(), vec![vec![0], vec![1]]);
        assert_eq!(braid(2, &[1, 1, 1]).closure_components(), vec![vec![0, 1]]);
        assert_eq!(braid(3, &[]).num_components(), 3);
        assert_eq!(braid(3, &[1, -2]).closure_components(), vec![vec![0, 2, 1]]);
        assert_eq!(braid(4, &[1, 3]).closure_components(), vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn rejects_bad_generators() {
        assert!(BraidWord::new(2, vec![2]).is_err());
        assert!(BraidWord::new(3, vec![0]).is_err());
        assert!(BraidWord::new(0, vec![1]).is_err());
        assert_eq!(BraidWord::new(0, vec![]).unwrap().num_components(), 0);
        assert!(FramedBraidLink::new(braid(2, &[1, 1]), vec![0]).is_err());
    }

    #[test]
    fn linking_matrices() {
        let hopf = FramedBraidLink::new(braid(2, &[1, 1]), vec![0, 0]).unwrap();
        assert_eq!(hopf.linking_matrix().entries(), &[vec![0, 1], vec![1, 0]]);
        let neg_hopf = FramedBraidLink::new(braid(2, &[-1, -1]), vec![3, -2]).unwrap();
        assert_eq!(neg_hopf.linking_matrix().entries(), &[vec![3, -1], vec![-1, -2]]);
        let unknot = FramedBraidLink::new(braid(1, &[]), vec![5]).unwrap();
        assert_eq!(unknot.linking_matrix().entries(), &[vec![5]]);
        let unlink = FramedBraidLink::new(braid(2, &[]), vec![2, -7]).unwrap();
        assert_eq!(unlink.linking_matrix().entries(), &[vec![2, 0], vec![0, -7]]);
        // Whitehead-style: linking number zero despite crossings
        let w = FramedBraidLink::new(braid(3, &[1, 1, -2, -2]), vec![0, 0, 0]).unwrap();
        assert_eq!(w.linking_matrix().entries()[0][1], 1);
        assert_eq!(w.linking_matrix().entries()[1][2], -1);
        let split = FramedBraidLink::new(braid(2, &[1, 1]), vec![1, 1]).unwrap().with_split(vec![4]);
        assert_eq!(
            split.linking_matrix().entries(),
            &[vec![1, 1, 0], vec![1, 1, 0], vec![0, 0, 4]]
        );
    }

    #[test]
    fn json_schema() {
        let l = FramedBraidLink::from_json(r#"{"strands": 2, "word": [1, 1], "framings": [1, -1]}"#).unwrap();
        assert_eq!(l.framings, vec![1, -1]);
        let back = FramedBraidLink::from_json(&l.to_json()).unwrap();
        assert_eq!(back, l);
        let no_framing = FramedBraidLink::from_json(r#"{"strands": 2, "word": [1, 1, 1]}"#).unwrap();
        assert_eq!(no_framing.framings, vec![0]);
        assert!(FramedBraidLink::from_json(r#"{"strands": 2, "word": [3]}"#).is_err());
        assert!(FramedBraidLink::from_json(r#"{"strands": 2, "word": [1], "framings": [1, 2]}"#).is_err());
    }
}
