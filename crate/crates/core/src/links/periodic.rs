use super::braid::{BraidWord, FramedBraidLink};
use crate::error::{Error, Result};

/// The closure of `b^p`: the preimage of closure(b) in the `p`-fold cyclic
/// cover of the complement of the braid axis.
pub fn periodic_lift(b: &BraidWord, p: usize) -> Result<BraidWord> {
    if p == 0 {
        return Err(Error::Precondition("the period must be positive".into()));
    }
    Ok(b.repeat(p))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongPeriodicity {
    /// Lifted link: braid components in closure order, then `p` copies of the
    /// split unknots (copy by copy).
    pub lift: FramedBraidLink,
    /// Linking number of every lifted component with the axis.
    pub axis_linking: Vec<usize>,
    /// Where the generating rotation sends each lifted component.
    pub rotation: Vec<usize>,
    pub strongly_periodic: bool,
}

/// Lifts a framed quotient link to its `p`-periodic preimage and tests
/// whether every lifted component links the axis a multiple of `p` times.
/// Lifted components inherit the framing of the component they cover.
pub fn strong_periodicity_check(quotient: &FramedBraidLink, p: usize) -> Result<StrongPeriodicity> {
    if p < 2 {
        return Err(Error::Precondition(format!("the period must be at least 2, got {p}")));
    }
    let b = &quotient.braid;
    let lifted = periodic_lift(b, p)?;
    let comps = lifted.closure_components();
    let quotient_of = b.component_of_position();
    let lifted_of = lifted.component_of_position();
    let framings = comps.iter().map(|c| quotient.framings[quotient_of[c[0]]]).collect();

    let nb = comps.len();
    let ns = quotient.split.len();
    let mut axis_linking: Vec<usize> = comps.iter().map(Vec::len).collect();
    axis_linking.extend(std::iter::repeat(0).take(ns * p));

    // a point at the top of block j at position x came from pi^-1(x) at the top of block j-1
    let perm = b.permutation();
    let mut inverse = vec![0; perm.len()];
    for (x, &y) in perm.iter().enumerate() {
        inverse[y] = x;
    }
    let mut rotation: Vec<usize> = comps.iter().map(|c| lifted_of[inverse[c[0]]]).collect();
    rotation.extend((0..ns * p).map(|i| nb + (i + ns) % (ns * p)));

    let lift = FramedBraidLink::new(lifted, framings)?.with_split(quotient.split.repeat(p));
    let strongly_periodic = axis_linking.iter().all(|&l| l % p == 0);
    Ok(StrongPeriodicity {
        lift,
        axis_linking,
        rotation,
        strongly_periodic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn braid(n: usize, w: &[i32]) -> BraidWord {
        BraidWord::new(n, w.to_vec()).unwrap()
    }

    fn framed(n: usize, w: &[i32]) -> FramedBraidLink {
        let b = braid(n, w);
        let c = b.num_components();
        FramedBraidLink::new(b, vec![0; c]).unwrap()
    }

    /// Strand counts of the closure by walking every crossing of the word.
    fn brute_strand_counts(b: &BraidWord) -> Vec<usize> {
        let n = b.strands();
        let mut seen = vec![false; n];
        let mut counts = Vec::new();
        for s in 0..n {
            let mut x = s;
            let mut len = 0;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                for &g in b.word() {
                    let i = g.unsigned_abs() as usize;
                    if x + 1 == i {
                        x = i;
                    } else if x == i {
                        x = i - 1;
                    }
                }
            }
            if len > 0 {
                counts.push(len);
            }
        }
        counts
    }

    #[test]
    fn lifts_are_powers() {
        assert_eq!(periodic_lift(&braid(2, &[1]), 3).unwrap().word(), &[1, 1, 1]);
        assert_eq!(periodic_lift(&braid(3, &[1, -2]), 1).unwrap().word(), &[1, -2]);
        assert_eq!(periodic_lift(&braid(2, &[1, 1]), 2).unwrap().word(), &[1, 1, 1, 1]);
        assert!(periodic_lift(&braid(2, &[1]), 0).is_err());
    }

    #[test]
    fn trefoil_is_not_strongly_3_periodic() {
        let check = strong_periodicity_check(&framed(2, &[1]), 3).unwrap();
        assert_eq!(check.axis_linking, vec![2]);
        assert!(!check.strongly_periodic);
        assert_eq!(check.lift.braid.word(), &[1, 1, 1]);
    }

    #[test]
    fn split_unknots_lift_to_copies() {
        let quotient = FramedBraidLink::new(braid(0, &[]), vec![]).unwrap().with_split(vec![2]);
        let check = strong_periodicity_check(&quotient, 3).unwrap();
        assert!(check.strongly_periodic);
        assert_eq!(check.rotation, vec![1, 2, 0]);
        assert_eq!(check.lift.linking_matrix().entries(), &[vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2]]);
    }

    #[test]
    fn hopf_lift_matches_brute_force() {
        let check = strong_periodicity_check(&framed(2, &[1, 1]), 2).unwrap();
        let brute = brute_strand_counts(&braid(2, &[1, 1, 1, 1]));
        assert_eq!(check.axis_linking, brute);
        assert_eq!(check.strongly_periodic, brute.iter().all(|l| l % 2 == 0));
        assert!(!check.strongly_periodic);
        // sigma_1^6 closes to two parallel strands
        let knot = strong_periodicity_check(&framed(2, &[1, 1, 1]), 2).unwrap();
        assert_eq!(knot.axis_linking, vec![1, 1]);
        let four = strong_periodicity_check(&framed(4, &[1, 2, 3]), 2).unwrap();
        assert_eq!(four.axis_linking, vec![2, 2]);
        assert!(four.strongly_periodic);
    }

    fn random_quotient() -> impl Strategy<Value = (FramedBraidLink, usize)> {
        (1usize..5, 2usize..5).prop_flat_map(|(n, p)| {
            let letters = prop::collection::vec((1..n.max(2) as i32, any::<bool>()), 0..7);
            (letters, prop::collection::vec(-3i64..=3, n), Just((n, p)))
        })
        .prop_filter_map("valid braid", |(letters, frames, (n, p))| {
            let w = letters.into_iter().map(|(g, s)| if s { g } else { -g }).collect();
            let b = BraidWord::new(n, w).ok()?;
            let c = b.num_components();
            Some((FramedBraidLink::new(b, frames[..c].to_vec()).ok()?, p))
        })
    }

    proptest! {
        #[test]
        fn axis_linking_is_the_strand_count((q, p) in random_quotient()) {
            let check = strong_periodicity_check(&q, p).unwrap();
            let lifted = q.braid.repeat(p);
            let mut brute = brute_strand_counts(&lifted);
            let mut ours = check.axis_linking.clone();
            brute.sort_unstable();
            ours.sort_unstable();
            prop_assert_eq!(ours, brute);
            prop_assert_eq!(check.axis_linking.iter().sum::<usize>(), q.braid.strands());
        }

        #[test]
        fn lift_linking_matrix_is_rotation_invariant((q, p) in random_quotient(), split in prop::collection::vec(-2i64..=2, 0..3)) {
            let q = q.with_split(split);
            let check = strong_periodicity_check(&q, p).unwrap();
            let lk = check.lift.linking_matrix();
            let rot = &check.rotation;
            let m = lk.dim();
            let mut sorted = rot.clone();
            sorted.sort_unstable();
            prop_assert_eq!(sorted, (0..m).collect::<Vec<_>>());
            // rot^p = id
            for i in 0..m {
                let mut j = i;
                for _ in 0..p {
                    j = rot[j];
                }
                prop_assert_eq!(j, i);
            }
            for i in 0..m {
                for j in 0..m {
                    prop_assert_eq!(lk.get(rot[i], rot[j]), lk.get(i, j));
                }
            }
        }
    }
}
