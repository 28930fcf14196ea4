use serde::{Deserialize, Serialize};

use crate::homology::TorusSkeleton;

use super::ConstructionError;

fn binomials(n: usize) -> Vec<usize> {
    let mut row = vec![1usize];
    for _ in 0..n {
        let mut next = vec![1; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row
}

/// Betti profile of a subcomplex next to the torus profile it should match.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileCheck {
    pub label: String,
    pub betti: Vec<usize>,
    pub expected: Vec<usize>,
    pub holds: bool,
}

impl ProfileCheck {
    fn new(label: String, s: &TorusSkeleton, torus_dim: usize) -> Self {
        let betti = s.homology().betti;
        let expected = binomials(torus_dim);
        let holds = !s.is_empty() && betti == expected;
        Self {
            label,
            betti,
            expected,
            holds,
        }
    }
}

/// Three `n`-tori in the `(n+1)`-torus, each missing one of the indices 1, 2, 3.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleTorus {
    pub n: usize,
    pub q: TorusSkeleton,
    pub tori: Vec<TorusSkeleton>,
    pub torus_profiles: Vec<ProfileCheck>,
    pub pairwise_profiles: Vec<ProfileCheck>,
    pub triple_profile: ProfileCheck,
}

impl TripleTorus {
    /// Each torus is an `n`-torus, pairwise intersections are `(n-1)`-tori and
    /// the triple intersection is a nonempty `(n-2)`-torus.
    pub fn hypotheses_hold(&self) -> bool {
        self.torus_profiles.iter().chain(&self.pairwise_profiles).all(|p| p.holds) && self.triple_profile.holds
    }
}

pub fn triple_torus_q(n: usize) -> Result<TripleTorus, ConstructionError> {
    if n < 2 {
        return Err(ConstructionError::param("n", n, "must be at least 2"));
    }
    let k = n + 1;
    let missing = |i: usize| -> Vec<usize> { (1..=k).filter(|&j| j != i).collect() };
    let tori: Vec<TorusSkeleton> = (1..=3).map(|i| TorusSkeleton::from_closed_cells(k, &[missing(i)])).collect();
    let q = TorusSkeleton::from_closed_cells(k, &[missing(1), missing(2), missing(3)]);
    let torus_profiles = tori
        .iter()
        .enumerate()
        .map(|(i, t)| ProfileCheck::new(format!("T{}", i + 1), t, n))
        .collect();
    let pairwise_profiles = [(0, 1), (0, 2), (1, 2)]
        .iter()
        .map(|&(a, b)| ProfileCheck::new(format!("T{} & T{}", a + 1, b + 1), &tori[a].intersection(&tori[b]), n - 1))
        .collect();
    let triple = tori[0].intersection(&tori[1]).intersection(&tori[2]);
    let triple_profile = ProfileCheck::new("T1 & T2 & T3".into(), &triple, n - 2);
    Ok(TripleTorus {
        n,
        q,
        tori,
        torus_profiles,
        pairwise_profiles,
        triple_profile,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_rows() {
        assert_eq!(binomials(0), vec![1]);
        assert_eq!(binomials(4), vec![1, 4, 6, 4, 1]);
    }

    #[test]
    fn small_cases() {
        let t = triple_torus_q(2).unwrap();
        assert!(t.hypotheses_hold());
        assert_eq!(t.triple_profile.betti, vec![1]);
        assert!(t.pairwise_profiles.iter().all(|p| p.betti == vec![1, 1]));
        let t3 = triple_torus_q(3).unwrap();
        assert_eq!(t3.triple_profile.betti, vec![1, 1]);
        assert!(t3.hypotheses_hold());
        assert!(triple_torus_q(1).is_err());
    }
}
