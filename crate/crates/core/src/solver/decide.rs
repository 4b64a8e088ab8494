//! Verdicts predicted by the known characterizations.

use serde::{Deserialize, Serialize};

use crate::doublestar::{criterion_small_families, tree_nonpartition_criterion};
use crate::wheelgeom::WheelModel;

/// Whether a partition of the given kind exists.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdicts {
    pub tree: Verdict,
    pub subgraph: Verdict,
    pub double_star: Verdict,
}

fn yes_if(b: bool) -> Verdict {
    if b {
        Verdict::Yes
    } else {
        Verdict::No
    }
}

/// Exact tree and subgraph verdicts on bumpy wheels; on other wheels the
/// tree verdict is `No` when every run of `(k-1)/2` groups has fewer than
/// `n - 2` points and `Unknown` otherwise. The double star verdict is exact:
/// impossible iff three small runs (at most `n - 2` points) cover all groups.
pub fn decide_theorem(model: &WheelModel) -> Verdicts {
    let double_star = yes_if(!criterion_small_families(model));
    match model.bumpy_params() {
        Some((k, l)) => Verdicts {
            tree: yes_if(l <= 3),
            subgraph: yes_if(!(l > 5 || (l == 5 && k > 3))),
            double_star,
        },
        None => {
            let tree = if tree_nonpartition_criterion(model) { Verdict::No } else { Verdict::Unknown };
            Verdicts { tree, subgraph: Verdict::Unknown, double_star }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bumpy_verdicts() {
        let v = decide_theorem(&WheelModel::bumpy(3, 5).unwrap());
        assert_eq!((v.tree, v.subgraph), (Verdict::No, Verdict::Yes));
        let v = decide_theorem(&WheelModel::bumpy(5, 5).unwrap());
        assert_eq!((v.tree, v.subgraph), (Verdict::No, Verdict::No));
        let v = decide_theorem(&WheelModel::bumpy(3, 3).unwrap());
        assert_eq!((v.tree, v.double_star), (Verdict::Yes, Verdict::No));
    }

    #[test]
    fn generalized_tree_is_sufficient_only() {
        let v = decide_theorem(&WheelModel::generalized(&[2, 3, 3, 4, 5]).unwrap());
        assert_eq!(v.tree, Verdict::Unknown);
    }
}
