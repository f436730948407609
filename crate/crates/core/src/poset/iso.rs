use super::Poset;
use crate::subset::Subset;

/// An order isomorphism `p → q`, as `q`-indices per `p`-element.
pub fn are_isomorphic(p: &Poset, q: &Poset) -> Option<Vec<usize>> {
    find_relation_isomorphism(p.down_rows(), q.down_rows())
}

/// Finds a bijection `m` with `j ∈ a[i] ⟺ m(j) ∈ b[m(i)]`.
///
/// Rows describe a reflexive relation (a preorder or a partial order). The
/// search backtracks over candidates sharing an invariant signature.
pub fn find_relation_isomorphism(a: &[Subset], b: &[Subset]) -> Option<Vec<usize>> {
    let n = a.len();
    if n != b.len() {
        return None;
    }
    let sig_a = signatures(a);
    let sig_b = signatures(b);
    let mut sorted_a = sig_a.clone();
    let mut sorted_b = sig_b.clone();
    sorted_a.sort_unstable();
    sorted_b.sort_unstable();
    if sorted_a != sorted_b {
        return None;
    }

    // Rarest signature classes first; ties keep elements with many
    // relations early so conflicts surface quickly.
    let class_size = |s: &Signature| sorted_a.iter().filter(|t| *t == s).count();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| {
        (
            class_size(&sig_a[i]),
            std::cmp::Reverse(sig_a[i].down + sig_a[i].up),
            i,
        )
    });

    let mut map = vec![usize::MAX; n];
    let mut used = Subset::EMPTY;
    if search(0, &order, a, b, &sig_a, &sig_b, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn search(
    k: usize,
    order: &[usize],
    a: &[Subset],
    b: &[Subset],
    sig_a: &[Signature],
    sig_b: &[Signature],
    map: &mut [usize],
    used: &mut Subset,
) -> bool {
    if k == order.len() {
        return true;
    }
    let i = order[k];
    for j in 0..b.len() {
        if used.contains(j) || sig_a[i] != sig_b[j] {
            continue;
        }
        let consistent = order[..k].iter().all(|&u| {
            let v = map[u];
            a[i].contains(u) == b[j].contains(v) && a[u].contains(i) == b[v].contains(j)
        });
        if consistent {
            map[i] = j;
            *used = used.with(j);
            if search(k + 1, order, a, b, sig_a, sig_b, map, used) {
                return true;
            }
            *used = used.without(j);
            map[i] = usize::MAX;
        }
    }
    false
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Signature {
    height: usize,
    down: usize,
    up: usize,
    lower_covers: usize,
    upper_covers: usize,
    down_weight: usize,
    up_weight: usize,
}

fn signatures(rows: &[Subset]) -> Vec<Signature> {
    let n = rows.len();
    let up: Vec<Subset> = (0..n)
        .map(|i| (0..n).filter(|&j| rows[j].contains(i)).collect())
        .collect();
    let equiv = |i: usize| rows[i] & up[i];
    let strict_down: Vec<Subset> = (0..n).map(|i| rows[i] - equiv(i)).collect();
    let strict_up: Vec<Subset> = (0..n).map(|i| up[i] - equiv(i)).collect();

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| strict_down[i].len());
    let mut height = vec![1usize; n];
    for &i in &order {
        height[i] = strict_down[i]
            .iter()
            .map(|j| height[j] + 1)
            .max()
            .unwrap_or(1);
    }

    let lower_covers = |i: usize| {
        strict_down[i]
            .iter()
            .filter(|&j| (strict_up[j] & strict_down[i]).is_empty())
            .count()
    };
    let upper_covers = |i: usize| {
        strict_up[i]
            .iter()
            .filter(|&j| (strict_down[j] & strict_up[i]).is_empty())
            .count()
    };
    (0..n)
        .map(|i| Signature {
            height: height[i],
            down: rows[i].len(),
            up: up[i].len(),
            lower_covers: lower_covers(i),
            upper_covers: upper_covers(i),
            down_weight: rows[i].iter().map(|j| rows[j].len()).sum(),
            up_weight: up[i].iter().map(|j| up[j].len()).sum(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force(p: &Poset, q: &Poset) -> bool {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for pos in 0..n {
                    let mut v = p.clone();
                    v.insert(pos, n - 1);
                    out.push(v);
                }
            }
            out
        }
        p.len() == q.len()
            && perms(p.len()).into_iter().any(|m| {
                (0..p.len()).all(|x| (0..p.len()).all(|y| p.leq(x, y) == q.leq(m[x], m[y])))
            })
    }

    #[test]
    fn chain_versus_antichain() {
        let c = Poset::chain(vec!["a", "b"]).unwrap();
        let a = Poset::antichain(vec!["a", "b"]).unwrap();
        assert!(are_isomorphic(&c, &a).is_none());
        assert!(are_isomorphic(&c, &c).is_some());
    }

    #[test]
    fn witness_is_an_order_isomorphism() {
        let p = Poset::new(vec!["a", "b", "c", "d"], &[(0, 2), (1, 2), (1, 3)]).unwrap();
        let q = Poset::new(vec!["w", "x", "y", "z"], &[(3, 0), (3, 1), (2, 1)]).unwrap();
        let m = are_isomorphic(&p, &q).expect("isomorphic");
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(p.leq(x, y), q.leq(m[x], m[y]));
            }
        }
    }

    #[test]
    fn agrees_with_brute_force_on_small_posets() {
        // All posets on 4 labelled elements generated from relation subsets.
        let pairs: Vec<(usize, usize)> = (0..4)
            .flat_map(|a| (0..4).filter(move |&b| a < b).map(move |b| (a, b)))
            .collect();
        let mut pool = Vec::new();
        for mask in 0u32..(1 << pairs.len()) {
            let rel: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            if let Ok(p) = Poset::new(vec!["0", "1", "2", "3"], &rel) {
                if !pool.contains(&p) {
                    pool.push(p);
                }
            }
        }
        for p in pool.iter().step_by(3) {
            for q in pool.iter().step_by(5) {
                assert_eq!(are_isomorphic(p, q).is_some(), brute_force(p, q));
            }
        }
    }
}
