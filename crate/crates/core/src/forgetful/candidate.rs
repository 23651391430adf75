use std::collections::HashMap;

use crate::partition::SymmetryPartition;
use crate::weights::WeightSystem;

use super::ForgetfulCandidate;

/// Indices grouped by equal numerator, groups in order of first appearance.
pub(crate) fn weight_classes(w: &WeightSystem) -> Vec<Vec<usize>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, &n) in w.numerators().iter().enumerate() {
        match classes.iter_mut().find(|c| w.numerators()[c[0]] == n) {
            Some(c) => c.push(i),
            None => classes.push(vec![i]),
        }
    }
    classes
}

/// One alignment per orbit of the full weight-symmetry groups of source and
/// target. Such an orbit is determined by how many slots of each target value
/// receive each source value, so the representatives are the contingency
/// tables with the target classes as rows and source classes as columns.
pub(crate) fn weight_orbit_alignments(mu: &WeightSystem, nu: &WeightSystem) -> Vec<Vec<usize>> {
    if nu.len() > mu.len() {
        return Vec::new();
    }
    let rows = weight_classes(nu);
    let cols = weight_classes(mu);
    let mut out = Vec::new();
    let mut table: Vec<Vec<usize>> = Vec::new();
    let mut used = vec![0usize; cols.len()];
    fn compositions(n: usize, caps: &[usize]) -> Vec<Vec<usize>> {
        if caps.is_empty() {
            return if n == 0 { vec![Vec::new()] } else { Vec::new() };
        }
        let mut out = Vec::new();
        for x in (0..=n.min(caps[0])).rev() {
            for mut rest in compositions(n - x, &caps[1..]) {
                rest.insert(0, x);
                out.push(rest);
            }
        }
        out
    }
    fn rec(
        r: usize,
        rows: &[Vec<usize>],
        cols: &[Vec<usize>],
        used: &mut Vec<usize>,
        table: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<usize>>,
        kt: usize,
    ) {
        if r == rows.len() {
            let mut a = vec![0; kt];
            let mut taken = vec![0usize; cols.len()];
            for (row, counts) in rows.iter().zip(table.iter()) {
                let mut slots = row.iter();
                for (c, &n) in counts.iter().enumerate() {
                    for _ in 0..n {
                        a[*slots.next().expect("row count matches slots")] = cols[c][taken[c]];
                        taken[c] += 1;
                    }
                }
            }
            out.push(a);
            return;
        }
        let caps: Vec<usize> = cols.iter().zip(used.iter()).map(|(c, &u)| c.len() - u).collect();
        for counts in compositions(rows[r].len(), &caps) {
            for (u, &n) in used.iter_mut().zip(&counts) {
                *u += n;
            }
            table.push(counts);
            rec(r + 1, rows, cols, used, table, out, kt);
            let counts = table.pop().expect("pushed above");
            for (u, &n) in used.iter_mut().zip(&counts) {
                *u -= n;
            }
        }
    }
    rec(0, &rows, &cols, &mut used, &mut table, &mut out, nu.len());
    out
}

/// Relabeling maps reachable from the identity by weight-preserving
/// transpositions, one per distinct image of `p`.
fn partition_orbit(w: &WeightSystem, p: &SymmetryPartition) -> Vec<(SymmetryPartition, Vec<usize>)> {
    let gens: Vec<(usize, usize)> =
        weight_classes(w).iter().flat_map(|c| c.windows(2).map(|x| (x[0], x[1])).collect::<Vec<_>>()).collect();
    let mut seen: HashMap<SymmetryPartition, usize> = HashMap::new();
    let mut orbit = vec![(p.clone(), (0..w.len()).collect::<Vec<usize>>())];
    seen.insert(p.clone(), 0);
    let mut head = 0;
    while head < orbit.len() {
        let (q, map) = orbit[head].clone();
        head += 1;
        for &(x, y) in &gens {
            let swap = |i: usize| {
                if i == x {
                    y
                } else if i == y {
                    x
                } else {
                    i
                }
            };
            let t: Vec<usize> = (0..w.len()).map(swap).collect();
            let image = q.relabeled(&t);
            if !seen.contains_key(&image) {
                seen.insert(image.clone(), orbit.len());
                orbit.push((image, map.iter().map(|&m| swap(m)).collect()));
            }
        }
    }
    orbit
}

fn invert(map: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; map.len()];
    for (i, &m) in map.iter().enumerate() {
        inv[m] = i;
    }
    inv
}

/// All alignments from `(ν, Τ)` into `(μ, Σ)`, one per class under relabeling
/// the source by weight-preserving permutations that preserve the blocks of
/// `Σ` and the target likewise for `Τ`. Sorted by alignment.
pub fn generate_candidates(
    source: (&WeightSystem, &SymmetryPartition),
    target: (&WeightSystem, &SymmetryPartition),
) -> Vec<ForgetfulCandidate> {
    let (mu, sigma) = source;
    let (nu, tau) = target;
    if nu.len() > mu.len() || sigma.len() != mu.len() || tau.len() != nu.len() {
        return Vec::new();
    }
    // Classes inside one weight orbit correspond to the orbits of the
    // stabilizer of its representative acting on the images of (Σ, Τ).
    let s_orbit = partition_orbit(mu, sigma);
    let t_orbit = partition_orbit(nu, tau);
    let s_index: HashMap<&SymmetryPartition, usize> = s_orbit.iter().enumerate().map(|(n, (p, _))| (p, n)).collect();
    let t_index: HashMap<&SymmetryPartition, usize> = t_orbit.iter().enumerate().map(|(n, (p, _))| (p, n)).collect();
    let nt = t_orbit.len();
    let mut out = Vec::new();
    for a0 in weight_orbit_alignments(mu, nu) {
        let mut parent: Vec<usize> = (0..s_orbit.len() * nt).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        // Stabilizer generators: swap two slots of the same (target value,
        // source value) cell together with their sources, or swap two
        // forgotten sources of equal weight.
        let mut gens: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        let swap = |n: usize, x: usize, y: usize| -> Vec<usize> {
            (0..n)
                .map(|i| {
                    if i == x {
                        y
                    } else if i == y {
                        x
                    } else {
                        i
                    }
                })
                .collect()
        };
        for i in 0..nu.len() {
            for j in i + 1..nu.len() {
                if nu.numerators()[i] == nu.numerators()[j] && mu.numerators()[a0[i]] == mu.numerators()[a0[j]] {
                    gens.push((swap(mu.len(), a0[i], a0[j]), swap(nu.len(), i, j)));
                }
            }
        }
        let forgotten: Vec<usize> = (0..mu.len()).filter(|x| !a0.contains(x)).collect();
        for (p, &x) in forgotten.iter().enumerate() {
            for &y in &forgotten[p + 1..] {
                if mu.numerators()[x] == mu.numerators()[y] {
                    gens.push((swap(mu.len(), x, y), (0..nu.len()).collect()));
                }
            }
        }
        for (si, (sp, _)) in s_orbit.iter().enumerate() {
            for (ti, (tp, _)) in t_orbit.iter().enumerate() {
                for (gs, gt) in &gens {
                    let sj = s_index[&sp.relabeled(gs)];
                    let tj = t_index[&tp.relabeled(gt)];
                    let (x, y) = (find(&mut parent, si * nt + ti), find(&mut parent, sj * nt + tj));
                    parent[x.max(y)] = x.min(y);
                }
            }
        }
        for node in 0..parent.len() {
            if find(&mut parent, node) != node {
                continue;
            }
            let (p, q) = (&s_orbit[node / nt].1, &t_orbit[node % nt].1);
            let p_inv = invert(p);
            let alignment: Vec<usize> = (0..nu.len()).map(|i| p_inv[a0[q[i]]]).collect();
            out.push(ForgetfulCandidate {
                source: mu.clone(),
                sigma: sigma.clone(),
                target: nu.clone(),
                tau: tau.clone(),
                alignment,
            });
        }
    }
    out.sort_by(|a, b| a.alignment.cmp(&b.alignment));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forgetful::{classify_candidate, ClassifyOptions};

    fn ws(nums: &[i64], den: i64) -> WeightSystem {
        WeightSystem::new(nums, den).unwrap()
    }

    /// Brute force: all injective alignments, deduplicated by canonical form
    /// under the explicit automorphism groups.
    fn brute(mu: &WeightSystem, s: &SymmetryPartition, nu: &WeightSystem, t: &SymmetryPartition) -> usize {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![Vec::new()];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for pos in 0..n {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let auts = |w: &WeightSystem, p: &SymmetryPartition| -> Vec<Vec<usize>> {
            perms(w.len())
                .into_iter()
                .filter(|g| (0..w.len()).all(|i| w.numerators()[g[i]] == w.numerators()[i]) && p.relabeled(g) == *p)
                .collect()
        };
        let (gs, gt) = (auts(mu, s), auts(nu, t));
        let mut classes = std::collections::HashSet::new();
        for full in perms(mu.len()) {
            let a: Vec<usize> = full[..nu.len()].to_vec();
            let mut images: Vec<Vec<usize>> = Vec::new();
            for g in &gs {
                for h in &gt {
                    // relabel source by g and target by h: slot h(i) gets g(a(i))
                    let mut b = vec![0; nu.len()];
                    for i in 0..nu.len() {
                        b[h[i]] = g[a[i]];
                    }
                    images.push(b);
                }
            }
            classes.insert(images.into_iter().min().unwrap());
        }
        classes.len()
    }

    #[test]
    fn three_classes_for_the_basic_example() {
        let mu = ws(&[3, 3, 3, 3, 3, 1], 8);
        let nu = ws(&[3, 3, 3, 7], 8);
        let c = generate_candidates((&mu, &SymmetryPartition::singletons(6)), (&nu, &SymmetryPartition::singletons(4)));
        assert_eq!(c.len(), 3);
        assert_eq!(brute(&mu, &SymmetryPartition::singletons(6), &nu, &SymmetryPartition::singletons(4)), 3);
    }

    #[test]
    fn matches_brute_force_with_blocks() {
        let mu = ws(&[3, 3, 3, 3, 3, 1], 8);
        let s = SymmetryPartition::new(6, vec![vec![0, 1], vec![2], vec![3], vec![4], vec![5]]).unwrap();
        let nu = ws(&[3, 3, 3, 3, 4], 8);
        let t = SymmetryPartition::new(5, vec![vec![0, 1, 2], vec![3], vec![4]]).unwrap();
        let c = generate_candidates((&mu, &s), (&nu, &t));
        assert_eq!(c.len(), brute(&mu, &s, &nu, &t));
        let mu = ws(&[2, 2, 3, 3, 1, 1], 6);
        let s = SymmetryPartition::new(6, vec![vec![0], vec![1], vec![2], vec![3], vec![4, 5]]).unwrap();
        let nu = ws(&[1, 3, 4, 4], 6);
        let t = SymmetryPartition::singletons(4);
        assert_eq!(generate_candidates((&mu, &s), (&nu, &t)).len(), brute(&mu, &s, &nu, &t));
    }

    #[test]
    fn identity_is_present() {
        let mu = ws(&[2, 2, 2, 3, 3], 6);
        let s = SymmetryPartition::new(5, vec![vec![0, 1, 2], vec![3], vec![4]]).unwrap();
        let c = generate_candidates((&mu, &s), (&mu, &s));
        let id = c.iter().find(|c| c.alignment == vec![0, 1, 2, 3, 4]).expect("identity class");
        assert!(classify_candidate(id, &ClassifyOptions::default()).is_orbifold_map());
    }

    #[test]
    fn larger_target_is_empty() {
        let mu = ws(&[2, 2, 2, 3, 3], 6);
        let nu = ws(&[2, 2, 2, 2, 2, 2], 6);
        assert!(!generate_candidates(
            (&nu, &SymmetryPartition::singletons(6)),
            (&mu, &SymmetryPartition::singletons(5))
        )
        .is_empty());
        assert!(generate_candidates(
            (&mu, &SymmetryPartition::singletons(5)),
            (&nu, &SymmetryPartition::singletons(6))
        )
        .is_empty());
    }
}
