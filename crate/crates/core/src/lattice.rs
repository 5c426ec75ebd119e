//! Subgroups of `ℤ^k` in Hermite normal form.

/// Row-style Hermite normal form of the lattice spanned by `rows`.
///
/// The result is upper triangular with positive pivots, entries above each
/// pivot reduced into `[0, pivot)`, and zero rows dropped. Two generating
/// sets span the same subgroup exactly when their forms are equal.
pub fn hermite_normal_form(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let Some(first) = rows.first() else { return Vec::new() };
    let cols = first.len();
    let mut m: Vec<Vec<i64>> = rows.iter().filter(|r| r.iter().any(|&x| x != 0)).cloned().collect();
    let mut top = 0;
    for col in 0..cols {
        if top == m.len() {
            break;
        }
        loop {
            // Smallest nonzero entry in this column becomes the pivot candidate.
            let pivot = (top..m.len()).filter(|&r| m[r][col] != 0).min_by_key(|&r| m[r][col].abs());
            let Some(p) = pivot else { break };
            m.swap(top, p);
            let mut done = true;
            for r in top + 1..m.len() {
                if m[r][col] != 0 {
                    let q = m[r][col] / m[top][col];
                    for c in col..cols {
                        m[r][c] -= q * m[top][c];
                    }
                    done &= m[r][col] == 0;
                }
            }
            if done {
                break;
            }
        }
        if m[top][col] == 0 {
            continue;
        }
        if m[top][col] < 0 {
            for c in col..cols {
                m[top][c] = -m[top][c];
            }
        }
        for r in 0..top {
            let q = m[r][col].div_euclid(m[top][col]);
            for c in col..cols {
                m[r][c] -= q * m[top][c];
            }
        }
        top += 1;
    }
    m.truncate(top);
    m
}

/// Whether `v` lies in the lattice whose normal form is `basis`.
pub fn contains(basis: &[Vec<i64>], v: &[i64]) -> bool {
    let mut v = v.to_vec();
    for row in basis {
        let Some(col) = row.iter().position(|&x| x != 0) else { continue };
        if v[col] % row[col] != 0 {
            return false;
        }
        let q = v[col] / row[col];
        for (x, r) in v.iter_mut().zip(row) {
            *x -= q * r;
        }
    }
    v.iter().all(|&x| x == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_examples() {
        assert_eq!(hermite_normal_form(&[vec![2], vec![3]]), vec![vec![1]]);
        assert_eq!(hermite_normal_form(&[vec![4], vec![6]]), vec![vec![2]]);
        assert_eq!(hermite_normal_form(&[vec![1, 1], vec![1, -1]]), vec![vec![1, 1], vec![0, 2]]);
        assert!(hermite_normal_form(&[vec![0, 0]]).is_empty());
        let b = hermite_normal_form(&[vec![1, 1], vec![1, -1]]);
        assert!(contains(&b, &[2, 0]));
        assert!(!contains(&b, &[1, 0]));
    }

    proptest! {
        #[test]
        fn generators_stay_in_their_lattice(rows in prop::collection::vec(prop::collection::vec(-6i64..6, 3), 1..4)) {
            let basis = hermite_normal_form(&rows);
            for r in &rows {
                prop_assert!(contains(&basis, r));
            }
            prop_assert_eq!(hermite_normal_form(&basis), basis.clone());
            let mut shuffled = rows.clone();
            shuffled.reverse();
            prop_assert_eq!(hermite_normal_form(&shuffled), basis);
        }
    }
}
