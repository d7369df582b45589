use super::*;
use std::collections::HashMap;

fn p(s: &str) -> LaurentPoly {
    s.parse().unwrap()
}

fn m(rows: &[&[&str]]) -> PolyMatrix {
    PolyMatrix::from_rows(rows.iter().map(|r| r.iter().map(|s| p(s)).collect()).collect()).unwrap()
}

fn word(n: usize, letters: &[i32]) -> BraidWord {
    BraidWord::new(n, letters.to_vec()).unwrap()
}

#[test]
fn basis_layout() {
    let b = KrammerBasis::new(4).unwrap();
    assert_eq!(b.pairs(), &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]);
    assert_eq!(b.index(2, 4), Some(4));
    assert_eq!(b.index(3, 3), None);
    assert_eq!(b.block(2), 3..5);
    for n in 2..8 {
        let b = KrammerBasis::new(n).unwrap();
        assert_eq!(b.dim(), n * (n - 1) / 2);
        assert!(b.pairs().windows(2).all(|w| w[0] < w[1]));
        assert_eq!((1..n).map(|k| b.block(k).len()).collect::<Vec<_>>(), (1..n).rev().collect::<Vec<_>>());
    }
    assert!(KrammerBasis::new(1).is_err());
}

#[test]
fn b3_generators() {
    assert_eq!(
        krammer_generator(3, 1, 1).unwrap(),
        m(&[&["t*q^2", "0", "0"], &["t*q*(q - 1)", "0", "q"], &["0", "1", "1 - q"]])
    );
    assert_eq!(
        krammer_generator(3, 2, 1).unwrap(),
        m(&[&["1 - q", "q", "0"], &["1", "0", "t*q^2*(q - 1)"], &["0", "0", "t*q^2"]])
    );
    assert_eq!(krammer_generator(2, 1, 1).unwrap(), m(&[&["t*q^2"]]));
    assert_eq!(krammer_generator(3, 3, 1), Err(Error::IndexOutOfRange { index: 3, strands: 3 }));
    assert_eq!(krammer_generator(3, 0, 1), Err(Error::IndexOutOfRange { index: 0, strands: 3 }));
    assert!(krammer_generator(3, 1, 2).is_err());
}

#[test]
fn det_k_sigma1_in_b3() {
    // cofactor expansion along the first row of the 3x3 matrix
    let k = krammer_generator(3, 1, 1).unwrap();
    let expected = k.get(0, 0) * &(k.get(1, 1) * k.get(2, 2) - k.get(1, 2) * k.get(2, 1));
    assert_eq!(k.det().unwrap(), expected);
    assert_eq!(expected, p("-t*q^3"));
}

#[test]
fn generators_are_invertible() {
    for n in 2..=6 {
        for k in 1..n {
            let pos = krammer_generator(n, k, 1).unwrap();
            assert!(pos.det().unwrap().is_unit());
            let neg = krammer_generator(n, k, -1).unwrap();
            assert!(pos.matmul(&neg).unwrap().is_identity());
            assert!(neg.matmul(&pos).unwrap().is_identity());
        }
    }
}

fn assert_artin_relations(n: usize, rep: impl Fn(&BraidWord) -> PolyMatrix) {
    for i in 1..n as i32 {
        for j in i + 1..n as i32 {
            if j - i > 1 {
                assert_eq!(rep(&word(n, &[i, j])), rep(&word(n, &[j, i])), "n={n} s{i} s{j}");
            } else {
                assert_eq!(rep(&word(n, &[i, j, i])), rep(&word(n, &[j, i, j])), "n={n} s{i} s{j} s{i}");
            }
        }
    }
}

#[test]
fn krammer_artin_relations() {
    for n in 3..=6 {
        assert_artin_relations(n, krammer_word);
    }
}

#[test]
fn burau_artin_relations() {
    for n in 3..=5 {
        assert_artin_relations(n, burau_word);
    }
}

#[test]
fn word_products() {
    assert!(krammer_word(&word(3, &[])).is_identity());
    let full_twist = word(3, &[1, 2, 1, 2, 1, 2]);
    assert_eq!(krammer_word(&full_twist), PolyMatrix::scalar(3, p("t^2*q^6")));
    let w = word(4, &[1, -2, 3, 2]);
    let manual = krammer_generator(4, 1, 1)
        .unwrap()
        .matmul(&krammer_generator(4, 2, -1).unwrap())
        .unwrap()
        .matmul(&krammer_generator(4, 3, 1).unwrap())
        .unwrap()
        .matmul(&krammer_generator(4, 2, 1).unwrap())
        .unwrap();
    assert_eq!(krammer_word(&w), manual);
    assert!(krammer_word(&word(4, &[2, 3, -3, -2])).is_identity());
}

#[test]
fn nontrivial_columns() {
    let c = nontrivial_column(3, 1).unwrap();
    assert_eq!(c, vec![p("t*q^2"), p("t*q*(q - 1)"), p("0")]);
    let c = nontrivial_column(6, 1).unwrap();
    let mut expected = vec![p("t*q^2")];
    expected.extend(std::iter::repeat_n(p("t*q*(q - 1)"), 4));
    expected.extend(std::iter::repeat_n(LaurentPoly::zero(), 10));
    assert_eq!(c, expected);
    assert!(nontrivial_column(6, 6).is_err());
}

#[test]
fn nontrivial_column_closed_form() {
    // rows (a, b) with a < k feed e_{k,k+1}: b = k+1 gives t q^{k-a+1}(q-1),
    // b > k+1 gives t q^{k-a}(q-1)^2; rows (k, b>k+1) give t q (q-1)
    for n in 3..=7 {
        let basis = KrammerBasis::new(n).unwrap();
        for k in 1..n {
            let col = nontrivial_column(n, k).unwrap();
            for (r, &(a, b)) in basis.pairs().iter().enumerate() {
                let expected = if (a, b) == (k, k + 1) {
                    p("t*q^2")
                } else if a < k && b == k + 1 {
                    p(&format!("t*q^{}*(q - 1)", k - a + 1))
                } else if a < k && b > k + 1 {
                    p(&format!("t*q^{}*(q - 1)^2", k - a))
                } else if a == k && b > k + 1 {
                    p("t*q*(q - 1)")
                } else {
                    LaurentPoly::zero()
                };
                assert_eq!(col[r], expected, "n={n} k={k} row ({a},{b})");
            }
        }
    }
}

/// `I_a ⊕ block ⊕ I_b`.
fn embed(a: usize, block: PolyMatrix, b: usize) -> PolyMatrix {
    let size = a + block.rows() + b;
    let mut out = PolyMatrix::identity(size);
    for i in 0..block.rows() {
        for j in 0..block.cols() {
            out.set(a + i, a + j, block.get(i, j).clone());
        }
    }
    out
}

#[test]
fn leading_block_structure() {
    for n in 4..=6 {
        let basis = KrammerBasis::new(n).unwrap();
        let m = basis.dim();
        let lead: Vec<usize> = (0..n - 1).collect();
        let trail: Vec<usize> = (n - 1..m).collect();
        for i in 2..n {
            let k = krammer_generator(n, i, 1).unwrap();
            let beta = k.submatrix(&lead, &lead);
            let expected_beta = embed(i - 2, m_qblock(), n - i - 1);
            assert_eq!(beta, expected_beta, "n={n} i={i}");
            assert!(k.submatrix(&trail, &lead).is_zero());
            assert_eq!(k.submatrix(&trail, &trail), krammer_generator(n - 1, i - 1, 1).unwrap());
            // the coupling block has a single nonzero column: e_{i,i+1}, fed by the last n-i rows
            let gamma = k.submatrix(&lead, &trail);
            let col = basis.index(i, i + 1).unwrap() - (n - 1);
            for r in 0..n - 1 {
                for c in 0..gamma.cols() {
                    let expected = if c != col || r < i - 1 {
                        LaurentPoly::zero()
                    } else if r == i - 1 {
                        p(&format!("t*q^{i}*(q - 1)"))
                    } else {
                        p(&format!("t*q^{}*(q - 1)^2", i - 1))
                    };
                    assert_eq!(gamma.get(r, c), &expected, "n={n} i={i} gamma ({r},{c})");
                }
            }
            // all-ones vector is a right fixed vector of β
            let ones = vec![LaurentPoly::one(); n - 1];
            assert_eq!(beta.transpose().left_mul_vector(&ones).unwrap(), ones);
        }
    }
}

fn m_qblock() -> PolyMatrix {
    m(&[&["1 - q", "q"], &["1", "0"]])
}

#[test]
fn last_strand_block_structure() {
    // pairs (a, n) span an invariant quotient for σ_i, i <= n-2; its block has unit column sums
    for n in 4..=6 {
        let basis = KrammerBasis::new(n).unwrap();
        let last: Vec<usize> = (1..n).map(|a| basis.index(a, n).unwrap()).collect();
        let rest: Vec<usize> = (0..basis.dim()).filter(|r| !last.contains(r)).collect();
        for i in 1..=n - 2 {
            let k = krammer_generator(n, i, 1).unwrap();
            let alpha = k.submatrix(&last, &last);
            assert_eq!(alpha, embed(i - 1, m(&[&["0", "q"], &["1", "1 - q"]]), n - i - 2));
            assert!(k.submatrix(&rest, &last).is_zero());
            assert_eq!(k.submatrix(&rest, &rest), krammer_generator(n - 1, i, 1).unwrap());
            let ones = vec![LaurentPoly::one(); n - 1];
            assert_eq!(alpha.left_mul_vector(&ones).unwrap(), ones);
        }
    }
}

#[test]
fn middle_block_structure() {
    for n in 4..=6 {
        let basis = KrammerBasis::new(n).unwrap();
        let m_dim = basis.dim();
        for i in 1..=n - 2 {
            let k = krammer_generator(n, i, 1).unwrap();
            let n1 = basis.index(i, i + 1).unwrap() + 1;
            let w = n - i - 1;
            let head: Vec<usize> = (0..n1).collect();
            let star: Vec<usize> = (n1..n1 + w).collect();
            let swap: Vec<usize> = (n1 + w..n1 + 2 * w).collect();
            let tail: Vec<usize> = (n1 + 2 * w..m_dim).collect();
            let q_i = PolyMatrix::scalar(w, LaurentPoly::q());
            let one_q_i = PolyMatrix::scalar(w, p("1 - q"));
            assert!(k.submatrix(&head, &(n1..m_dim).collect::<Vec<_>>()).is_zero());
            assert!(k.submatrix(&star, &star).is_zero());
            assert_eq!(k.submatrix(&star, &swap), q_i);
            assert!(k.submatrix(&star, &tail).is_zero());
            assert!(k.submatrix(&swap, &head).is_zero());
            assert!(k.submatrix(&swap, &star).is_identity());
            assert_eq!(k.submatrix(&swap, &swap), one_q_i);
            assert!(k.submatrix(&swap, &tail).is_zero());
            assert!(k.submatrix(&tail, &(0..n1 + 2 * w).collect::<Vec<_>>()).is_zero());
            if !tail.is_empty() {
                assert!(k.submatrix(&tail, &tail).is_identity());
            }
        }
    }
}

#[test]
fn eigenvector_pattern_b6() {
    let v = essential_eigenvector(6, 3).unwrap();
    let text: Vec<String> = v.pattern.iter().map(|s| s.to_string()).collect();
    assert_eq!(text, ["x", "xq", "1", "q", "q^2", "xq", "1", "q", "q^2", "1", "q", "q^2", "y", "yq", "yq"]);
    assert_eq!(v.x, (p("t*q*(1 - q^3)"), p("t*q^3 - 1")));
    assert_eq!(v.y, (p("t*q^4*(1 - q^3)"), p("t*q^3 - 1")));
    assert_eq!(v.scale, p("t*q^3 - 1"));
    let v = essential_eigenvector(5, 2).unwrap();
    assert_eq!(v.y, (p("t*q^4*(1 - q^2)"), p("t*q^3 - 1")));
    assert_eq!(v.scale, p("(t*q^2 - 1)*(t*q^3 - 1)"));
}

#[test]
fn eigenvector_is_fixed() {
    for n in 4..=7 {
        for i in 2..n - 1 {
            let v = essential_eigenvector(n, i).unwrap();
            assert_eq!(v.entries.len(), n * (n - 1) / 2);
            for k in (1..n).filter(|&k| k != i) {
                let img = krammer_generator(n, k, 1).unwrap().left_mul_vector(&v.entries).unwrap();
                assert_eq!(img, v.entries, "n={n} i={i} k={k}");
            }
        }
    }
}

#[test]
fn eigenvector_not_fixed_by_missing_generator() {
    let v = essential_eigenvector(4, 2).unwrap();
    let img = krammer_generator(4, 2, 1).unwrap().left_mul_vector(&v.entries).unwrap();
    assert_ne!(img, v.entries);
    assert!(essential_eigenvector(4, 1).is_err());
    assert!(essential_eigenvector(4, 3).is_err());
    assert!(essential_eigenvector(3, 1).is_err());
}

#[test]
fn burau_examples() {
    assert_eq!(burau_reduced_generator(2, 1, 1).unwrap(), m(&[&["-t"]]));
    for n in 2..=5 {
        for k in 1..n {
            let pos = burau_reduced_generator(n, k, 1).unwrap();
            assert!(pos.matmul(&burau_reduced_generator(n, k, -1).unwrap()).unwrap().is_identity());
            assert!(pos.entries().iter().all(|e| e.terms().all(|(x, _)| x.q == 0)));
        }
    }
    let cube = burau_word(&word(2, &[1, 1, 1])).sub_identity().unwrap().det().unwrap();
    assert_eq!(cube, p("-t^3 - 1"));
    assert_eq!(cube.normalize(), p("t^3 + 1"));
    assert!(cube.divisible_by(&p("t^2 - t + 1")));
}

#[test]
fn matrices_separate_braids_of_length_three() {
    // the free-group action is faithful, so it decides braid equality
    let letters = [1, -1, 2, -2];
    let mut by_matrix: HashMap<String, Vec<Vec<i32>>> = HashMap::new();
    let mut by_action: HashMap<Vec<crate::braid::FreeGroupWord>, Vec<Vec<i32>>> = HashMap::new();
    for &a in &letters {
        for &b in &letters {
            for &c in &letters {
                let w = word(3, &[a, b, c]);
                by_matrix.entry(krammer_word(&w).to_string()).or_default().push(w.letters().to_vec());
                by_action.entry(w.act_on_free_group()).or_default().push(w.letters().to_vec());
            }
        }
    }
    let mut classes_m: Vec<Vec<Vec<i32>>> = by_matrix.into_values().collect();
    let mut classes_a: Vec<Vec<Vec<i32>>> = by_action.into_values().collect();
    classes_m.sort();
    classes_a.sort();
    assert_eq!(classes_m, classes_a);
    assert!(classes_m.iter().any(|c| c.contains(&vec![1, 2, 1]) && c.contains(&vec![2, 1, 2])));
}
