//! Deterministic inputs shared by the benchmarks.

use krammer::{krammer_word, BraidWord, LaurentPoly, MonodromyList, PolyMatrix};

/// `K(w) - I` for the positive word `(s1 s2 ... s_{n-1})^reps` followed by `s1^-1`.
pub fn fiber_block(n: usize, reps: usize) -> PolyMatrix {
    let cycle: Vec<i32> = (1..n as i32).collect();
    let mut letters = cycle.repeat(reps);
    letters.push(-1);
    krammer_word(&BraidWord::new(n, letters).expect("generators in range")).sub_identity().expect("square")
}

/// Dense `size x size` matrix with small two-variable entries.
pub fn dense_matrix(size: usize) -> PolyMatrix {
    let entries = (0..size * size)
        .map(|k| {
            let (i, j) = ((k / size) as i32, (k % size) as i32);
            LaurentPoly::monomial((i + 2 * j) % 5 - 2, (i * j) % 3, (i + j) % 3) + LaurentPoly::monomial(1, 0, i - j)
        })
        .collect();
    PolyMatrix::new(size, size, entries).expect("size matches")
}

pub fn braid_word(n: usize, len: usize) -> BraidWord {
    let letters = (0..len).map(|k| if k % 3 == 2 { -((k % (n - 1)) as i32 + 1) } else { (k % (n - 1)) as i32 + 1 }).collect();
    BraidWord::new(n, letters).expect("generators in range")
}

/// Two fibers in `B_n` whose Libgober matrix needs several minors.
pub fn two_fibers(n: usize) -> MonodromyList {
    MonodromyList::new(vec![braid_word(n, 6), braid_word(n, 9).inverse()]).expect("same strands")
}
