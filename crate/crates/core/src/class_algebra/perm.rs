//! Permutations of `{0, .., n-1}` stored as byte arrays.

use std::collections::HashMap;

use crate::combinatorics::Partition;

/// Cycle type of `p`.
pub fn cycle_type(p: &[u8]) -> Partition {
    let n = p.len();
    let mut seen = [false; 256];
    let mut mult = vec![0u32; n];
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = p[i] as usize;
            len += 1;
        }
        mult[len - 1] += 1;
    }
    Partition::from_multiplicities(mult)
}

/// The permutation with cycles on consecutive blocks, longest first:
/// `(3,1)` gives `(0 1 2)(3)`.
pub fn canonical_representative(lam: &Partition) -> Vec<u8> {
    let n = lam.weight() as usize;
    let mut p = vec![0u8; n];
    let mut start = 0;
    for part in lam.parts_iter() {
        let len = part as usize;
        for j in 0..len {
            p[start + j] = (start + (j + 1) % len) as u8;
        }
        start += len;
    }
    p
}

/// `(s t)(i) = s(t(i))`, written into `out`.
pub fn compose_into(s: &[u8], t: &[u8], out: &mut [u8]) {
    for (o, &ti) in out.iter_mut().zip(t) {
        *o = s[ti as usize];
    }
}

/// All permutations of `n` letters grouped by cycle type. Each class is a
/// flat buffer of length `n * class_size`.
pub fn permutations_by_type(n: usize) -> HashMap<Partition, Vec<u8>> {
    let mut out: HashMap<Partition, Vec<u8>> = HashMap::new();
    let mut a: Vec<u8> = (0..n as u8).collect();
    let mut push = |a: &[u8]| out.entry(cycle_type(a)).or_default().extend_from_slice(a);
    push(&a);
    // Heap's algorithm, iterative form.
    let mut c = vec![0usize; n];
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            push(&a);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}
