//! Permutations of `1..=m` in one-line notation, acting on the right:
//! `(k)(uv) = ((k)u)v`.

/// `p[k-1]` is the image of `k`.
pub type Perm = Vec<usize>;

pub fn identity(m: usize) -> Perm {
    (1..=m).collect()
}

/// `uv`: first `u`, then `v`.
pub fn compose(u: &[usize], v: &[usize]) -> Perm {
    u.iter().map(|&k| v[k - 1]).collect()
}

pub fn inverse(p: &[usize]) -> Perm {
    let mut out = vec![0; p.len()];
    for (k, &img) in p.iter().enumerate() {
        out[img - 1] = k + 1;
    }
    out
}

/// The product `s_{i_1} s_{i_2} ⋯` on `m` points.
pub fn from_word(m: usize, word: &[usize]) -> Perm {
    let mut p = identity(m);
    for &i in word {
        // right multiplication by s_i swaps the values i and i+1
        for x in p.iter_mut() {
            if *x == i {
                *x = i + 1;
            } else if *x == i + 1 {
                *x = i;
            }
        }
    }
    p
}

/// A reduced word `i_1 i_2 ⋯` with `p = s_{i_1} s_{i_2} ⋯`.
pub fn reduced_word(p: &[usize]) -> Vec<usize> {
    let mut w = p.to_vec();
    let mut out = Vec::new();
    'outer: loop {
        for i in 0..w.len().saturating_sub(1) {
            if w[i] > w[i + 1] {
                // p = s_i (s_i p) and s_i p has one inversion fewer
                w.swap(i, i + 1);
                out.push(i + 1);
                continue 'outer;
            }
        }
        return out;
    }
}

pub fn length(p: &[usize]) -> usize {
    let mut inv = 0;
    for a in 0..p.len() {
        for b in a + 1..p.len() {
            if p[a] > p[b] {
                inv += 1;
            }
        }
    }
    inv
}

/// All permutations of `1..=m` fixing each of the given contiguous blocks
/// setwise; `blocks` lists the block lengths in order.
pub fn young_subgroup(blocks: &[usize]) -> Vec<Perm> {
    let mut out: Vec<Perm> = vec![Vec::new()];
    let mut offset = 0;
    for &b in blocks {
        let perms = all_perms(b);
        let mut next = Vec::with_capacity(out.len() * perms.len());
        for base in &out {
            for p in &perms {
                let mut v = base.clone();
                v.extend(p.iter().map(|x| x + offset));
                next.push(v);
            }
        }
        out = next;
        offset += b;
    }
    out.sort();
    out
}

fn all_perms(m: usize) -> Vec<Perm> {
    if m == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in all_perms(m - 1) {
        for pos in 0..=p.len() {
            let mut v = p.clone();
            v.insert(pos, m);
            out.push(v);
        }
    }
    out.sort();
    out
}
