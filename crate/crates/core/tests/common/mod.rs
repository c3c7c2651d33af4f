//! Test-only oracles shared by the integration suites.

/// Members of a compressed subset mask.
pub fn members(mask: u32) -> Vec<u32> {
    (0..32).filter(|k| mask >> k & 1 == 1).collect()
}

pub fn canonical_key(mask: u32) -> (usize, Vec<u32>) {
    let m = members(mask);
    (m.len(), m)
}

/// For a choice table `c` over masks `0..2^n`, collects every failing pair
/// of consistency, substitutability and path independence, and returns the
/// least one per axiom under (A canonical, B canonical).
pub fn naive_witnesses(n: usize, c: &[u32]) -> [Option<(u32, u32)>; 3] {
    let all: Vec<u32> = (0..1u32 << n).collect();
    let sub = |x: u32, y: u32| x & !y == 0;
    let mut cons = Vec::new();
    let mut subst = Vec::new();
    let mut pi = Vec::new();
    for &a in &all {
        for &b in &all {
            if sub(c[a as usize], b) && sub(b, a) && c[b as usize] != c[a as usize] {
                cons.push((a, b));
            }
            if sub(a, b) && !sub(c[b as usize] & a, c[a as usize]) {
                subst.push((a, b));
            }
            if c[(a | b) as usize] != c[(c[a as usize] | b) as usize] {
                pi.push((a, b));
            }
        }
    }
    let least = |v: Vec<(u32, u32)>| {
        v.into_iter()
            .min_by_key(|&(a, b)| (canonical_key(a), canonical_key(b)))
    };
    [least(cons), least(subst), least(pi)]
}
