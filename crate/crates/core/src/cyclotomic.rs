//! q-cyclotomic cosets modulo n and minimal polynomials over GF(q).

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use serde::Serialize;

use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::tower::{mul_linear, Tower};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coset {
    pub modulus: u64,
    pub base: u64,
    pub leader: u64,
    /// Sorted ascending.
    pub members: Vec<u64>,
}

impl Coset {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, i: u64) -> bool {
        self.members.binary_search(&i).is_ok()
    }
}

#[derive(Clone, Debug)]
pub struct CosetPartition {
    pub modulus: u64,
    pub base: u64,
    pub cosets: BTreeMap<u64, Coset>,
    leader_of: Vec<u32>,
}

impl CosetPartition {
    /// The set of coset leaders in increasing order.
    pub fn leaders(&self) -> impl Iterator<Item = u64> + '_ {
        self.cosets.keys().copied()
    }

    pub fn leader_of(&self, i: u64) -> u64 {
        self.leader_of[(i % self.modulus) as usize] as u64
    }

    pub fn coset(&self, i: u64) -> &Coset {
        &self.cosets[&self.leader_of(i)]
    }
}

fn check(q: u64, n: u64) -> Result<()> {
    if n == 0 || gcd(n, q) != 1 {
        return Err(Error::GcdViolation { n, q });
    }
    Ok(())
}

/// The orbit of `i` under multiplication by `q` modulo `n`.
pub fn coset_of(q: u64, n: u64, i: u64) -> Result<Coset> {
    check(q, n)?;
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i, modulus: n });
    }
    let mut members = vec![i];
    let mut cur = ((i as u128 * q as u128) % n as u128) as u64;
    while cur != i {
        members.push(cur);
        cur = ((cur as u128 * q as u128) % n as u128) as u64;
    }
    members.sort_unstable();
    Ok(Coset { modulus: n, base: q, leader: members[0], members })
}

/// Size of the coset of `i` without materializing it.
pub fn coset_size(q: u64, n: u64, i: u64) -> usize {
    let i = i % n;
    let mut cur = ((i as u128 * q as u128) % n as u128) as u64;
    let mut size = 1;
    while cur != i {
        cur = ((cur as u128 * q as u128) % n as u128) as u64;
        size += 1;
    }
    size
}

/// Coset leader of `i` without materializing the partition.
pub fn leader(q: u64, n: u64, i: u64) -> u64 {
    let i = i % n;
    let mut best = i;
    let mut cur = ((i as u128 * q as u128) % n as u128) as u64;
    while cur != i {
        best = best.min(cur);
        cur = ((cur as u128 * q as u128) % n as u128) as u64;
    }
    best
}

type Cache = RwLock<HashMap<(u64, u64), Arc<CosetPartition>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Complete partition of Z_n, memoized per `(q, n)`.
pub fn partition(q: u64, n: u64) -> Result<Arc<CosetPartition>> {
    check(q, n)?;
    if n > u32::MAX as u64 {
        return Err(Error::InvalidParams(format!("modulus {n} is too large to partition")));
    }
    if let Some(p) = cache().read().unwrap().get(&(q, n)) {
        return Ok(p.clone());
    }
    let mut leader_of = vec![u32::MAX; n as usize];
    let mut cosets = BTreeMap::new();
    for i in 0..n {
        if leader_of[i as usize] != u32::MAX {
            continue;
        }
        let c = coset_of(q, n, i)?;
        for &j in &c.members {
            leader_of[j as usize] = i as u32;
        }
        cosets.insert(i, c);
    }
    let built = Arc::new(CosetPartition { modulus: n, base: q, cosets, leader_of });
    let mut w = cache().write().unwrap();
    Ok(w.entry((q, n)).or_insert(built).clone())
}

/// Monic minimal polynomial of `α^i` over GF(q): the product of `x - α^j`
/// over the coset of `i`, with every coefficient checked to lie in GF(q).
pub fn minimal_poly(tower: &Tower, i: u64) -> Result<Poly> {
    let n = tower.n();
    let c = coset_of(tower.q(), n, i % n)?;
    let ext = tower.ext();
    let mut acc = vec![1u32];
    for &j in &c.members {
        acc = mul_linear(ext, &acc, ext.exp(j));
    }
    Ok(Poly::new(tower.project_poly(&acc)?))
}

/// Number of ones in the binary expansion.
pub fn weight_base2(i: u64) -> u32 {
    i.count_ones()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coset_examples() {
        assert_eq!(coset_of(2, 15, 0).unwrap().members, vec![0]);
        assert_eq!(coset_of(2, 15, 5).unwrap().members, vec![5, 10]);
        assert_eq!(coset_of(2, 15, 10).unwrap().leader, 5);
        assert_eq!(coset_of(2, 14, 1), Err(Error::GcdViolation { n: 14, q: 2 }));
        assert!(matches!(coset_of(2, 15, 15), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn partition_examples() {
        let p = partition(2, 7).unwrap();
        assert_eq!(p.leaders().collect::<Vec<_>>(), vec![0, 1, 3]);
        let sizes: Vec<usize> = p.cosets.values().map(Coset::size).collect();
        assert_eq!(sizes, vec![1, 3, 3]);
        let p3 = partition(2, 3).unwrap();
        assert_eq!(p3.leaders().collect::<Vec<_>>(), vec![0, 1]);
        let p63 = partition(4, 63).unwrap();
        assert!(p63.cosets.values().all(|c| 3 % c.size() == 0));
        assert_eq!(p63.cosets.values().map(Coset::size).sum::<usize>(), 63);
    }

    #[test]
    fn weights() {
        assert_eq!(weight_base2(0), 0);
        assert_eq!(weight_base2((1 << 5) - 1), 5);
        assert_eq!(weight_base2(35), 3);
    }

    #[test]
    fn minimal_polys_binary() {
        let t = Tower::new(2, 1, 4, None, Some(&[1, 1, 0, 0, 1])).unwrap();
        let f = t.base();
        assert_eq!(minimal_poly(&t, 0).unwrap().render(f, "w"), "x + 1");
        assert_eq!(minimal_poly(&t, 5).unwrap().render(f, "w"), "x^2 + x + 1");
        let prod = [14u64, 10, 8]
            .iter()
            .map(|&i| minimal_poly(&t, i).unwrap())
            .fold(Poly::one(), |acc, m| acc.mul(f, &m));
        assert_eq!(prod.render(f, "w"), "x^10 + x^5 + 1");

        let t5 = Tower::new(2, 1, 5, None, Some(&[1, 0, 1, 0, 0, 1])).unwrap();
        assert_eq!(minimal_poly(&t5, 1).unwrap().render(t5.base(), "w"), "x^5 + x^2 + 1");
    }

    #[test]
    fn product_over_leaders_is_x_n_minus_one() {
        for (p, s, m) in [(2, 1, 4), (3, 1, 3), (2, 2, 3), (5, 1, 2)] {
            let t = Tower::new(p, s, m, None, None).unwrap();
            let f = t.base();
            let n = t.n();
            let part = partition(t.q(), n).unwrap();
            let mut prod = Poly::one();
            for l in part.leaders() {
                let mp = minimal_poly(&t, l).unwrap();
                assert_eq!(mp.degree(), Some(part.coset(l).size()));
                assert_eq!(mp, minimal_poly(&t, (l * t.q()) % n).unwrap());
                prod = prod.mul(f, &mp);
            }
            assert_eq!(prod, Poly::x_n_minus_one(f, n as usize));
        }
    }
}
