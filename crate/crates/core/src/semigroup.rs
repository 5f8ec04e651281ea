//! Numerical semigroups: membership bitmaps, gaps, Apéry sets and the
//! explicit residue lists for `<q, q+2q0-1, q+2q0, q+2q0+1>`.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::params::SuzukiParams;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericalSemigroup {
    generators: Vec<u64>,
    // membership of 0..conductor
    members: Vec<bool>,
    conductor: u64,
}

impl NumericalSemigroup {
    pub fn from_generators(gens: &[u64]) -> Result<Self> {
        let mut generators: Vec<u64> = gens.to_vec();
        generators.sort_unstable();
        generators.dedup();
        if generators.is_empty() {
            return Err(Error::InvalidGenerators("empty generator set".into()));
        }
        if generators[0] == 0 {
            return Err(Error::InvalidGenerators("generators must be positive".into()));
        }
        let g = generators.iter().fold(0, |acc, &x| acc.gcd(&x));
        if g != 1 {
            return Err(Error::InvalidGenerators(format!("gcd of generators is {g}")));
        }
        let multiplicity = generators[0];
        // Frobenius number < (a_min - 1)(a_max - 1), so a_min * a_max is a
        // safe cap; it is doubled only if the trailing run is too short.
        let mut cap = (multiplicity * generators[generators.len() - 1]).max(1);
        loop {
            let mut bits = vec![false; cap as usize + 1];
            bits[0] = true;
            for n in 1..=cap as usize {
                bits[n] = generators.iter().any(|&a| a as usize <= n && bits[n - a as usize]);
            }
            let conductor = bits.iter().rposition(|&b| !b).map_or(0, |last_gap| last_gap as u64 + 1);
            if cap + 1 - conductor >= multiplicity {
                bits.truncate(conductor as usize);
                return Ok(Self { generators, members: bits, conductor });
            }
            cap *= 2;
        }
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn multiplicity(&self) -> u64 {
        self.generators[0]
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn contains(&self, n: u64) -> bool {
        n >= self.conductor || self.members[n as usize]
    }

    pub fn gaps(&self) -> Vec<u64> {
        (0..self.conductor).filter(|&n| !self.contains(n)).collect()
    }

    pub fn genus(&self) -> u64 {
        self.members.iter().filter(|&&b| !b).count() as u64
    }

    /// Largest gap, or -1 for the whole of N.
    pub fn frobenius_number(&self) -> i64 {
        self.conductor as i64 - 1
    }

    pub fn is_symmetric(&self) -> bool {
        let f = self.frobenius_number();
        (0..=f).all(|x| self.contains(x as u64) != self.contains((f - x) as u64))
    }

    pub fn apery_set(&self, m: u64) -> Result<AperySet> {
        if m == 0 || !self.contains(m) {
            return Err(Error::NotInSemigroup(m));
        }
        let mut elements = vec![None; m as usize];
        let mut missing = m;
        let mut n = 0u64;
        while missing > 0 {
            let r = (n % m) as usize;
            if elements[r].is_none() && self.contains(n) {
                elements[r] = Some(n);
                missing -= 1;
            }
            n += 1;
        }
        let set = AperySet { modulus: m, elements: elements.into_iter().map(Option::unwrap).collect() };
        debug_assert!(set.elements.iter().all(|&w| self.contains(w) && (w < m || !self.contains(w - m))));
        Ok(set)
    }

    /// True iff every element of `set` lies in the semigroup and drops out
    /// of it after subtracting the modulus.
    pub fn is_apery_set(&self, set: &AperySet) -> bool {
        let m = set.modulus;
        let mut seen = vec![false; m as usize];
        for &w in &set.elements {
            let r = (w % m) as usize;
            if seen[r] || !self.contains(w) || (w >= m && self.contains(w - m)) {
                return false;
            }
            seen[r] = true;
        }
        set.elements.len() as u64 == m
    }

    pub fn record(&self, apery_modulus: Option<u64>) -> Result<Value> {
        let m = apery_modulus.unwrap_or(self.multiplicity());
        let apery = self.apery_set(m)?;
        Ok(json!({
            "generators": self.generators.iter().map(u64::to_string).collect::<Vec<_>>(),
            "genus": self.genus().to_string(),
            "frobenius": self.frobenius_number().to_string(),
            "symmetric": self.is_symmetric(),
            "apery": {
                "modulus": m.to_string(),
                "elements": apery.elements.iter().map(u64::to_string).collect::<Vec<_>>(),
            },
            "selmer_genus": apery.selmer_genus().to_string(),
        }))
    }
}

/// Least element of the semigroup in each residue class modulo `modulus`,
/// indexed by residue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AperySet {
    pub modulus: u64,
    pub elements: Vec<u64>,
}

impl AperySet {
    /// `sum floor(w / m)` over the set, which equals the genus.
    pub fn selmer_genus(&self) -> u64 {
        self.elements.iter().map(|w| w / self.modulus).sum()
    }
}

/// `<q, q+q0, q+2q0, q+2q0+1>`, the semigroup at a rational point.
pub fn suzuki_weierstrass_semigroup(p: &SuzukiParams) -> Result<NumericalSemigroup> {
    NumericalSemigroup::from_generators(&[p.q, p.q + p.q0, p.q + 2 * p.q0, p.q + 2 * p.q0 + 1])
}

/// `<q, q+2q0-1, q+2q0, q+2q0+1>`, the semigroup ruled out in the order argument.
pub fn suzuki_auxiliary_semigroup(p: &SuzukiParams) -> Result<NumericalSemigroup> {
    NumericalSemigroup::from_generators(&[p.q, p.q + 2 * p.q0 - 1, p.q + 2 * p.q0, p.q + 2 * p.q0 + 1])
}

/// The explicit lists `L_1 .. L_{2q0-1}`, keyed by index, exactly as written
/// down for the auxiliary semigroup. Residue 0 is represented by 0 and is
/// not part of any list.
pub fn l_lists(p: &SuzukiParams) -> BTreeMap<u64, Vec<u64>> {
    let (q, q0) = (p.q, p.q0);
    let mut lists = BTreeMap::new();
    for i in 1..q0 {
        lists.insert(i, (0..=2 * i).map(|j| i * q + i * (2 * q0 - 1) + j).collect());
    }
    lists.insert(q0, (0..q0).map(|j| q0 * q + q - q0 + j).collect());
    lists.insert(q0 + 1, (0..q0).map(|j| (q0 + 1) * q + 1 + j).collect());
    for i in 2..=q0 / 2 {
        let mut l: Vec<u64> = (0..=q0 + 1 - 2 * i).map(|j| (q0 + i) * q + (2 * i - 3) * q0 + i - 1 + j).collect();
        l.extend((0..q0).map(|j| (q0 + i) * q + (2 * i - 2) * q0 + i + j));
        lists.insert(q0 + i, l);
    }
    for i in 1..q0 / 2 {
        let k = 3 * q0 / 2 + i;
        lists
            .insert(k, (0..q0 - 2 * i).map(|j| k * q + (q0 / 2 + i - 1) * (2 * q0 - 1) + q0 + 2 * i - 1 + j).collect());
    }
    lists
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LPartitionReport {
    pub lists: BTreeMap<u64, Vec<u64>>,
    /// `{0} ∪ L` hits every residue modulo `q` exactly once.
    pub residue_system: bool,
    /// Every element lies in `H` and drops out after subtracting `q`.
    pub apery_property: bool,
    /// List indices with an element violating either property.
    pub failing_lists: Vec<u64>,
    /// `sum floor(l / q)` over all list elements.
    pub coefficient_sum: u64,
    /// `sum i * |L_i|`, the closed-form bookkeeping.
    pub indexed_sum: u64,
    /// `q0 (q - 1) - q0^2 / 4`.
    pub expected: u64,
    /// Genus of `H` from its bitmap.
    pub bitmap_genus: u64,
}

impl LPartitionReport {
    pub fn pass(&self) -> bool {
        self.residue_system
            && self.apery_property
            && self.coefficient_sum == self.expected
            && self.indexed_sum == self.expected
            && self.bitmap_genus == self.expected
    }
}

/// Builds the lists and checks them against the auxiliary semigroup.
pub fn build_l_partition(p: &SuzukiParams) -> Result<LPartitionReport> {
    let h = suzuki_auxiliary_semigroup(p)?;
    let lists = l_lists(p);
    let q = p.q;
    let mut seen = vec![0u32; q as usize];
    seen[0] += 1;
    let mut failing_lists = Vec::new();
    for (&idx, list) in &lists {
        for &l in list {
            seen[(l % q) as usize] += 1;
        }
        if list.iter().any(|&l| !h.contains(l) || (l >= q && h.contains(l - q))) {
            failing_lists.push(idx);
        }
    }
    let all = lists.values().flatten();
    Ok(LPartitionReport {
        residue_system: seen.iter().all(|&c| c == 1),
        apery_property: failing_lists.is_empty(),
        failing_lists,
        coefficient_sum: all.clone().map(|l| l / q).sum(),
        indexed_sum: lists.iter().map(|(i, l)| i * l.len() as u64).sum(),
        expected: p.genus() - p.q0 * p.q0 / 4,
        bitmap_genus: h.genus(),
        lists,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sg(g: &[u64]) -> NumericalSemigroup {
        NumericalSemigroup::from_generators(g).unwrap()
    }

    /// Gap count straight from the definition, scanning sums of generators.
    fn brute_genus(gens: &[u64], limit: u64) -> u64 {
        let mut reach = vec![false; limit as usize + 1];
        reach[0] = true;
        for n in 0..=limit as usize {
            if reach[n] {
                for &g in gens {
                    if n + (g as usize) <= limit as usize {
                        reach[n + g as usize] = true;
                    }
                }
            }
        }
        reach.iter().filter(|&&b| !b).count() as u64
    }

    #[test]
    fn two_three() {
        let s = sg(&[2, 3]);
        assert_eq!((s.gaps(), s.genus(), s.frobenius_number()), (vec![1], 1, 1));
        assert_eq!(s.apery_set(2).unwrap().elements, vec![0, 3]);
        assert_eq!(s.apery_set(2).unwrap().selmer_genus(), 1);
    }

    #[test]
    fn suzuki_s1_semigroups() {
        let h = sg(&[8, 10, 12, 13]);
        assert_eq!((h.genus(), h.frobenius_number(), h.is_symmetric()), (14, 27, true));
        assert_eq!(h.apery_set(8).unwrap().selmer_genus(), 14);
        let aux = sg(&[8, 11, 12, 13]);
        assert_eq!(aux.genus(), 13);
        let a = aux.apery_set(8).unwrap();
        assert_eq!(a.elements, vec![0, 25, 26, 11, 12, 13, 22, 23]);
        assert_eq!(a.selmer_genus(), 13);
    }

    #[test]
    fn hermitian_and_non_symmetric_examples() {
        let h = sg(&[4, 5]);
        assert_eq!((h.genus(), h.is_symmetric()), (6, true));
        let s = sg(&[3, 5, 7]);
        assert_eq!(s.gaps(), vec![1, 2, 4]);
        assert_eq!((s.genus(), s.frobenius_number(), s.is_symmetric()), (3, 4, false));
        assert_eq!(sg(&[1]).frobenius_number(), -1);
        assert!(sg(&[1, 5]).is_symmetric());
    }

    #[test]
    fn invalid_inputs() {
        assert!(matches!(NumericalSemigroup::from_generators(&[]), Err(Error::InvalidGenerators(_))));
        assert!(matches!(NumericalSemigroup::from_generators(&[4, 6]), Err(Error::InvalidGenerators(_))));
        assert!(matches!(NumericalSemigroup::from_generators(&[0, 1]), Err(Error::InvalidGenerators(_))));
        assert_eq!(sg(&[2, 3]).apery_set(1), Err(Error::NotInSemigroup(1)));
        assert_eq!(sg(&[2, 3]).apery_set(0), Err(Error::NotInSemigroup(0)));
    }

    #[test]
    fn suzuki_family_laws() {
        for s in 1..=3 {
            let p = SuzukiParams::new(s).unwrap();
            let h = suzuki_weierstrass_semigroup(&p).unwrap();
            assert_eq!(h.genus(), p.genus());
            assert!(h.is_symmetric());
            assert_eq!(h.frobenius_number(), 2 * p.genus() as i64 - 1);
            let aux = suzuki_auxiliary_semigroup(&p).unwrap();
            assert_eq!(aux.genus(), p.genus() - p.q0 * p.q0 / 4);
        }
    }

    #[test]
    fn l_partition_checks() {
        let r = build_l_partition(&SuzukiParams::new(1).unwrap()).unwrap();
        let union: Vec<u64> = r.lists.values().flatten().copied().collect();
        assert_eq!(union, vec![11, 12, 13, 22, 23, 25, 26]);
        assert!(r.residue_system && r.apery_property);
        assert_eq!((r.coefficient_sum, r.indexed_sum), (13, 13));
        assert!(r.pass());
        let r = build_l_partition(&SuzukiParams::new(2).unwrap()).unwrap();
        assert_eq!(r.lists.values().map(Vec::len).sum::<usize>(), 31);
        assert_eq!((r.coefficient_sum, r.bitmap_genus), (120, 120));
        assert!(r.pass());
        assert!(build_l_partition(&SuzukiParams::new(3).unwrap()).unwrap().pass());
    }

    #[test]
    fn l_lists_are_the_apery_set() {
        for s in 1..=3 {
            let p = SuzukiParams::new(s).unwrap();
            let aux = suzuki_auxiliary_semigroup(&p).unwrap();
            let mut from_lists: Vec<u64> = std::iter::once(0).chain(l_lists(&p).into_values().flatten()).collect();
            from_lists.sort_unstable();
            let mut apery = aux.apery_set(p.q).unwrap().elements;
            apery.sort_unstable();
            assert_eq!(from_lists, apery);
        }
    }

    #[test]
    fn apery_matches_per_residue_scan() {
        let h = sg(&[8, 11, 12, 13]);
        for m in [8, 11, 12, 13, 16, 19, 30] {
            let a = h.apery_set(m).unwrap();
            for r in 0..m {
                let scan = (0..).map(|k| r + k * m).find(|&n| h.contains(n)).unwrap();
                assert_eq!(a.elements[r as usize], scan);
            }
            assert!(h.is_apery_set(&a));
            assert_eq!(a.selmer_genus(), h.genus());
        }
        let mut broken = h.apery_set(8).unwrap();
        broken.elements[3] += 8;
        assert!(!h.is_apery_set(&broken));
    }

    #[test]
    fn cli_record_shape() {
        let rec = sg(&[8, 10, 12, 13]).record(None).unwrap();
        assert_eq!(rec["genus"], "14");
        assert_eq!(rec["symmetric"], true);
        assert_eq!(rec["selmer_genus"], "14");
        assert_eq!(rec["apery"]["elements"].as_array().unwrap().len(), 8);
    }

    fn generator_sets() -> impl Strategy<Value = Vec<u64>> {
        prop::collection::vec(2u64..40, 3..=5).prop_filter("gcd 1", |v| v.iter().fold(0, |a, &x| a.gcd(&x)) == 1)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn selmer_genus_equals_bitmap_genus(gens in generator_sets()) {
            let s = NumericalSemigroup::from_generators(&gens).unwrap();
            prop_assert_eq!(s.genus(), brute_genus(&gens, 2 * 40 * 40));
            for &m in s.generators() {
                prop_assert_eq!(s.apery_set(m).unwrap().selmer_genus(), s.genus());
            }
            let f = s.frobenius_number();
            if s.is_symmetric() {
                prop_assert_eq!(f, 2 * s.genus() as i64 - 1);
            }
        }

        #[test]
        fn closed_under_addition(gens in generator_sets(), a in 0u64..400, b in 0u64..400) {
            let s = NumericalSemigroup::from_generators(&gens).unwrap();
            if s.contains(a) && s.contains(b) {
                prop_assert!(s.contains(a + b));
            }
        }
    }
}
