use std::sync::Arc;

use super::csp::{PairwiseCsp, SearchStats};
use crate::bitset::ElementSet;
use crate::commlattice::CommLattice;
use crate::error::{Error, Result};
use crate::exec::{self, Budget, ExecMode};
use crate::finring::{closure_set, RingMap, RingTable};
use crate::partial::PartialMorphism;

/// All ring homomorphisms `src -> dst`, sorted by table.
///
/// A generating set of `src` is chosen greedily; each assignment of images
/// to the generators is propagated through the subring closure and rejected
/// on the first inconsistency, then fully verified.
pub fn ring_homs(src: &Arc<RingTable>, dst: &Arc<RingTable>, budget: &Budget) -> Result<Vec<RingMap>> {
    const STAGE: &str = "ring homomorphism enumeration";
    let mut gens = Vec::new();
    let mut generated = closure_set(src, []);
    for x in src.elements() {
        if !generated.contains(x) {
            gens.push(x);
            generated = closure_set(src, gens.iter().copied());
        }
    }
    let k = dst.size();
    let total = (k as u128).checked_pow(gens.len() as u32).unwrap_or(u128::MAX);
    if total > u64::MAX as u128 {
        return Err(Error::BudgetExhausted { stage: STAGE, nodes: u64::MAX });
    }
    let mut out = Vec::new();
    let mut images = vec![0usize; gens.len()];
    for code in 0..total as u64 {
        budget.charge(STAGE, 1)?;
        let mut c = code;
        for slot in images.iter_mut() {
            *slot = (c % k as u64) as usize;
            c /= k as u64;
        }
        if let Some(table) = extend(src, dst, &gens, &images) {
            let f = RingMap::new(Arc::clone(src), Arc::clone(dst), table)?;
            if f.is_ring_hom() {
                out.push(f);
            }
        }
    }
    out.sort_by(|a, b| a.table().cmp(b.table()));
    Ok(out)
}

fn extend(src: &RingTable, dst: &RingTable, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    const UNSET: usize = usize::MAX;
    let mut img = vec![UNSET; src.size()];
    let mut elems = Vec::with_capacity(src.size());
    let set = |x: usize, y: usize, img: &mut Vec<usize>, elems: &mut Vec<usize>| -> bool {
        if img[x] == UNSET {
            img[x] = y;
            elems.push(x);
            true
        } else {
            img[x] == y
        }
    };
    if !set(src.zero(), dst.zero(), &mut img, &mut elems) || !set(src.one(), dst.one(), &mut img, &mut elems) {
        return None;
    }
    for (&g, &y) in gens.iter().zip(images) {
        if !set(g, y, &mut img, &mut elems) {
            return None;
        }
    }
    let mut i = 0;
    while i < elems.len() {
        let x = elems[i];
        let fx = img[x];
        if !set(src.neg(x), dst.neg(fx), &mut img, &mut elems) {
            return None;
        }
        for j in 0..=i {
            let y = elems[j];
            let fy = img[y];
            let ok = set(src.add(x, y), dst.add(fx, fy), &mut img, &mut elems)
                && set(src.mul(x, y), dst.mul(fx, fy), &mut img, &mut elems)
                && set(src.mul(y, x), dst.mul(fy, fx), &mut img, &mut elems);
            if !ok {
                return None;
            }
        }
        i += 1;
    }
    (elems.len() == src.size()).then_some(img)
}

#[derive(Clone, Debug)]
pub struct MorphismSearch {
    pub morphisms: Vec<PartialMorphism>,
    pub stats: SearchStats,
}

/// All functions `R -> k` whose restriction to every maximal commutative
/// subring is a ring homomorphism and which agree on overlaps.
pub fn enumerate_partial_morphisms(
    lat: &CommLattice,
    field: &Arc<RingTable>,
    budget: &Budget,
    mode: ExecMode,
) -> Result<MorphismSearch> {
    if !field.is_field() {
        return Err(Error::NotAField(field.label().to_string()));
    }
    let ring = lat.ring();
    let n = ring.size();
    const UNSET: usize = usize::MAX;
    let maximal = lat.maximal().to_vec();
    // ambient-indexed tables, UNSET outside the subring
    let local: Vec<Vec<Vec<usize>>> = exec::try_map_vec(mode, &maximal, |&i| {
        let (c, embedding) = lat.subring(i).to_ring(ring, format!("C{i}"))?;
        let homs = ring_homs(&Arc::new(c), field, budget)?;
        Ok(homs
            .iter()
            .map(|h| {
                let mut t = vec![UNSET; n];
                for (x, &e) in embedding.iter().enumerate() {
                    t[e] = h.apply(x);
                }
                t
            })
            .collect())
    })?;
    let members: Vec<&ElementSet> = maximal.iter().map(|&i| lat.subring(i).members()).collect();
    let csp = PairwiseCsp::new(local.iter().map(Vec::len).collect(), |u, a, v, b| {
        members[u]
            .intersection(members[v])
            .iter()
            .all(|x| local[u][a][x] == local[v][b][x])
    });
    let mut order: Vec<usize> = (0..maximal.len()).collect();
    order.sort_by_key(|&m| (local[m].len(), m));
    let (solutions, stats) = csp.solve(&order, budget, "partial morphism search", mode);

    let mut morphisms = Vec::with_capacity(solutions.len());
    for choice in solutions {
        let mut table = vec![UNSET; n];
        for (m, &a) in choice.iter().enumerate() {
            for x in members[m].iter() {
                table[x] = local[m][a][x];
            }
        }
        if let Some(x) = table.iter().position(|&v| v == UNSET) {
            return Err(Error::Definition(format!("element {x} lies in no maximal commutative subring")));
        }
        morphisms.push(PartialMorphism::new(ring, field, table)?);
    }
    morphisms.sort_by(|a, b| a.table().cmp(b.table()));
    Ok(MorphismSearch { morphisms, stats })
}
