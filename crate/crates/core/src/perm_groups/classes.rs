use super::perm::{CycleType, Permutation};
use super::PermGroup;
use crate::error::{Error, Result};

/// Largest group whose classes are enumerated exhaustively.
pub const CLASS_CAP: u64 = 10_000_000;

const UNSEEN: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClass {
    /// Conventional label: element order followed by a letter.
    pub name: String,
    /// Lexicographically least element of the class.
    pub rep: Permutation,
    pub size: u64,
    pub element_order: u64,
    pub cycle_type: CycleType,
}

impl ConjClass {
    /// Odd element order.
    pub fn is_two_regular(&self) -> bool {
        self.element_order % 2 == 1
    }
}

/// Complete class list, canonically sorted by (element order, size,
/// representative images), with the squaring fusion of 2-regular classes.
#[derive(Clone, Debug)]
pub struct ConjClassTable {
    pub group_order: u64,
    pub classes: Vec<ConjClass>,
    /// Orbits of `g ↦ g²` on the 2-regular classes (class indices).
    pub fusion_orbits: Vec<Vec<usize>>,
    /// Class index of every element, indexed by chain rank.
    class_of: Vec<u32>,
    /// `square[c]` is the class of the squares of elements of class `c`.
    square: Vec<usize>,
}

impl ConjClassTable {
    pub fn class_index(&self, group: &PermGroup, g: &Permutation) -> Option<usize> {
        let r = group.rank(g)?;
        Some(self.class_of[r as usize] as usize)
    }

    pub fn two_regular(&self) -> impl Iterator<Item = (usize, &ConjClass)> {
        self.classes.iter().enumerate().filter(|(_, c)| c.is_two_regular())
    }

    /// Class of the squares of the elements of class `c`.
    pub fn square_class(&self, c: usize) -> usize {
        self.square[c]
    }

    pub fn fusion_orbit_count(&self) -> usize {
        self.fusion_orbits.len()
    }
}

/// Exhaustive conjugacy classes, by closing each element under conjugation
/// by the generators.
pub fn conjugacy_classes(group: &PermGroup) -> Result<ConjClassTable> {
    let n = group
        .order_u64()
        .filter(|&n| n <= CLASS_CAP)
        .ok_or_else(|| Error::CapExceeded(format!("class enumeration needs |G| <= {CLASS_CAP}")))?;
    let gens = group.generators();
    let mut class_of = vec![UNSEEN; n as usize];
    // (representative, size)
    let mut raw: Vec<(Permutation, u64)> = Vec::new();
    for r in 0..n {
        if class_of[r as usize] != UNSEEN {
            continue;
        }
        let id = raw.len() as u32;
        let start = group.unrank(r);
        class_of[r as usize] = id;
        let mut rep = start.clone();
        let mut size = 1u64;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for s in gens {
                let y = x.conjugate_by(s);
                let ry = group.rank(&y).expect("conjugates stay in the group") as usize;
                if class_of[ry] == UNSEEN {
                    class_of[ry] = id;
                    size += 1;
                    if y < rep {
                        rep = y.clone();
                    }
                    stack.push(y);
                }
            }
        }
        raw.push((rep, size));
    }
    let mut order: Vec<usize> = (0..raw.len()).collect();
    let keys: Vec<(u64, u64)> = raw.iter().map(|(rep, size)| (rep.order(), *size)).collect();
    order.sort_by(|&a, &b| keys[a].cmp(&keys[b]).then_with(|| raw[a].0.cmp(&raw[b].0)));
    let mut new_index = vec![0u32; raw.len()];
    for (k, &old) in order.iter().enumerate() {
        new_index[old] = k as u32;
    }
    for c in class_of.iter_mut() {
        *c = new_index[*c as usize];
    }
    let mut classes = Vec::with_capacity(raw.len());
    let mut letter_count = std::collections::BTreeMap::<u64, u32>::new();
    for &old in &order {
        let (rep, size) = &raw[old];
        let element_order = rep.order();
        let k = letter_count.entry(element_order).or_insert(0);
        let name = format!("{element_order}{}", class_letter(*k));
        *k += 1;
        classes.push(ConjClass {
            name,
            cycle_type: rep.cycle_type(),
            rep: rep.clone(),
            size: *size,
            element_order,
        });
    }
    let square: Vec<usize> = classes
        .iter()
        .map(|c| {
            let sq = c.rep.mul(&c.rep);
            class_of[group.rank(&sq).expect("member") as usize] as usize
        })
        .collect();
    let mut fusion_orbits = Vec::new();
    let mut done = vec![false; classes.len()];
    for (i, c) in classes.iter().enumerate() {
        if !c.is_two_regular() || done[i] {
            continue;
        }
        let mut orbit = vec![i];
        done[i] = true;
        let mut j = square[i];
        while j != i {
            orbit.push(j);
            done[j] = true;
            j = square[j];
        }
        orbit.sort_unstable();
        fusion_orbits.push(orbit);
    }
    fusion_orbits.sort();
    Ok(ConjClassTable { group_order: n, classes, fusion_orbits, class_of, square })
}

fn class_letter(mut k: u32) -> String {
    let mut s = String::new();
    loop {
        s.insert(0, (b'a' + (k % 26) as u8) as char);
        if k < 26 {
            return s;
        }
        k = k / 26 - 1;
    }
}
