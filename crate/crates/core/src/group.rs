//! Finite groups in scope: cyclic, dihedral, dicyclic and explicit Cayley tables.
//!
//! Elements are dense indices `0..order` with the identity at 0. For the named
//! families the index encodes the normal form `a^i τ^ε`:
//!
//! * cyclic `C_n`: index `i` is `a^i`;
//! * dihedral `D_n` (order `2n`): index `i + n·ε`, with `τ² = 1`, `τa = a⁻¹τ`;
//! * dicyclic `Q_n` (order `4n`): index `i + 2n·ε`, with `τ² = aⁿ`, `τa = a⁻¹τ`.
//!
//! Multiplication for the named families uses the closed-form product laws;
//! table groups look the product up.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::{gcd, lcm};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default bound on `|G|` for [`FiniteGroup::automorphisms`].
pub const DEFAULT_AUTOMORPHISM_CAP: u32 = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Element(pub u32);

impl Element {
    pub const IDENTITY: Element = Element(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupKind {
    Cyclic { n: u32 },
    Dihedral { n: u32 },
    Dicyclic { n: u32 },
    Table { name: String, table: Vec<u32> },
}

/// Input to [`make_group`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(u32),
    Dihedral(u32),
    Dicyclic(u32),
    Table { name: String, rows: Vec<Vec<u32>> },
}

/// Cayley table file: `{"name": .., "order": k, "table": [[..]; k]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableFile {
    pub name: String,
    pub order: u32,
    pub table: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    kind: GroupKind,
    order: u32,
    exponent: u32,
    max_order: u32,
    orders: Vec<u32>,
    inverses: Vec<u32>,
    abelian: bool,
}

pub fn make_group(spec: &GroupSpec) -> Result<FiniteGroup> {
    match spec {
        GroupSpec::Cyclic(n) => FiniteGroup::cyclic(*n),
        GroupSpec::Dihedral(n) => FiniteGroup::dihedral(*n),
        GroupSpec::Dicyclic(n) => FiniteGroup::dicyclic(*n),
        GroupSpec::Table { name, rows } => FiniteGroup::from_table(name, rows),
    }
}

impl FiniteGroup {
    pub fn cyclic(n: u32) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidParameter("cyclic group needs n >= 1".into()));
        }
        Ok(Self::finish(GroupKind::Cyclic { n }, n))
    }

    /// Dihedral group of order `2n`.
    pub fn dihedral(n: u32) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameter(format!(
                "dihedral group needs n >= 3, got {n}"
            )));
        }
        Ok(Self::finish(GroupKind::Dihedral { n }, 2 * n))
    }

    /// Dicyclic group of order `4n`.
    pub fn dicyclic(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!(
                "dicyclic group needs n >= 2, got {n}"
            )));
        }
        Ok(Self::finish(GroupKind::Dicyclic { n }, 4 * n))
    }

    /// Validates and wraps an explicit Cayley table. Index 0 must be the identity.
    pub fn from_table(name: &str, rows: &[Vec<u32>]) -> Result<Self> {
        let k = rows.len();
        if k == 0 {
            return Err(Error::InvalidTable("table is empty".into()));
        }
        for (r, row) in rows.iter().enumerate() {
            if row.len() != k {
                return Err(Error::InvalidTable(format!(
                    "row {r} has {} entries, expected {k}",
                    row.len()
                )));
            }
            if let Some((c, &v)) = row.iter().enumerate().find(|(_, &v)| v as usize >= k) {
                return Err(Error::InvalidTable(format!(
                    "entry ({r}, {c}) = {v} is out of range"
                )));
            }
        }
        for x in 0..k {
            if rows[0][x] as usize != x || rows[x][0] as usize != x {
                return Err(Error::InvalidTable(format!(
                    "index 0 is not a two-sided identity at element {x}"
                )));
            }
        }
        let mut seen = vec![usize::MAX; k];
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                if seen[v as usize] == r {
                    return Err(Error::InvalidTable(format!(
                        "row {r} is not a permutation (value {v} repeated at column {c})"
                    )));
                }
                seen[v as usize] = r;
            }
        }
        seen.fill(usize::MAX);
        for c in 0..k {
            for (r, row) in rows.iter().enumerate() {
                let v = row[c] as usize;
                if seen[v] == c {
                    return Err(Error::InvalidTable(format!(
                        "column {c} is not a permutation (value {v} repeated at row {r})"
                    )));
                }
                seen[v] = c;
            }
        }
        for x in 0..k {
            for y in 0..k {
                let xy = rows[x][y] as usize;
                for z in 0..k {
                    if rows[xy][z] != rows[x][rows[y][z] as usize] {
                        return Err(Error::InvalidTable(format!(
                            "not associative at ({x}, {y}, {z})"
                        )));
                    }
                }
            }
        }
        let table = rows.iter().flatten().copied().collect();
        Ok(Self::finish(
            GroupKind::Table {
                name: name.to_string(),
                table,
            },
            k as u32,
        ))
    }

    /// Parses and validates a Cayley table JSON document.
    pub fn from_table_json(text: &str) -> Result<Self> {
        let file: TableFile = serde_json::from_str(text).map_err(|e| {
            Error::InvalidTable(format!("line {} column {}: {e}", e.line(), e.column()))
        })?;
        if file.order as usize != file.table.len() {
            return Err(Error::InvalidTable(format!(
                "declared order {} but table has {} rows",
                file.order,
                file.table.len()
            )));
        }
        Self::from_table(&file.name, &file.table)
    }

    pub fn to_table_file(&self) -> TableFile {
        let k = self.order;
        TableFile {
            name: self.name(),
            order: k,
            table: (0..k)
                .map(|x| (0..k).map(|y| self.mul_raw(x, y)).collect())
                .collect(),
        }
    }

    fn finish(kind: GroupKind, order: u32) -> Self {
        let mut g = FiniteGroup {
            kind,
            order,
            exponent: 1,
            max_order: 1,
            orders: Vec::new(),
            inverses: Vec::new(),
            abelian: false,
        };
        g.inverses = (0..order).map(|x| g.inverse_slow(x)).collect();
        g.orders = (0..order).map(|x| g.order_slow(x)).collect();
        g.exponent = g.orders.iter().fold(1, |acc, &o| lcm(acc, o));
        g.max_order = g.orders.iter().copied().max().unwrap_or(1);
        g.abelian = match &g.kind {
            GroupKind::Cyclic { .. } => true,
            GroupKind::Dihedral { .. } | GroupKind::Dicyclic { .. } => false,
            GroupKind::Table { .. } => {
                (0..order).all(|x| (0..x).all(|y| g.mul_raw(x, y) == g.mul_raw(y, x)))
            }
        };
        g
    }

    fn inverse_slow(&self, x: u32) -> u32 {
        match &self.kind {
            GroupKind::Cyclic { n } => (n - x) % n,
            GroupKind::Dihedral { n } => {
                if x < *n {
                    (n - x) % n
                } else {
                    x
                }
            }
            GroupKind::Dicyclic { n } => {
                let m = 2 * n;
                if x < m {
                    (m - x) % m
                } else {
                    m + (x - m + n) % m
                }
            }
            GroupKind::Table { .. } => (0..self.order)
                .find(|&y| self.mul_raw(x, y) == 0)
                .expect("validated table has inverses"),
        }
    }

    fn order_slow(&self, x: u32) -> u32 {
        match &self.kind {
            GroupKind::Cyclic { n } => n / gcd(x, *n),
            GroupKind::Dihedral { n } => {
                if x < *n {
                    n / gcd(x, *n)
                } else {
                    2
                }
            }
            GroupKind::Dicyclic { n } => {
                let m = 2 * n;
                if x < m {
                    m / gcd(x, m)
                } else {
                    4
                }
            }
            GroupKind::Table { .. } => {
                let mut k = 1;
                let mut p = x;
                while p != 0 {
                    p = self.mul_raw(p, x);
                    k += 1;
                }
                k
            }
        }
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Least common multiple of all element orders.
    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn max_order(&self) -> u32 {
        self.max_order
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    pub fn is_cyclic_kind(&self) -> bool {
        matches!(self.kind, GroupKind::Cyclic { .. })
    }

    /// Short descriptor: `C6`, `D3`, `Q2` or `T:<name>`.
    pub fn name(&self) -> String {
        match &self.kind {
            GroupKind::Cyclic { n } => format!("C{n}"),
            GroupKind::Dihedral { n } => format!("D{n}"),
            GroupKind::Dicyclic { n } => format!("Q{n}"),
            GroupKind::Table { name, .. } => format!("T:{name}"),
        }
    }

    pub fn identity(&self) -> Element {
        Element::IDENTITY
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.order).map(Element)
    }

    pub fn contains(&self, x: Element) -> bool {
        x.0 < self.order
    }

    pub fn element(&self, index: u32) -> Result<Element> {
        let x = Element(index);
        self.check(x)?;
        Ok(x)
    }

    pub fn check(&self, x: Element) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange {
                element: x.0,
                order: self.order,
            })
        }
    }

    #[inline]
    pub(crate) fn mul_raw(&self, x: u32, y: u32) -> u32 {
        match &self.kind {
            GroupKind::Cyclic { n } => (x + y) % n,
            GroupKind::Dihedral { n } => {
                let (i, e) = (x % n, x / n);
                let (j, d) = (y % n, y / n);
                let k = if e == 0 { (i + j) % n } else { (i + n - j) % n };
                k + n * (e ^ d)
            }
            GroupKind::Dicyclic { n } => {
                let m = 2 * n;
                let (i, e) = (x % m, x / m);
                let (j, d) = (y % m, y / m);
                let mut k = if e == 0 { i + j } else { i + m - j };
                if e == 1 && d == 1 {
                    k += n;
                }
                k % m + m * (e ^ d)
            }
            GroupKind::Table { table, .. } => table[(x * self.order + y) as usize],
        }
    }

    /// Panics if either element is outside the group; see [`Self::checked_mul`].
    #[inline]
    pub fn mul(&self, x: Element, y: Element) -> Element {
        assert!(self.contains(x) && self.contains(y), "element out of range");
        Element(self.mul_raw(x.0, y.0))
    }

    pub fn checked_mul(&self, x: Element, y: Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        Ok(Element(self.mul_raw(x.0, y.0)))
    }

    #[inline]
    pub fn inverse(&self, x: Element) -> Element {
        Element(self.inverses[x.index()])
    }

    pub fn checked_inverse(&self, x: Element) -> Result<Element> {
        self.check(x)?;
        Ok(self.inverse(x))
    }

    #[inline]
    pub fn order_of(&self, x: Element) -> u32 {
        self.orders[x.index()]
    }

    pub fn checked_order_of(&self, x: Element) -> Result<u32> {
        self.check(x)?;
        Ok(self.order_of(x))
    }

    pub fn pow(&self, x: Element, k: u64) -> Element {
        let k = (k % self.order_of(x) as u64) as u32;
        (0..k).fold(Element::IDENTITY, |acc, _| self.mul(acc, x))
    }

    /// Closure of `gens` under multiplication, sorted by index.
    pub fn subgroup_generated(&self, gens: &[Element]) -> Vec<Element> {
        let mut inside = vec![false; self.order as usize];
        inside[0] = true;
        let mut members = vec![Element::IDENTITY];
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for &s in gens {
                let y = self.mul(x, s);
                if !inside[y.index()] {
                    inside[y.index()] = true;
                    members.push(y);
                }
            }
            i += 1;
        }
        members.sort();
        members
    }

    /// Greedy generating set: each element in index order that is not yet
    /// in the subgroup generated so far.
    pub fn generating_set(&self) -> Vec<Element> {
        let mut gens = Vec::new();
        let mut inside = vec![false; self.order as usize];
        inside[0] = true;
        for x in self.elements() {
            if !inside[x.index()] {
                gens.push(x);
                for y in self.subgroup_generated(&gens) {
                    inside[y.index()] = true;
                }
            }
        }
        gens
    }

    pub fn presentations(&self, family: PresentationFamily) -> Result<Vec<Presentation>> {
        enumerate_presentations(self, family)
    }

    /// All automorphisms as permutations `p` with `p[x] = φ(x)`, sorted, identity first.
    pub fn automorphisms(&self, cap: u32) -> Result<Vec<Vec<u32>>> {
        if self.order > cap {
            return Err(Error::CapExceeded {
                order: self.order,
                cap,
            });
        }
        let gens = self.generating_set();
        let mut found = Vec::new();
        let mut images = Vec::with_capacity(gens.len());
        self.extend_images(&gens, &mut images, &mut found);
        found.sort();
        Ok(found)
    }

    fn extend_images(&self, gens: &[Element], images: &mut Vec<Element>, out: &mut Vec<Vec<u32>>) {
        if images.len() == gens.len() {
            if let Some(p) = self.try_homomorphism(gens, images) {
                out.push(p);
            }
            return;
        }
        let want = self.order_of(gens[images.len()]);
        for y in self.elements().filter(|&y| self.order_of(y) == want) {
            images.push(y);
            self.extend_images(gens, images, out);
            images.pop();
        }
    }

    fn try_homomorphism(&self, gens: &[Element], images: &[Element]) -> Option<Vec<u32>> {
        let k = self.order as usize;
        let mut map = vec![u32::MAX; k];
        map[0] = 0;
        let mut queue = vec![0u32];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            for (s, t) in gens.iter().zip(images) {
                let xs = self.mul_raw(x, s.0);
                let image = self.mul_raw(map[x as usize], t.0);
                match map[xs as usize] {
                    u32::MAX => {
                        map[xs as usize] = image;
                        queue.push(xs);
                    }
                    prev if prev != image => return None,
                    _ => {}
                }
            }
            i += 1;
        }
        let mut hit = vec![false; k];
        for &v in &map {
            if v == u32::MAX || hit[v as usize] {
                return None;
            }
            hit[v as usize] = true;
        }
        for x in 0..self.order {
            for y in 0..self.order {
                if map[self.mul_raw(x, y) as usize]
                    != self.mul_raw(map[x as usize], map[y as usize])
                {
                    return None;
                }
            }
        }
        Some(map)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PresentationFamily {
    CyclicGenerator,
    DihedralPair,
    DicyclicPair,
}

impl fmt::Display for PresentationFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PresentationFamily::CyclicGenerator => "cyclic-generator",
            PresentationFamily::DihedralPair => "dihedral-pair",
            PresentationFamily::DicyclicPair => "dicyclic-pair",
        })
    }
}

/// A generating pair `(g, h)` satisfying one of the defining relation sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Presentation {
    pub g: Element,
    pub h: Option<Element>,
    pub family: PresentationFamily,
}

/// Every generating pair satisfying the relations of `family`, in
/// lexicographic order of `(g, h)`.
pub fn enumerate_presentations(
    group: &FiniteGroup,
    family: PresentationFamily,
) -> Result<Vec<Presentation>> {
    let mismatch = || Error::FamilyMismatch {
        family: family.to_string(),
        group: group.name(),
    };
    let is_table = matches!(group.kind, GroupKind::Table { .. });
    let n = match (family, &group.kind) {
        (PresentationFamily::CyclicGenerator, GroupKind::Cyclic { n }) => *n,
        (PresentationFamily::DihedralPair, GroupKind::Dihedral { n }) => *n,
        (PresentationFamily::DicyclicPair, GroupKind::Dicyclic { n }) => *n,
        (PresentationFamily::CyclicGenerator, GroupKind::Table { .. }) => group.order,
        (PresentationFamily::DihedralPair, GroupKind::Table { .. }) if group.order.is_multiple_of(2) => {
            group.order / 2
        }
        (PresentationFamily::DicyclicPair, GroupKind::Table { .. }) if group.order.is_multiple_of(4) => {
            group.order / 4
        }
        _ => return Err(mismatch()),
    };
    let mut out = Vec::new();
    match family {
        PresentationFamily::CyclicGenerator => {
            for g in group.elements().filter(|&g| group.order_of(g) == group.order) {
                out.push(Presentation { g, h: None, family });
            }
        }
        PresentationFamily::DihedralPair | PresentationFamily::DicyclicPair => {
            let dihedral = family == PresentationFamily::DihedralPair;
            let g_order = if dihedral { n } else { 2 * n };
            for g in group.elements().filter(|&g| group.order_of(g) == g_order) {
                let cyclic: BTreeSet<Element> = group.subgroup_generated(&[g]).into_iter().collect();
                let h_square = if dihedral {
                    Element::IDENTITY
                } else {
                    group.pow(g, n as u64)
                };
                let g_inv = group.inverse(g);
                for h in group.elements().filter(|h| !cyclic.contains(h)) {
                    if group.mul(h, h) != h_square || group.mul(h, g) != group.mul(g_inv, h) {
                        continue;
                    }
                    if group.subgroup_generated(&[g, h]).len() as u32 != group.order {
                        continue;
                    }
                    out.push(Presentation {
                        g,
                        h: Some(h),
                        family,
                    });
                }
            }
        }
    }
    if out.is_empty() && is_table {
        return Err(mismatch());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Orders by repeated multiplication, independent of the closed forms.
    fn brute_order(g: &FiniteGroup, x: Element) -> u32 {
        let mut p = x;
        let mut k = 1;
        while p != Element::IDENTITY {
            p = g.mul(p, x);
            k += 1;
        }
        k
    }

    fn all_groups() -> Vec<FiniteGroup> {
        let mut v = Vec::new();
        for n in 1..=12 {
            v.push(FiniteGroup::cyclic(n).unwrap());
        }
        for n in 3..=8 {
            v.push(FiniteGroup::dihedral(n).unwrap());
        }
        for n in 2..=6 {
            v.push(FiniteGroup::dicyclic(n).unwrap());
        }
        v
    }

    #[test]
    fn group_axioms_exhaustive() {
        for g in all_groups() {
            for x in g.elements() {
                assert_eq!(g.mul(Element::IDENTITY, x), x);
                assert_eq!(g.mul(x, Element::IDENTITY), x);
                assert_eq!(g.mul(x, g.inverse(x)), Element::IDENTITY);
                assert_eq!(g.mul(g.inverse(x), x), Element::IDENTITY);
                assert_eq!(g.order_of(x), brute_order(&g, x), "{} {x}", g.name());
                assert_eq!(g.order() % g.order_of(x), 0);
                assert_eq!(g.exponent() % g.order_of(x), 0);
                for y in g.elements() {
                    for z in g.elements() {
                        assert_eq!(g.mul(g.mul(x, y), z), g.mul(x, g.mul(y, z)));
                    }
                }
            }
            assert_eq!(g.order() % g.exponent(), 0);
        }
    }

    #[test]
    fn make_group_orders_and_exponents() {
        let c6 = make_group(&GroupSpec::Cyclic(6)).unwrap();
        assert_eq!((c6.order(), c6.exponent()), (6, 6));
        let d3 = make_group(&GroupSpec::Dihedral(3)).unwrap();
        let brute_exp = d3.elements().fold(1, |acc, x| lcm(acc, brute_order(&d3, x)));
        assert_eq!((d3.order(), d3.exponent()), (6, brute_exp));
        assert_eq!(brute_exp, 6);
        let c2 = make_group(&GroupSpec::Table {
            name: "C2".into(),
            rows: vec![vec![0, 1], vec![1, 0]],
        })
        .unwrap();
        assert_eq!(c2.order(), 2);
        assert!(c2.is_abelian());
        assert_eq!(FiniteGroup::dicyclic(3).unwrap().order(), 12);
    }

    #[test]
    fn invalid_parameters() {
        assert!(matches!(FiniteGroup::cyclic(0), Err(Error::InvalidParameter(_))));
        assert!(matches!(FiniteGroup::dihedral(2), Err(Error::InvalidParameter(_))));
        assert!(matches!(FiniteGroup::dicyclic(1), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn invalid_tables() {
        let bad_identity = FiniteGroup::from_table("x", &[vec![1, 0], vec![0, 1]]);
        assert!(matches!(bad_identity, Err(Error::InvalidTable(_))));
        let not_perm = FiniteGroup::from_table("x", &[vec![0, 1, 2], vec![1, 1, 0], vec![2, 0, 1]]);
        let msg = not_perm.unwrap_err().to_string();
        assert!(msg.contains("row 1"), "{msg}");
        // Latin square with identity 0 that is not associative (order 5 loop).
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let msg = FiniteGroup::from_table("loop", &loop5).unwrap_err().to_string();
        assert!(msg.contains("not associative at"), "{msg}");
        let ragged = FiniteGroup::from_table("x", &[vec![0, 1], vec![1]]);
        assert!(ragged.is_err());
    }

    #[test]
    fn table_json_round_trip() {
        let d3 = FiniteGroup::dihedral(3).unwrap();
        let json = serde_json::to_string(&d3.to_table_file()).unwrap();
        let t = FiniteGroup::from_table_json(&json).unwrap();
        assert_eq!(t.order(), 6);
        assert!(!t.is_abelian());
        for x in 0..6 {
            for y in 0..6 {
                assert_eq!(t.mul_raw(x, y), d3.mul_raw(x, y));
            }
        }
        let err = FiniteGroup::from_table_json("{\"name\": \"x\",\n \"order\": 2, \"table\": [[0,1],[1,0]").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }

    #[test]
    fn product_law_examples() {
        let d3 = FiniteGroup::dihedral(3).unwrap();
        let a1tau = Element(1 + 3);
        assert_eq!(d3.mul(a1tau, a1tau), Element::IDENTITY);
        let q2 = FiniteGroup::dicyclic(2).unwrap();
        let tau = Element(4);
        assert_eq!(q2.mul(tau, tau), Element(2));
        let c6 = FiniteGroup::cyclic(6).unwrap();
        assert_eq!(c6.mul(Element(4), Element(5)), Element(3));
        assert!(c6.checked_mul(Element(6), Element(0)).is_err());
        assert!(c6.checked_order_of(Element(9)).is_err());
    }

    #[test]
    fn named_relations_hold() {
        for n in 3..=9 {
            let d = FiniteGroup::dihedral(n).unwrap();
            let (a, tau) = (Element(1), Element(n));
            assert_eq!(d.mul(tau, tau), Element::IDENTITY);
            assert_eq!(d.mul(tau, a), d.mul(d.inverse(a), tau));
            assert_eq!(d.max_order(), n);
        }
        for n in 2..=9 {
            let q = FiniteGroup::dicyclic(n).unwrap();
            let (a, tau) = (Element(1), Element(2 * n));
            assert_eq!(q.mul(tau, tau), q.pow(a, n as u64));
            assert_eq!(q.mul(tau, a), q.mul(q.inverse(a), tau));
            assert_eq!(q.max_order(), 2 * n);
            for i in 0..2 * n {
                assert_eq!(q.order_of(Element(2 * n + i)), 4);
            }
        }
        assert_eq!(FiniteGroup::dihedral(5).unwrap().max_order(), 5);
        assert_eq!(FiniteGroup::cyclic(12).unwrap().max_order(), 12);
        let c6 = FiniteGroup::cyclic(6).unwrap();
        assert_eq!(c6.order_of(Element(2)), 3);
    }

    #[test]
    fn subgroups() {
        let d3 = FiniteGroup::dihedral(3).unwrap();
        assert_eq!(d3.subgroup_generated(&[Element(1)]), vec![Element(0), Element(1), Element(2)]);
        assert_eq!(d3.subgroup_generated(&[]), vec![Element(0)]);
        let q2 = FiniteGroup::dicyclic(2).unwrap();
        assert_eq!(
            q2.subgroup_generated(&[Element(4)]),
            vec![Element(0), Element(2), Element(4), Element(6)]
        );
    }

    #[test]
    fn presentations() {
        let c6 = FiniteGroup::cyclic(6).unwrap();
        let p = enumerate_presentations(&c6, PresentationFamily::CyclicGenerator).unwrap();
        assert_eq!(p.iter().map(|p| p.g).collect::<Vec<_>>(), vec![Element(1), Element(5)]);
        let d3 = FiniteGroup::dihedral(3).unwrap();
        let p = enumerate_presentations(&d3, PresentationFamily::DihedralPair).unwrap();
        assert_eq!(p.len(), 6);
        // Dicyclic(2): brute-force the relation check independently.
        let q2 = FiniteGroup::dicyclic(2).unwrap();
        let p = enumerate_presentations(&q2, PresentationFamily::DicyclicPair).unwrap();
        let mut expected = Vec::new();
        for g in q2.elements() {
            for h in q2.elements() {
                let sub = q2.subgroup_generated(&[g]);
                if brute_order(&q2, g) == 4
                    && !sub.contains(&h)
                    && q2.mul(h, h) == q2.mul(g, g)
                    && q2.mul(h, g) == q2.mul(q2.inverse(g), h)
                {
                    expected.push((g, h));
                }
            }
        }
        assert_eq!(p.iter().map(|p| (p.g, p.h.unwrap())).collect::<Vec<_>>(), expected);
        assert_eq!(expected.len(), 24);
        for pr in &p {
            assert_eq!(q2.subgroup_generated(&[pr.g, pr.h.unwrap()]).len(), 8);
        }
        assert!(matches!(
            enumerate_presentations(&c6, PresentationFamily::DihedralPair),
            Err(Error::FamilyMismatch { .. })
        ));
        let table_c6 = FiniteGroup::from_table("c6", &c6.to_table_file().table).unwrap();
        assert!(enumerate_presentations(&table_c6, PresentationFamily::DihedralPair).is_err());
        assert_eq!(
            enumerate_presentations(&table_c6, PresentationFamily::CyclicGenerator)
                .unwrap()
                .len(),
            2
        );
    }

    #[test]
    fn automorphism_counts() {
        let count = |g: FiniteGroup| g.automorphisms(DEFAULT_AUTOMORPHISM_CAP).unwrap().len();
        assert_eq!(count(FiniteGroup::cyclic(6).unwrap()), 2);
        assert_eq!(count(FiniteGroup::cyclic(2).unwrap()), 1);
        assert_eq!(count(FiniteGroup::dihedral(3).unwrap()), 6);
        assert_eq!(count(FiniteGroup::dicyclic(2).unwrap()), 24);
        let auts = FiniteGroup::dihedral(4).unwrap().automorphisms(24).unwrap();
        assert_eq!(auts[0], (0..8).collect::<Vec<_>>());
        // closure under composition
        for p in &auts {
            for q in &auts {
                let pq: Vec<u32> = q.iter().map(|&x| p[x as usize]).collect();
                assert!(auts.contains(&pq));
            }
        }
        assert!(matches!(
            FiniteGroup::cyclic(30).unwrap().automorphisms(24),
            Err(Error::CapExceeded { .. })
        ));
    }
}
