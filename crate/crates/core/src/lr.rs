//! Littlewood–Richardson, Kostka and Cauchy combinatorics, and formal sums of
//! irreducible `GL(n)` representations.
//!
//! Rational representations with negative entries are handled by shifting by
//! a power of the determinant, running the partition algorithms, and
//! shifting back.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::io::{BufRead, Write};
use std::sync::{OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::partitions::{partitions_of, Partition, Weight};

// ---------------------------------------------------------------------------
// LR tableaux
// ---------------------------------------------------------------------------

/// Enumerates LR fillings: starting from `start`, letter `k` is added as a
/// horizontal strip of `content[k]` cells such that the reverse reading word
/// stays a lattice word. Every completed shape is reported to `emit`.
fn lr_fill(start: &[u32], content: &[u32], max_rows: usize, target: Option<&[u32]>, emit: &mut dyn FnMut(&[u32])) {
    let rows = max_rows;
    let mut shape = start.to_vec();
    shape.resize(rows, 0);
    if start.len() > rows {
        return;
    }
    if let Some(t) = target {
        if shape.iter().enumerate().any(|(i, &s)| s > t.get(i).copied().unwrap_or(0)) {
            return;
        }
    }
    let prev = vec![0u32; rows];
    letter(0, &mut shape, &prev, content, target, emit);

    fn letter(
        k: usize,
        shape: &mut Vec<u32>,
        prev: &[u32],
        content: &[u32],
        target: Option<&[u32]>,
        emit: &mut dyn FnMut(&[u32]),
    ) {
        if k == content.len() {
            emit(shape);
            return;
        }
        let mut added = vec![0u32; shape.len()];
        let old = shape.clone();
        strip(0, content[k], k, &old, shape, &mut added, 0, 0, prev, content, target, emit);
    }

    #[allow(clippy::too_many_arguments)]
    fn strip(
        r: usize,
        remaining: u32,
        k: usize,
        old: &[u32],
        shape: &mut Vec<u32>,
        added: &mut Vec<u32>,
        placed_so_far: u32,
        prev_before: u32,
        prev: &[u32],
        content: &[u32],
        target: Option<&[u32]>,
        emit: &mut dyn FnMut(&[u32]),
    ) {
        if remaining == 0 {
            let next_prev = added.clone();
            letter(k + 1, shape, &next_prev, content, target, emit);
            return;
        }
        if r == shape.len() {
            return;
        }
        let cap_above = if r == 0 { u32::MAX } else { old[r - 1] - old[r] };
        let cap_target = target.map_or(u32::MAX, |t| t.get(r).copied().unwrap_or(0).saturating_sub(old[r]));
        let cap_lattice = if k == 0 { u32::MAX } else { prev_before - placed_so_far };
        let cap = remaining.min(cap_above).min(cap_target).min(cap_lattice);
        for a in (0..=cap).rev() {
            shape[r] = old[r] + a;
            added[r] = a;
            strip(
                r + 1,
                remaining - a,
                k,
                old,
                shape,
                added,
                placed_so_far + a,
                prev_before + prev[r],
                prev,
                content,
                target,
                emit,
            );
        }
        shape[r] = old[r];
        added[r] = 0;
    }
}

fn lr_coefficient_uncached(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if mu.size() + nu.size() != lambda.size() || !lambda.contains(mu) || !lambda.contains(nu) {
        return 0;
    }
    let mut count = 0u64;
    lr_fill(mu.parts(), nu.parts(), lambda.len(), Some(lambda.parts()), &mut |s| {
        if Partition::from_sorted(s.to_vec()) == *lambda {
            count += 1;
        }
    });
    count
}

fn lr_product_uncached(mu: &Partition, nu: &Partition, max_rows: usize) -> BTreeMap<Partition, u64> {
    let mut out = BTreeMap::new();
    // c^λ_{μν} = c^λ_{νμ}: fill with the shorter content for speed.
    let (base, content) = if mu.size() >= nu.size() { (mu, nu) } else { (nu, mu) };
    let rows = max_rows.min(base.len() + content.len());
    lr_fill(base.parts(), content.parts(), rows, None, &mut |s| {
        *out.entry(Partition::from_sorted(s.to_vec())).or_insert(0) += 1;
    });
    out
}

// ---------------------------------------------------------------------------
// Shared memo cache
// ---------------------------------------------------------------------------

type LrKey = (Partition, Partition, Partition);

type ProductKey = (Partition, Partition, usize);

#[derive(Default)]
struct Caches {
    lr: RwLock<HashMap<LrKey, u64>>,
    product: RwLock<HashMap<ProductKey, BTreeMap<Partition, u64>>>,
    kostka: RwLock<HashMap<(Partition, Vec<u32>), u64>>,
}

fn caches() -> &'static Caches {
    static CACHES: OnceLock<Caches> = OnceLock::new();
    CACHES.get_or_init(Caches::default)
}

fn canonical_lr_key(lambda: &Partition, mu: &Partition, nu: &Partition) -> LrKey {
    if mu <= nu {
        (lambda.clone(), mu.clone(), nu.clone())
    } else {
        (lambda.clone(), nu.clone(), mu.clone())
    }
}

/// The Littlewood–Richardson coefficient `c^λ_{μν}`.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if mu.size() + nu.size() != lambda.size() || !lambda.contains(mu) || !lambda.contains(nu) {
        return 0;
    }
    let key = canonical_lr_key(lambda, mu, nu);
    if let Some(&v) = caches().lr.read().unwrap().get(&key) {
        return v;
    }
    let v = lr_coefficient_uncached(&key.0, &key.1, &key.2);
    caches().lr.write().unwrap().insert(key, v);
    v
}

/// `s_μ · s_ν` restricted to partitions with at most `max_rows` rows.
pub fn lr_product(mu: &Partition, nu: &Partition, max_rows: usize) -> BTreeMap<Partition, u64> {
    let key = if mu <= nu { (mu.clone(), nu.clone(), max_rows) } else { (nu.clone(), mu.clone(), max_rows) };
    if let Some(v) = caches().product.read().unwrap().get(&key) {
        return v.clone();
    }
    let v = lr_product_uncached(&key.0, &key.1, max_rows);
    caches().product.write().unwrap().insert(key, v.clone());
    v
}

/// Number of semistandard tableaux of shape `lambda` with the given content.
pub fn kostka(lambda: &Partition, content: &[u32]) -> u64 {
    let total: u32 = content.iter().sum();
    if total != lambda.size() {
        return 0;
    }
    // Kostka numbers are symmetric in the content; sorting gives a canonical key.
    let mut key_content: Vec<u32> = content.iter().copied().filter(|&c| c > 0).collect();
    key_content.sort_unstable_by(|a, b| b.cmp(a));
    let key = (lambda.clone(), key_content);
    if let Some(&v) = caches().kostka.read().unwrap().get(&key) {
        return v;
    }
    let mut count = 0u64;
    horizontal_strips(&[], &key.1, lambda.parts(), &mut |_| count += 1);
    caches().kostka.write().unwrap().insert(key, count);
    count
}

/// Adds horizontal strips of the given sizes, one after another, staying inside `bound`,
/// and reports every sequence of shapes that ends exactly at `bound`.
fn horizontal_strips(start: &[u32], sizes: &[u32], bound: &[u32], emit: &mut dyn FnMut(&[Vec<u32>])) {
    let rows = bound.len();
    let mut shape = start.to_vec();
    shape.resize(rows, 0);
    let mut trail = Vec::new();
    rec(&mut shape, sizes, bound, &mut trail, emit);

    fn rec(
        shape: &mut Vec<u32>,
        sizes: &[u32],
        bound: &[u32],
        trail: &mut Vec<Vec<u32>>,
        emit: &mut dyn FnMut(&[Vec<u32>]),
    ) {
        let Some((&first, rest)) = sizes.split_first() else {
            if shape.as_slice() == bound {
                emit(trail);
            }
            return;
        };
        let old = shape.clone();
        place(0, first, &old, shape, rest, bound, trail, emit);
    }

    #[allow(clippy::too_many_arguments)]
    fn place(
        r: usize,
        remaining: u32,
        old: &[u32],
        shape: &mut Vec<u32>,
        rest: &[u32],
        bound: &[u32],
        trail: &mut Vec<Vec<u32>>,
        emit: &mut dyn FnMut(&[Vec<u32>]),
    ) {
        if remaining == 0 {
            trail.push(shape.clone());
            rec(shape, rest, bound, trail, emit);
            trail.pop();
            return;
        }
        if r == shape.len() {
            return;
        }
        let above = if r == 0 { u32::MAX } else { old[r - 1] };
        let cap = remaining.min(above.min(bound[r]) - old[r]);
        for a in (0..=cap).rev() {
            shape[r] = old[r] + a;
            place(r + 1, remaining - a, old, shape, rest, bound, trail, emit);
        }
        shape[r] = old[r];
    }
}

/// Writes the LR and Kostka memo tables as text, one record per line:
/// `lr <λ> <μ> <ν> <value>` or `kostka <λ> <content> <value>`, partitions as
/// comma-separated parts (`-` for the empty partition).
pub fn export_cache(mut out: impl Write) -> Result<()> {
    fn enc(p: &[u32]) -> String {
        if p.is_empty() {
            "-".to_string()
        } else {
            p.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
        }
    }
    let mut lines: Vec<String> = caches()
        .lr
        .read()
        .unwrap()
        .iter()
        .map(|((l, m, n), v)| format!("lr {} {} {} {}", enc(l.parts()), enc(m.parts()), enc(n.parts()), v))
        .collect();
    lines.extend(
        caches().kostka.read().unwrap().iter().map(|((l, c), v)| format!("kostka {} {} {}", enc(l.parts()), enc(c), v)),
    );
    lines.sort();
    for l in lines {
        writeln!(out, "{l}")?;
    }
    Ok(())
}

/// Loads records written by [`export_cache`]. Every record is recomputed for a
/// deterministic sample (every 16th line) and rejected wholesale on mismatch.
pub fn import_cache(input: impl BufRead) -> Result<usize> {
    fn dec(s: &str) -> Result<Vec<u32>> {
        if s == "-" {
            return Ok(Vec::new());
        }
        s.split(',').map(|x| x.parse::<u32>().map_err(|e| Error::Parse(format!("{s}: {e}")))).collect()
    }
    fn part(s: &str) -> Result<Partition> {
        Partition::new(dec(s)?)
    }
    let mut lr = Vec::new();
    let mut ko = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        let f: Vec<&str> = line.split_whitespace().collect();
        match f.as_slice() {
            ["lr", l, m, n, v] => {
                let key = canonical_lr_key(&part(l)?, &part(m)?, &part(n)?);
                let v: u64 = v.parse().map_err(|e| Error::Parse(format!("line {}: {e}", i + 1)))?;
                if i % 16 == 0 && lr_coefficient_uncached(&key.0, &key.1, &key.2) != v {
                    return Err(Error::Parse(format!("cache line {} fails validation", i + 1)));
                }
                lr.push((key, v));
            }
            ["kostka", l, c, v] => {
                let l = part(l)?;
                let c = dec(c)?;
                let v: u64 = v.parse().map_err(|e| Error::Parse(format!("line {}: {e}", i + 1)))?;
                if i % 16 == 0 {
                    let mut count = 0u64;
                    horizontal_strips(&[], &c, l.parts(), &mut |_| count += 1);
                    if count != v {
                        return Err(Error::Parse(format!("cache line {} fails validation", i + 1)));
                    }
                }
                ko.push(((l, c), v));
            }
            [] => {}
            _ => return Err(Error::Parse(format!("malformed cache line {}: {line}", i + 1))),
        }
    }
    let n = lr.len() + ko.len();
    caches().lr.write().unwrap().extend(lr);
    caches().kostka.write().unwrap().extend(ko);
    Ok(n)
}

// ---------------------------------------------------------------------------
// Representation sums
// ---------------------------------------------------------------------------

/// A formal integer combination of irreducible `GL(n)` representations,
/// keyed by dominant weight.
#[derive(Clone, PartialEq, Eq)]
pub struct RepSum {
    n: usize,
    terms: BTreeMap<Weight, i64>,
}

impl RepSum {
    pub fn zero(n: usize) -> Self {
        RepSum { n, terms: BTreeMap::new() }
    }

    /// The trivial representation with multiplicity one.
    pub fn trivial(n: usize) -> Self {
        Self::single(Weight::zero(n), 1)
    }

    pub fn single(w: Weight, mult: i64) -> Self {
        let mut s = RepSum::zero(w.len());
        s.add_term(w, mult);
        s
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn add_term(&mut self, w: Weight, mult: i64) {
        assert_eq!(w.len(), self.n, "weight length mismatch in RepSum");
        assert!(w.is_dominant(), "RepSum keys must be dominant, got {w}");
        if mult == 0 {
            return;
        }
        match self.terms.entry(w) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += mult;
                if *o.get() == 0 {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(mult);
            }
        }
    }

    pub fn add(&mut self, other: &RepSum) {
        for (w, &m) in &other.terms {
            self.add_term(w.clone(), m);
        }
    }

    pub fn scaled(&self, k: i64) -> RepSum {
        let mut s = RepSum::zero(self.n);
        for (w, &m) in &self.terms {
            s.add_term(w.clone(), m * k);
        }
        s
    }

    pub fn mult(&self, w: &Weight) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Number of irreducible summands counted with multiplicity.
    pub fn count(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&Weight, i64)> {
        self.terms.iter().map(|(w, &m)| (w, m))
    }

    pub fn dual(&self) -> RepSum {
        let mut s = RepSum::zero(self.n);
        for (w, &m) in &self.terms {
            s.add_term(w.dual(), m);
        }
        s
    }

    pub fn dimension(&self) -> i128 {
        self.terms.iter().map(|(w, &m)| m as i128 * weyl_dimension(w)).sum()
    }

    pub fn tensor(&self, other: &RepSum) -> Result<RepSum> {
        tensor_decompose(self, other)
    }

    /// Multiplicities must all be non-negative.
    pub fn is_effective(&self) -> bool {
        self.terms.values().all(|&m| m > 0)
    }
}

impl fmt::Debug for RepSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RepSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, &m)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if m != 1 {
                write!(f, "{m}·")?;
            }
            write!(f, "S{w}")?;
        }
        Ok(())
    }
}

/// Decomposes `a ⊗ b` into irreducibles of `GL(n)`.
pub fn tensor_decompose(a: &RepSum, b: &RepSum) -> Result<RepSum> {
    if a.n != b.n {
        return Err(Error::LengthMismatch { expected: a.n, found: b.n });
    }
    let n = a.n;
    let mut out = RepSum::zero(n);
    for (wa, ma) in a.iter() {
        for (wb, mb) in b.iter() {
            for (w, c) in tensor_irreducibles(wa, wb) {
                out.add_term(w, ma * mb * c as i64);
            }
        }
    }
    Ok(out)
}

/// `S_α ⊗ S_β` for two dominant weights of the same length.
pub fn tensor_irreducibles(alpha: &Weight, beta: &Weight) -> Vec<(Weight, u64)> {
    let n = alpha.len();
    let sa = (-alpha.min()).max(0);
    let sb = (-beta.min()).max(0);
    let pa = alpha.shifted(sa).to_partition().expect("dominant weight expected");
    let pb = beta.shifted(sb).to_partition().expect("dominant weight expected");
    lr_product(&pa, &pb, n)
        .into_iter()
        .map(|(p, c)| (p.to_weight(n).expect("row count bounded").shifted(-(sa + sb)), c))
        .collect()
}

/// All `(μ, ν, c^λ_{μν})` with `c > 0`, `ℓ(μ) ≤ dim_a`, `ℓ(ν) ≤ dim_b`:
/// the decomposition of `S_λ(A ⊕ B)`.
pub fn schur_of_direct_sum(lambda: &Partition, dim_a: usize, dim_b: usize) -> Vec<(Partition, Partition, u64)> {
    let mut out = Vec::new();
    for s in 0..=lambda.size() {
        for mu in partitions_of(s, dim_a.min(lambda.len()), lambda.first()) {
            if !lambda.contains(&mu) {
                continue;
            }
            for nu in partitions_of(lambda.size() - s, dim_b.min(lambda.len()), lambda.first()) {
                let c = lr_coefficient(lambda, &mu, &nu);
                if c > 0 {
                    out.push((mu.clone(), nu, c));
                }
            }
        }
    }
    out
}

/// Cauchy's formula `Λᵗ(V ⊗ U) = ⊕_{|λ|=t} S_{λ'}V ⊗ S_λU`: the partitions
/// `λ ⊢ t` with `λ₁ ≤ dim V` and `ℓ(λ) ≤ dim U`.
pub fn cauchy_exterior(t: u32, dim_v: usize, dim_u: usize) -> Vec<Partition> {
    partitions_of(t, dim_u, dim_v as u32)
}

/// Weyl dimension formula for a dominant weight.
pub fn weyl_dimension(w: &Weight) -> i128 {
    let e = w.entries();
    let n = e.len();
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for i in 0..n {
        for j in i + 1..n {
            num *= (e[i] - e[j]) as i128 + (j - i) as i128;
            den *= (j - i) as i128;
        }
    }
    num / den
}

/// The `T`-character of the irreducible representation with dominant weight `w`.
pub fn weyl_character(w: &Weight) -> BTreeMap<Weight, u64> {
    let n = w.len();
    let shift = (-w.min()).max(0);
    let p = w.shifted(shift).to_partition().expect("dominant weight expected");
    let mut bound = p.parts().to_vec();
    bound.resize(n.max(p.len()), 0);
    let mut out = BTreeMap::new();
    // Content of an SSYT: enumerate the sizes of the n horizontal strips.
    fn compositions(total: u32, parts: usize, cur: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
        if parts == 1 {
            cur.push(total);
            f(cur);
            cur.pop();
            return;
        }
        for a in 0..=total {
            cur.push(a);
            compositions(total - a, parts - 1, cur, f);
            cur.pop();
        }
    }
    if n == 0 {
        out.insert(Weight::new(vec![]), 1);
        return out;
    }
    compositions(p.size(), n, &mut Vec::new(), &mut |c| {
        let k = kostka(&p, c);
        if k > 0 {
            let wt = Weight::new(c.iter().map(|&x| x as i32 - shift).collect());
            out.insert(wt, k);
        }
    });
    out
}

/// The `T`-character of a representation sum.
pub fn character_of(s: &RepSum) -> BTreeMap<Weight, i64> {
    let mut out: BTreeMap<Weight, i64> = BTreeMap::new();
    for (w, m) in s.iter() {
        for (wt, k) in weyl_character(w) {
            *out.entry(wt).or_insert(0) += m * k as i64;
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }
    fn w(v: &[i32]) -> Weight {
        Weight::new(v.to_vec())
    }

    /// Brute force: count all fillings of λ/μ with content ν that are
    /// semistandard and whose reverse reading word is a lattice word.
    fn lr_brute(lambda: &[u32], mu: &[u32], nu: &[u32]) -> u64 {
        let mut cells = Vec::new();
        for (r, &l) in lambda.iter().enumerate() {
            for c in mu.get(r).copied().unwrap_or(0)..l {
                cells.push((r, c as usize));
            }
        }
        let total: u32 = nu.iter().sum();
        if cells.len() as u32 != total {
            return 0;
        }
        let letters = nu.len();
        let mut fill = vec![0usize; cells.len()];
        let mut count = 0;
        fn go(i: usize, cells: &[(usize, usize)], fill: &mut Vec<usize>, letters: usize, nu: &[u32], count: &mut u64) {
            if i == cells.len() {
                let mut used = vec![0u32; letters];
                for &f in fill.iter() {
                    used[f] += 1;
                }
                if used != nu {
                    return;
                }
                for (a, &(r, c)) in cells.iter().enumerate() {
                    for (b, &(r2, c2)) in cells.iter().enumerate() {
                        if r == r2 && c2 == c + 1 && fill[b] < fill[a] {
                            return;
                        }
                        if c == c2 && r2 == r + 1 && fill[b] <= fill[a] {
                            return;
                        }
                    }
                }
                let mut order: Vec<usize> = (0..cells.len()).collect();
                order.sort_by_key(|&a| (cells[a].0, std::cmp::Reverse(cells[a].1)));
                let mut seen = vec![0u32; letters];
                for a in order {
                    let l = fill[a];
                    seen[l] += 1;
                    if l > 0 && seen[l] > seen[l - 1] {
                        return;
                    }
                }
                *count += 1;
                return;
            }
            for l in 0..letters {
                fill[i] = l;
                go(i + 1, cells, fill, letters, nu, count);
            }
        }
        go(0, &cells, &mut fill, letters, nu, &mut count);
        count
    }

    #[test]
    fn lr_examples() {
        assert_eq!(lr_coefficient(&p(&[2, 1]), &p(&[1]), &p(&[2])), 1);
        assert_eq!(lr_brute(&[2, 1], &[1], &[2]), 1);
        assert_eq!(lr_coefficient(&p(&[3]), &p(&[1]), &p(&[1])), 0);
        assert_eq!(lr_coefficient(&p(&[2, 1, 1]), &p(&[1, 1]), &p(&[1, 1])), 1);
        assert_eq!(lr_brute(&[2, 1, 1], &[1, 1], &[1, 1]), 1);
        // the classic multiplicity-two coefficient
        assert_eq!(lr_coefficient(&p(&[3, 2, 1]), &p(&[2, 1]), &p(&[2, 1])), 2);
        assert_eq!(lr_brute(&[3, 2, 1], &[2, 1], &[2, 1]), 2);
    }

    #[test]
    fn product_matches_coefficients() {
        let mu = p(&[2, 1]);
        let nu = p(&[2, 1]);
        let prod = lr_product(&mu, &nu, 10);
        for (lam, c) in &prod {
            assert_eq!(*c, lr_coefficient(lam, &mu, &nu));
        }
        let total: u64 = prod.values().sum();
        assert_eq!(total, 8);
    }

    #[test]
    fn tensor_examples() {
        let v = RepSum::single(w(&[1, 0, 0]), 1);
        let sq = tensor_decompose(&v, &v).unwrap();
        let mut expect = RepSum::single(w(&[2, 0, 0]), 1);
        expect.add_term(w(&[1, 1, 0]), 1);
        assert_eq!(sq, expect);

        // Pieri: S_(2)(Q)* ⊗ Λ²Q on a rank 3 space
        let a = RepSum::single(w(&[0, 0, -2]), 1);
        let b = RepSum::single(w(&[1, 1, 0]), 1);
        let mut expect = RepSum::single(w(&[1, 1, -2]), 1);
        expect.add_term(w(&[1, 0, -1]), 1);
        assert_eq!(tensor_decompose(&a, &b).unwrap(), expect);

        let x = RepSum::single(w(&[1, 0, -1]), 1);
        assert_eq!(tensor_decompose(&x, &RepSum::trivial(3)).unwrap(), x);
        assert!(tensor_decompose(&x, &RepSum::trivial(2)).is_err());
    }

    #[test]
    fn direct_sum_examples() {
        let got = schur_of_direct_sum(&p(&[1]), 1, 1);
        assert_eq!(got.len(), 2);
        let got = schur_of_direct_sum(&p(&[3, 1]), 1, 2);
        for (mu, nu) in [
            (vec![], vec![3, 1]),
            (vec![1], vec![3]),
            (vec![1], vec![2, 1]),
            (vec![2], vec![2]),
            (vec![2], vec![1, 1]),
            (vec![3], vec![1]),
        ] {
            assert!(got.contains(&(p(&mu), p(&nu), 1)), "{mu:?} {nu:?}");
        }
        // dimension cross-check: dim S_(3,1)(k³) = 15
        let dim: i128 = got
            .iter()
            .map(|(mu, nu, c)| {
                *c as i128 * weyl_dimension(&mu.to_weight(1).unwrap()) * weyl_dimension(&nu.to_weight(2).unwrap())
            })
            .sum();
        assert_eq!(dim, weyl_dimension(&w(&[3, 1, 0])));
        assert!(schur_of_direct_sum(&p(&[1, 1, 1]), 2, 0).is_empty());
    }

    #[test]
    fn cauchy_examples() {
        assert_eq!(cauchy_exterior(0, 2, 2), vec![Partition::empty()]);
        assert_eq!(cauchy_exterior(1, 2, 2), vec![p(&[1])]);
        assert_eq!(cauchy_exterior(3, 2, 2), vec![p(&[2, 1])]);
    }

    #[test]
    fn kostka_examples() {
        assert_eq!(kostka(&p(&[2, 1]), &[1, 1, 1]), 2);
        assert_eq!(kostka(&p(&[4]), &[4]), 1);
        assert_eq!(kostka(&p(&[1, 1]), &[2, 0]), 0);
    }

    #[test]
    fn weyl_dimension_examples() {
        assert_eq!(weyl_dimension(&w(&[1, 0, -1])), 8);
        assert_eq!(weyl_dimension(&w(&[2, 0, 0, -1])), 36);
        let ch = weyl_character(&w(&[1, 0, -1]));
        assert_eq!(ch.values().sum::<u64>(), 8);
        assert_eq!(ch[&w(&[0, 0, 0])], 2);
    }

    #[test]
    fn cache_roundtrip() {
        lr_coefficient(&p(&[3, 2, 1]), &p(&[2, 1]), &p(&[2, 1]));
        kostka(&p(&[2, 1]), &[1, 1, 1]);
        let mut buf = Vec::new();
        export_cache(&mut buf).unwrap();
        let n = import_cache(std::io::Cursor::new(buf)).unwrap();
        assert!(n >= 2);
        assert!(import_cache(std::io::Cursor::new(b"lr 3,2,1 2,1 2,1 5\n".to_vec())).is_err());
    }

    fn arb_partition(max_size: u32) -> impl Strategy<Value = Partition> {
        (0..=max_size).prop_flat_map(|s| {
            let all = partitions_of(s, s as usize, s.max(1));
            (0..all.len()).prop_map(move |i| all[i].clone())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn lr_symmetry_and_brute(lam in arb_partition(7), mu in arb_partition(4)) {
            if lam.contains(&mu) {
                for nu in partitions_of(lam.size() - mu.size(), lam.len(), lam.first()) {
                    let c = lr_coefficient(&lam, &mu, &nu);
                    prop_assert_eq!(c, lr_coefficient(&lam, &nu, &mu));
                    prop_assert_eq!(c, lr_brute(lam.parts(), mu.parts(), nu.parts()));
                }
            }
        }

        #[test]
        fn direct_sum_dimension(lam in arb_partition(6), a in 0usize..4, b in 0usize..4) {
            let n = a + b;
            let lhs = lam.to_weight(n).map(|x| weyl_dimension(&x)).unwrap_or(0);
            let rhs: i128 = schur_of_direct_sum(&lam, a, b).iter().map(|(mu, nu, c)| {
                *c as i128 * weyl_dimension(&mu.to_weight(a).unwrap()) * weyl_dimension(&nu.to_weight(b).unwrap())
            }).sum();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn tensor_conserves_dimension_and_weight(x in prop::collection::vec(-2i32..3, 3), y in prop::collection::vec(-2i32..3, 3)) {
            let mut x = x; x.sort_unstable_by(|a, b| b.cmp(a));
            let mut y = y; y.sort_unstable_by(|a, b| b.cmp(a));
            let a = RepSum::single(Weight::new(x.clone()), 1);
            let b = RepSum::single(Weight::new(y.clone()), 1);
            let t = tensor_decompose(&a, &b).unwrap();
            prop_assert_eq!(t.dimension(), a.dimension() * b.dimension());
            let wsum: i128 = t.iter().map(|(w, m)| w.sum() as i128 * m as i128 * weyl_dimension(w)).sum();
            let expect = (x.iter().sum::<i32>() + y.iter().sum::<i32>()) as i128 * a.dimension() * b.dimension();
            prop_assert_eq!(wsum, expect);
        }

        #[test]
        fn kostka_invariants(lam in arb_partition(6), perm_seed in 0usize..24) {
            prop_assert_eq!(kostka(&lam, lam.parts()), 1);
            let mut content = lam.parts().to_vec();
            content.resize(4.max(content.len()), 0);
            let k = content.len();
            content.rotate_left(perm_seed % k);
            prop_assert_eq!(kostka(&lam, &content), 1);
        }
    }
}
