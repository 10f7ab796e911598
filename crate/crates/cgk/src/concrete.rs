//! Concrete permutation groups: build the regular representation of a
//! descriptor, and identify a permutation group whose Sylow subgroups are
//! all cyclic from its generators alone.
//!
//! Products act on the right: `a.then(b)` applies a first, and `y^x` is
//! `x^-1 y x`. Recognition computes the group order with a deterministic
//! stabilizer chain, takes the derived subgroup as a normal closure, and
//! reads the conjugation action off discrete logarithms in the cyclic
//! derived part. The group order may exceed the word width; everything
//! order-sized is handled as a big integer.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{factorize, prime_power, FactoredInt};
use crate::enumerate::GroupId;
use crate::error::{Error, Result};
use crate::identify::id_of_descriptor;
use crate::structure::{
    action_exponent, big_inv_mod, parts_to_descriptor, CGroupDescriptor,
};

/// Hard ceiling on the number of points: images are stored as u16.
pub const MAX_DEGREE: usize = u16::MAX as usize;

/// Cap on the total size of stabilizer-chain transversals, to bound memory
/// on adversarial inputs (the chain of a large symmetric group, say).
const TRANSVERSAL_CELL_CAP: u64 = 1 << 26;

/// Knobs for the permutation-group routines.
#[derive(Clone, Copy, Debug)]
pub struct ConcreteOptions {
    /// Largest accepted degree; defaults to 5000. Never exceeds `MAX_DEGREE`.
    pub degree_bound: usize,
    /// Seed for the randomized self-check of the computed structure.
    pub seed: u64,
}

impl Default for ConcreteOptions {
    fn default() -> ConcreteOptions {
        ConcreteOptions { degree_bound: 5000, seed: 0 }
    }
}

/// A permutation of 0..degree, stored as its image table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Perm {
    images: Vec<u16>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm { images: (0..degree as u32).map(|x| x as u16).collect() }
    }

    /// Build from 0-based images; must be a bijection on 0..len.
    pub fn from_images(images: Vec<u16>) -> Result<Perm> {
        if images.len() > MAX_DEGREE + 1 {
            return Err(Error::InvalidPermutation(format!(
                "{} points exceed the supported degree",
                images.len()
            )));
        }
        let mut seen = vec![false; images.len()];
        for &img in &images {
            if (img as usize) >= images.len() || seen[img as usize] {
                return Err(Error::InvalidPermutation(
                    "the image table is not a bijection".into(),
                ));
            }
            seen[img as usize] = true;
        }
        Ok(Perm { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: u16) -> u16 {
        self.images[point as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| i == img as usize)
    }

    /// The product "self then other" (right action).
    pub fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm { images: self.images.iter().map(|&m| other.images[m as usize]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u16; self.images.len()];
        for (i, &img) in self.images.iter().enumerate() {
            images[img as usize] = i as u16;
        }
        Perm { images }
    }

    /// The conjugate h^-1 self h.
    pub fn conjugate_by(&self, h: &Perm) -> Perm {
        let mut images = vec![0u16; self.images.len()];
        for (x, &sx) in self.images.iter().enumerate() {
            images[h.images[x] as usize] = h.images[sx as usize];
        }
        Perm { images }
    }

    /// Cycles of length at least 2, each starting at its least point,
    /// ordered by that point.
    fn cycles(&self) -> Vec<Vec<u16>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start as u16;
            while !seen[x as usize] {
                seen[x as usize] = true;
                cycle.push(x);
                x = self.images[x as usize];
            }
            out.push(cycle);
        }
        out
    }

    /// Power with an arbitrarily large exponent, one cycle at a time.
    pub fn pow(&self, e: &BigUint) -> Perm {
        let mut images: Vec<u16> = Perm::identity(self.degree()).images;
        for cycle in self.cycles() {
            let shift = (e % cycle.len()).to_usize().expect("cycle length fits");
            for (i, &x) in cycle.iter().enumerate() {
                images[x as usize] = cycle[(i + shift) % cycle.len()];
            }
        }
        Perm { images }
    }

    pub fn pow_u128(&self, e: u128) -> Perm {
        self.pow(&BigUint::from(e))
    }

    /// Order: the least common multiple of the cycle lengths.
    pub fn order(&self) -> BigUint {
        let mut o = BigUint::one();
        for cycle in self.cycles() {
            o = o.lcm(&BigUint::from(cycle.len()));
        }
        o
    }

    /// 1-based cycle notation, "()" for the identity.
    pub fn cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".into();
        }
        cycles
            .iter()
            .map(|c| {
                let pts: Vec<String> = c.iter().map(|&x| (x + 1).to_string()).collect();
                format!("({})", pts.join(","))
            })
            .collect()
    }
}

impl std::fmt::Debug for Perm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.cycle_string())
    }
}

/// A permutation group given by its degree and generators.
#[derive(Clone, Debug)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Perm>,
}

impl PermutationGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<PermutationGroup> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(Error::InvalidPermutation(format!(
                "degree {degree} is outside 1..={MAX_DEGREE}"
            )));
        }
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::InvalidPermutation(format!(
                "a generator acts on {} points, the group on {degree}",
                g.degree()
            )));
        }
        Ok(PermutationGroup { degree, generators })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    /// Parse {"degree": d, "generators": [...]} where each generator is a
    /// 1-based image array or a cycle string like "(1,2,3)(4,5)".
    pub fn from_json(text: &str) -> Result<PermutationGroup> {
        #[derive(serde::Deserialize)]
        struct File {
            degree: usize,
            generators: Vec<GenSpec>,
        }
        #[derive(serde::Deserialize)]
        #[serde(untagged)]
        enum GenSpec {
            Images(Vec<u64>),
            Cycles(String),
        }
        let file: File = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if file.degree == 0 || file.degree > MAX_DEGREE {
            return Err(Error::InvalidPermutation(format!(
                "degree {} is outside 1..={MAX_DEGREE}",
                file.degree
            )));
        }
        let generators = file
            .generators
            .iter()
            .map(|spec| match spec {
                GenSpec::Images(images) => {
                    if images.len() != file.degree {
                        return Err(Error::InvalidPermutation(format!(
                            "an image array lists {} points for degree {}",
                            images.len(),
                            file.degree
                        )));
                    }
                    let zero_based: Vec<u16> = images
                        .iter()
                        .map(|&img| {
                            if img == 0 || img as usize > file.degree {
                                Err(Error::InvalidPermutation(format!(
                                    "image {img} is outside 1..={}",
                                    file.degree
                                )))
                            } else {
                                Ok((img - 1) as u16)
                            }
                        })
                        .collect::<Result<_>>()?;
                    Perm::from_images(zero_based)
                }
                GenSpec::Cycles(s) => parse_cycles(s, file.degree),
            })
            .collect::<Result<_>>()?;
        PermutationGroup::new(file.degree, generators)
    }

    /// Serialize as 1-based image arrays, the format `from_json` accepts.
    pub fn to_json(&self) -> String {
        let gens: Vec<Vec<u64>> = self
            .generators
            .iter()
            .map(|g| g.images.iter().map(|&x| x as u64 + 1).collect())
            .collect();
        serde_json::json!({ "degree": self.degree, "generators": gens }).to_string()
    }
}

/// Parse 1-based disjoint cycle notation; fixed points are implied.
fn parse_cycles(text: &str, degree: usize) -> Result<Perm> {
    let bad = |msg: String| Error::InvalidPermutation(msg);
    let mut images: Vec<u16> = Perm::identity(degree).images;
    let mut moved = vec![false; degree];
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut rest = compact.as_str();
    while !rest.is_empty() {
        let inner = rest
            .strip_prefix('(')
            .and_then(|r| r.split_once(')'))
            .ok_or_else(|| bad(format!("malformed cycle notation {text:?}")))?;
        let (body, tail) = inner;
        rest = tail;
        if body.is_empty() {
            continue; // "()" names the identity
        }
        let points: Vec<u16> = body
            .split(',')
            .map(|tok| {
                let v: usize =
                    tok.parse().map_err(|_| bad(format!("bad point {tok:?} in {text:?}")))?;
                if v == 0 || v > degree {
                    return Err(bad(format!("point {v} is outside 1..={degree}")));
                }
                if moved[v - 1] {
                    return Err(bad(format!("point {v} appears twice in {text:?}")));
                }
                moved[v - 1] = true;
                Ok((v - 1) as u16)
            })
            .collect::<Result<_>>()?;
        for (i, &x) in points.iter().enumerate() {
            images[x as usize] = points[(i + 1) % points.len()];
        }
    }
    Perm::from_images(images)
}

/// The regular representation of a descriptor's group: one generator per
/// prime, permuting the n points that encode normal-form exponent vectors.
pub fn regular_representation(
    desc: &CGroupDescriptor,
    options: &ConcreteOptions,
) -> Result<PermutationGroup> {
    let bound = options.degree_bound.min(MAX_DEGREE);
    let degree = desc
        .order()
        .value()
        .to_usize()
        .filter(|&n| n <= bound)
        .ok_or_else(|| Error::DegreeTooLarge {
            degree: desc.order().value().to_usize().unwrap_or(usize::MAX),
            bound,
        })?;
    let parts: Vec<u64> = desc
        .order()
        .factors()
        .iter()
        .map(|&(p, a)| prime_power(p, a).map(|pp| pp as u64))
        .collect::<Result<_>>()?;
    // strides for the mixed-radix point encoding, last coordinate fastest
    let mut strides = vec![1u64; parts.len()];
    for i in (0..parts.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * parts[i + 1];
    }
    // action[i][j]: exponent by which generator i conjugates generator j
    let k = parts.len();
    let mut action = vec![vec![1u64; k]; k];
    let primes: Vec<u128> = desc.order().primes().collect();
    for (t, &choice) in desc.cluster().triples().iter().zip(desc.action_choices()) {
        let i = primes.iter().position(|&p| p == t.p).expect("acting prime divides n");
        let j = primes.iter().position(|&p| p == t.q).expect("acted prime divides n");
        action[i][j] =
            action_exponent(t.q, desc.order().exponent_of(t.q), t.p, t.e, choice)? as u64;
    }
    let decode = |mut point: u64| -> Vec<u64> {
        let mut c = vec![0u64; k];
        for i in 0..k {
            c[i] = point / strides[i];
            point %= strides[i];
        }
        c
    };
    let generators = (0..k)
        .map(|i| {
            let images: Vec<u16> = (0..degree as u64)
                .map(|point| {
                    // right-multiply the normal form by generator i
                    let mut c = decode(point);
                    c[i] = (c[i] + 1) % parts[i];
                    for j in i + 1..k {
                        c[j] = c[j] * action[i][j] % parts[j];
                    }
                    let encoded: u64 = c.iter().zip(&strides).map(|(&d, &s)| d * s).sum();
                    encoded as u16
                })
                .collect();
            Perm::from_images(images)
        })
        .collect::<Result<_>>()?;
    PermutationGroup::new(degree, generators)
}

/// One level of a stabilizer chain: a base point, the generators of the
/// stabilizer of all earlier base points, and an explicit transversal.
struct Level {
    beta: u16,
    gens: Vec<Perm>,
    transversal: HashMap<u16, Perm>,
}

/// A deterministic Schreier-Sims stabilizer chain.
pub(crate) struct StabilizerChain {
    degree: usize,
    levels: Vec<Level>,
    cells: u64,
}

impl StabilizerChain {
    pub(crate) fn new(degree: usize) -> StabilizerChain {
        StabilizerChain { degree, levels: Vec::new(), cells: 0 }
    }

    pub(crate) fn from_generators(degree: usize, gens: &[Perm]) -> Result<StabilizerChain> {
        let mut chain = StabilizerChain::new(degree);
        for g in gens {
            chain.add_generator(g.clone())?;
        }
        Ok(chain)
    }

    pub(crate) fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |o, lvl| o * BigUint::from(lvl.transversal.len()))
    }

    /// The group order as sorted (prime, exponent) pairs; orbit sizes are at
    /// most the degree, so each factors quickly.
    pub(crate) fn order_factors(&self) -> Result<Vec<(u128, u32)>> {
        let mut merged: HashMap<u128, u32> = HashMap::new();
        for lvl in &self.levels {
            for (p, a) in factorize(lvl.transversal.len() as u128)? {
                *merged.entry(p).or_insert(0) += a;
            }
        }
        let mut factors: Vec<(u128, u32)> = merged.into_iter().collect();
        factors.sort_unstable_by_key(|&(p, _)| p);
        Ok(factors)
    }

    /// Strip g through the transversals; returns the first level with no
    /// matching coset and the residue there.
    fn sift(&self, mut g: Perm) -> (usize, Perm) {
        for (lvl, level) in self.levels.iter().enumerate() {
            let delta = g.apply(level.beta);
            match level.transversal.get(&delta) {
                None => return (lvl, g),
                Some(t) => g = g.then(&t.inverse()),
            }
        }
        (self.levels.len(), g)
    }

    pub(crate) fn contains(&self, g: &Perm) -> bool {
        let (lvl, residue) = self.sift(g.clone());
        lvl == self.levels.len() && residue.is_identity()
    }

    /// The generators of the stabilizer subgroup at a level: everything
    /// stored at this level or deeper (deeper generators fix more base
    /// points, so they belong to every shallower stabilizer as well).
    fn level_generators(&self, at: usize) -> Vec<Perm> {
        self.levels[at..].iter().flat_map(|l| l.gens.iter().cloned()).collect()
    }

    pub(crate) fn add_generator(&mut self, g: Perm) -> Result<()> {
        let mut work: Vec<Perm> = vec![g];
        while let Some(g) = work.pop() {
            if g.is_identity() || self.contains(&g) {
                continue;
            }
            // the generator belongs to every level whose base prefix it
            // fixes; store it at the deepest one
            let at = (0..self.levels.len())
                .find(|&lvl| g.apply(self.levels[lvl].beta) != self.levels[lvl].beta)
                .unwrap_or(self.levels.len());
            if at == self.levels.len() {
                let beta = (0..self.degree as u16)
                    .find(|&x| g.apply(x) != x)
                    .expect("a non-identity permutation moves a point");
                self.levels.push(Level { beta, gens: Vec::new(), transversal: HashMap::new() });
            }
            self.levels[at].gens.push(g);
            // the stabilizer generators changed for every level up to `at`:
            // refresh those orbits and re-check their Schreier generators
            for lvl in 0..=at {
                self.recompute_orbit(lvl)?;
                let gens = self.level_generators(lvl);
                let level = &self.levels[lvl];
                let mut points: Vec<u16> = level.transversal.keys().copied().collect();
                points.sort_unstable();
                for delta in points {
                    for s in &gens {
                        let t = &level.transversal[&delta];
                        let t_img = &level.transversal[&s.apply(delta)];
                        let schreier = t.then(s).then(&t_img.inverse());
                        if !schreier.is_identity() {
                            work.push(schreier);
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn recompute_orbit(&mut self, at: usize) -> Result<()> {
        let gens = self.level_generators(at);
        let level = &mut self.levels[at];
        self.cells -= level.transversal.len() as u64 * self.degree as u64;
        let mut transversal = HashMap::new();
        transversal.insert(level.beta, Perm::identity(self.degree));
        let mut queue = vec![level.beta];
        while let Some(delta) = queue.pop() {
            for s in &gens {
                let img = s.apply(delta);
                if !transversal.contains_key(&img) {
                    let t = transversal[&delta].then(s);
                    transversal.insert(img, t);
                    queue.push(img);
                }
            }
        }
        self.cells += transversal.len() as u64 * self.degree as u64;
        level.transversal = transversal;
        if self.cells > TRANSVERSAL_CELL_CAP {
            return Err(Error::OutOfRange(
                "the stabilizer chain exceeds the supported size".into(),
            ));
        }
        Ok(())
    }
}

/// Generators of the derived subgroup as a normal closure of commutators,
/// together with its stabilizer chain.
fn derived_subgroup(group: &PermutationGroup) -> Result<(StabilizerChain, Vec<Perm>)> {
    let mut chain = StabilizerChain::new(group.degree());
    let mut sub_gens: Vec<Perm> = Vec::new();
    let mut work: Vec<Perm> = Vec::new();
    for (i, a) in group.generators().iter().enumerate() {
        for b in group.generators().iter().skip(i + 1) {
            work.push(a.inverse().then(&b.inverse()).then(a).then(b));
        }
    }
    while let Some(c) = work.pop() {
        if c.is_identity() || chain.contains(&c) {
            continue;
        }
        chain.add_generator(c.clone())?;
        for g in group.generators() {
            work.push(c.conjugate_by(g));
        }
        sub_gens.push(c);
    }
    Ok((chain, sub_gens))
}

/// Baby-step giant-step in the group generated by a permutation of prime
/// order q: the exponent of target over base.
fn perm_bsgs(base: &Perm, target: &Perm, q: u128) -> Result<u128> {
    let m = (q as f64).sqrt().ceil() as u128;
    let mut table: HashMap<Perm, u128> = HashMap::new();
    let mut cur = Perm::identity(base.degree());
    for j in 0..m {
        table.entry(cur.clone()).or_insert(j);
        cur = cur.then(base);
    }
    let giant = base.inverse().pow_u128(m);
    let mut probe = target.clone();
    for i in 0..=(q / m + 1) {
        if let Some(&j) = table.get(&probe) {
            return Ok((i * m + j) % q);
        }
        probe = probe.then(&giant);
    }
    Err(Error::NotGenerator)
}

/// Discrete logarithm in the cyclic group generated by a permutation of
/// prime-power order q^gamma: the exponent x with base^x = target, lifted
/// one base-q digit at a time.
fn perm_dlog(base: &Perm, target: &Perm, q: u128, gamma: u32) -> Result<u128> {
    let order = prime_power(q, gamma)?;
    let step = base.pow_u128(order / q); // order exactly q
    let base_inv = base.inverse();
    let mut x: u128 = 0;
    for i in 0..gamma {
        let shifted = target.then(&base_inv.pow_u128(x));
        let h = shifted.pow_u128(order / prime_power(q, i + 1)?);
        let digit = perm_bsgs(&step, &h, q)?;
        x += digit * prime_power(q, i)?;
    }
    if &base.pow_u128(x) != target {
        return Err(Error::NotCGroup(
            "a conjugate escapes the cyclic derived subgroup".into(),
        ));
    }
    Ok(x)
}

/// Identify the group generated by the given permutations, provided all its
/// Sylow subgroups are cyclic; the descriptor locates it in the enumeration.
pub fn descriptor_of_permutation_group(
    group: &PermutationGroup,
    options: &ConcreteOptions,
) -> Result<CGroupDescriptor> {
    let bound = options.degree_bound.min(MAX_DEGREE);
    if group.degree() > bound {
        return Err(Error::DegreeTooLarge { degree: group.degree(), bound });
    }
    let not_c = |msg: String| Error::NotCGroup(msg);

    let chain = StabilizerChain::from_generators(group.degree(), group.generators())?;
    let n = FactoredInt::from_factors(chain.order_factors()?)?;
    // a cyclic Sylow subgroup of order q^a needs a cycle of q^a points
    for &(q, a) in n.factors() {
        if prime_power(q, a)? > group.degree() as u128 {
            return Err(not_c(format!(
                "a cyclic Sylow {q}-subgroup of order {q}^{a} cannot act on {} points",
                group.degree()
            )));
        }
    }

    let (d_chain, d_gens) = derived_subgroup(group)?;
    let b = d_chain.order();
    if (&b % 2u32).is_zero() {
        return Err(not_c(format!("the derived subgroup has even order {b}")));
    }
    let acted = d_chain.order_factors()?;
    for &(q, gamma) in &acted {
        if n.exponent_of(q) != gamma {
            return Err(not_c(format!(
                "the derived subgroup captures only part of the Sylow {q}-subgroup"
            )));
        }
    }
    let acting: Vec<(u128, u32)> = n
        .factors()
        .iter()
        .copied()
        .filter(|&(p, _)| !acted.iter().any(|&(q, _)| q == p))
        .collect();

    // a generator of the derived subgroup, assembled one Sylow part at a time
    let mut y_parts: Vec<(u128, u32, Perm)> = Vec::new();
    for &(q, gamma) in &acted {
        let part = BigUint::from(prime_power(q, gamma)?);
        let full = d_gens
            .iter()
            .map(|g| (g, g.order()))
            .find(|(_, o)| (o % &part).is_zero());
        let Some((g, o)) = full else {
            return Err(not_c(format!(
                "the derived subgroup has no element of order {q}^{gamma}, so it is not cyclic"
            )));
        };
        y_parts.push((q, gamma, g.pow(&(o / &part))));
    }
    let y = y_parts
        .iter()
        .fold(Perm::identity(group.degree()), |acc, (_, _, part)| acc.then(part));
    if y.order() != b {
        return Err(not_c("the derived subgroup is not cyclic".into()));
    }

    // a generator of the cyclic quotient, one Sylow part at a time
    let a_val = n.value() / &b;
    let mut h = Perm::identity(group.degree());
    for &(p, ap) in &acting {
        let cofactor = &a_val / BigUint::from(prime_power(p, ap)?);
        let head = prime_power(p, ap - 1)?;
        let found = group.generators().iter().find_map(|g| {
            let gp = g.pow(&cofactor);
            let probe = gp.pow_u128(head);
            (!d_chain.contains(&probe)).then_some(gp)
        });
        let Some(gp) = found else {
            return Err(not_c(format!("the Sylow {p}-subgroup is not cyclic")));
        };
        h = h.then(&gp);
    }
    let ord_h = h.order();
    if (&ord_h % &a_val) != BigUint::zero() {
        return Err(not_c("the quotient by the derived subgroup is not cyclic".into()));
    }
    // strip the derived-subgroup part: x = h^e with e = 1 mod a, 0 mod c
    let c = &ord_h / &a_val;
    let x = if c.is_one() {
        h
    } else {
        let inv = big_inv_mod(&c, &a_val)
            .ok_or_else(|| not_c("the quotient by the derived subgroup is not cyclic".into()))?;
        h.pow(&(&c * inv))
    };
    if x.order() != a_val {
        return Err(not_c("the quotient by the derived subgroup is not cyclic".into()));
    }

    // conjugation exponents of x on each Sylow part of the derived subgroup
    let residues: Vec<(u128, u128)> = y_parts
        .iter()
        .map(|(q, gamma, y_q)| {
            let z = y_q.conjugate_by(&x);
            let r_q = perm_dlog(y_q, &z, *q, *gamma)?;
            Ok((*q, r_q))
        })
        .collect::<Result<_>>()?;

    let desc = parts_to_descriptor(&n, &acting, &acted, &residues)?;

    // seeded self-check: random subproducts of the generators must have
    // orders dividing the computed group order
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    for _ in 0..4 {
        let mut w = Perm::identity(group.degree());
        for g in group.generators() {
            if rng.gen::<bool>() {
                w = w.then(g);
            }
        }
        assert!(
            (n.value() % w.order()).is_zero(),
            "internal error: an element order does not divide the computed group order"
        );
    }

    Ok(desc)
}

/// The canonical id of a permutation group whose Sylow subgroups are cyclic.
pub fn id_of_permutation_group(
    group: &PermutationGroup,
    options: &ConcreteOptions,
) -> Result<GroupId> {
    id_of_descriptor(&descriptor_of_permutation_group(group, options)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::group_by_id;

    fn perm(degree: usize, cycles: &str) -> Perm {
        parse_cycles(cycles, degree).unwrap()
    }

    fn group(degree: usize, cycles: &[&str]) -> PermutationGroup {
        PermutationGroup::new(degree, cycles.iter().map(|c| perm(degree, c)).collect()).unwrap()
    }

    fn id_of(degree: usize, cycles: &[&str]) -> Result<GroupId> {
        id_of_permutation_group(&group(degree, cycles), &ConcreteOptions::default())
    }

    #[test]
    fn perm_arithmetic() {
        let a = perm(5, "(1,2,3)(4,5)");
        assert_eq!(a.cycle_string(), "(1,2,3)(4,5)");
        assert_eq!(a.order(), BigUint::from(6u32));
        assert!(a.then(&a.inverse()).is_identity());
        assert_eq!(a.pow_u128(3).cycle_string(), "(4,5)");
        assert_eq!(a.pow_u128(7), a);
        let b = perm(5, "(1,2)");
        // (1,2,3)(4,5) then (1,2): point 1 -> 2 -> 1
        assert_eq!(a.then(&b).apply(0), 0);
        // conjugation relabels the cycle entries through b
        assert_eq!(a.conjugate_by(&b).cycle_string(), "(1,3,2)(4,5)");
        assert_eq!(perm(5, "()").order(), BigUint::one());
    }

    #[test]
    fn cycle_parsing_rejects_garbage() {
        assert!(parse_cycles("(1,2", 4).is_err());
        assert!(parse_cycles("(1,2)(2,3)", 4).is_err());
        assert!(parse_cycles("(0,1)", 4).is_err());
        assert!(parse_cycles("(1,5)", 4).is_err());
        assert!(parse_cycles("(1,x)", 4).is_err());
        assert!(parse_cycles("()", 4).unwrap().is_identity());
    }

    #[test]
    fn chain_orders() {
        let s4 = group(4, &["(1,2,3,4)", "(1,2)"]);
        let chain = StabilizerChain::from_generators(4, s4.generators()).unwrap();
        assert_eq!(chain.order(), BigUint::from(24u32));
        assert!(chain.contains(&perm(4, "(1,3)(2,4)")));
        let a4 = group(4, &["(1,2,3)", "(2,3,4)"]);
        let chain = StabilizerChain::from_generators(4, a4.generators()).unwrap();
        assert_eq!(chain.order(), BigUint::from(12u32));
        assert!(!chain.contains(&perm(4, "(1,2)")));
        assert_eq!(chain.order_factors().unwrap(), vec![(2, 2), (3, 1)]);
    }

    #[test]
    fn recognizes_small_groups() {
        assert_eq!(id_of(6, &["(1,2,3,4,5,6)"]).unwrap().to_string(), "n=6 i=1");
        assert_eq!(id_of(3, &["(1,2,3)", "(1,3,2)"]).unwrap().to_string(), "n=3 i=1");
        assert_eq!(id_of(3, &["(1,2,3)", "(1,2)"]).unwrap().to_string(), "n=6 i=2");
        assert_eq!(id_of(1, &["()"]).unwrap().to_string(), "n=1 i=1");
        // the Frobenius group of order 20 on 5 points: the faithful action
        // sorts after the order-2 action, so it is the third group
        assert_eq!(id_of(5, &["(1,2,3,4,5)", "(2,3,5,4)"]).unwrap().to_string(), "n=20 i=3");
        // C7 : C3 on 7 points (2 has order 3 mod 7)
        assert_eq!(id_of(7, &["(1,2,3,4,5,6,7)", "(2,3,5)(4,7,6)"]).unwrap().to_string(), "n=21 i=2");
    }

    #[test]
    fn rejects_non_c_groups() {
        let a4 = id_of(4, &["(1,2,3)", "(2,3,4)"]);
        assert!(matches!(a4, Err(Error::NotCGroup(ref m)) if m.contains("even")), "{a4:?}");
        let klein = id_of(4, &["(1,2)(3,4)", "(1,3)(2,4)"]);
        assert!(matches!(klein, Err(Error::NotCGroup(_))), "{klein:?}");
        // C3 x S3: the 3-part straddles the derived subgroup and the quotient
        let c3s3 = id_of(6, &["(1,2,3)", "(4,5,6)", "(4,5)"]);
        assert!(matches!(c3s3, Err(Error::NotCGroup(ref m)) if m.contains("Sylow 3")), "{c3s3:?}");
        // C2 x C2 x C7 is abelian but not cyclic
        let c227 = id_of(11, &["(1,2)", "(3,4)", "(5,6,7,8,9,10,11)"]);
        assert!(matches!(c227, Err(Error::NotCGroup(_))), "{c227:?}");
    }

    #[test]
    fn regular_representation_round_trips() {
        let opts = ConcreteOptions::default();
        for (n, i) in [(1u128, 1u128), (6, 1), (6, 2), (12, 2), (20, 2), (20, 3), (21, 2), (63, 2)] {
            let nf = FactoredInt::factorize(n).unwrap();
            let desc = group_by_id(&nf, i).unwrap();
            let reg = regular_representation(&desc, &opts).unwrap();
            assert_eq!(reg.degree() as u128, n);
            let id = id_of_permutation_group(&reg, &opts).unwrap();
            assert_eq!((id.n, id.i), (BigUint::from(n), i), "n = {n}, i = {i}");
        }
    }

    #[test]
    fn degree_bound_is_enforced() {
        let opts = ConcreteOptions { degree_bound: 10, seed: 0 };
        let nf = FactoredInt::factorize(12).unwrap();
        let desc = group_by_id(&nf, 2).unwrap();
        assert!(matches!(
            regular_representation(&desc, &opts),
            Err(Error::DegreeTooLarge { degree: 12, bound: 10 })
        ));
        let c12 = group(12, &["(1,2,3,4,5,6,7,8,9,10,11,12)"]);
        assert!(matches!(
            id_of_permutation_group(&c12, &opts),
            Err(Error::DegreeTooLarge { degree: 12, bound: 10 })
        ));
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"degree": 4, "generators": [[2,3,1,4], "(3,4)"]}"#;
        let g = PermutationGroup::from_json(text).unwrap();
        assert_eq!(g.degree(), 4);
        assert_eq!(g.generators()[0].cycle_string(), "(1,2,3)");
        assert_eq!(g.generators()[1].cycle_string(), "(3,4)");
        let again = PermutationGroup::from_json(&g.to_json()).unwrap();
        assert_eq!(again.generators()[0], g.generators()[0]);
        assert!(PermutationGroup::from_json("{\"degree\": 3}").is_err());
        assert!(PermutationGroup::from_json("{\"degree\": 3, \"generators\": [[1,2]]}").is_err());
        assert!(PermutationGroup::from_json("{\"degree\": 3, \"generators\": [[1,2,2]]}").is_err());
    }

    #[test]
    fn seed_does_not_change_the_answer() {
        let s3 = group(3, &["(1,2,3)", "(1,2)"]);
        let id0 = id_of_permutation_group(&s3, &ConcreteOptions { degree_bound: 5000, seed: 0 });
        let id9 = id_of_permutation_group(&s3, &ConcreteOptions { degree_bound: 5000, seed: 9 });
        assert_eq!(id0.unwrap(), id9.unwrap());
    }
}
