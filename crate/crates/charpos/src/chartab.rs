//! Exact character tables via the Dixon–Schneider method, and the character
//! operations built on them: inner products, restriction, induction,
//! constituent decomposition, kernels, and table verification.
//!
//! Class matrices are diagonalised over a prime field GF(p) with
//! p ≡ 1 (mod exp G) and p > 2√|G|; common eigenvectors give the central
//! characters mod p, which are lifted to exact cyclotomic values through the
//! inverse discrete Fourier transform on each cyclic subgroup of classes.
//! Every table is verified (degree sum, row orthogonality, linear-character
//! count) before it is returned.

use std::fmt::Write as _;
use std::sync::Arc;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::modular::{choose_dixon_prime, lift_value, mod_inv, nullspace, rref, FpMatrix};
use crate::perm::Permutation;
use crate::subgroups::SubgroupRecord;

/// A class function: one cyclotomic value per conjugacy class.
#[derive(Clone)]
pub struct ClassFunction {
    group: Arc<PermGroup>,
    values: Vec<Cyclotomic>,
}

impl ClassFunction {
    pub fn new(group: Arc<PermGroup>, values: Vec<Cyclotomic>) -> Result<Self> {
        if values.len() != group.class_table().len() {
            return Err(Error::Inconsistent(format!(
                "expected {} class values, got {}",
                group.class_table().len(),
                values.len()
            )));
        }
        Ok(ClassFunction { group, values })
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &Cyclotomic {
        &self.values[class]
    }

    /// Degree = value at the identity class.
    pub fn degree(&self) -> Option<BigInt> {
        self.values[0].as_integer()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn trivial(group: Arc<PermGroup>) -> Self {
        let k = group.class_table().len();
        ClassFunction {
            group,
            values: vec![Cyclotomic::one(); k],
        }
    }

    /// The regular character: |G| at the identity, 0 elsewhere.
    pub fn regular(group: Arc<PermGroup>) -> Self {
        let k = group.class_table().len();
        let mut values = vec![Cyclotomic::zero(); k];
        values[0] = Cyclotomic::from_integer(group.order() as i64);
        ClassFunction { group, values }
    }

    pub fn conjugate(&self) -> ClassFunction {
        ClassFunction {
            group: self.group.clone(),
            values: self.values.iter().map(|v| v.conjugate()).collect(),
        }
    }

    pub fn add(&self, other: &ClassFunction) -> Result<ClassFunction> {
        if !self.group.same_elements(&other.group) {
            return Err(Error::GroupMismatch);
        }
        Ok(ClassFunction {
            group: self.group.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale_integer(&self, n: u64) -> ClassFunction {
        let q = BigRational::from_integer(BigInt::from(n));
        ClassFunction {
            group: self.group.clone(),
            values: self.values.iter().map(|v| v.scale(&q)).collect(),
        }
    }

    /// Restriction along a subgroup embedding: the value at an H-class is
    /// the value at the parent class it fuses into.
    pub fn restrict(&self, record: &SubgroupRecord) -> Result<ClassFunction> {
        if !self.group.same_elements(&record.parent) {
            return Err(Error::GroupMismatch);
        }
        let values = record.fusion.iter().map(|&j| self.values[j].clone()).collect();
        ClassFunction::new(record.subgroup.clone(), values)
    }

    /// Induction along a subgroup embedding, by the centralizer-order form
    /// of the induced character formula:
    ///   φ^G(g) = |C_G(g)| · Σ_{c ↦ [g]} φ(c) / |C_H(rep_c)|.
    pub fn induce(&self, record: &SubgroupRecord) -> Result<ClassFunction> {
        if !self.group.same_elements(&record.subgroup) {
            return Err(Error::GroupMismatch);
        }
        let parent = &record.parent;
        let pct = parent.class_table();
        let hct = record.subgroup.class_table();
        let h_order = record.subgroup.order();
        let g_order = parent.order();
        let mut values = vec![Cyclotomic::zero(); pct.len()];
        for (c, &j) in record.fusion.iter().enumerate() {
            if self.values[c].is_zero() {
                continue;
            }
            // |C_G(g_j)| / |C_H(h_c)| = (|G|·|c^H|) / (|j^G|·|H|)
            let coeff = BigRational::new(
                BigInt::from(g_order * hct.class_size(c)),
                BigInt::from(pct.class_size(j) * h_order),
            );
            values[j] = &values[j] + &self.values[c].scale(&coeff);
        }
        ClassFunction::new(parent.clone(), values)
    }
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        self.group.same_elements(&other.group) && self.values == other.values
    }
}

impl Eq for ClassFunction {}

impl std::fmt::Debug for ClassFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ClassFunction{:?}", self.values)
    }
}

/// `[a, b] = (1/|G|) Σ_classes |class| · a(g) · conj(b(g))`, exact.
pub fn inner_product(a: &ClassFunction, b: &ClassFunction) -> Result<BigRational> {
    let v = inner_product_raw(a, b)?;
    v.as_rational().cloned().ok_or_else(|| {
        Error::Inconsistent("inner product of these class functions is not rational".into())
    })
}

/// Inner product without the rationality requirement.
pub fn inner_product_raw(a: &ClassFunction, b: &ClassFunction) -> Result<Cyclotomic> {
    if !a.group.same_elements(&b.group) {
        return Err(Error::GroupMismatch);
    }
    let ct = a.group.class_table();
    let mut e = 1u64;
    for v in a.values.iter().chain(&b.values) {
        e = num::integer::lcm(e, v.conductor());
    }
    let mut acc = crate::cyclotomic::RootSumAccumulator::new(e);
    for i in 0..ct.len() {
        if a.values[i].is_zero() || b.values[i].is_zero() {
            continue;
        }
        acc.add_weighted_product(&a.values[i], &b.values[i], ct.class_size(i) as u64);
    }
    let inv_order = BigRational::new(BigInt::one(), BigInt::from(a.group.order()));
    Ok(acc.finish().scale(&inv_order))
}

/// The irreducible characters of a group, in a deterministic row order.
pub struct CharacterTable {
    group: Arc<PermGroup>,
    irreducibles: Vec<ClassFunction>,
    degrees: Vec<u64>,
    /// Sorted distinct degrees, `cd(G)`.
    cd: Vec<u64>,
}

impl CharacterTable {
    /// Runs Dixon–Schneider and verifies the resulting table.
    pub fn compute(group: &Arc<PermGroup>) -> Result<Arc<CharacterTable>> {
        let ct = group.class_table();
        let k = ct.len();
        let order = group.order() as u64;
        let field = choose_dixon_prime(order, ct.exponent());
        let p = field.prime;

        let eigvecs = common_eigenvectors(group, k, p)?;

        let sizes_mod: Vec<u64> = (0..k).map(|j| ct.class_size(j) as u64 % p).collect();
        let mut rows: Vec<(u64, String, Vec<Cyclotomic>)> = Vec::with_capacity(k);
        for w in eigvecs {
            // degree from the weighted norm of the central character
            let mut s = 0u64;
            for j in 0..k {
                let jinv = ct.inverse_class(j);
                s = (s + w[j] * w[jinv] % p * mod_inv(sizes_mod[j], p)) % p;
            }
            if s == 0 {
                return Err(Error::Inconsistent(
                    "central character has zero weighted norm".into(),
                ));
            }
            let d_sq = order % p * mod_inv(s, p) % p;
            let degree = (1..)
                .take_while(|d| d * d <= order)
                .find(|d| d * d % p == d_sq)
                .ok_or_else(|| {
                    Error::Inconsistent("irreducible degree not recovered mod p".into())
                })?;
            // character residues: χ(g_j) = d·ω_j / |C_j|
            let residues: Vec<u64> = (0..k)
                .map(|j| degree % p * w[j] % p * mod_inv(sizes_mod[j], p) % p)
                .collect();
            let mut values = Vec::with_capacity(k);
            for j in 0..k {
                let o = ct.class_order(j);
                let power_res: Vec<u64> =
                    (0..o).map(|s| residues[ct.power_class(j, s)]).collect();
                values.push(lift_value(&power_res, &field, o)?);
            }
            let key = values.iter().fold(String::new(), |mut acc, v| {
                let _ = write!(acc, "{}\t", v.serialize());
                acc
            });
            rows.push((degree, key, values));
        }
        rows.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));

        let degrees: Vec<u64> = rows.iter().map(|r| r.0).collect();
        let mut cd = degrees.clone();
        cd.sort_unstable();
        cd.dedup();
        let irreducibles = rows
            .into_iter()
            .map(|(_, _, values)| ClassFunction::new(group.clone(), values))
            .collect::<Result<Vec<_>>>()?;

        let table = CharacterTable {
            group: group.clone(),
            irreducibles,
            degrees,
            cd,
        };
        table.verify_core()?;
        Ok(Arc::new(table))
    }

    fn verify_core(&self) -> Result<()> {
        let order = self.group.order() as u64;
        let k = self.group.class_table().len();
        if self.irreducibles.len() != k {
            return Err(Error::Inconsistent(format!(
                "{} irreducibles for {} classes",
                self.irreducibles.len(),
                k
            )));
        }
        let degree_sum: u64 = self.degrees.iter().map(|d| d * d).sum();
        if degree_sum != order {
            return Err(Error::Inconsistent(format!(
                "Σ degree² = {degree_sum} but |G| = {order}"
            )));
        }
        for i in 0..k {
            for j in i..k {
                let ip = inner_product(&self.irreducibles[i], &self.irreducibles[j])?;
                let expected = if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                };
                if ip != expected {
                    return Err(Error::Inconsistent(format!(
                        "row orthogonality fails at ({i}, {j}): [χi, χj] = {ip}"
                    )));
                }
            }
        }
        let linear = self.degrees.iter().filter(|&&d| d == 1).count();
        let index = self.group.order() / self.group.derived_subgroup().order();
        if linear != index {
            return Err(Error::Inconsistent(format!(
                "{linear} linear characters but [G:G′] = {index}"
            )));
        }
        Ok(())
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn irreducibles(&self) -> &[ClassFunction] {
        &self.irreducibles
    }

    pub fn irreducible(&self, i: usize) -> &ClassFunction {
        &self.irreducibles[i]
    }

    pub fn len(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreducibles.is_empty()
    }

    /// Degree of row `i`.
    pub fn degree(&self, i: usize) -> u64 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    /// Sorted set of distinct irreducible degrees.
    pub fn cd(&self) -> &[u64] {
        &self.cd
    }

    /// Row indices of the linear characters.
    pub fn linear_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.degrees[i] == 1).collect()
    }

    /// Row of the trivial character.
    pub fn trivial_row(&self) -> usize {
        self.irreducibles
            .iter()
            .position(|chi| chi.values().iter().all(|v| v == &Cyclotomic::one()))
            .expect("every table contains the trivial character")
    }

    /// Row indices of the nonlinear irreducibles, `Irr(G|G′)`.
    pub fn nonlinear_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.degrees[i] > 1).collect()
    }

    /// Decomposes a character into irreducible constituents with
    /// multiplicities; errors when some inner product is negative or
    /// non-integral (then the input was not a character).
    pub fn constituents(&self, theta: &ClassFunction) -> Result<Vec<(usize, u64)>> {
        if !theta.group().same_elements(&self.group) {
            return Err(Error::GroupMismatch);
        }
        let mut out = Vec::new();
        for (i, chi) in self.irreducibles.iter().enumerate() {
            let m = inner_product(theta, chi)
                .map_err(|_| Error::NotACharacter("non-rational inner product".into()))?;
            if m.is_zero() {
                continue;
            }
            if !m.is_integer() || m.is_negative() {
                return Err(Error::NotACharacter(format!(
                    "multiplicity of irreducible {i} is {m}"
                )));
            }
            let m: u64 = m.to_integer().try_into().map_err(|_| {
                Error::NotACharacter(format!("multiplicity of irreducible {i} overflows"))
            })?;
            out.push((i, m));
        }
        Ok(out)
    }

    /// Serialises the table in the line-oriented text format.
    pub fn to_text(&self) -> String {
        let ct = self.group.class_table();
        let mut s = String::new();
        let _ = writeln!(
            s,
            "order {} classes {} exponent {}",
            self.group.order(),
            ct.len(),
            ct.exponent()
        );
        for c in ct.classes() {
            let _ = writeln!(
                s,
                "{} {} {}",
                c.representative,
                c.members.len(),
                c.element_order
            );
        }
        for chi in &self.irreducibles {
            let row: Vec<String> = chi.values().iter().map(|v| v.serialize()).collect();
            let _ = writeln!(s, "{}", row.join("\t"));
        }
        s
    }
}

/// Finds the common eigenvectors of the class matrices over GF(p),
/// normalised so the identity-class coordinate is 1.
fn common_eigenvectors(group: &Arc<PermGroup>, k: usize, p: u64) -> Result<Vec<Vec<u64>>> {
    // Start from the full space; split by class matrices in class order.
    let mut spaces: Vec<FpMatrix> = vec![(0..k)
        .map(|i| {
            let mut row = vec![0u64; k];
            row[i] = 1;
            row
        })
        .collect()];
    for ci in 1..k {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let m = class_matrix(group, ci, p);
        let mut next = Vec::with_capacity(spaces.len());
        for basis in spaces {
            if basis.len() == 1 {
                next.push(basis);
            } else {
                next.extend(split_space(basis, &m, p)?);
            }
        }
        spaces = next;
    }
    if !spaces.iter().all(|s| s.len() == 1) {
        return Err(Error::Inconsistent(
            "class matrices exhausted before eigenspaces split".into(),
        ));
    }
    spaces
        .into_iter()
        .map(|basis| {
            let v = &basis[0];
            if v[0] == 0 {
                return Err(Error::Inconsistent(
                    "eigenvector vanishes at the identity class".into(),
                ));
            }
            let inv = mod_inv(v[0], p);
            Ok(v.iter().map(|&x| x * inv % p).collect())
        })
        .collect()
}

/// Class matrix M_i over GF(p): entry (j, t) counts x ∈ C_i with
/// x⁻¹·z_t ∈ C_j, i.e. the class multiplication coefficient a_{i,j,t}.
fn class_matrix(group: &Arc<PermGroup>, i: usize, p: u64) -> FpMatrix {
    let ct = group.class_table();
    let k = ct.len();
    let mut m = vec![vec![0u64; k]; k];
    let inverses: Vec<Permutation> = ct.class(i)
        .members
        .iter()
        .map(|&idx| group.elements()[idx].inverse())
        .collect();
    for t in 0..k {
        let z = &ct.class(t).representative;
        for x_inv in &inverses {
            let y = x_inv.compose(z);
            let j = ct.class_of_index(group.element_index(&y).expect("product stays in group"));
            m[j][t] += 1;
        }
    }
    for row in &mut m {
        for x in row {
            *x %= p;
        }
    }
    m
}

/// Splits an invariant subspace into the eigenspaces of `m` restricted to it.
fn split_space(basis: FpMatrix, m: &FpMatrix, p: u64) -> Result<Vec<FpMatrix>> {
    let d = basis.len();
    let k = basis[0].len();
    // Bring the basis to RREF so coordinates can be read off pivot columns.
    let mut b = basis;
    let pivots = rref(&mut b, p);
    debug_assert_eq!(b.len(), d, "basis rows must be independent");

    // Restriction R with columns = coordinates of M·(basis row).
    let mut r = vec![vec![0u64; d]; d];
    for (col, row_vec) in b.iter().enumerate() {
        // image = M · v
        let mut image = vec![0u64; k];
        for (out, m_row) in image.iter_mut().zip(m.iter()) {
            let mut acc = 0u64;
            for (x, &c) in m_row.iter().zip(row_vec.iter()) {
                if *x != 0 && c != 0 {
                    acc = (acc + *x * c) % p;
                }
            }
            *out = acc;
        }
        let coords: Vec<u64> = pivots.iter().map(|&pc| image[pc]).collect();
        // consistency: the image must lie in the subspace
        let mut check = vec![0u64; k];
        for (ci, brow) in coords.iter().zip(b.iter()) {
            for (chk, &bv) in check.iter_mut().zip(brow.iter()) {
                *chk = (*chk + ci * bv) % p;
            }
        }
        if check != image {
            return Err(Error::Inconsistent(
                "class matrix does not preserve an eigenspace".into(),
            ));
        }
        for (i, c) in coords.into_iter().enumerate() {
            r[i][col] = c;
        }
    }

    // The restriction is diagonalisable with all eigenvalues in GF(p), so
    // nullities at the roots of its characteristic polynomial total d.
    let cp = crate::modular::charpoly(&r, p);
    let mut out = Vec::new();
    let mut found = 0usize;
    for lambda in 0..p {
        if found == d {
            break;
        }
        if crate::modular::poly_eval(&cp, lambda, p) != 0 {
            continue;
        }
        let mut shifted = r.clone();
        for (i, row) in shifted.iter_mut().enumerate() {
            row[i] = (row[i] + p - lambda % p) % p;
        }
        let ns = nullspace(&shifted, p);
        if ns.is_empty() {
            continue;
        }
        found += ns.len();
        // lift coordinates back to length-k vectors
        let mut sub: FpMatrix = ns
            .iter()
            .map(|coords| {
                let mut v = vec![0u64; k];
                for (ci, brow) in coords.iter().zip(b.iter()) {
                    if *ci != 0 {
                        for (x, &bv) in v.iter_mut().zip(brow.iter()) {
                            *x = (*x + ci * bv) % p;
                        }
                    }
                }
                v
            })
            .collect();
        rref(&mut sub, p);
        out.push(sub);
    }
    if found != d {
        return Err(Error::Inconsistent(
            "restricted class matrix did not split over GF(p)".into(),
        ));
    }
    Ok(out)
}

/// Kernel of a character: the union of classes where the value equals the
/// degree, returned as a subgroup (closure is verified).
pub fn kernel(theta: &ClassFunction) -> Result<Arc<PermGroup>> {
    let degree = &theta.values()[0];
    if theta.is_zero() {
        return Err(Error::ZeroCharacter);
    }
    let group = theta.group();
    let ct = group.class_table();
    let mut members: Vec<Permutation> = Vec::new();
    for (i, v) in theta.values().iter().enumerate() {
        if v == degree {
            members.extend(
                ct.class(i)
                    .members
                    .iter()
                    .map(|&idx| group.elements()[idx].clone()),
            );
        }
    }
    let count = members.len();
    let sub = PermGroup::from_generators_capped(group.degree(), members, count.max(1))
        .map_err(|_| Error::Inconsistent("kernel classes are not closed".into()))?;
    if sub.order() != count {
        return Err(Error::Inconsistent("kernel classes are not closed".into()));
    }
    Ok(sub)
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct CheckResult {
    pub id: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Checks the arithmetic table invariants: row count, degree sum, exact row
/// and column orthogonality, and the linear-character count.
pub fn verify_table_invariants(table: &CharacterTable) -> VerifyReport {
    let mut checks = Vec::new();
    let group = table.group();
    let ct = group.class_table();
    let k = ct.len();
    let order = group.order() as u64;

    let mut push = |id: &str, passed: bool, detail: String| {
        checks.push(CheckResult {
            id: id.to_string(),
            passed,
            detail,
        });
    };

    push(
        "irreducible-count",
        table.len() == k,
        format!("{} rows for {} classes", table.len(), k),
    );

    let degree_sum: u64 = table.degrees().iter().map(|d| d * d).sum();
    push(
        "degree-sum",
        degree_sum == order,
        format!("Σ d² = {degree_sum}, |G| = {order}"),
    );

    let mut rows_ok = true;
    'rows: for i in 0..table.len() {
        for j in i..table.len() {
            let expected = if i == j {
                BigRational::one()
            } else {
                BigRational::zero()
            };
            match inner_product(table.irreducible(i), table.irreducible(j)) {
                Ok(ip) if ip == expected => {}
                _ => {
                    rows_ok = false;
                    break 'rows;
                }
            }
        }
    }
    push("row-orthogonality", rows_ok, "exact [χi, χj] = δij".into());

    let mut cols_ok = true;
    'cols: for i in 0..k {
        for j in i..k {
            let mut acc = crate::cyclotomic::RootSumAccumulator::new(ct.exponent());
            for chi in table.irreducibles() {
                acc.add_weighted_product(chi.value(i), chi.value(j), 1);
            }
            let expected = if i == j {
                Cyclotomic::from_integer((order / ct.class_size(i) as u64) as i64)
            } else {
                Cyclotomic::zero()
            };
            if acc.finish() != expected {
                cols_ok = false;
                break 'cols;
            }
        }
    }
    push(
        "column-orthogonality",
        cols_ok,
        "exact Σ_χ χ(gi)·conj(χ(gj)) = δij·|C(gi)|".into(),
    );

    let linear = table.degrees().iter().filter(|&&d| d == 1).count();
    let index = group.order() / group.derived_subgroup().order();
    push(
        "linear-count",
        linear == index,
        format!("|Lin(G)| = {linear}, [G:G′] = {index}"),
    );

    VerifyReport { checks }
}

/// Re-checks every table invariant, plus the kernel lemmas on a small
/// deterministic sample of subgroups and induced characters.
pub fn verify_table(table: &CharacterTable) -> VerifyReport {
    let mut report = verify_table_invariants(table);
    let checks = &mut report.checks;
    let group = table.group();

    let mut push = |id: &str, passed: bool, detail: String| {
        checks.push(CheckResult {
            id: id.to_string(),
            passed,
            detail,
        });
    };

    // Kernel lemmas on a deterministic sample of proper subgroups.
    match crate::subgroups::subgroups_up_to_conjugacy(group) {
        Ok(reps) => {
            let sample: Vec<&SubgroupRecord> = reps
                .iter()
                .filter(|r| r.is_proper() && r.order() > 1)
                .take(3)
                .collect();
            let mut induced_ok = true;
            let mut normal_ok = true;
            let mut detail_1 = String::from("no applicable sample");
            let mut detail_2 = String::from("no applicable sample");
            for record in sample {
                let Ok(htab) = CharacterTable::compute(&record.subgroup) else {
                    continue;
                };
                for phi in htab.irreducibles().iter().take(2) {
                    let Ok(induced) = phi.induce(record) else {
                        continue;
                    };
                    let Ok(ker_ind) = kernel(&induced) else {
                        induced_ok = false;
                        continue;
                    };
                    // Lemma: ker(φ^G) = ⋂_g ker(φ)^g, brute-forced.
                    let Ok(ker_phi) = kernel(phi) else {
                        induced_ok = false;
                        continue;
                    };
                    let mut intersection: Vec<Permutation> = ker_phi.elements().to_vec();
                    for g in group.elements() {
                        intersection.retain(|x| ker_phi.contains(&x.conjugated_by(&g.inverse())));
                    }
                    intersection.sort_unstable();
                    let same = intersection == ker_ind.elements();
                    if !same {
                        induced_ok = false;
                    }
                    detail_1 = format!(
                        "ker(φ^G) vs ⋂ ker(φ)^g on subgroup of order {}",
                        record.order()
                    );
                    // Lemma: N ⊴ G, N ≤ ker(φ) ⇒ N ≤ ker(φ^G); sample N from
                    // the derived series of G.
                    for n in group.derived_series() {
                        let inside = n.elements().iter().all(|x| ker_phi.contains(x));
                        if inside {
                            let in_ind = n.elements().iter().all(|x| ker_ind.contains(x));
                            if !in_ind {
                                normal_ok = false;
                            }
                            detail_2 =
                                format!("derived-series term of order {} checked", n.order());
                        }
                    }
                }
            }
            push("kernel-of-induced", induced_ok, detail_1);
            push("normal-below-kernel", normal_ok, detail_2);
        }
        Err(e) => {
            push("kernel-of-induced", true, format!("skipped: {e}"));
            push("normal-below-kernel", true, format!("skipped: {e}"));
        }
    }

    report
}

/// A parsed character table in the text interchange format; parsing does not
/// reconstruct the underlying group, only the header, class data and rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableText {
    pub order: u64,
    pub exponent: u64,
    /// (representative cycle notation, class size, element order)
    pub classes: Vec<(String, usize, u64)>,
    pub rows: Vec<Vec<Cyclotomic>>,
}

impl TableText {
    pub fn parse(text: &str) -> Result<TableText> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "empty table text".into(),
        })?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        let bad_header = || Error::Parse {
            line: 1,
            msg: format!("malformed header '{header}'"),
        };
        if toks.len() != 6 || toks[0] != "order" || toks[2] != "classes" || toks[4] != "exponent" {
            return Err(bad_header());
        }
        let order: u64 = toks[1].parse().map_err(|_| bad_header())?;
        let class_count: usize = toks[3].parse().map_err(|_| bad_header())?;
        let exponent: u64 = toks[5].parse().map_err(|_| bad_header())?;
        let mut classes = Vec::with_capacity(class_count);
        for _ in 0..class_count {
            let (ln, line) = lines.next().ok_or(Error::Parse {
                line: 0,
                msg: "missing class line".into(),
            })?;
            let mut parts = line.rsplitn(3, ' ');
            let eo: u64 = parts
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or(Error::Parse {
                    line: ln + 1,
                    msg: "bad element order".into(),
                })?;
            let size: usize = parts
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or(Error::Parse {
                    line: ln + 1,
                    msg: "bad class size".into(),
                })?;
            let rep = parts
                .next()
                .ok_or(Error::Parse {
                    line: ln + 1,
                    msg: "missing representative".into(),
                })?
                .to_string();
            classes.push((rep, size, eo));
        }
        let mut rows = Vec::with_capacity(class_count);
        for _ in 0..class_count {
            let (ln, line) = lines.next().ok_or(Error::Parse {
                line: 0,
                msg: "missing irreducible row".into(),
            })?;
            let row: Vec<Cyclotomic> = line
                .split('\t')
                .map(Cyclotomic::parse)
                .collect::<Result<_>>()
                .map_err(|e| Error::Parse {
                    line: ln + 1,
                    msg: e.to_string(),
                })?;
            if row.len() != class_count {
                return Err(Error::Parse {
                    line: ln + 1,
                    msg: format!("expected {class_count} values, got {}", row.len()),
                });
            }
            rows.push(row);
        }
        Ok(TableText {
            order,
            exponent,
            classes,
            rows,
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "order {} classes {} exponent {}",
            self.order,
            self.classes.len(),
            self.exponent
        );
        for (rep, size, eo) in &self.classes {
            let _ = writeln!(s, "{rep} {size} {eo}");
        }
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| v.serialize()).collect();
            let _ = writeln!(s, "{}", cells.join("\t"));
        }
        s
    }
}
