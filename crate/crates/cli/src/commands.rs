use std::path::Path;

use minifold_core::atlas::{self, FppRecord};
use minifold_core::eulerform::{
    equivariant_count_check, orbifold_hh_dimension, GramMatrix, HilbertProfile, SerreOperator,
    EQUIVARIANT_ROWS,
};
use minifold_core::lefschetz::{self, Branch, Conclusion, FixedPointDatum};
use minifold_core::reptheory::{
    self, character_table, classify_h0, conjugacy_classes, decompose, inner_product, Character,
    H0Verdict, CLASS_LABELS,
};
use minifold_core::sonb::{self, FormSpace, Orbit, SearchOptions, Symmetry};
use minifold_core::{
    BigRational, Error, IntValuedPolynomial, Matrix, Result, RingElement, Zeta21,
};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::expr::{describe, parse_value};
use crate::report::Report;

pub fn profile(name: Option<&str>, poly: Option<&str>) -> Result<HilbertProfile> {
    match (name, poly) {
        (_, Some(lit)) => HilbertProfile::new(format!("poly[{lit}]"), lit.parse::<IntValuedPolynomial>()?),
        (Some(n), None) => HilbertProfile::by_name(n),
        (None, None) => Err(Error::Parse("give --profile or --poly".into())),
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn gram_for(profile: &HilbertProfile, twists: Option<&[i64]>, modulus: Option<u64>) -> Result<GramMatrix> {
    let twists = twists.map(<[i64]>::to_vec).unwrap_or_else(|| profile.standard_twists());
    let g = GramMatrix::from_twists(profile, &twists)?;
    match modulus {
        Some(p) => g.reduce_mod(p),
        None => Ok(g),
    }
}

/// Twists `c, c±1, …, c±n` of full length.
fn consecutive(g: &GramMatrix) -> bool {
    let t = g.twists();
    t.len() == g.profile().dimension() + 1
        && (t.windows(2).all(|w| w[1] - w[0] == 1) || t.windows(2).all(|w| w[0] - w[1] == 1))
}

fn ring_equals(e: &RingElement, v: &BigInt) -> bool {
    match e {
        RingElement::Rational(q) => *q == BigRational::from_integer(v.clone()),
        RingElement::Residue { value, p } => {
            let p = BigInt::from(*p);
            ((v % &p) + &p) % &p == BigInt::from(*value)
        }
    }
}

fn echo_gram(r: &mut Report, g: &GramMatrix) {
    r.input("profile", g.profile().name())
        .input("twists", join(g.twists()))
        .input("modulus", g.modulus());
}

pub fn gram(profile: &HilbertProfile, twists: Option<&[i64]>, modulus: Option<u64>) -> Result<Report> {
    let g = gram_for(profile, twists, modulus)?;
    let mut r = Report::new("gram");
    echo_gram(&mut r, &g);
    r.result("polynomial", profile.polynomial())
        .result("dimension", profile.dimension())
        .result("degree", profile.degree())
        .result("matrix", g.base().to_grid_string());
    let det = g.base().determinant()?;
    r.result("determinant", &det);
    r.check("entry_law", g.entry_law_holds());
    if consecutive(&g) {
        let expected = profile.expected_determinant();
        r.result("expected_determinant", &expected);
        r.check("determinant_formula", ring_equals(&det, &expected));
    }
    if g.modulus() != 0 {
        r.result("prime_divides_degree", g.prime_divides_degree());
    }
    r.result("numerically_exceptional", g.numerically_exceptional());
    r.provenance("Gram determinant identity for Hilbert polynomials");
    Ok(r)
}

/// Random integer-valued polynomial of exact degree `d` via the binomial basis.
fn random_polynomial(rng: &mut ChaCha8Rng, d: usize) -> IntValuedPolynomial {
    let mut cs: Vec<BigInt> = (0..=d).map(|_| BigInt::from(rng.gen_range(-5..=5))).collect();
    if cs[d].is_zero() {
        cs[d] = BigInt::from(if rng.gen_bool(0.5) { 1 } else { -1 });
    }
    IntValuedPolynomial::from_binomial_coefficients(&cs)
}

fn standard_det(p: &IntValuedPolynomial, n: usize) -> Result<BigInt> {
    let m = Matrix::from_fn(n + 1, n + 1, |i, j| p.eval(j as i64 - i as i64));
    m.determinant_bareiss()
}

pub fn detcheck(profile: Option<&HilbertProfile>, random: usize, degenerate: usize, seed: u64) -> Result<Report> {
    let mut r = Report::new("detcheck");
    r.input("seed", seed).input("random", random).input("degenerate", degenerate);
    if let Some(p) = profile {
        r.input("profile", p.name());
        let det = standard_det(p.polynomial(), p.dimension())?;
        r.result("determinant", &det).result("expected", p.expected_determinant());
        r.check("profile_determinant", det == p.expected_determinant());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ok = 0;
    for _ in 0..random {
        let d = rng.gen_range(1..=6);
        let p = random_polynomial(&mut rng, d);
        let expected = num_traits::pow(p.normalized_leading(), d + 1);
        if standard_det(&p, d)? == expected {
            ok += 1;
        }
    }
    let mut zero = 0;
    for _ in 0..degenerate {
        let n = rng.gen_range(1..=6);
        let d = rng.gen_range(0..n);
        let p = random_polynomial(&mut rng, d);
        if standard_det(&p, n)?.is_zero() {
            zero += 1;
        }
    }
    r.result("random_passed", format!("{ok}/{random}"));
    r.result("degenerate_zero", format!("{zero}/{degenerate}"));
    r.check("determinant_identity", ok == random);
    r.check("lower_degree_vanishes", zero == degenerate);
    r.provenance("Gram determinant identity for Hilbert polynomials");
    Ok(r)
}

fn vector_string(v: &[i64]) -> String {
    format!("({})", join(v))
}

fn orbit_summary(orbits: &[Orbit]) -> String {
    orbits
        .iter()
        .map(|o| format!("{}x{}", o.len(), vector_string(o.representative())))
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Expect {
    Found,
    Exhausted,
}

pub fn sonb(
    profile: &HilbertProfile,
    twists: Option<&[i64]>,
    modulus: u64,
    serre: bool,
    parallel: bool,
    expect: Option<Expect>,
) -> Result<Report> {
    let g = gram_for(profile, twists, Some(modulus))?;
    let mut r = Report::new("sonb");
    echo_gram(&mut r, &g);
    r.input("symmetry", if serre { "serre" } else { "off" })
        .input("parallel", parallel);
    let space = FormSpace::new(g.base())?;
    let cands = sonb::enumerate_candidates(&space)?;
    r.result("candidates", cands.len());
    let mut options = SearchOptions::default();
    if serre {
        let s = SerreOperator::from_gram(&g)?;
        let orbits = sonb::serre_orbits(&space, &cands, &s)?;
        r.result("orbits", orbit_summary(&orbits));
        options.symmetry = Symmetry::Serre(s);
    }
    let res = if parallel {
        sonb::search_parallel(&space, &options)?
    } else {
        sonb::search(&space, &options)?
    };
    r.result("nodes_explored", res.stats.nodes_explored)
        .result("pruned_by_pool", res.stats.pruned_by_pool)
        .result("pruned_by_dependence", res.stats.pruned_by_dependence)
        .result("pruned_by_span", res.stats.pruned_by_span);
    match res.found() {
        Some(basis) => {
            let shown: Vec<String> = basis.iter().map(|v| vector_string(v)).collect();
            r.result("outcome", "found").result("basis", shown.join(" "));
            r.check("basis_verified", sonb::verify_semi_orthonormal(&space, basis).is_ok());
        }
        None => {
            r.result("outcome", "exhausted");
        }
    }
    if let Some(e) = expect {
        let got = if res.found().is_some() { Expect::Found } else { Expect::Exhausted };
        r.check("expected_outcome", got == e);
    }
    r.provenance("exhaustive semi-orthonormal basis search");
    Ok(r)
}

pub fn serre(profile: &HilbertProfile, twists: Option<&[i64]>, modulus: Option<u64>, bound: u64) -> Result<Report> {
    let g = gram_for(profile, twists, modulus)?;
    let mut r = Report::new("serre");
    echo_gram(&mut r, &g);
    r.result("gram", g.base().to_grid_string());
    let s = SerreOperator::from_gram(&g)?;
    r.result("serre", s.matrix().to_grid_string());
    let order = s.order(Some(bound))?;
    r.result("order", order.map_or(format!("> {bound}"), |o| o.to_string()));
    r.check("serre_relations", s.satisfies_relations()?);
    r.provenance("Serre operator S = A^-1 A^t preserves the form");
    Ok(r)
}

fn trace_name(t: &minifold_core::QZeta7) -> String {
    match t.to_integral().map(|z| z.embed::<21>()) {
        Some(Ok(z)) => describe(&z),
        _ => t.to_string(),
    }
}

fn embed_trace(t: &minifold_core::QZeta7) -> Result<Zeta21> {
    t.to_integral().ok_or(Error::NotIntegral)?.embed::<21>()
}

pub fn lefschetz_cmd(branch: Branch, ks: &[i64]) -> Result<Report> {
    let mut r = Report::new("lefschetz");
    lefschetz_body(&mut r, branch, ks);
    r.provenance("holomorphic Lefschetz formula at three isolated fixed points");
    Ok(r)
}

fn lefschetz_body(r: &mut Report, branch: Branch, ks: &[i64]) {
    r.input("branch", format!("{branch:?}").to_lowercase()).input("k", join(ks));
    let sols = lefschetz::solve_hlfp0();
    let shown: Vec<String> = sols.iter().map(|(a, b)| format!("{{{a},{b}}}")).collect();
    r.result("hlfp0_solutions", shown.join(" "));
    let d = FixedPointDatum::branch(branch);
    r.result("datum", d)
        .result("canonical_exponents", join(&lefschetz::canonical_trace(&d)))
        .result("twist_exponents", join(&lefschetz::twist_traces(&d).exponents));
    for &k in ks {
        r.result(&format!("trace.k{k}"), trace_name(&lefschetz::h0_trace(&d, k)));
    }
    r.check("untwisted_sum_is_one", lefschetz::h0_trace(&d, 0).is_one());
    r.check("solution_count", sols.len() == 6);
}

fn table_rows(table: &[Character]) -> String {
    let mut out = format!("{:<6} {}", "", CLASS_LABELS.join(" "));
    for c in table {
        let vals: Vec<String> = c.values.iter().map(describe).collect();
        out.push_str(&format!("\n{:<6} {}", c.name, vals.join(" ")));
    }
    out
}

pub fn chartable() -> Result<Report> {
    let mut r = Report::new("chartable");
    let classes = conjugacy_classes();
    let sizes: Vec<usize> = classes.iter().map(|c| c.size()).collect();
    r.result("class_sizes", join(&sizes));
    r.result("irrep_dimensions", join(&reptheory::irrep_dimensions()));
    let table = character_table();
    r.result("table", table_rows(&table));
    r.check("class_sizes", sizes == [1, 3, 3, 7, 7]);
    r.check("matches_printed_table", table == reptheory::printed_table());
    let mut orthonormal = true;
    for (i, a) in table.iter().enumerate() {
        for (j, b) in table.iter().enumerate() {
            let expected = if i == j { BigRational::one() } else { BigRational::zero() };
            orthonormal &= inner_product(a, b)? == expected;
        }
    }
    r.check("row_orthogonality", orthonormal);
    r.check("no_faithful_2dim", !reptheory::faithful_two_dimensional_exists());
    r.provenance("character table of the order-21 group");
    Ok(r)
}

pub fn decompose_cmd(values: Option<&str>, classify: Option<&str>, dim: u32) -> Result<Report> {
    let mut r = Report::new("decompose");
    if let Some(v) = values {
        r.input("character", v);
        let parsed: Vec<Zeta21> = v.split(',').map(parse_value).collect::<Result<_>>()?;
        let arr: [Zeta21; 5] = parsed
            .try_into()
            .map_err(|_| Error::Parse("a character has five values".into()))?;
        let chi = Character::new("input", arr);
        r.result("norm", inner_product(&chi, &chi)?);
        let ok = match decompose(&chi) {
            Ok(parts) => {
                for (name, m) in parts {
                    r.result(&format!("multiplicity.{name}"), m);
                }
                true
            }
            Err(e) => {
                r.result("error", e);
                false
            }
        };
        r.check("is_character", ok);
    }
    if let Some(t) = classify {
        r.input("dim", dim).input("trace_at_sigma", t);
        let verdict = classify_h0(dim, &parse_value(t)?)?;
        r.result("classification", verdict);
        r.check("consistent", verdict != H0Verdict::Inconsistent);
    }
    r.provenance("orthogonality relations for the order-21 group");
    Ok(r)
}

pub struct AtlasQuery<'a> {
    pub aut: Option<&'a str>,
    pub three_torsion_free: bool,
    pub k_phantom: bool,
    pub count: bool,
}

fn record_line(rec: &FppRecord) -> String {
    format!("{} aut={} h1=[{}]", rec.label(), rec.aut, join(&rec.h1))
}

pub fn atlas_cmd(data: Option<&Path>, q: &AtlasQuery) -> Result<Report> {
    let records = atlas::load(data)?;
    let mut r = Report::new("atlas");
    r.input("data", data.map_or("shipped".to_string(), |p| p.display().to_string()));
    if q.count {
        let all = atlas::query_all(&records);
        r.result("records", all.records.len()).result("surfaces", all.surface_count());
    }
    if q.aut.is_some() || q.three_torsion_free {
        let mut sel = match q.aut {
            Some(g) => {
                r.input("aut", g);
                atlas::query_aut(&records, g)?
            }
            None => atlas::query_all(&records),
        };
        if q.three_torsion_free {
            r.input("three_torsion_free", true);
            let before = sel.records.len();
            sel.records.retain(|rec| atlas::three_torsion_free(rec));
            r.result("three_torsion_free", format!("{}/{before}", sel.records.len()));
        }
        r.result("matched", sel.records.len()).result("surfaces", sel.surface_count());
        let lines: Vec<String> = sel.records.iter().map(|rec| record_line(rec)).collect();
        if !lines.is_empty() {
            r.result("matches", lines.join("\n"));
        }
    }
    if q.k_phantom {
        let pairs = atlas::k_phantom_pairs(&records);
        r.result("k_phantom_pairs", pairs.len());
        let lines: Vec<String> = pairs.iter().map(|(rec, g)| format!("{} / {g}", rec.label())).collect();
        if !lines.is_empty() {
            r.result("k_phantom", lines.join("\n"));
        }
    }
    let round = atlas::serialize_to_string(&records)?;
    r.check("round_trip", atlas::ingest(round.as_bytes())? == records);
    r.provenance("classification table of fake projective planes");
    Ok(r)
}

pub fn atlas_dump(data: Option<&Path>) -> Result<String> {
    atlas::serialize_to_string(&atlas::load(data)?)
}

const WILSON_VALUES: [i64; 5] = [1, 51, 376, 1426, 3876];
const WILSON_MOD2: [[i64; 5]; 5] = [
    [1, 1, 0, 0, 0],
    [1, 1, 1, 0, 0],
    [1, 1, 1, 1, 0],
    [0, 1, 1, 1, 1],
    [0, 0, 1, 1, 1],
];
const WILSON_SERRE: [[i64; 5]; 5] = [
    [1, 1, 0, 0, 0],
    [0, 0, 1, 0, 0],
    [0, 0, 0, 1, 0],
    [1, 0, 0, 0, 1],
    [1, 0, 0, 0, 0],
];
const WILSON_PAIRINGS: [[i64; 12]; 12] = [
    [1, 1, 1, 0, 0, 0, 0, 1, 1, 0, 0, 1],
    [1, 1, 1, 1, 0, 0, 0, 0, 1, 1, 0, 0],
    [0, 1, 1, 1, 1, 0, 0, 0, 0, 1, 1, 0],
    [0, 0, 1, 1, 1, 1, 0, 0, 0, 0, 1, 1],
    [0, 0, 0, 1, 1, 1, 1, 0, 1, 0, 0, 1],
    [0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 0, 0],
    [1, 0, 0, 0, 0, 1, 1, 1, 0, 1, 1, 0],
    [1, 1, 0, 0, 0, 0, 1, 1, 0, 0, 1, 1],
    [0, 1, 1, 0, 0, 1, 1, 0, 1, 1, 1, 1],
    [0, 0, 1, 1, 0, 0, 1, 1, 1, 1, 1, 1],
    [1, 0, 0, 1, 1, 0, 0, 1, 1, 1, 1, 1],
    [1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 1, 1],
];

fn rows_of<const N: usize>(m: &[[i64; N]]) -> Matrix<i64> {
    Matrix::from_rows(m.iter().map(|r| r.to_vec()).collect())
}

pub fn reproduce_wilson() -> Result<Report> {
    let mut r = Report::new("reproduce wilson");
    let profile = HilbertProfile::wilson();
    let values: Vec<BigInt> = (0..5).map(|k| profile.eval(k)).collect();
    let mod2: Vec<BigInt> = values.iter().map(|v| v % 2).collect();
    r.result("P(0..4)", join(&values)).result("P(0..4) mod 2", join(&mod2));
    r.check(
        "hilbert_values",
        values.iter().zip(WILSON_VALUES).all(|(v, w)| *v == BigInt::from(w)),
    );
    let period8 = (-24..24).all(|k| (profile.eval(k) - profile.eval(k + 8)) % 2 == BigInt::zero());
    r.check("parity_period_8", period8);

    let g = GramMatrix::standard(&profile).reduce_mod(2)?;
    r.result("gram_mod2", g.base().to_grid_string());
    r.check("gram_matches", g.base().to_i64_matrix()? == rows_of(&WILSON_MOD2));
    let s = SerreOperator::from_gram(&g)?;
    r.result("serre", s.matrix().to_grid_string());
    r.check("serre_matches", s.matrix().to_i64_matrix()? == rows_of(&WILSON_SERRE));
    r.check("serre_preserves_form", s.satisfies_relations()?);
    let order = s.order(None)?;
    r.result("serre_order", order.map_or("none".into(), |o| o.to_string()));
    r.check("serre_order_8", order == Some(8));

    let space = FormSpace::new(g.base())?;
    let cands = sonb::enumerate_candidates(&space)?;
    r.result("candidates", cands.len());
    r.check("candidate_count_12", cands.len() == 12);
    let orbits = sonb::serre_orbits(&space, &cands, &s)?;
    r.result("orbits", orbit_summary(&orbits));
    let sizes: Vec<usize> = orbits.iter().map(Orbit::len).collect();
    let reps_ok = orbits.len() == 2
        && orbits[0].representative() == &vec![1, 0, 0, 0, 0]
        && orbits[1].representative() == &vec![1, 0, 1, 0, 0];
    r.check("orbits_8_4", sizes == [8, 4] && reps_ok);
    let c: Vec<Vec<i64>> = orbits.iter().flat_map(|o| o.vectors.clone()).collect();
    let pairing = sonb::pairing_matrix(&space, &c);
    r.result("pairing_matrix", pairing.to_grid_string());
    r.check("pairing_matrix_matches", pairing == rows_of(&WILSON_PAIRINGS));

    let sym = sonb::search(&space, &SearchOptions::with_serre(s))?;
    let plain = sonb::search(&space, &SearchOptions::default())?;
    let dual = sonb::search(&space.transposed(), &SearchOptions::default())?;
    r.result("nodes_with_symmetry", sym.stats.nodes_explored)
        .result("nodes_without_symmetry", plain.stats.nodes_explored)
        .result("outcome", if sym.is_exhausted() { "exhausted" } else { "found" });
    r.check("no_semi_orthonormal_basis", sym.is_exhausted() && plain.is_exhausted() && dual.is_exhausted());
    r.provenance("Wilson fourfold: Hilbert values, reduced Gram matrix, Serre operator");
    r.provenance("Wilson fourfold: candidate vectors, orbits, pairing table, exhaustive search");
    Ok(r)
}

pub fn reproduce_keum(branch: Branch) -> Result<Report> {
    let mut r = Report::new("reproduce keum");
    lefschetz_body(&mut r, branch, &[0, 1, 2, 3, 4]);
    let sols = lefschetz::solve_hlfp0();
    r.check("solution_set", sols == [(1, 3), (1, 5), (2, 3), (2, 6), (4, 5), (4, 6)]);
    let d = FixedPointDatum::branch(branch);
    let (canon, twist) = match branch {
        Branch::Standard => ([4, 1, 2], [6, 5, 3]),
        Branch::Conjugate => ([3, 6, 5], [1, 2, 4]),
    };
    r.check("canonical_exponents", lefschetz::canonical_trace(&d) == canon);
    r.check("twist_exponents", lefschetz::twist_traces(&d).exponents == twist);
    let t4 = embed_trace(&lefschetz::h0_trace(&d, 4))?;
    let expected = match branch {
        Branch::Standard => reptheory::b().conj(),
        Branch::Conjugate => reptheory::b(),
    };
    r.check("trace_k4", t4 == expected);
    let verdict = classify_h0(3, &t4)?;
    r.result("h0_O4", verdict);
    let irreducible = matches!(verdict, H0Verdict::IrreducibleV3 | H0Verdict::IrreducibleV3Bar);
    r.check("h0_O4_irreducible", irreducible);
    let plain = lefschetz::h0_o2_vanishing(3, false);
    r.result("delta_bound", plain.delta_upper_bound);
    r.check("delta_at_most_2", plain.delta_upper_bound == 2);
    let full = lefschetz::h0_o2_vanishing(3, irreducible);
    r.result("deduction", full.steps.join("\n"));
    r.check("h0_O2_vanishes", full.conclusion == Conclusion::Vanishes);
    r.check("no_faithful_2dim", !reptheory::faithful_two_dimensional_exists());
    let plane = HilbertProfile::fake_projective(2)?;
    let g = GramMatrix::from_twists(&plane, &[0, -1, -2])?;
    r.check("collection_numerically_exceptional", g.numerically_exceptional());
    r.provenance("order-21 automorphism: Lefschetz traces and H0(O(4)) as a representation");
    r.provenance("vanishing of H0(O(2)) via the linear-systems bound");
    Ok(r)
}

pub fn reproduce_equivariant() -> Result<Report> {
    let mut r = Report::new("reproduce equivariant");
    let class_count = conjugacy_classes().len() as u32;
    for row in EQUIVARIANT_ROWS.iter() {
        let key = row.group;
        r.result(
            &format!("row.{key}"),
            format!(
                "irreps={} chi(Z)={} r_G={} kappa={} singularities={}",
                row.irrep_count,
                row.euler_z,
                row.r_g,
                row.kodaira,
                row.singularity_label()
            ),
        );
        r.check(&format!("identity.{key}"), equivariant_count_check(row));
        r.check(
            &format!("orbifold.{key}"),
            orbifold_hh_dimension(row.conjugacy_class_count) == 3 * row.irrep_count,
        );
        r.check(&format!("r_G.{key}"), row.r_g_from_singularities() == Some(row.r_g));
        if key == "G21" {
            r.check("G21_class_count", row.conjugacy_class_count == class_count);
        }
    }
    r.provenance("3 #IrrRep(G) = chi(Z_G) + r_G for subgroups of the order-21 group");
    Ok(r)
}
