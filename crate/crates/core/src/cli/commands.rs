//! One handler per subcommand. Each merges its arguments with the config,
//! runs the computation and fills a [`Report`].

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Map, Value};

use super::args::{need, only, ConfigError, DrinfeldArgs, DualArgs, IwasawaArgs, ListArg, TowerArgs, ZetaArgs};
use super::report::{big, num, ubig, Report};
use super::{Command, DrinfeldCommand, DualCommand, Failure, IwasawaCommand, Success, TowerCommand, ZetaCommand};
use crate::algebra::parse::parse_int_poly;
use crate::algebra::{FiniteField, PolyRing};
use crate::drinfeld::DrinfeldModule;
use crate::duality::{
    dual, finiteness_check, lambda_bound, torsion_vs_quotient, CofinModule, Dual, FiniteModule, H0Term, Module,
    Provenance,
};
use crate::error::Error;
use crate::iwasawa::{fit_invariants, growth, is_distinguished, mu_lambda_of_poly, ElementaryModule, InvariantFit};
use crate::skew::format_skew;
use crate::tower::{
    delta_sequence, splitting_by_factorization, splitting_in_level, totally_inert_level, Place, ResidueField,
};
use crate::zeta::{class_tower, l_from_point_counts, s_class_upper_bound, LPolynomial, PlaneCurve};

use Provenance::{Bound, Computed, Input};

const RANK: &str = "rank of a Drinfeld module (τ-degree of φ_T)";
const BAD: &str = "bad reduction: places dividing the leading coefficient of φ_T";
const HOM: &str = "φ is an F_q-algebra homomorphism";
const REDUCTION: &str = "reduction of φ at a place and the rank of the reduced module";
const TORSION: &str = "π-torsion of the reduced module as an F_π-vector space of dimension r";
const H0: &str = "Frobenius-fixed part of the reduced π-torsion (local H^0 term)";
const SELMER_SET: &str = "the place set S: bad places, π and ∞";
const SPLIT: &str = "a place of degree d splits into gcd(d, p^n) places of degree d/gcd(d, p^n)";
const DELTA: &str = "degree δ_n of the constant field of the S-class field, non-increasing in n";
const INERT: &str = "level from which every place of S is totally inert";
const LPOLY: &str = "L-polynomial of the zeta function of the curve";
const COUNT: &str = "rational points over F_{q^k}";
const CLASS: &str = "h_n = #Cl^0(F_n) = |Res(L(u), u^{p^n} - 1)|; e_n its p-order";
const CLASS_BOUND: &str = "e_n ≤ e_n': S-class group exponents bounded by class group exponents";
const FIT: &str = "e_n = λn + μp^n + ν for n ≥ n0";
const MU_LAMBDA: &str = "μ and λ invariants of a power series in Z_p[[T]]";
const GROWTH: &str = "p-order of X/ω_n X for an elementary Λ-module";
const DUAL: &str = "Pontryagin dual of (F_𝔭/A_𝔭)^λ ⊕ F is A_𝔭^λ ⊕ F";
const TORSION_QUOTIENT: &str = "dual of M[𝔭^n] is isomorphic to N/𝔭^n N";
const FINITENESS: &str = "M[𝔭] finite iff M^∨ finitely generated torsion with μ = 0, and λ ≤ dim M[𝔭]";
const LAMBDA_BOUND: &str = "λ ≤ dim Sel_0 + Σ_{w ∈ S} dim H^0(w)";

/// Size cap `s·p^n` for the factorization cross-check in `tower split`.
const MAX_SPLIT_CHECK_DEGREE: u64 = 64;

/// Random homomorphism checks run by `drinfeld inspect`.
const HOMOMORPHISM_TRIALS: usize = 4;

type Outcome = Result<Success, Failure>;

pub(super) fn dispatch(command: &Command, config: &Map<String, Value>, seed: Option<u64>) -> Outcome {
    match command {
        Command::Drinfeld(c) => match c {
            DrinfeldCommand::Inspect(a) => run(a, config, &["q", "phi_T"], |a, i| drinfeld_inspect(a, i, seed)),
            DrinfeldCommand::Reduce(a) => run(a, config, &["q", "phi_T", "place"], drinfeld_reduce),
            DrinfeldCommand::Torsion(a) => run(a, config, &["q", "phi_T", "pi", "place"], drinfeld_torsion),
            DrinfeldCommand::H0(a) => run(a, config, &["q", "phi_T", "pi", "place"], drinfeld_h0),
            DrinfeldCommand::SelmerSet(a) => run(a, config, &["q", "phi_T", "pi"], drinfeld_selmer_set),
        },
        Command::Tower(c) => match c {
            TowerCommand::Split(a) => run(a, config, &["q", "place", "levels"], tower_split),
            TowerCommand::Delta(a) => run(a, config, &["q", "S", "levels"], tower_delta),
            TowerCommand::InertLevel(a) => run(a, config, &["q", "S"], tower_inert_level),
        },
        Command::Zeta(c) => match c {
            ZetaCommand::Lpoly(a) => run(
                a,
                config,
                &["q", "counts", "affine", "inf_correction", "genus"],
                zeta_lpoly,
            ),
            ZetaCommand::Count(a) => run(a, config, &["q", "affine", "inf_correction", "k"], zeta_count),
            ZetaCommand::Tower(a) => run(a, config, &["q", "lpoly", "p", "levels"], zeta_tower),
            ZetaCommand::Bound(a) => run(a, config, &["q", "lpoly", "p", "levels"], zeta_bound),
        },
        Command::Iwasawa(c) => match c {
            IwasawaCommand::MuLambda(a) => run(a, config, &["p", "f"], iwasawa_mu_lambda),
            IwasawaCommand::Growth(a) => run(a, config, &["p", "mu_parts", "lambda_parts", "levels"], iwasawa_growth),
            IwasawaCommand::Fit(a) => run(a, config, &["p", "e"], iwasawa_fit),
        },
        Command::Dual(c) => match c {
            DualCommand::Dual(a) => run(a, config, &["residue_size", "corank", "factors"], dual_dual),
            DualCommand::TorsionQuotient(a) => run(
                a,
                config,
                &["residue_size", "corank", "factors", "n"],
                dual_torsion_quotient,
            ),
            DualCommand::Finiteness(a) => run(a, config, &["residue_size", "corank", "factors"], dual_finiteness),
            DualCommand::LambdaBound(a) => run(
                a,
                config,
                &["sel_dim", "h0", "q", "phi_T", "pi", "places"],
                dual_lambda_bound,
            ),
        },
    }
}

/// Merge, check the field set, and run `body` with the merged arguments and
/// their JSON echo.
fn run<A>(cli: &A, config: &Map<String, Value>, allowed: &[&str], body: impl FnOnce(&A, &Value) -> Outcome) -> Outcome
where
    A: Serialize + DeserializeOwned,
{
    let merged: A = super::args::merge(cli, config)?;
    only(&merged, allowed)?;
    let input = serde_json::to_value(&merged).expect("arguments serialize");
    body(&merged, &input)
}

fn success(command: &'static str, anchor: &'static str, input: &Value, report: Report) -> Outcome {
    Ok(Success {
        command,
        anchor,
        input: input.clone(),
        report,
    })
}

/// Attach the command input to a library error.
fn lib<T>(r: crate::Result<T>, input: &Value) -> Result<T, Failure> {
    r.map_err(|error| Failure::Module {
        error,
        input: input.clone(),
    })
}

fn row(entries: Vec<(&str, Value)>) -> Map<String, Value> {
    entries.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// `φ_T` from a coefficient list or a single skew expression.
fn phi_from(q: u64, list: &ListArg) -> crate::Result<DrinfeldModule> {
    let items = list.items();
    match items.as_slice() {
        [one] if one.contains('t') => DrinfeldModule::parse(q, one),
        _ => DrinfeldModule::from_strings(q, &items),
    }
}

fn drinfeld_module(q: &Option<u64>, phi_t: &Option<ListArg>, input: &Value) -> Result<DrinfeldModule, Failure> {
    let q = need(q, "q")?;
    let phi_t = need(phi_t, "phi_T")?;
    lib(phi_from(q, &phi_t), input)
}

fn place(field: &FiniteField, text: &Option<String>, name: &str, input: &Value) -> Result<Place, Failure> {
    let text = need(text, name)?;
    lib(Place::parse(&text, field), input)
}

fn place_list(field: &FiniteField, list: &ListArg, input: &Value) -> Result<Vec<Place>, Failure> {
    list.items()
        .iter()
        .map(|s| lib(Place::parse(s, field), input))
        .collect()
}

/// `Σ c_i X^i` with each `c_i ∈ F_π` printed by its representative mod π.
fn format_over_residue(coeffs: &[crate::algebra::FieldElement], residue: &ResidueField) -> String {
    let mut terms = Vec::new();
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let lifted = residue.lift(c).to_string();
        let coeff = if lifted.contains('+') {
            format!("({lifted})")
        } else {
            lifted
        };
        terms.push(match (i, coeff.as_str()) {
            (0, _) => coeff.clone(),
            (_, "1") => monomial("X", i),
            _ => format!("{coeff}*{}", monomial("X", i)),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn monomial(var: &str, i: usize) -> String {
    if i == 1 {
        var.to_string()
    } else {
        format!("{var}^{i}")
    }
}

fn places_json(places: impl IntoIterator<Item = Place>) -> Value {
    Value::Array(places.into_iter().map(|p| json!(p.to_string())).collect())
}

fn drinfeld_inspect(a: &DrinfeldArgs, input: &Value, seed: Option<u64>) -> Outcome {
    let phi = drinfeld_module(&a.q, &a.phi_t, input)?;
    let bad = lib(phi.bad_reduction_set(), input)?;
    let ring = PolyRing::new(phi.field().clone());
    let skew = phi.ring();
    let mut rng = ChaCha8Rng::seed_from_u64(seed.unwrap_or(0));
    for _ in 0..HOMOMORPHISM_TRIALS {
        let x = ring.random(&mut rng, 4);
        let y = ring.random(&mut rng, 4);
        let (px, py) = (lib(phi.phi_of(&x), input)?, lib(phi.phi_of(&y), input)?);
        let product = lib(skew.mul(&px, &py), input)?;
        let sum = lib(skew.add(&px, &py), input)?;
        if lib(phi.phi_of(&ring.mul(&x, &y)), input)? != product || lib(phi.phi_of(&ring.add(&x, &y)), input)? != sum {
            return Err(Failure::Module {
                error: Error::Consistency(format!("φ is not multiplicative at a = {x}, b = {y}")),
                input: input.clone(),
            });
        }
    }
    let mut r = Report::new();
    r.set("q", num(phi.q(), RANK, Input))
        .set("phi_T", json!(format_skew(phi.phi_t())))
        .set("rank", num(phi.rank() as u64, RANK, Computed))
        .set("bad_place_count", num(bad.len() as u64, BAD, Computed))
        .set("bad_places", places_json(bad))
        .set("homomorphism_checks", num(HOMOMORPHISM_TRIALS as u64, HOM, Computed));
    success("drinfeld inspect", RANK, input, r)
}

fn drinfeld_reduce(a: &DrinfeldArgs, input: &Value) -> Outcome {
    let phi = drinfeld_module(&a.q, &a.phi_t, input)?;
    let v = place(phi.field(), &a.place, "place", input)?;
    let red = lib(phi.reduce(&v), input)?;
    let lifted = phi
        .ring()
        .element(red.reduced.coeffs().iter().map(|c| red.residue.lift(c)).collect());
    let mut r = Report::new();
    r.set("place", json!(v.to_string()))
        .set("kind", json!(red.report.kind.as_str()))
        .set("rank", num(phi.rank() as u64, RANK, Computed))
        .set("reduced_rank", num(red.report.reduced_rank as u64, REDUCTION, Computed))
        .set("reduced_phi_T", json!(format!("{} mod {v}", format_skew(&lifted))));
    success("drinfeld reduce", REDUCTION, input, r)
}

fn drinfeld_torsion(a: &DrinfeldArgs, input: &Value) -> Outcome {
    let phi = drinfeld_module(&a.q, &a.phi_t, input)?;
    let v = place(phi.field(), &a.place, "place", input)?;
    let pi = place(phi.field(), &a.pi, "pi", input)?;
    let ts = lib(phi.torsion_space(&v, &pi), input)?;
    let mut r = Report::new();
    r.set("place", json!(v.to_string()))
        .set("pi", json!(pi.to_string()))
        .set("rank", num(phi.rank() as u64, RANK, Computed))
        .set("dimension", num(ts.dimension() as u64, TORSION, Computed))
        .set("cardinality", num(ubig(&ts.cardinality()), TORSION, Computed))
        .set("splitting_degree", num(ts.splitting_degree() as u64, TORSION, Computed))
        .set("ambient_order", num(ubig(&ts.ambient().order()), TORSION, Computed));
    for (i, b) in ts.basis().iter().enumerate() {
        r.row(row(vec![
            ("index", num(i as u64, TORSION, Computed)),
            ("basis_element", json!(b.to_string())),
        ]));
    }
    success("drinfeld torsion", TORSION, input, r)
}

fn drinfeld_h0(a: &DrinfeldArgs, input: &Value) -> Outcome {
    let phi = drinfeld_module(&a.q, &a.phi_t, input)?;
    let v = place(phi.field(), &a.place, "place", input)?;
    let pi = place(phi.field(), &a.pi, "pi", input)?;
    let ts = lib(phi.torsion_space(&v, &pi), input)?;
    let data = lib(ts.frobenius_data(), input)?;
    let scalar = ts.scalar_field();
    let mut r = Report::new();
    r.set("place", json!(v.to_string()))
        .set("pi", json!(pi.to_string()))
        .set("rank", num(phi.rank() as u64, RANK, Computed))
        .set("h0_dim", num(data.h0_dim as u64, H0, Computed))
        .set("char_poly", json!(format_over_residue(data.char_poly.coeffs(), scalar)));
    for i in 0..data.matrix.rows() {
        let entries: Vec<Value> = (0..data.matrix.cols())
            .map(|j| json!(scalar.lift(data.matrix.get(i, j)).to_string()))
            .collect();
        r.row(row(vec![
            ("row", num(i as u64, H0, Computed)),
            ("frobenius", Value::Array(entries)),
        ]));
    }
    success("drinfeld h0", H0, input, r)
}

fn drinfeld_selmer_set(a: &DrinfeldArgs, input: &Value) -> Outcome {
    let phi = drinfeld_module(&a.q, &a.phi_t, input)?;
    let pi = place(phi.field(), &a.pi, "pi", input)?;
    let s = lib(phi.selmer_place_set(&pi), input)?;
    let mut r = Report::new();
    r.set("size", num(s.len() as u64, SELMER_SET, Computed))
        .set("places", places_json(s));
    success("drinfeld selmer-set", SELMER_SET, input, r)
}

fn base_field(q: &Option<u64>, input: &Value) -> Result<FiniteField, Failure> {
    let q = need(q, "q")?;
    lib(FiniteField::with_order(q), input)
}

fn tower_split(a: &TowerArgs, input: &Value) -> Outcome {
    let k = base_field(&a.q, input)?;
    let v = place(&k, &a.place, "place", input)?;
    let levels = need(&a.levels, "levels")?;
    let p = k.characteristic();
    let mut r = Report::new();
    r.set("place", json!(v.to_string()))
        .set("degree", num(v.degree() as u64, SPLIT, Computed));
    for n in 0..=levels {
        let by_formula = splitting_in_level(&v, p, n);
        let ext = p.checked_pow(n).and_then(|m| m.checked_mul(k.degree() as u64));
        let checked = match ext {
            Some(e) if e <= MAX_SPLIT_CHECK_DEGREE => {
                let by_factoring = lib(splitting_by_factorization(&v, &k, n), input)?;
                if by_factoring != by_formula {
                    return Err(Failure::Module {
                        error: Error::Consistency(format!(
                            "level {n}: degree formula gives {by_formula:?}, factorization {by_factoring:?}"
                        )),
                        input: input.clone(),
                    });
                }
                "factorization"
            }
            _ => "formula",
        };
        r.row(row(vec![
            ("n", num(n, SPLIT, Input)),
            ("count", num(by_formula.count, SPLIT, Computed)),
            ("place_degree", num(by_formula.degree, SPLIT, Computed)),
            ("checked_by", json!(checked)),
        ]));
    }
    success("tower split", SPLIT, input, r)
}

fn tower_delta(a: &TowerArgs, input: &Value) -> Outcome {
    let k = base_field(&a.q, input)?;
    let s = place_list(&k, &need(&a.s, "S")?, input)?;
    let levels = need(&a.levels, "levels")?;
    let seq = lib(delta_sequence(&s, k.characteristic(), levels), input)?;
    let inert = lib(totally_inert_level(&s, k.characteristic()), input)?;
    let mut r = Report::new();
    r.set("S", places_json(seq.places.clone()))
        .set("N", num(seq.stabilization_index as u64, DELTA, Computed))
        .set("stable_delta", num(seq.stable_value, DELTA, Computed))
        .set("inert_level", num(inert, INERT, Computed))
        .set("certified", json!(seq.certified));
    for (n, d) in seq.values.iter().enumerate() {
        r.row(row(vec![
            ("n", num(n as u64, DELTA, Input)),
            ("delta", num(*d, DELTA, Computed)),
        ]));
    }
    success("tower delta", DELTA, input, r)
}

fn tower_inert_level(a: &TowerArgs, input: &Value) -> Outcome {
    let k = base_field(&a.q, input)?;
    let s = place_list(&k, &need(&a.s, "S")?, input)?;
    let level = lib(totally_inert_level(&s, k.characteristic()), input)?;
    let mut r = Report::new();
    r.set("S", places_json(s))
        .set("inert_level", num(level, INERT, Computed));
    success("tower inert-level", INERT, input, r)
}

fn lpoly_json(l: &LPolynomial) -> Value {
    Value::Array(l.coeffs().iter().map(big).collect())
}

fn zeta_lpoly(a: &ZetaArgs, input: &Value) -> Outcome {
    let q = need(&a.q, "q")?;
    let l = match (&a.counts, &a.affine) {
        (Some(counts), None) => lib(l_from_point_counts(q, &counts.parse::<u64>("counts")?), input)?,
        (None, Some(affine)) => {
            let curve = lib(
                PlaneCurve::parse(q, affine, need(&a.inf_correction, "inf_correction")?),
                input,
            )?;
            lib(curve.l_polynomial(need(&a.genus, "genus")?), input)?
        }
        (Some(_), Some(_)) => {
            return Err(ConfigError::new(Some("affine"), "give either `counts` or `affine`, not both").into())
        }
        (None, None) => return Err(ConfigError::missing("counts").into()),
    };
    let mut r = Report::new();
    r.set("q", num(q, LPOLY, Input))
        .set("genus", num(l.genus() as u64, LPOLY, Computed))
        .set("coefficients", num(lpoly_json(&l), LPOLY, Computed))
        .set("h0", num(big(&l.at_one()), CLASS, Computed));
    success("zeta lpoly", LPOLY, input, r)
}

fn zeta_count(a: &ZetaArgs, input: &Value) -> Outcome {
    let q = need(&a.q, "q")?;
    let affine = need(&a.affine, "affine")?;
    let curve = lib(
        PlaneCurve::parse(q, &affine, need(&a.inf_correction, "inf_correction")?),
        input,
    )?;
    let k = need(&a.k, "k")?;
    let n = lib(curve.count(k), input)?;
    let mut r = Report::new();
    r.set("k", num(k, COUNT, Input)).set("points", num(n, COUNT, Computed));
    success("zeta count", COUNT, input, r)
}

fn lpoly_args(a: &ZetaArgs, input: &Value) -> Result<(LPolynomial, u64, u32), Failure> {
    let q = need(&a.q, "q")?;
    let coeffs = need(&a.lpoly, "lpoly")?.parse::<i64>("lpoly")?;
    let l = lib(LPolynomial::from_i64(q, &coeffs), input)?;
    Ok((l, need(&a.p, "p")?, need(&a.levels, "levels")?))
}

fn set_fit(r: &mut Report, fit: &InvariantFit, provenance: Provenance, prefix: &str) {
    r.set(&format!("{prefix}lambda"), num(fit.lambda, FIT, provenance))
        .set(&format!("{prefix}mu"), num(fit.mu, FIT, provenance))
        .set(&format!("{prefix}nu"), num(fit.nu, FIT, provenance))
        .set(&format!("{prefix}n0"), num(fit.n0 as u64, FIT, provenance));
}

/// The fit when there are enough levels for one.
fn maybe_fit(e: &[u64], p: u64, input: &Value) -> Result<Option<InvariantFit>, Failure> {
    if e.len() < 4 {
        return Ok(None);
    }
    let e: Vec<i64> = e.iter().map(|&x| x as i64).collect();
    lib(fit_invariants(&e, p), input).map(Some)
}

fn zeta_tower(a: &ZetaArgs, input: &Value) -> Outcome {
    let (l, p, levels) = lpoly_args(a, input)?;
    let tower = lib(class_tower(&l, p, levels), input)?;
    let mut r = Report::new();
    r.set("genus", num(l.genus() as u64, LPOLY, Computed));
    if let Some(fit) = maybe_fit(&tower.exponents(), p, input)? {
        set_fit(&mut r, &fit, Computed, "");
    }
    for level in &tower.levels {
        r.row(row(vec![
            ("n", num(level.n, CLASS, Input)),
            ("h", num(big(&level.h), CLASS, Computed)),
            ("e", num(level.e, CLASS, Computed)),
        ]));
    }
    success("zeta tower", CLASS, input, r)
}

fn zeta_bound(a: &ZetaArgs, input: &Value) -> Outcome {
    let (l, p, levels) = lpoly_args(a, input)?;
    let tower = lib(class_tower(&l, p, levels), input)?;
    let bound = s_class_upper_bound(&tower);
    let mut r = Report::new();
    if let Some(fit) = maybe_fit(&bound, p, input)? {
        set_fit(&mut r, &fit, Bound, "");
    }
    for (n, e) in bound.iter().enumerate() {
        r.row(row(vec![
            ("n", num(n as u64, CLASS_BOUND, Input)),
            ("e_bound", num(*e, CLASS_BOUND, Bound)),
        ]));
    }
    success("zeta bound", CLASS_BOUND, input, r)
}

fn iwasawa_mu_lambda(a: &IwasawaArgs, input: &Value) -> Outcome {
    let p = need(&a.p, "p")?;
    let f = lib(parse_int_poly(&need(&a.f, "f")?), input)?;
    let (mu, lambda, precision) = lib(mu_lambda_of_poly(p, &f), input)?;
    let mut r = Report::new();
    r.set("mu", num(mu, MU_LAMBDA, Computed))
        .set("lambda", num(lambda as u64, MU_LAMBDA, Computed))
        .set("distinguished", json!(is_distinguished(p, &f)))
        .set("precision_digits", num(precision.digits, MU_LAMBDA, Computed))
        .set("precision_degree", num(precision.degree as u64, MU_LAMBDA, Computed));
    success("iwasawa mu-lambda", MU_LAMBDA, input, r)
}

fn iwasawa_growth(a: &IwasawaArgs, input: &Value) -> Outcome {
    let p = need(&a.p, "p")?;
    let mu_parts = match &a.mu_parts {
        Some(list) => list.parse::<u32>("mu_parts")?,
        None => Vec::new(),
    };
    let lambda_parts = match &a.lambda_parts {
        Some(list) => list
            .items()
            .iter()
            .map(|s| lib(parse_int_poly(s), input))
            .collect::<Result<Vec<_>, _>>()?,
        None => Vec::new(),
    };
    let levels = need(&a.levels, "levels")?;
    let module = lib(ElementaryModule::new(p, mu_parts, lambda_parts), input)?;
    let e = lib(growth(&module, levels), input)?;
    let mut r = Report::new();
    r.set("module_mu", num(module.mu(), MU_LAMBDA, Computed))
        .set("module_lambda", num(module.lambda() as u64, MU_LAMBDA, Computed));
    if let Some(fit) = maybe_fit(&e, p, input)? {
        set_fit(&mut r, &fit, Computed, "");
    }
    for (n, en) in e.iter().enumerate() {
        r.row(row(vec![
            ("n", num(n as u64, GROWTH, Input)),
            ("e", num(*en, GROWTH, Computed)),
        ]));
    }
    success("iwasawa growth", GROWTH, input, r)
}

fn iwasawa_fit(a: &IwasawaArgs, input: &Value) -> Outcome {
    let p = need(&a.p, "p")?;
    let e = need(&a.e, "e")?.parse::<i64>("e")?;
    let fit = lib(fit_invariants(&e, p), input)?;
    let mut r = Report::new();
    set_fit(&mut r, &fit, Computed, "");
    for (n, (en, ok)) in e.iter().zip(&fit.residuals).enumerate() {
        let predicted =
            BigInt::from(fit.lambda) * n + BigInt::from(fit.mu) * num_traits::pow(BigInt::from(p), n) + fit.nu;
        r.row(row(vec![
            ("n", num(n as u64, FIT, Input)),
            ("e", num(*en, FIT, Input)),
            ("predicted", num(big(&predicted), FIT, Computed)),
            ("matches", json!(ok)),
        ]));
    }
    success("iwasawa fit", FIT, input, r)
}

fn cofinite(a: &DualArgs, input: &Value) -> Result<CofinModule, Failure> {
    let residue_size = need(&a.residue_size, "residue_size")?;
    let factors = match &a.factors {
        Some(list) => list.parse::<u32>("factors")?,
        None => Vec::new(),
    };
    let finite = lib(FiniteModule::new(residue_size, factors), input)?;
    Ok(CofinModule::new(need(&a.corank, "corank")?, finite))
}

fn factors_json(m: &FiniteModule) -> Value {
    json!(m.factors())
}

fn dual_dual(a: &DualArgs, input: &Value) -> Outcome {
    let m = cofinite(a, input)?;
    let module = Module::Cofinite(m.clone());
    let n = dual(&module);
    let Dual::Compact { free_rank, torsion } = &n else {
        unreachable!("a cofinitely generated module dualizes to a compact one")
    };
    let mut r = Report::new();
    r.set("free_rank", num(*free_rank, DUAL, Computed))
        .set("torsion_factors", num(factors_json(torsion), DUAL, Computed))
        .set("torsion_cardinality", num(ubig(&torsion.cardinality()), DUAL, Computed))
        .set("lambda", num(n.lambda(), DUAL, Computed))
        .set("double_dual_matches", json!(n.dual() == module));
    success("dual dual", DUAL, input, r)
}

fn dual_torsion_quotient(a: &DualArgs, input: &Value) -> Outcome {
    let m = cofinite(a, input)?;
    let max = need(&a.n, "n")?;
    let mut r = Report::new();
    let mut all = true;
    for n in 1..=max {
        let (left, right) = lib(torsion_vs_quotient(&m, n), input)?;
        all &= left == right;
        r.row(row(vec![
            ("n", num(n, TORSION_QUOTIENT, Input)),
            ("torsion_dual", num(json!(left), TORSION_QUOTIENT, Computed)),
            ("quotient", num(json!(right), TORSION_QUOTIENT, Computed)),
            ("equal", json!(left == right)),
        ]));
    }
    r.set("all_equal", json!(all));
    success("dual torsion-quotient", TORSION_QUOTIENT, input, r)
}

fn dual_finiteness(a: &DualArgs, input: &Value) -> Outcome {
    let m = cofinite(a, input)?;
    let d = finiteness_check(&m);
    let mut r = Report::new();
    r.set("p_torsion_dim", num(d.p_torsion_dim as u64, FINITENESS, Computed))
        .set("p_torsion_finite", json!(d.p_torsion_finite))
        .set("dual_finitely_generated", json!(d.dual_finitely_generated))
        .set("dual_torsion", json!(d.dual_torsion))
        .set("dual_mu", num(d.dual_mu, FINITENESS, Computed))
        .set("dual_lambda", num(d.dual_lambda, FINITENESS, Computed))
        .set("inequality_holds", json!(d.inequality_holds))
        .set("equality", json!(d.equality))
        .set("finite_part_trivial", json!(d.finite_part_trivial))
        .set("consistent", json!(d.consistent));
    success("dual finiteness", FINITENESS, input, r)
}

/// Supplied local terms `dim` or `place=dim`.
fn supplied_terms(list: &ListArg) -> Result<Vec<H0Term>, ConfigError> {
    list.items()
        .iter()
        .enumerate()
        .map(|(i, item)| {
            let (label, dim) = match item.rsplit_once('=') {
                Some((place, dim)) => (place.trim().to_string(), dim.trim()),
                None => (format!("h0[{i}]"), item.as_str()),
            };
            let dim = dim.parse::<i64>().map_err(|_| {
                ConfigError::new(Some("h0"), format!("field `h0`: `{item}` is not `dim` or `place=dim`"))
            })?;
            Ok(H0Term {
                place: label,
                dim,
                provenance: Input,
            })
        })
        .collect()
}

/// Local terms at `places`: computed from Frobenius at good places `w ≠ π`,
/// the worst case `r` at ∞, π and bad places.
fn computed_terms(a: &DualArgs, places: &ListArg, input: &Value) -> Result<Vec<H0Term>, Failure> {
    let phi = drinfeld_module(&a.q, &a.phi_t, input)?;
    let pi = place(phi.field(), &a.pi, "pi", input)?;
    let bad = lib(phi.bad_reduction_set(), input)?;
    let mut terms = Vec::new();
    for w in place_list(phi.field(), places, input)? {
        let term = if w.is_infinite() || w == pi || bad.contains(&w) {
            H0Term {
                place: w.to_string(),
                dim: phi.rank() as i64,
                provenance: Bound,
            }
        } else {
            let data = lib(phi.frobenius_data(&w, &pi), input)?;
            H0Term {
                place: w.to_string(),
                dim: data.h0_dim as i64,
                provenance: Computed,
            }
        };
        terms.push(term);
    }
    Ok(terms)
}

fn dual_lambda_bound(a: &DualArgs, input: &Value) -> Outcome {
    let sel_dim = need(&a.sel_dim, "sel_dim")?;
    let mut terms = match &a.h0 {
        Some(list) => supplied_terms(list)?,
        None => Vec::new(),
    };
    if let Some(places) = &a.places {
        terms.extend(computed_terms(a, places, input)?);
    }
    let report = lib(lambda_bound(sel_dim, terms), input)?;
    let mut r = Report::new();
    r.set("sel_dim", num(report.sel_dim, LAMBDA_BOUND, Input))
        .set("lambda_bound", num(report.bound, LAMBDA_BOUND, Bound));
    for t in &report.h0_terms {
        r.row(row(vec![
            ("place", json!(t.place)),
            ("h0_dim", num(t.dim, H0, t.provenance)),
        ]));
    }
    success("dual lambda-bound", LAMBDA_BOUND, input, r)
}
