//! Registry of identity checks shared by the acceptance suite and the CLI.
//!
//! Every entry compares two independently built objects (a solver output
//! against series algebra, a closed form against an enumeration, ...) at a
//! default scale that the caller may override. A failed check always
//! reports the first differing coefficient.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

use crate::coeff::{Coefficient, TPoly};
use crate::error::{Error, Result};
use crate::hydra::{
    compositions_by_minima, enriching_window, hydra_inverse_closed, hydra_r, local_minima_factor, partition_trees,
    quotient_composition_form, quotient_partition_form, tree_equation, Heads,
};
use crate::languages::{build_language, k_dual, LanguageKind};
use crate::oracle::{self, count_table, CountTable, OracleKind};
use crate::plethysm::{
    implicit_iterate, inverse_equation, plethysm, plethystic_inverse, stabilization_bound, BiSeries,
};
use crate::qseries::{
    closed_form, ps_specialized, umbral_within, zq_mul, zq_reciprocal, ClosedForm, PsSpecial, ZQSeries,
};
use crate::rational::Rational;
use crate::series::{series_inverse, series_mul, shift, sign_flip, Series};
use crate::setspec::SetSpec;
use crate::trees::{insertion_tree, preorder_word, validate_tree, Verdict};
use crate::window::TruncationWindow;
use crate::word::Word;

/// Size parameters of a check. Series identities read `max_len` and
/// `max_letter` as the window; q-series identities read them as the `z` and
/// `q` bounds; enumeration identities read `weight`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Scale {
    pub max_len: usize,
    pub max_letter: i32,
    pub weight: u32,
}

impl Scale {
    pub const fn new(max_len: usize, max_letter: i32, weight: u32) -> Self {
        Scale { max_len, max_letter, weight }
    }

    pub fn window(&self) -> TruncationWindow {
        TruncationWindow::new(self.max_len, self.max_letter)
    }
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L={} K={} Q={}", self.max_len, self.max_letter, self.weight)
    }
}

/// `None` on agreement, otherwise a description of the first discrepancy.
pub type Outcome = Option<String>;

type Check = Arc<dyn Fn(&Scale) -> Result<Outcome> + Send + Sync>;

#[derive(Clone)]
pub struct Identity {
    pub id: String,
    /// Acceptance criterion number; 0 for supplementary checks.
    pub criterion: u8,
    pub summary: String,
    pub defaults: Scale,
    check: Check,
}

impl fmt::Debug for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Identity({} [{}])", self.id, self.defaults)
    }
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub id: String,
    pub scale: Scale,
    pub passed: bool,
    pub witness: Option<String>,
    pub elapsed: Duration,
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {} [{}] {:.3}s", self.id, self.scale, self.elapsed.as_secs_f64())?;
        if let Some(w) = &self.witness {
            write!(f, ": {w}")?;
        }
        Ok(())
    }
}

impl Identity {
    /// Matches the full id or the family name before the first `:`.
    pub fn matches(&self, pattern: &str) -> bool {
        self.id == pattern || self.id.split(':').next() == Some(pattern)
    }

    pub fn verify(&self) -> Result<VerificationReport> {
        self.verify_at(&self.defaults)
    }

    pub fn verify_at(&self, scale: &Scale) -> Result<VerificationReport> {
        let start = Instant::now();
        let witness = (self.check)(scale)?;
        Ok(VerificationReport {
            id: self.id.clone(),
            scale: *scale,
            passed: witness.is_none(),
            witness,
            elapsed: start.elapsed(),
        })
    }
}

fn entry(
    id: impl Into<String>,
    criterion: u8,
    summary: impl Into<String>,
    defaults: Scale,
    check: impl Fn(&Scale) -> Result<Outcome> + Send + Sync + 'static,
) -> Identity {
    Identity { id: id.into(), criterion, summary: summary.into(), defaults, check: Arc::new(check) }
}

/// Both series certify `required`, and agree there.
pub fn compare_series<C: Coefficient>(lhs: &Series<C>, rhs: &Series<C>, required: &TruncationWindow) -> Outcome {
    for (side, s) in [("left", lhs), ("right", rhs)] {
        if !s.window().covers(required) {
            return Some(format!("{side} side certified only on {}, needed {required}", s.window()));
        }
    }
    lhs.first_discrepancy(rhs).map(|(w, a, b)| format!("coefficient of X{w}: {a} vs {b}"))
}

/// Both q-series certify `z ≤ zmax`, `q ≤ qmax`, and agree there.
pub fn compare_zq(lhs: &ZQSeries, rhs: &ZQSeries, zmax: usize, qmax: i64) -> Outcome {
    for (side, s) in [("left", lhs), ("right", rhs)] {
        if s.zmax() < zmax || s.qmax() < qmax {
            return Some(format!("{side} side certified only on z <= {}, q <= {}", s.zmax(), s.qmax()));
        }
    }
    lhs.restrict(zmax, qmax)
        .first_discrepancy(&rhs.restrict(zmax, qmax))
        .map(|(z, t, q, a, b)| format!("coefficient of z^{z} t^{t} q^{q}: {a} vs {b}"))
}

/// Every `z^k t^j q^n` coefficient with `k ≤ zmax`, `0 ≤ n ≤ qmax` equals
/// the oracle count at `(n, k, j)`.
pub fn compare_table(s: &ZQSeries, table: &CountTable, zmax: usize, qmax: i64) -> Outcome {
    if s.zmax() < zmax || s.qmax() < qmax || s.qmin() > 0 || i64::from(table.nmax) < qmax {
        return Some(format!(
            "bounds z <= {}, {} <= q <= {}, oracle n <= {} do not cover z <= {zmax}, q <= {qmax}",
            s.zmax(),
            s.qmin(),
            s.qmax(),
            table.nmax
        ));
    }
    for z in 0..=zmax {
        for q in 0..=qmax {
            let c = s.coefficient(z, q).unwrap_or_else(|_| TPoly::zero());
            let top = c.degree().unwrap_or(0).max(z);
            for t in 0..=top {
                let expect = Rational::from(table.get(q as u32, z, t) as i64);
                let got = c.coeff(t);
                if got != expect {
                    return Some(format!("coefficient of z^{z} t^{t} q^{q}: {got} vs oracle {expect}"));
                }
            }
        }
    }
    None
}

/// Number of support words by `(weight, length)` with weight `≤ nmax`.
pub fn support_counts<C: Coefficient>(s: &Series<C>, nmax: i64) -> BTreeMap<(u32, usize), u64> {
    let mut out = BTreeMap::new();
    for (w, c) in s.iter() {
        if !c.is_zero() && (0..=nmax).contains(&w.weight()) {
            *out.entry((w.weight() as u32, w.len())).or_insert(0) += 1;
        }
    }
    out
}

/// Support counts of a language on `window` against the oracle, for
/// weights up to the letter bound (every such word fits the window when its
/// length does).
pub fn compare_support(s: &Series, kind: &OracleKind, window: &TruncationWindow) -> Result<Outcome> {
    let nmax = window.max_letter.max(0) as u32;
    let table = count_table(kind, nmax)?;
    let got = support_counts(s, i64::from(nmax));
    for n in 0..=nmax {
        for k in 0..=window.max_len {
            let expect: u64 = (0..=k).map(|t| table.get(n, k, t)).sum();
            let have = got.get(&(n, k)).copied().unwrap_or(0);
            if have != expect {
                return Ok(Some(format!("words of weight {n} and length {k}: {have} vs oracle {expect}")));
            }
        }
    }
    Ok(None)
}

fn first_failure(outcomes: impl IntoIterator<Item = Result<Outcome>>) -> Result<Outcome> {
    for o in outcomes {
        if let Some(w) = o? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

fn with_label(label: impl fmt::Display, o: Outcome) -> Outcome {
    o.map(|w| format!("{label}: {w}"))
}

fn x0(window: &TruncationWindow) -> Series {
    Series::letter(0, TruncationWindow::with_floor(window.max_len, window.max_letter, 0))
}

fn lang(kind: LanguageKind, window: &TruncationWindow) -> Result<Series> {
    build_language(&kind, window)
}

fn set(text: &str) -> SetSpec {
    text.parse().expect("catalog set literal")
}

fn int_set(s: &SetSpec) -> oracle::IntSet {
    let s = s.clone();
    oracle::int_set(move |n| s.contains(n))
}

/// Rise sets exercised by the partition and composition checks, with
/// their labels.
pub fn rise_sets() -> Vec<(&'static str, SetSpec)> {
    ["2..", "3..", "1..3", "{2}", "even", "0 mod 2, no-zero", "odd", "1 mod 3"]
        .into_iter()
        .map(|t| (t, set(t)))
        .collect()
}

/// Equations solved by the checks above, for the stability property.
pub fn solver_equations(window: &TruncationWindow) -> Result<Vec<(String, BiSeries)>> {
    let ew = enriching_window(window);
    let mut out = Vec::new();
    for m in 1..=3 {
        let pi = lang(LanguageKind::PiM(m), &ew)?;
        out.push((format!("trees-pi-{m}"), tree_equation(&pi)?));
        out.push((format!("trees-signed-pi-{m}"), tree_equation(&sign_flip(&pi))?));
    }
    out.push(("trees-pi-inf".into(), tree_equation(&lang(LanguageKind::PiInf, &ew)?)?));
    for (name, r) in inverse_targets(window)? {
        let n = crate::plethysm::series_order(&r)?;
        let base = shift(&r, -n).with_floor(0)?;
        out.push((format!("inverse-{name}"), inverse_equation(&base)?));
    }
    Ok(out)
}

/// Series whose plethystic inverses are checked.
pub fn inverse_targets(window: &TruncationWindow) -> Result<Vec<(String, Series)>> {
    let one = Series::one(*window);
    let mut out = vec![
        ("sigma-1".to_string(), lang(LanguageKind::Sigma(SetSpec::at_least(1)), window)?),
        ("sigma-2".to_string(), lang(LanguageKind::Sigma(SetSpec::at_least(2)), window)?),
        ("compositions-plus".to_string(), lang(LanguageKind::Compositions, window)?.sub(&one)),
        ("ps-odd-plus".to_string(), lang(LanguageKind::PS(SetSpec::odd()), window)?.sub(&one)),
    ];
    for m in 1..=3 {
        out.push((format!("hydra-r-{m}"), hydra_r(Heads::Finite(m), window)?));
    }
    Ok(out)
}

/// All registered identities, ordered by criterion.
pub fn catalog() -> Vec<Identity> {
    let mut v = Vec::new();

    v.push(entry(
        "rr-quotient",
        1,
        "umbral image of the 1-headed hydra fraction equals z·P2(zq)/P2(z)",
        Scale::new(8, 40, 0),
        |s| {
            let r = hydra_r(Heads::Finite(1), &s.window())?;
            let q = i64::from(s.max_letter);
            let lhs = umbral_within(&r, s.max_len, q)?;
            Ok(compare_zq(&lhs, &closed_form(&ClosedForm::Rm(2), s.max_len, q)?, s.max_len, q))
        },
    ));

    for m in 2..=4u32 {
        v.push(entry(
            format!("quotient-partition:m={m}"),
            2,
            format!("hydra fraction with {} heads equals X0·(shifted P{m})·P{m}^-1", m - 1),
            Scale::new(6, 18, 0),
            move |s| {
                let w = s.window();
                Ok(compare_series(&hydra_r(Heads::Finite(m - 1), &w)?, &quotient_partition_form(m, &w)?, &w))
            },
        ));
    }
    v.push(entry(
        "quotient-partition-qform:m=3",
        2,
        "umbral image of the 2-headed hydra fraction equals z·P3(zq^2)/P3(z)",
        Scale::new(6, 30, 0),
        |s| {
            let q = i64::from(s.max_letter);
            let lhs = umbral_within(&hydra_r(Heads::Finite(2), &s.window())?, s.max_len, q)?;
            Ok(compare_zq(&lhs, &closed_form(&ClosedForm::Rm(3), s.max_len, q)?, s.max_len, q))
        },
    ));

    for m in 2..=3u32 {
        v.push(entry(
            format!("quotient-composition:m={m}"),
            3,
            format!("Pi{}-enriched trees equal X0·(shifted C({}))^-1·C({})", m - 1, m - 1, m - 1),
            Scale::new(6, 18, 0),
            move |s| {
                let w = s.window();
                Ok(compare_series(&partition_trees(Heads::Finite(m - 1), &w)?, &quotient_composition_form(m, &w)?, &w))
            },
        ));
        v.push(entry(
            format!("hydra-a-qform:m={m}"),
            3,
            format!("umbral image of Pi{}-enriched trees equals the alternating-sum quotient", m - 1),
            Scale::new(6, 30, 0),
            move |s| {
                let q = i64::from(s.max_letter);
                let z = s.max_len;
                let lhs = umbral_within(&partition_trees(Heads::Finite(m - 1), &s.window())?, z, q)?;
                let closed = closed_form(&ClosedForm::HydraA(m), z, q)?;
                let c = closed_form(&ClosedForm::Cm(m), z, q)?;
                let via_c = zq_mul(&c, &zq_reciprocal(&c.subs_zq(i64::from(m) - 1))?).times_z();
                first_failure([
                    Ok(with_label("alternating quotient", compare_zq(&lhs, &closed, z, q))),
                    Ok(with_label("composition quotient", compare_zq(&lhs, &via_c, z, q))),
                ])
            },
        ));
    }

    for m in 2..=3i64 {
        v.push(entry(
            format!("k-duality:m={m}"),
            4,
            format!("K-dual of P{m} is C({})", m - 1),
            Scale::new(5, 14, 0),
            move |s| {
                let w = s.window();
                let dual = k_dual(&lang(LanguageKind::PM(m), &w)?)?;
                Ok(compare_series(&dual, &lang(LanguageKind::CM(m - 1), &w)?, &w))
            },
        ));
        v.push(entry(
            format!("cm-oracle:m={m}"),
            4,
            format!("reciprocal alternating P{m} sum counts compositions with differences <= {}", m - 1),
            Scale::new(0, 0, 16),
            move |s| {
                let n = i64::from(s.weight);
                let c = closed_form(&ClosedForm::Cm(m as u32), s.weight as usize, n)?;
                let table = count_table(&OracleKind::DifferencesAtMost(m - 1), s.weight)?;
                Ok(compare_table(&c, &table, s.weight as usize, n))
            },
        ));
    }
    for label in ["odd", "2..", "{2}"] {
        v.push(entry(
            format!("k-duality-ps:S={label}"),
            4,
            format!("K-dual of the partitions with rises in {label} is the complementary composition language"),
            Scale::new(5, 14, 0),
            move |s| {
                let w = s.window();
                let spec = set(label);
                let dual = k_dual(&lang(LanguageKind::PS(spec.clone()), &w)?)?;
                Ok(compare_series(&dual, &lang(LanguageKind::CShat(spec), &w)?, &w))
            },
        ));
    }

    v.push(entry(
        "insertion-round-trip",
        5,
        "every cyclic composition survives insertion and preorder reading, with a valid tree",
        Scale::new(0, 0, 14),
        |s| insertion_round_trip(s.weight),
    ));
    v.push(entry(
        "insertion-image",
        5,
        "insertion trees are exactly the Pi-infinity-enriched trees",
        Scale::new(0, 0, 12),
        |s| insertion_image(s.weight, None),
    ));
    for m in 1..=2 {
        v.push(entry(
            format!("insertion-refinement:m={m}"),
            5,
            format!("differences <= {m} exactly when the insertion tree is Pi{m}-enriched"),
            Scale::new(0, 0, 12),
            move |s| insertion_image(s.weight, Some(m)),
        ));
    }

    v.push(entry(
        "local-minima-oracle",
        6,
        "local-minima product counts compositions by parts and minima",
        Scale::new(0, 0, 16),
        |s| {
            let n = i64::from(s.weight);
            let c = closed_form(&ClosedForm::LocalMinima, s.weight as usize, n)?;
            let table = count_table(&OracleKind::CompositionsByMinima, s.weight)?;
            Ok(compare_table(&c, &table, s.weight as usize, n))
        },
    ));
    v.push(entry(
        "local-minima-nc",
        6,
        "t-marked plethysm of cyclic blocks agrees with the local-minima product",
        Scale::new(5, 10, 0),
        |s| {
            let q = i64::from(s.max_letter);
            let lhs = umbral_within(&compositions_by_minima(&s.window())?, s.max_len, q)?;
            Ok(compare_zq(&lhs, &closed_form(&ClosedForm::LocalMinima, s.max_len, q)?, s.max_len, q))
        },
    ));
    v.push(entry(
        "local-minima-factorization",
        6,
        "factorization into cyclic blocks reassembles and matches a direct minima count",
        Scale::new(0, 0, 14),
        |s| factorization_check(s.weight),
    ));

    for (label, spec) in rise_sets() {
        let spec2 = spec.clone();
        v.push(entry(
            format!("ps-oracle:S={label}"),
            7,
            format!("partition formula counts partitions with rises in {label}"),
            Scale::new(6, 0, 24),
            move |s| {
                let n = i64::from(s.weight);
                let c = closed_form(&ClosedForm::PS(spec.clone()), s.max_len, n)?;
                let table = count_table(&OracleKind::RisesIn(int_set(&spec)), s.weight)?;
                Ok(compare_table(&c, &table, s.max_len, n))
            },
        ));
        v.push(entry(
            format!("cshat-oracle:S={label}"),
            8,
            format!("reciprocal alternating partition formula counts compositions with differences outside {label}"),
            Scale::new(0, 0, 14),
            move |s| {
                let n = i64::from(s.weight);
                let c = closed_form(&ClosedForm::CShat(spec2.clone()), s.weight as usize, n)?;
                let avoid = int_set(&spec2);
                let table = count_table(&OracleKind::DifferencesAvoid(avoid), s.weight)?;
                Ok(compare_table(&c, &table, s.weight as usize, n))
            },
        ));
    }
    for case in [
        PsSpecial::AtLeast(2),
        PsSpecial::AtLeast(3),
        PsSpecial::Interval(1, 3),
        PsSpecial::Singleton(2),
        PsSpecial::Multiples(2),
        PsSpecial::PositiveMultiples(2),
        PsSpecial::Residue(1, 3),
        PsSpecial::Odd,
    ] {
        v.push(entry(
            format!("ps-specialized:S={}", case.set()),
            7,
            "specialized partition formula matches the general one",
            Scale::new(6, 0, 24),
            move |s| {
                let n = i64::from(s.weight);
                let special = ps_specialized(&case, s.max_len, n)?;
                let generic = closed_form(&ClosedForm::PS(case.set()), s.max_len, n)?;
                Ok(compare_zq(&special, &generic, s.max_len, n))
            },
        ));
    }

    for m in 2..=3i64 {
        v.push(entry(
            format!("distinct-plethysm:m={m}"),
            9,
            format!("P{m} composed with X0·PiUpper{} gives all increasing distinct partitions", m - 1),
            Scale::new(5, 14, 0),
            move |s| {
                let w = s.window();
                let inner = series_mul(&x0(&w), &lang(LanguageKind::PiUpperM(m - 1), &enriching_window(&w))?);
                let lhs = plethysm(&lang(LanguageKind::PM(m), &w)?, &inner)?;
                Ok(compare_series(&lhs, &lang(LanguageKind::PiUpperInf, &w)?, &w))
            },
        ));
    }
    v.push(entry(
        "carlitz-factorization",
        9,
        "Carlitz compositions composed with X0/(1-X0) give all compositions",
        Scale::new(5, 14, 0),
        |s| {
            let w = s.window();
            let x = x0(&w);
            let inner = series_mul(&x, &series_inverse(&Series::one(*x.window()).sub(&x))?);
            let lhs = plethysm(&lang(LanguageKind::Carlitz, &w)?, &inner)?;
            Ok(compare_series(&lhs, &lang(LanguageKind::Compositions, &w)?, &w))
        },
    ));
    v.push(entry(
        "cyclic-factorization",
        9,
        "Pi-infinity composed with X0·C gives all compositions",
        Scale::new(5, 14, 0),
        |s| {
            let w = s.window();
            let inner = series_mul(&x0(&w), &lang(LanguageKind::Compositions, &enriching_window(&w))?);
            let lhs = plethysm(&lang(LanguageKind::PiInf, &w)?, &inner)?;
            Ok(compare_series(&lhs, &lang(LanguageKind::Compositions, &w)?, &w))
        },
    ));
    for m in 1..=2u32 {
        v.push(entry(
            format!("cyclic-refined:m={m}"),
            9,
            format!("Pi-infinity composed with Pi{m}-enriched trees gives C({m})"),
            Scale::new(5, 14, 0),
            move |s| {
                let w = s.window();
                let lhs = plethysm(&lang(LanguageKind::PiInf, &w)?, &partition_trees(Heads::Finite(m), &w)?)?;
                Ok(compare_series(&lhs, &lang(LanguageKind::CM(m.into()), &w)?, &w))
            },
        ));
    }

    v.push(entry(
        "inverse-round-trip",
        10,
        "R and its plethystic inverse compose to X0 on both sides",
        Scale::new(5, 12, 0),
        |s| {
            let results = inverse_targets(&s.window())?.into_iter().map(|(name, r)| {
                let inv = plethystic_inverse(&r)?;
                let mut found = None;
                for (side, composite) in [("R∘R⁻¹", plethysm(&r, &inv)?), ("R⁻¹∘R", plethysm(&inv, &r)?)] {
                    let w = *composite.window();
                    if w.max_len < s.max_len || w.max_letter < s.max_letter - 4 {
                        found = Some(format!("{name} {side}: composite certified only on {w}"));
                        break;
                    }
                    found = with_label(format!("{name} {side}"), compare_series(&composite, &Series::letter(0, w), &w));
                    if found.is_some() {
                        break;
                    }
                }
                Ok(found)
            });
            first_failure(results)
        },
    ));
    v.push(entry(
        "inverse-closed-forms",
        10,
        "inverses of sigma_n, nonempty compositions and hydra fractions match their closed forms",
        Scale::new(5, 12, 0),
        |s| inverse_closed_forms(&s.window()),
    ));

    v.push(entry(
        "solver-stability",
        11,
        "solver iterates K+L and K+L+1 agree for every equation used above",
        Scale::new(5, 12, 0),
        |s| {
            let w = s.window();
            let results = solver_equations(&w)?.into_iter().map(|(name, f)| {
                let target = *f.window();
                let n = stabilization_bound(&target);
                let a = implicit_iterate(&f, &target, n)?;
                let b = implicit_iterate(&f, &target, n + 1)?;
                Ok(with_label(&name, compare_series(&a, &b, &target)))
            });
            first_failure(results)
        },
    ));

    v.extend(supplementary());
    v
}

/// The brute-force enumerator counting the words of a language family.
pub fn oracle_for(kind: &LanguageKind) -> Option<OracleKind> {
    Some(match kind {
        LanguageKind::Compositions => OracleKind::Compositions,
        LanguageKind::Carlitz => OracleKind::Carlitz,
        LanguageKind::PM(m) => OracleKind::MDistinct(*m),
        LanguageKind::CM(m) => OracleKind::DifferencesAtMost(*m),
        LanguageKind::PS(spec) => OracleKind::RisesIn(int_set(spec)),
        LanguageKind::CShat(spec) => OracleKind::DifferencesAvoid(int_set(spec)),
        _ => return None,
    })
}

/// Cross-checks beyond the acceptance criteria: language constructions
/// against the enumerators.
fn supplementary() -> Vec<Identity> {
    let mut v = Vec::new();
    let mut families = vec![LanguageKind::Compositions, LanguageKind::Carlitz];
    for m in 0..=3 {
        families.push(LanguageKind::PM(m));
        families.push(LanguageKind::CM(m));
    }
    for (_, spec) in rise_sets() {
        families.push(LanguageKind::PS(spec.clone()));
        families.push(LanguageKind::CShat(spec));
    }
    for kind in families {
        let name = kind.to_string();
        let oracle_kind = oracle_for(&kind).expect("enumerable family");
        v.push(entry(
            format!("language-oracle:{name}"),
            0,
            format!("support of {name} matches the enumerator by weight and length"),
            Scale::new(5, 12, 0),
            move |s| {
                let w = s.window();
                compare_support(&lang(kind.clone(), &w)?, &oracle_kind, &w)
            },
        ));
    }
    v
}

fn insertion_round_trip(weight: u32) -> Result<Outcome> {
    let pi_inf = LanguageKind::PiInf.linked()?.expect("linked family");
    for first in 1..=weight as i32 {
        for kappa in oracle::cyclic_compositions(first, weight, None)? {
            let tree = insertion_tree(&kappa)?;
            if preorder_word(&tree) != kappa {
                return Ok(Some(format!("{kappa} reads back as {}", preorder_word(&tree))));
            }
            if validate_tree(&tree, &pi_inf, first) != Verdict::Valid {
                return Ok(Some(format!("tree {tree} of {kappa} is not Pi-infinity-enriched")));
            }
            if tree.leaves() != oracle::count_weak_descents(&kappa) + 1 {
                return Ok(Some(format!("tree {tree} of {kappa} has {} leaves", tree.leaves())));
            }
        }
    }
    Ok(None)
}

/// The trees produced by insertion (restricted to differences `≤ m`) are
/// exactly the enumerated trees with steps `≤ m`, and validity against
/// `Π_m` tracks the difference bound.
fn insertion_image(weight: u32, m: Option<i32>) -> Result<Outcome> {
    let membership = match m {
        Some(m) => LanguageKind::PiM(m.into()).linked()?,
        None => LanguageKind::PiInf.linked()?,
    }
    .expect("linked family");
    for first in 1..=weight as i32 {
        let mut built = BTreeSet::new();
        for kappa in oracle::cyclic_compositions(first, weight, None)? {
            let bounded = m.is_none_or(|m| kappa.windows(2).all(|p| p[1] - p[0] <= m));
            let tree = insertion_tree(&kappa)?;
            let valid = validate_tree(&tree, &membership, first) == Verdict::Valid;
            if valid != bounded {
                return Ok(Some(format!("{kappa}: difference bound {bounded}, tree {tree} valid {valid}")));
            }
            if bounded {
                built.insert(tree.to_string());
            }
        }
        let enumerated: BTreeSet<String> =
            oracle::enumerate_trees(first, weight, m)?.iter().map(ToString::to_string).collect();
        if let Some(t) = enumerated.symmetric_difference(&built).next() {
            let side = if built.contains(t) { "only from insertion" } else { "only from enumeration" };
            return Ok(Some(format!("tree {t} {side}")));
        }
    }
    Ok(None)
}

fn factorization_check(weight: u32) -> Result<Outcome> {
    for n in 1..=weight {
        for kappa in oracle::enum_compositions(n, &|_, _| true)? {
            let f = local_minima_factor(&kappa)?;
            if f.reassemble() != kappa {
                return Ok(Some(format!("{kappa} reassembles as {}", f.reassemble())));
            }
            if f.len() != oracle::count_local_minima(&kappa) {
                return Ok(Some(format!(
                    "{kappa}: {} blocks vs {} minima",
                    f.len(),
                    oracle::count_local_minima(&kappa)
                )));
            }
            if f.minima.windows(2).any(|p| p[1] > p[0]) {
                return Ok(Some(format!("{kappa}: minima {:?} not weakly decreasing", f.minima)));
            }
            for (mu, tail) in f.minima.iter().zip(&f.blocks) {
                let mut block = vec![*mu];
                block.extend_from_slice(tail);
                if !oracle::is_cyclic_composition(&block) {
                    return Ok(Some(format!("{kappa}: block {} not cyclic", Word::from(block))));
                }
            }
        }
    }
    Ok(None)
}

fn inverse_closed_forms(window: &TruncationWindow) -> Result<Outcome> {
    let mut checks = Vec::new();
    for n in 1..=2 {
        let sigma = lang(LanguageKind::Sigma(SetSpec::at_least(n.into())), window)?;
        let inv = plethystic_inverse(&sigma)?;
        let w = *inv.window();
        let closed = Series::letter(-n, w).sub(&Series::letter(1 - n, w));
        checks.push(with_label(format!("sigma-{n}"), compare_series(&inv, &closed, &w)));
    }
    let comps = lang(LanguageKind::Compositions, window)?;
    let inv = plethystic_inverse(&comps.sub(&Series::one(*window)))?;
    let w = *inv.window();
    let geometric = |k: i32| -> Result<Series> {
        let x = Series::letter(k, w);
        Ok(series_mul(&x, &series_inverse(&Series::one(w).add(&x))?))
    };
    let closed = geometric(-1)?.sub(&geometric(0)?);
    checks.push(with_label("compositions-plus", compare_series(&inv, &closed, &w)));
    for m in 1..=3u32 {
        let r = hydra_r(Heads::Finite(m), window)?;
        let inv = plethystic_inverse(&r)?;
        let closed = hydra_inverse_closed(m, window)?;
        checks.push(with_label(format!("hydra-r-{m}"), compare_series(&inv, &closed, window)));
        let back = plethysm(&r, &closed)?;
        let target = Series::letter(0, *back.window());
        checks.push(with_label(format!("hydra-r-{m} composed"), compare_series(&back, &target, window)));
    }
    Ok(checks.into_iter().flatten().next())
}

/// Identities whose id or family matches `pattern`.
pub fn find(pattern: &str) -> Vec<Identity> {
    catalog().into_iter().filter(|i| i.matches(pattern)).collect()
}

/// Run every identity at its default scale, in parallel when enabled.
pub fn verify_all(identities: &[Identity]) -> Vec<Result<VerificationReport>> {
    crate::par::map_collect(identities, Identity::verify)
}

impl From<&VerificationReport> for serde_json::Value {
    fn from(r: &VerificationReport) -> Self {
        serde_json::json!({
            "id": r.id,
            "max_len": r.scale.max_len,
            "max_letter": r.scale.max_letter,
            "weight": r.scale.weight,
            "passed": r.passed,
            "witness": r.witness,
            "seconds": r.elapsed.as_secs_f64(),
        })
    }
}

/// Errors that stem from the request rather than from a failed identity.
pub fn is_usage_error(e: &Error) -> bool {
    matches!(e, Error::InvalidParam(_) | Error::BoundsExceeded(_) | Error::Parse(_) | Error::EnumerationLimit(_))
}
