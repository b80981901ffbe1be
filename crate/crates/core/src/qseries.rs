//! Truncated `(z, q, t)`-series, the umbral map `X_k ↦ zqᵏ` and the
//! closed-form q-series of the partition and composition families.
//!
//! A [`ZQSeries`] stores, for every `z`-degree `0..=zmax`, a Laurent
//! polynomial in `q` over `ℚ[t]` with exponents in `qmin..=qmax`. Every
//! stored coefficient is exact; exponents below `qmin` are known zeros.

use std::fmt;

use serde_json::json;

use crate::coeff::{Coefficient, TPoly};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::series::Series;
use crate::setspec::SetSpec;

#[derive(Clone)]
pub struct ZQSeries {
    zmax: usize,
    qmin: i64,
    qmax: i64,
    rows: Vec<Vec<TPoly>>,
}

fn width(qmin: i64, qmax: i64) -> usize {
    (qmax - qmin + 1).max(0) as usize
}

impl ZQSeries {
    pub fn zero(zmax: usize, qmin: i64, qmax: i64) -> Self {
        ZQSeries { zmax, qmin, qmax, rows: vec![vec![TPoly::zero(); width(qmin, qmax)]; zmax + 1] }
    }

    pub fn one(zmax: usize, qmax: i64) -> Self {
        Self::monomial(0, 0, TPoly::one(), zmax, qmax)
    }

    /// `c·zᵃqᵇ` with `qmin = 0`.
    pub fn monomial(z: usize, q: i64, c: TPoly, zmax: usize, qmax: i64) -> Self {
        let mut s = Self::zero(zmax, 0, qmax);
        s.add_term(z, q, &c);
        s
    }

    /// Series with `rows[k]` as the rational coefficient list of `zᵏ`,
    /// exponents starting at 0.
    pub fn from_rational_rows(rows: Vec<Vec<Rational>>, qmax: i64) -> Self {
        let zmax = rows.len().saturating_sub(1);
        let mut s = Self::zero(zmax, 0, qmax);
        for (z, row) in rows.into_iter().enumerate() {
            for (q, c) in row.into_iter().enumerate() {
                s.add_term(z, q as i64, &TPoly::constant(c));
            }
        }
        s
    }

    pub fn zmax(&self) -> usize {
        self.zmax
    }

    pub fn qmin(&self) -> i64 {
        self.qmin
    }

    pub fn qmax(&self) -> i64 {
        self.qmax
    }

    /// Adds `c·zᶻqᵠ`; terms outside the stored region are dropped.
    pub fn add_term(&mut self, z: usize, q: i64, c: &TPoly) {
        if z <= self.zmax && q >= self.qmin && q <= self.qmax {
            self.rows[z][(q - self.qmin) as usize].add_assign_ref(c);
        }
    }

    /// Exact coefficient of `zᶻqᵠ`.
    pub fn coefficient(&self, z: usize, q: i64) -> Result<TPoly> {
        if z > self.zmax || q > self.qmax {
            return Err(Error::BoundsExceeded(format!("z^{z} q^{q} outside z <= {}, q <= {}", self.zmax, self.qmax)));
        }
        Ok(self.get(z, q))
    }

    fn get(&self, z: usize, q: i64) -> TPoly {
        if z > self.zmax || q < self.qmin || q > self.qmax {
            return TPoly::zero();
        }
        self.rows[z][(q - self.qmin) as usize].clone()
    }

    /// Narrow the certified bounds.
    pub fn restrict(&self, zmax: usize, qmax: i64) -> Self {
        let zmax = zmax.min(self.zmax);
        let qmax = qmax.min(self.qmax);
        let mut s = Self::zero(zmax, self.qmin, qmax);
        for z in 0..=zmax {
            for q in self.qmin..=qmax {
                s.rows[z][(q - self.qmin) as usize] = self.get(z, q);
            }
        }
        s
    }

    fn combine(&self, other: &Self, sign: &Rational) -> Self {
        let zmax = self.zmax.min(other.zmax);
        let qmin = self.qmin.min(other.qmin);
        let qmax = self.qmax.min(other.qmax);
        let mut s = Self::zero(zmax, qmin, qmax);
        for z in 0..=zmax {
            for q in qmin..=qmax {
                let mut c = self.get(z, q);
                c.add_assign_ref(&other.get(z, q).scale(sign));
                s.rows[z][(q - qmin) as usize] = c;
            }
        }
        s
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, &Rational::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, &Rational::from(-1))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut s = self.clone();
        for row in s.rows.iter_mut() {
            for c in row.iter_mut() {
                *c = c.scale(r);
            }
        }
        s
    }

    /// Multiply by `z`; the `z`-bound grows by one.
    pub fn times_z(&self) -> Self {
        let mut s = self.clone();
        s.rows.insert(0, vec![TPoly::zero(); width(self.qmin, self.qmax)]);
        s.zmax += 1;
        s
    }

    /// Substitute `z ↦ z·qⁿ`.
    pub fn subs_zq(&self, n: i64) -> Self {
        let drop = (n * self.zmax as i64).min(0);
        let mut s = Self::zero(self.zmax, self.qmin + drop, self.qmax + drop);
        for z in 0..=self.zmax {
            for q in self.qmin..=self.qmax {
                s.add_term(z, q + z as i64 * n, &self.get(z, q));
            }
        }
        s
    }

    /// Coefficients agree wherever both series are certified.
    pub fn first_discrepancy(&self, other: &Self) -> Option<(usize, usize, i64, Rational, Rational)> {
        let zmax = self.zmax.min(other.zmax);
        let qmin = self.qmin.min(other.qmin);
        let qmax = self.qmax.min(other.qmax);
        for z in 0..=zmax {
            let tdeg = (qmin..=qmax).flat_map(|q| [self.get(z, q).degree(), other.get(z, q).degree()]).flatten().max();
            for t in 0..=tdeg.unwrap_or(0) {
                for q in qmin..=qmax {
                    let (a, b) = (self.get(z, q).coeff(t), other.get(z, q).coeff(t));
                    if a != b {
                        return Some((z, t, q, a, b));
                    }
                }
            }
        }
        None
    }

    /// Nonzero coefficients as `(z, t, q, c)`, ordered by `z`, `t`, `q`.
    pub fn table(&self) -> Vec<(usize, usize, i64, Rational)> {
        let mut out = Vec::new();
        for z in 0..=self.zmax {
            let tdeg = self.rows[z].iter().filter_map(TPoly::degree).max();
            let Some(tdeg) = tdeg else { continue };
            for t in 0..=tdeg {
                for q in self.qmin..=self.qmax {
                    let c = self.get(z, q).coeff(t);
                    if !c.is_zero() {
                        out.push((z, t, q, c));
                    }
                }
            }
        }
        out
    }

    pub fn to_tsv(&self) -> String {
        let mut s = String::from("z\tt\tq\tcoeff\n");
        for (z, t, q, c) in self.table() {
            s.push_str(&format!("{z}\t{t}\t{q}\t{c}\n"));
        }
        s
    }

    pub fn to_json(&self) -> String {
        let terms: Vec<_> = self
            .table()
            .into_iter()
            .map(|(z, t, q, c)| json!({"z": z, "t": t, "q": q, "coeff": c.to_string()}))
            .collect();
        json!({"zmax": self.zmax, "qmin": self.qmin, "qmax": self.qmax, "terms": terms}).to_string()
    }
}

impl PartialEq for ZQSeries {
    fn eq(&self, other: &Self) -> bool {
        self.first_discrepancy(other).is_none()
    }
}

impl fmt::Debug for ZQSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ZQSeries[z<={}, {}<=q<={}]{{", self.zmax, self.qmin, self.qmax)?;
        for (i, (z, t, q, c)) in self.table().into_iter().enumerate() {
            if i == 32 {
                return write!(f, " …}}");
            }
            write!(f, " {c}·z^{z}t^{t}q^{q}")?;
        }
        write!(f, " }}")
    }
}

/// Truncated product; certified up to the smaller of
/// `qmax_a + qmin_b` and `qmax_b + qmin_a`.
pub fn zq_mul(a: &ZQSeries, b: &ZQSeries) -> ZQSeries {
    let zmax = a.zmax.min(b.zmax);
    let qmin = a.qmin + b.qmin;
    let qmax = (a.qmax + b.qmin).min(b.qmax + a.qmin);
    let mut s = ZQSeries::zero(zmax, qmin, qmax);
    for za in 0..=zmax {
        for zb in 0..=zmax - za {
            for (ia, ca) in a.rows[za].iter().enumerate() {
                if ca.is_zero() {
                    continue;
                }
                let qa = a.qmin + ia as i64;
                for (ib, cb) in b.rows[zb].iter().enumerate() {
                    let q = qa + b.qmin + ib as i64;
                    if q > qmax {
                        break;
                    }
                    if !cb.is_zero() {
                        s.rows[za + zb][(q - qmin) as usize].add_product(ca, cb);
                    }
                }
            }
        }
    }
    s
}

/// Power series product in `q` over `ℚ[t]`, truncated at degree `n`.
fn ps_mul(a: &[TPoly], b: &[TPoly], n: usize) -> Vec<TPoly> {
    let mut out = vec![TPoly::zero(); n + 1];
    for (i, ca) in a.iter().enumerate().take(n + 1) {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate().take(n + 1 - i) {
            out[i + j].add_product(ca, cb);
        }
    }
    out
}

/// Multiplicative inverse; needs `qmin ≥ 0` and a nonzero rational `z⁰q⁰`
/// coefficient.
pub fn zq_reciprocal(a: &ZQSeries) -> Result<ZQSeries> {
    let c0 = a.get(0, 0);
    let inv_c0 = match c0.degree() {
        Some(0) if a.qmin <= 0 => c0.inverse().expect("nonzero constant"),
        _ => return Err(Error::NotInvertible(format!("z^0 q^0 coefficient {c0}"))),
    };
    if a.qmin < 0 && (a.qmin..0).any(|q| (0..=a.zmax).any(|z| !a.get(z, q).is_zero())) {
        return Err(Error::NotInvertible("negative q-powers".into()));
    }
    if a.qmax < 0 {
        return Err(Error::NotInvertible("no certified q-range".into()));
    }
    let n = a.qmax as usize;
    let rows: Vec<Vec<TPoly>> = (0..=a.zmax).map(|z| (0..=a.qmax).map(|q| a.get(z, q)).collect()).collect();

    let mut base = vec![TPoly::zero(); n + 1];
    base[0] = inv_c0.clone();
    let neg_inv = inv_c0.neg_ref();
    for d in 1..=n {
        let mut acc = TPoly::zero();
        for i in 1..=d {
            acc.add_product(&rows[0][i], &base[d - i]);
        }
        base[d] = acc.mul_ref(&neg_inv);
    }

    let mut inv: Vec<Vec<TPoly>> = vec![base.clone()];
    for z in 1..=a.zmax {
        let mut acc = vec![TPoly::zero(); n + 1];
        for j in 1..=z {
            for (d, c) in ps_mul(&rows[j], &inv[z - j], n).into_iter().enumerate() {
                acc[d].add_assign_ref(&c);
            }
        }
        let mut row = ps_mul(&base, &acc, n);
        for c in row.iter_mut() {
            *c = c.neg_ref();
        }
        inv.push(row);
    }
    Ok(ZQSeries { zmax: a.zmax, qmin: 0, qmax: a.qmax, rows: inv })
}

/// Largest `(zmax, qmin, qmax)` on which the umbral image of a series with
/// this window is exact.
pub fn umbral_bounds(window: &crate::window::TruncationWindow) -> (usize, i64, i64) {
    let low = i64::from(window.min_letter.min(0));
    let l = window.max_len as i64;
    (window.max_len, l * low, i64::from(window.max_letter) + (l - 1) * low)
}

/// `X_κ ↦ z^{ℓ(κ)} q^{|κ|}` on the certified bounds.
pub fn umbral<C: Coefficient>(r: &Series<C>) -> ZQSeries {
    let (zmax, qmin, qmax) = umbral_bounds(r.window());
    let mut s = ZQSeries::zero(zmax, qmin, qmax);
    for (w, c) in r.iter() {
        s.add_term(w.len(), w.weight(), &c.to_tpoly());
    }
    s
}

/// [`umbral`] restricted to `z ≤ zmax`, `q ≤ qmax`; errors when the window
/// of `r` cannot certify that region.
pub fn umbral_within<C: Coefficient>(r: &Series<C>, zmax: usize, qmax: i64) -> Result<ZQSeries> {
    let (zc, _, qc) = umbral_bounds(r.window());
    if zmax > zc || qmax > qc {
        return Err(Error::BoundsExceeded(format!(
            "requested z <= {zmax}, q <= {qmax}; window {} certifies z <= {zc}, q <= {qc}",
            r.window()
        )));
    }
    Ok(umbral(r).restrict(zmax, qmax))
}

// Rational power series in q truncated at degree n, stored densely.

fn q_zero(n: usize) -> Vec<Rational> {
    vec![Rational::zero(); n + 1]
}

fn q_mono(e: i64, n: usize) -> Vec<Rational> {
    let mut v = q_zero(n);
    if e >= 0 && (e as usize) <= n {
        v[e as usize] = Rational::one();
    }
    v
}

fn q_mul(a: &[Rational], b: &[Rational], n: usize) -> Vec<Rational> {
    let mut out = q_zero(n);
    for (i, ca) in a.iter().enumerate().take(n + 1) {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate().take(n + 1 - i) {
            if !cb.is_zero() {
                out[i + j].add_product(ca, cb);
            }
        }
    }
    out
}

/// `1/(1 − q^e)` for `e ≥ 1`.
fn q_geometric(e: usize, n: usize) -> Vec<Rational> {
    let mut v = q_zero(n);
    for i in (0..=n).step_by(e) {
        v[i] = Rational::one();
    }
    v
}

/// `(q^step; q^step)_count = ∏_{i=1}^{count} (1 − q^{step·i})`, truncated.
pub fn pochhammer(step: usize, count: usize, n: usize) -> Vec<Rational> {
    let mut acc = q_mono(0, n);
    for i in 1..=count {
        let mut f = q_mono(0, n);
        if step * i <= n {
            f[step * i] = Rational::from(-1);
        }
        acc = q_mul(&acc, &f, n);
    }
    acc
}

/// `1/(q^step; q^step)_count`, as a product of geometric series.
fn inv_pochhammer(step: usize, count: usize, n: usize) -> Vec<Rational> {
    let mut acc = q_mono(0, n);
    for i in 1..=count {
        acc = q_mul(&acc, &q_geometric(step * i, n), n);
    }
    acc
}

fn binom2(k: i64) -> i64 {
    k * (k - 1) / 2
}

/// Laurent polynomial in `q` with exponents `qmin..=qmax`.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentQ {
    pub qmin: i64,
    pub qmax: i64,
    pub coeffs: Vec<Rational>,
}

impl LaurentQ {
    pub fn coeff(&self, e: i64) -> Rational {
        if e < self.qmin || e > self.qmax {
            return Rational::zero();
        }
        self.coeffs[(e - self.qmin) as usize].clone()
    }
}

/// `(𝒮ₖ)!(q) = 𝒮ₖ𝒮ₖ₋₁…𝒮₁` with `𝒮ⱼ(q) = Σ_{s∈S} q^{j(s−1)}`, exact for
/// exponents up to `qmax`. The lowest possible exponent is `−C(k+1,2)`,
/// reached when `0 ∈ S`.
pub fn sk_factorial(s: &SetSpec, k: usize, qmax: i64) -> Result<LaurentQ> {
    s.require_natural(false)?;
    let offset = binom2(k as i64 + 1);
    let qmin = -offset;
    let top = qmax + offset;
    if top < 0 {
        return Ok(LaurentQ { qmin, qmax, coeffs: Vec::new() });
    }
    let n = top as usize;
    // 𝒮ⱼ·qʲ = Σ q^{js} has nonnegative exponents.
    let mut acc = q_mono(0, n);
    for j in 1..=k {
        let mut term = q_zero(n);
        for m in s.members_up_to(top / j as i64) {
            term[j * m as usize].add_assign_ref(&Rational::one());
        }
        acc = q_mul(&acc, &term, n);
    }
    Ok(LaurentQ { qmin, qmax, coeffs: acc })
}

/// Identifiers of the closed-form evaluators. `m` is the index of the
/// `m`-distinct partition family throughout.
#[derive(Clone, Debug, PartialEq)]
pub enum ClosedForm {
    /// `𝒫ₘ(z) = Σ q^{m·C(k,2)+k} zᵏ/(q;q)ₖ`.
    Pm(u32),
    /// `𝒞^(m−1)(z)`, the reciprocal of the alternating `𝒫ₘ` sum.
    Cm(u32),
    /// `ℛ_{m−1}(z) = z·𝒫ₘ(zq^{m−1})/𝒫ₘ(z)`.
    Rm(u32),
    /// `𝒜_{Π_{m−1}}(z) = z·A(zq^{m−1})/A(z)`, `A` the alternating `𝒫ₘ` sum.
    HydraA(u32),
    /// `𝒫_S(z) = 1 + Σ q^{C(k+1,2)}/(1−qᵏ)·(𝒮ₖ₋₁)!(q)·zᵏ`.
    PS(SetSpec),
    /// `𝒞^Ŝ(z)`, the reciprocal of the alternating `𝒫_S` sum.
    CShat(SetSpec),
    /// `∏ₖ (1−q−zq^{k+1})/(1−q−zq^{k+1}+qᵏ(q−1)zt)`, `t` marking local minima.
    LocalMinima,
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosedForm::Pm(m) => write!(f, "Pm(m={m})"),
            ClosedForm::Cm(m) => write!(f, "Cm(m={m})"),
            ClosedForm::Rm(m) => write!(f, "Rm(m={m})"),
            ClosedForm::HydraA(m) => write!(f, "HydraA(m={m})"),
            ClosedForm::PS(s) => write!(f, "PS(S={s})"),
            ClosedForm::CShat(s) => write!(f, "CShat(S={s})"),
            ClosedForm::LocalMinima => write!(f, "LocalMinima"),
        }
    }
}

fn qmax_index(qmax: i64) -> Result<usize> {
    if qmax < 0 {
        return Err(Error::InvalidParam(format!("qmax must be >= 0, got {qmax}")));
    }
    Ok(qmax as usize)
}

/// `Σ sign^k · q^{a·C(k,2)+b·k}/(q;q)ₖ · zᵏ`.
fn distinct_sum(a: i64, b: i64, alternate: bool, zmax: usize, qmax: i64) -> Result<ZQSeries> {
    let n = qmax_index(qmax)?;
    let rows = (0..=zmax as i64)
        .map(|k| {
            let row = q_mul(&q_mono(a * binom2(k) + b * k, n), &inv_pochhammer(1, k as usize, n), n);
            if alternate && k % 2 == 1 {
                row.into_iter().map(|c| c.neg()).collect()
            } else {
                row
            }
        })
        .collect();
    Ok(ZQSeries::from_rational_rows(rows, qmax))
}

/// Coefficients `f_k` of `𝒫_S(z)`, with `f₀ = 1`.
fn ps_rows(s: &SetSpec, zmax: usize, qmax: i64) -> Result<Vec<Vec<Rational>>> {
    let n = qmax_index(qmax)?;
    let mut rows = vec![q_mono(0, n)];
    for k in 1..=zmax {
        let shift = binom2(k as i64 + 1);
        let fact = sk_factorial(s, k - 1, qmax - shift)?;
        let mut row = q_zero(n);
        for e in fact.qmin..=fact.qmax {
            let q = e + shift;
            if (0..=qmax).contains(&q) {
                row[q as usize] = fact.coeff(e);
            }
        }
        rows.push(q_mul(&row, &q_geometric(k, n), n));
    }
    Ok(rows)
}

fn alternate(rows: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    rows.into_iter()
        .enumerate()
        .map(|(k, row)| if k % 2 == 1 { row.into_iter().map(|c| c.neg()).collect() } else { row })
        .collect()
}

fn need_index(m: u32, least: u32) -> Result<()> {
    if m < least {
        return Err(Error::InvalidParam(format!("parameter m must be >= {least}, got {m}")));
    }
    Ok(())
}

/// Evaluate a closed form for `z ≤ zmax`, `0 ≤ q ≤ qmax`.
pub fn closed_form(form: &ClosedForm, zmax: usize, qmax: i64) -> Result<ZQSeries> {
    qmax_index(qmax)?;
    match form {
        ClosedForm::Pm(m) => distinct_sum(i64::from(*m), 1, false, zmax, qmax),
        ClosedForm::Cm(m) => {
            need_index(*m, 1)?;
            zq_reciprocal(&distinct_sum(i64::from(*m), 1, true, zmax, qmax)?)
        }
        ClosedForm::Rm(m) => {
            need_index(*m, 1)?;
            let m = i64::from(*m);
            let zm = zmax.saturating_sub(1);
            let num = distinct_sum(m, m, false, zm, qmax)?;
            let den = distinct_sum(m, 1, false, zm, qmax)?;
            Ok(zq_mul(&num, &zq_reciprocal(&den)?).times_z().restrict(zmax, qmax))
        }
        ClosedForm::HydraA(m) => {
            need_index(*m, 1)?;
            let zm = zmax.saturating_sub(1);
            let a = distinct_sum(i64::from(*m), 1, true, zm, qmax)?;
            let num = a.subs_zq(i64::from(*m) - 1);
            Ok(zq_mul(&num, &zq_reciprocal(&a)?).times_z().restrict(zmax, qmax))
        }
        ClosedForm::PS(s) => Ok(ZQSeries::from_rational_rows(ps_rows(s, zmax, qmax)?, qmax)),
        ClosedForm::CShat(s) => {
            let alt = ZQSeries::from_rational_rows(alternate(ps_rows(s, zmax, qmax)?), qmax);
            zq_reciprocal(&alt)
        }
        ClosedForm::LocalMinima => local_minima_product(zmax, qmax),
    }
}

fn local_minima_product(zmax: usize, qmax: i64) -> Result<ZQSeries> {
    let mut acc = ZQSeries::one(zmax, qmax);
    let one = TPoly::one();
    let minus = TPoly::constant(Rational::from(-1));
    for k in 1..=qmax {
        let mut num = ZQSeries::zero(zmax, 0, qmax);
        num.add_term(0, 0, &one);
        num.add_term(0, 1, &minus);
        num.add_term(1, k + 1, &minus);
        let mut den = num.clone();
        den.add_term(1, k + 1, &TPoly::t());
        den.add_term(1, k, &TPoly::t().neg_ref());
        acc = zq_mul(&acc, &zq_mul(&num, &zq_reciprocal(&den)?));
    }
    Ok(acc)
}

/// The worked special cases of the `𝒫_S` formula, each written as its own
/// expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PsSpecial {
    /// `S = [m, ∞)`.
    AtLeast(u32),
    /// `S = [m, n]`.
    Interval(u32, u32),
    /// `S = {m}`.
    Singleton(u32),
    /// `S = mℕ`.
    Multiples(u32),
    /// `S = mℕ₊`.
    PositiveMultiples(u32),
    /// `S = {l, l+m, l+2m, …}`.
    Residue(u32, u32),
    /// Odd rises.
    Odd,
}

impl PsSpecial {
    pub fn set(&self) -> SetSpec {
        match *self {
            PsSpecial::AtLeast(m) => SetSpec::at_least(m.into()),
            PsSpecial::Interval(m, n) => SetSpec::range(m.into(), n.into()),
            PsSpecial::Singleton(m) => SetSpec::finite([m.into()]),
            PsSpecial::Multiples(m) => SetSpec::multiples(m.into(), false),
            PsSpecial::PositiveMultiples(m) => SetSpec::multiples(m.into(), true),
            PsSpecial::Residue(l, m) => SetSpec::progression(l.into(), m.into(), false),
            PsSpecial::Odd => SetSpec::odd(),
        }
    }
}

/// `𝒫_S(z)` from the specialized formula for `case`.
pub fn ps_specialized(case: &PsSpecial, zmax: usize, qmax: i64) -> Result<ZQSeries> {
    let n = qmax_index(qmax)?;
    let modulus = |m: u32| -> Result<usize> {
        if m == 0 {
            return Err(Error::InvalidParam("modulus must be >= 1".into()));
        }
        Ok(m as usize)
    };
    let mut rows = vec![q_mono(0, n)];
    for k in 1..=zmax {
        let ki = k as i64;
        let row = match *case {
            PsSpecial::AtLeast(m) => q_mul(&q_mono(i64::from(m) * binom2(ki) + ki, n), &inv_pochhammer(1, k, n), n),
            PsSpecial::Interval(m, hi) => {
                if hi < m {
                    return Err(Error::InvalidParam(format!("empty interval [{m},{hi}]")));
                }
                let width = (hi - m + 1) as usize;
                let top = q_mul(&q_mono(i64::from(m) * binom2(ki) + ki, n), &pochhammer(width, k - 1, n), n);
                q_mul(&top, &inv_pochhammer(1, k, n), n)
            }
            PsSpecial::Singleton(m) => q_mul(&q_mono(i64::from(m) * binom2(ki) + ki, n), &q_geometric(k, n), n),
            PsSpecial::Multiples(m) => {
                let den = q_mul(&q_geometric(k, n), &inv_pochhammer(modulus(m)?, k - 1, n), n);
                q_mul(&q_mono(ki, n), &den, n)
            }
            PsSpecial::PositiveMultiples(m) => {
                let den = q_mul(&q_geometric(k, n), &inv_pochhammer(modulus(m)?, k - 1, n), n);
                q_mul(&q_mono(i64::from(m) * binom2(ki) + ki, n), &den, n)
            }
            PsSpecial::Residue(l, m) => {
                let den = q_mul(&q_geometric(k, n), &inv_pochhammer(modulus(m)?, k - 1, n), n);
                q_mul(&q_mono(i64::from(l) * binom2(ki) + ki, n), &den, n)
            }
            PsSpecial::Odd => {
                let den = q_mul(&q_geometric(k, n), &inv_pochhammer(2, k - 1, n), n);
                q_mul(&q_mono(binom2(ki + 1), n), &den, n)
            }
        };
        rows.push(row);
    }
    Ok(ZQSeries::from_rational_rows(rows, qmax))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::window::TruncationWindow;
    use crate::word::Word;

    fn r(n: i64) -> TPoly {
        TPoly::constant(Rational::from(n))
    }

    #[test]
    fn umbral_examples() {
        let w = TruncationWindow::new(3, 6);
        let x12 = Series::monomial(Word::from([1, 2]), Rational::one(), w);
        let u = umbral(&x12);
        assert_eq!(u.coefficient(2, 3).unwrap(), r(1));
        assert_eq!(u.table().len(), 1);
        let sigma1 = Series::from_terms((1..=6).map(|k| (Word::letter(k), Rational::one())), w);
        let u = umbral(&sigma1);
        for q in 1..=6 {
            assert_eq!(u.coefficient(1, q).unwrap(), r(1));
        }
        assert_eq!(u.coefficient(1, 0).unwrap(), r(0));
        assert!(u.coefficient(1, 7).is_err());
    }

    #[test]
    fn umbral_bounds_with_negative_floor() {
        let w = TruncationWindow::with_floor(3, 5, -1);
        assert_eq!(umbral_bounds(&w), (3, -3, 3));
        let s = Series::monomial(Word::from([-1, -1]), Rational::one(), w);
        assert_eq!(umbral(&s).coefficient(2, -2).unwrap(), r(1));
        assert!(umbral_within(&s, 3, 4).is_err());
    }

    #[test]
    fn reciprocal_examples() {
        let mut a = ZQSeries::one(4, 6);
        a.add_term(1, 1, &r(-1));
        let inv = zq_reciprocal(&a).unwrap();
        let mut geo = ZQSeries::zero(4, 0, 6);
        for k in 0..=4 {
            geo.add_term(k, k as i64, &r(1));
        }
        assert_eq!(inv, geo);
        assert_eq!(zq_mul(&a, &inv), ZQSeries::one(4, 6));
        let z = ZQSeries::monomial(1, 0, r(1), 2, 3);
        let q = ZQSeries::monomial(0, 1, r(1), 2, 3);
        assert_eq!(zq_mul(&z, &q), ZQSeries::monomial(1, 1, r(1), 2, 3));
        let bad = ZQSeries::monomial(1, 0, r(1), 2, 3);
        assert!(zq_reciprocal(&bad).is_err());
    }

    #[test]
    fn substitution_shifts_q() {
        let mut a = ZQSeries::zero(2, 0, 5);
        a.add_term(2, 1, &r(3));
        let s = a.subs_zq(2);
        assert_eq!(s.coefficient(2, 5).unwrap(), r(3));
        let s = a.subs_zq(-1);
        assert_eq!((s.qmin(), s.qmax()), (-2, 3));
        assert_eq!(s.coefficient(2, -1).unwrap(), r(3));
    }

    #[test]
    fn pm_first_row() {
        let p = closed_form(&ClosedForm::Pm(2), 3, 12).unwrap();
        assert_eq!(p.coefficient(0, 0).unwrap(), r(1));
        for q in 1..=12 {
            assert_eq!(p.coefficient(1, q).unwrap(), r(1));
        }
    }

    #[test]
    fn local_minima_single_part() {
        let c = closed_form(&ClosedForm::LocalMinima, 3, 10).unwrap();
        for n in 1..=10 {
            assert_eq!(c.coefficient(1, n).unwrap(), TPoly::t(), "q^{n}");
        }
        // compositions of 3 with two parts: (1,2) one minimum, (2,1) two
        let c3 = c.coefficient(2, 3).unwrap();
        assert_eq!(c3, TPoly::new(vec![Rational::zero(), Rational::one(), Rational::one()]));
    }

    #[test]
    fn ps_interval_matches_pm() {
        let s = SetSpec::at_least(2);
        assert_eq!(closed_form(&ClosedForm::PS(s), 5, 20).unwrap(), closed_form(&ClosedForm::Pm(2), 5, 20).unwrap());
    }

    #[test]
    fn sk_factorial_examples() {
        let m = 3;
        let f = sk_factorial(&SetSpec::finite([m]), 4, 40).unwrap();
        let e = (m - 1) * binom2(5);
        for q in f.qmin..=f.qmax {
            assert_eq!(f.coeff(q), if q == e { Rational::one() } else { Rational::zero() });
        }
        // mℕ: (𝒮_{k−1})! = q^{−C(k,2)} / (q^m;q^m)_{k−1}
        let k = 4;
        let f = sk_factorial(&SetSpec::multiples(2, false), k - 1, 20).unwrap();
        let expect = inv_pochhammer(2, k - 1, 30);
        for q in -binom2(k as i64)..=20 {
            assert_eq!(f.coeff(q), expect[(q + binom2(k as i64)) as usize], "q^{q}");
        }
        // [m,n]: 𝒮ₖ = q^{k(m−1)}(1−q^{k(n−m+1)})/(1−qᵏ)
        let (lo, hi) = (2i64, 4i64);
        let single = sk_factorial(&SetSpec::range(lo, hi), 1, 30).unwrap();
        let f1 = q_mul(&q_mono(lo - 1, 30), &q_mul(&pochhammer(3, 1, 30), &q_geometric(1, 30), 30), 30);
        for q in 0..=30 {
            assert_eq!(single.coeff(q), f1[q as usize]);
        }
        assert_eq!(sk_factorial(&SetSpec::odd(), 0, 5).unwrap().coeff(0), Rational::one());
    }

    #[test]
    fn specialized_forms_match_generic() {
        for case in [
            PsSpecial::AtLeast(3),
            PsSpecial::Interval(1, 3),
            PsSpecial::Singleton(2),
            PsSpecial::Multiples(2),
            PsSpecial::PositiveMultiples(2),
            PsSpecial::Residue(1, 3),
            PsSpecial::Odd,
        ] {
            let generic = closed_form(&ClosedForm::PS(case.set()), 6, 24).unwrap();
            assert_eq!(ps_specialized(&case, 6, 24).unwrap(), generic, "{case:?}");
        }
    }

    #[test]
    fn tables_are_ordered() {
        let c = closed_form(&ClosedForm::LocalMinima, 2, 3).unwrap();
        let tsv = c.to_tsv();
        assert!(tsv.starts_with("z\tt\tq\tcoeff\n0\t0\t0\t1\n1\t1\t1\t1\n"));
        let rows = c.table();
        let mut sorted = rows.clone();
        sorted.sort_by_key(|x| (x.0, x.1, x.2));
        assert_eq!(rows, sorted);
        assert!(c.to_json().starts_with(r#"{"qmax":3,"qmin":0,"terms":[{"coeff":"1","q":0,"t":0,"z":0}"#));
    }
}
