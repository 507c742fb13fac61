//! Finite fields `F_q`, `q = p^m`, in the polynomial basis.
//!
//! An element is stored as a `u32` index: the coordinate vector
//! `(c_0, ..., c_{m-1})` over `F_p` of `c_0 + c_1 t + ... + c_{m-1} t^{m-1}`
//! encoded as `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`. For prime fields the index
//! is the residue itself. All orderings of field elements in this crate use
//! this index.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

/// Largest order for which log/exp tables are built.
const TABLE_LIMIT: u32 = 1 << 16;

#[derive(Debug)]
struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

#[derive(Debug)]
struct Inner {
    p: u32,
    m: u32,
    q: u32,
    /// Monic modulus over F_p, lowest degree first, length m + 1. Empty for m = 1.
    modulus: Vec<u32>,
    tables: Option<Tables>,
}

/// The field `F_q`. Cheap to clone; clones share the same tables.
///
/// Two contexts are equal when they have the same characteristic, degree and
/// modulus.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.m == other.0.m && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.m == 1 {
            write!(f, "F_{}", self.0.p)
        } else {
            write!(f, "F_{}^{} mod {:?}", self.0.p, self.0.m, self.0.modulus)
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

// Raw polynomial helpers over F_p, coefficients lowest first.

fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn inv_mod(a: u32, p: u32) -> u32 {
    pow_mod(a as u64, (p - 2) as u64, p as u64) as u32
}

fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Remainder of `f` modulo `g` over F_p; `g` nonzero.
fn prime_poly_rem(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    let mut r = f.to_vec();
    trim(&mut r);
    let dg = g.len() - 1;
    let lead_inv = inv_mod(g[dg], p) as u64;
    while r.len() > dg {
        let shift = r.len() - 1 - dg;
        let c = r[r.len() - 1] as u64 * lead_inv % p as u64;
        for (i, &gi) in g.iter().enumerate() {
            let sub = c * gi as u64 % p as u64;
            r[shift + i] = ((r[shift + i] as u64 + p as u64 - sub) % p as u64) as u32;
        }
        trim(&mut r);
    }
    r
}

/// Monic polynomial of degree `deg` whose lower coefficients are the base-p
/// digits of `code`.
fn monic_from_code(mut code: u64, deg: u32, p: u32) -> Vec<u32> {
    let mut v = Vec::with_capacity(deg as usize + 1);
    for _ in 0..deg {
        v.push((code % p as u64) as u32);
        code /= p as u64;
    }
    v.push(1);
    v
}

/// Irreducibility over F_p by trial division by every monic polynomial of
/// degree `1..=deg/2`.
pub(crate) fn is_irreducible_prime(f: &[u32], p: u32) -> bool {
    let mut f = f.to_vec();
    trim(&mut f);
    if f.len() < 2 {
        return false;
    }
    let deg = (f.len() - 1) as u32;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d);
        for code in 0..count {
            let g = monic_from_code(code, d, p);
            if prime_poly_rem(&f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Default moduli keyed by `(p, m)`.
type ModulusCache = Mutex<HashMap<(u32, u32), Vec<u32>>>;

fn default_modulus_cache() -> &'static ModulusCache {
    static CACHE: OnceLock<ModulusCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The default modulus for `F_{p^m}`: the monic irreducible of degree `m` whose
/// lower coefficients have the smallest integer encoding `c_0 + c_1 p + ...`.
pub fn default_irreducible(p: u32, m: u32) -> Result<Vec<u32>> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if m == 0 {
        return Err(Error::BadField("extension degree must be at least 1".into()));
    }
    if let Some(v) = default_modulus_cache().lock().unwrap().get(&(p, m)) {
        return Ok(v.clone());
    }
    let count = (p as u64).checked_pow(m).ok_or_else(|| Error::BadField(format!("{p}^{m} is too large")))?;
    for code in 0..count {
        let f = monic_from_code(code, m, p);
        if m > 1 && f[0] == 0 {
            continue;
        }
        if is_irreducible_prime(&f, p) {
            default_modulus_cache().lock().unwrap().insert((p, m), f.clone());
            return Ok(f);
        }
    }
    Err(Error::Internal(format!("no irreducible of degree {m} over F_{p}")))
}

impl Field {
    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        Ok(Field(Arc::new(Inner { p, m: 1, q: p, modulus: Vec::new(), tables: None })))
    }

    /// `F_{p^m}` with the default modulus.
    pub fn new(p: u32, m: u32) -> Result<Field> {
        if m == 1 {
            return Field::prime(p);
        }
        let modulus = default_irreducible(p, m)?;
        Field::with_modulus(p, &modulus)
    }

    /// `F_{p^m}` with a caller-supplied monic irreducible modulus of degree `m`
    /// (coefficients lowest first). A degree-1 modulus gives the prime field.
    pub fn with_modulus(p: u32, modulus: &[u32]) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        let mut modulus = modulus.to_vec();
        trim(&mut modulus);
        if modulus.len() < 2 {
            return Err(Error::BadField("modulus must have degree at least 1".into()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::BadField("modulus coefficient out of range".into()));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::BadField("modulus must be monic".into()));
        }
        let m = (modulus.len() - 1) as u32;
        if m == 1 {
            return Field::prime(p);
        }
        let q = (p as u64)
            .checked_pow(m)
            .filter(|&q| q <= u32::MAX as u64)
            .ok_or_else(|| Error::BadField(format!("{p}^{m} does not fit in 32 bits")))? as u32;
        if !is_irreducible_prime(&modulus, p) {
            return Err(Error::ReducibleModulus { p });
        }
        let mut inner = Inner { p, m, q, modulus, tables: None };
        if q <= TABLE_LIMIT {
            inner.tables = Some(build_tables(&inner));
        }
        Ok(Field(Arc::new(inner)))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn m(&self) -> u32 {
        self.0.m
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    /// Modulus coefficients (lowest first), `None` for prime fields.
    pub fn modulus(&self) -> Option<&[u32]> {
        if self.0.m == 1 {
            None
        } else {
            Some(&self.0.modulus)
        }
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.m == 1
    }

    #[inline]
    pub fn zero(&self) -> u32 {
        0
    }

    #[inline]
    pub fn one(&self) -> u32 {
        1
    }

    /// Validates a raw element index.
    pub fn check(&self, a: u64) -> Result<u32> {
        if a < self.0.q as u64 {
            Ok(a as u32)
        } else {
            Err(Error::ElementOutOfRange { value: a, q: self.0.q })
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> u32 {
        v.rem_euclid(self.0.p as i64) as u32
    }

    pub fn coords(&self, mut a: u32) -> Vec<u32> {
        let p = self.0.p;
        (0..self.0.m)
            .map(|_| {
                let c = a % p;
                a /= p;
                c
            })
            .collect()
    }

    pub fn from_coords(&self, coords: &[u32]) -> Result<u32> {
        if coords.len() > self.0.m as usize {
            return Err(Error::LengthMismatch { expected: self.0.m as usize, found: coords.len() });
        }
        let mut v: u64 = 0;
        for &c in coords.iter().rev() {
            if c >= self.0.p {
                return Err(Error::ElementOutOfRange { value: c as u64, q: self.0.p });
            }
            v = v * self.0.p as u64 + c as u64;
        }
        Ok(v as u32)
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let p = self.0.p;
        if self.0.m == 1 {
            return ((a as u64 + b as u64) % p as u64) as u32;
        }
        if p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.0.m {
            let d = (a % p + b % p) % p;
            out += d * place;
            a /= p;
            b /= p;
            place = place.wrapping_mul(p);
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        let p = self.0.p;
        if self.0.m == 1 {
            return if a == 0 { 0 } else { p - a };
        }
        if p == 2 {
            return a;
        }
        let mut a = a;
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.0.m {
            let d = a % p;
            out += ((p - d) % p) * place;
            a /= p;
            place = place.wrapping_mul(p);
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.0.m == 1 {
            return ((a as u64 * b as u64) % self.0.p as u64) as u32;
        }
        match &self.0.tables {
            Some(t) => t.exp[(t.log[a as usize] + t.log[b as usize]) as usize],
            None => slow_mul(&self.0, a, b),
        }
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::InversionOfZero);
        }
        if self.0.m == 1 {
            return Ok(inv_mod(a, self.0.p));
        }
        match &self.0.tables {
            Some(t) => {
                let order = self.0.q - 1;
                Ok(t.exp[((order - t.log[a as usize]) % order) as usize])
            }
            None => Ok(self.pow(a, self.0.q as u64 - 2)),
        }
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut acc = 1u32;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Iterator over all elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.0.q
    }

    /// Checked handle for a raw element.
    pub fn element(&self, value: u64) -> Result<FieldElement> {
        Ok(FieldElement { field: self.clone(), value: self.check(value)? })
    }

    /// Human-readable rendering: integers for prime fields, `[c0 c1 ...]` otherwise.
    pub fn format(&self, a: u32) -> String {
        if self.0.m == 1 {
            a.to_string()
        } else {
            let parts: Vec<String> = self.coords(a).iter().map(|c| c.to_string()).collect();
            format!("[{}]", parts.join(" "))
        }
    }
}

fn slow_mul(f: &Inner, a: u32, b: u32) -> u32 {
    let p = f.p as u64;
    let m = f.m as usize;
    let digits = |mut x: u32| -> Vec<u64> {
        (0..m)
            .map(|_| {
                let d = (x % f.p) as u64;
                x /= f.p;
                d
            })
            .collect()
    };
    let (da, db) = (digits(a), digits(b));
    let mut prod = vec![0u64; 2 * m - 1];
    for (i, &x) in da.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // reduce by the monic modulus from the top down
    for top in (m..prod.len()).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        prod[top] = 0;
        for k in 0..m {
            let sub = c * f.modulus[k] as u64 % p;
            let idx = top - m + k;
            prod[idx] = (prod[idx] + p - sub) % p;
        }
    }
    let mut v = 0u64;
    for &c in prod[..m].iter().rev() {
        v = v * p + c;
    }
    v as u32
}

fn build_tables(inner: &Inner) -> Tables {
    let q = inner.q;
    let order = q - 1;
    // first element whose powers reach every nonzero element
    let mut gen = None;
    'search: for g in 2..q {
        let mut x = 1u32;
        for _ in 1..order {
            x = slow_mul(inner, x, g);
            if x == 1 {
                continue 'search;
            }
        }
        gen = Some(g);
        break;
    }
    let g = gen.expect("multiplicative group of a finite field is cyclic");
    let mut exp = vec![0u32; 2 * order as usize];
    let mut log = vec![0u32; q as usize];
    let mut x = 1u32;
    for k in 0..order {
        exp[k as usize] = x;
        exp[(k + order) as usize] = x;
        log[x as usize] = k;
        x = slow_mul(inner, x, g);
    }
    Tables { exp, log }
}

/// Arithmetic operation selector for [`FieldElement::apply`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Inv,
    Neg,
    Pow,
}

/// Second operand of [`FieldElement::apply`].
#[derive(Debug, Clone)]
pub enum Operand {
    Element(FieldElement),
    Integer(u64),
    None,
}

/// A field element bound to its field. Mixing elements of different fields
/// is reported as [`Error::ContextMismatch`].
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    value: u32,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.format(self.value))
    }
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn coords(&self) -> Vec<u32> {
        self.field.coords(self.value)
    }

    fn same(&self, other: &FieldElement) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    fn wrap(&self, value: u32) -> FieldElement {
        FieldElement { field: self.field.clone(), value }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same(other)?;
        Ok(self.wrap(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same(other)?;
        Ok(self.wrap(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same(other)?;
        Ok(self.wrap(self.field.mul(self.value, other.value)))
    }

    pub fn neg(&self) -> FieldElement {
        self.wrap(self.field.neg(self.value))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        Ok(self.wrap(self.field.inv(self.value)?))
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        self.wrap(self.field.pow(self.value, e))
    }

    /// Dispatches one of the arithmetic operations on checked operands.
    pub fn apply(&self, op: FieldOp, rhs: Operand) -> Result<FieldElement> {
        match (op, rhs) {
            (FieldOp::Add, Operand::Element(b)) => self.add(&b),
            (FieldOp::Sub, Operand::Element(b)) => self.sub(&b),
            (FieldOp::Mul, Operand::Element(b)) => self.mul(&b),
            (FieldOp::Pow, Operand::Integer(e)) => Ok(self.pow(e)),
            (FieldOp::Inv, _) => self.inv(),
            (FieldOp::Neg, _) => Ok(self.neg()),
            (op, _) => Err(Error::Internal(format!("operand kind does not fit {op:?}"))),
        }
    }
}
