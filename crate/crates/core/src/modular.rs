//! Arithmetic in `Z_n` and its unit group: Euler totient, multiplicative
//! orders, order-3 units and the canonical (n, a) pairs that parametrise the
//! graph family, plus the audit of the thirteen forbidden linear relations
//! between a and b = a^2.
//!
//! All values are reduced to `{0, ..., n-1}`. Moduli are plain `u64`;
//! intermediate products go through `u128` so anything in the 2^63 range is
//! safe. No factorisation machinery beyond trial division is used — the
//! moduli of interest here are tiny.

use std::fmt;

/// Errors produced by the unit-group operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModularError {
    /// The modulus was zero (or too small for the requested operation).
    InvalidModulus(u64),
    /// `x` is not a unit mod `n`.
    NotCoprime { x: u64, n: u64 },
    /// `(n, a)` is not an admissible parameter pair for the graph family.
    InadmissiblePair { n: u64, a: u64, reason: &'static str },
}

impl fmt::Display for ModularError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModularError::InvalidModulus(n) => write!(f, "invalid modulus {n}"),
            ModularError::NotCoprime { x, n } => write!(f, "{x} is not a unit mod {n}"),
            ModularError::InadmissiblePair { n, a, reason } => {
                write!(f, "({n}, {a}) is not admissible: {reason}")
            }
        }
    }
}

impl std::error::Error for ModularError {}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `x * y mod n` without overflow.
#[inline]
pub fn mul_mod(x: u64, y: u64, n: u64) -> u64 {
    ((x as u128 * y as u128) % n as u128) as u64
}

/// `x^e mod n` by square-and-multiply.
pub fn pow_mod(mut x: u64, mut e: u64, n: u64) -> u64 {
    assert!(n > 0, "pow_mod: zero modulus");
    if n == 1 {
        return 0;
    }
    let mut acc = 1u64;
    x %= n;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, x, n);
        }
        x = mul_mod(x, x, n);
        e >>= 1;
    }
    acc
}

/// Euler's totient: the number of `k` in `1..=n` coprime to `n`.
///
/// Computed by trial-division factorisation. Rejects `n = 0`.
pub fn euler_phi(n: u64) -> Result<u64, ModularError> {
    if n == 0 {
        return Err(ModularError::InvalidModulus(0));
    }
    let mut m = n;
    let mut phi = n;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            phi -= phi / p;
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        phi -= phi / m;
    }
    Ok(phi)
}

/// The smallest `k >= 1` with `x^k = 1 (mod n)`.
///
/// Requires `gcd(x, n) = 1`. For `n = 1` the unique residue has order 1.
pub fn multiplicative_order(x: u64, n: u64) -> Result<u64, ModularError> {
    if n == 0 {
        return Err(ModularError::InvalidModulus(0));
    }
    if n == 1 {
        return Ok(1);
    }
    let x = x % n;
    if gcd(x, n) != 1 {
        return Err(ModularError::NotCoprime { x, n });
    }
    let mut acc = x;
    let mut k = 1u64;
    while acc != 1 {
        acc = mul_mod(acc, x, n);
        k += 1;
    }
    Ok(k)
}

/// All units `a` with `a^3 = 1 (mod n)` and `a != 1`, sorted ascending.
///
/// Exhaustive scan over `2..n-1`; the list is empty exactly when
/// `3` does not divide `phi(n)`.
pub fn order3_elements(n: u64) -> Result<Vec<u64>, ModularError> {
    if n < 2 {
        return Err(ModularError::InvalidModulus(n));
    }
    let mut out = Vec::new();
    for a in 2..n {
        if gcd(a, n) == 1 && pow_mod(a, 3, n) == 1 {
            out.push(a);
        }
    }
    Ok(out)
}

/// Bookkeeping for the unit group of `Z_n`: the modulus, its totient and the
/// units of order 3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitGroupContext {
    pub n: u64,
    pub phi: u64,
    pub order3: Vec<u64>,
}

impl UnitGroupContext {
    pub fn new(n: u64) -> Result<Self, ModularError> {
        if n < 2 {
            return Err(ModularError::InvalidModulus(n));
        }
        Ok(UnitGroupContext {
            n,
            phi: euler_phi(n)?,
            order3: order3_elements(n)?,
        })
    }
}

/// A canonical parameter pair for the family: `a` an order-3 unit mod `n`,
/// `b = a^2 mod n` its inverse, oriented so that `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AdmissiblePair {
    pub n: u64,
    pub a: u64,
    pub b: u64,
}

/// Checks that `a` is an order-3 unit mod `n` (either orientation).
pub fn is_order3_unit(n: u64, a: u64) -> bool {
    n >= 2 && a % n != 1 && gcd(a % n, n) == 1 && pow_mod(a, 3, n) == 1
}

/// One canonical pair per inverse-pair `{a, a^2}`, sorted by `a`.
///
/// Covers every order-3 unit of `Z_n`; empty when there is none (in
/// particular for all `n < 7`).
pub fn admissible_pairs(n: u64) -> Result<Vec<AdmissiblePair>, ModularError> {
    if n < 2 {
        return Err(ModularError::InvalidModulus(n));
    }
    let mut pairs = Vec::new();
    for a in order3_elements(n)? {
        let b = mul_mod(a, a, n);
        if a < b {
            pairs.push(AdmissiblePair { n, a, b });
        }
    }
    Ok(pairs)
}

/// The thirteen linear expressions in `(a, b)` whose vanishing mod `n` is
/// audited, in their fixed order (`relation_id` 1 through 13).
pub const RELATION_NAMES: [&str; 13] = [
    "2a-4b",
    "2a+4b",
    "4a-2b",
    "4a+2b",
    "2a-2b",
    "2a+2b",
    "4a+4",
    "2a+6",
    "2(a+b-1)",
    "2(b-a+1)",
    "2(a-b+1)",
    "2(a+b+2)",
    "2(a-b-2)",
];

/// Outcome of evaluating one of the thirteen relations mod `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationAuditEntry {
    pub relation_id: u8,
    pub holds: bool,
    pub lhs_value: u64,
}

/// Evaluates the thirteen relation left-hand sides mod `n` for a canonical
/// admissible pair and reports which vanish.
///
/// The expressions are oriented for `a < b`; a pair given the other way
/// round is rejected, as are parameters that are not order-3 units.
pub fn audit_relations(n: u64, a: u64) -> Result<Vec<RelationAuditEntry>, ModularError> {
    if !is_order3_unit(n, a) {
        return Err(ModularError::InadmissiblePair {
            n,
            a,
            reason: "a is not an order-3 unit mod n",
        });
    }
    let b = mul_mod(a, a, n);
    if a > b {
        return Err(ModularError::InadmissiblePair {
            n,
            a,
            reason: "pair is not canonically oriented (need a < a^2 mod n)",
        });
    }
    // Everything below is a Z-linear form in a, b and 1; reduce term by term.
    let add = |x: u64, y: u64| (x + y) % n;
    let sub = |x: u64, y: u64| (x + n - y % n) % n;
    let lhs = [
        sub(mul_mod(2, a, n), mul_mod(4, b, n)),
        add(mul_mod(2, a, n), mul_mod(4, b, n)),
        sub(mul_mod(4, a, n), mul_mod(2, b, n)),
        add(mul_mod(4, a, n), mul_mod(2, b, n)),
        sub(mul_mod(2, a, n), mul_mod(2, b, n)),
        add(mul_mod(2, a, n), mul_mod(2, b, n)),
        add(mul_mod(4, a, n), 4 % n),
        add(mul_mod(2, a, n), 6 % n),
        mul_mod(2, sub(add(a, b % n), 1), n),
        mul_mod(2, add(sub(b, a), 1), n),
        mul_mod(2, add(sub(a, b), 1), n),
        mul_mod(2, add(add(a, b % n), 2), n),
        mul_mod(2, sub(sub(a, b), 2), n),
    ];
    Ok(lhs
        .iter()
        .enumerate()
        .map(|(i, &v)| RelationAuditEntry {
            relation_id: (i + 1) as u8,
            holds: v == 0,
            lhs_value: v,
        })
        .collect())
}
