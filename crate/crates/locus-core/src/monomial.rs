//! Monomials (exponent vectors) and monomial orderings.

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;
use std::cmp::Ordering;

/// Exponent vector of fixed length (one entry per ambient variable).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: SmallVec<[u32; 6]>,
}

impl Monomial {
    pub fn new(exps: impl Into<SmallVec<[u32; 6]>>) -> Self {
        Monomial { exps: exps.into() }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
        }
    }

    /// x_i as a monomial.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[i] = 1;
        m
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a.checked_add(*b).expect("monomial exponent overflow"))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .map(|a| a.checked_mul(k).expect("monomial exponent overflow"))
                .collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// other / self; caller must ensure divisibility.
    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial {
            exps: other.exps.iter().zip(&self.exps).map(|(b, a)| b - a).collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.min(b))
                .collect(),
        }
    }

    pub fn is_coprime_with(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Support restricted to a variable subset: true when every positive
    /// exponent sits inside `set`.
    pub fn supported_on(&self, set: &[bool]) -> bool {
        self.exps.iter().enumerate().all(|(i, &e)| e == 0 || set[i])
    }

    /// Drop the listed variable positions (for ring homomorphisms that
    /// forget variables).
    pub fn project_out(&self, drop: &[bool]) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .enumerate()
                .filter(|(i, _)| !drop[*i])
                .map(|(_, &e)| e)
                .collect(),
        }
    }
}

/// `Ord` uses ascending degrevlex; this is the canonical storage order for
/// polynomial term maps and is unrelated to the engine orderings below.
impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        degrevlex(self.exps(), other.exps())
    }
}

/// Degrevlex on raw exponent slices: higher total degree wins; among equal
/// degrees the monomial with the *smaller* exponent at the last differing
/// position wins.
pub(crate) fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        ord => return ord,
    }
    for i in (0..a.len()).rev() {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => {}
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

fn lex(a: &[u32], b: &[u32]) -> Ordering {
    for i in 0..a.len() {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => {}
            ord => return ord,
        }
    }
    Ordering::Equal
}

/// Monomial orderings used by the basis engines.
///
/// The three global kinds are well-orderings with 1 smallest; the local kind
/// ranks lower total degree higher (1 is largest), as required for standard
/// bases at the origin.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic.
    DegRevLex,
    /// Pure lexicographic.
    Lex,
    /// Elimination order: degrevlex on the first `front` variables, ties
    /// broken by degrevlex on the rest. Eliminates the front block.
    Block { front: usize },
    /// Antigraded degrevlex (local): smaller total degree is larger, ties
    /// broken as in degrevlex.
    AntiDegRevLex,
}

impl MonomialOrder {
    pub fn is_global(&self) -> bool {
        !matches!(self, MonomialOrder::AntiDegRevLex)
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.nvars(), b.nvars());
        let (ae, be) = (a.exps(), b.exps());
        match self {
            MonomialOrder::DegRevLex => degrevlex(ae, be),
            MonomialOrder::Lex => lex(ae, be),
            MonomialOrder::Block { front } => {
                let k = *front;
                match degrevlex(&ae[..k], &be[..k]) {
                    Ordering::Equal => degrevlex(&ae[k..], &be[k..]),
                    ord => ord,
                }
            }
            MonomialOrder::AntiDegRevLex => {
                let da: u32 = ae.iter().sum();
                let db: u32 = be.iter().sum();
                match db.cmp(&da) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
                for i in (0..ae.len()).rev() {
                    match ae[i].cmp(&be[i]) {
                        Ordering::Equal => {}
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                }
                Ordering::Equal
            }
        }
    }
}
