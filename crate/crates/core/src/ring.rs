//! Ring descriptions and exponent layout.
//!
//! A ring is a Weyl algebra in `d + n` variable pairs, optionally extended by a
//! central variable `t0` or `h`, and optionally by further commuting central
//! parameters (used for the `v`, `w` and `s` variables of the b-function
//! machinery).
//!
//! Exponent vectors are stored flat in the order
//! `t_1..t_d, x_1..x_n, dt_1..dt_d, dx_1..dx_n, [t0|h], params...`.

use std::fmt;
use std::sync::Arc;

use crate::error::{DmodError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Extension {
    None,
    T0,
    H,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingSpec {
    pub d: usize,
    pub n: usize,
    pub extension: Extension,
    /// Names of the position variables (`t` block then `x` block).
    pub pos_names: Vec<String>,
    /// Names of extra central parameters.
    pub params: Vec<String>,
}

pub type Ring = Arc<RingSpec>;

impl RingSpec {
    pub fn new(d: usize, n: usize, extension: Extension) -> RingSpec {
        let mut pos_names = Vec::with_capacity(d + n);
        for i in 1..=d {
            pos_names.push(format!("t{i}"));
        }
        for i in 1..=n {
            pos_names.push(format!("x{i}"));
        }
        RingSpec { d, n, extension, pos_names, params: Vec::new() }
    }

    pub fn weyl(d: usize, n: usize) -> Ring {
        Arc::new(RingSpec::new(d, n, Extension::None))
    }

    pub fn with_names(mut self, names: Vec<String>) -> RingSpec {
        assert_eq!(names.len(), self.d + self.n);
        self.pos_names = names;
        self
    }

    pub fn with_params(mut self, params: Vec<String>) -> RingSpec {
        self.params = params;
        self
    }

    pub fn with_extension(&self, extension: Extension) -> RingSpec {
        RingSpec { extension, ..self.clone() }
    }

    /// The ring with the same pairs and extension but without parameters.
    pub fn without_params(&self) -> RingSpec {
        RingSpec { params: Vec::new(), ..self.clone() }
    }

    pub fn into_ring(self) -> Ring {
        Arc::new(self)
    }

    /// Number of variable pairs `d + n`.
    #[inline]
    pub fn pairs(&self) -> usize {
        self.d + self.n
    }

    #[inline]
    pub fn has_lambda(&self) -> bool {
        self.extension != Extension::None
    }

    /// Length of a flat exponent vector.
    #[inline]
    pub fn nvars(&self) -> usize {
        2 * self.pairs() + usize::from(self.has_lambda()) + self.params.len()
    }

    #[inline]
    pub fn t(&self, i: usize) -> usize {
        i
    }

    #[inline]
    pub fn x(&self, i: usize) -> usize {
        self.d + i
    }

    #[inline]
    pub fn dt(&self, i: usize) -> usize {
        self.pairs() + i
    }

    #[inline]
    pub fn dx(&self, i: usize) -> usize {
        self.pairs() + self.d + i
    }

    /// Index of the `t0` / `h` exponent.
    #[inline]
    pub fn lambda(&self) -> Option<usize> {
        self.has_lambda().then(|| 2 * self.pairs())
    }

    #[inline]
    pub fn param(&self, j: usize) -> usize {
        2 * self.pairs() + usize::from(self.has_lambda()) + j
    }

    /// Index of the `h` exponent when the commutator is `h^2`.
    #[inline]
    pub fn h_index(&self) -> Option<usize> {
        (self.extension == Extension::H).then(|| 2 * self.pairs())
    }

    pub fn lambda_name(&self) -> &'static str {
        match self.extension {
            Extension::None => "",
            Extension::T0 => "t0",
            Extension::H => "h",
        }
    }

    /// Printable name of every exponent slot.
    pub fn var_names(&self) -> Vec<String> {
        let mut v: Vec<String> = self.pos_names.clone();
        v.extend(self.pos_names.iter().map(|s| format!("d{s}")));
        if self.has_lambda() {
            v.push(self.lambda_name().to_string());
        }
        v.extend(self.params.iter().cloned());
        v
    }

    pub fn check_same(&self, other: &RingSpec) -> Result<()> {
        if self != other {
            return Err(DmodError::RingMismatch(format!("{self} vs {other}")));
        }
        Ok(())
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A(d={}, n={}", self.d, self.n)?;
        match self.extension {
            Extension::None => {}
            Extension::T0 => write!(f, ", t0")?,
            Extension::H => write!(f, ", h")?,
        }
        if !self.params.is_empty() {
            write!(f, ", [{}]", self.params.join(","))?;
        }
        write!(f, ")")
    }
}
