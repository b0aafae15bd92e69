//! Shared, immutable variable lists.

use std::fmt;
use std::sync::Arc;

/// An ordered list of variable names, shared cheaply between polynomials.
///
/// Equality is by content, not by pointer, so two independently built lists
/// over the same names are interchangeable.
#[derive(Clone, Eq)]
pub struct VarList(Arc<Vec<String>>);

impl VarList {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        VarList(Arc::new(names.into_iter().map(Into::into).collect()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    /// Standard list z1..zn.
    pub fn z(n: usize) -> Self {
        VarList::new((1..=n).map(|i| format!("z{}", i)))
    }

    /// Standard list x1..xm.
    pub fn x(m: usize) -> Self {
        VarList::new((1..=m).map(|i| format!("x{}", i)))
    }

    /// Image-side list y1..yn followed by `t`.
    pub fn y_t(n: usize) -> Self {
        let mut v: Vec<String> = (1..=n).map(|i| format!("y{}", i)).collect();
        v.push("t".to_string());
        VarList(Arc::new(v))
    }

    /// Extend by extra names (used by auxiliary-variable constructions).
    pub fn extended<S: Into<String>>(&self, extra: impl IntoIterator<Item = S>) -> Self {
        let mut v = self.0.as_ref().clone();
        v.extend(extra.into_iter().map(Into::into));
        VarList(Arc::new(v))
    }
}

impl PartialEq for VarList {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl std::hash::Hash for VarList {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl fmt::Debug for VarList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.join(","))
    }
}

impl fmt::Display for VarList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equality_is_by_content() {
        let a = VarList::new(["x", "y"]);
        let b = VarList::new(["x", "y"]);
        let c = VarList::new(["y", "x"]);
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_eq!(a.index_of("y"), Some(1));
        assert_eq!(a.index_of("w"), None);
    }
}
