/// Outcome of checking a universal property ("for all pairs of sets ...").
///
/// Exact checks answer `Holds` or `Violated`. Sampling checks can only answer
/// `NoViolationFound` or `Violated`: not finding a counterexample is not a
/// proof.
#[derive(Clone, Debug, PartialEq)]
pub enum Verdict<W> {
    Holds,
    NoViolationFound { samples: usize },
    Violated(W),
}

impl<W> Verdict<W> {
    pub fn is_violated(&self) -> bool {
        matches!(self, Verdict::Violated(_))
    }

    /// `Holds` or `NoViolationFound`.
    pub fn passed(&self) -> bool {
        !self.is_violated()
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Violated(w) => Some(w),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Holds => "pass",
            Verdict::NoViolationFound { .. } => "sampled-pass",
            Verdict::Violated(_) => "fail",
        }
    }

    pub fn map_witness<V>(self, f: impl FnOnce(W) -> V) -> Verdict<V> {
        match self {
            Verdict::Holds => Verdict::Holds,
            Verdict::NoViolationFound { samples } => Verdict::NoViolationFound { samples },
            Verdict::Violated(w) => Verdict::Violated(f(w)),
        }
    }
}
