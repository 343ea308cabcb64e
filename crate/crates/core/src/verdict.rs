use std::fmt;

/// Three-valued outcome of a bounded decision procedure.
///
/// `No` is only produced when a fixpoint was exhausted; running out of
/// budget gives `Unknown`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Outcome {
    Yes,
    No,
    Unknown,
}

impl Outcome {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Outcome::Yes
        } else {
            Outcome::No
        }
    }

    pub fn is_yes(self) -> bool {
        self == Outcome::Yes
    }

    /// Process exit code for the command line front end.
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Yes => 0,
            Outcome::No => 1,
            Outcome::Unknown => 2,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Yes => "YES",
            Outcome::No => "NO",
            Outcome::Unknown => "UNKNOWN",
        })
    }
}
