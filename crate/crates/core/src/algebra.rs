use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Which null-filiform algebra a computation targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algebra {
    /// `L_n`: basis `e_1..e_n`, `e_i e_1 = e_{i+1}` for `i < n`, all other products zero.
    Finite(usize),
    /// `L_inf`: basis `e_1, e_2, ...`, `e_i e_1 = e_{i+1}` for all `i`.
    Infinite,
}

impl Algebra {
    pub fn finite(n: usize) -> Result<Algebra> {
        if n == 0 {
            Err(Error::ZeroDimension)
        } else {
            Ok(Algebra::Finite(n))
        }
    }

    pub fn dim(&self) -> Option<usize> {
        match *self {
            Algebra::Finite(n) => Some(n),
            Algebra::Infinite => None,
        }
    }

    pub(crate) fn check_same(&self, other: &Algebra) -> Result<()> {
        if self != other {
            return Err(Error::MismatchedAlgebras(self.to_string(), other.to_string()));
        }
        Ok(())
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algebra::Finite(n) => write!(f, "L_{n}"),
            Algebra::Infinite => write!(f, "L_inf"),
        }
    }
}

impl FromStr for Algebra {
    type Err = Error;

    /// `"inf"` or a positive dimension.
    fn from_str(s: &str) -> Result<Algebra> {
        match s.trim() {
            "inf" | "infinite" => Ok(Algebra::Infinite),
            t => {
                let n: usize = t
                    .parse()
                    .map_err(|_| Error::InvalidArgument(format!("bad algebra '{t}'")))?;
                Algebra::finite(n)
            }
        }
    }
}
