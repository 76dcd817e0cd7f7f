//! Three-state configurations and admissible enumeration.

use std::fmt;

use crate::error::HcError;
use crate::tree::TreeLayout;
use crate::Result;

/// Default cap on the number of vertices an exhaustive enumeration may cover.
pub const DEFAULT_ENUM_CAP: usize = 16;

/// Whether the root counts toward occupation numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RootConvention {
    #[default]
    IncludeRoot,
    ExcludeRoot,
}

/// A state assignment to the first `len` breadth-first vertices of a layout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    states: Vec<u8>,
}

impl Configuration {
    pub fn new(states: Vec<u8>) -> Result<Self> {
        if let Some(&bad) = states.iter().find(|&&s| s > 2) {
            return Err(HcError::StateOutOfRange(bad));
        }
        Ok(Configuration { states })
    }

    pub fn states(&self) -> &[u8] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn state(&self, x: usize) -> u8 {
        self.states[x]
    }

    /// The restriction to a smaller ball is a prefix, by BFS numbering.
    pub fn restrict(&self, len: usize) -> Configuration {
        Configuration {
            states: self.states[..len].to_vec(),
        }
    }

    /// Parses a digit string such as "0120".
    pub fn parse(s: &str) -> Result<Self> {
        let states = s
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as u8).unwrap_or(9))
            .collect();
        Configuration::new(states)
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.states {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// The hard-core constraint on one edge: state sums 0 and 3 are forbidden.
fn edge_ok(a: u8, b: u8) -> bool {
    let sum = a + b;
    sum != 0 && sum != 3
}

/// True iff every in-volume edge avoids the forbidden sums.
pub fn is_admissible(layout: &TreeLayout, config: &Configuration) -> bool {
    (1..config.len()).all(|x| {
        let p = layout.parent_of(x).expect("non-root vertex");
        edge_ok(config.state(x), config.state(p))
    })
}

/// Number of occupied vertices (state 1 or 2), root included.
pub fn occupied_count(config: &Configuration) -> usize {
    occupied_count_with(config, RootConvention::IncludeRoot)
}

pub fn occupied_count_with(config: &Configuration, convention: RootConvention) -> usize {
    let skip = match convention {
        RootConvention::IncludeRoot => 0,
        RootConvention::ExcludeRoot => 1,
    };
    config.states.iter().skip(skip).filter(|&&s| s >= 1).count()
}

/// Depth-first enumeration of the admissible configurations on `V_volume`
/// extending a partial assignment, in deterministic order (vertex index
/// ascending, states tried in the order 0, 1, 2).
pub fn enumerate_admissible<'a>(
    layout: &'a TreeLayout,
    volume: u32,
    fixed: &[Option<u8>],
    cap: usize,
) -> Result<AdmissibleIter<'a>> {
    let len = layout.ball_size(volume);
    if len > cap {
        return Err(HcError::CapExceeded { vertices: len, cap });
    }
    if fixed.len() > len {
        return Err(HcError::WrongConfigurationSize {
            got: fixed.len(),
            want: len,
        });
    }
    if let Some(&Some(bad)) = fixed.iter().find(|s| matches!(s, Some(v) if *v > 2)) {
        return Err(HcError::StateOutOfRange(bad));
    }
    let mut fixed = fixed.to_vec();
    fixed.resize(len, None);
    Ok(AdmissibleIter {
        layout,
        fixed,
        states: Vec::with_capacity(len),
        next_try: vec![0],
        len,
    })
}

pub struct AdmissibleIter<'a> {
    layout: &'a TreeLayout,
    fixed: Vec<Option<u8>>,
    /// States chosen so far; the search position is `states.len()`.
    states: Vec<u8>,
    /// Next candidate state to try at each search depth.
    next_try: Vec<u8>,
    len: usize,
}

impl AdmissibleIter<'_> {
    fn candidate_ok(&self, pos: usize, s: u8) -> bool {
        if let Some(want) = self.fixed[pos] {
            if want != s {
                return false;
            }
        }
        if pos == 0 {
            return true;
        }
        let p = self.layout.parent_of(pos).expect("non-root");
        edge_ok(s, self.states[p])
    }
}

impl Iterator for AdmissibleIter<'_> {
    type Item = Configuration;

    fn next(&mut self) -> Option<Configuration> {
        if self.len == 0 {
            return None;
        }
        loop {
            let pos = self.states.len();
            let try_from = *self.next_try.last()?;
            let mut chosen = None;
            for s in try_from..3 {
                if self.candidate_ok(pos, s) {
                    chosen = Some(s);
                    break;
                }
            }
            match chosen {
                Some(s) => {
                    *self.next_try.last_mut().unwrap() = s + 1;
                    self.states.push(s);
                    if self.states.len() == self.len {
                        let done = Configuration {
                            states: self.states.clone(),
                        };
                        self.states.pop();
                        return Some(done);
                    }
                    self.next_try.push(0);
                }
                None => {
                    // Exhausted this position: backtrack.
                    self.next_try.pop();
                    self.states.pop();
                    if self.next_try.is_empty() {
                        return None;
                    }
                }
            }
        }
    }
}
