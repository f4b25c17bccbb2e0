use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Failures of the exact lattice layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeError {
    UnknownVariety(String),
    /// Parameters parse but do not describe a smooth toric Fano variety.
    NotFano(String),
    Overflow,
    /// The linear system has no integral solution.
    NoIntegerSolution,
    Singular,
    /// Cokernel of the principal-divisor map has torsion: fan is not smooth.
    Torsion,
    DimensionMismatch { expected: usize, found: usize },
    NotASurface,
    ConeOutOfRange(usize),
    Unbounded,
}

impl fmt::Display for LatticeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeError::UnknownVariety(name) => write!(f, "unknown catalog variety `{name}`"),
            LatticeError::NotFano(why) => write!(f, "parameters are not Fano: {why}"),
            LatticeError::Overflow => f.write_str("integer overflow in exact arithmetic"),
            LatticeError::NoIntegerSolution => f.write_str("linear system has no integer solution"),
            LatticeError::Singular => f.write_str("singular linear system"),
            LatticeError::Torsion => f.write_str("divisor class group has torsion (fan not smooth)"),
            LatticeError::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            LatticeError::NotASurface => f.write_str("operation requires a surface"),
            LatticeError::ConeOutOfRange(i) => write!(f, "no maximal cone with index {i}"),
            LatticeError::Unbounded => f.write_str("section polytope is unbounded"),
        }
    }
}

impl core::error::Error for LatticeError {}

/// Failures of the numerical critical-point solver.
#[derive(Debug, Clone, PartialEq)]
pub enum SolveError {
    ZeroCoordinate,
    /// Seeds exhausted before the expected number of roots was found.
    Undercount { expected: usize, found: Vec<Vec<[f64; 2]>> },
    /// A root has a numerically singular Jacobian: the potential is close to
    /// the discriminant.
    SingularRoot { point: Vec<[f64; 2]>, condition: f64 },
    /// Two continued offset points collapsed onto each other.
    PathJump { first: usize, second: usize },
    /// Newton continuation from a base point to its offset counterpart failed.
    OffsetDiverged { index: usize },
    Lattice(LatticeError),
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveError::ZeroCoordinate => f.write_str("evaluation at a point with a zero coordinate"),
            SolveError::Undercount { expected, found } => write!(
                f,
                "found only {} of {expected} critical points after exhausting seeds",
                found.len()
            ),
            SolveError::SingularRoot { condition, .. } => write!(
                f,
                "critical point with singular Jacobian (condition {condition:.3e}); potential is near the discriminant"
            ),
            SolveError::PathJump { first, second } => {
                write!(f, "offset continuation collapsed points {first} and {second}")
            }
            SolveError::OffsetDiverged { index } => {
                write!(f, "offset continuation of point {index} failed to converge")
            }
            SolveError::Lattice(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for SolveError {}

impl From<LatticeError> for SolveError {
    fn from(e: LatticeError) -> Self {
        SolveError::Lattice(e)
    }
}

/// Failures while tracking critical points around a coefficient loop.
#[derive(Debug, Clone, PartialEq)]
pub enum TrackError {
    /// Step size fell below the floor: the loop passes near the discriminant.
    StepUnderflow { theta: f64 },
    /// Argument lift jumped by half a turn or more between samples.
    LiftViolation { theta: f64 },
    EndpointUnmatched { distance: f64 },
    /// Two tracked points ended on the same critical point.
    Collision { target: usize },
    /// The lifted endpoint is not within the snap tolerance of a lattice point.
    NotLatticeClose { deviation: f64 },
    /// The weight was requested for a path that does not end at the base point.
    NotAtBase { end_index: usize },
    ZeroCoordinate,
    Solve(SolveError),
    Lattice(LatticeError),
}

impl fmt::Display for TrackError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TrackError::StepUnderflow { theta } => {
                write!(f, "step underflow at theta = {theta:.6} (near the discriminant)")
            }
            TrackError::LiftViolation { theta } => write!(f, "argument lift jump at theta = {theta:.6}"),
            TrackError::EndpointUnmatched { distance } => write!(
                f,
                "tracked endpoint matches no critical point (nearest at relative distance {distance:.3e})"
            ),
            TrackError::Collision { target } => {
                write!(f, "two tracked paths end at critical point {target}")
            }
            TrackError::NotLatticeClose { deviation } => {
                write!(f, "lifted endpoint is {deviation:.3e} away from the nearest lattice point")
            }
            TrackError::NotAtBase { end_index } => {
                write!(f, "path ends at point {end_index}, not at the base point")
            }
            TrackError::ZeroCoordinate => f.write_str("tracked point hit a zero coordinate"),
            TrackError::Solve(e) => write!(f, "{e}"),
            TrackError::Lattice(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for TrackError {}

impl From<SolveError> for TrackError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::ZeroCoordinate => TrackError::ZeroCoordinate,
            other => TrackError::Solve(other),
        }
    }
}

impl From<LatticeError> for TrackError {
    fn from(e: LatticeError) -> Self {
        TrackError::Lattice(e)
    }
}

/// Failures of the exceptional-map and cohomology layer.
#[derive(Debug, Clone, PartialEq)]
pub enum CheckError {
    /// An argument coordinate is not close to any rational with small denominator.
    SnapFailure { ray: usize, value: f64 },
    /// Two critical points map to the same class.
    NotInjective { first: usize, second: usize },
    /// The base point selected by argument distance does not map to zero.
    BaseMismatch { base_index: usize },
    NegativeH1,
    Unsupported(String),
    Solve(SolveError),
    Track(TrackError),
    Lattice(LatticeError),
}

impl fmt::Display for CheckError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckError::SnapFailure { ray, value } => {
                write!(f, "argument {value:.6} on ray {ray} does not snap to a small rational")
            }
            CheckError::NotInjective { first, second } => write!(
                f,
                "exceptional map is not injective: points {first} and {second} share a class (potential outside its chamber)"
            ),
            CheckError::BaseMismatch { base_index } => {
                write!(f, "base point {base_index} does not map to the trivial class")
            }
            CheckError::NegativeH1 => f.write_str("negative h1 from Riemann-Roch (internal inconsistency)"),
            CheckError::Unsupported(what) => write!(f, "unsupported: {what}"),
            CheckError::Solve(e) => write!(f, "{e}"),
            CheckError::Track(e) => write!(f, "{e}"),
            CheckError::Lattice(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for CheckError {}

impl From<SolveError> for CheckError {
    fn from(e: SolveError) -> Self {
        CheckError::Solve(e)
    }
}

impl From<TrackError> for CheckError {
    fn from(e: TrackError) -> Self {
        CheckError::Track(e)
    }
}

impl From<LatticeError> for CheckError {
    fn from(e: LatticeError) -> Self {
        CheckError::Lattice(e)
    }
}
