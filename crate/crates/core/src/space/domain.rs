use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Axis-aligned box `Π (lo_k, hi_k)` in one to three dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct DomainBox<T> {
    intervals: Vec<(T, T)>,
}

impl<T: Scalar> DomainBox<T> {
    pub fn new(intervals: Vec<(T, T)>) -> Result<Self> {
        if intervals.is_empty() || intervals.len() > 3 {
            return Err(Error::InvalidInput(format!(
                "box dimension must be 1, 2 or 3 (got {})",
                intervals.len()
            )));
        }
        for (k, &(lo, hi)) in intervals.iter().enumerate() {
            if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "interval {k} must satisfy lo < hi (got {lo}, {hi})"
                )));
            }
        }
        Ok(Self { intervals })
    }

    /// The unit cube `(0, 1)^d`.
    pub fn unit(d: usize) -> Result<Self> {
        Self::new(vec![(T::zero(), T::one()); d])
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.intervals.len()
    }

    pub fn intervals(&self) -> &[(T, T)] {
        &self.intervals
    }

    pub fn interval(&self, axis: usize) -> (T, T) {
        self.intervals[axis]
    }

    pub fn length(&self, axis: usize) -> T {
        let (lo, hi) = self.intervals[axis];
        hi - lo
    }

    /// `|Ω|`
    pub fn volume(&self) -> T {
        (0..self.dim()).map(|k| self.length(k)).fold(T::one(), |a, b| a * b)
    }

    /// Measure of the face with the given id (product of the tangential lengths).
    pub fn face_measure(&self, face: Face) -> T {
        (0..self.dim())
            .filter(|&k| k != face.axis())
            .map(|k| self.length(k))
            .fold(T::one(), |a, b| a * b)
    }

    /// Whether `p` lies in the closed box, up to a relative slack of `1e-12`.
    pub fn contains_closed(&self, p: &[T]) -> bool {
        p.len() == self.dim()
            && p.iter().zip(&self.intervals).all(|(&x, &(lo, hi))| {
                let slack = T::lit(1e-12) * (hi - lo);
                x >= lo - slack && x <= hi + slack
            })
    }

    /// Returns the box with all lengths multiplied by `factor`, anchored at `lo`.
    pub fn scaled(&self, factor: T) -> Result<Self> {
        Self::new(
            self.intervals
                .iter()
                .map(|&(lo, hi)| (lo, lo + (hi - lo) * factor))
                .collect(),
        )
    }
}

/// Face of a box: id `2k` is `x_k = lo_k`, id `2k + 1` is `x_k = hi_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face(pub usize);

impl Face {
    #[inline]
    pub fn axis(self) -> usize {
        self.0 / 2
    }

    #[inline]
    pub fn is_upper(self) -> bool {
        self.0 % 2 == 1
    }

    /// Coordinate of the face along its normal axis.
    pub fn coordinate<T: Scalar>(self, domain: &DomainBox<T>) -> T {
        let (lo, hi) = domain.interval(self.axis());
        if self.is_upper() {
            hi
        } else {
            lo
        }
    }

    pub fn all(d: usize) -> impl Iterator<Item = Face> {
        (0..2 * d).map(Face)
    }
}

/// Part of a boundary region: a face, restricted along its first tangential
/// axis to the fractional range `fraction = (a, b)` with `0 <= a < b <= 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryPart<T> {
    pub face: Face,
    pub fraction: (T, T),
}

/// Union of (fractions of) box faces; in one dimension a set of endpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryRegion<T> {
    parts: Vec<BoundaryPart<T>>,
}

impl<T: Scalar> BoundaryRegion<T> {
    pub fn new(parts: Vec<BoundaryPart<T>>) -> Self {
        Self { parts }
    }

    /// The whole boundary `∂Ω`.
    pub fn full(d: usize) -> Self {
        Self::new(
            Face::all(d)
                .map(|face| BoundaryPart {
                    face,
                    fraction: (T::zero(), T::one()),
                })
                .collect(),
        )
    }

    pub fn face(face: Face) -> Self {
        Self::face_fraction(face, T::zero(), T::one())
    }

    pub fn face_fraction(face: Face, a: T, b: T) -> Self {
        Self::new(vec![BoundaryPart { face, fraction: (a, b) }])
    }

    pub fn parts(&self) -> &[BoundaryPart<T>] {
        &self.parts
    }

    /// Checks every part against the box; returns `ZeroMeasureRegion` for an
    /// empty region or a degenerate fraction.
    pub fn validate(&self, domain: &DomainBox<T>) -> Result<()> {
        if self.parts.is_empty() {
            return Err(Error::ZeroMeasureRegion);
        }
        for part in &self.parts {
            if part.face.0 >= 2 * domain.dim() {
                return Err(Error::InvalidInput(format!(
                    "face id {} out of range for a {}-dimensional box",
                    part.face.0,
                    domain.dim()
                )));
            }
            let (a, b) = part.fraction;
            if a < T::zero() || b > T::one() {
                return Err(Error::InvalidInput(format!(
                    "face fraction ({a}, {b}) must lie in [0, 1]"
                )));
            }
            if domain.dim() > 1 && !(a < b) {
                return Err(Error::ZeroMeasureRegion);
            }
        }
        Ok(())
    }

    /// `|Γ|`: surface measure for `d >= 2`, number of endpoints for `d = 1`.
    pub fn measure(&self, domain: &DomainBox<T>) -> T {
        self.parts
            .iter()
            .map(|part| {
                if domain.dim() == 1 {
                    T::one()
                } else {
                    let (a, b) = part.fraction;
                    domain.face_measure(part.face) * (b - a)
                }
            })
            .sum()
    }

    /// Tangential sub-box covered by a part: one interval per tangential axis,
    /// in increasing axis order.
    pub fn tangential_ranges(part: &BoundaryPart<T>, domain: &DomainBox<T>) -> Vec<(usize, (T, T))> {
        let mut first = true;
        (0..domain.dim())
            .filter(|&k| k != part.face.axis())
            .map(|k| {
                let (lo, hi) = domain.interval(k);
                let range = if first {
                    first = false;
                    let (a, b) = part.fraction;
                    (lo + (hi - lo) * a, lo + (hi - lo) * b)
                } else {
                    (lo, hi)
                };
                (k, range)
            })
            .collect()
    }
}
