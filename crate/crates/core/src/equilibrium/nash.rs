use std::cmp::Ordering;
use std::fmt;

use super::game::BilinearGame;
use crate::error::{Error, Result};
use crate::scalar::{in_unit_interval, max_of, min_of, sign_with_tol, Scalar};

/// Closed interval `[lo, hi]` of probabilities.
#[derive(Debug, Clone, PartialEq)]
pub struct Interval<T> {
    lo: T,
    hi: T,
}

impl<T: Scalar> Interval<T> {
    pub fn new(lo: T, hi: T) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn point(v: T) -> Self {
        Interval {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn unit() -> Self {
        Interval::new(T::zero(), T::one())
    }

    pub fn lo(&self) -> &T {
        &self.lo
    }

    pub fn hi(&self) -> &T {
        &self.hi
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, v: &T) -> bool {
        self.lo <= *v && *v <= self.hi
    }

    pub fn contains_interval(&self, other: &Self) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersect(&self, other: &Self) -> Option<Self> {
        let lo = max_of(self.lo.clone(), other.lo.clone());
        let hi = min_of(self.hi.clone(), other.hi.clone());
        (lo <= hi).then(|| Interval { lo, hi })
    }

    fn overlaps(&self, other: &Self) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    fn hull(&self, other: &Self) -> Self {
        Interval {
            lo: min_of(self.lo.clone(), other.lo.clone()),
            hi: max_of(self.hi.clone(), other.hi.clone()),
        }
    }

    /// `lo + t (hi - lo)`.
    pub fn lerp(&self, t: &T) -> T {
        self.lo.clone() + t.clone() * (self.hi.clone() - self.lo.clone())
    }

    /// Distance from `v` to the interval.
    pub fn distance(&self, v: &T) -> T {
        if *v < self.lo {
            self.lo.clone() - v.clone()
        } else if *v > self.hi {
            v.clone() - self.hi.clone()
        } else {
            T::zero()
        }
    }

    fn endpoints(&self) -> Vec<T> {
        if self.is_point() {
            vec![self.lo.clone()]
        } else {
            vec![self.lo.clone(), self.hi.clone()]
        }
    }

    fn cmp_key(&self, other: &Self) -> Ordering {
        cmp_scalar(&self.lo, &other.lo).then_with(|| cmp_scalar(&self.hi, &other.hi))
    }
}

impl<T: Scalar> fmt::Display for Interval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

fn cmp_scalar<T: Scalar>(a: &T, b: &T) -> Ordering {
    a.partial_cmp(b).unwrap_or(Ordering::Equal)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ComponentKind {
    /// Both players at a pure corner.
    PurePoint,
    /// An isolated profile where at least one player mixes.
    MixedPoint,
    /// A line segment of equilibria.
    Segment,
    /// A two-dimensional box; only when both players are indifferent everywhere.
    Region,
}

impl fmt::Display for ComponentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComponentKind::PurePoint => "pure-point",
            ComponentKind::MixedPoint => "mixed-point",
            ComponentKind::Segment => "segment",
            ComponentKind::Region => "region",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strictness {
    Strict,
    Weak,
}

impl fmt::Display for Strictness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strictness::Strict => "strict",
            Strictness::Weak => "weak",
        })
    }
}

/// Result of checking a single profile against both players' deviations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NeStatus {
    Strict,
    Weak,
    NotEquilibrium,
}

impl fmt::Display for NeStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NeStatus::Strict => "strict",
            NeStatus::Weak => "weak",
            NeStatus::NotEquilibrium => "not-equilibrium",
        })
    }
}

/// A connected set of Nash equilibria: a box `x x y` in the unit square.
#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumComponent<T> {
    kind: ComponentKind,
    x: Interval<T>,
    y: Interval<T>,
    strictness: Strictness,
}

impl<T: Scalar> EquilibriumComponent<T> {
    pub fn kind(&self) -> ComponentKind {
        self.kind
    }

    pub fn x(&self) -> &Interval<T> {
        &self.x
    }

    pub fn y(&self) -> &Interval<T> {
        &self.y
    }

    pub fn strictness(&self) -> Strictness {
        self.strictness
    }

    /// The profile, when the component is a single point.
    pub fn point(&self) -> Option<(T, T)> {
        (self.x.is_point() && self.y.is_point()).then(|| (self.x.lo.clone(), self.y.lo.clone()))
    }

    pub fn is_point_at(&self, x: &T, y: &T) -> bool {
        self.point().is_some_and(|(px, py)| px == *x && py == *y)
    }

    pub fn contains(&self, x: &T, y: &T) -> bool {
        self.x.contains(x) && self.y.contains(y)
    }

    /// L-infinity distance from `(x, y)` to the component.
    pub fn distance(&self, x: &T, y: &T) -> T {
        max_of(self.x.distance(x), self.y.distance(y))
    }

    /// Distinct corners of the component's box.
    pub fn corners(&self) -> Vec<(T, T)> {
        let mut out = Vec::new();
        for x in self.x.endpoints() {
            for y in self.y.endpoints() {
                out.push((x.clone(), y));
            }
        }
        out
    }

    /// `n` evenly spaced points along the component's diagonal (just the
    /// point itself for point components).
    pub fn sample(&self, n: usize) -> Vec<(T, T)> {
        if self.point().is_some() || n < 2 {
            return vec![(self.x.lo.clone(), self.y.lo.clone())];
        }
        (0..n)
            .map(|i| {
                let t = T::from_ratio(i as i64, (n - 1) as i64);
                (self.x.lerp(&t), self.y.lerp(&t))
            })
            .collect()
    }

    /// Weak point component at `(x, y)`, used when a set of equilibria is
    /// split into its endpoints.
    pub(crate) fn weak_point(x: T, y: T) -> Self {
        let kind = if is_pure(&x) && is_pure(&y) {
            ComponentKind::PurePoint
        } else {
            ComponentKind::MixedPoint
        };
        EquilibriumComponent {
            kind,
            x: Interval::point(x),
            y: Interval::point(y),
            strictness: Strictness::Weak,
        }
    }

    fn from_box(game: &BilinearGame<T>, x: Interval<T>, y: Interval<T>, tol: &T) -> Self {
        let kind = match (x.is_point(), y.is_point()) {
            (true, true) if is_pure(&x.lo) && is_pure(&y.lo) => ComponentKind::PurePoint,
            (true, true) => ComponentKind::MixedPoint,
            (false, false) => ComponentKind::Region,
            _ => ComponentKind::Segment,
        };
        let strictness = if kind == ComponentKind::PurePoint
            && strict_pure(game, &x.lo, &y.lo, tol)
        {
            Strictness::Strict
        } else {
            Strictness::Weak
        };
        EquilibriumComponent {
            kind,
            x,
            y,
            strictness,
        }
    }
}

impl<T: Scalar> fmt::Display for EquilibriumComponent<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({}, {}) {}", self.kind, self.x, self.y, self.strictness)
    }
}

fn is_pure<T: Scalar>(v: &T) -> bool {
    v.is_zero() || v.is_one()
}

fn scaled_tol<T: Scalar>(tol: &T, coefficients: &[&T]) -> T {
    let scale = coefficients
        .iter()
        .fold(T::one(), |m, c| max_of(m, c.abs()));
    tol.clone() * scale
}

fn row_tol<T: Scalar>(game: &BilinearGame<T>, tol: &T) -> T {
    scaled_tol(tol, &[&game.row().xy, &game.row().x])
}

fn col_tol<T: Scalar>(game: &BilinearGame<T>, tol: &T) -> T {
    scaled_tol(tol, &[&game.col().xy, &game.col().y])
}

fn strict_pure<T: Scalar>(game: &BilinearGame<T>, x: &T, y: &T, tol: &T) -> bool {
    let wanted = |v: &T| if v.is_one() { 1 } else { -1 };
    sign_with_tol(&game.row_slope(y), &row_tol(game, tol)) == wanted(x)
        && sign_with_tol(&game.col_slope(x), &col_tol(game, tol)) == wanted(y)
}

/// Graph of one player's best-response correspondence as boxes in
/// `(own, other)` coordinates, given the slope of its payoff in its own
/// probability at `other = 0` and `other = 1`.
fn best_response_graph<T: Scalar>(at0: T, at1: T, tol: &T) -> Vec<(Interval<T>, Interval<T>)> {
    let s0 = sign_with_tol(&at0, tol);
    let s1 = sign_with_tol(&at1, tol);
    let one = || Interval::point(T::one());
    let zero = || Interval::point(T::zero());
    let unit = Interval::unit;
    let keep = |s: i8| if s > 0 { one() } else { zero() };
    match (s0, s1) {
        (0, 0) => vec![(unit(), unit())],
        (a, b) if a == b => vec![(keep(a), unit())],
        (0, b) => vec![(unit(), zero()), (keep(b), unit())],
        (a, 0) => vec![(keep(a), unit()), (unit(), one())],
        (a, b) => {
            // strict sign change: the slope's root is interior
            let mut root = at0.clone() / (at0 - at1);
            root = max_of(T::zero(), min_of(T::one(), root));
            vec![
                (keep(a), Interval::new(T::zero(), root.clone())),
                (unit(), Interval::point(root.clone())),
                (keep(b), Interval::new(root, T::one())),
            ]
        }
    }
}

/// All Nash equilibria of a bilinear 2x2 game with the default degeneracy
/// tolerance [`Scalar::exact_tol`].
pub fn nash_2x2<T: Scalar>(game: &BilinearGame<T>) -> Vec<EquilibriumComponent<T>> {
    nash_2x2_with_tol(game, &T::exact_tol())
}

/// All Nash equilibria of `game` as disjoint maximal components.
///
/// Each player's best-response graph is a union of axis-parallel boxes; the
/// equilibrium set is their intersection. Slopes within `tol` (scaled by the
/// coefficient magnitude) of zero count as indifference.
pub fn nash_2x2_with_tol<T: Scalar>(game: &BilinearGame<T>, tol: &T) -> Vec<EquilibriumComponent<T>> {
    let (zero, one) = (T::zero(), T::one());
    let row_graph = best_response_graph(game.row_slope(&zero), game.row_slope(&one), &row_tol(game, tol));
    let col_graph: Vec<(Interval<T>, Interval<T>)> =
        best_response_graph(game.col_slope(&zero), game.col_slope(&one), &col_tol(game, tol))
            .into_iter()
            .map(|(own, other)| (other, own))
            .collect();

    let mut boxes: Vec<(Interval<T>, Interval<T>)> = Vec::new();
    for (rx, ry) in &row_graph {
        for (cx, cy) in &col_graph {
            if let (Some(x), Some(y)) = (rx.intersect(cx), ry.intersect(cy)) {
                boxes.push((x, y));
            }
        }
    }

    let boxes = merge_collinear(boxes);
    let boxes = drop_contained(boxes);

    let mut components: Vec<EquilibriumComponent<T>> = boxes
        .into_iter()
        .map(|(x, y)| EquilibriumComponent::from_box(game, x, y, tol))
        .collect();
    components.sort_by(|a, b| {
        a.kind
            .cmp(&b.kind)
            .then_with(|| a.x.cmp_key(&b.x))
            .then_with(|| a.y.cmp_key(&b.y))
    });
    components
}

fn merge_collinear<T: Scalar>(mut boxes: Vec<(Interval<T>, Interval<T>)>) -> Vec<(Interval<T>, Interval<T>)> {
    loop {
        let mut merged = None;
        'search: for i in 0..boxes.len() {
            for j in (i + 1)..boxes.len() {
                let (a, b) = (&boxes[i], &boxes[j]);
                let vertical = a.0.is_point() && b.0.is_point() && a.0 == b.0 && a.1.overlaps(&b.1);
                let horizontal = a.1.is_point() && b.1.is_point() && a.1 == b.1 && a.0.overlaps(&b.0);
                if vertical || horizontal {
                    merged = Some((i, j, (a.0.hull(&b.0), a.1.hull(&b.1))));
                    break 'search;
                }
            }
        }
        match merged {
            Some((i, j, union)) => {
                boxes.swap_remove(j);
                boxes[i] = union;
            }
            None => return boxes,
        }
    }
}

fn drop_contained<T: Scalar>(boxes: Vec<(Interval<T>, Interval<T>)>) -> Vec<(Interval<T>, Interval<T>)> {
    let mut kept: Vec<(Interval<T>, Interval<T>)> = Vec::new();
    for (i, b) in boxes.iter().enumerate() {
        let covered = boxes.iter().enumerate().any(|(j, other)| {
            let contains = other.0.contains_interval(&b.0) && other.1.contains_interval(&b.1);
            // among identical boxes keep the first occurrence
            contains && (other != b || j < i)
        });
        if !covered {
            kept.push(b.clone());
        }
    }
    kept
}

/// Checks `(x, y)` against every unilateral deviation. Payoffs are linear in
/// each player's own probability, so the best deviation is a pure action.
///
/// Strict: both players are at pure actions and each alternative loses by
/// more than `eps`. Weak: no deviation gains more than `eps`, but some
/// deviation does not lose by more than `eps`.
pub fn verify_ne<T: Scalar>(game: &BilinearGame<T>, x: &T, y: &T, eps: &T) -> Result<NeStatus> {
    if !in_unit_interval(x) || !in_unit_interval(y) {
        return Err(Error::Domain(format!(
            "profile ({}, {}) is outside the unit square",
            x.to_f64_lossy(),
            y.to_f64_lossy()
        )));
    }
    let (one, zero) = (T::one(), T::zero());
    let (ua, ub) = game.eval(x, y);
    let gains_a = [
        game.row().eval(&zero, y) - ua.clone(),
        game.row().eval(&one, y) - ua,
    ];
    let gains_b = [
        game.col().eval(x, &zero) - ub.clone(),
        game.col().eval(x, &one) - ub,
    ];
    let best = |g: &[T; 2]| max_of(g[0].clone(), g[1].clone());
    if best(&gains_a) > *eps || best(&gains_b) > *eps {
        return Ok(NeStatus::NotEquilibrium);
    }
    // the gain of switching to the other pure action, when already pure
    let switch_gain = |v: &T, gains: &[T; 2]| -> Option<T> {
        if v.is_zero() {
            Some(gains[1].clone())
        } else if v.is_one() {
            Some(gains[0].clone())
        } else {
            None
        }
    };
    let strict = match (switch_gain(x, &gains_a), switch_gain(y, &gains_b)) {
        (Some(ga), Some(gb)) => ga < -eps.clone() && gb < -eps.clone(),
        _ => false,
    };
    Ok(if strict { NeStatus::Strict } else { NeStatus::Weak })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equilibrium::game::BilinearPayoff;
    use crate::Rational;

    fn r(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn pd() -> BilinearGame<f64> {
        BilinearGame::new(
            BilinearPayoff::new(-1.0, -1.0, 4.0, 1.0),
            BilinearPayoff::new(-1.0, 4.0, -1.0, 1.0),
        )
    }

    /// Restricted stage-2 game as a function of `y_sum`.
    fn stage_two(y: Rational) -> BilinearGame<Rational> {
        let one = r(1, 1);
        let row = BilinearPayoff::new(
            -one.clone(),
            r(3, 1) * y.clone() - one.clone(),
            r(4, 1) - r(7, 1) * y.clone(),
            one.clone() + r(2, 1) * y.clone(),
        );
        let col = BilinearPayoff::new(
            -one.clone(),
            r(4, 1) - r(7, 1) * y.clone(),
            r(3, 1) * y.clone() - one.clone(),
            one + r(2, 1) * y,
        );
        BilinearGame::new(row, col)
    }

    #[test]
    fn prisoners_dilemma_has_unique_strict_defection() {
        let ne = nash_2x2(&pd());
        assert_eq!(ne.len(), 1);
        assert_eq!(ne[0].kind(), ComponentKind::PurePoint);
        assert!(ne[0].is_point_at(&0.0, &0.0));
        assert_eq!(ne[0].strictness(), Strictness::Strict);
    }

    #[test]
    fn anti_coordination_regime_has_three_equilibria() {
        let ne = nash_2x2(&stage_two(r(1, 2)));
        let points: Vec<_> = ne.iter().map(|c| (c.kind(), c.point().unwrap())).collect();
        assert_eq!(
            points,
            vec![
                (ComponentKind::PurePoint, (r(0, 1), r(1, 1))),
                (ComponentKind::PurePoint, (r(1, 1), r(0, 1))),
                (ComponentKind::MixedPoint, (r(1, 2), r(1, 2))),
            ]
        );
        assert!(ne.iter().take(2).all(|c| c.strictness() == Strictness::Strict));
        assert_eq!(ne[2].strictness(), Strictness::Weak);
    }

    #[test]
    fn boundary_third_gives_two_segments() {
        let ne = nash_2x2(&stage_two(r(1, 3)));
        assert_eq!(ne.len(), 2);
        assert!(ne.iter().all(|c| c.kind() == ComponentKind::Segment));
        assert!(ne.iter().all(|c| c.strictness() == Strictness::Weak));
        assert_eq!((ne[0].x().clone(), ne[0].y().clone()), (Interval::point(r(0, 1)), Interval::unit()));
        assert_eq!((ne[1].x().clone(), ne[1].y().clone()), (Interval::unit(), Interval::point(r(0, 1))));
    }

    #[test]
    fn boundary_two_thirds_gives_segments_through_cooperation() {
        let ne = nash_2x2(&stage_two(r(2, 3)));
        assert_eq!(ne.len(), 2);
        for c in &ne {
            assert_eq!(c.kind(), ComponentKind::Segment);
            assert!(c.contains(&r(1, 1), &r(1, 1)));
        }
    }

    #[test]
    fn zero_game_is_one_region() {
        let ne = nash_2x2(&BilinearGame::<f64>::zero());
        assert_eq!(ne.len(), 1);
        assert_eq!(ne[0].kind(), ComponentKind::Region);
        assert_eq!(ne[0].corners().len(), 4);
    }

    #[test]
    fn float_boundary_is_snapped() {
        // 3 * fl(1/3) - 1 is not exactly zero in f64
        let y = 1.0f64 / 6.0 + 1.0 / 6.0;
        let g = BilinearGame::new(
            BilinearPayoff::new(-1.0, 3.0 * y - 1.0, 4.0 - 7.0 * y, 1.0 + 2.0 * y),
            BilinearPayoff::new(-1.0, 4.0 - 7.0 * y, 3.0 * y - 1.0, 1.0 + 2.0 * y),
        );
        let ne = nash_2x2(&g);
        assert_eq!(ne.len(), 2);
        assert!(ne.iter().all(|c| c.kind() == ComponentKind::Segment));
    }

    #[test]
    fn one_player_indifferent() {
        // row strictly prefers x = 1, column indifferent everywhere
        let g = BilinearGame::new(
            BilinearPayoff::new(0.0, 1.0, 0.0, 0.0),
            BilinearPayoff::zero(),
        );
        let ne = nash_2x2(&g);
        assert_eq!(ne.len(), 1);
        assert_eq!(ne[0].kind(), ComponentKind::Segment);
        assert_eq!(ne[0].x(), &Interval::point(1.0));
        assert_eq!(ne[0].y(), &Interval::unit());
    }

    #[test]
    fn verify_examples() {
        assert_eq!(verify_ne(&pd(), &0.0, &0.0, &0.0).unwrap(), NeStatus::Strict);
        assert_eq!(verify_ne(&pd(), &1.0, &1.0, &0.0).unwrap(), NeStatus::NotEquilibrium);
        assert_eq!(verify_ne(&pd(), &0.5, &0.0, &0.0).unwrap(), NeStatus::NotEquilibrium);
        assert!(verify_ne(&pd(), &1.5, &0.0, &0.0).is_err());
        assert!(verify_ne(&pd(), &0.0, &-0.5, &0.0).is_err());
        let mixed = stage_two(r(1, 2));
        assert_eq!(verify_ne(&mixed, &r(1, 2), &r(1, 2), &r(0, 1)).unwrap(), NeStatus::Weak);
        assert_eq!(verify_ne(&mixed, &r(1, 1), &r(0, 1), &r(0, 1)).unwrap(), NeStatus::Strict);
    }

    #[test]
    fn ordering_is_canonical() {
        // coordination game: (0,0), (1,1) strict and a mixed point
        let g = BilinearGame::new(
            BilinearPayoff::new(2.0, -1.0, 0.0, 0.0),
            BilinearPayoff::new(2.0, 0.0, -1.0, 0.0),
        );
        let ne = nash_2x2(&g);
        assert_eq!(ne.len(), 3);
        assert!(ne[0].is_point_at(&0.0, &0.0));
        assert!(ne[1].is_point_at(&1.0, &1.0));
        assert!(ne[2].is_point_at(&0.5, &0.5));
        assert_eq!(ne, nash_2x2(&g));
    }
}
