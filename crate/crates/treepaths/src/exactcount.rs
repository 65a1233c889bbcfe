//! Closed-form path counts in perfect m-ary trees.
//!
//! All results are exact unbounded integers. Every division performed here
//! is checked for a zero remainder at runtime; a nonzero remainder means a
//! transcribed formula is wrong and the operation panics rather than
//! returning a silently truncated value.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{CheckedSub, One, Zero};
use thiserror::Error;

/// Exact nonnegative integer of unbounded magnitude.
pub type Count = BigUint;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormulaError {
    #[error("branching factor must be at least 2, got {0}")]
    BranchingTooSmall(u64),
    #[error("path length must be at least 1")]
    ZeroPathLength,
    #[error("type index {s} outside [0, {max}]")]
    TypeIndexOutOfRange { s: u32, max: u32 },
    #[error("path length {t} outside [1, {max}]")]
    LengthOutOfDomain { t: u32, max: u32 },
    #[error("a diameter-0 tree has no bridge edge")]
    NoBridgeEdge,
    #[error("leaf count {n} does not match the perfect binary tree of diameter {diameter}")]
    LeafCountMismatch { n: String, diameter: u32 },
}

/// Symbolic description of the perfect rooted m-ary tree of depth r.
///
/// The root has degree m, every other internal vertex has degree m+1, and
/// every leaf sits at depth exactly r. No vertices are materialized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RootedShape {
    m: u64,
    depth: u32,
}

impl RootedShape {
    pub fn new(m: u64, depth: u32) -> Result<Self, FormulaError> {
        check_branching(m)?;
        Ok(RootedShape { m, depth })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    /// Vertex count (m^{r+1} - 1) / (m - 1).
    pub fn vertex_count(&self) -> Count {
        vr(self.m, self.depth).expect("shape already validated")
    }
}

/// Symbolic description of the perfect unrooted m-ary tree of diameter D.
///
/// Every degree is 1 or m+1, and every leaf attains the diameter. For D >= 1
/// the tree splits across a bridge edge into two perfect rooted trees.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnrootedShape {
    m: u64,
    diameter: u32,
}

impl UnrootedShape {
    pub fn new(m: u64, diameter: u32) -> Result<Self, FormulaError> {
        check_branching(m)?;
        Ok(UnrootedShape { m, diameter })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn diameter(&self) -> u32 {
        self.diameter
    }

    /// Half-depth r with D = 2r - 1 (odd D) or D = 2r (even D).
    pub fn half_depth(&self) -> u32 {
        self.diameter.div_ceil(2)
    }

    /// Depths of the two rooted halves joined by the bridge edge.
    /// Odd D = 2r-1 gives (r-1, r-1); even D = 2r gives (r, r-1).
    /// Requires D >= 1.
    pub fn half_shapes(&self) -> (RootedShape, RootedShape) {
        assert!(self.diameter >= 1, "diameter-0 tree has no halves");
        let r = self.half_depth();
        let (d1, d2) = if self.diameter % 2 == 1 {
            (r - 1, r - 1)
        } else {
            (r, r - 1)
        };
        (
            RootedShape { m: self.m, depth: d1 },
            RootedShape { m: self.m, depth: d2 },
        )
    }

    pub fn vertex_count(&self) -> Count {
        vu(self.m, self.diameter).expect("shape already validated")
    }
}

/// Path length t >= 1, with the split index k = ceil(t/2) so that t = 2k-1
/// when odd and t = 2k when even.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathLength(u32);

impl PathLength {
    pub fn new(t: u32) -> Result<Self, FormulaError> {
        if t == 0 {
            return Err(FormulaError::ZeroPathLength);
        }
        Ok(PathLength(t))
    }

    pub fn get(&self) -> u32 {
        self.0
    }

    pub fn k(&self) -> u32 {
        self.0.div_ceil(2)
    }

    pub fn is_even(&self) -> bool {
        self.0.is_multiple_of(2)
    }
}

fn check_branching(m: u64) -> Result<(), FormulaError> {
    if m < 2 {
        Err(FormulaError::BranchingTooSmall(m))
    } else {
        Ok(())
    }
}

fn pow(m: u64, e: u32) -> Count {
    BigUint::from(m).pow(e)
}

/// Divides exactly, panicking on a nonzero remainder.
fn exact_div(numerator: Count, divisor: &Count) -> Count {
    let (q, rem) = numerator.div_rem(divisor);
    assert!(rem.is_zero(), "inexact division: remainder {rem} by {divisor}");
    q
}

fn exact_half(n: Count) -> Count {
    exact_div(n, &BigUint::from(2u32))
}

fn sub(a: Count, b: &Count) -> Count {
    a.checked_sub(b)
        .expect("formula produced a negative intermediate")
}

/// Geometric sum m^a + m^{a+1} + ... + m^b = (m^{b+1} - m^a) / (m - 1).
/// Returns 0 for b < a (empty sum).
pub fn geom_sum(m: u64, a: u32, b: u32) -> Result<Count, FormulaError> {
    check_branching(m)?;
    if b < a {
        return Ok(Count::zero());
    }
    Ok(exact_div(pow(m, b + 1) - pow(m, a), &BigUint::from(m - 1)))
}

/// Vertex count of the perfect rooted m-ary tree of depth d:
/// V_R(d) = (m^{d+1} - 1) / (m - 1).
pub fn vr(m: u64, d: u32) -> Result<Count, FormulaError> {
    check_branching(m)?;
    Ok(exact_div(pow(m, d + 1) - 1u32, &BigUint::from(m - 1)))
}

/// Vertex count of the perfect unrooted m-ary tree of diameter d:
/// (2m^{(d+1)/2} - 2) / (m-1) for odd d, ((m+1)m^{d/2} - 2) / (m-1) for even d.
pub fn vu(m: u64, d: u32) -> Result<Count, FormulaError> {
    check_branching(m)?;
    let numerator = if d % 2 == 1 {
        2u32 * pow(m, d.div_ceil(2)) - 2u32
    } else {
        (m + 1) * pow(m, d / 2) - 2u32
    };
    Ok(exact_div(numerator, &BigUint::from(m - 1)))
}

/// Number of type-[s, t-s] paths rooted at the root of the perfect rooted
/// m-ary tree: 0 if r < t-s, else m^t (s=0), (m-1)m^{t-1} (0 < s < t/2),
/// or (m-1)m^{t-1}/2 (s = t/2).
pub fn type_path_count(
    shape: &RootedShape,
    s: u32,
    t: PathLength,
) -> Result<Count, FormulaError> {
    let max = t.get() / 2;
    if s > max {
        return Err(FormulaError::TypeIndexOutOfRange { s, max });
    }
    let m = shape.m;
    if shape.depth < t.get() - s {
        return Ok(Count::zero());
    }
    if s == 0 {
        return Ok(pow(m, t.get()));
    }
    let unhalved = (m - 1) * pow(m, t.get() - 1);
    if t.is_even() && s == max {
        // (m-1)m^{t-1} is even for t >= 2: either m or m-1 is even.
        Ok(exact_half(unhalved))
    } else {
        Ok(unhalved)
    }
}

/// Path count P_m(r, t) in the perfect rooted m-ary tree, piecewise by the
/// parity of t and the position of r relative to t. Total in t: lengths
/// beyond the longest path (t > 2r) count zero.
pub fn rooted_count_prop(shape: &RootedShape, t: PathLength) -> Count {
    let (m, r) = (shape.m, shape.depth);
    let k = t.k();
    if t.get() > 2 * r {
        return Count::zero();
    }
    if t.is_even() {
        // t = 2k: m^{2k-1} ((m+1)(m^{r-k+1}-1)/(2(m-1)) - c),
        // c = r-k+1 for r < 2k, c = k for r >= 2k. Computed numerator-first
        // so the halving happens after the m^{2k-1} factor makes it even.
        let c = if r < 2 * k { r - k + 1 } else { k };
        let series = geom_sum(m, 0, r - k).expect("validated");
        let inner = sub((m + 1) * series, &(2u32 * BigUint::from(c)));
        exact_half(pow(m, 2 * k - 1) * inner)
    } else {
        // t = 2k-1: m^{2k-2} ((m^{r-k+2}-1)/(m-1) - c),
        // c = r-k+2 for r < 2k-1, c = k for r >= 2k-1.
        let c = if r < 2 * k - 1 { r - k + 2 } else { k };
        let series = vr(m, r - k + 1).expect("validated");
        pow(m, 2 * k - 2) * sub(series, &BigUint::from(c))
    }
}

/// P_m(r, t) restated through V_R: for odd t,
/// m^{(t-1)/2}(V_R(r) - V_R((t-1)/2)) - c m^{t-1} with c = (t-1)/2 for
/// t <= r and c = r - (t-1)/2 for t > r; the even case carries the extra
/// (m+1)/2 factor and c = t/2 or r - t/2 + 1. Domain 1 <= t <= 2r.
pub fn rooted_count_theorem(
    shape: &RootedShape,
    t: PathLength,
) -> Result<Count, FormulaError> {
    let (m, r) = (shape.m, shape.depth);
    let tv = t.get();
    if tv > 2 * r {
        return Err(FormulaError::LengthOutOfDomain { t: tv, max: 2 * r });
    }
    if t.is_even() {
        let h = tv / 2;
        let diff = sub(vr(m, r)?, &vr(m, h - 1)?);
        let lead = exact_half((m + 1) * pow(m, h - 1) * diff);
        let c = if tv <= r { h } else { r - h + 1 };
        Ok(sub(lead, &(c * pow(m, tv - 1))))
    } else {
        let h = (tv - 1) / 2;
        let diff = sub(vr(m, r)?, &vr(m, h)?);
        let c = if tv <= r { h } else { r - h };
        Ok(sub(pow(m, h) * diff, &(c * pow(m, tv - 1))))
    }
}

/// Path count U_m(D, t) in the perfect unrooted m-ary tree, dispatching on
/// the parities of D and t. Total in t: zero when t > D.
pub fn unrooted_count_prop(shape: &UnrootedShape, t: PathLength) -> Count {
    let (m, diameter) = (shape.m, shape.diameter);
    if t.get() > diameter {
        return Count::zero();
    }
    let r = shape.half_depth();
    let k = t.k();
    let m_big = BigUint::from(m);
    let m1 = &m_big - 1u32;
    match (diameter % 2 == 1, t.is_even()) {
        // D = 2r-1, t = 2k-1: m^{2k-2}(2m^{r-k+1} - (m+1)) / (m-1)
        (true, false) => {
            let inner = sub(2u32 * pow(m, r - k + 1), &BigUint::from(m + 1));
            exact_div(pow(m, 2 * k - 2) * inner, &m1)
        }
        // D = 2r-1, t = 2k: m^{2k-1}(m+1)(m^{r-k} - 1) / (m-1)
        (true, true) => {
            let inner = (m + 1) * sub(pow(m, r - k), &One::one());
            exact_div(pow(m, 2 * k - 1) * inner, &m1)
        }
        // D = 2r, t = 2k-1: m^{2k-2}(m+1)(m^{r-k+1} - 1) / (m-1)
        (false, false) => {
            let inner = (m + 1) * sub(pow(m, r - k + 1), &One::one());
            exact_div(pow(m, 2 * k - 2) * inner, &m1)
        }
        // D = 2r, t = 2k: m^{2k-1}((m+1)^2 m^{r-k} - 2(m+1)) / (2(m-1))
        (false, true) => {
            let inner = sub(
                (m + 1) * (m + 1) * pow(m, r - k),
                &BigUint::from(2 * (m + 1)),
            );
            exact_div(pow(m, 2 * k - 1) * inner, &(2u32 * m1))
        }
    }
}

/// U_m(D, t) restated through V: m^{(t-1)/2}(V(D) - V(t-1)) for odd t,
/// (m+1)m^{t/2-1}(V(D) - V(t-1))/2 for even t. Domain 1 <= t <= D.
pub fn unrooted_count_theorem(
    shape: &UnrootedShape,
    t: PathLength,
) -> Result<Count, FormulaError> {
    let (m, diameter) = (shape.m, shape.diameter);
    let tv = t.get();
    if tv > diameter {
        return Err(FormulaError::LengthOutOfDomain { t: tv, max: diameter });
    }
    let diff = sub(vu(m, diameter)?, &vu(m, tv - 1)?);
    if t.is_even() {
        Ok(exact_half((m + 1) * pow(m, tv / 2 - 1) * diff))
    } else {
        Ok(pow(m, (tv - 1) / 2) * diff)
    }
}

/// Number of length-t paths containing the bridge edge of the two-half
/// decomposition, i.e. pairs at distance t with endpoints in different
/// halves. Piecewise per the parities of D and t.
pub fn bridge_path_count(
    shape: &UnrootedShape,
    t: PathLength,
) -> Result<Count, FormulaError> {
    let (m, diameter) = (shape.m, shape.diameter);
    if diameter == 0 {
        return Err(FormulaError::NoBridgeEdge);
    }
    let r = shape.half_depth();
    let k = t.k();
    let coefficient: u64 = match (diameter % 2 == 1, t.is_even()) {
        (true, false) => {
            if r < k {
                0
            } else if r < 2 * k - 1 {
                u64::from(2 * r - 2 * k + 1)
            } else {
                u64::from(2 * k - 1)
            }
        }
        (true, true) => {
            if r <= k {
                0
            } else if r <= 2 * k {
                u64::from(2 * r - 2 * k)
            } else {
                u64::from(2 * k)
            }
        }
        (false, false) => {
            if r < k {
                0
            } else if r < 2 * k - 1 {
                u64::from(2 * r - 2 * k + 2)
            } else {
                u64::from(2 * k - 1)
            }
        }
        (false, true) => {
            if r < k {
                0
            } else if r < 2 * k {
                u64::from(2 * r - 2 * k + 1)
            } else {
                u64::from(2 * k)
            }
        }
    };
    if coefficient == 0 {
        return Ok(Count::zero());
    }
    let exponent = if t.is_even() { 2 * k - 1 } else { 2 * k - 2 };
    Ok(coefficient * pow(m, exponent))
}

/// Degree-1 vertex count of the perfect unrooted m-ary tree: 2m^{r-1} for
/// odd D = 2r-1, m^r + m^{r-1} for even D = 2r. Requires D >= 1.
pub fn unrooted_leaf_count(shape: &UnrootedShape) -> Result<Count, FormulaError> {
    if shape.diameter == 0 {
        return Err(FormulaError::NoBridgeEdge);
    }
    let r = shape.half_depth();
    if shape.diameter % 2 == 1 {
        Ok(2u32 * pow(shape.m, r - 1))
    } else {
        Ok(pow(shape.m, r) + pow(shape.m, r - 1))
    }
}

/// De Jong et al. count for the perfect binary tree of diameter D with n
/// leaves: 2^{(t+1)/2}(n - 3*2^{(t-3)/2}) for odd t, 3*2^{t/2-1}(n - 2^{t/2})
/// for even t, valid for 3 <= t <= D. n must be the leaf count of that tree.
pub fn dejong_binary(
    n: &Count,
    t: PathLength,
    diameter: u32,
) -> Result<Count, FormulaError> {
    let tv = t.get();
    if tv < 3 || tv > diameter {
        return Err(FormulaError::LengthOutOfDomain {
            t: tv,
            max: diameter,
        });
    }
    let shape = UnrootedShape::new(2, diameter)?;
    let expected = unrooted_leaf_count(&shape)?;
    if *n != expected {
        return Err(FormulaError::LeafCountMismatch {
            n: n.to_string(),
            diameter,
        });
    }
    if t.is_even() {
        let inner = sub(n.clone(), &pow(2, tv / 2));
        Ok(3u32 * pow(2, tv / 2 - 1) * inner)
    } else {
        let inner = sub(n.clone(), &(3u32 * pow(2, (tv - 3) / 2)));
        Ok(pow(2, tv.div_ceil(2)) * inner)
    }
}

/// Number of unordered vertex pairs, n(n-1)/2; the closure total of any
/// distance histogram on n vertices.
pub fn pair_total(n: &Count) -> Count {
    if n.is_zero() {
        return Count::zero();
    }
    exact_half(n * (n - 1u32))
}
