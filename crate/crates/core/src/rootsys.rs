//! The G2 root system in the (alpha, beta) coordinate basis, its Weyl group
//! and the double coset combinatorics of the parabolics P (Levi contains
//! U_beta) and P' (Levi contains U_alpha).

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("{0} is not a root of G2")]
    NotARoot(Root),
    #[error("{0} is not one of the double coset representatives")]
    NotARepresentative(String),
}

/// `m*alpha + n*beta`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct Root {
    pub m: i32,
    pub n: i32,
}

impl Root {
    pub const fn new(m: i32, n: i32) -> Self {
        Root { m, n }
    }

    pub fn is_root(self) -> bool {
        let (m, n) = (self.m.abs(), self.n.abs());
        if self.m != 0 && self.n != 0 && self.m.signum() != self.n.signum() {
            return false;
        }
        matches!((m, n), (1, 0) | (0, 1) | (1, 1) | (2, 1) | (3, 1) | (3, 2))
    }

    pub fn is_positive(self) -> bool {
        self.m > 0 || (self.m == 0 && self.n > 0)
    }

    /// The bilinear form with (alpha,alpha)=2, (beta,beta)=6, (alpha,beta)=-3.
    pub fn inner(self, other: Root) -> i32 {
        2 * self.m * other.m + 6 * self.n * other.n - 3 * (self.m * other.n + self.n * other.m)
    }

    pub fn height(self) -> i32 {
        self.m + self.n
    }

    pub fn is_long(self) -> bool {
        self.inner(self) == 6
    }

    pub fn ascii(self) -> String {
        let body = |m: i32, n: i32| -> String {
            let mut s = String::new();
            if m != 0 {
                if m != 1 {
                    s.push_str(&m.to_string());
                }
                s.push('a');
            }
            if n != 0 {
                if !s.is_empty() {
                    s.push('+');
                }
                if n != 1 {
                    s.push_str(&n.to_string());
                }
                s.push('b');
            }
            if s.is_empty() {
                s.push('0');
            }
            s
        };
        if self.is_positive() || (self.m == 0 && self.n == 0) {
            body(self.m, self.n)
        } else {
            let inner = body(-self.m, -self.n);
            if inner.contains('+') {
                format!("-({inner})")
            } else {
                format!("-{inner}")
            }
        }
    }
}

impl std::ops::Add for Root {
    type Output = Root;
    fn add(self, o: Root) -> Root {
        Root::new(self.m + o.m, self.n + o.n)
    }
}

impl std::ops::Neg for Root {
    type Output = Root;
    fn neg(self) -> Root {
        Root::new(-self.m, -self.n)
    }
}

impl std::ops::Mul<Root> for i32 {
    type Output = Root;
    fn mul(self, r: Root) -> Root {
        Root::new(self * r.m, self * r.n)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.ascii().replace('a', "α").replace('b', "β");
        f.write_str(&s)
    }
}

pub const ALPHA: Root = Root::new(1, 0);
pub const BETA: Root = Root::new(0, 1);
pub const ALPHA_BETA: Root = Root::new(1, 1);
pub const TWO_ALPHA_BETA: Root = Root::new(2, 1);
pub const THREE_ALPHA_BETA: Root = Root::new(3, 1);
pub const THREE_ALPHA_TWO_BETA: Root = Root::new(3, 2);

/// Positive roots in the fixed normal order (height, then alpha before beta).
pub const POSITIVE_ROOTS: [Root; 6] = [
    ALPHA,
    BETA,
    ALPHA_BETA,
    TWO_ALPHA_BETA,
    THREE_ALPHA_BETA,
    THREE_ALPHA_TWO_BETA,
];

/// Roots of the unipotent radical V of P, in bracket order `[r1,..,r5]`.
pub const V_ROOTS: [Root; 5] = [
    ALPHA,
    ALPHA_BETA,
    TWO_ALPHA_BETA,
    THREE_ALPHA_BETA,
    THREE_ALPHA_TWO_BETA,
];

/// All twelve roots: positives in normal order, then their negatives.
pub fn all_roots() -> [Root; 12] {
    let mut out = [ALPHA; 12];
    for (i, r) in POSITIVE_ROOTS.iter().enumerate() {
        out[i] = *r;
        out[i + 6] = -*r;
    }
    out
}

/// Position of a root in [`all_roots`].
pub fn root_index(r: Root) -> Option<usize> {
    all_roots().iter().position(|x| *x == r)
}

/// Position of a positive root in the normal order.
pub fn normal_index(r: Root) -> Option<usize> {
    POSITIVE_ROOTS.iter().position(|x| *x == r)
}

/// `<g1, g2> = 2(g1,g2)/(g2,g2)`.
pub fn pairing(g1: Root, g2: Root) -> Result<i32, RootError> {
    if !g2.is_root() {
        return Err(RootError::NotARoot(g2));
    }
    let num = 2 * g1.inner(g2);
    let den = g2.inner(g2);
    debug_assert_eq!(num % den, 0, "pairing against a root is integral on the root lattice");
    Ok(num / den)
}

/// `s_{g2}(g1) = g1 - <g1,g2> g2`.
pub fn reflect(g1: Root, g2: Root) -> Result<Root, RootError> {
    let c = pairing(g1, g2)?;
    Ok(Root::new(g1.m - c * g2.m, g1.n - c * g2.n))
}

/// Coefficients of the coroot of `g` in the basis (alpha^vee, beta^vee).
pub fn coroot_coords(g: Root) -> Result<(i32, i32), RootError> {
    if !g.is_root() {
        return Err(RootError::NotARoot(g));
    }
    let gg = g.inner(g);
    Ok((g.m * ALPHA.inner(ALPHA) / gg, g.n * BETA.inner(BETA) / gg))
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum Simple {
    Alpha,
    Beta,
}

impl Simple {
    pub fn root(self) -> Root {
        match self {
            Simple::Alpha => ALPHA,
            Simple::Beta => BETA,
        }
    }

    fn matrix(self) -> [[i32; 2]; 2] {
        let r = self.root();
        let ia = reflect(ALPHA, r).expect("simple root");
        let ib = reflect(BETA, r).expect("simple root");
        [[ia.m, ib.m], [ia.n, ib.n]]
    }
}

/// A Weyl group element: its action on (m,n) coordinates together with a
/// word in the simple reflections. Equality and hashing use the action only.
#[derive(Clone, Debug, Serialize)]
pub struct WeylElement {
    pub action: [[i32; 2]; 2],
    pub word: Vec<Simple>,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.action == other.action
    }
}

impl Eq for WeylElement {}

impl std::hash::Hash for WeylElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.action.hash(state);
    }
}

fn mat_mul(a: [[i32; 2]; 2], b: [[i32; 2]; 2]) -> [[i32; 2]; 2] {
    let mut c = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

impl WeylElement {
    pub fn identity() -> Self {
        WeylElement { action: [[1, 0], [0, 1]], word: Vec::new() }
    }

    pub fn simple(s: Simple) -> Self {
        WeylElement { action: s.matrix(), word: vec![s] }
    }

    /// Product of simple reflections, leftmost factor acting last.
    pub fn from_word(word: &[Simple]) -> Self {
        word.iter()
            .fold(Self::identity(), |acc, s| acc.compose(&Self::simple(*s)))
            .reduced()
    }

    /// `self ∘ other`; words are concatenated, see [`WeylElement::reduced`].
    pub fn compose(&self, other: &Self) -> Self {
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        WeylElement { action: mat_mul(self.action, other.action), word }
    }

    pub fn inverse(&self) -> Self {
        let mut word = self.word.clone();
        word.reverse();
        let [[a, b], [c, d]] = self.action;
        let det = a * d - b * c;
        WeylElement { action: [[d * det, -b * det], [-c * det, a * det]], word }
    }

    pub fn apply(&self, r: Root) -> Root {
        let [[a, b], [c, d]] = self.action;
        Root::new(a * r.m + b * r.n, c * r.m + d * r.n)
    }

    pub fn is_identity(&self) -> bool {
        self.action == [[1, 0], [0, 1]]
    }

    /// Length of the stored word; equal to the Coxeter length once reduced.
    pub fn length(&self) -> usize {
        self.word.len()
    }

    /// Replace the word by the shortest word found by breadth-first search.
    pub fn reduced(self) -> Self {
        weyl_group()
            .into_iter()
            .find(|w| *w == self)
            .expect("every 2x2 action built from reflections lies in W")
    }

    pub fn word_string(&self) -> String {
        if self.word.is_empty() {
            return "1".into();
        }
        self.word
            .iter()
            .map(|s| match s {
                Simple::Alpha => "s_a",
                Simple::Beta => "s_b",
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.word_string())
    }
}

/// The twelve Weyl group elements in breadth-first order, each carrying a
/// reduced word; the first element found for an action has minimal length.
pub fn weyl_group() -> Vec<WeylElement> {
    let id = WeylElement::identity();
    let mut seen: HashSet<[[i32; 2]; 2]> = HashSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(id.action);
    queue.push_back(id);
    while let Some(w) = queue.pop_front() {
        for s in [Simple::Alpha, Simple::Beta] {
            let next = w.compose(&WeylElement::simple(s));
            if seen.insert(next.action) {
                queue.push_back(next);
            }
        }
        out.push(w);
    }
    out
}

/// `{1, s}` for a simple reflection `s`.
pub fn parabolic_subgroup(s: Simple) -> Vec<WeylElement> {
    vec![WeylElement::identity(), WeylElement::simple(s)]
}

#[derive(Clone, Debug, Serialize)]
pub struct DoubleCoset {
    pub representative: WeylElement,
    pub elements: Vec<WeylElement>,
}

/// Partition W into double cosets `left \ W / right`, each represented by
/// its unique element of minimal length.
pub fn double_coset_reps(left: &[WeylElement], right: &[WeylElement]) -> Vec<DoubleCoset> {
    let mut assigned: HashSet<WeylElement> = HashSet::new();
    let mut out = Vec::new();
    for w in weyl_group() {
        if assigned.contains(&w) {
            continue;
        }
        let mut elements: Vec<WeylElement> = Vec::new();
        for l in left {
            for r in right {
                let e = l.compose(&w).compose(r).reduced();
                if !elements.contains(&e) {
                    elements.push(e);
                }
            }
        }
        elements.sort_by_key(|e| e.length());
        for e in &elements {
            assigned.insert(e.clone());
        }
        out.push(DoubleCoset { representative: w, elements });
    }
    out
}

/// The representatives `1, s_b s_a, s_b s_a s_b s_a` in the order used by the
/// unfolding.
pub fn unfolding_representatives() -> [WeylElement; 3] {
    use Simple::*;
    [
        WeylElement::identity(),
        WeylElement::from_word(&[Beta, Alpha]),
        WeylElement::from_word(&[Beta, Alpha, Beta, Alpha]),
    ]
}

/// How the Levi SL2 of P (roots ±beta) meets the conjugate of P'.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LeviIntersection {
    Full,
    Borel,
    OppositeBorel,
    Torus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilizerData {
    /// Roots of V sent into the root set of P'.
    pub v_roots: Vec<Root>,
    pub levi: LeviIntersection,
}

/// Root set of P' = M'V': all positive roots together with -alpha.
pub fn p_prime_roots() -> Vec<Root> {
    let mut v: Vec<Root> = POSITIVE_ROOTS.to_vec();
    v.push(-ALPHA);
    v
}

/// `V^delta` and `SL2^delta` for one of the three unfolding representatives.
pub fn stabilizer_data(delta: &WeylElement) -> Result<StabilizerData, RootError> {
    if !unfolding_representatives().contains(delta) {
        return Err(RootError::NotARepresentative(delta.word_string()));
    }
    let target = p_prime_roots();
    let v_roots = V_ROOTS
        .iter()
        .copied()
        .filter(|r| target.contains(&delta.apply(*r)))
        .collect();
    let up = target.contains(&delta.apply(BETA));
    let down = target.contains(&delta.apply(-BETA));
    let levi = match (up, down) {
        (true, true) => LeviIntersection::Full,
        (true, false) => LeviIntersection::Borel,
        (false, true) => LeviIntersection::OppositeBorel,
        (false, false) => LeviIntersection::Torus,
    };
    Ok(StabilizerData { v_roots, levi })
}
