use alloc::collections::BTreeSet;
use alloc::string::ToString;
use alloc::vec::Vec;

use crate::angle::{check_degree, Angle};
use crate::error::{Error, Result};
use crate::parabolic::{beta_family, classify_angle, satellite_conditions, special_data, special_word, ParabolicClass};
use crate::word::Word;

/// The combinatorial effect of one loop around a parabolic parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MoveKind {
    /// The points `a` and `b` are exchanged. Monodromy commutes with
    /// `f_c`, so `shift^j(a)` and `shift^j(b)` are exchanged for every `j`.
    Transposition { a: Word, b: Word },
    /// The orbit of `representative` is rotated: one counterclockwise turn
    /// sends each point `x` of the orbit to `shift^(-1)(x)`.
    Cycle { representative: Word, length: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromyMove {
    pub center: Angle,
    pub kind: MoveKind,
    pub winding: i32,
}

impl MonodromyMove {
    /// Image of the itinerary `x` after `winding` turns.
    pub fn apply(&self, x: &Word) -> Word {
        match &self.kind {
            MoveKind::Transposition { a, b } => {
                if self.winding % 2 == 0 {
                    return x.clone();
                }
                for j in 0..a.len() as isize {
                    if *x == a.rotate(j) {
                        return b.rotate(j);
                    }
                    if *x == b.rotate(j) {
                        return a.rotate(j);
                    }
                }
                x.clone()
            }
            MoveKind::Cycle { representative, .. } => {
                if representative.rotations().contains(x) {
                    x.rotate(-(self.winding as isize))
                } else {
                    x.clone()
                }
            }
        }
    }

    /// Nontrivial cycles of the induced permutation, each starting at its
    /// least element, sorted.
    pub fn cycles(&self) -> Vec<Vec<Word>> {
        let support: BTreeSet<Word> = match &self.kind {
            MoveKind::Transposition { a, b } => a.rotations().into_iter().chain(b.rotations()).collect(),
            MoveKind::Cycle { representative, .. } => representative.rotations().into_iter().collect(),
        };
        permutation_cycles(&support, |x| self.apply(x))
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            MoveKind::Transposition { .. } => "transposition",
            MoveKind::Cycle { .. } => "cycle",
        }
    }
}

/// Nontrivial cycles of a permutation of `support`.
pub fn permutation_cycles(support: &BTreeSet<Word>, map: impl Fn(&Word) -> Word) -> Vec<Vec<Word>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for x in support {
        if seen.contains(x) {
            continue;
        }
        let mut cycle = alloc::vec![x.clone()];
        seen.insert(x.clone());
        let mut y = map(x);
        while y != *x {
            seen.insert(y.clone());
            cycle.push(y.clone());
            y = map(&y);
        }
        if cycle.len() > 1 {
            out.push(cycle);
        }
    }
    out
}

fn transposition(center: Angle, a: Word, b: Word) -> Result<MonodromyMove> {
    for w in [&a, &b] {
        if !w.is_primitive() {
            return Err(Error::NotExactPeriod(w.to_string()));
        }
    }
    if a.rotations().contains(&b) {
        return Err(Error::Inconsistent("transposed itineraries lie in one orbit"));
    }
    Ok(MonodromyMove { center, kind: MoveKind::Transposition { a, b }, winding: 1 })
}

/// The exchange produced by a loop around the landing point of `theta`
/// when that point is a primitive parabolic parameter: the kneading body
/// of `theta` followed by `k` and by `k+1 mod d`, where `k` is the last
/// digit of the expansion. `theta` need not be maximal.
pub fn transposition_at(theta: &Angle) -> Result<MonodromyMove> {
    let n = theta.period()?;
    if n < 2 {
        return Err(Error::PeriodOne);
    }
    let d = theta.degree();
    let body = theta.kneading_sequence()?.body_word().expect("period at least two");
    let k = theta.d_expansion()?.last();
    let digit = |e: u8| Word::new(alloc::vec![e], d).expect("digit below degree");
    let a = body.concat(&digit(k))?;
    let b = body.concat(&digit(((k as u32 + 1) % d) as u8))?;
    transposition(*theta, a, b)
}

/// Transposition at a maximal angle certified primitive.
pub fn move_for_primitive(theta: &Angle) -> Result<MonodromyMove> {
    match classify_angle(theta)? {
        ParabolicClass::PrimitiveCertified => transposition_at(theta),
        _ => Err(Error::NotPrimitive(*theta)),
    }
}

/// One counterclockwise turn around the landing point of the special
/// angle.
pub fn special_cycle_move(degree: u32, n: usize) -> Result<MonodromyMove> {
    let (theta, _) = special_data(degree, n)?;
    Ok(MonodromyMove {
        center: theta,
        kind: MoveKind::Cycle { representative: special_word(degree, n)?, length: n },
        winding: 1,
    })
}

/// The move predicted for a loop around the landing point of any periodic
/// angle of period at least two, when one is known: the special cycle,
/// or a transposition when the satellite conditions fail.
pub fn predicted_move(theta: &Angle) -> Result<Option<MonodromyMove>> {
    let n = theta.period()?;
    if n < 2 {
        return Err(Error::PeriodOne);
    }
    if *theta == special_data(theta.degree(), n)?.0 {
        return special_cycle_move(theta.degree(), n).map(Some);
    }
    if satellite_conditions(theta)?.is_none() {
        return transposition_at(theta).map(Some);
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionPlan {
    pub source: Word,
    pub target: Word,
    pub moves: Vec<MonodromyMove>,
    /// Digit sum of the tracked point before the first macro-step and after
    /// each one.
    pub digit_sums: Vec<u32>,
}

impl ConnectionPlan {
    /// Image of `x` under the moves applied in order.
    pub fn apply(&self, x: &Word) -> Word {
        self.moves.iter().fold(x.clone(), |acc, mv| mv.apply(&acc))
    }
}

/// Connects the point with itinerary `start` to the orbit of the special
/// itinerary `(d-1)...(d-1)(d-2)`.
///
/// Each macro-step looks at the maximal rotation of the current point. If
/// its angle is certified primitive, one transposition raises the last
/// digit by one. Otherwise the beta chain moves the last digit from
/// `nu_t - 1` down to 0 and then around to `d - 1`.
pub fn connect(degree: u32, n: usize, start: &Word) -> Result<ConnectionPlan> {
    check_degree(degree)?;
    if start.degree() != degree {
        return Err(Error::DegreeMismatch(start.degree(), degree));
    }
    if start.len() != n || !start.is_primitive() {
        return Err(Error::NotExactPeriod(start.to_string()));
    }
    let special = special_word(degree, n)?;
    let bound = (degree - 1) * n as u32 - 1;
    let mut current = start.clone();
    let mut moves = Vec::new();
    let mut digit_sums = alloc::vec![current.digit_sum()];
    loop {
        let m = current.maximal_rotation();
        if m == special {
            break;
        }
        let theta = Angle::from_word(&m);
        let step: Vec<MonodromyMove> = match classify_angle(&theta)? {
            ParabolicClass::PrimitiveCertified => alloc::vec![move_for_primitive(&theta)?],
            ParabolicClass::SatelliteCandidate { .. } => beta_family(&theta)?
                .betas
                .into_iter()
                .map(|beta| transposition(beta.angle, beta.a, beta.b))
                .collect::<Result<_>>()?,
            ParabolicClass::SpecialSatellite { .. } => break,
        };
        for mv in step {
            current = mv.apply(&current);
            moves.push(mv);
        }
        let sum = current.digit_sum();
        if sum <= *digit_sums.last().expect("nonempty") || sum > bound {
            return Err(Error::Inconsistent("digit sum failed to increase within the bound"));
        }
        digit_sums.push(sum);
    }
    Ok(ConnectionPlan { source: start.clone(), target: current, moves, digit_sums })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitivityReport {
    pub degree: u32,
    pub period: usize,
    pub vertices: usize,
    pub edges: usize,
    pub components: usize,
    pub connected: bool,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Builds the graph on exact-period-`n` itineraries whose edges are the
/// permutations of every primitive transposition at a maximal angle of
/// period `n`, every beta chain, and the special cycle, and reports its
/// connected components.
pub fn transitivity_certificate(degree: u32, n: usize, budget: u64) -> Result<TransitivityReport> {
    check_degree(degree)?;
    if n < 2 {
        return Err(Error::PeriodOne);
    }
    let total = (degree as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
    if total > budget {
        return Err(Error::BudgetExceeded(total));
    }
    let words: Vec<Word> = crate::word::exact_period_words(degree, n)?;
    let index_of = |w: &Word| -> usize {
        words.binary_search(w).expect("exact-period words are enumerated")
    };
    let mut moves: Vec<MonodromyMove> = Vec::new();
    for w in &words {
        if w.maximal_rotation() != *w {
            continue;
        }
        let theta = Angle::from_word(w);
        match classify_angle(&theta)? {
            ParabolicClass::PrimitiveCertified => moves.push(move_for_primitive(&theta)?),
            ParabolicClass::SatelliteCandidate { .. } => {
                for beta in beta_family(&theta)?.betas {
                    moves.push(transposition(beta.angle, beta.a, beta.b)?);
                }
            }
            ParabolicClass::SpecialSatellite { .. } => moves.push(special_cycle_move(degree, n)?),
        }
    }
    let mut edges = BTreeSet::new();
    for mv in &moves {
        for cycle in mv.cycles() {
            for pair in cycle.windows(2) {
                let (i, j) = (index_of(&pair[0]), index_of(&pair[1]));
                edges.insert((i.min(j), i.max(j)));
            }
        }
    }
    let mut uf = UnionFind::new(words.len());
    for &(i, j) in &edges {
        uf.union(i, j);
    }
    let components = (0..words.len()).filter(|&i| uf.find(i) == i).count();
    Ok(TransitivityReport {
        degree,
        period: n,
        vertices: words.len(),
        edges: edges.len(),
        components,
        connected: components == 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::String;

    fn w(s: &str, d: u32) -> Word {
        Word::parse(s, d).unwrap()
    }

    fn a(p: u64, q: u64, d: u32) -> Angle {
        Angle::new(p, q, d).unwrap()
    }

    fn pair(mv: &MonodromyMove) -> (String, String) {
        match &mv.kind {
            MoveKind::Transposition { a, b } => (a.to_string(), b.to_string()),
            _ => panic!("expected a transposition"),
        }
    }

    #[test]
    fn primitive_moves() {
        assert_eq!(pair(&move_for_primitive(&a(4, 7, 2)).unwrap()), ("100".into(), "101".into()));
        assert_eq!(pair(&move_for_primitive(&a(3, 4, 3)).unwrap()), ("20".into(), "21".into()));
        assert_eq!(pair(&move_for_primitive(&a(27, 28, 3)).unwrap()), ("222000".into(), "222001".into()));
        assert!(matches!(move_for_primitive(&a(6, 7, 2)), Err(Error::NotPrimitive(_))));
    }

    #[test]
    fn equivariant_action() {
        let mv = move_for_primitive(&a(4, 7, 2)).unwrap();
        assert_eq!(mv.apply(&w("100", 2)), w("101", 2));
        assert_eq!(mv.apply(&w("001", 2)), w("011", 2));
        assert_eq!(mv.apply(&w("110", 2)), w("010", 2));
        assert_eq!(mv.cycles().len(), 3);
    }

    #[test]
    fn special_cycles() {
        let mv = special_cycle_move(2, 3).unwrap();
        assert_eq!(mv.apply(&w("110", 2)), w("011", 2));
        assert_eq!(mv.cycles(), alloc::vec![alloc::vec![w("011", 2), w("101", 2), w("110", 2)]]);
        let mv = special_cycle_move(3, 2).unwrap();
        assert_eq!(mv.cycles(), alloc::vec![alloc::vec![w("12", 3), w("21", 3)]]);
        let mv = special_cycle_move(2, 2).unwrap();
        assert_eq!(mv.apply(&w("10", 2)), w("01", 2));
    }

    #[test]
    fn connection_examples() {
        let plan = connect(2, 3, &w("100", 2)).unwrap();
        assert_eq!(plan.moves.len(), 1);
        assert_eq!(plan.moves[0].center, a(4, 7, 2));
        assert_eq!(plan.target, w("101", 2));
        let plan = connect(3, 2, &w("20", 3)).unwrap();
        assert_eq!(plan.moves.len(), 1);
        assert_eq!(plan.moves[0].center, a(3, 4, 3));
        assert_eq!(plan.target, w("21", 3));
        let plan = connect(2, 3, &w("110", 2)).unwrap();
        assert!(plan.moves.is_empty());
        assert!(matches!(connect(2, 4, &w("1010", 2)), Err(Error::NotExactPeriod(_))));
    }

    #[test]
    fn transitivity_examples() {
        for (d, n, v) in [(2, 3, 6), (2, 4, 12), (3, 2, 6)] {
            let r = transitivity_certificate(d, n, 1 << 20).unwrap();
            assert!(r.connected);
            assert_eq!(r.vertices, v);
        }
        assert!(matches!(transitivity_certificate(2, 30, 1000), Err(Error::BudgetExceeded(_))));
    }
}
