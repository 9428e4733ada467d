//! Three agents, majority threshold: a satisfying budget division always
//! exists and is found by reshuffling the demand matrix column by column.
//!
//! After padding rows to total exactly 1 (and reducing even project counts by
//! one), either some row majority-covers all three rows and is returned
//! directly, or the coverage relation is a 3-cycle. In the cyclic case every
//! column falls into one of seven order classes; columns are grouped into one
//! distinguished triple and a perfect matching of pairs, and each column gets
//! a bijective red/green/yellow coloring chosen so that each color line
//! majority-covers all three rows. The three lines are column-wise
//! permutations of the padded matrix, so their totals add to exactly 3 and at
//! least one line is budget-feasible; the cheapest feasible line is returned.

use super::ConstructiveError;
use crate::model::{tau_covers, Instance, Solution};
use crate::rational::{q_int, total, Q};
use num_traits::{One, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Color {
    Red,
    Green,
    Yellow,
}

use Color::{Green, Red, Yellow};

impl Color {
    pub const ALL: [Color; 3] = [Red, Green, Yellow];

    pub fn label(&self) -> &'static str {
        match self {
            Red => "red",
            Green => "green",
            Yellow => "yellow",
        }
    }
}

/// Order class of a column of the relabeled matrix (rows a, b, c).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QClass {
    /// c > a > b
    Q1,
    /// b > c > a
    Q2,
    /// a > b > c
    Q3,
    /// a >= c >= b, not all equal
    Q4,
    /// c >= b >= a, not all equal
    Q5,
    /// b >= a >= c, not all equal
    Q6,
    /// a = b = c
    Q7,
}

use QClass::{Q1, Q2, Q3, Q4, Q5, Q6, Q7};

fn classify(a: &Q, b: &Q, c: &Q) -> QClass {
    match (a > b, b > c, c > a) {
        (true, false, true) => Q1,
        (false, true, true) => Q2,
        (true, true, false) => Q3,
        (true, false, false) => Q4,
        (false, false, true) => Q5,
        (false, true, false) => Q6,
        (false, false, false) => Q7,
        (true, true, true) => unreachable!("a > b > c > a is cyclic"),
    }
}

/// Certificate of one run of the cyclic-case construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReshuffleState {
    /// Padded tight matrix, rows relabeled so that a covers b, b covers c,
    /// and c covers a at the majority threshold.
    pub matrix: Vec<Vec<Q>>,
    /// `matrix` row `r` is the original agent `original_agents[r]`.
    pub original_agents: [usize; 3],
    pub classes: Vec<QClass>,
    /// Leftover counts of Q1, Q2, Q3 after the forced cross-class matching.
    pub deltas: [usize; 3],
    /// One column each from Q1, Q2, Q3.
    pub triple: [usize; 3],
    pub pairs: Vec<(usize, usize)>,
    /// Per column, the colors of rows a, b, c.
    pub coloring: Vec<[Color; 3]>,
}

impl ReshuffleState {
    pub fn projects(&self) -> usize {
        self.matrix[0].len()
    }

    pub fn tau(&self) -> usize {
        self.projects().div_ceil(2)
    }

    /// The line of one color, if the coloring is bijective in every column.
    pub fn line(&self, color: Color) -> Option<Vec<Q>> {
        (0..self.projects())
            .map(|j| {
                let mut rows = (0..3).filter(|&r| self.coloring[j][r] == color);
                let row = rows.next()?;
                rows.next().is_none().then(|| self.matrix[row][j].clone())
            })
            .collect()
    }
}

/// Checks a reshuffle certificate: bijective coloring per column, every color
/// line majority-covers all three matrix rows, and the three line totals sum
/// to exactly 3.
pub fn reshuffle_verify(state: &ReshuffleState) -> bool {
    let m = state.projects();
    if state.matrix.len() != 3 || state.coloring.len() != m || m == 0 {
        return false;
    }
    let tau = state.tau();
    let mut line_total_sum = Q::zero();
    for color in Color::ALL {
        let Some(line) = state.line(color) else {
            return false;
        };
        for row in &state.matrix {
            if !tau_covers(&line, row, tau).expect("equal lengths") {
                return false;
            }
        }
        line_total_sum += total(&line);
    }
    line_total_sum == q_int(3)
}

/// How a three-agent majority solution was constructed; `verify` checks the
/// path-specific certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReshuffleTrace {
    /// Two projects: maximum first-column demand plus the remainder.
    PairSplit {
        matrix: Vec<Vec<Q>>,
        solution: Solution,
    },
    /// One padded row majority-covers all three rows.
    DirectCover { matrix: Vec<Vec<Q>>, row: usize },
    /// The full cyclic construction.
    Reshuffled(ReshuffleState),
    /// Even project count: last project dropped, solved, and restored as 0.
    DroppedLast { inner: Box<ReshuffleTrace> },
}

impl ReshuffleTrace {
    pub fn verify(&self) -> bool {
        match self {
            ReshuffleTrace::PairSplit { matrix, solution } => {
                solution.total() == Q::one()
                    && matrix
                        .iter()
                        .all(|row| tau_covers(solution.coords(), row, 1).unwrap_or(false))
            }
            ReshuffleTrace::DirectCover { matrix, row } => {
                let m = matrix[0].len();
                let tau = m.div_ceil(2);
                *row < 3
                    && matrix.iter().all(|r| total(r) == Q::one())
                    && matrix
                        .iter()
                        .all(|r| tau_covers(&matrix[*row], r, tau).unwrap_or(false))
            }
            ReshuffleTrace::Reshuffled(state) => reshuffle_verify(state),
            ReshuffleTrace::DroppedLast { inner } => inner.verify(),
        }
    }
}

/// Budget-feasible solution satisfying all three agents at the majority
/// threshold.
pub fn three_agent_half_solve(inst: &Instance) -> Result<Solution, ConstructiveError> {
    three_agent_half_solve_traced(inst).map(|(solution, _)| solution)
}

pub fn three_agent_half_solve_traced(
    inst: &Instance,
) -> Result<(Solution, ReshuffleTrace), ConstructiveError> {
    if inst.agents() != 3 || inst.projects() < 2 {
        return Err(ConstructiveError::WrongShape {
            expected: "3 agents and at least 2 projects",
            agents: inst.agents(),
            projects: inst.projects(),
        });
    }
    solve_rows(inst.rows())
}

fn solve_rows(rows: &[Vec<Q>]) -> Result<(Solution, ReshuffleTrace), ConstructiveError> {
    let m = rows[0].len();
    if m == 2 {
        let first = rows
            .iter()
            .map(|r| &r[0])
            .max()
            .expect("three rows")
            .clone();
        let second = Q::one() - &first;
        let solution = Solution::new(vec![first, second]).expect("split of 1 lies in [0,1]");
        let trace = ReshuffleTrace::PairSplit {
            matrix: rows.to_vec(),
            solution: solution.clone(),
        };
        return Ok((solution, trace));
    }
    if m.is_multiple_of(2) {
        // A majority solution for m - 1 projects is a majority solution for
        // m: the threshold is the same and the dropped coordinate becomes 0.
        let reduced: Vec<Vec<Q>> = rows.iter().map(|r| r[..m - 1].to_vec()).collect();
        let (inner_solution, inner_trace) = solve_rows(&reduced)?;
        let mut coords = inner_solution.coords().to_vec();
        coords.push(Q::zero());
        let solution = Solution::new(coords).expect("coordinates unchanged plus zero");
        return Ok((
            solution,
            ReshuffleTrace::DroppedLast {
                inner: Box::new(inner_trace),
            },
        ));
    }

    // Pad each row to total exactly 1 by growing its first coordinate;
    // satisfying the padded demands satisfies the originals.
    let tau = m.div_ceil(2);
    let padded: Vec<Vec<Q>> = rows
        .iter()
        .map(|row| {
            let mut padded = row.clone();
            let deficit = Q::one() - total(row);
            padded[0] += deficit;
            padded
        })
        .collect();

    let covers =
        |i: usize, k: usize| tau_covers(&padded[i], &padded[k], tau).expect("equal lengths");
    for row in 0..3 {
        if (0..3).all(|k| covers(row, k)) {
            let solution = Solution::new(padded[row].clone()).expect("padded demands lie in [0,1]");
            return Ok((
                solution,
                ReshuffleTrace::DirectCover {
                    matrix: padded,
                    row,
                },
            ));
        }
    }

    // No row covers both others, so each pair is covered in exactly one
    // direction and the relation is a 3-cycle; orient it as a -> b -> c -> a.
    let order: [usize; 3] = if covers(0, 1) { [0, 1, 2] } else { [0, 2, 1] };
    let matrix: Vec<Vec<Q>> = order.iter().map(|&i| padded[i].clone()).collect();
    let state = build_state(matrix, order)?;
    if !reshuffle_verify(&state) {
        return Err(ConstructiveError::ReshuffleFailed(
            "constructed certificate failed verification",
        ));
    }
    let mut best: Option<(Q, Vec<Q>)> = None;
    let one = Q::one();
    for color in Color::ALL {
        let line = state.line(color).expect("coloring is bijective");
        let t = total(&line);
        if t <= one && best.as_ref().is_none_or(|(bt, _)| &t < bt) {
            best = Some((t, line));
        }
    }
    let (_, line) = best.expect("line totals sum to 3, so one is feasible");
    let solution = Solution::new(line).expect("matrix entries lie in [0,1]");
    Ok((solution, ReshuffleTrace::Reshuffled(state)))
}

/// Colorings written as the colors of rows (a, b, c).
type Coloring = [Color; 3];

/// Coloring of a column of `class` matched with a column of `partner`.
fn pair_coloring(class: QClass, partner: QClass) -> Option<Coloring> {
    let coloring = match (class, partner) {
        // Forced cross-class matches.
        (Q1, Q6) => [Yellow, Green, Red],
        (Q6, Q1) => [Green, Red, Yellow],
        (Q2, Q4) => [Green, Red, Yellow],
        (Q4, Q2) => [Red, Yellow, Green],
        (Q3, Q5) => [Red, Yellow, Green],
        (Q5, Q3) => [Yellow, Green, Red],
        // Leftover matches.
        (Q2, Q3) => [Green, Red, Yellow],
        (Q3, Q2) => [Yellow, Green, Red],
        (Q2, Q1) => [Yellow, Red, Green],
        (Q1, Q2) => [Red, Green, Yellow],
        (Q1, Q3) => [Green, Yellow, Red],
        (Q3, Q1) => [Yellow, Red, Green],
        // Columns with all demands equal cover everyone in any color.
        (Q1, Q7) => [Green, Yellow, Red],
        (Q3, Q7) => [Red, Green, Yellow],
        (Q2, Q7) => [Green, Red, Yellow],
        (Q7, _) => [Red, Green, Yellow],
        _ => return None,
    };
    Some(coloring)
}

fn triple_coloring(class: QClass) -> Coloring {
    match class {
        Q1 => [Red, Yellow, Green],
        Q2 => [Green, Red, Yellow],
        Q3 => [Yellow, Green, Red],
        _ => unreachable!("the triple is drawn from Q1, Q2, Q3"),
    }
}

fn build_state(
    matrix: Vec<Vec<Q>>,
    original_agents: [usize; 3],
) -> Result<ReshuffleState, ConstructiveError> {
    let m = matrix[0].len();
    let classes: Vec<QClass> = (0..m)
        .map(|j| classify(&matrix[0][j], &matrix[1][j], &matrix[2][j]))
        .collect();
    let members = |c: QClass| -> Vec<usize> { (0..m).filter(|&j| classes[j] == c).collect() };
    let (q1, q2, q3) = (members(Q1), members(Q2), members(Q3));
    let (q4, q5, q6) = (members(Q4), members(Q5), members(Q6));
    let q7 = members(Q7);
    // The cycle inequalities guarantee one spare element in each of Q1..Q3
    // beyond what the forced matching consumes.
    if q1.len() < q6.len() + 1 || q2.len() < q4.len() + 1 || q3.len() < q5.len() + 1 {
        return Err(ConstructiveError::ReshuffleFailed(
            "class counts violate the cycle inequalities",
        ));
    }

    let triple = [q1[0], q2[0], q3[0]];
    let mut coloring: Vec<Coloring> = vec![[Red, Green, Yellow]; m];
    coloring[q1[0]] = triple_coloring(Q1);
    coloring[q2[0]] = triple_coloring(Q2);
    coloring[q3[0]] = triple_coloring(Q3);

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let color_pair =
        |x: usize, y: usize, coloring: &mut Vec<Coloring>| -> Result<(), ConstructiveError> {
            let (cx, cy) = (classes[x], classes[y]);
            coloring[x] = pair_coloring(cx, cy).ok_or(ConstructiveError::ReshuffleFailed(
                "matched columns of incompatible classes",
            ))?;
            coloring[y] = pair_coloring(cy, cx).ok_or(ConstructiveError::ReshuffleFailed(
                "matched columns of incompatible classes",
            ))?;
            Ok(())
        };

    // Forced matching: every Q6/Q4/Q5 column pairs with a spare Q1/Q2/Q3
    // column, in ascending index order.
    for (&x, &y) in q6.iter().zip(&q1[1..]) {
        color_pair(y, x, &mut coloring)?;
        pairs.push((y, x));
    }
    for (&x, &y) in q4.iter().zip(&q2[1..]) {
        color_pair(y, x, &mut coloring)?;
        pairs.push((y, x));
    }
    for (&x, &y) in q5.iter().zip(&q3[1..]) {
        color_pair(y, x, &mut coloring)?;
        pairs.push((y, x));
    }

    // Leftovers of Q1, Q2, Q3 plus all of Q7. Their count is even, and each
    // leftover class is no larger than the other two combined.
    let leftover1 = &q1[1 + q6.len()..];
    let leftover2 = &q2[1 + q4.len()..];
    let leftover3 = &q3[1 + q5.len()..];
    let deltas = [leftover1.len(), leftover2.len(), leftover3.len()];

    // Arrange the largest class on top; below it, the smaller two classes
    // with the smallest interleaved, then the all-equal columns. Verticals
    // match the top row into the second; the rest pairs up consecutively.
    // This never matches two columns of the same class (other than Q7) and
    // never matches the top class against Q7.
    let mut roles: [(usize, &[usize]); 3] = [
        (deltas[1], leftover2),
        (deltas[2], leftover3),
        (deltas[0], leftover1),
    ];
    roles.sort_by_key(|role| std::cmp::Reverse(role.0));
    let [(d_top, top), (d_tri, tri), (d_sq, sq)] = roles;
    if d_top > d_tri + d_sq {
        return Err(ConstructiveError::ReshuffleFailed(
            "leftover classes violate the triangle inequality",
        ));
    }
    let mut second: Vec<usize> = Vec::with_capacity(d_tri + d_sq + q7.len());
    second.extend(&tri[..d_tri - d_sq]);
    for i in 0..d_sq {
        second.push(sq[i]);
        second.push(tri[d_tri - d_sq + i]);
    }
    second.extend(&q7);
    for (&x, &y) in top.iter().zip(&second) {
        color_pair(x, y, &mut coloring)?;
        pairs.push((x, y));
    }
    let rest = &second[d_top..];
    if !rest.len().is_multiple_of(2) {
        return Err(ConstructiveError::ReshuffleFailed(
            "leftover columns do not pair up",
        ));
    }
    for chunk in rest.chunks(2) {
        color_pair(chunk[0], chunk[1], &mut coloring)?;
        pairs.push((chunk[0], chunk[1]));
    }

    Ok(ReshuffleState {
        matrix,
        original_agents,
        classes,
        deltas,
        triple,
        pairs,
        coloring,
    })
}
