//! Exact two-phase simplex with Bland's rule. Variables are free; the
//! constraints are `LinForm`s required to be `= 0` or `≥ 0`.

use num_traits::{One, Signed, Zero};

use super::LinForm;
use crate::exact::linalg::{self, Mat};
use crate::exact::Q;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { x: Vec<Q>, value: Q },
}

impl LpOutcome {
    pub fn point(&self) -> Option<&Vec<Q>> {
        match self {
            LpOutcome::Optimal { x, .. } => Some(x),
            _ => None,
        }
    }
}

enum Std {
    Infeasible,
    Unbounded,
    Optimal(Vec<Q>),
}

struct Tableau {
    rows: Mat,
    rhs: Vec<Q>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        self.rhs[r] *= &inv;
        let prow = self.rows[r].clone();
        let prhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for (x, y) in self.rows[i].iter_mut().zip(&prow) {
                *x -= &f * y;
            }
            self.rhs[i] -= &f * &prhs;
        }
        self.basis[r] = c;
    }

    /// Maximizes `cost · z` over allowed columns; `false` when unbounded.
    fn optimize(&mut self, cost: &[Q], allowed: &[bool]) -> bool {
        loop {
            let ncols = cost.len();
            let entering = (0..ncols).find(|&j| {
                if !allowed[j] || self.basis.contains(&j) {
                    return false;
                }
                let mut r = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    r -= &cost[b] * &self.rows[i][j];
                }
                r.is_positive()
            });
            let Some(j) = entering else { return true };
            let mut leave: Option<(usize, Q)> = None;
            for i in 0..self.rows.len() {
                if self.rows[i][j].is_positive() {
                    let ratio = &self.rhs[i] / &self.rows[i][j];
                    let better = match &leave {
                        None => true,
                        Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            let Some((r, _)) = leave else { return false };
            self.pivot(r, j);
        }
    }
}

/// Maximizes `c · z` subject to `A z = b`, `z ≥ 0`.
fn simplex_standard(a: &Mat, b: &[Q], c: &[Q]) -> Std {
    let m = a.len();
    let n = c.len();
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for (i, (row, bi)) in a.iter().zip(b).enumerate() {
        let sign = if bi.is_negative() { -Q::one() } else { Q::one() };
        let mut r: Vec<Q> = row.iter().map(|x| x * &sign).collect();
        r.extend((0..m).map(|k| if k == i { Q::one() } else { Q::zero() }));
        rows.push(r);
        rhs.push(bi * &sign);
    }
    let mut t = Tableau { rows, rhs, basis: (n..n + m).collect() };
    let total = n + m;
    let mut phase1 = vec![Q::zero(); total];
    for x in phase1.iter_mut().skip(n) {
        *x = -Q::one();
    }
    let all = vec![true; total];
    t.optimize(&phase1, &all);
    let infeasibility: Q = t.basis.iter().zip(&t.rhs).filter(|(&bi, _)| bi >= n).map(|(_, v)| v.clone()).sum();
    if infeasibility.is_positive() {
        return Std::Infeasible;
    }
    for i in 0..m {
        if t.basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| !t.rows[i][j].is_zero() && !t.basis.contains(&j)) {
                t.pivot(i, j);
            }
        }
    }
    let mut cost = c.to_vec();
    cost.extend(std::iter::repeat_n(Q::zero(), m));
    let allowed: Vec<bool> = (0..total).map(|j| j < n).collect();
    if !t.optimize(&cost, &allowed) {
        return Std::Unbounded;
    }
    let mut z = vec![Q::zero(); n];
    for (i, &bi) in t.basis.iter().enumerate() {
        if bi < n {
            z[bi] = t.rhs[i].clone();
        }
    }
    Std::Optimal(z)
}

/// Maximizes `objective · x` over `{eqs = 0, ineqs ≥ 0}` with free `x`.
pub fn maximize(dim: usize, objective: &[Q], eqs: &[LinForm], ineqs: &[LinForm]) -> LpOutcome {
    // x = u − w; each inequality c + a·x ≥ 0 gets a slack s: −a·x + s = c.
    let k = ineqs.len();
    let nvars = 2 * dim + k;
    let mut a: Mat = Vec::new();
    let mut b: Vec<Q> = Vec::new();
    for (idx, f) in ineqs.iter().enumerate() {
        let mut row = linalg::zeros(nvars);
        for j in 0..dim {
            row[j] = -f.a[j].clone();
            row[dim + j] = f.a[j].clone();
        }
        row[2 * dim + idx] = Q::one();
        a.push(row);
        b.push(f.c.clone());
    }
    for f in eqs {
        let mut row = linalg::zeros(nvars);
        for j in 0..dim {
            row[j] = f.a[j].clone();
            row[dim + j] = -f.a[j].clone();
        }
        a.push(row);
        b.push(-f.c.clone());
    }
    let mut cost = linalg::zeros(nvars);
    for j in 0..dim {
        cost[j] = objective[j].clone();
        cost[dim + j] = -objective[j].clone();
    }
    match simplex_standard(&a, &b, &cost) {
        Std::Infeasible => LpOutcome::Infeasible,
        Std::Unbounded => LpOutcome::Unbounded,
        Std::Optimal(z) => {
            let x: Vec<Q> = (0..dim).map(|j| &z[j] - &z[dim + j]).collect();
            let value = linalg::dot(objective, &x);
            LpOutcome::Optimal { x, value }
        }
    }
}

pub fn minimize(dim: usize, objective: &[Q], eqs: &[LinForm], ineqs: &[LinForm]) -> LpOutcome {
    match maximize(dim, &linalg::neg(objective), eqs, ineqs) {
        LpOutcome::Optimal { x, value } => LpOutcome::Optimal { x, value: -value },
        other => other,
    }
}

pub fn feasible_point(dim: usize, eqs: &[LinForm], ineqs: &[LinForm]) -> Option<Vec<Q>> {
    maximize(dim, &linalg::zeros(dim), eqs, ineqs).point().cloned()
}

/// Maximal `t ≤ 1` such that every inequality holds with margin `t`,
/// together with a witness point; `None` when infeasible.
pub fn max_margin(dim: usize, eqs: &[LinForm], ineqs: &[LinForm]) -> Option<(Q, Vec<Q>)> {
    let lift = |f: &LinForm, t_coef: Q| {
        let mut a = f.a.clone();
        a.push(t_coef);
        LinForm { a, c: f.c.clone() }
    };
    let eqs2: Vec<LinForm> = eqs.iter().map(|f| lift(f, Q::zero())).collect();
    let mut ineqs2: Vec<LinForm> = ineqs.iter().map(|f| lift(f, -Q::one())).collect();
    let mut cap = linalg::zeros(dim + 1);
    cap[dim] = -Q::one();
    ineqs2.push(LinForm { a: cap, c: Q::one() });
    let objective = linalg::unit(dim + 1, dim);
    match maximize(dim + 1, &objective, &eqs2, &ineqs2) {
        LpOutcome::Optimal { mut x, value } => {
            x.pop();
            Some((value, x))
        }
        _ => None,
    }
}
