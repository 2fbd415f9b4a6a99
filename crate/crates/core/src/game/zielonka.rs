//! Zielonka's recursive algorithm with positional strategy extraction.
//!
//! The second recursive call of the textbook formulation is a loop, so the
//! recursion depth is bounded by the number of distinct colors. Ties are
//! broken deterministically: attractor strategies pick the lowest-numbered
//! successor of strictly smaller rank, and top-color vertices pick the
//! lowest-numbered successor inside the current subgame.

use super::{GameSolution, ParityGame, Player};

struct Solver<'a> {
    g: &'a ParityGame,
    pred: Vec<Vec<usize>>,
    in_sub: Vec<u32>,
    sub_epoch: u32,
    in_attr: Vec<u32>,
    counted: Vec<u32>,
    attr_epoch: u32,
    rank: Vec<u32>,
    count: Vec<u32>,
    strategy: Vec<Option<usize>>,
}

/// Solves `g` from every vertex.
pub fn solve(g: &ParityGame) -> GameSolution {
    let n = g.len();
    let mut pred = vec![Vec::new(); n];
    for v in 0..n {
        for &w in g.successors(v) {
            pred[w].push(v);
        }
    }
    let mut s = Solver {
        g,
        pred,
        in_sub: vec![0; n],
        sub_epoch: 0,
        in_attr: vec![0; n],
        counted: vec![0; n],
        attr_epoch: 0,
        rank: vec![0; n],
        count: vec![0; n],
        strategy: vec![None; n],
    };
    let won = s.zielonka((0..n).collect());
    let mut winner = vec![Player::I; n];
    for &v in &won[Player::O.index()] {
        winner[v] = Player::O;
    }
    let mut strategy = s.strategy;
    for v in 0..n {
        if g.owner(v) != winner[v] {
            strategy[v] = None;
        }
    }
    GameSolution::new(winner, strategy)
}

impl Solver<'_> {
    fn mark_sub(&mut self, u: &[usize]) -> u32 {
        self.sub_epoch += 1;
        for &v in u {
            self.in_sub[v] = self.sub_epoch;
        }
        self.sub_epoch
    }

    /// `x`-attractor of `target` within the subgame marked `ue`. Leaves
    /// the result marked with the returned epoch and records attractor
    /// strategies for `x`.
    fn attractor(&mut self, ue: u32, target: &[usize], x: Player) -> (Vec<usize>, u32) {
        self.attr_epoch += 1;
        let ae = self.attr_epoch;
        let mut out = Vec::with_capacity(target.len());
        for &t in target {
            if self.in_attr[t] != ae {
                self.in_attr[t] = ae;
                self.rank[t] = 0;
                out.push(t);
            }
        }
        let g = self.g;
        let mut i = 0;
        while i < out.len() {
            let w = out[i];
            i += 1;
            for pi in 0..self.pred[w].len() {
                let v = self.pred[w][pi];
                if self.in_sub[v] != ue || self.in_attr[v] == ae {
                    continue;
                }
                let join = if g.owner(v) == x {
                    true
                } else {
                    if self.counted[v] != ae {
                        self.counted[v] = ae;
                        self.count[v] = g.successors(v).iter().filter(|&&s| self.in_sub[s] == ue).count() as u32;
                    }
                    self.count[v] -= 1;
                    self.count[v] == 0
                };
                if join {
                    self.in_attr[v] = ae;
                    self.rank[v] = self.rank[w] + 1;
                    out.push(v);
                }
            }
        }
        for &v in &out[..] {
            if self.rank[v] > 0 && g.owner(v) == x {
                self.strategy[v] = g
                    .successors(v)
                    .iter()
                    .copied()
                    .find(|&s| self.in_attr[s] == ae && self.rank[s] < self.rank[v]);
            }
        }
        (out, ae)
    }

    /// Winning regions of the subgame on `u`, indexed by [`Player::index`].
    fn zielonka(&mut self, mut u: Vec<usize>) -> [Vec<usize>; 2] {
        let mut won: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
        let g = self.g;
        while !u.is_empty() {
            let p = u.iter().map(|&v| g.color(v)).max().expect("nonempty");
            let x = Player::favored_by(p);
            let y = x.opponent();
            let top: Vec<usize> = u.iter().copied().filter(|&v| g.color(v) == p).collect();

            let ue = self.mark_sub(&u);
            let (_, ae) = self.attractor(ue, &top, x);
            let rest: Vec<usize> = u.iter().copied().filter(|&v| self.in_attr[v] != ae).collect();
            let sub = self.zielonka(rest);

            let ue = self.mark_sub(&u);
            if sub[y.index()].is_empty() {
                for &v in &top {
                    if g.owner(v) == x {
                        self.strategy[v] = g.successors(v).iter().copied().find(|&s| self.in_sub[s] == ue);
                    }
                }
                won[x.index()].extend_from_slice(&u);
                break;
            }
            let (b, be) = self.attractor(ue, &sub[y.index()], y);
            u.retain(|&v| self.in_attr[v] != be);
            won[y.index()].extend(b);
        }
        won
    }
}
