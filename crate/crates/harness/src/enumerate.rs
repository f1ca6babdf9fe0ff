//! Exhaustive enumeration of small pointed-set ladders.
//!
//! A ladder has one or two rows of `columns` objects. Row maps compose to
//! null, and with two rows every square commutes. Enumeration runs for one
//! size assignment at a time so that callers can split work by sizes.

use lambek_core::{PSetMorphism, PSetObject};

#[derive(Clone, Debug)]
pub struct Ladder {
    pub top: Vec<PSetMorphism>,
    /// Empty for single-row ladders.
    pub bottom: Vec<PSetMorphism>,
    /// Empty for single-row ladders.
    pub verticals: Vec<PSetMorphism>,
}

/// All size vectors (top row first, then bottom row) with entries in
/// `1..=max_size` and `Σ (size - 1) ≤ budget`.
pub fn size_assignments(columns: usize, rows: usize, max_size: usize, budget: usize) -> Vec<Vec<usize>> {
    let n = columns * rows;
    let mut out = Vec::new();
    let mut cur = vec![1; n];
    fn rec(i: usize, left: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for s in 1..=max.min(left + 1) {
            cur[i] = s;
            rec(i + 1, left - (s - 1), max, cur, out);
        }
        cur[i] = 1;
    }
    rec(0, budget, max_size, &mut cur, &mut out);
    out
}

#[derive(Clone, Copy)]
enum Slot {
    Top(usize),
    Bottom(usize),
    Vertical(usize),
}

struct Walker<'a, F> {
    columns: usize,
    sizes: &'a [usize],
    slots: Vec<Slot>,
    top: Vec<Vec<usize>>,
    bottom: Vec<Vec<usize>>,
    vert: Vec<Vec<usize>>,
    visit: F,
}

/// Calls `visit` on every ladder with the given sizes. `sizes` has
/// `columns` entries for one row or `2 * columns` for two.
pub fn for_each_ladder<F: FnMut(&Ladder)>(columns: usize, sizes: &[usize], visit: F) {
    let two = match sizes.len() {
        n if n == columns => false,
        n if n == 2 * columns => true,
        n => panic!("{n} sizes for a ladder with {columns} columns"),
    };
    let mut slots = Vec::new();
    if two {
        slots.push(Slot::Vertical(0));
    }
    for i in 0..columns - 1 {
        slots.push(Slot::Top(i));
        if two {
            slots.push(Slot::Bottom(i));
            slots.push(Slot::Vertical(i + 1));
        }
    }
    let mut w = Walker {
        columns,
        sizes,
        slots,
        top: vec![Vec::new(); columns - 1],
        bottom: vec![Vec::new(); if two { columns - 1 } else { 0 }],
        vert: vec![Vec::new(); if two { columns } else { 0 }],
        visit,
    };
    w.step(0);
}

impl<F: FnMut(&Ladder)> Walker<'_, F> {
    fn top_size(&self, i: usize) -> usize {
        self.sizes[i]
    }

    fn bottom_size(&self, i: usize) -> usize {
        self.sizes[self.columns + i]
    }

    fn step(&mut self, k: usize) {
        if k == self.slots.len() {
            self.emit();
            return;
        }
        let (n, m, forced) = match self.slots[k] {
            Slot::Top(i) => {
                let (n, m) = (self.top_size(i), self.top_size(i + 1));
                let mut forced = vec![None; n];
                if i > 0 {
                    for &x in &self.top[i - 1] {
                        forced[x] = Some(0);
                    }
                }
                (n, m, forced)
            }
            Slot::Bottom(i) => {
                let (n, m) = (self.bottom_size(i), self.bottom_size(i + 1));
                let mut forced = vec![None; n];
                if i > 0 {
                    for &x in &self.bottom[i - 1] {
                        forced[x] = Some(0);
                    }
                }
                (n, m, forced)
            }
            Slot::Vertical(j) => {
                let (n, m) = (self.top_size(j), self.bottom_size(j));
                let mut forced: Vec<Option<usize>> = vec![None; n];
                if j > 0 {
                    for x in 0..self.top_size(j - 1) {
                        let at = self.top[j - 1][x];
                        let want = self.bottom[j - 1][self.vert[j - 1][x]];
                        match forced[at] {
                            Some(v) if v != want => return,
                            _ => forced[at] = Some(want),
                        }
                    }
                }
                (n, m, forced)
            }
        };
        let mut table = vec![0; n];
        self.tables(k, 1, m, &forced, &mut table);
    }

    fn tables(&mut self, k: usize, pos: usize, m: usize, forced: &[Option<usize>], table: &mut Vec<usize>) {
        if pos == table.len() {
            match self.slots[k] {
                Slot::Top(i) => self.top[i] = table.clone(),
                Slot::Bottom(i) => self.bottom[i] = table.clone(),
                Slot::Vertical(j) => self.vert[j] = table.clone(),
            }
            self.step(k + 1);
            return;
        }
        if let Some(v) = forced[pos] {
            table[pos] = v;
            self.tables(k, pos + 1, m, forced, table);
        } else {
            for v in 0..m {
                table[pos] = v;
                self.tables(k, pos + 1, m, forced, table);
            }
        }
    }

    fn emit(&mut self) {
        let obj = |s: usize| PSetObject::new(s).expect("positive size");
        let mk = |d: usize, c: usize, t: &Vec<usize>| PSetMorphism::new(obj(d), obj(c), t.clone()).expect("valid table");
        let top = (0..self.columns - 1).map(|i| mk(self.top_size(i), self.top_size(i + 1), &self.top[i])).collect();
        let bottom = (0..self.bottom.len())
            .map(|i| mk(self.bottom_size(i), self.bottom_size(i + 1), &self.bottom[i]))
            .collect();
        let verticals = (0..self.vert.len()).map(|j| mk(self.top_size(j), self.bottom_size(j), &self.vert[j])).collect();
        (self.visit)(&Ladder { top, bottom, verticals });
    }
}

/// Number of ladders per size assignment, without building morphisms.
pub fn count_ladders(columns: usize, rows: usize, max_size: usize, budget: usize) -> u64 {
    let mut total = 0;
    for sizes in size_assignments(columns, rows, max_size, budget) {
        for_each_ladder(columns, &sizes, |_| total += 1);
    }
    total
}
