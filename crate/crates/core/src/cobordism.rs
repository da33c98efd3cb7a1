//! Saddle cobordisms on labeled planar diagrams.
//!
//! A diagram is a closed 1-manifold drawn as a 2-regular graph on a set of
//! nodes. Pictures are built from a flat tangle between two boundary layers
//! (bottom and top), closed off by a matching on each layer. A saddle
//! replaces two edges `(u1, v1)`, `(u2, v2)` by `(u1, u2)`, `(v1, v2)`; the
//! labels evolve by `merge` when the edges lie on different circles and by
//! `split` when they lie on the same one.
//!
//! Every block `(top, bottom, tangle)` has canonical circles: the circles of
//! `glue(tangle ∘ bottom, top)`, indexed by smallest endpoint, followed by the
//! free circle when the tangle closes one off. A circle of any picture of the
//! block is identified with a canonical circle through the top-layer
//! endpoints it passes; the free circle is the one with no top endpoint.

use std::collections::BTreeMap;

use petgraph::unionfind::UnionFind;

use crate::combinatorics::{glue, ClosedDiagram, Matching};
use crate::error::{Error, Result};
use crate::frobenius::{merge_labels, split_label, Label};

pub type Terms = BTreeMap<Vec<Label>, i64>;

/// Flat tangle between two rows of `2n` points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tangle {
    /// `2n` vertical strands.
    Identity,
    /// `U_i`: a cap on bottom points `i, i+1`, a cup on top points `i, i+1`,
    /// vertical strands elsewhere.
    Cup(usize),
}

impl Tangle {
    /// Stacks `self` on top of `below`.
    pub fn over(self, below: Tangle) -> Result<Tangle> {
        match (self, below) {
            (Tangle::Identity, t) | (t, Tangle::Identity) => Ok(t),
            _ => Err(Error::Invariant("composite of two cup tangles is not a basis tangle".into())),
        }
    }
}

/// Composes a flat tangle with a matching placed below it: the matching seen
/// from the top boundary, and whether a free circle was closed off.
pub fn apply_tangle(tangle: Tangle, a: &Matching) -> Result<(Matching, bool)> {
    match tangle {
        Tangle::Identity => Ok((a.clone(), false)),
        Tangle::Cup(i) => {
            if i == 0 || i >= a.points() {
                return Err(Error::OutOfRange { index: i, max: a.points().saturating_sub(1) });
            }
            if a.partner(i) == i + 1 {
                return Ok((a.clone(), true));
            }
            let p = a.partner(i);
            let q = a.partner(i + 1);
            let composite = a
                .rewire([(p.min(i), p.max(i)), (q.min(i + 1), q.max(i + 1))], [(i, i + 1), (p, q)])
                .ok_or_else(|| Error::Invariant(format!("U_{i} applied to {a} crosses")))?;
            Ok((composite, false))
        }
    }
}

/// Canonical circles of a block and whether it has a free circle.
pub fn canonical_circles(top: &Matching, bottom: &Matching, tangle: Tangle) -> Result<(ClosedDiagram, bool)> {
    let (seen_from_top, free) = apply_tangle(tangle, bottom)?;
    Ok((glue(&seen_from_top, top)?, free))
}

/// Number of canonical circles of a block.
pub fn circle_count(top: &Matching, bottom: &Matching, tangle: Tangle) -> Result<usize> {
    let (d, free) = canonical_circles(top, bottom, tangle)?;
    Ok(d.circle_count() + usize::from(free))
}

/// A labeled basis vector of a block.
#[derive(Clone, Copy, Debug)]
pub struct BlockRef<'a> {
    pub top: &'a Matching,
    pub bottom: &'a Matching,
    pub tangle: Tangle,
    pub labels: &'a [Label],
}

struct Picture {
    nodes: usize,
    edges: Vec<(usize, usize)>,
    bottom: Vec<usize>,
    top: Vec<usize>,
    // edge index of the closing arc at each top / bottom point
    top_arc: Vec<usize>,
    bottom_arc: Vec<usize>,
    // tangle edges that saddle moves act on
    cap: Option<usize>,
    cup: Option<usize>,
    verticals: Vec<Option<usize>>,
}

impl Picture {
    fn tangle(n: usize, tangle: Tangle, layered: bool, offset: usize) -> Picture {
        let points = 2 * n;
        let layered = layered || matches!(tangle, Tangle::Cup(_));
        let mut edges = Vec::new();
        let mut verticals = vec![None; points];
        let (nodes, bottom, top) = if layered {
            let bottom: Vec<usize> = (0..points).map(|k| offset + k).collect();
            let top: Vec<usize> = (0..points).map(|k| offset + points + k).collect();
            (2 * points, bottom, top)
        } else {
            let layer: Vec<usize> = (0..points).map(|k| offset + k).collect();
            (points, layer.clone(), layer)
        };
        let mut cap = None;
        let mut cup = None;
        if layered {
            for k in 1..=points {
                let at_cup = matches!(tangle, Tangle::Cup(i) if k == i || k == i + 1);
                if !at_cup {
                    verticals[k - 1] = Some(edges.len());
                    edges.push((bottom[k - 1], top[k - 1]));
                }
            }
            if let Tangle::Cup(i) = tangle {
                cap = Some(edges.len());
                edges.push((bottom[i - 1], bottom[i]));
                cup = Some(edges.len());
                edges.push((top[i - 1], top[i]));
            }
        }
        Picture {
            nodes,
            edges,
            bottom,
            top,
            top_arc: vec![usize::MAX; points],
            bottom_arc: vec![usize::MAX; points],
            cap,
            cup,
            verticals,
        }
    }

    /// Adds the arcs of `bottom` on the bottom layer and of `top` on the top layer.
    fn close(&mut self, bottom: &Matching, top: &Matching) {
        for &(p, q) in bottom.pairs() {
            let e = self.edges.len();
            self.edges.push((self.bottom[p - 1], self.bottom[q - 1]));
            self.bottom_arc[p - 1] = e;
            self.bottom_arc[q - 1] = e;
        }
        for &(p, q) in top.pairs() {
            let e = self.edges.len();
            self.edges.push((self.top[p - 1], self.top[q - 1]));
            self.top_arc[p - 1] = e;
            self.top_arc[q - 1] = e;
        }
    }

    fn block(n: usize, v: &BlockRef<'_>, layered: bool, offset: usize) -> Picture {
        let mut pic = Picture::tangle(n, v.tangle, layered, offset);
        pic.close(v.bottom, v.top);
        pic
    }
}

fn components(nodes: usize, edges: &[(usize, usize)]) -> (Vec<usize>, usize) {
    let mut uf = UnionFind::<usize>::new(nodes);
    for &(u, v) in edges {
        uf.union(u, v);
    }
    let mut ids = vec![usize::MAX; nodes];
    let mut comp = vec![0; nodes];
    let mut count = 0;
    for x in 0..nodes {
        let r = uf.find(x);
        if ids[r] == usize::MAX {
            ids[r] = count;
            count += 1;
        }
        comp[x] = ids[r];
    }
    (comp, count)
}

/// Maps each component touching `region` to its canonical circle index.
fn anchor(
    comp: &[usize],
    region: std::ops::Range<usize>,
    top: &[usize],
    canonical: &ClosedDiagram,
    free: bool,
    out: &mut [usize],
) -> Result<()> {
    let unset = usize::MAX;
    let mut touched = vec![false; out.len()];
    for x in region {
        touched[comp[x]] = true;
    }
    for (k, &node) in top.iter().enumerate() {
        let c = comp[node];
        let idx = canonical.circle_of(k + 1);
        if out[c] != unset && out[c] != idx {
            return Err(Error::Invariant("circle meets two canonical circles".into()));
        }
        out[c] = idx;
    }
    let mut free_seen = false;
    for c in 0..out.len() {
        if touched[c] && out[c] == unset {
            if !free || free_seen {
                return Err(Error::Invariant("unexpected closed component".into()));
            }
            free_seen = true;
            out[c] = canonical.circle_count();
        }
    }
    if free && !free_seen {
        return Err(Error::Invariant("free circle missing".into()));
    }
    Ok(())
}

/// Labeled closed diagram partway through a cobordism.
struct State {
    nodes: usize,
    edges: Vec<(usize, usize)>,
    comp: Vec<usize>,
    count: usize,
    terms: Terms,
}

impl State {
    fn saddle(&mut self, e1: usize, e2: usize) -> Result<()> {
        let (u1, v1) = self.edges[e1];
        let (u2, v2) = self.edges[e2];
        let (c1, c2) = (self.comp[u1], self.comp[u2]);
        self.edges[e1] = (u1, u2);
        self.edges[e2] = (v1, v2);
        let (new_comp, new_count) = components(self.nodes, &self.edges);

        let mut rep = vec![usize::MAX; self.count];
        for x in 0..self.nodes {
            if rep[self.comp[x]] == usize::MAX {
                rep[self.comp[x]] = x;
            }
        }
        let relabel: Vec<usize> = rep.iter().map(|&x| new_comp[x]).collect();

        let mut terms = Terms::new();
        if c1 != c2 {
            if new_count + 1 != self.count {
                return Err(Error::Invariant("merge saddle did not join two circles".into()));
            }
            let joined = new_comp[u1];
            for (word, &c) in &self.terms {
                let Some(l) = merge_labels(word[c1], word[c2]) else { continue };
                let mut w = vec![Label::One; new_count];
                for (old, &new) in relabel.iter().enumerate() {
                    if old != c1 && old != c2 {
                        w[new] = word[old];
                    }
                }
                w[joined] = l;
                add(&mut terms, w, c);
            }
        } else {
            if new_count != self.count + 1 {
                return Err(Error::Invariant("split saddle did not separate a circle".into()));
            }
            let (p, q) = (new_comp[u1], new_comp[v1]);
            for (word, &c) in &self.terms {
                for &(l, r) in split_label(word[c1]) {
                    let mut w = vec![Label::One; new_count];
                    for (old, &new) in relabel.iter().enumerate() {
                        if old != c1 {
                            w[new] = word[old];
                        }
                    }
                    w[p] = l;
                    w[q] = r;
                    add(&mut terms, w, c);
                }
            }
        }
        self.comp = new_comp;
        self.count = new_count;
        self.terms = terms;
        Ok(())
    }

    fn canonical_terms(&self, perm: &[usize]) -> Terms {
        let mut out = Terms::new();
        for (word, &c) in &self.terms {
            let mut w = vec![Label::One; word.len()];
            for (old, &l) in word.iter().enumerate() {
                w[perm[old]] = l;
            }
            add(&mut out, w, c);
        }
        out
    }
}

pub(crate) fn add(terms: &mut Terms, word: Vec<Label>, c: i64) {
    if c == 0 {
        return;
    }
    let entry = terms.entry(word.clone()).or_insert(0);
    *entry += c;
    if *entry == 0 {
        terms.remove(&word);
    }
}

fn labeled_state(pic: &Picture, pieces: &[(std::ops::Range<usize>, &[usize], &BlockRef<'_>)]) -> Result<State> {
    let (comp, count) = components(pic.nodes, &pic.edges);
    let mut word = vec![Label::One; count];
    for (region, top, v) in pieces {
        let (canonical, free) = canonical_circles(v.top, v.bottom, v.tangle)?;
        if v.labels.len() != canonical.circle_count() + usize::from(free) {
            return Err(Error::Invariant("label word does not match the block's circles".into()));
        }
        let mut idx = vec![usize::MAX; count];
        anchor(&comp, region.clone(), top, &canonical, free, &mut idx)?;
        for c in 0..count {
            if idx[c] != usize::MAX {
                word[c] = v.labels[idx[c]];
            }
        }
    }
    let mut terms = Terms::new();
    terms.insert(word, 1);
    Ok(State { nodes: pic.nodes, edges: pic.edges.clone(), comp, count, terms })
}

fn finish(state: &State, top_nodes: &[usize], top: &Matching, bottom: &Matching, tangle: Tangle) -> Result<Terms> {
    let (canonical, free) = canonical_circles(top, bottom, tangle)?;
    let mut perm = vec![usize::MAX; state.count];
    anchor(&state.comp, 0..state.nodes, top_nodes, &canonical, free, &mut perm)?;
    Ok(state.canonical_terms(&perm))
}

/// Contraction cobordism from `upper ∘ lower` to the composite block
/// `(upper.top, lower.bottom, upper.tangle ∘ lower.tangle)`, one saddle per
/// arc of the shared middle matching.
///
/// `arc_order` permutes the order in which the middle arcs are contracted.
pub fn contract(upper: &BlockRef<'_>, lower: &BlockRef<'_>, arc_order: Option<&[usize]>) -> Result<Terms> {
    let n = lower.top.n();
    if upper.bottom != lower.top {
        return Err(Error::Invariant("contraction needs matching middle matchings".into()));
    }
    let composite = upper.tangle.over(lower.tangle)?;
    let low = Picture::block(n, lower, false, 0);
    let up = Picture::block(n, upper, false, low.nodes);
    let pic = Picture {
        nodes: low.nodes + up.nodes,
        edges: low.edges.iter().chain(up.edges.iter()).copied().collect(),
        bottom: low.bottom.clone(),
        top: up.top.clone(),
        top_arc: Vec::new(),
        bottom_arc: Vec::new(),
        cap: None,
        cup: None,
        verticals: Vec::new(),
    };
    let shift = low.edges.len();
    let mut state = labeled_state(
        &pic,
        &[(0..low.nodes, &low.top, lower), (low.nodes..pic.nodes, &up.top, upper)],
    )?;

    let arcs = lower.top.pairs();
    let default: Vec<usize> = (0..arcs.len()).collect();
    let order = arc_order.unwrap_or(&default);
    if order.len() != arcs.len() {
        return Err(Error::Invariant("arc order has the wrong length".into()));
    }
    for &k in order {
        let (p, _) = arcs[k];
        // orient both edges from p so the saddle joins p to p and q to q
        let e1 = low.top_arc[p - 1];
        let e2 = shift + up.bottom_arc[p - 1];
        orient(&mut state.edges[e1], low.top[p - 1]);
        orient(&mut state.edges[e2], up.bottom[p - 1]);
        state.saddle(e1, e2)?;
    }
    finish(&state, &up.top, upper.top, lower.bottom, composite)
}

fn orient(edge: &mut (usize, usize), first: usize) {
    if edge.0 != first {
        *edge = (edge.1, edge.0);
    }
}

/// Saddle from `U_i` to the identity tangle: the cap and cup at `i, i+1`
/// become two vertical strands.
pub fn unzip(v: &BlockRef<'_>) -> Result<Terms> {
    let Tangle::Cup(i) = v.tangle else {
        return Err(Error::Invariant("unzip needs a cup tangle".into()));
    };
    let n = v.top.n();
    let pic = Picture::block(n, v, true, 0);
    let mut state = labeled_state(&pic, &[(0..pic.nodes, &pic.top, v)])?;
    let (cap, cup) = (pic.cap.unwrap(), pic.cup.unwrap());
    orient(&mut state.edges[cap], pic.bottom[i - 1]);
    orient(&mut state.edges[cup], pic.top[i - 1]);
    state.saddle(cap, cup)?;
    finish(&state, &pic.top, v.top, v.bottom, Tangle::Identity)
}

/// Saddle from the identity tangle to `U_i`: the vertical strands at
/// `i, i+1` become a cap and a cup.
pub fn zip(v: &BlockRef<'_>, i: usize) -> Result<Terms> {
    if v.tangle != Tangle::Identity {
        return Err(Error::Invariant("zip needs the identity tangle".into()));
    }
    let n = v.top.n();
    if i == 0 || i >= 2 * n {
        return Err(Error::OutOfRange { index: i, max: 2 * n - 1 });
    }
    let pic = Picture::block(n, v, true, 0);
    let mut state = labeled_state(&pic, &[(0..pic.nodes, &pic.top, v)])?;
    let (left, right) = (pic.verticals[i - 1].unwrap(), pic.verticals[i].unwrap());
    orient(&mut state.edges[left], pic.bottom[i - 1]);
    orient(&mut state.edges[right], pic.bottom[i]);
    state.saddle(left, right)?;
    finish(&state, &pic.top, v.top, v.bottom, Tangle::Cup(i))
}
