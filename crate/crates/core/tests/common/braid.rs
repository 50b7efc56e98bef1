//! Braid closures: Seifert's algorithm on the closed diagram, and the
//! Alexander polynomial through the reduced Burau representation.

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
    }

    fn classes(&mut self) -> usize {
        (0..self.0.len()).filter(|&x| self.find(x) == x).count()
    }
}

/// Arcs of the closed braid diagram. Each crossing ends the two arcs
/// entering it and starts two new ones; the closure glues the last arc at
/// each position to the first.
struct Diagram {
    arcs: usize,
    /// (in_left, in_right, out_left, out_right) per crossing
    crossings: Vec<[usize; 4]>,
    closure: Vec<(usize, usize)>,
}

fn diagram(strands: usize, letters: &[i64]) -> Diagram {
    let mut at: Vec<usize> = (0..strands).collect();
    let mut arcs = strands;
    let mut crossings = Vec::new();
    for &l in letters {
        let i = l.unsigned_abs() as usize - 1;
        let (a, b) = (at[i], at[i + 1]);
        let (c, d) = (arcs, arcs + 1);
        arcs += 2;
        crossings.push([a, b, c, d]);
        at[i] = c;
        at[i + 1] = d;
    }
    let closure = (0..strands).map(|k| (at[k], k)).collect();
    Diagram {
        arcs,
        crossings,
        closure,
    }
}

/// Number of components of the closure: strands cross over at each crossing.
pub fn components(strands: usize, letters: &[i64]) -> usize {
    let d = diagram(strands, letters);
    let mut uf = UnionFind::new(d.arcs);
    for &[a, b, c, dd] in &d.crossings {
        uf.union(a, dd);
        uf.union(b, c);
    }
    for &(x, y) in &d.closure {
        uf.union(x, y);
    }
    uf.classes()
}

/// Seifert circles: the oriented smoothing joins each incoming arc to the
/// outgoing arc on its own side.
pub fn seifert_circles(strands: usize, letters: &[i64]) -> usize {
    let d = diagram(strands, letters);
    let mut uf = UnionFind::new(d.arcs);
    for &[a, b, c, dd] in &d.crossings {
        uf.union(a, c);
        uf.union(b, dd);
    }
    for &(x, y) in &d.closure {
        uf.union(x, y);
    }
    uf.classes()
}

/// Genus of the Seifert-algorithm surface of a knot closure, or `None` if
/// the closure is a link. For positive diagrams this is the knot genus.
pub fn seifert_genus(strands: usize, letters: &[i64]) -> Option<usize> {
    if components(strands, letters) != 1 {
        return None;
    }
    let s = seifert_circles(strands, letters);
    Some((letters.len() + 1 - s) / 2)
}

const SMALL: usize = 64;

/// Same tracing as [`seifert_genus`] on fixed buffers, for exhaustive
/// enumeration of short words.
pub fn seifert_genus_small(strands: usize, letters: &[i64]) -> Option<usize> {
    let arcs = strands + 2 * letters.len();
    assert!(arcs <= SMALL, "word too long for the small tracer");
    let mut strand_uf = [0usize; SMALL];
    let mut circle_uf = [0usize; SMALL];
    for i in 0..arcs {
        strand_uf[i] = i;
        circle_uf[i] = i;
    }
    fn find(uf: &mut [usize; SMALL], mut x: usize) -> usize {
        while uf[x] != x {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        x
    }
    fn union(uf: &mut [usize; SMALL], a: usize, b: usize) {
        let (ra, rb) = (find(uf, a), find(uf, b));
        uf[ra] = rb;
    }
    let mut at = [0usize; SMALL];
    for (k, slot) in at.iter_mut().enumerate().take(strands) {
        *slot = k;
    }
    let mut next = strands;
    for &l in letters {
        let i = l.unsigned_abs() as usize - 1;
        let (a, b, c, d) = (at[i], at[i + 1], next, next + 1);
        next += 2;
        union(&mut strand_uf, a, d);
        union(&mut strand_uf, b, c);
        union(&mut circle_uf, a, c);
        union(&mut circle_uf, b, d);
        at[i] = c;
        at[i + 1] = d;
    }
    for (k, &last) in at.iter().enumerate().take(strands) {
        union(&mut strand_uf, last, k);
        union(&mut circle_uf, last, k);
    }
    let count = |uf: &mut [usize; SMALL]| (0..arcs).filter(|&x| find(uf, x) == x).count();
    if count(&mut strand_uf) != 1 {
        return None;
    }
    let s = count(&mut circle_uf);
    Some((letters.len() + 1 - s) / 2)
}

// Polynomials in t, lowest degree first.
type Poly = Vec<i64>;

fn trim(mut p: Poly) -> Poly {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
    p
}

fn add(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    trim(out)
}

fn neg(a: &Poly) -> Poly {
    a.iter().map(|x| -x).collect()
}

fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn constant(c: i64) -> Poly {
    vec![c]
}

fn t_times(c: i64) -> Poly {
    vec![0, c]
}

type Matrix = Vec<Vec<Poly>>;

fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| constant((i == j) as i64)).collect())
        .collect()
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(constant(0), |acc, k| add(&acc, &mul(&a[i][k], &b[k][j]))))
                .collect()
        })
        .collect()
}

/// Reduced Burau image of `σ_i` (1-based) on `n` strands.
fn burau_generator(n: usize, i: usize) -> Matrix {
    let m = n - 1;
    let mut g = identity(m);
    if n == 2 {
        g[0][0] = t_times(-1);
        return g;
    }
    let k = i - 1;
    if i == 1 {
        g[0][0] = t_times(-1);
        g[0][1] = constant(1);
    } else if i == n - 1 {
        g[k][k - 1] = t_times(1);
        g[k][k] = t_times(-1);
    } else {
        g[k][k - 1] = t_times(1);
        g[k][k] = t_times(-1);
        g[k][k + 1] = constant(1);
    }
    g
}

fn det(m: &Matrix) -> Poly {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = constant(0);
    for j in 0..n {
        let minor: Matrix = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = mul(&m[0][j], &det(&minor));
        acc = add(&acc, &if j % 2 == 0 { term } else { neg(&term) });
    }
    acc
}

/// Exact division by a monic-at-both-ends polynomial.
fn divide(num: &Poly, den: &Poly) -> Option<Poly> {
    let mut rem = num.clone();
    let dl = den.len();
    if rem.len() < dl {
        return rem.iter().all(|&x| x == 0).then(|| constant(0));
    }
    let mut quot = vec![0; rem.len() - dl + 1];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dl - 1] / den[dl - 1];
        quot[k] = c;
        for (j, d) in den.iter().enumerate() {
            rem[k + j] -= c * d;
        }
    }
    rem.iter().all(|&x| x == 0).then(|| trim(quot))
}

/// Alexander polynomial of the closure of a positive braid, up to units.
pub fn alexander(strands: usize, letters: &[usize]) -> Poly {
    let m = strands - 1;
    let product = letters.iter().fold(identity(m), |acc, &i| {
        mat_mul(&acc, &burau_generator(strands, i))
    });
    let mut i_minus = identity(m);
    for r in 0..m {
        for c in 0..m {
            i_minus[r][c] = add(&i_minus[r][c], &neg(&product[r][c]));
        }
    }
    let d = det(&i_minus);
    divide(&d, &vec![1; strands]).expect("(1 - t^n)/(1 - t) divides det(I - B)")
}

/// Half the breadth of the Alexander polynomial; the genus of a fibered
/// knot such as a positive braid closure.
pub fn alexander_genus(poly: &Poly) -> usize {
    let lo = poly
        .iter()
        .position(|&x| x != 0)
        .expect("nonzero polynomial");
    let hi = poly.iter().rposition(|&x| x != 0).unwrap();
    (hi - lo) / 2
}

/// Standard positive braid `(σ_1 ⋯ σ_{p−1})^m` for `T(p, m)`, `m > 0`.
pub fn torus_braid(p: usize, m: usize) -> Vec<usize> {
    (0..m).flat_map(|_| 1..p).collect()
}
