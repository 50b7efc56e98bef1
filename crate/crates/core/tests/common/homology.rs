//! Order of H₁ of a surgery on a two-component link with linking number
//! `w`, from the linking-matrix presentation `[[p₁, q₁w], [q₂w, p₂]]`
//! (rows scaled so each relation is integral) reduced to Smith normal form.

/// Product of the Smith invariants of a 2×2 integer matrix; zero when the
/// group is infinite.
pub fn smith_order(mut m: [[i128; 2]; 2]) -> i128 {
    // column and row operations until m[0][1] = m[1][0] = 0
    loop {
        let (r, c) = match (0..2)
            .flat_map(|r| (0..2).map(move |c| (r, c)))
            .filter(|&(r, c)| m[r][c] != 0)
            .min_by_key(|&(r, c)| m[r][c].abs())
        {
            Some(rc) => rc,
            None => return 0,
        };
        // move the pivot to (0, 0)
        if r == 1 {
            m.swap(0, 1);
        }
        if c == 1 {
            for row in m.iter_mut() {
                row.swap(0, 1);
            }
        }
        let p = m[0][0];
        let q1 = m[1][0] / p;
        m[1][0] -= q1 * p;
        m[1][1] -= q1 * m[0][1];
        let q2 = m[0][1] / p;
        m[0][1] -= q2 * p;
        m[1][1] -= q2 * m[1][0];
        if m[1][0] == 0 && m[0][1] == 0 {
            return (m[0][0] * m[1][1]).abs();
        }
    }
}

/// `|H₁(S³_{p₁/q₁, p₂/q₂}(L))|` for a link with linking number `w`.
pub fn surgery_order(r: (i128, i128), s: (i128, i128), w: i128) -> i128 {
    smith_order([[r.0, r.1 * w], [s.1 * w, s.0]])
}
