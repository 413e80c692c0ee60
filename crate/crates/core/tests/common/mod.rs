#![allow(dead_code)]

use orbithull::{CartanMatrix, DominantPoint, Realization};

pub const A2: &[&[i64]] = &[&[2, -1], &[-1, 2]];
pub const B2: &[&[i64]] = &[&[2, -1], &[-2, 2]];
pub const G2: &[&[i64]] = &[&[2, -1], &[-3, 2]];
pub const A3: &[&[i64]] = &[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]];
pub const A1_AFFINE: &[&[i64]] = &[&[2, -2], &[-2, 2]];
pub const AAB: &[&[i64]] = &[&[2, -2], &[-3, 2]];
pub const A2_AFFINE: &[&[i64]] = &[&[2, -1, -1], &[-1, 2, -1], &[-1, -1, 2]];

pub fn cartan(rows: &[&[i64]]) -> CartanMatrix {
    CartanMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
}

/// Dominant point in the canonical realization; `mu` is padded with zeros.
pub fn point(rows: &[&[i64]], mu: &[i64]) -> DominantPoint {
    point_in(Realization::canonical(cartan(rows)), mu)
}

pub fn point_in(real: Realization, mu: &[i64]) -> DominantPoint {
    let mut coords = mu.to_vec();
    coords.resize(real.dim(), 0);
    let mu = real.weight_from_ints(&coords).unwrap();
    DominantPoint::new(real, mu).unwrap()
}

/// Points used by the property suites, finite and infinite.
pub fn fixtures() -> Vec<(&'static str, DominantPoint)> {
    vec![
        ("A2 (3,2)", point(A2, &[3, 2])),
        ("A2 (1,0)", point(A2, &[1, 0])),
        ("B2 (2,1)", point(B2, &[2, 1])),
        ("G2 (0,1)", point(G2, &[0, 1])),
        ("A3 (1,0,1)", point(A3, &[1, 0, 1])),
        ("A1^(1) (1,0)", point(A1_AFFINE, &[1, 0])),
        ("Aab (1,1)", point(AAB, &[1, 1])),
        ("A2^(1) (1,0,0)", point(A2_AFFINE, &[1, 0, 0])),
    ]
}
