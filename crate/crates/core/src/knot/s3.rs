use super::{KnotError, Presentation};

/// Permutations of {0, 1, 2}; index 0 is the identity.
const ELEMENTS: [[u8; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

struct S3 {
    mul: [[usize; 6]; 6],
    inv: [usize; 6],
}

impl S3 {
    fn new() -> Self {
        let index = |p: [u8; 3]| ELEMENTS.iter().position(|&e| e == p).unwrap();
        let mut mul = [[0; 6]; 6];
        let mut inv = [0; 6];
        for (i, a) in ELEMENTS.iter().enumerate() {
            for (j, b) in ELEMENTS.iter().enumerate() {
                // (a * b)(x) = a(b(x))
                let c = [a[b[0] as usize], a[b[1] as usize], a[b[2] as usize]];
                mul[i][j] = index(c);
                if mul[i][j] == 0 {
                    inv[i] = j;
                }
            }
        }
        S3 { mul, inv }
    }
}

/// Whether some homomorphism onto a non-abelian subgroup of the symmetric
/// group on three letters exists, by exhausting all `6^n` generator images.
pub fn exists_nonabelian_s3_rep(p: &Presentation) -> Result<bool, KnotError> {
    let n = p.n_generators;
    if n > 6 {
        return Err(KnotError::TooManyGenerators(n));
    }
    let g = S3::new();
    let mut images = vec![0usize; n];
    loop {
        let satisfies = p.relators.iter().all(|r| {
            r.letters().iter().fold(0, |acc, &l| {
                let x = images[l.unsigned_abs() as usize - 1];
                g.mul[acc][if l > 0 { x } else { g.inv[x] }]
            }) == 0
        });
        let nonabelian = satisfies
            && images
                .iter()
                .any(|&a| images.iter().any(|&b| g.mul[a][b] != g.mul[b][a]));
        if nonabelian {
            return Ok(true);
        }
        // odometer increment
        let mut i = 0;
        loop {
            if i == n {
                return Ok(false);
            }
            images[i] += 1;
            if images[i] < 6 {
                break;
            }
            images[i] = 0;
            i += 1;
        }
    }
}
