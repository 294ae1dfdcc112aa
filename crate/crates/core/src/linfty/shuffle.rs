use once_cell::sync::Lazy;

/// A `(p, q)`-shuffle stored as the image list `σ(1), …, σ(p+q)` (0-based),
/// with `σ(1) < … < σ(p)` and `σ(p+1) < … < σ(p+q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shuffle {
    pub perm: Vec<usize>,
    pub sign: i64,
}

const CACHE: usize = 6;

static TABLE: Lazy<Vec<Vec<Vec<Shuffle>>>> = Lazy::new(|| {
    (0..=CACHE)
        .map(|p| (0..=CACHE).map(|q| build(p, q)).collect())
        .collect()
});

fn build(p: usize, q: usize) -> Vec<Shuffle> {
    let n = p + q;
    let mut out = Vec::new();
    let mut first = Vec::with_capacity(p);
    choose(0, n, p, &mut first, &mut |first: &[usize]| {
        let second: Vec<usize> = (0..n).filter(|i| !first.contains(i)).collect();
        let inversions: usize = first
            .iter()
            .map(|&a| second.iter().filter(|&&b| b < a).count())
            .sum();
        let mut perm = first.to_vec();
        perm.extend(second);
        out.push(Shuffle {
            perm,
            sign: if inversions.is_multiple_of(2) { 1 } else { -1 },
        });
    });
    out
}

fn choose(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if cur.len() == k {
        f(cur);
        return;
    }
    for i in start..n {
        if n - i < k - cur.len() {
            break;
        }
        cur.push(i);
        choose(i + 1, n, k, cur, f);
        cur.pop();
    }
}

/// All `(p, q)`-shuffles with their permutation signs, lexicographic in the
/// first block.
pub fn enumerate_shuffles(p: usize, q: usize) -> Vec<Shuffle> {
    if p <= CACHE && q <= CACHE {
        TABLE[p][q].clone()
    } else {
        build(p, q)
    }
}

pub(crate) fn shuffles_ref(p: usize, q: usize) -> std::borrow::Cow<'static, [Shuffle]> {
    if p <= CACHE && q <= CACHE {
        std::borrow::Cow::Borrowed(&TABLE[p][q])
    } else {
        std::borrow::Cow::Owned(build(p, q))
    }
}

/// Forces the shuffle cache; call before entering parallel sections.
pub fn warm_cache() {
    Lazy::force(&TABLE);
}

/// Koszul sign of listing `x_σ(1), …, x_σ(n)` where `degrees[j] = |x_(j+1)|`.
pub fn koszul_sign(perm: &[usize], degrees: &[i32]) -> i64 {
    assert_eq!(perm.len(), degrees.len(), "permutation and degree list differ in length");
    let mut odd = 0i64;
    for a in 0..perm.len() {
        for b in a + 1..perm.len() {
            if perm[a] > perm[b] {
                odd += (degrees[perm[a]] * degrees[perm[b]]).rem_euclid(2) as i64;
            }
        }
    }
    if odd % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Ordinary sign of a permutation given as an image list.
pub fn perm_sign(perm: &[usize]) -> i64 {
    let mut inv = 0usize;
    for a in 0..perm.len() {
        for b in a + 1..perm.len() {
            if perm[a] > perm[b] {
                inv += 1;
            }
        }
    }
    if inv.is_multiple_of(2) {
        1
    } else {
        -1
    }
}
