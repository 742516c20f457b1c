//! Closed-form vertex counts and domain checks for the patch families.
//! All arithmetic is checked 64-bit integer; no floating point.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{formula}: {condition}")]
pub struct FormulaDomainError {
    pub formula: &'static str,
    pub condition: String,
}

fn err(formula: &'static str, condition: impl Into<String>) -> FormulaDomainError {
    FormulaDomainError {
        formula,
        condition: condition.into(),
    }
}

/// Binomial coefficient C(n, 2) with C(0,2) = C(1,2) = 0.
pub fn binom2(n: i64) -> Result<i64, FormulaDomainError> {
    if n < 0 {
        return Err(err("binom2", format!("n = {} must be nonnegative", n)));
    }
    n.checked_mul(n - 1)
        .and_then(|x| x.checked_div(2))
        .ok_or_else(|| err("binom2", "overflow".to_string()))
}

/// Interior degree-6 count of the three-cornered patches, split by how many
/// of the degree-4 vertices lie on the boundary.
///
/// * `(h, 0, 0)`: all three corners on the boundary, `N = C(h+2,2) - 3`.
/// * `(h, k, 0)`: one corner inside at distance `k`,
///   `N = C(h+k+2,2) - C(2k+1,2) + C(k,2) - 3` with `0 < k < h`.
/// * `(h, k, l)`: two corners inside at distances `k` and `l`,
///   `N = C(h+k+l+2,2) - 3 C(k+1,2) - 3 C(l+1,2) - 3` with `0 < l <= k < h`.
pub fn n_030(h: i64, k: i64, l: i64) -> Result<i64, FormulaDomainError> {
    const F: &str = "n_030";
    if h < 1 {
        return Err(err(F, format!("h = {} must be at least 1", h)));
    }
    if k == 0 && l == 0 {
        return Ok(binom2(h + 2)? - 3);
    }
    if l == 0 {
        if !(0 < k && k < h) {
            return Err(err(F, format!("need 0 < k < h, got k = {}, h = {}", k, h)));
        }
        return Ok(binom2(h + k + 2)? - binom2(2 * k + 1)? + binom2(k)? - 3);
    }
    if !(0 < l && l <= k && k < h) {
        return Err(err(
            F,
            format!("need 0 < l <= k < h, got l = {}, k = {}, h = {}", l, k, h),
        ));
    }
    Ok(binom2(h + k + l + 2)? - 3 * binom2(k + 1)? - 3 * binom2(l + 1)? - 3)
}

/// Boundary-part lengths between the two boundary corners of an `(h,k,0)`
/// patch: `(h+l, 2h-l)` with `l = h-k`.
pub fn boundary_parts_030(h: i64, k: i64) -> Result<(i64, i64), FormulaDomainError> {
    if !(0 < k && k < h) {
        return Err(err(
            "boundary_parts_030",
            format!("need 0 < k < h, got {}, {}", k, h),
        ));
    }
    let l = h - k;
    Ok((h + l, 2 * h - l))
}

/// Corner-truncated patch of kind (1): `(0,2,2)` with two boundary fours and
/// two boundary fives. Returns `(N, b)`.
pub fn n_type1(h: i64, c: i64) -> Result<(i64, i64), FormulaDomainError> {
    const F: &str = "n_type1";
    if !(2 <= c && c <= h) {
        return Err(err(
            F,
            format!("need 2 <= c <= h, got c = {}, h = {}", c, h),
        ));
    }
    Ok((binom2(h + 2)? - binom2(c)? - 4, 3 * h - c + 1))
}

/// Kind (1) stated over measured boundary strings: fives `c-1` apart, fours
/// `h` apart, mixed strings `s` and `t`.
pub fn n_type1_measured(s: i64, t: i64, c: i64, h: i64) -> Result<i64, FormulaDomainError> {
    const F: &str = "n_type1_measured";
    if s != t {
        return Err(err(F, format!("s = t required, got s = {}, t = {}", s, t)));
    }
    if c - 1 + s != h {
        return Err(err(
            F,
            format!("c-1+s = h required, got {} vs {}", c - 1 + s, h),
        ));
    }
    if h < c {
        return Err(err(F, format!("h >= c required, got h = {}, c = {}", h, c)));
    }
    Ok(binom2(h + 2)? - binom2(c)? - 4)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DerivedHkl {
    pub h: i64,
    pub k: i64,
    pub l: i64,
    pub n: i64,
}

/// Kind (2): `(0,2,2)` with one boundary four; measured strings `s`, `t`
/// from the four to the fives and `c-1` between the fives. The three
/// combinations below must be multiples of three.
pub fn n_type2(s: i64, t: i64, c: i64) -> Result<DerivedHkl, FormulaDomainError> {
    const F: &str = "n_type2";
    for (name, v) in [
        ("s+t+2(c-1)", s + t + 2 * (c - 1)),
        ("2s-t+(c-1)", 2 * s - t + (c - 1)),
        ("2t-s+(c-1)", 2 * t - s + (c - 1)),
    ] {
        if v % 3 != 0 {
            return Err(err(F, format!("{} = {} is not a multiple of 3", name, v)));
        }
    }
    let h = (s + t + 2 * (c - 1)) / 3;
    let k = (2 * s - t + (c - 1)) / 3;
    let l = (2 * t - s + (c - 1)) / 3;
    if !(0 < k && k < h) {
        return Err(err(
            F,
            format!("derived k = {} outside 0 < k < h = {}", k, h),
        ));
    }
    let n = binom2(h + k + 2)? - binom2(2 * k + 1)? + binom2(k)? - binom2(c)? - 4;
    Ok(DerivedHkl { h, k, l, n })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Type3Count {
    pub h: i64,
    /// Value of the count exactly as printed, using C(k+l,2).
    pub printed: i64,
    /// Value matching the underlying construction, using C(k+1,2).
    pub construction: i64,
}

/// Kind (3): `(0,2,2)` with no boundary four; strings `s` and `c-1` between
/// the two fives; `k`, `l` locate the interior fours. The printed count
/// uses `C(k+l,2)` where the construction gives `C(k+1,2)`; both are
/// returned so the discrepancy can be reported rather than silently fixed.
pub fn n_type3(s: i64, c: i64, k: i64, l: i64) -> Result<Type3Count, FormulaDomainError> {
    const F: &str = "n_type3";
    for (name, v) in [("s+2(c-1)", s + 2 * (c - 1)), ("2s+(c-1)", 2 * s + (c - 1))] {
        if v % 3 != 0 {
            return Err(err(F, format!("{} = {} is not a multiple of 3", name, v)));
        }
    }
    let h = (s + 2 * (c - 1)) / 3;
    if !(0 < l && l <= k && k < h) {
        return Err(err(
            F,
            format!("need 0 < l <= k < h, got l = {}, k = {}, h = {}", l, k, h),
        ));
    }
    let common = binom2(h + k + l + 2)? - 3 * binom2(l + 1)? - binom2(c)? - 4;
    Ok(Type3Count {
        h,
        printed: common - 3 * binom2(k + l)?,
        construction: common - 3 * binom2(k + 1)?,
    })
}

/// Kind (4): `(0,1,4)` with one boundary four. Strings `c1-1`, `r`, `c2-1`
/// between the fives and `s`, `t` flanking the four.
pub fn n_type4(r: i64, s: i64, t: i64, c1: i64, c2: i64) -> Result<(i64, i64), FormulaDomainError> {
    const F: &str = "n_type4";
    let total = r + s + t + 2 * (c1 - 1) + 2 * (c2 - 1);
    if total % 3 != 0 {
        return Err(err(
            F,
            format!("boundary total {} is not a multiple of 3", total),
        ));
    }
    let h = s + c1 - 1;
    if t + c2 - 1 != h || r + c1 + c2 - 2 != h {
        return Err(err(
            F,
            format!(
                "segment identity s+c1-1 = t+c2-1 = r+c1+c2-2 fails: {} / {} / {}",
                s + c1 - 1,
                t + c2 - 1,
                r + c1 + c2 - 2
            ),
        ));
    }
    Ok((binom2(h + 2)? - binom2(c1)? - binom2(c2)? - 5, h))
}

/// Kind (5): `(0,1,4)` with no boundary four; strings `s`, `c1-1`, `t`,
/// `c2-1` in cyclic order.
pub fn n_type5(s: i64, t: i64, c1: i64, c2: i64) -> Result<DerivedHkl, FormulaDomainError> {
    const F: &str = "n_type5";
    for (name, v) in [
        ("s+t+2(c1-1)+2(c2-1)", s + t + 2 * (c1 - 1) + 2 * (c2 - 1)),
        ("2s-t+(c1-1)+(c2-1)", 2 * s - t + (c1 - 1) + (c2 - 1)),
        ("2t-s+(c1-1)+(c2-1)", 2 * t - s + (c1 - 1) + (c2 - 1)),
    ] {
        if v % 3 != 0 {
            return Err(err(F, format!("{} = {} is not a multiple of 3", name, v)));
        }
    }
    let h = (s + t + 2 * (c1 - 1) + 2 * (c2 - 1)) / 3;
    let k = (2 * s - t + (c1 - 1) + (c2 - 1)) / 3;
    let l = (2 * t - s + (c1 - 1) + (c2 - 1)) / 3;
    if !(0 < k && k < h) {
        return Err(err(
            F,
            format!("derived k = {} outside 0 < k < h = {}", k, h),
        ));
    }
    let n = binom2(h + k + 2)? - binom2(2 * k + 1)? + binom2(k)? - binom2(c1)? - binom2(c2)? - 5;
    Ok(DerivedHkl { h, k, l, n })
}

/// Kind (6): `(0,0,6)`; strings `r`, `c1-1`, `s`, `c2-1`, `t`, `c3-1` in
/// cyclic order.
pub fn n_type6(
    r: i64,
    s: i64,
    t: i64,
    c1: i64,
    c2: i64,
    c3: i64,
) -> Result<(i64, i64), FormulaDomainError> {
    const F: &str = "n_type6";
    let total = r + s + t + 2 * (c1 - 1) + 2 * (c2 - 1) + 2 * (c3 - 1);
    if total % 3 != 0 {
        return Err(err(
            F,
            format!("boundary total {} is not a multiple of 3", total),
        ));
    }
    let h = r + c1 + c3 - 2;
    if s + c1 + c2 - 2 != h || t + c2 + c3 - 2 != h {
        return Err(err(
            F,
            format!(
                "segment identity fails: {} / {} / {}",
                r + c1 + c3 - 2,
                s + c1 + c2 - 2,
                t + c2 + c3 - 2
            ),
        ));
    }
    Ok((
        binom2(h + 2)? - binom2(c1)? - binom2(c2)? - binom2(c3)? - 6,
        h,
    ))
}

/// Kind (7): `(0,2,2)` with corner degrees alternating 4,5,4,5; side
/// lengths `u`, `v`. The boundary length `2(u+v)` is always even.
pub fn n_type7(u: i64, v: i64) -> Result<(i64, i64), FormulaDomainError> {
    const F: &str = "n_type7";
    if u < 1 || v < 1 {
        return Err(err(F, format!("need u, v >= 1, got {}, {}", u, v)));
    }
    let b = 2 * (u + v);
    if b % 2 != 0 {
        return Err(err(F, format!("boundary length {} must be even", b)));
    }
    Ok(((u + 1) * (v + 1) - 4, b))
}

/// Patch families of type `(1,1,1)`. Returns `(N, b)`.
pub fn family_signature(family: char, k: i64, m: i64) -> Result<(i64, i64), FormulaDomainError> {
    const F: &str = "family_signature";
    if m < 0 {
        return Err(err(F, format!("m = {} must be nonnegative", m)));
    }
    let simple = |min_k: i64, sub: i64, slope: i64| -> Result<(i64, i64), FormulaDomainError> {
        if k < min_k {
            return Err(err(
                F,
                format!("family {}: k = {} below minimum {}", family, k, min_k),
            ));
        }
        Ok((binom2(k + 1)? - sub + slope * m, k + 2 * m))
    };
    let fixed = |min_k: i64, sub: i64| -> Result<(i64, i64), FormulaDomainError> {
        if m != 0 {
            return Err(err(
                F,
                format!("family {} takes no second parameter", family),
            ));
        }
        if k < min_k {
            return Err(err(
                F,
                format!("family {}: k = {} below minimum {}", family, k, min_k),
            ));
        }
        Ok((binom2(k + 1)? - sub, k))
    };
    match family {
        'A' => {
            if k < 3 || k % 2 == 0 {
                return Err(err(F, format!("family A: k = {} must be odd and >= 3", k)));
            }
            let half = (k + 1) / 2;
            Ok((2 * (half * half - 2) + k * m, (2 * k - 1) + 2 * m))
        }
        'B' => simple(5, 10, 2 * k - 7),
        'C' => simple(7, 20, 2 * k - 11),
        'D' => simple(3, 4, 2 * k - 3),
        'E' => simple(10, 40, 2 * k - 15),
        'F' => simple(18, 124, 2 * k - 27),
        'G' => simple(14, 76, 2 * k - 21),
        'H' => fixed(3, 4),
        'I' => fixed(4, 8),
        'J' => fixed(5, 10),
        'K' => fixed(6, 16),
        'L' => fixed(7, 20),
        'M' => fixed(8, 26),
        'N' => fixed(9, 34),
        'O' => fixed(10, 40),
        'P' => fixed(10, 44),
        _ => Err(err(F, format!("unknown family {:?}", family))),
    }
}
