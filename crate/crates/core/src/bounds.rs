//! Closed-form shadow bounds, size thresholds and the coefficients that tie
//! them together. All values are exact; out-of-range parameters are rejected.

use num_bigint::BigUint;

use crate::error::{ensure_contract, Result};
use crate::exact::{binom, ExactRatio};

/// `C(m, a) / C(m, b)`; callers guarantee a nonzero denominator.
fn binomial_ratio(m: i64, a: i64, b: i64) -> ExactRatio {
    ExactRatio::of(binom(m, a), binom(m, b))
}

fn frac(p: i64, q: i64) -> ExactRatio {
    ExactRatio::new(p, q).expect("nonzero denominator")
}

/// Lower bound on `|∂^j F| / |F|` for arbitrary `F ⊆ C([n], k)`:
/// `C(n, k-j) / C(n, k)`.
pub fn sperner_ratio(n: usize, k: usize, j: usize) -> Result<ExactRatio> {
    ensure_contract!(0 < j && j < k && k <= n, "need 0 < j < k <= n, got n={n} k={k} j={j}");
    Ok(binomial_ratio(n as i64, (k - j) as i64, k as i64))
}

/// Lower bound on `|σ_ℓ(F)| / |F|` for t-intersecting `F`:
/// `C(2k-t, ℓ) / C(2k-t, k)`, valid for `k - t <= ℓ < k`.
pub fn katona_ratio(k: usize, t: usize, ell: usize) -> Result<ExactRatio> {
    ensure_contract!(
        t <= k && k - t <= ell && ell < k,
        "need k - t <= ell < k, got k={k} t={t} ell={ell}"
    );
    let m = (2 * k - t) as i64;
    Ok(binomial_ratio(m, ell as i64, k as i64))
}

fn check_sharpened(k: usize, t: usize, j: usize) -> Result<()> {
    ensure_contract!(1 <= j && j < t && t < k, "need 1 <= j < t < k, got k={k} t={t} j={j}");
    Ok(())
}

/// The improved ratio for large t-intersecting families:
/// `C(2(k-1)-t, k-1-j) / C(2(k-1)-t, k-1)`.
pub fn sharpened_ratio(k: usize, t: usize, j: usize) -> Result<ExactRatio> {
    check_sharpened(k, t, j)?;
    let m = (2 * (k - 1) - t) as i64;
    Ok(binomial_ratio(m, (k - 1 - j) as i64, (k - 1) as i64))
}

/// Size above which [`sharpened_ratio`] applies:
/// `C(2k-t, k) * (1 + (t-j)/(k+t+1-j))`.
pub fn sharpened_threshold(k: usize, t: usize, j: usize) -> Result<ExactRatio> {
    check_sharpened(k, t, j)?;
    let base = ExactRatio::from(binom((2 * k - t) as i64, k as i64));
    let factor = ExactRatio::one() + frac((t - j) as i64, (k + t + 1 - j) as i64);
    Ok(base * factor)
}

/// Restricted-shadow ratio of a shifted pseudo t-intersecting family of
/// width `w`: `C(t+2w, t+w-j) / C(t+2w, t+w)`.
pub fn width_ratio(t: usize, w: usize, j: usize) -> Result<ExactRatio> {
    ensure_contract!(0 < j && j <= t, "need 0 < j <= t, got t={t} j={j}");
    let m = (t + 2 * w) as i64;
    Ok(binomial_ratio(m, (t + w - j) as i64, (t + w) as i64))
}

/// The width coefficient with arguments in `(w, t, j)` order; identical to
/// [`width_ratio`].
pub fn width_coefficient(w: usize, t: usize, j: usize) -> Result<ExactRatio> {
    width_ratio(t, w, j)
}

fn katona_shadow_ratio(k: usize, t: usize, j: usize) -> ExactRatio {
    let m = (2 * k - t) as i64;
    binomial_ratio(m, (k - j) as i64, k as i64)
}

/// Gain of the inner part in the large-family argument:
/// `j(t-j) / (k(k-t)) * C(2k-t, k-j) / C(2k-t, k)`.
pub fn inner_gap(k: usize, t: usize, j: usize) -> Result<ExactRatio> {
    check_sharpened(k, t, j)?;
    let (k, t, j) = (k as i64, t as i64, j as i64);
    Ok(frac(j * (t - j), k * (k - t)) * katona_shadow_ratio(k as usize, t as usize, j as usize))
}

/// Gain of the outer part:
/// `(j(k²-t²-t) - j²(k-2t-1) - j³) / (k(k-t)(k-t-1)) * C(2k-t, k-j) / C(2k-t, k)`.
pub fn outer_gap(k: usize, t: usize, j: usize) -> Result<ExactRatio> {
    check_sharpened(k, t, j)?;
    ensure_contract!(k - t >= 2, "need k - t >= 2, got k={k} t={t}");
    let (ki, ti, ji) = (k as i64, t as i64, j as i64);
    let numer = ji * (ki * ki - ti * ti - ti) - ji * ji * (ki - 2 * ti - 1) - ji * ji * ji;
    let denom = ki * (ki - ti) * (ki - ti - 1);
    Ok(frac(numer, denom) * katona_shadow_ratio(k, t, j))
}

fn check_width_gap(w: usize, k: usize, t: usize, j: usize) -> Result<()> {
    ensure_contract!(
        t < k && 1 <= w && w <= k - t,
        "need 1 <= w <= k - t, got w={w} k={k} t={t}"
    );
    ensure_contract!(0 < j && j <= t, "need 0 < j <= t, got t={t} j={j}");
    Ok(())
}

/// `c(w, t, j) - c(k-t, t, j)` with `c` = [`width_coefficient`].
pub fn width_inner_gap(w: usize, k: usize, t: usize, j: usize) -> Result<ExactRatio> {
    check_width_gap(w, k, t, j)?;
    Ok(width_coefficient(w, t, j)? - width_coefficient(k - t, t, j)?)
}

/// `c(w-1, t+1, j) - c(w, t, j)` with `c` = [`width_coefficient`].
pub fn width_outer_gap(w: usize, t: usize, j: usize) -> Result<ExactRatio> {
    ensure_contract!(w >= 1, "need w >= 1, got {w}");
    ensure_contract!(0 < j && j <= t, "need 0 < j <= t, got t={t} j={j}");
    Ok(width_coefficient(w - 1, t + 1, j)? - width_coefficient(w, t, j)?)
}

/// Shadow ratio for t-intersecting `(t+1)`-semistars: `C(t+2, j+1) / (t+2)`.
pub fn semistar_bound(t: usize, j: usize) -> Result<ExactRatio> {
    ensure_contract!(1 < j && j < t, "need 1 < j < t, got t={t} j={j}");
    Ok(ExactRatio::of(binom((t + 2) as i64, (j + 1) as i64), (t + 2) as u64))
}

/// Shadow ratio for t-stars: `C(t, j)`.
pub fn star_bound(t: usize, j: usize) -> Result<ExactRatio> {
    ensure_contract!(0 < j && j <= t, "need 0 < j <= t, got t={t} j={j}");
    Ok(binom(t as i64, j as i64).into())
}

/// Size bound `C(n-1, k-t)` for t-intersecting families with `n > 2k - t`.
pub fn universal_bound(n: usize, k: usize, t: usize) -> Result<BigUint> {
    ensure_contract!(t <= k && n > 2 * k - t, "need n > 2k - t, got n={n} k={k} t={t}");
    Ok(binom(n as i64 - 1, (k - t) as i64))
}

/// `t C(n-2k+t, k-t-1) + Σ_{t+2 <= ℓ <= k} C(2k-t, ℓ-t) C(n, k-ℓ)`: the size
/// above which shifted t-intersecting families outside `A_1` have shadow
/// ratio above `C(t, j)`.
pub fn star_shadow_threshold(n: usize, k: usize, t: usize) -> Result<BigUint> {
    ensure_contract!(t >= 1 && 2 * t < k, "need t + 2 <= k - t + 1, got k={k} t={t}");
    ensure_contract!(n >= 2 * k - t, "need n >= 2k - t, got n={n}");
    let (n, k, t) = (n as i64, k as i64, t as i64);
    let mut acc = binom(n - 2 * k + t, k - t - 1) * BigUint::from(t as u64);
    for ell in t + 2..=k {
        acc += binom(2 * k - t, ell - t) * binom(n, k - ell);
    }
    Ok(acc)
}

/// `(α + β)/α * C(2k-t, w+1) * C(n-2k+t, k-w-t-1)` with
/// `α` = [`width_inner_gap`] and `β` = [`width_outer_gap`]; the vanishing
/// correction term of the asymptotic statement is left out.
pub fn general_threshold(n: usize, k: usize, t: usize, w: usize, j: usize) -> Result<ExactRatio> {
    ensure_contract!(t < k && 1 <= w && w < k - t, "need 1 <= w < k - t, got w={w} k={k} t={t}");
    ensure_contract!(n >= 2 * k - t, "need n >= 2k - t, got n={n}");
    ensure_contract!(0 < j && j < t, "need 0 < j < t, got t={t} j={j}");
    let alpha = width_inner_gap(w, k, t, j)?;
    let beta = width_outer_gap(w, t, j)?;
    let (ni, ki, ti, wi) = (n as i64, k as i64, t as i64, w as i64);
    let count = binom(2 * ki - ti, wi + 1) * binom(ni - 2 * ki + ti, ki - wi - ti - 1);
    Ok((&alpha + &beta) / alpha * ExactRatio::from(count))
}

/// Checks the two monotonicity inequalities of the width ratio:
/// (i) the ratio at width `h` exceeds the ratio at width `w`;
/// (ii) shifting both binomial indices of the width-`w` ratio up by `r`
/// increases it.
pub fn width_monotonicity(t: usize, j: usize, h: usize, w: usize, r: usize) -> Result<(bool, bool)> {
    ensure_contract!(0 < j && j < t, "need 0 < j < t, got t={t} j={j}");
    ensure_contract!(h < w, "need h < w, got h={h} w={w}");
    ensure_contract!(1 <= r && r <= w, "need 1 <= r <= w, got r={r} w={w}");
    let first = width_ratio(t, h, j)? > width_ratio(t, w, j)?;
    let m = (t + 2 * w) as i64;
    let (tw, ji, ri) = ((t + w) as i64, j as i64, r as i64);
    let shifted = binomial_ratio(m, tw - ji + ri, tw + ri);
    let second = shifted > width_ratio(t, w, j)?;
    Ok((first, second))
}

/// Relative excess `j(t-j) s(s-1)...(s-j+1) / (k-1)^{j+2}` of the two-part
/// counterexample family over `C(2k-t, k)`.
pub fn excess_fraction(k: usize, t: usize, j: usize, s: usize) -> Result<ExactRatio> {
    check_sharpened(k, t, j)?;
    let falling: i64 = (0..j as i64).map(|i| s as i64 - i).product();
    let power = (k as i64 - 1).pow(j as u32 + 2);
    Ok(frac(j as i64 * (t - j) as i64 * falling, power))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::binomial;

    fn r(s: &str) -> ExactRatio {
        s.parse().unwrap()
    }

    #[test]
    fn sperner_examples() {
        assert_eq!(sperner_ratio(4, 3, 1).unwrap(), r("3/2"));
        assert!(sperner_ratio(4, 3, 0).is_err());
        assert!(sperner_ratio(4, 3, 3).is_err());
        for k in 2..=10 {
            let direct = ExactRatio::of(binomial(2 * k, k as i64 - 1), binomial(2 * k, k as i64));
            assert_eq!(sperner_ratio(2 * k as usize, k as usize, 1).unwrap(), direct);
        }
    }

    #[test]
    fn katona_examples() {
        assert_eq!(katona_ratio(3, 2, 2).unwrap(), r("3/2"));
        assert_eq!(katona_ratio(2, 1, 1).unwrap(), r("1"));
        assert!(katona_ratio(4, 1, 2).is_err());
        assert!(katona_ratio(4, 1, 4).is_err());
        for k in 2..=20 {
            for t in 1..k {
                // ℓ = k - 1 gives k/(k-t+1)
                assert_eq!(
                    katona_ratio(k, t, k - 1).unwrap(),
                    frac(k as i64, (k - t + 1) as i64)
                );
                for ell in k - t..k {
                    assert!(katona_ratio(k, t, ell).unwrap() >= ExactRatio::one());
                }
            }
        }
    }

    #[test]
    fn sharpened_examples() {
        assert_eq!(sharpened_ratio(4, 2, 1).unwrap(), r("3/2"));
        assert_eq!(sharpened_threshold(4, 2, 1).unwrap(), r("35/2"));
        assert!(sharpened_ratio(4, 2, 2).is_err());
        for k in 3..=20 {
            for t in 2..k {
                // j = 1 reduces to (k-1)/(k-t)
                assert_eq!(
                    sharpened_ratio(k, t, 1).unwrap(),
                    frac(k as i64 - 1, (k - t) as i64)
                );
                let cap = ExactRatio::from(binomial((2 * k - t) as u64, k as i64)) * r("3/2");
                for j in 1..t {
                    assert!(sharpened_threshold(k, t, j).unwrap() < cap);
                    // the same ratio viewed as a width coefficient at (k-1, t)
                    assert_eq!(
                        sharpened_ratio(k, t, j).unwrap(),
                        width_coefficient(k - 1 - t, t, j).unwrap()
                    );
                    assert_eq!(
                        sharpened_ratio(k, t, j).unwrap(),
                        katona_ratio(k - 1, t, k - 1 - j).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn width_ratio_examples() {
        assert_eq!(width_ratio(2, 1, 1).unwrap(), r("3/2"));
        for t in 1..=10 {
            for j in 1..=t {
                assert_eq!(
                    width_ratio(t, 0, j).unwrap(),
                    ExactRatio::from(binomial(t as u64, j as i64))
                );
                for w in 0..10 {
                    let (here, next) = (width_ratio(t, w, j).unwrap(), width_ratio(t, w + 1, j).unwrap());
                    if j < t {
                        assert!(here > next);
                    } else {
                        assert_eq!(here, ExactRatio::one());
                    }
                }
            }
        }
        assert!(width_ratio(2, 1, 3).is_err());
        assert!(width_ratio(2, 1, 0).is_err());
    }

    /// Product form `Π_{1<=i<=j} (1 + (t-j)/(w+i))` of the width ratio.
    fn width_ratio_product(t: usize, w: usize, j: usize) -> ExactRatio {
        (1..=j).fold(ExactRatio::one(), |acc, i| {
            acc * (ExactRatio::one() + frac((t - j) as i64, (w + i) as i64))
        })
    }

    /// Product form `Π_{1<=i<=j} (t-j+w+i+r)/(w+i-r)` of the shifted ratio.
    fn shifted_product(t: usize, w: usize, j: usize, r: usize) -> ExactRatio {
        (1..=j).fold(ExactRatio::one(), |acc, i| {
            acc * frac((t - j + w + i + r) as i64, (w + i - r) as i64)
        })
    }

    #[test]
    fn width_ratio_matches_product_form() {
        for t in 1..=12 {
            for j in 1..=t {
                for w in 0..=12 {
                    assert_eq!(width_ratio(t, w, j).unwrap(), width_ratio_product(t, w, j));
                }
            }
        }
    }

    #[test]
    fn coefficient_examples() {
        assert_eq!(width_coefficient(1, 2, 1).unwrap(), r("3/2"));
        for k in 2..=20 {
            for t in 1..k {
                for j in 1..=t {
                    assert_eq!(
                        width_coefficient(k - t, t, j).unwrap(),
                        katona_ratio(k, t, k - j).unwrap()
                    );
                }
            }
        }
        for t in 1..=10 {
            for w in 1..=10 {
                for j in 1..=t {
                    assert!(
                        width_coefficient(w - 1, t + 1, j).unwrap()
                            > width_coefficient(w, t, j).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn gap_examples() {
        assert_eq!(inner_gap(4, 2, 1).unwrap(), r("1/6"));
        assert_eq!(outer_gap(4, 2, 1).unwrap(), r("5/3"));
        assert_eq!(outer_gap(4, 2, 1).unwrap() / inner_gap(4, 2, 1).unwrap(), r("10"));
        assert!(outer_gap(4, 3, 1).is_err());
        assert!(inner_gap(4, 2, 2).is_err());
    }

    #[test]
    fn gaps_match_difference_form() {
        for k in 3..=20 {
            for t in 2..k {
                for j in 1..t {
                    let outer_ratio = katona_shadow_ratio(k, t, j);
                    let inner = sharpened_ratio(k, t, j).unwrap() - outer_ratio.clone();
                    assert_eq!(inner_gap(k, t, j).unwrap(), inner);
                    // (k-j)(k-t+j)/(k(k-t)) = 1 + j(t-j)/(k(k-t))
                    let (ki, ti, ji) = (k as i64, t as i64, j as i64);
                    assert_eq!(
                        frac((ki - ji) * (ki - ti + ji), ki * (ki - ti)),
                        ExactRatio::one() + frac(ji * (ti - ji), ki * (ki - ti))
                    );
                    if k - t >= 2 {
                        let m = (t + 1 + 2 * (k - t - 2)) as i64;
                        let outer = binomial_ratio(m, (k - 1 - j) as i64, (k - 1) as i64)
                            - outer_ratio;
                        assert_eq!(outer_gap(k, t, j).unwrap(), outer);
                    }
                }
            }
        }
    }

    #[test]
    fn gap_quotient_identity() {
        for k in 4..=20 {
            for t in 2..k - 1 {
                for j in 1..t {
                    let (ki, ti, ji) = (k as i64, t as i64, j as i64);
                    let quotient = outer_gap(k, t, j).unwrap() / inner_gap(k, t, j).unwrap();
                    let base = frac(ki + ti + 1 - ji, ti - ji);
                    let excess = frac(ti + 1 + (ti - ji) * ji, (ti - ji) * (ki - ti - 1));
                    assert_eq!(&quotient - &base, excess, "k={k} t={t} j={j}");
                    assert!(quotient > base);
                }
            }
        }
    }

    #[test]
    fn width_gap_examples() {
        for k in 2..=12 {
            for t in 1..k {
                for j in 1..=t {
                    assert!(width_inner_gap(k - t, k, t, j).unwrap().is_zero());
                    for w in 1..k - t {
                        assert_eq!(width_inner_gap(w, k, t, j).unwrap().is_positive(), j < t);
                        assert!(width_outer_gap(w, t, j).unwrap().is_positive());
                    }
                }
            }
        }
        assert!(width_inner_gap(0, 4, 2, 1).is_err());
        assert!(width_outer_gap(0, 2, 1).is_err());
    }

    #[test]
    fn star_examples() {
        assert_eq!(semistar_bound(3, 2).unwrap(), r("2"));
        assert!(semistar_bound(3, 1).is_err());
        assert!(semistar_bound(3, 3).is_err());
        for t in 1..=15 {
            assert_eq!(star_bound(t, t).unwrap(), ExactRatio::one());
            for j in 2..t {
                let semi = semistar_bound(t, j).unwrap();
                assert!(semi < star_bound(t, j).unwrap());
                // C(t+2, j+1)/(t+2) = (t+1)/((j+1)(t-j+1)) C(t, j)
                let (ti, ji) = (t as i64, j as i64);
                assert_eq!(
                    semi,
                    frac(ti + 1, (ji + 1) * (ti - ji + 1)) * star_bound(t, j).unwrap()
                );
            }
        }
    }

    #[test]
    fn universal_examples() {
        assert_eq!(universal_bound(7, 3, 1).unwrap(), BigUint::from(15u32));
        assert!(universal_bound(5, 3, 1).is_err());
    }

    #[test]
    fn star_threshold_examples() {
        // (12,4,1): 1*C(5,2) + C(7,2)C(12,1) + C(7,3)C(12,0)
        assert_eq!(
            star_shadow_threshold(12, 4, 1).unwrap(),
            BigUint::from(10u32 + 21 * 12 + 35)
        );
        assert!(star_shadow_threshold(12, 4, 2).is_err());
    }

    #[test]
    fn general_threshold_growth() {
        // Leading term ~ n^{k-w-t-1}: doubling n scales the value by about 2^{k-w-t-1}.
        let (k, t, w, j) = (6, 2, 1, 1);
        let a = general_threshold(1000, k, t, w, j).unwrap().to_f64();
        let b = general_threshold(2000, k, t, w, j).unwrap().to_f64();
        let growth = b / a;
        let expected = 2f64.powi((k - w - t - 1) as i32);
        assert!((growth / expected - 1.0).abs() < 0.02, "growth {growth}");
        assert!(general_threshold(20, 6, 2, 4, 1).is_err());
    }

    #[test]
    fn monotonicity_examples() {
        assert_eq!(width_monotonicity(3, 1, 0, 2, 1).unwrap(), (true, true));
        assert!(width_monotonicity(3, 1, 2, 2, 1).is_err());
        for t in 2..=8 {
            for j in 1..t {
                for w in 1..=8 {
                    for h in 0..w {
                        for r in 1..=w {
                            assert_eq!(width_monotonicity(t, j, h, w, r).unwrap(), (true, true));
                            let m = (t + 2 * w) as i64;
                            let (tw, ji, ri) = ((t + w) as i64, j as i64, r as i64);
                            assert_eq!(
                                binomial_ratio(m, tw - ji + ri, tw + ri),
                                shifted_product(t, w, j, r)
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn excess_examples() {
        assert_eq!(excess_fraction(9, 3, 1, 0).unwrap(), ExactRatio::zero());
        assert_eq!(excess_fraction(9, 3, 1, 2).unwrap(), frac(2 * 2, 8i64.pow(3)));
    }
}
