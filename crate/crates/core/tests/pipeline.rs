//! Cross-module integration: exhaustive counting, the count formulas, and
//! the Weil-polynomial machinery must tell one consistent story.

use nck3_core::category::{ack3_from_cubic, cubic_from_ack3};
use nck3_core::cubic::{count_table, parse_cubic, singular_scan, CountOptions};
use nck3_core::cyclotomic::{cyclotomic, CyclotomicBasis};
use nck3_core::newton::power_sums;
use nck3_core::poly::RatPoly;
use nck3_core::rational::rat_int;
use nck3_core::weil::{weil_from_counts, WeilPolynomial};
use num_traits::Signed;

/// The bundled cubic over F_2 and the Weil polynomial of its K3 category.
const SPECIAL_CUBIC: &str = "p=2
1 3 0 0 0 0 0
1 2 1 0 0 0 0
1 2 0 1 0 0 0
1 2 0 0 1 0 0
1 2 0 0 0 1 0
1 2 0 0 0 0 1
1 1 2 0 0 0 0
1 1 1 0 0 0 1
1 1 0 1 0 1 0
1 1 0 0 2 0 0
1 1 0 0 0 2 0
1 1 0 0 0 0 2
1 0 3 0 0 0 0
1 0 2 0 0 1 0
1 0 1 2 0 0 0
1 0 1 1 1 0 0
1 0 1 0 2 0 0
1 0 1 0 0 0 2
1 0 0 1 0 2 0
1 0 0 0 2 1 0
1 0 0 0 2 0 1
1 0 0 0 1 2 0
1 0 0 0 0 3 0
1 0 0 0 0 1 2
";

const F_SPECIAL: &str = "1,-1,1,-3/2,1,-3/2,3/2,-1,2,-2,3/2,-2,3/2,-2,2,-1,3/2,-3/2,1,-3/2,1,-1,1";

#[test]
fn brute_force_counts_meet_the_weil_polynomial() {
    // count the cubic exhaustively, derive the K3-category counts, and
    // compare against the power-sum expansion of its Weil polynomial
    let form = parse_cubic(SPECIAL_CUBIC).unwrap();
    let table = count_table(&form, 4, CountOptions::default()).unwrap();
    let from_counting = ack3_from_cubic(&table).unwrap();
    let w = WeilPolynomial::new(2, RatPoly::parse(F_SPECIAL).unwrap()).unwrap();
    let from_weil = w.counts(4).unwrap();
    assert_eq!(from_counting, from_weil);
    // and back: the cubic table is recovered exactly
    assert_eq!(cubic_from_ack3(&from_weil), table);
}

#[test]
fn special_cubic_has_no_small_singular_points() {
    let form = parse_cubic(SPECIAL_CUBIC).unwrap();
    assert_eq!(singular_scan(&form, 3).unwrap(), Vec::new());
}

struct SplitMix(u64);

impl SplitMix {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }
}

fn random_product(rng: &mut SplitMix, allowed: &[(u64, RatPoly)]) -> RatPoly {
    loop {
        let mut remaining = 22i64;
        let mut poly = RatPoly::one();
        while remaining > 0 {
            let (_, c) = &allowed[rng.below(allowed.len() as u64) as usize];
            let d = c.degree().unwrap() as i64;
            if d <= remaining {
                poly = &poly * c;
                remaining -= d;
            }
        }
        if poly.degree() == Some(22) {
            return poly;
        }
    }
}

#[test]
fn unit_circle_structure_invariants() {
    let basis = CyclotomicBasis::new(22);
    let allowed = basis.entries().to_vec();
    let mut rng = SplitMix(0x1234);
    for _ in 0..40 {
        let w = WeilPolynomial::new(2, random_product(&mut rng, &allowed)).unwrap();
        assert!(w.roots_on_unit_circle());
        // unit circle forces a functional equation
        assert!(w.self_inversive_sign().is_some());
        // power sums of 22 unit-circle roots are bounded by 22
        for p_n in power_sums(w.poly(), 12).unwrap() {
            assert!(p_n.abs() <= rat_int(22));
        }
        // the transcendental factor has even degree; ranks are ordered
        let split = w.cyclotomic_split_with(&basis);
        assert_eq!(split.trc.degree().unwrap_or(0) % 2, 0);
        assert!(split.rho <= split.rho_bar);
        assert!(split.rho_bar <= 22);
        assert_eq!(split.rho_bar as usize + split.trc.degree().unwrap_or(0), 22);
        // reconstruction from counts finds the original
        if let Ok(counts) = w.counts(12) {
            let rec = weil_from_counts(&counts).unwrap();
            assert!(rec.candidates.contains(&w));
        }
    }
}

#[test]
fn hilbert_counts_integrality_parity() {
    // integer category counts with A_2n = A_n (mod 2) give integer
    // Hilbert-square counts
    use nck3_core::category::hilbert_square_counts;
    use nck3_core::counts::NcK3Counts;
    use num_bigint::BigInt;
    let mut rng = SplitMix(0x77);
    for _ in 0..50 {
        let mut a = NcK3Counts::new(2);
        let a1 = rng.below(200) as i64 - 60;
        let parity = rng.below(2) as i64;
        let a2 = 2 * (rng.below(300) as i64 - 100) + (a1.rem_euclid(2)) + 2 * parity;
        // force matching parity
        let a2 = if (a2 - a1) % 2 == 0 { a2 } else { a2 + 1 };
        a.counts.insert(1, BigInt::from(a1));
        a.counts.insert(2, BigInt::from(a2));
        let h = hilbert_square_counts(&a, 1).unwrap();
        assert!(
            h[&1].denom() == &BigInt::from(1),
            "A_1 = {a1}, A_2 = {a2} gave {}",
            h[&1]
        );
    }
}

#[test]
fn negcount_cubic_is_smooth_at_small_extensions() {
    // the negative-count fixture is a smooth cubic; the heuristic scan
    // finds nothing over F_2 and F_4
    let form = parse_cubic(
        "p=2
1 2 1 0 0 0 0
1 2 0 0 0 0 1
1 1 1 0 0 0 1
1 1 0 1 0 1 0
1 1 0 0 2 0 0
1 1 0 0 0 2 0
1 1 0 0 0 0 2
1 0 3 0 0 0 0
1 0 2 0 0 1 0
1 0 2 0 0 0 1
1 0 1 1 1 0 0
1 0 1 0 0 2 0
1 0 0 3 0 0 0
1 0 0 1 0 0 2
1 0 0 0 2 1 0
1 0 0 0 1 0 2
1 0 0 0 0 0 3
",
    )
    .unwrap();
    assert_eq!(singular_scan(&form, 2).unwrap(), Vec::new());
}

#[test]
fn parsers_never_panic_on_garbage() {
    // quick robustness sweep over adversarial fragments
    let samples = [
        "",
        "p=",
        "p=0",
        "p=x",
        "1",
        "1 2 3",
        "1 1 1 1 1 1 1 1",
        "q=2;",
        "q=; 1",
        "q=2 1,2",
        "q=2; ",
        "q=2; 1,,2",
        "q=2; 1/0,1",
        "-,3 0 0 0 0 0",
        "99999999999999999999999999999999999999999 3 0 0 0 0 0",
        "1 255 0 0 0 0 0",
        "# only\n\n#comments",
        "p=2\np=3\n1 3 0 0 0 0 0",
    ];
    for s in samples {
        let _ = parse_cubic(s);
        let _ = nck3_core::weil::parse_weil_line(s, false);
        let _ = nck3_core::weil::parse_weil_line(s, true);
        let _ = RatPoly::parse(s);
        let _ = nck3_core::rational::parse_rat(s);
    }
}

#[test]
fn cyclotomic_product_of_divisors() {
    // prod_{d | n} C_d = 1 - T^n in the inverse-root normalization
    for n in [12u64, 15, 22] {
        let mut prod = RatPoly::one();
        for d in 1..=n {
            if n % d == 0 {
                prod = &prod * &cyclotomic(d);
            }
        }
        let mut expect = vec![rat_int(1)];
        expect.resize(n as usize, rat_int(0));
        expect.push(rat_int(-1));
        assert_eq!(prod, RatPoly::from_coeffs(expect));
    }
}
