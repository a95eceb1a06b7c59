use crate::error::{domain, Result};

use super::beta::ibeta;

/// CDF of Student's t distribution with `nu` degrees of freedom.
///
/// Uses `P(|T| > |t|) = I_{ν/(ν+t²)}(ν/2, 1/2)`, passing both `ν/(ν+t²)` and
/// its complement so neither is formed by subtraction.
pub fn student_t_cdf(t: f64, nu: f64) -> Result<f64> {
    if nu.is_nan() || nu <= 0.0 {
        return domain(format!("degrees of freedom must be positive, got {nu}"));
    }
    if t.is_nan() {
        return domain("t is NaN");
    }
    if t == 0.0 {
        return Ok(0.5);
    }
    if t.is_infinite() {
        return Ok(if t > 0.0 { 1.0 } else { 0.0 });
    }
    let t2 = t * t;
    let (x, y) = if t2 > nu {
        let r = nu / t2;
        (r / (1.0 + r), 1.0 / (1.0 + r))
    } else {
        (nu / (nu + t2), t2 / (nu + t2))
    };
    let tail = 0.5 * ibeta(x, y, 0.5 * nu, 0.5);
    Ok(if t > 0.0 { 1.0 - tail } else { tail })
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;
    use crate::special::normal_cdf;

    #[test]
    fn symmetry_and_centre() {
        for nu in [0.5, 1.0, 3.0, 9.0, 250.0] {
            assert_eq!(student_t_cdf(0.0, nu).unwrap(), 0.5);
            for t in [0.1, 0.7, 2.0, 15.0] {
                let s = student_t_cdf(t, nu).unwrap() + student_t_cdf(-t, nu).unwrap();
                assert!((s - 1.0).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn cauchy_closed_form() {
        assert!((student_t_cdf(1.0, 1.0).unwrap() - 0.75).abs() < 1e-15);
        for t in [-20.0, -3.0, -0.2, 0.4, 5.0] {
            let want = 0.5 + f64::atan(t) / std::f64::consts::PI;
            assert!((student_t_cdf(t, 1.0).unwrap() - want).abs() < 1e-14);
        }
    }

    #[test]
    fn quadrature_references() {
        let cases = [
            (2.0, 3.0, 0.930_337_015_720_578_412),
            (-1.5, 7.5, 0.087_240_285_293_232_117),
            (0.3, 200.0, 0.617_755_634_905_336_007),
            (10.0, 2.0, 0.995_073_771_488_337_155),
            (-3.0, 30.0, 0.002_694_982_032_825_973),
            (2.0, 1e5, 0.977_248_518_271_246_768),
            (-8.0, 4.0, 6.619_484_546_085_839e-4),
        ];
        for (t, nu, want) in cases {
            let got = student_t_cdf(t, nu).unwrap();
            assert!((got - want).abs() < 1e-12, "T({t}; {nu}) = {got}, want {want}");
        }
    }

    #[test]
    fn approaches_normal_for_large_nu() {
        for t in [-2.0, -1.0, 0.0, 1.0, 2.0] {
            let d = (student_t_cdf(t, 200.0).unwrap() - normal_cdf(t)).abs();
            assert!(d < 0.003, "t = {t}: {d}");
        }
    }

    #[test]
    fn rejects_bad_dof() {
        assert!(student_t_cdf(1.0, 0.0).is_err());
        assert!(student_t_cdf(1.0, -2.0).is_err());
        assert!(student_t_cdf(1.0, f64::NAN).is_err());
    }

    #[test]
    fn infinite_arguments() {
        assert_eq!(student_t_cdf(f64::INFINITY, 4.0).unwrap(), 1.0);
        assert_eq!(student_t_cdf(f64::NEG_INFINITY, 4.0).unwrap(), 0.0);
    }
}
