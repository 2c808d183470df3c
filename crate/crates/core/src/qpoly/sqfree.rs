use super::QPoly;

/// Yun's algorithm. Parts are monic, returned in increasing multiplicity;
/// the leading coefficient of the input is not included.
pub fn yun(f: &QPoly) -> Vec<(QPoly, u32)> {
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let df = f.derivative();
    let a = f.gcd(&df);
    let mut b = f.exact_div(&a).expect("gcd divides").monic();
    let c = df.exact_div(&a).expect("gcd divides").scale(&f.lc().recip());
    let mut d = &c - &b.derivative();
    let mut i = 1u32;
    while b.deg() > 0 {
        let ai = b.gcd(&d);
        b = b.exact_div(&ai).expect("gcd divides");
        let ci = d.exact_div(&ai).expect("gcd divides");
        d = &ci - &b.derivative();
        if ai.deg() > 0 {
            out.push((ai, i));
        }
        i += 1;
    }
    out
}
