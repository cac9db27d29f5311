use jones_rational::census::{classify_pair, SearchBudget};
use jones_rational::*;

fn main() {
    let t0 = std::time::Instant::now();
    let a = schubert_canonical(49, 22).unwrap();
    let b = schubert_canonical(49, 36).unwrap();
    let res = classify_pair(&a, &b, &SearchBudget::default());
    println!("49 pair: {:?} ({:.1?})", res.kind, t0.elapsed());
    if let Some(w) = &res.witness {
        println!("  witness: {w}");
        let (sa, sb) = w.generate().unwrap();
        println!("  gen: ({sa}) ({sb}) -> {} {}", eval_cf(&sa), eval_cf(&sb));
    }

    // the paper's pivot-pair instance evaluates to determinant 4147
    let t0 = std::time::Instant::now();
    let a = schubert_canonical(4147, 746).unwrap();
    let b = schubert_canonical(4147, 775).unwrap();
    let budget = SearchBudget { k_max: 1, ..SearchBudget::default() };
    let res = classify_pair(&a, &b, &budget);
    println!("4147 pair (k<=1): {:?} ({:.1?})", res.kind, t0.elapsed());
    if let Some(w) = &res.witness {
        println!("  witness: {w}");
    }

    // the real det-377 starred pair
    let t0 = std::time::Instant::now();
    let a = schubert_canonical(377, 70).unwrap();
    let b = schubert_canonical(377, 278).unwrap();
    println!("377 jones equal: {}", jones_knot(377, 70).unwrap() == jones_knot(377, 278).unwrap());
    let res = classify_pair(&a, &b, &budget);
    println!("377 pair (k<=1): {:?} ({:.1?})", res.kind, t0.elapsed());
    if let Some(w) = &res.witness {
        println!("  witness: {w}");
        let (sa, sb) = w.generate().unwrap();
        println!("  gen: ({sa}) ({sb}) -> {} {}", eval_cf(&sa), eval_cf(&sb));
    }
}
