use serde_json::{json, Value};
use ulbordism::algebra::{is_canonical_triple, GroupShape};
use ulbordism::InvariantTuple;

/// Entries read off the coordinates rather than stored: `d(j, i)` for
/// `i < j`, and every non-canonical `t(i, j, k)` with `i != j != k`.
pub struct Derived {
    pub d: Vec<((usize, usize), u8)>,
    pub t: Vec<((usize, usize, usize), u8)>,
}

pub fn derived(a: &InvariantTuple) -> Derived {
    let n = a.n();
    let mut d = Vec::new();
    let mut t = Vec::new();
    for i in 1..=n {
        for j in 1..i {
            d.push(((i, j), a.derived_d(i, j).expect("distinct labels").value()));
        }
    }
    for i in 1..=n {
        for j in (1..=n).filter(|&j| j != i) {
            for k in (1..=n).filter(|&k| k != j) {
                if !is_canonical_triple(i, j, k) {
                    t.push(((i, j, k), a.derived_t(i, j, k).expect("valid triple").value()));
                }
            }
        }
    }
    Derived { d, t }
}

pub fn invariants_human(source: &str, kind: &str, a: &InvariantTuple) -> String {
    let mut out = format!("{source} ({kind}, n={})\n", a.n());
    let e: Vec<String> = a.e_values().iter().enumerate().map(|(i, v)| format!("e{}={v}", i + 1)).collect();
    out.push_str(&format!("  euler    {}\n", e.join(" ")));
    let d: Vec<String> = a.d_entries().map(|((i, j), v)| format!("d({i},{j})={v}")).collect();
    if !d.is_empty() {
        out.push_str(&format!("  double   {}\n", d.join(" ")));
    }
    let t: Vec<String> = a.t_entries().map(|((i, j, k), v)| format!("t({i},{j},{k})={v}")).collect();
    if !t.is_empty() {
        out.push_str(&format!("  triple   {}\n", t.join(" ")));
    }
    let dv = derived(a);
    if !dv.d.is_empty() || !dv.t.is_empty() {
        out.push_str("  derived\n");
        for chunk in dv.d.chunks(8) {
            let row: Vec<String> = chunk.iter().map(|((i, j), v)| format!("d({i},{j})={v}")).collect();
            out.push_str(&format!("    {}\n", row.join(" ")));
        }
        for chunk in dv.t.chunks(8) {
            let row: Vec<String> = chunk.iter().map(|((i, j, k), v)| format!("t({i},{j},{k})={v}")).collect();
            out.push_str(&format!("    {}\n", row.join(" ")));
        }
    }
    out
}

pub fn invariants_json(source: &str, kind: &str, a: &InvariantTuple) -> Value {
    let dv = derived(a);
    json!({
        "input": source,
        "kind": kind,
        "invariants": a,
        "derived": {
            "d": dv.d.iter().map(|((i, j), v)| json!([i, j, v])).collect::<Vec<_>>(),
            "t": dv.t.iter().map(|((i, j, k), v)| json!([i, j, k, v])).collect::<Vec<_>>(),
        },
    })
}

pub fn group_human(g: &GroupShape) -> String {
    format!("n = {}\nunoriented: {g}\noriented:   {}\n", g.n, g.oriented_string())
}

pub fn group_json(g: &GroupShape) -> Value {
    let (z2, z) = g.oriented();
    json!({
        "n": g.n,
        "unoriented": { "text": g.to_string(), "z": g.free_rank, "z4": g.z4_count, "z2": g.z2_count },
        "oriented": { "text": g.oriented_string(), "z2": z2, "z": z },
    })
}
