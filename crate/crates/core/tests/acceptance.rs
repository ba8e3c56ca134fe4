//! Acceptance harness: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::collections::VecDeque;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use ncpfiber_core::fiber::fp_boundary;
use ncpfiber_core::{lcc, monodromy, morse};
use ncpfiber_core::{
    FpCell, FpComplex, FqComplex, HomologyGroup, InitializedChain, NcpLattice, ReflectionGroup, XpWindow,
};

type Check = Result<(), String>;
type Criterion = (u32, &'static str, u64, fn() -> Check);

fn fp(spec: &str) -> FpComplex {
    let g = Arc::new(ReflectionGroup::new(spec.parse().unwrap()).unwrap());
    FpComplex::build(Arc::new(NcpLattice::canonical(g).unwrap())).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn dihedral(range: std::ops::RangeInclusive<usize>) -> impl Iterator<Item = String> {
    range.map(|m| format!("I2_{m}"))
}

fn c1_dihedral_fp() -> Check {
    for t in [3usize, 4, 5, 6, 10] {
        let start = Instant::now();
        let f = fp(&format!("I2_{t}"));
        ensure(f.complex().counts() == vec![2, t], || format!("I2_{t}: counts {:?}", f.complex().counts()))?;
        let h = f.complex().homology().map_err(|e| e.to_string())?;
        ensure(h == vec![HomologyGroup::free(1), HomologyGroup::free(t - 1)], || format!("I2_{t}: {h:?}"))?;
        ensure(start.elapsed() < Duration::from_secs(1), || format!("I2_{t} took {:?}", start.elapsed()))?;
    }
    Ok(())
}

fn c2_dihedral_fq() -> Check {
    for t in [3usize, 4, 5, 6, 10] {
        let f = fp(&format!("I2_{t}"));
        let q = FqComplex::build(&f).map_err(|e| e.to_string())?;
        let c = q.complex();
        ensure(c.counts() == vec![2 * t, t * t], || format!("I2_{t}: counts {:?}", c.counts()))?;
        let mut adj = vec![Vec::new(); 2 * t];
        for e in 0..c.count(1) {
            let ends: Vec<usize> = c.faces(1, e).iter().map(|&(v, _)| v).collect();
            adj[ends[0]].push(ends[1]);
            adj[ends[1]].push(ends[0]);
        }
        ensure(adj.iter().all(|a| a.len() == t), || format!("I2_{t}: degree is not {t}"))?;
        let mut colour = vec![None; 2 * t];
        colour[0] = Some(false);
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            let side = colour[v].unwrap();
            for &u in &adj[v] {
                match colour[u] {
                    None => {
                        colour[u] = Some(!side);
                        queue.push_back(u);
                    }
                    Some(s) if s == side => return Err(format!("I2_{t}: not bipartite")),
                    _ => {}
                }
            }
        }
        ensure(colour.iter().all(Option::is_some), || format!("I2_{t}: not connected"))?;
        let h = c.homology().map_err(|e| e.to_string())?;
        let expected = vec![HomologyGroup::free(1), HomologyGroup::free((t - 1) * (t - 1))];
        ensure(h == expected, || format!("I2_{t}: {h:?}"))?;
    }
    Ok(())
}

fn c3_a3_census() -> Check {
    let f = fp("A3");
    let l = f.lattice();
    ensure(l.len() == 14, || format!("lattice size {}", l.len()))?;
    ensure(l.maximal_chains().len() == 16, || format!("{} maximal chains", l.maximal_chains().len()))?;
    ensure(f.complex().counts() == vec![3, 18, 16], || format!("counts {:?}", f.complex().counts()))?;
    ensure(f.complex().euler_characteristic() == 1, || "χ ≠ 1".into())?;
    let mut seen = 0;
    for cell in f.cells(2) {
        let &[r, alpha] = cell.chain.nodes() else { return Err("2-cell chain length".into()) };
        if cell.height != 0 {
            continue;
        }
        seen += 1;
        let q = l.quotient(r, alpha).ok_or("r ≰ α")?;
        let expected = vec![
            (FpCell::new(1, InitializedChain::from_nodes(vec![q])), 1),
            (FpCell::new(0, InitializedChain::from_nodes(vec![alpha])), -1),
            (FpCell::new(0, InitializedChain::from_nodes(vec![r])), 1),
        ];
        let faces = fp_boundary(l, cell).map_err(|e| e.to_string())?;
        ensure(faces == expected, || format!("{}: {faces:?}", cell.describe(l)))?;
    }
    ensure(seen == 16, || format!("{seen} cells of the form (0, r < α)"))
}

fn window_groups() -> Vec<String> {
    ["A3".to_string(), "B3".to_string()].into_iter().chain(dihedral(3..=8)).collect()
}

fn tall_window(spec: &str) -> XpWindow {
    let f = fp(spec);
    let n = f.lattice().rank() as i64;
    XpWindow::build(f.lattice_arc(), -(n + 1), 2 * n).unwrap()
}

fn c4_incidence() -> Check {
    for spec in window_groups() {
        let r = morse::verify_incidence(&tall_window(&spec)).map_err(|e| e.to_string())?;
        ensure(r.holds && r.checked > 0, || format!("{spec}: {:?}", r.counterexamples))?;
    }
    Ok(())
}

fn c5_morse() -> Check {
    for spec in window_groups() {
        let r = morse::verify_matching(&tall_window(&spec)).map_err(|e| e.to_string())?;
        ensure(r.is_involution && r.is_acyclic && r.critical_equals_fp, || format!("{spec}: {r:?}"))?;
    }
    Ok(())
}

fn lcc_groups() -> Vec<String> {
    ["A2", "A3", "A4", "B2", "B3", "D4"].into_iter().map(String::from).chain(dihedral(3..=10)).collect()
}

fn c6_shellability() -> Check {
    for spec in lcc_groups() {
        let f = fp(&spec);
        for p in 1..f.lattice().rank() {
            let t = lcc::truncated_reduced_homology(f.lattice(), p).map_err(|e| e.to_string())?;
            ensure(t.is_concentrated(), || format!("{spec}, p = {p}: {:?}", t.reduced))?;
        }
    }
    Ok(())
}

fn c7_oracle() -> Check {
    for spec in lcc_groups() {
        let f = fp(&spec);
        let ours = lcc::build_lattice_chain_complex(f.lattice()).and_then(|c| c.homology());
        let direct = f.complex().homology();
        let (ours, direct) = (ours.map_err(|e| e.to_string())?, direct.map_err(|e| e.to_string())?);
        ensure(ours == direct, || format!("{spec}: {ours:?} vs {direct:?}"))?;
    }
    Ok(())
}

fn c8_cone() -> Check {
    for spec in lcc_groups() {
        let f = fp(&spec);
        for p in 0..f.lattice().rank() {
            let c = lcc::mapping_cone_check(&f, p).map_err(|e| e.to_string())?;
            ensure(c.ok(), || format!("{spec}, p = {p}: {c:?}"))?;
        }
    }
    Ok(())
}

fn c9_monodromy() -> Check {
    let groups: Vec<String> =
        dihedral(3..=8).chain(["A2", "A3", "B2", "B3"].into_iter().map(String::from)).collect();
    for spec in &groups {
        let f = fp(spec);
        let cap = monodromy::default_cap(f.lattice());
        let r = monodromy::fp_report(&f, cap).map_err(|e| e.to_string())?;
        ensure(r.ok(), || format!("{spec} fp: {r:?}"))?;
        let q = FqComplex::build(&f).map_err(|e| e.to_string())?;
        q.verify_simplicial().map_err(|e| format!("{spec}: {e}"))?;
        let r = monodromy::fq_report(&f, &q, cap).map_err(|e| e.to_string())?;
        ensure(r.ok() && r.intertwines == Some(true), || format!("{spec} fq: {:?}", r.intertwines))?;
        let bounded = |d: &monodromy::DegreeAction| d.order.is_some_and(|o| o <= cap);
        ensure(r.degrees.iter().all(bounded), || format!("{spec} fq: order above {cap}"))?;
        if spec.starts_with("I2") {
            let l = f.lattice();
            for m in 0..2 {
                let v = FpCell::vertex(m);
                let (once, _) = monodromy::monodromy_fp_cell(l, &v).map_err(|e| e.to_string())?;
                let (twice, _) = monodromy::monodromy_fp_cell(l, &once).map_err(|e| e.to_string())?;
                ensure(twice == v, || format!("{spec}: vertex {m} is not fixed by the square"))?;
            }
        }
    }
    Ok(())
}

fn c10_cross_family() -> Check {
    for (a, b) in [("B2", "I2_4"), ("A2", "I2_3")] {
        let (fa, fb) = (fp(a), fp(b));
        let phi = fa.lattice().isomorphism_to(fb.lattice()).ok_or(format!("{a} ≇ {b} as lattices"))?;
        ensure(fa.isomorphic_via(&fb, &phi), || format!("{a} and {b}: cells do not correspond"))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, "dihedral F̂_P: 2 vertices, t edges, H = (Z, Z^{t-1})", 5, c1_dihedral_fp),
        (2, "dihedral F̂_Q: K_{t,t}, H_1 = Z^{(t-1)^2}", 5, c2_dihedral_fq),
        (3, "A3 census and 2-cell boundaries", 1, c3_a3_census),
        (4, "two cofaces ending in γ on tall windows", 10, c4_incidence),
        (5, "Morse matching: involution, acyclic, critical = F̂_P", 30, c5_morse),
        (6, "truncated lattices have concentrated free homology", 120, c6_shellability),
        (7, "lattice chain complex homology equals F̂_P homology", 120, c7_oracle),
        (8, "filtration quotients are cones on truncated lattices", 120, c8_cone),
        (9, "monodromy maps, intertwining, finite unimodular actions", 30, c9_monodromy),
        (10, "B2 ≅ I2_4 and A2 ≅ I2_3 cell for cell", 5, c10_cross_family),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for (id, name, bound, check) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|p| Err(p.downcast_ref::<String>().cloned().unwrap_or_else(|| "panic".into())));
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            ensure(elapsed <= Duration::from_secs(bound), || format!("exceeded {bound} s"))
        });
        match outcome {
            Ok(()) => println!("PASS {id:>2} {name} ({:.2} s, bound {bound} s)", elapsed.as_secs_f64()),
            Err(msg) => {
                failures += 1;
                println!("FAIL {id:>2} {name} ({:.2} s, bound {bound} s): {msg}", elapsed.as_secs_f64());
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}
