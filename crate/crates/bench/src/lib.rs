//! Fixtures shared by the benchmarks.

use std::sync::Arc;

use ncpfiber_core::{FpComplex, NcpLattice, ReflectionGroup};

pub fn group(spec: &str) -> Arc<ReflectionGroup> {
    Arc::new(ReflectionGroup::new(spec.parse().expect("group spec")).expect("supported group"))
}

pub fn lattice(spec: &str) -> Arc<NcpLattice> {
    Arc::new(NcpLattice::canonical(group(spec)).expect("canonical lattice"))
}

pub fn fp(spec: &str) -> FpComplex {
    FpComplex::build(lattice(spec)).expect("F̂_P builds")
}
