//! Fixtures shared by the benchmarks in `benches/`.

use ptho_core::{build_hamiltonian, validate, FrequencyChoice, FrequencyMode, OperatorMatrix};

/// Triangular ω₁ Hamiltonian of the λ=2, β=7 table column.
pub fn triangular_hamiltonian(n_basis: usize) -> OperatorMatrix {
    let p = validate(2.0, 7.0, 1.0).expect("valid parameters");
    let w = FrequencyChoice::select(&p, FrequencyMode::Omega1, None).expect("beta > 1");
    build_hamiltonian(&p, &w, n_basis).expect("valid basis")
}

/// Full (non-triangular) Hamiltonian at λ=1, β=3, ω=2.
pub fn custom_hamiltonian(n_basis: usize) -> OperatorMatrix {
    let p = validate(1.0, 3.0, 1.0).expect("valid parameters");
    let w = FrequencyChoice::custom(2.0).expect("omega > 0");
    build_hamiltonian(&p, &w, n_basis).expect("valid basis")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_have_requested_size() {
        assert_eq!(triangular_hamiltonian(12).dim(), 12);
        assert!(custom_hamiltonian(12).max_abs_strict_upper() > 0.0);
    }
}
