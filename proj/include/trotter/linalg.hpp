#pragma once

#include "trotter/gridpath.hpp"
#include "trotter/planners.hpp"

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

#include <array>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace trotter::linalg {

using Matrix = Eigen::MatrixXcd;

struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Declarative description of the term Hamiltonians: a named Pauli model
/// ("tfi2", "tfi-lz3") or explicit Hermitian matrices, plus integer weights.
struct HamiltonianSpec {
  std::string model;             // named model, or empty when explicit
  std::vector<Matrix> matrices;  // explicit terms (ignored for named models)
  std::vector<std::int64_t> weights;

  static HamiltonianSpec named(const std::string& model, std::vector<std::int64_t> weights);
  static HamiltonianSpec explicit_terms(std::vector<Matrix> matrices,
                                        std::vector<std::int64_t> weights);
};

constexpr double kHermiticityTol = 1e-12;
constexpr double kUnitarityTol = 1e-10;

// Pauli matrices.
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
Matrix kron(const Matrix& a, const Matrix& b);

/// Term matrices for a spec. Named models:
///   tfi2    -> H1 = (sz1 + sz2)/2, H2 = sx1 sx2            (two qubits)
///   tfi-lz3 -> H1 = sz1 sz2, H2 = (sz1+sz2)/2, H3 = (sx1+sx2)/2
/// Explicit matrices are validated for Hermiticity and equal dimension.
std::vector<Matrix> build_model(const HamiltonianSpec& spec);

/// GUE-style draw: independent standard complex Gaussian entries,
/// symmetrized as (M + M^dag)/2. Deterministic per seed.
Matrix random_hermitian(int dim, std::uint64_t seed);

/// Derives an independent per-sample seed; parallel draws are reproducible
/// regardless of scheduling.
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index);

/// exp(-i s H) by Hermitian eigendecomposition.
Matrix expm_hermitian_generator(const Matrix& H, double s);

Matrix commutator(const Matrix& A, const Matrix& B);

/// ([A,B], [A,[A,B]], [B,[A,B]])
std::array<Matrix, 3> nested_commutators(const Matrix& A, const Matrix& B);

/// exp(-i t sum_k w_k H_k), the ideal target.
Matrix exact_unitary(const std::vector<Matrix>& hams, const std::vector<std::int64_t>& weights,
                     double t);

/// Product of step exponentials exp(-i H_k t / n), one factor per grid step,
/// multiplied in step order (first step = leftmost factor).
Matrix path_to_unitary(const gridpath::LatticePath& path, const std::vector<Matrix>& hams,
                       double t, std::int64_t n);

/// Product of entry exponentials exp(-i H_k w_k coeff t), in entry order.
Matrix sequence_to_unitary(const planners::GateSequence& seq, const std::vector<Matrix>& hams,
                           double t);

/// max-entry norm of U^dag U - I.
double unitarity_residual(const Matrix& U);

/// Principal matrix logarithm of a unitary, via Schur decomposition.
Matrix unitary_log(const Matrix& U);

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

}  // namespace trotter::linalg
