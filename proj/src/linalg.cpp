#include "trotter/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <nlohmann/json.hpp>

#include <random>

namespace trotter::linalg {

using std::complex;
namespace {
constexpr complex<double> kI{0.0, 1.0};
}

HamiltonianSpec HamiltonianSpec::named(const std::string& model,
                                       std::vector<std::int64_t> weights) {
  return HamiltonianSpec{model, {}, std::move(weights)};
}

HamiltonianSpec HamiltonianSpec::explicit_terms(std::vector<Matrix> matrices,
                                                std::vector<std::int64_t> weights) {
  return HamiltonianSpec{"", std::move(matrices), std::move(weights)};
}

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, -kI, kI, 0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

std::vector<Matrix> build_model(const HamiltonianSpec& spec) {
  std::vector<Matrix> hams;
  if (spec.model == "tfi2") {
    const Matrix id = Matrix::Identity(2, 2);
    hams = {0.5 * (kron(pauli_z(), id) + kron(id, pauli_z())), kron(pauli_x(), pauli_x())};
  } else if (spec.model == "tfi-lz3") {
    const Matrix id = Matrix::Identity(2, 2);
    hams = {kron(pauli_z(), pauli_z()),
            0.5 * (kron(pauli_z(), id) + kron(id, pauli_z())),
            0.5 * (kron(pauli_x(), id) + kron(id, pauli_x()))};
  } else if (spec.model.empty()) {
    hams = spec.matrices;
  } else {
    throw ValidationError("unknown model: " + spec.model);
  }
  if (hams.empty()) throw ValidationError("no Hamiltonian terms given");
  const Eigen::Index dim = hams.front().rows();
  for (const auto& h : hams) {
    if (h.rows() != dim || h.cols() != dim) {
      throw ValidationError("Hamiltonian terms must be square and of equal dimension");
    }
    if ((h - h.adjoint()).cwiseAbs().maxCoeff() > kHermiticityTol) {
      throw ValidationError("Hamiltonian term is not Hermitian");
    }
  }
  if (spec.weights.size() != hams.size()) {
    throw ValidationError("weight count does not match term count");
  }
  return hams;
}

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 step over (seed, index).
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Matrix random_hermitian(int dim, std::uint64_t seed) {
  if (dim < 2) throw ValidationError("random_hermitian: dim must be >= 2");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      m(i, j) = complex<double>(re, im);
    }
  }
  return 0.5 * (m + Matrix(m.adjoint()));
}

Matrix expm_hermitian_generator(const Matrix& H, double s) {
  if (!std::isfinite(s)) throw NumericalError("expm: non-finite evolution parameter");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(H);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("expm: Hermitian eigendecomposition failed");
  }
  const auto& evals = solver.eigenvalues();
  const Matrix& vecs = solver.eigenvectors();
  Eigen::VectorXcd phases(evals.size());
  for (Eigen::Index k = 0; k < evals.size(); ++k) {
    phases(k) = std::exp(-kI * (s * evals(k)));
  }
  return vecs * phases.asDiagonal() * vecs.adjoint();
}

Matrix commutator(const Matrix& A, const Matrix& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols() || A.rows() != A.cols()) {
    throw ValidationError("commutator: shape mismatch");
  }
  return A * B - B * A;
}

std::array<Matrix, 3> nested_commutators(const Matrix& A, const Matrix& B) {
  Matrix ab = commutator(A, B);
  return {ab, commutator(A, ab), commutator(B, ab)};
}

Matrix exact_unitary(const std::vector<Matrix>& hams, const std::vector<std::int64_t>& weights,
                     double t) {
  if (hams.size() != weights.size()) throw ValidationError("weight count mismatch");
  Matrix total = Matrix::Zero(hams.front().rows(), hams.front().cols());
  for (std::size_t k = 0; k < hams.size(); ++k) {
    total += static_cast<double>(weights[k]) * hams[k];
  }
  return expm_hermitian_generator(total, t);
}

Matrix path_to_unitary(const gridpath::LatticePath& path, const std::vector<Matrix>& hams,
                       double t, std::int64_t n) {
  if (path.dims() != static_cast<int>(hams.size())) {
    throw ValidationError("path axis count does not match Hamiltonian count");
  }
  // One gate per axis; grid steps repeat them.
  std::vector<Matrix> gates;
  gates.reserve(hams.size());
  for (const auto& h : hams) {
    gates.push_back(expm_hermitian_generator(h, t / static_cast<double>(n)));
  }
  Matrix u = Matrix::Identity(hams.front().rows(), hams.front().cols());
  for (int axis : path.steps) u *= gates[axis];
  return u;
}

Matrix sequence_to_unitary(const planners::GateSequence& seq, const std::vector<Matrix>& hams,
                           double t) {
  if (seq.targets.size() != hams.size()) {
    throw ValidationError("sequence term count does not match Hamiltonian count");
  }
  if (!std::isfinite(t)) throw NumericalError("sequence_to_unitary: non-finite t");
  Matrix u = Matrix::Identity(hams.front().rows(), hams.front().cols());
  for (const auto& e : seq.entries) {
    if (e.term < 0 || e.term >= static_cast<int>(hams.size())) {
      throw ValidationError("sequence entry term out of range");
    }
    const double s = static_cast<double>(seq.targets[e.term]) * to_double(e.coeff) * t;
    u *= expm_hermitian_generator(hams[e.term], s);
  }
  return u;
}

double unitarity_residual(const Matrix& U) {
  return (U.adjoint() * U - Matrix::Identity(U.rows(), U.cols())).cwiseAbs().maxCoeff();
}

Matrix unitary_log(const Matrix& U) {
  Eigen::ComplexSchur<Matrix> schur(U);
  if (schur.info() != Eigen::Success) throw NumericalError("unitary_log: Schur failed");
  // U is normal, so T is diagonal up to roundoff.
  const Matrix& Q = schur.matrixU();
  Eigen::VectorXcd logdiag(U.rows());
  for (Eigen::Index k = 0; k < U.rows(); ++k) {
    logdiag(k) = std::log(schur.matrixT()(k, k));
  }
  return Q * logdiag.asDiagonal() * Q.adjoint();
}

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back({m(i, j).real(), m(i, j).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const nlohmann::json& j) {
  const Eigen::Index rows = j.size();
  if (rows == 0) throw ValidationError("empty matrix");
  const Eigen::Index cols = j.at(0).size();
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      const auto& cell = j.at(i).at(c);
      m(i, c) = complex<double>(cell.at(0).get<double>(), cell.at(1).get<double>());
    }
  }
  return m;
}

}  // namespace trotter::linalg
