#pragma once

#include <Eigen/Dense>

#include <complex>
#include <random>
#include <string>
#include <vector>

#include "cmtrace/trace_poly.hpp"

namespace cmtrace {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// A concrete point (X, Y) of complex n x n matrices.
struct MatrixPair {
  int n = 0;
  Matrix X, Y;
  bool certified_rank_one = false;
};

/// Variations (dX, dY) at a point.
struct TangentPair {
  Matrix U, V;
};

/// The complete flows used throughout: shifts along powers, the scaling
/// flow, and the two extra generators (X, Y + t tr(X) id), (X + t id, Y).
struct FlowSpec {
  enum class Kind { y_shift_xk, x_shift_yk, scale, y_shift_trx_id, x_shift_id };
  Kind kind = Kind::y_shift_xk;
  int k = 0;  // power for the shift kinds
  Complex t = 0.0;
};

/// sigma_2 / sigma_1 of [X,Y] + id; the rank-one certificate residual.
double rank_one_residual(const MatrixPair& p);

/// Wilson coordinates: X = diag(alpha), Y = diag(beta) with off-diagonal
/// entries 1/(alpha_j - alpha_k). Throws std::invalid_argument when two
/// alphas are closer than the separation floor.
MatrixPair wilson_point(const std::vector<Complex>& alphas,
                        const std::vector<Complex>& betas,
                        double separation_floor = 0.5, double cert_tol = 1e-10);

/// Random certified point: alphas rejected below pairwise separation 0.5,
/// both coordinate vectors drawn from the disc of radius 3.
MatrixPair random_wilson_point(int n, std::mt19937_64& rng);

/// Random dense (not rank-one) matrices, entries in the unit box.
MatrixPair random_dense_pair(int n, std::mt19937_64& rng);
TangentPair random_tangent(int n, std::mt19937_64& rng);

Complex evaluate(const TracePolynomial& f, const MatrixPair& p);

/// Closed-form matrix derivatives: U_{jk} = dF/dX_{jk}, V_{jk} = dF/dY_{jk}.
TangentPair gradient(const TracePolynomial& f, const MatrixPair& p);

/// Hamiltonian field of H for omega = tr(dX ^ dY):
/// U_{kj} = dH/dY_{jk}, V_{kj} = -dH/dX_{jk}.
TangentPair hamiltonian_field(const TracePolynomial& h, const MatrixPair& p);

/// {F, H}(p) = sum_jk dF/dX_{jk} dH/dY_{kj} - dF/dY_{jk} dH/dX_{kj}.
Complex numeric_bracket(const TracePolynomial& f, const TracePolynomial& h,
                        const MatrixPair& p);

MatrixPair apply_flow(const FlowSpec& s, const MatrixPair& p);

/// omega(u, v) = tr(U_u V_v) - tr(U_v V_u) at a point.
Complex symplectic_pairing(const TangentPair& u, const TangentPair& v);

/// Pushes u, v through the flow differential (central finite differences)
/// and returns |omega(u', v') - omega(u, v)|.
double symplectic_check(const FlowSpec& s, const MatrixPair& p,
                        const TangentPair& u, const TangentPair& v,
                        double fd_step = 1e-6);

std::string flow_kind_name(FlowSpec::Kind k);

}  // namespace cmtrace
