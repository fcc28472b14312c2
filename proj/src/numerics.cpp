#include "cmtrace/numerics.hpp"

#include <Eigen/SVD>

#include <stdexcept>

namespace cmtrace {

namespace {

Matrix word_matrix(const std::string& letters, const Matrix& X,
                   const Matrix& Y) {
  Matrix m = Matrix::Identity(X.rows(), X.cols());
  for (char c : letters) m = m * (c == 'X' ? X : Y);
  return m;
}

Complex trace_of_word(const TraceWord& w, const MatrixPair& p) {
  return word_matrix(w.letters(), p.X, p.Y).trace();
}

}  // namespace

double rank_one_residual(const MatrixPair& p) {
  Matrix A = p.X * p.Y - p.Y * p.X + Matrix::Identity(p.n, p.n);
  Eigen::JacobiSVD<Matrix> svd(A);
  const auto& s = svd.singularValues();
  if (p.n < 2) return 0.0;
  return s(1) / s(0);
}

MatrixPair wilson_point(const std::vector<Complex>& alphas,
                        const std::vector<Complex>& betas,
                        double separation_floor, double cert_tol) {
  const int n = static_cast<int>(alphas.size());
  if (betas.size() != alphas.size())
    throw std::invalid_argument("wilson_point: alpha/beta size mismatch");
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k)
      if (std::abs(alphas[j] - alphas[k]) < separation_floor)
        throw std::invalid_argument(
            "wilson_point: eigenvalue collision below separation floor");
  MatrixPair p;
  p.n = n;
  p.X = Matrix::Zero(n, n);
  p.Y = Matrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    p.X(j, j) = alphas[j];
    p.Y(j, j) = betas[j];
    for (int k = 0; k < n; ++k)
      if (k != j) p.Y(j, k) = 1.0 / (alphas[j] - alphas[k]);
  }
  p.certified_rank_one = rank_one_residual(p) < cert_tol;
  return p;
}

MatrixPair random_wilson_point(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  auto draw_disc = [&](double radius) {
    for (;;) {
      Complex z(unit(rng), unit(rng));
      if (std::abs(z) <= 1.0) return radius * z;
    }
  };
  for (;;) {
    std::vector<Complex> alphas, betas;
    for (int i = 0; i < n; ++i) alphas.push_back(draw_disc(3.0));
    for (int i = 0; i < n; ++i) betas.push_back(draw_disc(3.0));
    bool separated = true;
    for (int j = 0; j < n && separated; ++j)
      for (int k = j + 1; k < n; ++k)
        if (std::abs(alphas[j] - alphas[k]) < 0.5) {
          separated = false;
          break;
        }
    if (!separated) continue;
    return wilson_point(alphas, betas);
  }
}

MatrixPair random_dense_pair(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  MatrixPair p;
  p.n = n;
  p.X = Matrix::Zero(n, n);
  p.Y = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      p.X(i, j) = Complex(unit(rng), unit(rng));
      p.Y(i, j) = Complex(unit(rng), unit(rng));
    }
  return p;
}

TangentPair random_tangent(int n, std::mt19937_64& rng) {
  MatrixPair p = random_dense_pair(n, rng);
  return TangentPair{p.X, p.Y};
}

Complex evaluate(const TracePolynomial& f, const MatrixPair& p) {
  Complex acc = 0.0;
  const Complex nn(static_cast<double>(p.n), 0.0);
  for (const auto& [prod, coeff] : f.terms()) {
    Complex term = coeff.eval(nn);
    for (const auto& w : prod.factors()) term *= trace_of_word(w, p);
    acc += term;
  }
  return acc;
}

TangentPair gradient(const TracePolynomial& f, const MatrixPair& p) {
  const int n = p.n;
  TangentPair g{Matrix::Zero(n, n), Matrix::Zero(n, n)};
  const Complex nn(static_cast<double>(n), 0.0);
  for (const auto& [prod, coeff] : f.terms()) {
    const auto& fs = prod.factors();
    std::vector<Complex> traces(fs.size());
    for (size_t i = 0; i < fs.size(); ++i) traces[i] = trace_of_word(fs[i], p);
    const Complex c = coeff.eval(nn);
    for (size_t i = 0; i < fs.size(); ++i) {
      Complex rest = c;
      for (size_t j = 0; j < fs.size(); ++j)
        if (j != i) rest *= traces[j];
      // d tr(W)/dX_{jk} = (product of remaining letters read cyclically
      // after the occurrence)_{kj}.
      const std::string& s = fs[i].letters();
      for (size_t pos = 0; pos < s.size(); ++pos) {
        Matrix r = word_matrix(s.substr(pos + 1) + s.substr(0, pos), p.X, p.Y);
        if (s[pos] == 'X')
          g.U += rest * r.transpose();
        else
          g.V += rest * r.transpose();
      }
    }
  }
  return g;
}

TangentPair hamiltonian_field(const TracePolynomial& h, const MatrixPair& p) {
  TangentPair g = gradient(h, p);
  // U_{kj} = dH/dY_{jk}, V_{kj} = -dH/dX_{jk}.
  return TangentPair{g.V.transpose(), Matrix(-g.U.transpose())};
}

Complex numeric_bracket(const TracePolynomial& f, const TracePolynomial& h,
                        const MatrixPair& p) {
  TangentPair gf = gradient(f, p);
  TangentPair gh = gradient(h, p);
  return (gf.U * gh.V).trace() - (gf.V * gh.U).trace();
}

MatrixPair apply_flow(const FlowSpec& s, const MatrixPair& p) {
  MatrixPair q = p;
  q.certified_rank_one = false;
  auto power = [&](const Matrix& m, int k) {
    Matrix r = Matrix::Identity(p.n, p.n);
    for (int i = 0; i < k; ++i) r = r * m;
    return r;
  };
  switch (s.kind) {
    case FlowSpec::Kind::y_shift_xk:
      q.Y = p.Y + s.t * power(p.X, s.k);
      break;
    case FlowSpec::Kind::x_shift_yk:
      q.X = p.X + s.t * power(p.Y, s.k);
      break;
    case FlowSpec::Kind::scale:
      q.X = std::exp(s.t) * p.X;
      q.Y = std::exp(-s.t) * p.Y;
      break;
    case FlowSpec::Kind::y_shift_trx_id:
      q.Y = p.Y + s.t * p.X.trace() * Matrix::Identity(p.n, p.n);
      break;
    case FlowSpec::Kind::x_shift_id:
      q.X = p.X + s.t * Matrix::Identity(p.n, p.n);
      break;
  }
  return q;
}

Complex symplectic_pairing(const TangentPair& u, const TangentPair& v) {
  // omega(u, v) = sum_jk U_u[jk] V_v[kj] - U_v[jk] V_u[kj].
  return (u.U * v.V).trace() - (v.U * u.V).trace();
}

double symplectic_check(const FlowSpec& s, const MatrixPair& p,
                        const TangentPair& u, const TangentPair& v,
                        double fd_step) {
  const double scale =
      fd_step * (1.0 + std::max(p.X.norm(), p.Y.norm()));
  auto push = [&](const TangentPair& w) {
    MatrixPair plus = p, minus = p;
    plus.X += scale * w.U;
    plus.Y += scale * w.V;
    minus.X -= scale * w.U;
    minus.Y -= scale * w.V;
    MatrixPair fp = apply_flow(s, plus), fm = apply_flow(s, minus);
    return TangentPair{(fp.X - fm.X) / (2.0 * scale),
                       (fp.Y - fm.Y) / (2.0 * scale)};
  };
  Complex before = symplectic_pairing(u, v);
  Complex after = symplectic_pairing(push(u), push(v));
  return std::abs(after - before);
}

std::string flow_kind_name(FlowSpec::Kind k) {
  switch (k) {
    case FlowSpec::Kind::y_shift_xk: return "y_shift_xk";
    case FlowSpec::Kind::x_shift_yk: return "x_shift_yk";
    case FlowSpec::Kind::scale: return "scale";
    case FlowSpec::Kind::y_shift_trx_id: return "y_shift_trx_id";
    case FlowSpec::Kind::x_shift_id: return "x_shift_id";
  }
  return "?";
}

}  // namespace cmtrace
