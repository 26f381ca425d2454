#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "mugen/error.hpp"

namespace mugen::xmetrics {

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// Similarity scale is min(e^tau, scale_cap).
template <class Scalar = double>
struct MetricConfig {
  Scalar tau = Scalar(0);
  Scalar scale_cap = Scalar(100);

  Scalar scale() const { return std::min(std::exp(tau), scale_cap); }

  // tau is the exponent itself.
  static MetricConfig from_tau(Scalar tau, Scalar cap = Scalar(100)) { return {tau, cap}; }
  // A softmax temperature T, so the scale is 1/T.
  static MetricConfig from_temperature(Scalar temperature, Scalar cap = Scalar(100)) {
    if (!(temperature > Scalar(0))) throw Error(ErrorCode::InvalidConfig, "temperature must be positive");
    return {-std::log(temperature), cap};
  }
};

namespace detail {

template <class Derived>
void check_batch(const Eigen::MatrixBase<Derived>& m, const char* name) {
  if (m.rows() < 1 || m.cols() < 1) throw Error(ErrorCode::EmptyInput, std::string(name) + " is empty");
  if (!m.allFinite()) throw Error(ErrorCode::InvalidConfig, std::string(name) + " contains NaN or Inf");
}

template <class Derived>
Matrix<typename Derived::Scalar> normalized_rows(const Eigen::MatrixBase<Derived>& m, const char* name) {
  using Scalar = typename Derived::Scalar;
  Matrix<Scalar> out = m;
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    const Scalar n = out.row(i).norm();
    if (n == Scalar(0))
      throw Error(ErrorCode::ZeroNormVector, std::string(name) + " row " + std::to_string(i) + " has zero norm");
    out.row(i) /= n;
  }
  return out;
}

template <class Derived>
typename Derived::Scalar log_sum_exp(const Eigen::MatrixBase<Derived>& v) {
  const auto peak = v.maxCoeff();
  return peak + std::log((v.array() - peak).exp().sum());
}

}  // namespace detail

// scores(i, j) = cos(P_i, Q_j) * scale.
template <class DP, class DQ>
Matrix<typename DP::Scalar> pairwise_scores(const Eigen::MatrixBase<DP>& P, const Eigen::MatrixBase<DQ>& Q,
                                            const MetricConfig<typename DP::Scalar>& cfg) {
  detail::check_batch(P, "P");
  detail::check_batch(Q, "Q");
  if (P.cols() != Q.cols())
    throw Error(ErrorCode::DimensionMismatch,
                "embedding widths differ: " + std::to_string(P.cols()) + " vs " + std::to_string(Q.cols()));
  const auto p = detail::normalized_rows(P, "P");
  const auto q = detail::normalized_rows(Q, "Q");
  return (p * q.transpose()) * cfg.scale();
}

// Symmetric cross-entropy over rows and columns of the score matrix, with
// matching pairs on the diagonal.
template <class DP, class DQ>
typename DP::Scalar contrastive_loss(const Eigen::MatrixBase<DP>& P, const Eigen::MatrixBase<DQ>& Q,
                                     const MetricConfig<typename DP::Scalar>& cfg) {
  using Scalar = typename DP::Scalar;
  if (P.rows() != Q.rows())
    throw Error(ErrorCode::DimensionMismatch,
                "batch sizes differ: " + std::to_string(P.rows()) + " vs " + std::to_string(Q.rows()));
  const Matrix<Scalar> s = pairwise_scores(P, Q, cfg);
  const Eigen::Index n = s.rows();
  Scalar total = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    total += s(i, i) - detail::log_sum_exp(s.row(i));
    total += s(i, i) - detail::log_sum_exp(s.col(i));
  }
  return -total / (Scalar(2) * Scalar(n));
}

// Rank of the true match in row i: entries scoring higher, plus ties at a
// lower column index, come first.
template <class Derived>
Eigen::Index true_match_rank(const Eigen::MatrixBase<Derived>& S, Eigen::Index i) {
  const auto truth = S(i, i);
  Eigen::Index rank = 0;
  for (Eigen::Index j = 0; j < S.cols(); ++j)
    if (S(i, j) > truth || (S(i, j) == truth && j < i)) ++rank;
  return rank;
}

template <class Derived>
std::vector<double> recall_at_k(const Eigen::MatrixBase<Derived>& S, const std::vector<int>& ks) {
  if (S.rows() != S.cols() || S.rows() < 1)
    throw Error(ErrorCode::ShapeMismatch, "recall needs a non-empty square similarity matrix");
  for (int k : ks)
    if (k < 1 || k > S.cols()) throw Error(ErrorCode::BadK, "k=" + std::to_string(k) + " outside [1, M]");
  std::vector<Eigen::Index> ranks(static_cast<std::size_t>(S.rows()));
  for (Eigen::Index i = 0; i < S.rows(); ++i) ranks[static_cast<std::size_t>(i)] = true_match_rank(S, i);
  std::vector<double> out;
  for (int k : ks) {
    const auto hits = std::count_if(ranks.begin(), ranks.end(), [k](Eigen::Index r) { return r < k; });
    out.push_back(static_cast<double>(hits) / static_cast<double>(S.rows()));
  }
  return out;
}

template <class D1, class D2>
Matrix<typename D1::Scalar> ensemble_scores(const Eigen::MatrixBase<D1>& S1, const Eigen::MatrixBase<D2>& S2) {
  if (S1.rows() != S2.rows() || S1.cols() != S2.cols())
    throw Error(ErrorCode::ShapeMismatch, "similarity matrices differ in shape");
  return S1 + S2;
}

template <class Scalar>
Scalar relative_similarity(const std::vector<Scalar>& sim_in_out, const std::vector<Scalar>& sim_in_gt) {
  if (sim_in_out.empty() || sim_in_gt.empty()) throw Error(ErrorCode::EmptyInput, "similarity lists are empty");
  if (sim_in_out.size() != sim_in_gt.size())
    throw Error(ErrorCode::DimensionMismatch, "similarity lists differ in length");
  Scalar a = 0;
  Scalar b = 0;
  for (std::size_t i = 0; i < sim_in_out.size(); ++i) {
    a += sim_in_out[i];
    b += sim_in_gt[i];
  }
  const auto n = static_cast<Scalar>(sim_in_out.size());
  if (b / n == Scalar(0)) throw Error(ErrorCode::ZeroDenominator, "mean ground-truth similarity is zero");
  return (a / n) / (b / n);
}

inline Matrix<double> parse_matrix_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        if (cell.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "bad CSV number: '" + cell + "'");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw Error(ErrorCode::ParseError, "ragged CSV matrix");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(ErrorCode::EmptyInput, "empty CSV matrix");
  Matrix<double> m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  return m;
}

inline Matrix<double> read_matrix_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_matrix_csv(ss.str());
}

template <class Derived>
std::string format_matrix_csv(const Eigen::MatrixBase<Derived>& m) {
  std::ostringstream out;
  out.precision(std::numeric_limits<double>::max_digits10);
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) out << (c ? "," : "") << static_cast<double>(m(r, c));
    out << "\n";
  }
  return out.str();
}

}  // namespace mugen::xmetrics
