#include "espart/gram.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "espart/bounds.hpp"

namespace espart {

namespace {

std::complex<double> set_integral(const IntervalUnion& e, double nu) {
  std::complex<double> total{0.0, 0.0};
  for (const Segment& s : e.segments()) {
    total += oscillatory_integral(nu, RealInterval{s.lo, s.hi});
  }
  return total;
}

void assemble_rows(const IntervalUnion& e, std::span<const double> freqs,
                   Eigen::MatrixXcd& g, int row_begin, int row_end) {
  const int n = static_cast<int>(freqs.size());
  for (int i = row_begin; i < row_end; ++i) {
    g(i, i) = std::complex<double>(e.measure(), 0.0);
    for (int k = i + 1; k < n; ++k) {
      g(i, k) = set_integral(e, freqs[static_cast<std::size_t>(i)] -
                                    freqs[static_cast<std::size_t>(k)]);
    }
  }
}

}  // namespace

GramSection gram_matrix(const IntervalUnion& e, std::span<const double> freqs,
                        int max_size) {
  const int n = static_cast<int>(freqs.size());
  if (n == 0) throw InputError("Gram section needs at least one frequency");
  if (n > max_size) {
    std::ostringstream msg;
    msg << "Gram section of size " << n << " exceeds the cap " << max_size;
    throw InputError(msg.str());
  }
  for (int i = 1; i < n; ++i) {
    if (!(freqs[static_cast<std::size_t>(i)] > freqs[static_cast<std::size_t>(i - 1)])) {
      throw InputError("Gram frequencies must be strictly increasing");
    }
  }

  GramSection section;
  section.frequencies.assign(freqs.begin(), freqs.end());
  section.set = e;
  section.matrix = Eigen::MatrixXcd::Zero(n, n);

  const int threads = std::min(thread_cap(), n);
  if (threads > 1 && n >= 64) {
    std::vector<std::thread> pool;
    const int chunk = (n + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const int lo = t * chunk;
      const int hi = std::min(n, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back(assemble_rows, std::cref(e), freqs, std::ref(section.matrix), lo, hi);
    }
    for (auto& th : pool) th.join();
  } else {
    assemble_rows(e, freqs, section.matrix, 0, n);
  }
  for (int i = 0; i < n; ++i) {
    for (int k = i + 1; k < n; ++k) section.matrix(k, i) = std::conj(section.matrix(i, k));
  }
  return section;
}

std::pair<double, double> extremal_eigs(GramSection& g) {
  const Eigen::Index n = g.matrix.rows();
  if (n == 0 || g.matrix.cols() != n) throw InputError("Gram matrix is empty or not square");
  const double herm_defect = (g.matrix - g.matrix.adjoint()).cwiseAbs().maxCoeff();
  if (herm_defect > 1e-12) {
    std::ostringstream msg;
    msg << "matrix is not Hermitian (entrywise defect " << herm_defect << ")";
    throw InputError(msg.str());
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(g.matrix,
                                                         Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw InputError("eigensolve failed to converge");
  g.lambda_min = solver.eigenvalues().minCoeff();
  g.lambda_max = solver.eigenvalues().maxCoeff();
  return {g.lambda_min, g.lambda_max};
}

RieszMarginReport riesz_margin(bool complement_mode, const IntervalUnion& e,
                               std::span<const double> freqs, double target_lower) {
  const IntervalUnion set = complement_mode ? e.complement() : e;
  RieszMarginReport rep;
  rep.complement_mode = complement_mode;
  rep.set_measure = set.measure();
  rep.target_lower = target_lower;
  rep.degenerate = set.measure() == 0.0;
  if (rep.degenerate) {
    rep.lambda_min = 0.0;
    rep.lambda_max = 0.0;
  } else {
    GramSection g = gram_matrix(set, freqs);
    extremal_eigs(g);
    rep.lambda_min = g.lambda_min;
    rep.lambda_max = g.lambda_max;
  }
  rep.margin = rep.lambda_min - target_lower;
  rep.pass = rep.margin > 0.0;
  return rep;
}

}  // namespace espart
