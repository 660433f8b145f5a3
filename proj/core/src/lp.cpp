#include "brickseq/lp.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <utility>

namespace brickseq::lp {

int LinearProgram::add_variable(double c, double lo, double hi) {
  cost.push_back(c);
  lower.push_back(lo);
  upper.push_back(hi);
  return static_cast<int>(cost.size()) - 1;
}

int LinearProgram::add_row(std::vector<Term> terms, Sense sense, double rhs) {
  rows.push_back({std::move(terms), sense, rhs});
  return static_cast<int>(rows.size()) - 1;
}

namespace {

using Column = std::vector<std::pair<int, double>>;  // (row, value)

class Simplex {
 public:
  Simplex(const LinearProgram& program, const SimplexOptions& options)
      : opt_(options), m_(static_cast<int>(program.num_rows())), n_(static_cast<int>(program.num_variables())) {
    cols_.resize(static_cast<std::size_t>(n_));
    lo_ = program.lower;
    hi_ = program.upper;
    cost_ = program.cost;
    b_ = Eigen::VectorXd::Zero(m_);
    for (int i = 0; i < m_; ++i) {
      const Row& row = program.rows[static_cast<std::size_t>(i)];
      b_[i] = row.rhs;
      for (const Term& t : row.terms) {
        if (t.coef != 0.0) cols_[static_cast<std::size_t>(t.var)].emplace_back(i, t.coef);
      }
    }
    // Merge duplicate entries so every column has one value per row.
    for (auto& col : cols_) {
      std::sort(col.begin(), col.end());
      Column merged;
      for (const auto& e : col) {
        if (!merged.empty() && merged.back().first == e.first) {
          merged.back().second += e.second;
        } else {
          merged.push_back(e);
        }
      }
      col.swap(merged);
    }
    // Logical columns for inequality rows.
    for (int i = 0; i < m_; ++i) {
      const Sense s = program.rows[static_cast<std::size_t>(i)].sense;
      if (s == Sense::kEqual) continue;
      add_column({{i, s == Sense::kLessEqual ? 1.0 : -1.0}}, 0.0, 0.0, kInfinity);
    }
    x_.assign(cols_.size(), 0.0);
    for (std::size_t j = 0; j < cols_.size(); ++j) x_[j] = resting_value(static_cast<int>(j));
  }

  Solution run() {
    Solution out;
    crash();
    int iterations = 0;
    if (!artificials_.empty()) {
      std::vector<double> phase1(cols_.size(), 0.0);
      for (int a : artificials_) phase1[static_cast<std::size_t>(a)] = 1.0;
      const Status s = iterate(phase1, iterations);
      if (s == Status::kIterationLimit) return finish(s, iterations);
      double infeasibility = 0.0;
      for (int a : artificials_) infeasibility += value(a);
      const double scale = 1.0 + b_.lpNorm<Eigen::Infinity>();
      if (infeasibility > 1e-7 * scale) return finish(Status::kInfeasible, iterations);
      for (int a : artificials_) {
        lo_[static_cast<std::size_t>(a)] = 0.0;
        hi_[static_cast<std::size_t>(a)] = 0.0;
        if (!is_basic(a)) x_[static_cast<std::size_t>(a)] = 0.0;
      }
      drive_out_artificials();
    }
    std::vector<double> phase2(cols_.size(), 0.0);
    std::copy(cost_.begin(), cost_.end(), phase2.begin());
    const Status s = iterate(phase2, iterations);
    return finish(s, iterations);
  }

 private:
  int add_column(Column col, double c, double lo, double hi) {
    cols_.push_back(std::move(col));
    cost_.push_back(c);
    lo_.push_back(lo);
    hi_.push_back(hi);
    return static_cast<int>(cols_.size()) - 1;
  }

  double resting_value(int j) const {
    const auto uj = static_cast<std::size_t>(j);
    if (std::isfinite(lo_[uj])) return lo_[uj];
    if (std::isfinite(hi_[uj])) return hi_[uj];
    return 0.0;
  }

  bool is_basic(int j) const { return position_[static_cast<std::size_t>(j)] >= 0; }

  double value(int j) const {
    const int p = position_[static_cast<std::size_t>(j)];
    return p >= 0 ? xb_[p] : x_[static_cast<std::size_t>(j)];
  }

  // Slack-first starting basis; rows without a usable unit column get an artificial.
  void crash() {
    Eigen::VectorXd residual = b_;
    for (std::size_t j = 0; j < cols_.size(); ++j) {
      if (x_[j] == 0.0) continue;
      for (const auto& [i, a] : cols_[j]) residual[i] -= a * x_[j];
    }
    std::vector<std::vector<int>> singletons(static_cast<std::size_t>(m_));
    for (std::size_t j = 0; j < cols_.size(); ++j) {
      if (cols_[j].size() == 1) singletons[static_cast<std::size_t>(cols_[j][0].first)].push_back(static_cast<int>(j));
    }
    head_.assign(static_cast<std::size_t>(m_), -1);
    for (int i = 0; i < m_; ++i) {
      int best = -1;
      double best_cost = kInfinity;
      double best_value = 0.0;
      for (int j : singletons[static_cast<std::size_t>(i)]) {
        const auto uj = static_cast<std::size_t>(j);
        const double a = cols_[uj][0].second;
        const double v = x_[uj] + residual[i] / a;
        if (v < lo_[uj] - opt_.primal_tolerance || v > hi_[uj] + opt_.primal_tolerance) continue;
        // Prefer logical columns (they come last), then the cheapest.
        const double c = j >= n_ ? -kInfinity : cost_[uj];
        if (best < 0 || c < best_cost) {
          best = j;
          best_cost = c;
          best_value = v;
        }
      }
      if (best < 0) {
        const double sign = residual[i] < 0.0 ? -1.0 : 1.0;
        best = add_column({{i, sign}}, 0.0, 0.0, kInfinity);
        artificials_.push_back(best);
        x_.push_back(0.0);
        best_value = std::abs(residual[i]);
      }
      head_[static_cast<std::size_t>(i)] = best;
      x_[static_cast<std::size_t>(best)] = best_value;
    }
    position_.assign(cols_.size(), -1);
    for (int i = 0; i < m_; ++i) position_[static_cast<std::size_t>(head_[static_cast<std::size_t>(i)])] = i;
    reinvert();
  }

  void reinvert() {
    Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(m_, m_);
    for (int i = 0; i < m_; ++i) {
      for (const auto& [r, a] : cols_[static_cast<std::size_t>(head_[static_cast<std::size_t>(i)])]) basis(r, i) = a;
    }
    binv_ = m_ > 0 ? Eigen::MatrixXd(basis.partialPivLu().inverse()) : Eigen::MatrixXd();
    Eigen::VectorXd rhs = b_;
    for (std::size_t j = 0; j < cols_.size(); ++j) {
      if (position_[j] >= 0 || x_[j] == 0.0) continue;
      for (const auto& [r, a] : cols_[j]) rhs[r] -= a * x_[j];
    }
    xb_ = binv_ * rhs;
    since_reinvert_ = 0;
  }

  Eigen::VectorXd ftran(int j) const {
    Eigen::VectorXd alpha = Eigen::VectorXd::Zero(m_);
    for (const auto& [r, a] : cols_[static_cast<std::size_t>(j)]) alpha.noalias() += a * binv_.col(r);
    return alpha;
  }

  void pivot(int row, int entering, const Eigen::VectorXd& alpha) {
    const Eigen::RowVectorXd pivot_row = binv_.row(row) / alpha[row];
    binv_.noalias() -= alpha * pivot_row;
    binv_.row(row) = pivot_row;
    const int leaving = head_[static_cast<std::size_t>(row)];
    position_[static_cast<std::size_t>(leaving)] = -1;
    position_[static_cast<std::size_t>(entering)] = row;
    head_[static_cast<std::size_t>(row)] = entering;
    ++since_reinvert_;
  }

  // Pivots basic artificials (fixed at zero) out in favour of any non-artificial column.
  void drive_out_artificials() {
    for (int a : artificials_) {
      const int row = position_[static_cast<std::size_t>(a)];
      if (row < 0) continue;
      const Eigen::RowVectorXd brow = binv_.row(row);
      for (int j = 0; j < static_cast<int>(cols_.size()); ++j) {
        if (is_basic(j) || std::find(artificials_.begin(), artificials_.end(), j) != artificials_.end()) continue;
        double entry = 0.0;
        for (const auto& [r, v] : cols_[static_cast<std::size_t>(j)]) entry += brow[r] * v;
        if (std::abs(entry) <= 1e-7) continue;
        const Eigen::VectorXd alpha = ftran(j);
        const double xj = x_[static_cast<std::size_t>(j)];
        pivot(row, j, alpha);
        x_[static_cast<std::size_t>(a)] = 0.0;
        xb_[row] = xj;
        break;
      }
    }
    reinvert();
  }

  Status iterate(const std::vector<double>& c, int& iterations) {
    const int refactor_period = std::max(64, m_);
    int degenerate_streak = 0;
    while (true) {
      if (iterations >= opt_.max_iterations) return Status::kIterationLimit;
      if (since_reinvert_ >= refactor_period) reinvert();

      Eigen::VectorXd cb(m_);
      for (int i = 0; i < m_; ++i) cb[i] = c[static_cast<std::size_t>(head_[static_cast<std::size_t>(i)])];
      const Eigen::VectorXd y = binv_.transpose() * cb;

      const bool bland = degenerate_streak > 50;
      int entering = -1;
      double direction = 0.0;
      double best_score = 0.0;
      for (std::size_t j = 0; j < cols_.size(); ++j) {
        if (position_[j] >= 0 || lo_[j] == hi_[j]) continue;
        double d = c[j];
        for (const auto& [r, a] : cols_[j]) d -= y[r] * a;
        const double tol = opt_.dual_tolerance * (1.0 + std::abs(c[j]));
        double dir = 0.0;
        if (d < -tol && x_[j] < hi_[j]) dir = 1.0;
        if (d > tol && x_[j] > lo_[j]) dir = -1.0;
        if (dir == 0.0) continue;
        const double score = std::abs(d);
        if (bland) {
          entering = static_cast<int>(j);
          direction = dir;
          break;
        }
        if (score > best_score) {
          best_score = score;
          entering = static_cast<int>(j);
          direction = dir;
        }
      }
      if (entering < 0) return Status::kOptimal;

      const Eigen::VectorXd alpha = ftran(entering);
      const auto ue = static_cast<std::size_t>(entering);
      double theta = hi_[ue] - lo_[ue];  // bound flip
      int leave_row = -1;
      double leave_alpha = 0.0;
      for (int i = 0; i < m_; ++i) {
        const double rate = alpha[i] * direction;  // basic value moves by -rate * step
        if (std::abs(alpha[i]) <= opt_.pivot_tolerance) continue;
        const auto ub = static_cast<std::size_t>(head_[static_cast<std::size_t>(i)]);
        double limit;
        if (rate > 0.0) {
          if (!std::isfinite(lo_[ub])) continue;
          limit = (xb_[i] - lo_[ub]) / rate;
        } else {
          if (!std::isfinite(hi_[ub])) continue;
          limit = (hi_[ub] - xb_[i]) / -rate;
        }
        limit = std::max(limit, 0.0);
        const bool tie_better =
            leave_row >= 0 && limit <= theta + 1e-12 &&
            (bland ? head_[static_cast<std::size_t>(i)] < head_[static_cast<std::size_t>(leave_row)]
                   : std::abs(alpha[i]) > std::abs(leave_alpha));
        if (limit < theta - 1e-12 || tie_better) {
          theta = limit;
          leave_row = i;
          leave_alpha = alpha[i];
        }
      }
      if (!std::isfinite(theta)) return Status::kUnbounded;

      ++iterations;
      degenerate_streak = theta <= 1e-12 ? degenerate_streak + 1 : 0;
      x_[ue] += direction * theta;
      xb_.noalias() -= (direction * theta) * alpha;
      if (leave_row < 0) {
        x_[ue] = direction > 0 ? hi_[ue] : lo_[ue];
        continue;
      }
      const int leaving = head_[static_cast<std::size_t>(leave_row)];
      const auto ul = static_cast<std::size_t>(leaving);
      const double rate = leave_alpha * direction;
      x_[ul] = rate > 0.0 ? lo_[ul] : hi_[ul];
      const double entering_value = x_[ue];
      pivot(leave_row, entering, alpha);
      xb_[leave_row] = entering_value;
    }
  }

  Solution finish(Status status, int iterations) const {
    Solution out;
    out.status = status;
    out.iterations = iterations;
    out.x.resize(static_cast<std::size_t>(n_));
    for (int j = 0; j < n_; ++j) {
      double v = value(j);
      const auto uj = static_cast<std::size_t>(j);
      // Snap tiny bound violations left by round-off.
      if (v < lo_[uj]) v = lo_[uj];
      if (v > hi_[uj]) v = hi_[uj];
      out.x[uj] = v;
      out.objective += cost_[uj] * v;
    }
    return out;
  }

  SimplexOptions opt_;
  int m_;
  int n_;
  std::vector<Column> cols_;
  std::vector<double> lo_, hi_, cost_, x_;
  Eigen::VectorXd b_;
  std::vector<int> head_;      // basic column per row position
  std::vector<int> position_;  // row position per column, -1 if nonbasic
  std::vector<int> artificials_;
  Eigen::MatrixXd binv_;
  Eigen::VectorXd xb_;
  int since_reinvert_ = 0;
};

}  // namespace

Solution solve(const LinearProgram& program, const SimplexOptions& options) {
  return Simplex(program, options).run();
}

}  // namespace brickseq::lp
