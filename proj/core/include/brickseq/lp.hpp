#pragma once

#include <cstddef>
#include <limits>
#include <vector>

namespace brickseq::lp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Sense { kEqual, kLessEqual, kGreaterEqual };

struct Term {
  int var;
  double coef;
};

struct Row {
  std::vector<Term> terms;
  Sense sense = Sense::kEqual;
  double rhs = 0.0;
};

/// minimize cost'x  subject to  rows,  lower <= x <= upper.
/// Bounds may be infinite; a variable with both bounds infinite is free.
struct LinearProgram {
  std::vector<double> cost;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<Row> rows;

  int add_variable(double c, double lo = 0.0, double hi = kInfinity);
  int add_row(std::vector<Term> terms, Sense sense, double rhs);
  std::size_t num_variables() const { return cost.size(); }
  std::size_t num_rows() const { return rows.size(); }
};

enum class Status { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

struct Solution {
  Status status = Status::kIterationLimit;
  std::vector<double> x;
  double objective = 0.0;
  int iterations = 0;
};

struct SimplexOptions {
  int max_iterations = 100000;
  double pivot_tolerance = 1e-9;
  double primal_tolerance = 1e-9;
  double dual_tolerance = 1e-9;
};

/// Two-phase bounded-variable primal simplex with an explicit dense basis inverse.
/// Meant for programs with at most a few thousand rows.
Solution solve(const LinearProgram& program, const SimplexOptions& options = {});

}  // namespace brickseq::lp
