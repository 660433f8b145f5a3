#include "brickseq/stability.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "brickseq/error.hpp"
#include "brickseq/graph.hpp"

namespace brickseq {

namespace {

// One upward force acting on a brick: its contribution to the force row and to the
// two moment rows (levers measured from the footprint centroid to the stud center).
struct Load {
  double force;
  double moment_x;
  double moment_y;
};

Load load_on(const Brick& b, Cell2 at, double sign) {
  const double cx = b.x + 0.5 * b.h;
  const double cy = b.y + 0.5 * b.w;
  return {sign, sign * (at.y + 0.5 - cy), sign * (at.x + 0.5 - cx)};
}

void add_load(std::vector<std::vector<lp::Term>>& rows, int brick, int var, const Load& l) {
  const auto base = static_cast<std::size_t>(3 * brick);
  rows[base].push_back({var, l.force});
  if (l.moment_x != 0.0) rows[base + 1].push_back({var, l.moment_x});
  if (l.moment_y != 0.0) rows[base + 2].push_back({var, l.moment_y});
}

}  // namespace

void PhysicsParams::validate() const {
  for (double v : {brick_weight_per_cell, clutch_tension_capacity, slack_penalty, slack_tolerance}) {
    if (!std::isfinite(v) || v <= 0.0) {
      throw Error(ErrorCode::kInvalidArgument, "physics parameters must be finite and positive");
    }
  }
}

std::vector<StudContact> stud_contacts(const BrickAssembly& assembly) {
  std::vector<StudContact> out;
  for (int z = 1; z < kWorkspace; ++z) {
    for (int y = 0; y < kWorkspace; ++y) {
      for (int x = 0; x < kWorkspace; ++x) {
        const int upper = assembly.owner({x, y, z});
        if (upper < 0) continue;
        const int lower = assembly.owner({x, y, z - 1});
        if (lower >= 0) out.push_back({lower, upper, {x, y, z}});
      }
    }
  }
  return out;
}

std::vector<GroundContact> ground_contacts(const BrickAssembly& assembly) {
  std::vector<GroundContact> out;
  for (std::size_t i = 0; i < assembly.size(); ++i) {
    if (assembly[i].z != 0) continue;
    for (Cell2 c : footprint(assembly[i])) out.push_back({static_cast<int>(i), c});
  }
  return out;
}

EquilibriumProgram assemble_equilibrium_program(const BrickAssembly& assembly,
                                                const PhysicsParams& params) {
  params.validate();
  EquilibriumProgram ep;
  ep.contacts = stud_contacts(assembly);
  ep.ground = ground_contacts(assembly);
  auto& prog = ep.program;
  const double tmax = params.clutch_tension_capacity;

  std::vector<std::vector<lp::Term>> rows(3 * assembly.size());
  for (const StudContact& c : ep.contacts) {
    const int v = prog.add_variable(0.0, -lp::kInfinity, lp::kInfinity);
    ep.contact_vars.push_back(v);
    const Cell2 at{c.cell.x, c.cell.y};
    add_load(rows, c.upper, v, load_on(assembly[static_cast<std::size_t>(c.upper)], at, 1.0));
    add_load(rows, c.lower, v, load_on(assembly[static_cast<std::size_t>(c.lower)], at, -1.0));
  }
  for (const GroundContact& g : ep.ground) {
    const int v = prog.add_variable(0.0);
    ep.ground_vars.push_back(v);
    add_load(rows, g.brick, v, load_on(assembly[static_cast<std::size_t>(g.brick)], g.cell, 1.0));
  }
  ep.scale_var = prog.add_variable(1.0, 0.0, 1.0);
  for (std::size_t i = 0; i < assembly.size(); ++i) {
    const double weight = assembly[i].area() * params.brick_weight_per_cell;
    for (std::size_t k = 0; k < 3; ++k) {
      const int s = prog.add_variable(0.0, -lp::kInfinity, lp::kInfinity);
      const int a = prog.add_variable(params.slack_penalty);
      ep.slack_vars.push_back(s);
      ep.abs_vars.push_back(a);
      auto terms = rows[3 * i + k];
      terms.push_back({s, 1.0});
      prog.add_row(std::move(terms), lp::Sense::kEqual, k == 0 ? weight : 0.0);
      prog.add_row({{a, 1.0}, {s, -1.0}}, lp::Sense::kGreaterEqual, 0.0);
      prog.add_row({{a, 1.0}, {s, 1.0}}, lp::Sense::kGreaterEqual, 0.0);
    }
  }
  for (int v : ep.contact_vars) {
    prog.add_row({{v, 1.0}, {ep.scale_var, tmax}}, lp::Sense::kGreaterEqual, 0.0);
  }
  return ep;
}

double StabilityReport::min_score() const {
  return scores.empty() ? 0.0 : *std::min_element(scores.begin(), scores.end());
}

StabilityReport stability_scores(const BrickAssembly& assembly, const PhysicsParams& params) {
  params.validate();
  const std::size_t n = assembly.size();
  StabilityReport report;
  report.scores.assign(n, 0.0);
  report.brick_slack.assign(n, 0.0);
  report.grounded.assign(n, false);
  report.contacts = stud_contacts(assembly);
  report.ground = ground_contacts(assembly);
  report.contact_forces.assign(report.contacts.size(), 0.0);
  report.ground_forces.assign(report.ground.size(), 0.0);
  if (n == 0) return report;

  const std::vector<int> label = connected_components(build_attachment_graph(assembly));
  std::vector<bool> touches(n, false);
  for (const GroundContact& g : report.ground) touches[static_cast<std::size_t>(label[static_cast<std::size_t>(g.brick)])] = true;
  std::vector<int> local(n, -1);
  int solved = 0;
  for (std::size_t i = 0; i < n; ++i) {
    report.grounded[i] = touches[static_cast<std::size_t>(label[i])];
    if (report.grounded[i]) {
      local[i] = solved++;
    } else {
      report.brick_slack[i] = assembly[i].area() * params.brick_weight_per_cell;
    }
  }

  // Solved form: phi = u - T*t with u >= 0, slack = s+ - s-. Only the 3 equilibrium
  // rows per brick remain and the slack columns give a feasible starting basis.
  const double tmax = params.clutch_tension_capacity;
  lp::LinearProgram prog;
  std::vector<std::vector<lp::Term>> rows(3 * static_cast<std::size_t>(solved));
  std::vector<double> phi_sum(rows.size(), 0.0);
  std::vector<int> u_vars;
  for (const StudContact& c : report.contacts) {
    // Floating components have no rows; their contacts keep zero force.
    if (local[static_cast<std::size_t>(c.upper)] < 0) {
      u_vars.push_back(-1);
      continue;
    }
    const int v = prog.add_variable(0.0);
    u_vars.push_back(v);
    const Cell2 at{c.cell.x, c.cell.y};
    for (auto [brick, sign] : {std::pair{c.upper, 1.0}, std::pair{c.lower, -1.0}}) {
      const int li = local[static_cast<std::size_t>(brick)];
      const Load l = load_on(assembly[static_cast<std::size_t>(brick)], at, sign);
      add_load(rows, li, v, l);
      const auto base = static_cast<std::size_t>(3 * li);
      phi_sum[base] += l.force;
      phi_sum[base + 1] += l.moment_x;
      phi_sum[base + 2] += l.moment_y;
    }
  }
  std::vector<int> psi_vars;
  for (const GroundContact& g : report.ground) {
    const int v = prog.add_variable(0.0);
    psi_vars.push_back(v);
    add_load(rows, local[static_cast<std::size_t>(g.brick)], v,
             load_on(assembly[static_cast<std::size_t>(g.brick)], g.cell, 1.0));
  }
  const int t_var = prog.add_variable(1.0, 0.0, 1.0);
  std::vector<int> slack_plus;
  std::vector<int> slack_minus;
  for (std::size_t i = 0; i < n; ++i) {
    if (local[i] < 0) continue;
    const double weight = assembly[i].area() * params.brick_weight_per_cell;
    const auto base = static_cast<std::size_t>(3 * local[i]);
    for (std::size_t k = 0; k < 3; ++k) {
      const int sp = prog.add_variable(params.slack_penalty);
      const int sm = prog.add_variable(params.slack_penalty);
      slack_plus.push_back(sp);
      slack_minus.push_back(sm);
      auto terms = rows[base + k];
      if (phi_sum[base + k] != 0.0) terms.push_back({t_var, -tmax * phi_sum[base + k]});
      terms.push_back({sp, 1.0});
      terms.push_back({sm, -1.0});
      prog.add_row(std::move(terms), lp::Sense::kEqual, k == 0 ? weight : 0.0);
    }
  }

  const lp::Solution sol = lp::solve(prog);
  report.iterations = sol.iterations;
  if (sol.status != lp::Status::kOptimal) {
    throw Error(ErrorCode::kSolverFailure,
                "equilibrium program not solved after " + std::to_string(sol.iterations) + " iterations");
  }
  const auto x = [&](int v) { return sol.x[static_cast<std::size_t>(v)]; };
  report.tension_scale = x(t_var);
  for (std::size_t c = 0; c < u_vars.size(); ++c) {
    if (u_vars[c] < 0) continue;
    report.contact_forces[c] = x(u_vars[c]) - tmax * report.tension_scale;
  }
  for (std::size_t g = 0; g < psi_vars.size(); ++g) report.ground_forces[g] = x(psi_vars[g]);

  std::vector<double> rho(n, 0.0);
  for (std::size_t c = 0; c < report.contacts.size(); ++c) {
    const double tension = std::max(0.0, -report.contact_forces[c]) / tmax;
    for (int b : {report.contacts[c].lower, report.contacts[c].upper}) {
      rho[static_cast<std::size_t>(b)] = std::max(rho[static_cast<std::size_t>(b)], tension);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (local[i] < 0) {
      report.feasible = false;
      continue;
    }
    double worst = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
      const std::size_t r = 3 * static_cast<std::size_t>(local[i]) + k;
      worst = std::max(worst, std::abs(x(slack_plus[r]) - x(slack_minus[r])));
    }
    report.brick_slack[i] = worst;
    if (worst > params.slack_tolerance) {
      report.feasible = false;
      report.scores[i] = 0.0;
    } else {
      report.scores[i] = std::max(0.0, 1.0 - rho[i]);
    }
  }
  return report;
}

double r_stable(const StabilityReport& report) {
  if (report.scores.empty()) throw Error(ErrorCode::kEmptyAssembly, "no bricks to score");
  return report.min_score();
}

}  // namespace brickseq
