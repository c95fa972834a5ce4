#include <sstream>

#include "pricekit/error.hpp"
#include "pricekit/optimize.hpp"
#include "tableau.hpp"

namespace pricekit {
namespace {

void write_terms(std::ostringstream& out, const LinearProgram& lp, const std::vector<LinearTerm>& terms) {
  if (terms.empty()) out << " 0";
  for (const auto& t : terms) {
    out << (sgn(t.coefficient) < 0 ? " - " : " + ");
    Rational mag = abs(t.coefficient);
    if (mag != 1) out << to_fraction_string(mag) << " ";
    out << lp.variables()[t.variable].name;
  }
}

}  // namespace

int LinearProgram::add_variable(std::string name, Rational lower) {
  variables_.push_back({std::move(name), std::move(lower)});
  return static_cast<int>(variables_.size()) - 1;
}

void LinearProgram::check_terms(const std::vector<LinearTerm>& terms) const {
  for (const auto& t : terms)
    if (t.variable < 0 || t.variable >= static_cast<int>(variables_.size()))
      throw Error(ErrorCode::OutOfRange, "linear term references undeclared variable", t.variable);
}

void LinearProgram::add_constraint(std::string name, std::vector<LinearTerm> terms, Relation relation, Rational rhs) {
  check_terms(terms);
  constraints_.push_back({std::move(name), std::move(terms), relation, std::move(rhs)});
}

void LinearProgram::set_objective(Direction direction, std::vector<LinearTerm> terms) {
  check_terms(terms);
  direction_ = direction;
  objective_ = std::move(terms);
}

std::string LinearProgram::to_text() const {
  std::ostringstream out;
  out << (direction_ == Direction::Minimize ? "minimize" : "maximize");
  write_terms(out, *this, objective_);
  out << "\nsubject to\n";
  for (const auto& c : constraints_) {
    out << "  " << (c.name.empty() ? "_" : c.name) << ":";
    write_terms(out, *this, c.terms);
    out << (c.relation == Relation::LessEqual ? " <= " : c.relation == Relation::Equal ? " = " : " >= ")
        << to_fraction_string(c.rhs) << "\n";
  }
  out << "bounds\n";
  for (const auto& v : variables_) out << "  " << v.name << " >= " << to_fraction_string(v.lower) << "\n";
  return out.str();
}

const char* lp_status_name(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
  }
  return "unknown";
}

LpSolution solve_lp_exact(const LinearProgram& lp) {
  detail::Tableau tableau(lp);
  LpSolution out;
  out.status = tableau.solve();
  out.pivots = tableau.pivots();
  if (out.status == LpStatus::Optimal) {
    out.values = tableau.values();
    out.objective = tableau.objective();
  }
  return out;
}

}  // namespace pricekit
