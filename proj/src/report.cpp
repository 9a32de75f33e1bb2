#include "gslab/report.hpp"

namespace gslab {

using nlohmann::json;

json rational_json(const Rational& r) {
  return json{{"num", numerator_string(r)}, {"den", denominator_string(r)}, {"value", to_double(r)}};
}

json estimate_json(const Estimate& e) {
  return json{{"value", e.value}, {"stderr", e.stderr_}, {"samples", e.samples}};
}

namespace {

json optional_rational(const std::optional<Rational>& r) { return r ? rational_json(*r) : json(nullptr); }
json optional_bool(const std::optional<bool>& b) { return b ? json(*b) : json(nullptr); }

}  // namespace

json census_json(const ManipulationCensus& c) {
  json j;
  j["rule"] = c.rule;
  j["q"] = c.q;
  j["n"] = c.n;
  j["mode"] = c.exact ? "exact" : "sampled";
  j["total"] = c.total;
  j["epsilon"] = optional_rational(c.epsilon);
  j["neutral"] = c.neutral;
  j["applicable"] = c.applicable;
  json fr;
  if (c.exact) {
    fr["manip"] = rational_json(c.fraction_manipulable());
    for (int r = 2; r <= 4; ++r) fr["r" + std::to_string(r)] = rational_json(c.fraction_r(r));
  } else {
    fr["manip"] = estimate_json(c.estimate_manipulable());
    for (int r = 2; r <= 4; ++r) fr["r" + std::to_string(r)] = estimate_json(c.estimate_r(r));
  }
  j["fractions"] = fr;
  j["counts"] = json{{"manip", c.manipulable},
                     {"r2", c.r_manipulable[0]},
                     {"r3", c.r_manipulable[1]},
                     {"r4", c.r_manipulable[2]}};
  j["bounds"] = json{{"thm13", optional_rational(c.bound_thm13)}, {"thm16", optional_rational(c.bound_thm16)}};
  j["pass"] = json{{"thm13", optional_bool(c.pass_thm13)}, {"thm16", optional_bool(c.pass_thm16)}};
  j["formulas"] = json{{"thm13", kBoundManipulableFormula},
                       {"thm16", kBoundFourManipulableFormula},
                       {"epsilon", "Dist(f, DICT)"}};
  if (c.seed) j["seed"] = *c.seed;
  if (!c.exact) j["samples"] = c.total;
  return j;
}

void write_profile_flags_csv(std::ostream& out, const ManipulationIndex& index) {
  out << "profile,winner,manipulable,r2,r3,r4\n";
  const auto& space = index.space();
  for (std::uint64_t code = 0; code < space.size(); ++code) {
    out << to_string(space.decode(code)) << ',' << index.table().at(code) << ','
        << index.manipulable(code);
    for (int r = 2; r <= 4; ++r) out << ',' << index.r_manipulable(code, r);
    out << '\n';
  }
}

json inverse_census_json(const InverseImageCensus& c) {
  return json{{"map", c.map},
              {"sources", c.sources},
              {"targets", c.targets},
              {"paths", c.paths},
              {"declared_max_length", c.declared_max_length},
              {"observed_max_length", c.observed_max_length},
              {"endpoints_ok", c.endpoints_ok},
              {"lengths_ok", c.lengths_ok},
              {"union_bound_ok", c.union_bound_ok},
              {"max_step", c.max_step},
              {"max_step_overall", c.max_step_overall},
              {"max_total", c.max_total},
              {"distinct_vertices", c.distinct_vertices}};
}

void write_inverse_census_csv(std::ostream& out, const InverseImageCensus& c) {
  out << "vertex,i,count\n";
  for (const auto& row : c.rows) {
    out << '"' << row.vertex << "\",";
    if (row.step)
      out << *row.step;
    else
      out << "all";
    out << ',' << row.count << '\n';
  }
}

}  // namespace gslab
